"""Dataset ingestion (IDX, labeled CSV) and feature-matrix CSV output.

IDX image files (the MNIST container):
    [offset 0]  u32 big-endian magic 0x00000803 (u8 data, 3 dims)
    [offset 4]  u32 image count, u32 rows, u32 cols
    [offset 16] raw u8 pixels, row-major
IDX label files use magic 0x00000801 followed by a u32 count and raw u8
labels.

Pixel CSV: one image per line, ``rows*cols*channels`` integer fields in
[0, 255], preceded by an integer label field when labeled.  Multi-channel
pixels are channel-major: all of channel 0 row-major, then channel 1, then
channel 2.

Feature CSV: header ``label,f0,f1,...`` (``f0,...`` when unlabeled), then
one line of decimal integers per image, comma-separated, LF-terminated.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .core import FeatureLayout, GrayImage
from .validation import as_batch_array

__all__ = [
    "FormatError",
    "TruncatedFileError",
    "Dataset",
    "FeatureMatrix",
    "load_idx",
    "load_csv",
    "write_features",
    "read_features",
    "IDX_IMAGE_MAGIC",
    "IDX_LABEL_MAGIC",
]

IDX_IMAGE_MAGIC = 0x00000803
IDX_LABEL_MAGIC = 0x00000801


class FormatError(ValueError):
    """A file does not match its declared format."""


class TruncatedFileError(FormatError, OSError):
    """A file ended before its declared payload; both a format and an I/O error."""


@dataclass(eq=False)
class Dataset:
    """Ordered image collection with uniform dimensions and optional labels."""

    pixels: np.ndarray  # (n, rows, cols, channels) uint8
    labels: np.ndarray | None = None

    def __post_init__(self):
        self.pixels = as_batch_array(self.pixels)
        if self.labels is not None:
            self.labels = np.asarray(self.labels, dtype=np.int64)
            if self.labels.shape != (len(self),):
                raise ValueError(
                    f"label count {self.labels.shape} does not match image count {len(self)}"
                )

    def __len__(self) -> int:
        return self.pixels.shape[0]

    @property
    def rows(self) -> int:
        return self.pixels.shape[1]

    @property
    def cols(self) -> int:
        return self.pixels.shape[2]

    @property
    def channels(self) -> int:
        return self.pixels.shape[3]

    def image(self, i: int) -> GrayImage:
        return GrayImage(self.pixels[i])

    def __iter__(self) -> Iterator[GrayImage]:
        return (self.image(i) for i in range(len(self)))

    def pixel_matrix(self) -> "FeatureMatrix":
        """Raw pixels as a feature matrix, one row-major flattened image per row."""
        values = self.pixels.reshape(len(self), -1).astype(np.int64)
        labels = None if self.labels is None else self.labels.copy()
        return FeatureMatrix(values=values, labels=labels)

    def subset(self, indices) -> "Dataset":
        idx = np.asarray(indices, dtype=np.intp)
        labels = None if self.labels is None else self.labels[idx]
        return Dataset(self.pixels[idx], labels)


@dataclass(eq=False)
class FeatureMatrix:
    """Dense integer feature matrix, one row per image, with optional labels."""

    values: np.ndarray
    labels: np.ndarray | None = None
    layout: FeatureLayout | None = None

    def __post_init__(self):
        self.values = np.asarray(self.values)
        if self.values.ndim != 2:
            raise ValueError(f"feature matrix must be 2-D, got shape {self.values.shape}")
        if self.values.dtype.kind not in "iu":
            raise ValueError(f"feature values must be integers, got dtype {self.values.dtype}")
        self.values = self.values.astype(np.int64, copy=False)
        if self.labels is not None:
            self.labels = np.asarray(self.labels, dtype=np.int64)
            if self.labels.shape != (self.n_rows,):
                raise ValueError(
                    f"label count {self.labels.shape[0]} does not match row count {self.n_rows}"
                )
        if self.layout is not None and self.layout.n_features != self.n_cols:
            raise ValueError(
                f"layout describes {self.layout.n_features} features, matrix has {self.n_cols}"
            )

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def n_cols(self) -> int:
        return self.values.shape[1]


def _read_exact(f, n: int, path) -> bytes:
    data = f.read(n)
    if len(data) != n:
        raise TruncatedFileError(
            f"truncated file {path}: expected {n} more bytes, got {len(data)}"
        )
    return data


def load_idx(image_path, label_path=None) -> Dataset:
    """Load an IDX image file and, optionally, its aligned IDX label file."""
    with open(image_path, "rb") as f:
        magic, n, rows, cols = struct.unpack(">IIII", _read_exact(f, 16, image_path))
        if magic != IDX_IMAGE_MAGIC:
            raise FormatError(
                f"bad IDX image magic 0x{magic:08x} in {image_path}"
                f" (expected 0x{IDX_IMAGE_MAGIC:08x})"
            )
        if rows < 1 or cols < 1:
            raise FormatError(f"bad IDX image dimensions {rows}x{cols} in {image_path}")
        data = _read_exact(f, n * rows * cols, image_path)
    pixels = np.frombuffer(data, dtype=np.uint8).reshape(n, rows, cols, 1)

    labels = None
    if label_path is not None:
        with open(label_path, "rb") as f:
            magic, n_labels = struct.unpack(">II", _read_exact(f, 8, label_path))
            if magic != IDX_LABEL_MAGIC:
                raise FormatError(
                    f"bad IDX label magic 0x{magic:08x} in {label_path}"
                    f" (expected 0x{IDX_LABEL_MAGIC:08x})"
                )
            if n_labels != n:
                raise FormatError(
                    f"label count {n_labels} in {label_path} does not match"
                    f" image count {n} in {image_path}"
                )
            labels = np.frombuffer(_read_exact(f, n_labels, label_path), dtype=np.uint8)
            labels = labels.astype(np.int64)
    return Dataset(pixels, labels)


def load_csv(path, has_label: bool, rows: int, cols: int, channels: int) -> Dataset:
    """Load a pixel CSV with the given geometry; labels from the first field when present."""
    n_pixels = rows * cols * channels
    expected = n_pixels + (1 if has_label else 0)
    images = []
    labels = [] if has_label else None
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            fields = line.rstrip("\n").rstrip("\r").split(",")
            if len(fields) != expected:
                raise FormatError(
                    f"{path} line {lineno}: expected {expected} fields, got {len(fields)}"
                )
            try:
                values = [int(v) for v in fields]
            except ValueError:
                bad = next(v for v in fields if not _is_int(v))
                raise FormatError(
                    f"{path} line {lineno}: non-integer field {bad!r}"
                ) from None
            if has_label:
                labels.append(values[0])
                values = values[1:]
            lo, hi = min(values), max(values)
            if lo < 0 or hi > 255:
                bad = lo if lo < 0 else hi
                raise FormatError(
                    f"{path} line {lineno}: intensity {bad} out of range [0, 255]"
                )
            # channel-major on disk -> (rows, cols, channels) in memory
            arr = np.array(values, dtype=np.uint8).reshape(channels, rows, cols)
            images.append(arr.transpose(1, 2, 0))
    if images:
        pixels = np.stack(images)
    else:
        pixels = np.zeros((0, rows, cols, channels), dtype=np.uint8)
    return Dataset(pixels, np.array(labels, dtype=np.int64) if has_label else None)


def _is_int(s: str) -> bool:
    try:
        int(s)
        return True
    except ValueError:
        return False


def write_features(matrix: FeatureMatrix, path) -> None:
    """Write a feature matrix as CSV, labels first when present."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        names = [f"f{i}" for i in range(matrix.n_cols)]
        if matrix.labels is not None:
            names = ["label"] + names
        f.write(",".join(names) + "\n")
        for i in range(matrix.n_rows):
            row = matrix.values[i]
            if matrix.labels is not None:
                f.write(f"{matrix.labels[i]},")
            f.write(",".join(str(int(v)) for v in row) + "\n")


def read_features(path) -> FeatureMatrix:
    """Read a feature CSV written by :func:`write_features`; label column auto-detected."""
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().rstrip("\n").split(",")
        has_label = bool(header) and header[0] == "label"
        n_cols = len(header) - (1 if has_label else 0)
        rows = []
        labels = [] if has_label else None
        for lineno, line in enumerate(f, start=2):
            fields = line.rstrip("\n").split(",")
            if len(fields) != len(header):
                raise FormatError(
                    f"{path} line {lineno}: expected {len(header)} fields, got {len(fields)}"
                )
            try:
                values = [int(v) for v in fields]
            except ValueError:
                raise FormatError(f"{path} line {lineno}: non-integer field") from None
            if has_label:
                labels.append(values[0])
                values = values[1:]
            rows.append(values)
    values = np.array(rows, dtype=np.int64).reshape(len(rows), n_cols)
    return FeatureMatrix(
        values=values,
        labels=np.array(labels, dtype=np.int64) if has_label else None,
    )
