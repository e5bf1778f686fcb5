"""Thresholded directional run-count features for a single image.

An image is binarized at one or more intensity cutoffs (a pixel survives
when its value is at or above the cutoff).  For every resulting mask the
number of maximal runs of 1s is counted along each row, each column, and
each diagonal of both families (NW-SE, constant col-row; NE-SW anti-
diagonals, constant row+col).  Consecutive counts can then be summed in
groups of ``interval_width`` to shrink each direction block further.  The
coalesced blocks, ordered [rows, cols, diag_nwse, diag_nesw] inside a
threshold-major, then channel-major loop, concatenate into one integer
feature vector per image.

All operations here are pure functions over immutable inputs; they hold no
global state and are safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .validation import (
    as_binary_vector,
    as_count_vector,
    as_mask_array,
    as_pixel_array,
)

__all__ = [
    "GrayImage",
    "BinaryMask",
    "SweepConfig",
    "DirectionalCounts",
    "FeatureBlock",
    "FeatureLayout",
    "FeatureVector",
    "binarize",
    "count_runs",
    "sweep",
    "coalesce",
    "extract",
    "feature_length",
]

DIRECTIONS = ("rows", "cols", "diag_nwse", "diag_nesw")


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Dense intensity grid, indexed (row, col, channel), values in [0, 255]."""

    pixels: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "pixels", as_pixel_array(self.pixels))

    @property
    def rows(self) -> int:
        return self.pixels.shape[0]

    @property
    def cols(self) -> int:
        return self.pixels.shape[1]

    @property
    def channels(self) -> int:
        return self.pixels.shape[2]


@dataclass(frozen=True, eq=False)
class BinaryMask:
    """Dense 0/1 grid produced by thresholding one channel."""

    bits: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "bits", as_mask_array(self.bits))

    @property
    def rows(self) -> int:
        return self.bits.shape[0]

    @property
    def cols(self) -> int:
        return self.bits.shape[1]


@dataclass(frozen=True)
class SweepConfig:
    """Hyperparameters of the sweep: cutoffs, coalescing width, worker count."""

    thresholds: tuple[int, ...]
    interval_width: int = 1
    workers: int | None = None

    def __post_init__(self):
        ts = tuple(int(t) for t in self.thresholds)
        if not ts:
            raise ValueError("thresholds must be a non-empty list")
        if any(t < 1 or t > 255 for t in ts):
            raise ValueError(f"thresholds must be in [1, 255], got {ts}")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError(f"thresholds must be strictly increasing, got {ts}")
        object.__setattr__(self, "thresholds", ts)
        if int(self.interval_width) < 1:
            raise ValueError(f"interval_width must be >= 1, got {self.interval_width}")
        object.__setattr__(self, "interval_width", int(self.interval_width))
        if self.workers is not None:
            if int(self.workers) < 1:
                raise ValueError(f"workers must be >= 1, got {self.workers}")
            object.__setattr__(self, "workers", int(self.workers))


@dataclass(frozen=True, eq=False)
class DirectionalCounts:
    """Raw per-line run counts for one mask.

    Diagonal vectors have length rows+cols-1.  ``diag_nwse_counts[k]`` is
    the NW-SE diagonal with col-row == k-(rows-1); ``diag_nesw_counts[k]``
    is the anti-diagonal with row+col == k.
    """

    row_counts: np.ndarray
    col_counts: np.ndarray
    diag_nwse_counts: np.ndarray
    diag_nesw_counts: np.ndarray


class FeatureBlock(NamedTuple):
    threshold: int
    channel: int
    direction: str
    start: int
    stop: int


@dataclass(frozen=True)
class FeatureLayout:
    """Block structure of a feature vector for one image geometry + config."""

    rows: int
    cols: int
    channels: int
    thresholds: tuple[int, ...]
    interval_width: int

    def block_length(self, direction: str) -> int:
        w = self.interval_width
        if direction == "rows":
            return -(-self.rows // w)
        if direction == "cols":
            return -(-self.cols // w)
        if direction in ("diag_nwse", "diag_nesw"):
            return -((self.rows + self.cols - 1) // -w)
        raise ValueError(f"unknown direction {direction!r}")

    @property
    def n_features(self) -> int:
        return feature_length(
            self.rows, self.cols, self.channels, len(self.thresholds), self.interval_width
        )

    def blocks(self) -> Iterator[FeatureBlock]:
        start = 0
        for t in self.thresholds:
            for ch in range(self.channels):
                for direction in DIRECTIONS:
                    n = self.block_length(direction)
                    yield FeatureBlock(t, ch, direction, start, start + n)
                    start += n

    def feature_names(self) -> list[str]:
        return [
            f"t{b.threshold}_ch{b.channel}_{b.direction}_{i}"
            for b in self.blocks()
            for i in range(b.stop - b.start)
        ]


@dataclass(frozen=True, eq=False)
class FeatureVector:
    """Coalesced, threshold-and-channel-stacked counts for one image."""

    values: np.ndarray
    layout: FeatureLayout


def feature_length(rows: int, cols: int, channels: int, n_thresholds: int, interval_width: int) -> int:
    """Feature count for a given geometry: |T| * c * (ceil(r/w) + ceil(s/w) + 2*ceil((r+s-1)/w))."""
    w = interval_width
    per_mask = -(-rows // w) + (-(-cols // w)) + 2 * (-(-(rows + cols - 1) // w))
    return n_thresholds * channels * per_mask


def binarize(image: GrayImage, channel: int, threshold: int) -> BinaryMask:
    """Threshold one channel: bit is 1 exactly where intensity >= threshold."""
    if not 0 <= channel < image.channels:
        raise ValueError(
            f"channel {channel} out of range for {image.channels}-channel image"
        )
    if not 1 <= threshold <= 255:
        raise ValueError(f"threshold must be in [1, 255], got {threshold}")
    return BinaryMask((image.pixels[:, :, channel] >= threshold).astype(np.uint8))


def count_runs(bits) -> int:
    """Number of maximal contiguous blocks of 1s in a 0/1 vector."""
    v = as_binary_vector(bits)
    if v.size == 0:
        return 0
    return int(v[0]) + int(np.count_nonzero(v[1:] > v[:-1]))


def _runs_per_row(a: np.ndarray) -> np.ndarray:
    # one run starts at column 0 if set, plus one per 0->1 ascent
    return a[:, 0].astype(np.int64) + np.count_nonzero(a[:, 1:] > a[:, :-1], axis=1)


def _runs_per_antidiagonal(a: np.ndarray) -> np.ndarray:
    # Shear so anti-diagonals become columns: pad each row to width s+r and
    # re-view the flat buffer with row stride s+r-1, which shifts row i right
    # by i.  Column k of the view holds exactly the cells with row+col == k
    # (zeros elsewhere), so column run counts equal anti-diagonal run counts.
    r, s = a.shape
    padded = np.zeros((r, s + r), dtype=a.dtype)
    padded[:, :s] = a
    view = padded.ravel()[: r * (s + r - 1)].reshape(r, s + r - 1)
    return view[0].astype(np.int64) + np.count_nonzero(view[1:] > view[:-1], axis=0)


def sweep(mask: BinaryMask) -> DirectionalCounts:
    """Count runs along every row, column, and diagonal of both families."""
    b = mask.bits
    # reversing the rows turns NW-SE diagonals into anti-diagonals at the
    # same index k, since (rows-1-i)+j == k  <=>  j-i == k-(rows-1)
    return DirectionalCounts(
        row_counts=_runs_per_row(b),
        col_counts=_runs_per_row(b.T),
        diag_nwse_counts=_runs_per_antidiagonal(b[::-1]),
        diag_nesw_counts=_runs_per_antidiagonal(b),
    )


def coalesce(counts, interval_width: int) -> np.ndarray:
    """Sum consecutive groups of ``interval_width`` counts; the last group may be short."""
    if int(interval_width) < 1:
        raise ValueError(f"interval_width must be >= 1, got {interval_width}")
    v = as_count_vector(counts)
    if v.size == 0 or interval_width == 1:
        return v.copy()
    return np.add.reduceat(v, np.arange(0, v.size, int(interval_width)))


def extract(image: GrayImage, config: SweepConfig) -> FeatureVector:
    """Full per-image pipeline: binarize, sweep, coalesce, concatenate."""
    layout = FeatureLayout(
        rows=image.rows,
        cols=image.cols,
        channels=image.channels,
        thresholds=config.thresholds,
        interval_width=config.interval_width,
    )
    parts = []
    for t in config.thresholds:
        for ch in range(image.channels):
            d = sweep(binarize(image, ch, t))
            for vec in (d.row_counts, d.col_counts, d.diag_nwse_counts, d.diag_nesw_counts):
                parts.append(coalesce(vec, config.interval_width))
    return FeatureVector(values=np.concatenate(parts), layout=layout)
