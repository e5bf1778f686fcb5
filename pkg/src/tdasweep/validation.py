"""Array validation helpers shared by the core types and the estimators."""

from __future__ import annotations

import numpy as np


def as_pixel_array(arr) -> np.ndarray:
    """Coerce to a contiguous (rows, cols, channels) uint8 array.

    Accepts a 2-D array (treated as single-channel) or a 3-D array of
    integer intensities in [0, 255].
    """
    a = np.asarray(arr)
    if a.ndim == 2:
        a = a[:, :, None]
    if a.ndim != 3:
        raise ValueError(f"pixel array must be 2-D or 3-D, got shape {a.shape}")
    if min(a.shape) < 1:
        raise ValueError(f"pixel array dimensions must be positive, got shape {a.shape}")
    _check_intensities(a)
    return np.ascontiguousarray(a, dtype=np.uint8)


def as_batch_array(arr) -> np.ndarray:
    """Coerce to a contiguous (n, rows, cols, channels) uint8 array.

    Accepts (n, rows, cols) or (n, rows, cols, channels); n may be zero,
    image dimensions must be positive.
    """
    a = np.asarray(arr)
    if a.ndim == 3:
        a = a[:, :, :, None]
    if a.ndim != 4:
        raise ValueError(f"image batch must be 3-D or 4-D, got shape {a.shape}")
    if min(a.shape[1:]) < 1:
        raise ValueError(f"image dimensions must be positive, got shape {a.shape}")
    if a.size:
        _check_intensities(a)
    return np.ascontiguousarray(a, dtype=np.uint8)


def as_mask_array(arr) -> np.ndarray:
    """Coerce to a contiguous (rows, cols) uint8 array of 0/1 bits."""
    a = np.asarray(arr)
    if a.dtype == bool:
        a = a.astype(np.uint8)
    if a.ndim != 2:
        raise ValueError(f"mask must be 2-D, got shape {a.shape}")
    if min(a.shape) < 1:
        raise ValueError(f"mask dimensions must be positive, got shape {a.shape}")
    if a.dtype.kind not in "iu":
        raise ValueError(f"mask bits must be integers, got dtype {a.dtype}")
    if a.size and (a.min() < 0 or a.max() > 1):
        raise ValueError("mask bits must be 0 or 1")
    return np.ascontiguousarray(a, dtype=np.uint8)


def as_binary_vector(arr) -> np.ndarray:
    """Coerce to a 1-D uint8 array of 0/1 bits; may be empty."""
    a = np.asarray(arr)
    if a.dtype == bool:
        a = a.astype(np.uint8)
    if a.ndim != 1:
        raise ValueError(f"bit vector must be 1-D, got shape {a.shape}")
    if a.size == 0:
        return np.zeros(0, dtype=np.uint8)
    if a.dtype.kind not in "iu":
        raise ValueError(f"bit vector must contain integers, got dtype {a.dtype}")
    if a.min() < 0 or a.max() > 1:
        raise ValueError("bit vector elements must be 0 or 1")
    return np.ascontiguousarray(a, dtype=np.uint8)


def as_count_vector(arr) -> np.ndarray:
    """Coerce to a 1-D int64 array; may be empty."""
    a = np.asarray(arr)
    if a.ndim != 1:
        raise ValueError(f"count vector must be 1-D, got shape {a.shape}")
    if a.size and a.dtype.kind not in "iu":
        raise ValueError(f"count vector must contain integers, got dtype {a.dtype}")
    return a.astype(np.int64, copy=False)


def _check_intensities(a: np.ndarray) -> None:
    if a.dtype.kind not in "iu":
        raise ValueError(f"pixel intensities must be integers, got dtype {a.dtype}")
    lo, hi = int(a.min()), int(a.max())
    if lo < 0 or hi > 255:
        raise ValueError(f"pixel intensities must be in [0, 255], found range [{lo}, {hi}]")
