"""Test instrumentation: geometric flips and the flip-invariance checks.

Row/column run counts survive flips in a predictable way (a flipped image
needs no separate augmented copy as far as these counts are concerned);
the checks here verify that on concrete data, at interval width 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import BinaryMask, binarize, sweep
from .io import Dataset

__all__ = [
    "flip_vertical",
    "flip_horizontal",
    "transpose_image",
    "InvariantCheck",
    "run_flip_checks",
]


def flip_vertical(a: np.ndarray) -> np.ndarray:
    """Reverse row order; works for masks (r, s) and images (r, s, c)."""
    return np.ascontiguousarray(a[::-1])


def flip_horizontal(a: np.ndarray) -> np.ndarray:
    """Reverse column order; works for masks (r, s) and images (r, s, c)."""
    return np.ascontiguousarray(a[:, ::-1])


def transpose_image(a: np.ndarray) -> np.ndarray:
    """Swap rows and columns; works for masks (r, s) and images (r, s, c)."""
    return np.ascontiguousarray(np.swapaxes(a, 0, 1))


@dataclass
class InvariantCheck:
    name: str
    passed: bool
    failing_image: int | None = None


def _multiset_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.array_equal(np.sort(a), np.sort(b)))


def run_flip_checks(dataset: Dataset, thresholds=(100,)) -> list[InvariantCheck]:
    """Check the six flip relations on every image/threshold/channel combination.

    Returns one result per property with the first failing image index, if any.
    """
    checks = {
        "vertical-flip column invariance": lambda d, v, h: np.array_equal(
            v.col_counts, d.col_counts
        ),
        "vertical-flip row reversal": lambda d, v, h: np.array_equal(
            v.row_counts, d.row_counts[::-1]
        ),
        "vertical-flip diagonal swap": lambda d, v, h: _multiset_equal(
            v.diag_nwse_counts, d.diag_nesw_counts
        )
        and _multiset_equal(v.diag_nesw_counts, d.diag_nwse_counts),
        "horizontal-flip row invariance": lambda d, v, h: np.array_equal(
            h.row_counts, d.row_counts
        ),
        "horizontal-flip column reversal": lambda d, v, h: np.array_equal(
            h.col_counts, d.col_counts[::-1]
        ),
        "horizontal-flip diagonal swap": lambda d, v, h: _multiset_equal(
            h.diag_nwse_counts, d.diag_nesw_counts
        )
        and _multiset_equal(h.diag_nesw_counts, d.diag_nwse_counts),
    }
    failing: dict[str, int | None] = {name: None for name in checks}
    for i in range(len(dataset)):
        image = dataset.image(i)
        for t in thresholds:
            for ch in range(image.channels):
                mask = binarize(image, ch, t)
                d = sweep(mask)
                v = sweep(BinaryMask(flip_vertical(mask.bits)))
                h = sweep(BinaryMask(flip_horizontal(mask.bits)))
                for name, ok in checks.items():
                    if failing[name] is None and not ok(d, v, h):
                        failing[name] = i
    return [
        InvariantCheck(name=name, passed=failing[name] is None, failing_image=failing[name])
        for name in checks
    ]
