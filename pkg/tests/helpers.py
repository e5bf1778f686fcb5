"""Shared fixture builders: IDX bytes, pixel CSVs, and a desk-scale digit corpus."""

from __future__ import annotations

import struct

import numpy as np

# 3x8 mask whose rows read 10011101 / 10111100 / 10101101, with its
# hand-checked directional run counts (diagonal index conventions:
# NW-SE diagonal k has col-row == k-(rows-1), anti-diagonal k has
# row+col == k).
TOY_MASK = np.array(
    [
        [1, 0, 0, 1, 1, 1, 0, 1],
        [1, 0, 1, 1, 1, 1, 0, 0],
        [1, 0, 1, 0, 1, 1, 0, 1],
    ],
    dtype=np.uint8,
)
TOY_ROW_COUNTS = [3, 2, 4]
TOY_COL_COUNTS = [1, 0, 1, 1, 1, 1, 0, 2]
TOY_NWSE_COUNTS = [1, 1, 2, 1, 1, 1, 1, 2, 0, 1]
TOY_NESW_COUNTS = [1, 1, 1, 1, 1, 1, 1, 2, 0, 1]


def toy_image(high: int = 255) -> np.ndarray:
    """The toy mask as an intensity image: 1 -> high, 0 -> 0, shape (3, 8, 1)."""
    return (TOY_MASK.astype(np.uint8) * high)[:, :, None]


def idx_image_bytes(images, magic: int = 0x00000803) -> bytes:
    """Serialize a (n, rows, cols[, 1]) uint8 batch as an IDX image file."""
    a = np.asarray(images, dtype=np.uint8)
    if a.ndim == 4:
        a = a[:, :, :, 0]
    n, rows, cols = a.shape
    return struct.pack(">IIII", magic, n, rows, cols) + a.tobytes()


def idx_label_bytes(labels, magic: int = 0x00000801) -> bytes:
    """Serialize integer labels as an IDX label file."""
    a = np.asarray(labels, dtype=np.uint8)
    return struct.pack(">II", magic, a.size) + a.tobytes()


def write_pixel_csv(path, pixels, labels=None) -> None:
    """Write images as pixel CSV lines, channel-major within each line."""
    p = np.asarray(pixels)
    if p.ndim == 3:
        p = p[:, :, :, None]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for i in range(p.shape[0]):
            fields = p[i].transpose(2, 0, 1).ravel().tolist()
            if labels is not None:
                fields = [int(labels[i])] + fields
            fh.write(",".join(str(int(v)) for v in fields) + "\n")


def random_images(n: int, rows: int, cols: int, channels: int = 1, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.integers(0, 256, size=(n, rows, cols, channels), dtype=np.uint8)


def digit_corpus(n_train: int, n_test: int, seed: int = 0):
    """Seeded 28x28 handwritten-digit corpus built from sklearn's bundled digits.

    Mirrors the classic handwritten-digit normalization: each 8x8 source
    digit (intensities 0..16) is upscaled 3x with cubic interpolation to
    24x24, rescaled to [0, 255], and placed on a 28x28 canvas so its
    center of mass lands at the canvas center.  Source digits are split
    disjointly between the train and test pools before sampling, so no
    test digit's source appears in training.

    Returns (train_pixels, train_labels, test_pixels, test_labels) with
    pixel arrays shaped (n, 28, 28, 1) uint8.
    """
    from scipy import ndimage
    from sklearn.datasets import load_digits

    digits = load_digits()
    base = digits.images.astype(np.float64)  # (1797, 8, 8), values 0..16
    labels = digits.target.astype(np.int64)

    rendered = np.stack([ndimage.zoom(im, 3.0, order=3) for im in base])
    rendered = np.clip(rendered * 255 / 16, 0, 255)
    placed = np.zeros((rendered.shape[0], 28, 28), dtype=np.uint8)
    for j in range(rendered.shape[0]):
        im = rendered[j]
        cy, cx = ndimage.center_of_mass(im) if im.sum() else (11.5, 11.5)
        oy = max(0, min(4, int(round(13.5 - cy))))
        ox = max(0, min(4, int(round(13.5 - cx))))
        placed[j, oy : oy + 24, ox : ox + 24] = im.astype(np.uint8)

    rng = np.random.default_rng(seed)
    order = rng.permutation(placed.shape[0])
    split = placed.shape[0] - 500
    pools = {"train": order[:split], "test": order[split:]}

    def sample(pool, count):
        idx = pool[rng.integers(0, pool.size, size=count)]
        return placed[idx][:, :, :, None], labels[idx]

    train_x, train_y = sample(pools["train"], n_train)
    test_x, test_y = sample(pools["test"], n_test)
    return train_x, train_y, test_x, test_y
