"""NumPy fallback for the masked pixel-statistics kernel."""

from __future__ import annotations

import numpy as np


def masked_mean_sums(
    img: np.ndarray,
    x0: int,
    y0: int,
    x1: int,
    y1: int,
    windows: np.ndarray,
) -> tuple[int, int, int, int]:
    """Channel sums and pixel count over [x0,x1) x [y0,y1) minus windows.

    Same contract as the compiled kernel: ``windows`` rows are half-open
    (wx0, wy0, wx1, wy1) rects pre-clipped to the region.
    """
    region = img[y0:y1, x0:x1]
    mask = np.ones(region.shape[:2], dtype=bool)
    for wx0, wy0, wx1, wy1 in windows:
        mask[wy0 - y0 : wy1 - y0, wx0 - x0 : wx1 - x0] = False
    count = int(mask.sum())
    if count == 0:
        return 0, 0, 0, 0
    sums = region[mask].sum(axis=0, dtype=np.uint64)
    return int(sums[0]), int(sums[1]), int(sums[2]), count
