"""Per-pixel brute-force association oracle, independent of the library.

Boxes are rasterized to boolean pixel masks and every overlap is counted by
summing mask conjunctions, so none of the library's interval arithmetic is
reused. Assignment follows the same policy as the pipeline: a building is a
candidate when it holds at least ``threshold`` of the window's pixels, the
candidate with the most pixels wins, and ties go to the lowest index.
"""

from __future__ import annotations

import numpy as np

Box = tuple[int, int, int, int]  # (x, y, width, height)


def box_mask(grid_w: int, grid_h: int, box: Box) -> np.ndarray:
    x, y, w, h = box
    mask = np.zeros((grid_h, grid_w), dtype=bool)
    mask[y : y + h, x : x + w] = True
    return mask


def associate_by_pixels(
    buildings: list[Box],
    windows: list[Box],
    threshold: float,
    grid: tuple[int, int],
) -> list[int | None]:
    """Expected building index per window (None = noise)."""
    grid_w, grid_h = grid
    building_masks = [box_mask(grid_w, grid_h, b) for b in buildings]
    expected: list[int | None] = []
    for window in windows:
        window_mask = box_mask(grid_w, grid_h, window)
        window_pixels = int(window_mask.sum())
        best_index: int | None = None
        best_overlap = 0
        for bi, building_mask in enumerate(building_masks):
            overlap = int((window_mask & building_mask).sum())
            if overlap >= threshold * window_pixels and overlap > best_overlap:
                best_overlap = overlap
                best_index = bi
        expected.append(best_index)
    return expected
