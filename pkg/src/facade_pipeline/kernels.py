"""Backend selection for the pixel-statistics kernel.

The compiled Cython kernel is preferred when present; otherwise the NumPy
fallback is used. Set ``FACADE_PIPELINE_PURE=1`` to force the fallback
(useful for testing and benchmarking both paths).
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from . import _masked_stats_py

_FORCE_PURE = os.environ.get("FACADE_PIPELINE_PURE", "") not in ("", "0")

if not _FORCE_PURE:
    try:
        from . import _masked_stats as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _masked_stats_py
        BACKEND = "numpy"
else:
    _impl = _masked_stats_py
    BACKEND = "numpy"


def available_backends() -> dict[str, object]:
    """All importable kernel implementations, keyed by name."""
    backends: dict[str, object] = {"numpy": _masked_stats_py}
    try:
        from . import _masked_stats  # type: ignore[attr-defined]

        backends["compiled"] = _masked_stats
    except ImportError:
        pass
    return backends


def masked_mean_sums(
    img: np.ndarray,
    x0: int,
    y0: int,
    x1: int,
    y1: int,
    windows: Sequence[tuple[int, int, int, int]] | np.ndarray,
) -> tuple[int, int, int, int]:
    """Channel sums and count over the region minus the masked rects."""
    win = np.asarray(windows, dtype=np.int64).reshape(-1, 4)
    if not win.flags["C_CONTIGUOUS"]:
        win = np.ascontiguousarray(win)
    return _impl.masked_mean_sums(img, x0, y0, x1, y1, win)
