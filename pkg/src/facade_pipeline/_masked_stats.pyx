# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-pixel statistics over a rectangular region minus masked rects.

Hot loop of the wall-color stage: sums RGB channels over every pixel of the
elevation rectangle whose center is not inside any window rectangle.
"""

from libc.stdlib cimport free, malloc


def masked_mean_sums(const unsigned char[:, :, ::1] img,
                     Py_ssize_t x0, Py_ssize_t y0,
                     Py_ssize_t x1, Py_ssize_t y1,
                     const long long[:, ::1] windows):
    """Channel sums and pixel count over [x0,x1) x [y0,y1) minus windows.

    ``windows`` rows are (wx0, wy0, wx1, wy1) half-open rects, pre-clipped
    to the region. Returns (sum_r, sum_g, sum_b, count).
    """
    cdef unsigned long long sr = 0, sg = 0, sb = 0, n = 0
    cdef Py_ssize_t yy, xx, k, nact
    cdef Py_ssize_t nwin = windows.shape[0]
    cdef bint inside
    cdef Py_ssize_t *active = NULL

    if nwin > 0:
        active = <Py_ssize_t *> malloc(nwin * sizeof(Py_ssize_t))
        if active == NULL:
            raise MemoryError()
    try:
        for yy in range(y0, y1):
            # windows crossing this row; most rows intersect only a few
            nact = 0
            for k in range(nwin):
                if windows[k, 1] <= yy < windows[k, 3]:
                    active[nact] = k
                    nact += 1
            if nact == 0:
                for xx in range(x0, x1):
                    sr += img[yy, xx, 0]
                    sg += img[yy, xx, 1]
                    sb += img[yy, xx, 2]
                n += x1 - x0
            else:
                for xx in range(x0, x1):
                    inside = False
                    for k in range(nact):
                        if windows[active[k], 0] <= xx < windows[active[k], 2]:
                            inside = True
                            break
                    if not inside:
                        sr += img[yy, xx, 0]
                        sg += img[yy, xx, 1]
                        sb += img[yy, xx, 2]
                        n += 1
    finally:
        if active != NULL:
            free(active)
    return sr, sg, sb, n
