# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: IMD solution counts and line-by-line absorption sums.

Both functions mirror :mod:`thzqkd._pykernels` exactly; the selector in
:mod:`thzqkd.kernels` decides which one is used.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, M_PI

cnp.import_array()


cdef inline bint _free(long third, long first, long second, long n_sub) nogil:
    # an IMD partner index must exist and differ from the other two tones
    return 1 <= third <= n_sub and third != first and third != second


def imd_count_table(long n_sub, long offset):
    """Counts ``(M1, M2, W1, W2, W3)`` for every subcarrier ``1..n_sub``.

    ``offset`` is the integral ``2 f_I / delta_f``; a negative value flags a
    non-integral ratio, and the terms that need it then vanish.
    """
    out = np.zeros((n_sub, 5), dtype=np.int64)
    cdef cnp.int64_t[:, :] cnt = out
    cdef long tgt, first, second, third
    cdef bint has_off = offset >= 0
    with nogil:
        for tgt in range(1, n_sub + 1):
            for first in range(1, n_sub + 1):
                second = 2 * first - tgt
                if 1 <= second <= n_sub and second != first:
                    cnt[tgt - 1, 0] += 1
                if has_off:
                    second = tgt - offset - 2 * first
                    if 1 <= second <= n_sub and second != first:
                        cnt[tgt - 1, 1] += 1
                for second in range(first, n_sub + 1):
                    if has_off and _free(tgt - first - second - offset, first, second, n_sub):
                        cnt[tgt - 1, 2] += 1
                    if _free(first + second - tgt, first, second, n_sub):
                        cnt[tgt - 1, 3] += 1
            if has_off:
                # difference term: first = tgt + second + third + offset, with second < third
                for second in range(1, n_sub + 1):
                    for third in range(second + 1, n_sub + 1):
                        first = tgt + second + third + offset
                        if first <= n_sub and third != first:
                            cnt[tgt - 1, 4] += 1
    return out


def line_absorption_sum(double[:] grid, double[:] centers, double[:] strength,
                        double[:] width, double cutoff):
    """``sum_j S_j F_vvw(grid; center_j, width_j)`` on every grid wavenumber.

    Units follow the inputs: wavenumbers in cm^-1, ``strength`` in
    cm/molecule, result in cm^2/molecule.
    """
    cdef Py_ssize_t point, line, ng = grid.shape[0], nl = centers.shape[0]
    out = np.zeros(ng, dtype=np.float64)
    cdef double[:] res = out
    cdef double nu, nu0, hw, dm, dp, acc, ratio
    with nogil:
        for point in range(ng):
            nu = grid[point]
            acc = 0.0
            for line in range(nl):
                nu0 = centers[line]
                dm = nu - nu0
                if fabs(dm) > cutoff:
                    continue
                hw = width[line]
                dp = nu + nu0
                ratio = nu / nu0
                acc += strength[line] * ratio * ratio * (
                    hw / (dm * dm + hw * hw) + hw / (dp * dp + hw * hw))
            res[point] = acc / M_PI
    return out
