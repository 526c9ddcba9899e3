"""Pure numpy implementations of the hot loops in :mod:`thzqkd._ckernels`."""

import numpy as np


def imd_count_table(n_sub, offset):
    """Counts ``(M1, M2, W1, W2, W3)`` for every subcarrier ``1..n_sub``.

    ``offset`` is the integral ``2 f_I / delta_f`` or negative when that
    ratio is not an integer.  For each target subcarrier the last index of
    every condition is solved for, so the cost is O(n_sub^2) per target.
    """
    n_sub = int(n_sub)
    offset = int(offset)
    has_off = offset >= 0
    out = np.zeros((n_sub, 5), dtype=np.int64)
    idx = np.arange(1, n_sub + 1)
    first, second = np.meshgrid(idx, idx, indexing="ij")
    upper = first <= second

    def free(third):
        return (third >= 1) & (third <= n_sub) & (third != first) & (third != second)

    def in_band(arr):
        return (arr >= 1) & (arr <= n_sub) & (arr != idx)

    for tgt in range(1, n_sub + 1):
        row = out[tgt - 1]
        row[0] = np.count_nonzero(in_band(2 * idx - tgt))
        row[3] = np.count_nonzero(upper & free(first + second - tgt))
        if has_off:
            row[1] = np.count_nonzero(in_band(tgt - offset - 2 * idx))
            row[2] = np.count_nonzero(upper & free(tgt - first - second - offset))
            # difference term over the (second, third) pair, second < third
            lead = tgt + first + second + offset
            row[4] = np.count_nonzero((first < second) & (lead <= n_sub) & (second != lead))
    return out


def line_absorption_sum(grid, centers, strength, width, cutoff, chunk=256):
    """``sum_j S_j F_vvw(grid; center_j, width_j)`` on every grid wavenumber."""
    grid = np.asarray(grid, dtype=float)
    centers = np.asarray(centers, dtype=float)
    strength = np.asarray(strength, dtype=float)
    width = np.asarray(width, dtype=float)
    out = np.zeros_like(grid)
    for start in range(0, centers.size, chunk):
        nu0 = centers[None, start:start + chunk]
        hw = width[None, start:start + chunk]
        dm = grid[:, None] - nu0
        dp = grid[:, None] + nu0
        prof = (grid[:, None] / nu0) ** 2 * (hw / (dm * dm + hw * hw) + hw / (dp * dp + hw * hw))
        prof[np.abs(dm) > cutoff] = 0.0
        out += prof @ strength[start:start + chunk]
    return out / np.pi
