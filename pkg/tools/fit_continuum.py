"""Fit the two continuum coefficients to the ITU-R P.676 water continuum.

The ITU model represents excess water absorption with a pseudo-line at
1780 GHz.  Its contribution is sampled over 300 GHz to 1 THz at the four
humidity presets, then fitted by least squares with the form
``(C_s p_w + C_f p_air) p_w (f / THz)^2``.  The printed coefficients are
the defaults in ``thzqkd.atmosphere.ContinuumCoeffs``.
"""

import numpy as np

HPA_PER_TORR = 1013.25 / 760.0
PSEUDO = (1780.0, 17506.0, 0.952, 196.3, 2.00, 24.15, 5.00)


def pseudo_line_alpha(f_ghz, p_w, temperature=296.0):
    """Pseudo-line absorption, m^-1, water and dry pressures in Torr."""
    f0, b1, b2, b3, b4, b5, b6 = PSEUDO
    th = 300.0 / temperature
    p_water_hpa = p_w * HPA_PER_TORR
    p_dry = (760.0 - p_w) * HPA_PER_TORR
    strength = b1 * 1e-1 * p_water_hpa * th ** 3.5 * np.exp(b2 * (1 - th))
    width = b3 * 1e-4 * (p_dry * th ** b4 + b5 * p_water_hpa * th ** b6)
    shape = (f_ghz / f0) * (width / ((f0 - f_ghz) ** 2 + width ** 2)
                            + width / ((f0 + f_ghz) ** 2 + width ** 2))
    db_per_km = 0.1820 * f_ghz * strength * shape
    return db_per_km / 4342.9


def fit():
    f_ghz = np.arange(300.0, 1001.0, 10.0)
    rows, rhs = [], []
    for p_w in (3.60, 8.04, 10.05, 15.23):
        f2 = (f_ghz / 1e3) ** 2
        rows += list(np.column_stack([p_w * p_w * f2, (760.0 - p_w) * p_w * f2]))
        rhs += list(pseudo_line_alpha(f_ghz, p_w))
    coeffs, *_ = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)
    return coeffs


if __name__ == "__main__":
    c_self, c_foreign = fit()
    print(f"self_coeff = {c_self:.3e}\nforeign_coeff = {c_foreign:.3e}")
