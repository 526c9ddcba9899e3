"""Regenerate the bundled compact H2O line list in HITRAN .par layout.

The sub-THz lines are converted from the ITU-R P.676 water-vapour line
table (f0 GHz, b1..b6); the handful of strong lines between 1 and 2.2 THz
carry rounded catalogue intensities and lower-state energies.  The result
is a small stand-in for a full HITRAN download; point ``--lines`` at a real
``.par`` file for line-complete work.

Usage::

    python tools/make_h2o_linelist.py > src/thzqkd/atmosphere/data/h2o_thz.par
"""

import sys

GHZ_PER_CM = 29.9792458
# ITU width unit: b3 * 1e-4 GHz/hPa  ->  cm^-1/atm
WIDTH_ITU_TO_HITRAN = 1e-4 * 1013.25 / GHZ_PER_CM
# ITU strength b1 [kHz/hPa at 300 K] -> HITRAN S [cm/molecule], times f0 [GHz]
STRENGTH_ITU_TO_HITRAN = 1.819e-25
# b2 is c2 * E'' / 300 K
ENERGY_ITU_TO_HITRAN = 300.0 / 1.4387769

ITU_LINES = [
    # f0        b1      b2      b3     b4    b5     b6
    (22.235080, .1079, 2.144, 26.38, .76, 5.087, 1.00),
    (67.803960, .0011, 8.732, 28.58, .69, 4.930, .82),
    (119.995940, .0007, 8.353, 29.48, .70, 4.780, .79),
    (183.310087, 2.273, .668, 29.06, .77, 5.022, .85),
    (321.225630, .0470, 6.179, 24.04, .67, 4.398, .54),
    (325.152888, 1.514, 1.541, 28.23, .64, 4.893, .74),
    (336.227764, .0010, 9.825, 26.93, .69, 4.740, .61),
    (380.197353, 11.67, 1.048, 28.11, .54, 5.063, .89),
    (390.134508, .0045, 7.347, 21.52, .63, 4.810, .55),
    (437.346667, .0632, 5.048, 18.45, .60, 4.230, .48),
    (439.150807, .9098, 3.595, 20.07, .63, 4.483, .52),
    (443.018343, .1920, 5.048, 15.55, .60, 5.083, .50),
    (448.001085, 10.41, 1.405, 25.64, .66, 5.028, .67),
    (470.888999, .3254, 3.597, 21.34, .66, 4.506, .65),
    (474.689092, 1.260, 2.379, 23.20, .65, 4.804, .64),
    (488.490108, .2529, 2.852, 25.86, .69, 5.201, .72),
    (503.568532, .0372, 6.731, 16.12, .61, 3.980, .43),
    (504.482692, .0124, 6.731, 16.12, .61, 4.010, .45),
    (547.676440, .9785, .158, 26.00, .70, 4.500, 1.00),
    (552.020960, .1840, .158, 26.00, .70, 4.500, 1.00),
    (556.935985, 497.0, .159, 30.86, .69, 4.552, 1.00),
    (620.700807, 5.015, 2.391, 24.38, .71, 4.856, .68),
    (645.766085, .0067, 8.633, 18.00, .60, 4.000, .50),
    (658.005280, .2732, 7.816, 32.10, .69, 4.140, 1.00),
    (752.033113, 243.4, .396, 30.86, .68, 4.352, .84),
    (841.051732, .0134, 8.177, 15.90, .33, 5.760, .45),
    (859.965698, .1325, 8.055, 30.60, .68, 4.090, .84),
    (899.303175, .0547, 7.914, 29.85, .68, 4.530, .90),
    (902.611085, .0386, 8.429, 28.65, .70, 5.100, .95),
    (906.205957, .1836, 5.110, 24.08, .70, 4.700, .53),
    (916.171582, 8.400, 1.441, 26.73, .70, 5.150, .78),
    (923.112692, .0079, 10.293, 29.00, .70, 5.000, .80),
    (970.315022, 9.009, 1.919, 25.50, .64, 4.940, .67),
    (987.926764, 134.6, .257, 29.85, .68, 4.550, .90),
]

# f0 GHz, S cm/molecule, E'' cm^-1, gamma_air, gamma_self (cm^-1/atm), n_air
THZ_LINES = [
    (1097.365, 1.2e-19, 136.76, .0950, .450, .70),
    (1113.343, 8.0e-20, 0.0, .1000, .460, .70),
    (1153.127, 3.0e-20, 134.90, .0950, .450, .70),
    (1162.912, 1.1e-19, 173.37, .0950, .450, .70),
    (1207.639, 3.5e-20, 275.50, .0900, .440, .70),
    (1228.789, 6.5e-20, 95.18, .0950, .450, .70),
    (1602.219, 6.0e-20, 222.05, .0900, .440, .70),
    (1661.008, 1.7e-19, 79.50, .0950, .450, .70),
    (1669.905, 4.5e-19, 23.79, .1000, .460, .70),
    (1716.770, 2.6e-19, 79.50, .0950, .450, .70),
    (1919.359, 1.3e-19, 142.28, .0950, .450, .70),
    (2164.132, 1.0e-19, 70.09, .0950, .450, .70),
]


def _f5(value, decimals):
    text = f"{value:.{decimals}f}"
    if text.startswith("0."):
        text = text[1:]  # HITRAN F5.4 fields drop the leading zero
    return f"{text:>5s}"[:5]


def par_record(nu, strength, g_air, g_self, elow, n_air, shift=0.0, mol=1, iso=1):
    rec = (f"{mol:2d}{iso:1d}{nu:12.6f}{strength:10.3E}{0.0:10.3E}"
           f"{_f5(g_air, 4)}{_f5(g_self, 3)}{elow:10.4f}{n_air:4.2f}{shift:8.6f}")
    rec += " " * (160 - len(rec))
    assert len(rec) == 160, rec
    return rec


def records():
    out = []
    for f0, b1, b2, b3, b4, b5, _ in ITU_LINES:
        out.append((f0 / GHZ_PER_CM, STRENGTH_ITU_TO_HITRAN * f0 * b1,
                    b3 * WIDTH_ITU_TO_HITRAN, b3 * b5 * WIDTH_ITU_TO_HITRAN,
                    ENERGY_ITU_TO_HITRAN * b2, b4))
    for f0, strength, elow, g_air, g_self, n_air in THZ_LINES:
        out.append((f0 / GHZ_PER_CM, strength, g_air, g_self, elow, n_air))
    out.sort()
    return [par_record(*rec) for rec in out]


def main():
    sys.stdout.write("\n".join(records()) + "\n")


if __name__ == "__main__":
    main()
