"""Line-by-line water-vapour absorption plus an empirical continuum.

Absorption coefficients are Napierian and per metre.  Pressures are in
Torr, the native unit of the humidity presets; atm conversions are
internal.
"""

from dataclasses import dataclass
import math

import numpy as np

from .. import kernels
from ..errors import DomainError
from ..physics import BOLTZMANN, C2_CM_K, hz_to_wavenumber
from .spectrum import AbsorptionSpectrum

TORR_PER_ATM = 760.0
PA_PER_TORR = 101325.0 / 760.0
HPA_PER_TORR = PA_PER_TORR / 100.0
REFERENCE_TEMPERATURE = 296.0
ROOM_TEMPERATURE = 296.0

#: per-line wing cutoff, cm^-1; farther wings belong to the continuum
WING_CUTOFF = 25.0
#: lines this far outside the evaluated band (cm^-1) are still summed
BAND_MARGIN = 50.0


@dataclass(frozen=True)
class MoistAir:
    """Partial pressures (Torr) of water vapour and dry air at a temperature (K)."""

    water_pressure: float
    air_pressure: float
    temperature: float = ROOM_TEMPERATURE

    def __post_init__(self):
        if self.water_pressure < 0 or self.air_pressure < 0:
            raise DomainError("partial pressures must be >= 0 Torr")
        if self.water_pressure + self.air_pressure <= 0:
            raise DomainError("total pressure must be > 0")
        if not self.temperature > 0:
            raise DomainError(f"temperature must be > 0 K, got {self.temperature!r}")

    @classmethod
    def at_total_pressure(cls, water_pressure, temperature=ROOM_TEMPERATURE,
                          total=TORR_PER_ATM):
        """Moist air whose partial pressures add up to ``total`` Torr."""
        return cls(water_pressure, total - water_pressure, temperature)

    @classmethod
    def from_relative_humidity(cls, rh, temperature=ROOM_TEMPERATURE, total=TORR_PER_ATM):
        return cls.at_total_pressure(rh_to_water_pressure(rh, temperature), temperature, total)


@dataclass(frozen=True)
class ContinuumCoeffs:
    """Self and foreign continuum coefficients, m^-1 Torr^-2 THz^-2.

    The defaults are fitted to the pseudo-line continuum of the ITU-R P.676
    water-vapour model at 296 K; see ``tools/fit_continuum.py``.
    """

    self_coeff: float = 5.1e-5
    foreign_coeff: float = 2.0e-6


def saturation_pressure(temperature):
    """Buck saturation vapour pressure over liquid water, in Torr."""
    tc = temperature - 273.15
    hpa = 6.1121 * math.exp((18.678 - tc / 234.5) * (tc / (257.14 + tc)))
    return hpa / HPA_PER_TORR


def rh_to_water_pressure(rh, temperature=ROOM_TEMPERATURE):
    """Water partial pressure in Torr for a relative humidity in percent."""
    if not 0 <= rh <= 100:
        raise DomainError(f"relative humidity must lie in [0, 100] %, got {rh!r}")
    return rh / 100.0 * saturation_pressure(temperature)


def _line_arrays(lines, temperature, air):
    """Temperature-scaled strengths, broadened widths and shifted centres."""
    centers = np.array([ln.center for ln in lines], dtype=float)
    s_ref = np.array([ln.intensity for ln in lines], dtype=float)
    elow = np.array([ln.lower_state_energy for ln in lines], dtype=float)
    n_air = np.array([ln.temp_exponent for ln in lines], dtype=float)
    g_air = np.array([ln.air_halfwidth for ln in lines], dtype=float)
    g_self = np.array([ln.self_halfwidth for ln in lines], dtype=float)
    shift = np.array([ln.pressure_shift for ln in lines], dtype=float)

    t_ref = REFERENCE_TEMPERATURE
    # rigid asymmetric rotor: Q ~ T^1.5
    part = (t_ref / temperature) ** 1.5
    boltz = np.exp(-C2_CM_K * elow * (1.0 / temperature - 1.0 / t_ref))
    stim = -np.expm1(-C2_CM_K * centers / temperature) / -np.expm1(-C2_CM_K * centers / t_ref)
    strength = s_ref * part * boltz * stim

    p_air = air.air_pressure / TORR_PER_ATM
    p_w = air.water_pressure / TORR_PER_ATM
    width = (g_air * p_air + g_self * p_w) * (t_ref / temperature) ** n_air
    return centers + shift * p_air, strength, width


def water_number_density(air):
    """Water molecules per cm^3 (ideal gas)."""
    return air.water_pressure * PA_PER_TORR / (BOLTZMANN * air.temperature) * 1e-6


def line_absorption(freq, lines, air):
    """Resonant absorption per metre at ``freq`` Hz (scalar or array).

    Sums a van Vleck-Weisskopf profile per line with a hard
    ``WING_CUTOFF`` from the line centre.
    """
    f_arr = np.atleast_1d(np.asarray(freq, dtype=float))
    if np.any(~(f_arr > 0)):
        raise DomainError("frequency must be > 0 Hz")
    out = np.zeros_like(f_arr)
    if air.water_pressure > 0 and len(lines):
        centers, strength, width = _line_arrays(lines, air.temperature, air)
        nu = np.ascontiguousarray(hz_to_wavenumber(f_arr))
        xsec = kernels.line_absorption_sum(nu, centers, strength, width, WING_CUTOFF)
        out = 100.0 * water_number_density(air) * xsec
    return out if np.ndim(freq) else float(out[0])


def continuum_absorption(freq, air, coeffs=None):
    """Smooth continuum absorption per metre, quadratic in frequency."""
    coeffs = ContinuumCoeffs() if coeffs is None else coeffs
    f_thz = np.asarray(freq, dtype=float) / 1e12
    base = (coeffs.self_coeff * air.water_pressure
            + coeffs.foreign_coeff * air.air_pressure) * air.water_pressure
    out = base * f_thz ** 2
    return out if np.ndim(out) else float(out)


def total_absorption_spectrum(grid, lines, air, coeffs=None):
    """Lines plus continuum over an ascending frequency grid (Hz).

    Only lines whose centres lie within ``BAND_MARGIN`` of the grid are
    summed.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or np.any(np.diff(grid) <= 0):
        raise DomainError("grid must be a non-empty, strictly ascending 1-D array")
    lo, hi = hz_to_wavenumber(grid[0]), hz_to_wavenumber(grid[-1])
    used = [ln for ln in lines if lo - BAND_MARGIN <= ln.center <= hi + BAND_MARGIN]
    alpha = line_absorption(grid, used, air) + continuum_absorption(grid, air, coeffs)
    return AbsorptionSpectrum(grid, np.maximum(alpha, 0.0), provenance="computed")
