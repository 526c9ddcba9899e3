"""Physical constants, black-body occupation and shot-noise-unit variances.

All frequencies are in hertz and temperatures in kelvin.  Variances are in
shot-noise units (SNU), where the vacuum quadrature variance is 1.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# CODATA 2018 exact values
PLANCK = 6.62607015e-34  # J s
BOLTZMANN = 1.380649e-23  # J / K
SPEED_OF_LIGHT = 2.99792458e8  # m / s

#: second radiation constant h c / k_B in cm K, used for wavenumber work
C2_CM_K = PLANCK * SPEED_OF_LIGHT * 100.0 / BOLTZMANN


@dataclass(frozen=True)
class ThermalEnvironment:
    """Temperature of the environment a mode is in equilibrium with."""

    temperature: float

    def __post_init__(self):
        if not np.isfinite(self.temperature) or self.temperature < 0:
            raise DomainError(
                f"temperature must be >= 0 K, got {self.temperature!r}")


def _temperature(env):
    return env.temperature if isinstance(env, ThermalEnvironment) else env


def thermal_occupation(freq, env):
    """Mean black-body photon number ``1 / (exp(h f / k_B T) - 1)``.

    Parameters
    ----------
    freq : float or array_like
        Mode frequency in Hz, strictly positive.
    env : ThermalEnvironment or float
        Environment, or its temperature in kelvin.  ``T = 0`` returns 0.

    Returns
    -------
    float or ndarray
    """
    temp = float(_temperature(env))
    f_arr = np.asarray(freq, dtype=float)
    if np.any(~(f_arr > 0)):
        raise DomainError(f"frequency must be > 0 Hz, got {freq!r}")
    if not np.isfinite(temp) or temp < 0:
        raise DomainError(f"temperature must be >= 0 K, got {temp!r}")
    if temp == 0:
        out = np.zeros_like(f_arr)
    else:
        # expm1 keeps the k_B T / h f - 1/2 asymptote accurate for small ratios;
        # huge ratios (and subnormal temperatures) underflow cleanly to 0
        with np.errstate(over="ignore", divide="ignore"):
            ratio = PLANCK * f_arr / (BOLTZMANN * temp)
            out = 1.0 / np.expm1(ratio)
    return out if out.ndim else float(out)


def vacuum_variance(freq, env):
    """Variance ``2 n + 1`` of a thermal 'vacuum' mode, in SNU."""
    return 2.0 * thermal_occupation(freq, env) + 1.0


def wavenumber_to_hz(nu_cm):
    """Convert a wavenumber in cm^-1 to a frequency in Hz."""
    return np.asarray(nu_cm, dtype=float) * SPEED_OF_LIGHT * 100.0


def hz_to_wavenumber(f_hz):
    """Convert a frequency in Hz to a wavenumber in cm^-1."""
    return np.asarray(f_hz, dtype=float) / (SPEED_OF_LIGHT * 100.0)
