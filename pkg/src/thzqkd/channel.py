"""Per-subcarrier transmissivity for open-air, diffraction-limited and fixed links."""

from dataclasses import dataclass
import math

import numpy as np

from .atmosphere.spectrum import AbsorptionSpectrum, absorption_at
from .errors import DomainError
from .modnoise import CarrierPlan, ModulatorParams, modulation_noise_profile
from .physics import SPEED_OF_LIGHT, vacuum_variance

#: transmissivities are clamped here before dividing by them
TRANSMISSIVITY_FLOOR = 1e-300
#: subcarriers below this transmissivity are flagged as dark
DARK_CUTOFF = 1e-12

NOISE_MODES = ("worst_case", "per_k")
#: where the vacuum variance and ambient injected noise are evaluated
THERMAL_REFERENCES = ("per_subcarrier", "band_centre")


def open_air_transmissivity(alpha, distance):
    """Beer-Lambert power transmission ``exp(-alpha * distance)``."""
    alpha = np.asarray(alpha, dtype=float)
    distance = np.asarray(distance, dtype=float)
    if np.any(alpha < 0) or np.any(distance < 0):
        raise DomainError("absorption and distance must be >= 0")
    out = np.exp(-alpha * distance)
    return out if out.ndim else float(out)


def beam_radius(distance, waist, wavelength):
    """Gaussian beam radius after propagating ``distance`` metres."""
    if not (waist > 0 and np.all(np.asarray(wavelength) > 0)):
        raise DomainError("beam waist and wavelength must be > 0")
    distance = np.asarray(distance, dtype=float)
    if np.any(distance < 0):
        raise DomainError("distance must be >= 0")
    spread = np.asarray(wavelength) * distance / (math.pi * waist ** 2)
    out = waist * np.sqrt(1.0 + spread ** 2)
    return out if out.ndim else float(out)


def diffraction_transmissivity(distance, waist, aperture, wavelength):
    """Fraction of a Gaussian beam captured by a circular aperture.

    ``1 - exp(-2 r_a^2 / w(d)^2)`` with the beam radius from
    :func:`beam_radius`.
    """
    if not aperture > 0:
        raise DomainError("aperture radius must be > 0")
    radius = beam_radius(distance, waist, wavelength)
    out = -np.expm1(-2.0 * aperture ** 2 / np.asarray(radius) ** 2)
    return out if np.ndim(out) else float(out)


def loss_vacuum_noise(t_ch):
    """Loss-induced vacuum noise ``(1 - T) / T`` referred to the input, SNU."""
    t_arr = np.asarray(t_ch, dtype=float)
    if np.any(~(t_arr > 0)) or np.any(t_arr > 1):
        raise DomainError(f"transmissivity must lie in (0, 1], got {t_ch!r}")
    out = (1.0 - t_arr) / t_arr
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class OpenAir:
    """Absorbing atmosphere described by a tabulated spectrum."""

    spectrum: AbsorptionSpectrum

    def transmissivity(self, freqs, distances):
        alpha = absorption_at(self.spectrum, freqs)
        return np.exp(-np.multiply.outer(np.asarray(distances, dtype=float), alpha))

    def check_band(self, freqs):
        grid = self.spectrum.grid
        for idx, freq in enumerate(np.asarray(freqs), start=1):
            if not grid[0] <= freq <= grid[-1]:
                raise DomainError(
                    f"subcarrier {idx} at {freq!r} Hz lies outside the spectrum "
                    f"range [{grid[0]!r}, {grid[-1]!r}] Hz")


@dataclass(frozen=True)
class Diffraction:
    """Diffraction-limited free-space (vacuum) link."""

    beam_waist: float
    aperture_radius: float

    def __post_init__(self):
        if not (self.beam_waist > 0 and self.aperture_radius > 0):
            raise DomainError("beam waist and aperture radius must be > 0")

    def transmissivity(self, freqs, distances):
        wavelength = SPEED_OF_LIGHT / np.asarray(freqs, dtype=float)
        dist = np.asarray(distances, dtype=float)[..., None]
        return diffraction_transmissivity(dist, self.beam_waist, self.aperture_radius,
                                          wavelength)

    def check_band(self, freqs):
        pass


@dataclass(frozen=True)
class Fixed:
    """Frequency-flat, distance-independent transmissivity."""

    transmissivity_value: float

    def __post_init__(self):
        if not 0 < self.transmissivity_value <= 1:
            raise DomainError(
                f"transmissivity must lie in (0, 1], got {self.transmissivity_value!r}")

    def transmissivity(self, freqs, distances):
        shape = np.shape(distances) + np.shape(freqs)
        return np.full(shape, float(self.transmissivity_value))

    def check_band(self, freqs):
        pass


def transmissivity_table(spec, freqs, distances):
    """``(len(distances), len(freqs))`` transmissivities, floored away from 0."""
    distances = np.asarray(distances, dtype=float)
    if np.any(distances < 0):
        raise DomainError("distance must be >= 0")
    spec.check_band(freqs)
    return np.maximum(spec.transmissivity(freqs, distances), TRANSMISSIVITY_FLOOR)


def modulation_noise_for(plan, params, noise_mode="worst_case"):
    """Per-subcarrier modulation noise under ``noise_mode``."""
    if noise_mode not in NOISE_MODES:
        raise DomainError(f"noise_mode must be one of {NOISE_MODES}, got {noise_mode!r}")
    prof = modulation_noise_profile(plan, params)
    if noise_mode == "worst_case":
        return np.full_like(prof, prof.max())
    return prof


@dataclass(frozen=True)
class SubcarrierChannelState:
    """Channel seen by one subcarrier at one distance (noises in SNU)."""

    index: int
    f_k: float
    t_ch: float
    eps_single: float
    eps_mod: float
    eps_multi: float
    v0: float
    dark: bool = False
    #: frequency the thermal quantities were evaluated at; None means ``f_k``
    f_thermal: float | None = None


def thermal_frequencies(plan: CarrierPlan, reference="per_subcarrier"):
    """Frequencies at which ``V_0`` and the ambient injected noise are evaluated.

    ``"per_subcarrier"`` uses each ``f_k``; ``"band_centre"`` uses the
    midpoint of the first and last subcarrier for all of them.
    """
    if reference not in THERMAL_REFERENCES:
        raise DomainError(
            f"thermal reference must be one of {THERMAL_REFERENCES}, got {reference!r}")
    freqs = plan.frequencies
    if reference == "band_centre":
        return np.full(freqs.shape, 0.5 * (freqs[0] + freqs[-1]))
    return freqs


def per_subcarrier_channel(plan: CarrierPlan, params: ModulatorParams, spec, env,
                           distance, noise_mode="worst_case",
                           thermal_reference="per_subcarrier"):
    """Channel state of every subcarrier at one distance, ordered by index."""
    freqs = plan.frequencies
    t_row = transmissivity_table(spec, freqs, [distance])[0]
    eps_mod = modulation_noise_for(plan, params, noise_mode)
    f_thermal = thermal_frequencies(plan, thermal_reference)
    v0 = vacuum_variance(f_thermal, env)
    out = []
    for idx in range(plan.n_subcarriers):
        tc = float(t_row[idx])
        single = (1.0 - tc) / tc
        out.append(SubcarrierChannelState(
            idx + 1, float(freqs[idx]), tc, single, float(eps_mod[idx]),
            single + float(eps_mod[idx]), float(v0[idx]), tc < DARK_CUTOFF,
            float(f_thermal[idx])))
    return out
