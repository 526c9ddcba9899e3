"""Water-vapour absorption spectra for terahertz links."""

from .absorption import (ContinuumCoeffs, MoistAir, continuum_absorption,
                         line_absorption, rh_to_water_pressure, saturation_pressure,
                         total_absorption_spectrum)
from .hitran import SpectralLine, bundled_water_lines, parse_hitran_records
from .spectrum import (AbsorptionSpectrum, absorption_at, load_spectrum_table,
                       save_spectrum_table)

__all__ = [
    "AbsorptionSpectrum", "ContinuumCoeffs", "MoistAir", "SpectralLine",
    "absorption_at", "bundled_water_lines", "continuum_absorption",
    "line_absorption", "load_spectrum_table", "parse_hitran_records",
    "rh_to_water_pressure", "save_spectrum_table", "saturation_pressure",
    "total_absorption_spectrum",
]
