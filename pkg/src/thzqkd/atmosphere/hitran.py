"""Reader for HITRAN 2004+ fixed-width ``.par`` line records."""

from dataclasses import dataclass
from importlib import resources
import io

from ..errors import ParseError

WATER_ID = 1
RECORD_LENGTH = 160

# (name, first column, last column), 1-based inclusive as in the format docs
_FIELDS = [
    ("molecule_id", 1, 2, int),
    ("isotopologue_id", 3, 3, int),
    ("center", 4, 15, float),
    ("intensity", 16, 25, float),
    ("air_halfwidth", 36, 40, float),
    ("self_halfwidth", 41, 45, float),
    ("lower_state_energy", 46, 55, float),
    ("temp_exponent", 56, 59, float),
    ("pressure_shift", 60, 67, float),
]


@dataclass(frozen=True)
class SpectralLine:
    """One rovibrational transition.

    ``center`` and ``lower_state_energy`` are in cm^-1, ``intensity`` in
    cm^-1/(molecule cm^-2) at 296 K, half-widths and ``pressure_shift`` in
    cm^-1/atm.
    """

    center: float
    intensity: float
    air_halfwidth: float
    self_halfwidth: float
    lower_state_energy: float
    temp_exponent: float
    pressure_shift: float = 0.0
    molecule_id: int = WATER_ID
    isotopologue_id: int = 1


def _parse_field(text, conv):
    text = text.strip()
    if conv is int:
        return int(text)
    # Fortran E-format may use D exponents
    return float(text.replace("D", "E").replace("d", "e"))


def parse_hitran_records(stream, molecule_id=WATER_ID):
    """Parse ``.par`` records, keeping only ``molecule_id`` (water by default).

    Parameters
    ----------
    stream : binary or text file object, bytes or str
    molecule_id : int or None
        Species to keep; None keeps every record.

    Returns
    -------
    list of SpectralLine

    Raises
    ------
    ParseError
        With the 1-based record number and column range of the first bad field.
    """
    if isinstance(stream, (bytes, str)):
        data = stream
    else:
        data = stream.read()
    if isinstance(data, bytes):
        data = data.decode("ascii", errors="replace")
    lines = []
    for lineno, rec in enumerate(io.StringIO(data), start=1):
        rec = rec.rstrip("\r\n")
        if not rec.strip():
            continue
        if len(rec) < 67:
            raise ParseError(f"record too short ({len(rec)} chars)", line=lineno)
        values = {}
        for name, lo, hi, conv in _FIELDS:
            raw = rec[lo - 1:hi]
            try:
                values[name] = _parse_field(raw, conv)
            except ValueError:
                raise ParseError(f"bad {name} field {raw!r}", line=lineno,
                                 columns=(lo, hi)) from None
        if molecule_id is not None and values["molecule_id"] != molecule_id:
            continue
        if values["center"] <= 0 or values["air_halfwidth"] <= 0 or values["intensity"] < 0:
            raise ParseError("non-physical line parameters", line=lineno, columns=(4, 40))
        lines.append(SpectralLine(**values))
    return lines


def bundled_water_lines():
    """The compact water line list shipped with the package (22 GHz to 2.2 THz)."""
    data = resources.files(__package__).joinpath("data/h2o_thz.par").read_bytes()
    return parse_hitran_records(data)
