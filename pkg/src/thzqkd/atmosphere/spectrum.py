"""Tabulated absorption spectra: container, interpolation and CSV I/O."""

import csv
import io

import numpy as np

from ..errors import DomainError, ParseError

HEADER = ("frequency_hz", "alpha_per_m")


class AbsorptionSpectrum:
    """Absorption coefficient (Napierian, per metre) sampled on a frequency grid.

    Parameters
    ----------
    grid : array_like
        Strictly ascending frequencies in Hz.
    alpha : array_like
        Non-negative absorption coefficients, one per grid point.
    provenance : {"computed", "loaded"}
    """

    def __init__(self, grid, alpha, provenance="computed"):
        grid = np.array(grid, dtype=float)
        alpha = np.array(alpha, dtype=float)
        if grid.ndim != 1 or grid.shape != alpha.shape or grid.size == 0:
            raise DomainError("grid and alpha must be equal-length 1-D arrays")
        if np.any(np.diff(grid) <= 0):
            raise DomainError("spectrum grid must be strictly ascending")
        if np.any(~(alpha >= 0)):
            raise DomainError("absorption coefficients must be >= 0")
        if provenance not in ("computed", "loaded"):
            raise DomainError(f"unknown provenance {provenance!r}")
        grid.setflags(write=False)
        alpha.setflags(write=False)
        self.grid = grid
        self.alpha = alpha
        self.provenance = provenance

    def __len__(self):
        return self.grid.size

    def __repr__(self):
        return (f"AbsorptionSpectrum({self.grid[0]:.6g}..{self.grid[-1]:.6g} Hz, "
                f"{len(self)} points, {self.provenance})")

    def __eq__(self, other):
        if not isinstance(other, AbsorptionSpectrum):
            return NotImplemented
        return (np.array_equal(self.grid, other.grid)
                and np.array_equal(self.alpha, other.alpha))

    __hash__ = None

    @classmethod
    def zeros(cls, lo, hi, points=2):
        return cls(np.linspace(lo, hi, points), np.zeros(points))


def absorption_at(spectrum, freq):
    """Linearly interpolated absorption at ``freq`` Hz (scalar or array).

    Exact at grid points.  Raises DomainError outside the grid; there is no
    extrapolation.
    """
    f_arr = np.asarray(freq, dtype=float)
    if np.any(f_arr < spectrum.grid[0]) or np.any(f_arr > spectrum.grid[-1]):
        raise DomainError(
            f"frequency {freq!r} outside spectrum range "
            f"[{spectrum.grid[0]!r}, {spectrum.grid[-1]!r}] Hz")
    out = np.interp(f_arr, spectrum.grid, spectrum.alpha)
    return out if out.ndim else float(out)


def save_spectrum_table(spectrum, stream=None):
    """Write ``frequency_hz,alpha_per_m`` CSV with shortest round-trip floats.

    Returns the bytes when ``stream`` is None, otherwise writes to it
    (text or binary).
    """
    rows = [",".join(HEADER)]
    rows += [f"{float(freq)!r},{float(val)!r}" for freq, val in zip(spectrum.grid, spectrum.alpha)]
    data = ("\n".join(rows) + "\n").encode("ascii")
    if stream is None:
        return data
    if isinstance(stream, io.TextIOBase):
        stream.write(data.decode("ascii"))
    else:
        stream.write(data)
    return None


def load_spectrum_table(stream):
    """Read a spectrum CSV written by :func:`save_spectrum_table`.

    Raises
    ------
    ParseError
        Naming the 1-based row of the first malformed or out-of-order entry.
    """
    data = stream if isinstance(stream, (bytes, str)) else stream.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    reader = csv.reader(io.StringIO(data))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty spectrum table") from None
    if tuple(cell.strip() for cell in header) != HEADER:
        raise ParseError(f"expected header {','.join(HEADER)!r}, got {','.join(header)!r}", line=1)
    grid, alpha = [], []
    for row_no, row in enumerate(reader, start=2):
        if not row or row[0].startswith("#"):
            continue
        if len(row) != 2:
            raise ParseError(f"expected 2 fields, got {len(row)}", line=row_no)
        try:
            freq, val = float(row[0]), float(row[1])
        except ValueError:
            raise ParseError(f"non-numeric field in {row!r}", line=row_no) from None
        if grid and freq <= grid[-1]:
            raise ParseError("frequencies must be strictly ascending", line=row_no)
        if not val >= 0:
            raise ParseError("absorption must be >= 0", line=row_no)
        grid.append(freq)
        alpha.append(val)
    if not grid:
        raise ParseError("spectrum table has no rows")
    return AbsorptionSpectrum(grid, alpha, provenance="loaded")
