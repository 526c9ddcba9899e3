"""Per-subcarrier modulation noise from I/Q imbalance and third-order IMD.

A subcarrier's modulation noise is the sum of three variances:

* I/Q imbalance, ``A^2 mu^2 V (kappa^2 + 1 - 2 kappa cos theta)``;
* two-tone IMD products landing on it (``2 f_m - f_n`` and the image-side
  ``2 f_m + f_n + 2 f_I``), weighted by the solution counts M1 and M2;
* three-tone IMD products (``f_m + f_n - f_l`` and image-side relatives),
  weighted by W1, W2 and W3.

Counting convention
-------------------
Two-tone tuples ``(m, n)`` are ordered, with ``m != n``.  Three-tone tuples
are counted once per unordered pair of interchangeable indices, so
``f_m + f_n`` and ``f_n + f_m`` are one product.  The third index must
differ from both others, since otherwise the product collapses onto one of
its own inputs.  All of this lives in :mod:`thzqkd.kernels`.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from . import kernels
from .errors import DomainError

#: relative tolerance for deciding that ``2 f_I / delta_f`` is an integer
INTEGRALITY_RTOL = 1e-9


@dataclass(frozen=True)
class CarrierPlan:
    """Equally spaced subcarriers ``f_k = f_i + k * delta_f`` for ``k = 1..n``."""

    f_i: float
    delta_f: float
    n_subcarriers: int

    def __post_init__(self):
        if not (self.f_i > 0 and math.isfinite(self.f_i)):
            raise DomainError(f"f_i must be > 0 Hz, got {self.f_i!r}")
        if not (self.delta_f > 0 and math.isfinite(self.delta_f)):
            raise DomainError(f"delta_f must be > 0 Hz, got {self.delta_f!r}")
        if int(self.n_subcarriers) != self.n_subcarriers or self.n_subcarriers < 1:
            raise DomainError(f"n_subcarriers must be an integer >= 1, got {self.n_subcarriers!r}")

    @property
    def frequencies(self) -> np.ndarray:
        """Subcarrier frequencies in Hz, ascending."""
        return self.f_i + self.delta_f * np.arange(1, self.n_subcarriers + 1)

    @property
    def offset(self) -> int | None:
        """``2 f_i / delta_f`` as an int, or None when it is not integral."""
        ratio = 2.0 * self.f_i / self.delta_f
        nearest = round(ratio)
        if abs(ratio - nearest) <= INTEGRALITY_RTOL * max(1.0, abs(ratio)):
            return int(nearest)
        return None


@dataclass(frozen=True)
class ModulatorParams:
    """Modulator imperfections shared by every subcarrier.

    Attributes
    ----------
    mu : float
        Modulation index, > 0.
    a_sig : float
        Signal amplitude, > 0.
    kappa : float
        Gain imbalance between the I and Q arms, in [0, 1].
    theta : float
        Quadrature skew in radians, in [0, pi/2].
    v_mod : float
        Gaussian modulation variance in SNU, >= 0.
    """

    mu: float
    a_sig: float
    kappa: float
    theta: float
    v_mod: float

    def __post_init__(self):
        checks = [
            (self.mu > 0, "mu must be > 0"),
            (self.a_sig > 0, "a_sig must be > 0"),
            (0 <= self.kappa <= 1, "kappa must lie in [0, 1]"),
            (0 <= self.theta <= math.pi / 2, "theta must lie in [0, pi/2]"),
            (self.v_mod >= 0, "v_mod must be >= 0"),
        ]
        for ok, msg in checks:
            if not ok:
                raise DomainError(f"{msg}, got {self}")


@dataclass(frozen=True)
class ImdCounts:
    """Number of IMD index tuples landing on one subcarrier."""

    m1: int = 0
    m2: int = 0
    w1: int = 0
    w2: int = 0
    w3: int = 0


@lru_cache(maxsize=256)
def _count_table(n_sub: int, offset: int) -> np.ndarray:
    # lru_cache is safe under threads; a race at worst computes a table twice
    table = kernels.imd_count_table(n_sub, offset)
    table.setflags(write=False)
    return table


def imd_count_table(plan: CarrierPlan) -> np.ndarray:
    """Read-only ``(n, 5)`` array of counts ``m1, m2, w1, w2, w3`` per subcarrier."""
    offset = plan.offset
    return _count_table(int(plan.n_subcarriers), -1 if offset is None else offset)


def _check_index(plan, index):
    if int(index) != index or not 1 <= index <= plan.n_subcarriers:
        raise IndexError(f"subcarrier index {index!r} outside 1..{plan.n_subcarriers}")


def imd_counts(plan: CarrierPlan, index: int) -> ImdCounts:
    """IMD solution counts for subcarrier ``index`` (1-based)."""
    _check_index(plan, index)
    return ImdCounts(*(int(val) for val in imd_count_table(plan)[int(index) - 1]))


def _image_factor(params):
    return 1.0 + 2.0 * params.kappa * math.cos(params.theta) + params.kappa ** 2


def iq_imbalance_variance(params: ModulatorParams) -> float:
    """Variance contributed by I/Q gain and phase imbalance, in SNU."""
    return params.a_sig ** 2 * params.mu ** 2 * params.v_mod * (
        params.kappa ** 2 + 1.0 - 2.0 * params.kappa * math.cos(params.theta))


def imd_two_tone_variance(params: ModulatorParams, counts: ImdCounts) -> float:
    """Variance from two-tone IMD products, in SNU.

    Uses the fourth moment ``<I^4> = 2 V^2`` rather than the Gaussian
    ``3 V^2``; see the decisions ledger.
    """
    var1 = params.v_mod
    var2 = 2.0 * var1 ** 2  # fourth moment of the modulation quadrature
    pref = params.a_sig ** 2 * params.mu ** 6 / 8.0 * _image_factor(params)
    return pref * ((counts.m1 + counts.m2) ** 2 * var2 * var1
                   + 2.0 * (counts.m1 - counts.m2) ** 2 * var1 ** 3)


def imd_three_tone_variance(params: ModulatorParams, counts: ImdCounts) -> float:
    """Variance from three-tone IMD products, in SNU."""
    pref = params.a_sig ** 2 * params.mu ** 6 / 4.0 * _image_factor(params)
    return pref * (counts.w1 ** 2 + counts.w2 ** 2 + counts.w3 ** 2) * params.v_mod ** 3


def modulation_noise(plan: CarrierPlan, params: ModulatorParams, index: int) -> float:
    """Total modulation noise of subcarrier ``index``, in SNU."""
    counts = imd_counts(plan, index)
    return (iq_imbalance_variance(params) + imd_two_tone_variance(params, counts)
            + imd_three_tone_variance(params, counts))


def modulation_noise_profile(plan: CarrierPlan, params: ModulatorParams) -> np.ndarray:
    """Modulation noise for all subcarriers at once, in SNU.

    Vectorised equivalent of calling :func:`modulation_noise` for each index.
    """
    tab = imd_count_table(plan).astype(float)
    m1, m2, w1, w2, w3 = tab.T
    var1 = params.v_mod
    two = params.a_sig ** 2 * params.mu ** 6 / 8.0 * _image_factor(params) * (
        (m1 + m2) ** 2 * 2.0 * var1 ** 3 + 2.0 * (m1 - m2) ** 2 * var1 ** 3)
    three = params.a_sig ** 2 * params.mu ** 6 / 4.0 * _image_factor(params) * (
        w1 ** 2 + w2 ** 2 + w3 ** 2) * var1 ** 3
    return iq_imbalance_variance(params) + two + three


def worst_modulation_noise(plan: CarrierPlan, params: ModulatorParams) -> tuple[int, float]:
    """``(k_worst, value)``: the noisiest subcarrier, ties to the smallest index."""
    prof = modulation_noise_profile(plan, params)
    idx = int(np.argmax(prof))  # argmax returns the first maximum
    return idx + 1, float(prof[idx])
