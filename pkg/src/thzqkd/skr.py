"""Secret key rates under a collective entangling-cloner attack.

Reverse reconciliation with homodyne detection.  The eavesdropper holds
a two-mode squeezed vacuum of variance ``W`` and injects one arm through a
beam splitter of transmissivity ``T``.  All variances are in SNU and all
informations in bits per channel use.

Eigenvalues are computed from closed forms arranged so that the small
eigenvalue of each pair comes from a product rather than a difference,
which keeps them accurate when the channel is nearly lossless.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .channel import (TRANSMISSIVITY_FLOOR, modulation_noise_for, per_subcarrier_channel,
                      thermal_frequencies, transmissivity_table)
from .errors import DomainError, PhysicalityError
from .physics import vacuum_variance

#: relative slack below 1 tolerated on symplectic eigenvalues before raising
EIGEN_RTOL = 1e-9


@dataclass(frozen=True)
class DetectionParams:
    """Bob's detector efficiency, trusted noise (SNU) and reconciliation efficiency."""

    eta: float = 0.1
    s_trusted: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        if not 0 < self.eta <= 1:
            raise DomainError(f"eta must lie in (0, 1], got {self.eta!r}")
        if not self.s_trusted >= 1:
            raise DomainError(f"trusted noise must be >= 1 SNU, got {self.s_trusted!r}")
        if not 0 < self.beta <= 1:
            raise DomainError(f"beta must lie in (0, 1], got {self.beta!r}")


def channel_thermal_noise(freq, env):
    """Eavesdropper's injected noise ``W`` for the ambient policy: ``2 n + 1``."""
    return vacuum_variance(freq, env)


def bob_variance(v_a, t_ch, eps_multi, eve_noise, det: DetectionParams):
    """Variance of Bob's detected quadrature.

    Passing the vacuum variance for ``v_a`` gives the conditional variance
    given Alice's data.
    """
    if not 0 < t_ch <= 1:
        raise DomainError(f"transmissivity must lie in (0, 1], got {t_ch!r}")
    if v_a < 0 or eps_multi < 0 or eve_noise < 1:
        raise DomainError("variances must be >= 0 and the injected noise >= 1")
    return (det.eta * t_ch * (v_a + eps_multi) + det.eta * (1.0 - t_ch) * eve_noise
            + (1.0 - det.eta) * det.s_trusted)


def mutual_information_ab(v_b, v_b_given_a):
    """Alice-Bob mutual information ``0.5 log2(V_b / V_b|a)`` in bits."""
    if not v_b_given_a > 0:
        raise DomainError("conditional variance must be > 0")
    if v_b < v_b_given_a * (1.0 - EIGEN_RTOL):
        raise DomainError(f"V_b={v_b!r} below V_b|a={v_b_given_a!r}")
    return max(0.0, 0.5 * math.log2(v_b / v_b_given_a))


def _entropy(nu):
    """Vectorised ``h(nu)``; assumes ``nu >= 1`` already."""
    nu = np.asarray(nu, dtype=float)
    plus = (nu + 1.0) / 2.0
    minus = (nu - 1.0) / 2.0
    safe = np.where(minus > 0, minus, 1.0)
    # z log z -> 0 at z = 0, taken by the explicit branch
    minus_term = np.where(minus > 0, minus * np.log2(safe), 0.0)
    return plus * np.log2(plus) - minus_term


def _clamp_eigen(nu, what="symplectic eigenvalue", **context):
    nu = np.asarray(nu, dtype=float)
    bad = ~(nu >= 1.0 - EIGEN_RTOL)
    if np.any(bad):
        where = tuple(int(axis_pos) for axis_pos in np.argwhere(bad)[0]) if nu.ndim else ()
        value = float(nu[where]) if nu.ndim else float(nu)
        raise PhysicalityError(f"{what} {value!r} below 1", position=where, **context)
    return np.maximum(nu, 1.0)


def von_neumann_h(nu):
    """Entropy contribution ``h(nu)`` of one symplectic eigenvalue, bits."""
    out = _entropy(_clamp_eigen(nu))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class EveChannelBlocks:
    """Blocks of the eavesdropper's two-mode covariance matrix.

    ``eve_mode`` is the variance of the kept ancilla arm, ``channel_mode``
    that of the arm leaving the beam splitter, and ``correlation`` their
    EPR-type correlation.
    """

    eve_mode: float
    channel_mode: float
    correlation: float

    @classmethod
    def from_channel(cls, v_a, t_ch, eve_noise):
        return cls(eve_noise, (1.0 - t_ch) * v_a + t_ch * eve_noise,
                   math.sqrt(t_ch * (eve_noise ** 2 - 1.0)))

    @property
    def determinant(self):
        return self.eve_mode * self.channel_mode - self.correlation ** 2


def _pair_from_blocks(ea, eb, ec, det_ab):
    """Sorted pair of symplectic eigenvalues of a two-mode diag/anti-diag matrix."""
    gap = np.abs(ea - eb)
    disc = (ea + eb) ** 2 - 4.0 * ec ** 2
    zed = np.sqrt(np.maximum(disc, 0.0))
    large = 0.5 * (zed + gap)
    small = det_ab / large
    return large, small, disc


def eve_symplectic_eigenvalues(blocks: EveChannelBlocks):
    """``(v1, v2)`` of the eavesdropper's state, sorted descending."""
    ea, eb, ec = blocks.eve_mode, blocks.channel_mode, blocks.correlation
    if (ea + eb) ** 2 < 4.0 * ec ** 2 * (1.0 - EIGEN_RTOL):
        raise PhysicalityError("eavesdropper blocks are unphysical",
                               a=ea, b=eb, c=ec)
    large, small, _ = _pair_from_blocks(ea, eb, ec, blocks.determinant)
    large, small = _clamp_eigen([large, small])
    return float(large), float(small)


def _conditional(ea, eb, ec, det_ab, v_a, v_b, t_ch, eve_noise, eta):
    """Symplectic eigenvalues of the eavesdropper's state given Bob's result."""
    cross_a = np.sqrt(eta * t_ch * (1.0 - t_ch)) * (eve_noise - v_a)
    cross_e = np.sqrt(eta * (1.0 - t_ch) * (eve_noise ** 2 - 1.0))
    # quadratic forms of the rank-one update that homodyne conditioning applies
    q_form = (eb * cross_a ** 2 + ea * cross_e ** 2 - 2.0 * ec * cross_a * cross_e) / v_b
    p_form = (ea * cross_a ** 2 + eb * cross_e ** 2 - 2.0 * ec * cross_a * cross_e) / v_b
    # ea - eb and (ea - eb) + (X^2 - Y^2) / V_b, both carrying an explicit (1 - T)
    gap = (1.0 - t_ch) * (eve_noise - v_a)
    shifted = (1.0 - t_ch) * ((eve_noise - v_a) + eta * (
        t_ch * (eve_noise - v_a) ** 2 - (eve_noise ** 2 - 1.0)) / v_b)
    delta = gap ** 2 + 2.0 * det_ab - q_form
    # det = (a00 b00 - c00^2)(ab - c^2); the first factor expanded stably
    det_cond = (det_ab - p_form) * det_ab
    # delta^2 - 4 det regrouped so it vanishes exactly when the pair is degenerate
    disc = (gap ** 2 - q_form) ** 2 + 4.0 * det_ab * gap * shifted
    root = np.sqrt(np.maximum(disc, 0.0))
    v3 = np.sqrt(0.5 * (delta + root))
    v4 = np.sqrt(np.maximum(det_cond, 0.0)) / v3
    return v3, v4, disc, delta, det_cond


def conditional_symplectic_eigenvalues(blocks: EveChannelBlocks, v_a, v_b, t_ch,
                                       det: DetectionParams):
    """``(v3, v4)`` of the eavesdropper's state conditioned on Bob's homodyne."""
    if not v_b > 0:
        raise DomainError("V_b must be > 0")
    v3, v4, disc, delta, det_cond = _conditional(
        blocks.eve_mode, blocks.channel_mode, blocks.correlation, blocks.determinant,
        v_a, v_b, t_ch, blocks.eve_mode, det.eta)
    if disc < -EIGEN_RTOL * delta ** 2 or det_cond < 0:
        raise PhysicalityError("conditional covariance is unphysical", delta=delta,
                               det=det_cond)
    v3, v4 = _clamp_eigen([v3, v4], "conditional symplectic eigenvalue")
    return float(v3), float(v4)


def holevo_bound(v1, v2, v3, v4):
    """Holevo information ``h(v1) + h(v2) - h(v3) - h(v4)``, floored at 0."""
    val = von_neumann_h(v1) + von_neumann_h(v2) - von_neumann_h(v3) - von_neumann_h(v4)
    if np.any(val < -EIGEN_RTOL):
        raise PhysicalityError(f"negative Holevo information {val!r}")
    return np.maximum(val, 0.0) if np.ndim(val) else max(float(val), 0.0)


def key_rate_arrays(t_ch, v0, eve_noise, v_mod, eps_mod, det: DetectionParams):
    """Broadcasting core of the key-rate pipeline.

    Parameters
    ----------
    t_ch, v0, eve_noise, eps_mod : array_like
        Transmissivity, vacuum variance, injected noise and modulation noise;
        broadcast against each other.
    v_mod : float
        Modulation variance.

    Returns
    -------
    dict of ndarray
        ``v_b``, ``v_b_given_a``, ``i_ab``, ``i_be``, ``r_k`` and the four
        eigenvalues ``nu1`` to ``nu4``.
    """
    t_ch = np.maximum(np.asarray(t_ch, dtype=float), TRANSMISSIVITY_FLOOR)
    v0 = np.asarray(v0, dtype=float)
    eve = np.asarray(eve_noise, dtype=float)
    eps_mod = np.asarray(eps_mod, dtype=float)
    v_a = v_mod + v0
    # T * eps_multi = (1 - T) + T * eps_mod, without dividing by a tiny T
    loss_term = (1.0 - t_ch) + t_ch * eps_mod
    common = det.eta * loss_term + det.eta * (1.0 - t_ch) * eve + (1.0 - det.eta) * det.s_trusted
    v_b = det.eta * t_ch * v_a + common
    v_ba = det.eta * t_ch * v0 + common
    i_ab = np.maximum(0.5 * np.log2(v_b / v_ba), 0.0)

    ea = eve
    eb = (1.0 - t_ch) * v_a + t_ch * eve
    ec = np.sqrt(t_ch * (eve ** 2 - 1.0))
    # ab - c^2 written without cancellation
    det_ab = eve * (1.0 - t_ch) * v_a + t_ch
    nu1, nu2, disc_e = _pair_from_blocks(ea, eb, ec, det_ab)
    nu3, nu4, disc_c, delta, det_cond = _conditional(ea, eb, ec, det_ab, v_a, v_b,
                                                     t_ch, eve, det.eta)
    if np.any(disc_c < -EIGEN_RTOL * delta ** 2) or np.any(det_cond < 0):
        raise PhysicalityError("conditional covariance is unphysical")
    nu = [_clamp_eigen(val) for val in (nu1, nu2, nu3, nu4)]
    i_be = _entropy(nu[0]) + _entropy(nu[1]) - _entropy(nu[2]) - _entropy(nu[3])
    if np.any(i_be < -EIGEN_RTOL):
        raise PhysicalityError(f"negative Holevo information {float(np.min(i_be))!r}")
    i_be = np.maximum(i_be, 0.0)
    return {"v_b": v_b, "v_b_given_a": v_ba, "i_ab": i_ab, "i_be": i_be,
            "r_k": det.beta * i_ab - i_be,
            "nu1": nu[0], "nu2": nu[1], "nu3": nu[2], "nu4": nu[3]}


def resolve_eve_noise(policy, freqs, env):
    """Injected noise per subcarrier: ``"ambient"`` or a fixed value >= 1."""
    if isinstance(policy, str):
        if policy != "ambient":
            raise DomainError(f"unknown eve_noise policy {policy!r}")
        return channel_thermal_noise(freqs, env)
    if not policy >= 1:
        raise DomainError(f"fixed eve noise must be >= 1 SNU, got {policy!r}")
    return np.full(np.shape(freqs), float(policy))


def subcarrier_key_rate(state, params, env, det: DetectionParams, eve_noise="ambient"):
    """Unclamped key rate ``beta I_AB - I_BE`` for one subcarrier state."""
    f_thermal = state.f_k if state.f_thermal is None else state.f_thermal
    eve = resolve_eve_noise(eve_noise, f_thermal, env)
    out = key_rate_arrays(state.t_ch, state.v0, eve, params.v_mod, state.eps_mod, det)
    return float(out["r_k"])


@dataclass
class SubcarrierRate:
    index: int
    t_ch: float
    eps_multi: float
    v_b: float
    v_b_given_a: float
    i_ab: float
    i_be: float
    r_k: float


@dataclass
class KeyRateBreakdown:
    """Per-subcarrier diagnostics and the clamped OFDM total."""

    per_subcarrier: list = field(default_factory=list)
    r_ofdm: float = 0.0

    @property
    def unclamped_total(self):
        return sum(row.r_k for row in self.per_subcarrier)


def ofdm_key_rate(plan, params, spec, env, det: DetectionParams, distance,
                  noise_mode="worst_case", eve_noise="ambient",
                  thermal_reference="per_subcarrier"):
    """Key-rate breakdown for every subcarrier at one distance."""
    states = per_subcarrier_channel(plan, params, spec, env, distance, noise_mode,
                                    thermal_reference)
    eve = resolve_eve_noise(eve_noise, thermal_frequencies(plan, thermal_reference), env)
    t_ch = np.array([state.t_ch for state in states])
    eps_mod = np.array([state.eps_mod for state in states])
    v0 = np.array([state.v0 for state in states])
    try:
        out = key_rate_arrays(t_ch, v0, eve, params.v_mod, eps_mod, det)
    except PhysicalityError as exc:
        raise PhysicalityError(str(exc), distance_m=distance) from exc
    rows = [SubcarrierRate(state.index, state.t_ch, state.eps_multi, float(out["v_b"][pos]),
                           float(out["v_b_given_a"][pos]), float(out["i_ab"][pos]),
                           float(out["i_be"][pos]), float(out["r_k"][pos]))
            for pos, state in enumerate(states)]
    return KeyRateBreakdown(rows, float(np.sum(np.maximum(out["r_k"], 0.0))))


def rate_table(plan, params, spec, env, det: DetectionParams, distances,
               noise_mode="worst_case", eve_noise="ambient",
               thermal_reference="per_subcarrier"):
    """``(len(distances), N)`` array of unclamped per-subcarrier rates."""
    freqs = plan.frequencies
    t_tab = transmissivity_table(spec, freqs, distances)
    eps_mod = modulation_noise_for(plan, params, noise_mode)
    f_thermal = thermal_frequencies(plan, thermal_reference)
    v0 = vacuum_variance(f_thermal, env)
    eve = resolve_eve_noise(eve_noise, f_thermal, env)
    try:
        return key_rate_arrays(t_tab, v0, eve, params.v_mod, eps_mod, det)["r_k"]
    except PhysicalityError as exc:
        pos = exc.context.get("position", ())
        if len(pos) == 2:
            raise PhysicalityError(str(exc), distance_m=float(np.asarray(distances)[pos[0]]),
                                   subcarrier=pos[1] + 1) from exc
        raise
