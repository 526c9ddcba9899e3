import math

from hypothesis import given, strategies as st
import numpy as np
import pytest

from thzqkd.atmosphere import AbsorptionSpectrum
from thzqkd.channel import (DARK_CUTOFF, Diffraction, Fixed, OpenAir, beam_radius,
                            diffraction_transmissivity, loss_vacuum_noise,
                            open_air_transmissivity, per_subcarrier_channel,
                            transmissivity_table)
from thzqkd.errors import DomainError
from thzqkd.modnoise import CarrierPlan, ModulatorParams, iq_imbalance_variance
from thzqkd.physics import SPEED_OF_LIGHT, ThermalEnvironment

PARAMS = ModulatorParams(0.01, 1.0, 0.98, math.pi / 50, 1000.0)
ENV = ThermalEnvironment(300.0)


def test_beer_lambert():
    assert open_air_transmissivity(0.3, 0.0) == 1.0
    assert open_air_transmissivity(0.2, 5.0) == pytest.approx(math.exp(-1))
    assert open_air_transmissivity(0.0, 1e6) == 1.0
    with pytest.raises(DomainError):
        open_air_transmissivity(-0.1, 1.0)
    with pytest.raises(DomainError):
        open_air_transmissivity(0.1, -1.0)


def test_beam_radius():
    lam = SPEED_OF_LIGHT / 780e9
    assert beam_radius(0.0, 0.1, lam) == 0.1
    assert beam_radius(1000.0, 0.1, lam) == pytest.approx(1.2275019299666756, rel=1e-12)
    far = 200 * math.pi * 0.1 ** 2 / lam
    assert beam_radius(far, 0.1, lam) == pytest.approx(lam * far / (math.pi * 0.1), rel=1e-4)
    with pytest.raises(DomainError):
        beam_radius(1.0, 0.0, lam)
    with pytest.raises(DomainError):
        beam_radius(1.0, 0.1, -lam)


def test_diffraction_values():
    lam = SPEED_OF_LIGHT / 780e9
    assert diffraction_transmissivity(0.0, 0.1, 0.1, lam) == pytest.approx(1 - math.exp(-2))
    assert diffraction_transmissivity(1e4, 0.1, 0.1, lam) == pytest.approx(
        1.3360401593369490e-4, rel=1e-10)
    assert diffraction_transmissivity(10.0, 0.1, 100.0, lam) == 1.0
    with pytest.raises(DomainError):
        diffraction_transmissivity(1.0, 0.1, 0.0, lam)


@given(st.floats(0, 1e6), st.floats(0, 1e6))
def test_diffraction_monotone(d1, d2):
    lam = SPEED_OF_LIGHT / 780e9
    lo, hi = sorted((d1, d2))
    t_lo = diffraction_transmissivity(lo, 0.1, 0.1, lam)
    t_hi = diffraction_transmissivity(hi, 0.1, 0.1, lam)
    assert 0 < t_hi <= t_lo < 1


def test_loss_noise():
    assert loss_vacuum_noise(1.0) == 0.0
    assert loss_vacuum_noise(0.5) == 1.0
    assert loss_vacuum_noise(0.1) == pytest.approx(9.0)
    for bad in (0.0, -0.1, 1.1):
        with pytest.raises(DomainError):
            loss_vacuum_noise(bad)


@given(st.floats(1e-6, 1.0), st.floats(1e-6, 1.0))
def test_loss_noise_decreasing(t1, t2):
    lo, hi = sorted((t1, t2))
    if hi > lo:
        assert loss_vacuum_noise(hi) < loss_vacuum_noise(lo)


def test_single_fixed_subcarrier():
    (state,) = per_subcarrier_channel(CarrierPlan(3e11, 5e9, 1), PARAMS, Fixed(1.0), ENV, 5.0)
    assert state.eps_single == 0.0
    assert state.eps_multi == pytest.approx(iq_imbalance_variance(PARAMS))
    assert state.index == 1 and not state.dark


def test_open_air_varies_across_band():
    grid = np.arange(300, 501) * 1e9
    spec = AbsorptionSpectrum(grid, 0.001 * (grid / 1e9 - 299))
    states = per_subcarrier_channel(CarrierPlan(3e11, 5e9, 32), PARAMS, OpenAir(spec), ENV, 2.0)
    t_vals = [state.t_ch for state in states]
    assert len(set(t_vals)) == 32 and all(nxt < prev for prev, nxt in zip(t_vals, t_vals[1:]))
    assert [state.index for state in states] == list(range(1, 33))
    assert all(nxt.f_k > prev.f_k for prev, nxt in zip(states, states[1:]))


def test_open_air_out_of_band_names_subcarrier():
    spec = AbsorptionSpectrum([3e11, 3.1e11], [0.0, 0.0])
    with pytest.raises(DomainError, match="subcarrier 3"):
        per_subcarrier_channel(CarrierPlan(3e11, 5e9, 3), PARAMS, OpenAir(spec), ENV, 1.0)


def test_zero_spectrum_equals_perfect_fixed():
    spec = AbsorptionSpectrum.zeros(3e11, 4e11)
    plan = CarrierPlan(3e11, 5e9, 8)
    dists = np.array([0.0, 1.0, 1e3, 1e6])
    assert np.array_equal(transmissivity_table(OpenAir(spec), plan.frequencies, dists),
                          transmissivity_table(Fixed(1.0), plan.frequencies, dists))


def test_diffraction_far_field_scales_with_frequency_squared():
    plan = CarrierPlan(780e9, 5e9, 16)
    states = per_subcarrier_channel(plan, PARAMS, Diffraction(0.1, 0.1),
                                    ThermalEnvironment(30.0), 1e4)
    scaled = np.array([state.t_ch for state in states]) / plan.frequencies ** 2
    assert scaled.max() / scaled.min() < 1.01


@given(st.floats(0, 1e5), st.floats(0, 1e5))
def test_transmissivity_non_increasing(d1, d2):
    lo, hi = sorted((d1, d2))
    spec = AbsorptionSpectrum([2e11, 1e12], [0.01, 0.5])
    freqs = np.array([3e11, 7e11])
    for chan in (OpenAir(spec), Diffraction(0.1, 0.05), Fixed(0.3)):
        tab = transmissivity_table(chan, freqs, [lo, hi])
        assert np.all(tab[1] <= tab[0])


def test_floor_and_dark_flag():
    spec = AbsorptionSpectrum([2e11, 1e12], [10.0, 10.0])
    (state,) = per_subcarrier_channel(CarrierPlan(3e11, 5e9, 1), PARAMS, OpenAir(spec), ENV, 1e3)
    assert state.t_ch == pytest.approx(1e-300) and state.dark and math.isfinite(state.eps_single)
    assert DARK_CUTOFF == 1e-12


def test_worst_case_vs_per_k():
    plan = CarrierPlan(3e11, 5e9, 12)
    worst = per_subcarrier_channel(plan, PARAMS, Fixed(0.9), ENV, 1.0)
    per_k = per_subcarrier_channel(plan, PARAMS, Fixed(0.9), ENV, 1.0, "per_k")
    assert len({state.eps_mod for state in worst}) == 1
    assert max(state.eps_mod for state in per_k) == worst[0].eps_mod
    with pytest.raises(DomainError):
        per_subcarrier_channel(plan, PARAMS, Fixed(0.9), ENV, 1.0, "median")


def test_fixed_validation():
    for bad in (0.0, 1.5):
        with pytest.raises(DomainError):
            Fixed(bad)
    with pytest.raises(DomainError):
        Diffraction(0.0, 0.1)


def test_band_centre_thermal_reference():
    from thzqkd.channel import thermal_frequencies
    plan = CarrierPlan(3e11, 5e9, 4)
    assert np.array_equal(thermal_frequencies(plan), plan.frequencies)
    centre = thermal_frequencies(plan, "band_centre")
    assert np.all(centre == 3.125e11)
    states = per_subcarrier_channel(plan, PARAMS, Fixed(0.9), ENV, 1.0,
                                    thermal_reference="band_centre")
    assert len({state.v0 for state in states}) == 1
    assert all(state.f_thermal == 3.125e11 for state in states)
    with pytest.raises(DomainError):
        thermal_frequencies(plan, "edge")
