import io
import json
import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from thzqkd.errors import ValidationError
from thzqkd.presets import (HUMIDITY_TORR, PRESET_NAMES, ModnoiseStudy, WorstCaseStudy,
                            builtin_presets, find_curve, preset)
from thzqkd.scenarios import (DEFAULT_SKR_FLOOR, Scenario, SweepResult, emit_csv,
                              load_scenario, max_secure_distance, parse_scenario,
                              run_sweep, scenario_from_dict)

MINIMAL = {
    "name": "mini",
    "plan": {"f_i_hz": 3e11, "delta_f_hz": 5e9, "n": 4},
    "modulator": {"mu": 0.01, "a_sig": 1, "kappa": 0.98, "theta_rad": 0.0628, "v_mod": 1000},
    "channel": {"type": "fixed", "transmissivity": 0.9},
    "environment": {"temperature_k": 300},
    "sweep": {"start_m": 0, "stop_m": 10, "points": 5},
}


def _doc(**changes):
    doc = json.loads(json.dumps(MINIMAL))
    for path, value in changes.items():
        node = doc
        keys = path.split("__")
        for key in keys[:-1]:
            node = node[key]
        node[keys[-1]] = value
    return doc


def test_minimal_document_gets_defaults():
    scn = parse_scenario(json.dumps(MINIMAL).encode())
    assert (scn.detection.eta, scn.detection.s_trusted, scn.detection.beta) == (0.1, 1.0, 1.0)
    assert scn.noise_mode == "worst_case"
    assert scn.skr_floor == DEFAULT_SKR_FLOOR == 1e-5
    assert scn.sweep.spacing == "linear"
    assert scn.eve_noise == "ambient"


@pytest.mark.parametrize("changes, path", [
    ({"sweep__points": 1}, "$.sweep.points"),
    ({"plan__n": 0}, "$.plan.n"),
    ({"modulator__kappa": 1.5}, "$.modulator.kappa"),
    ({"detection": {"eta": 0}}, "$.detection.eta"),
    ({"channel__type": "fibre"}, "$.channel.type"),
    ({"noise_mode": "median"}, "$.noise_mode"),
])
def test_schema_errors_name_the_field(changes, path):
    with pytest.raises(ValidationError) as info:
        scenario_from_dict(_doc(**changes))
    assert info.value.path == path


def test_unknown_fields_rejected():
    with pytest.raises(ValidationError, match="plna|Additional"):
        scenario_from_dict(_doc(plna={}))
    with pytest.raises(ValidationError) as info:
        scenario_from_dict(_doc(sweep__stepz=3))
    assert info.value.path == "$.sweep"


def test_missing_channel_parameter():
    doc = _doc()
    del doc["channel"]["transmissivity"]
    with pytest.raises(ValidationError):
        scenario_from_dict(doc)


def test_sweep_order_enforced():
    with pytest.raises(ValidationError):
        scenario_from_dict(_doc(sweep__start_m=10, sweep__stop_m=5))
    with pytest.raises(ValidationError):
        scenario_from_dict(_doc(sweep__spacing="log"))


def test_bad_json_and_encoding():
    with pytest.raises(ValidationError, match="JSON"):
        parse_scenario(b"{not json")
    with pytest.raises(ValidationError, match="UTF-8"):
        parse_scenario(b"\xff\xfe{}")


def test_inconsistent_carrier_plan_is_validation_error():
    with pytest.raises(ValidationError):
        scenario_from_dict(_doc(plan__f_i_hz=float("inf")))


@pytest.mark.parametrize("scn", [item for item in builtin_presets() if isinstance(item, Scenario)],
                         ids=lambda item: item.name)
def test_preset_round_trip(scn):
    again = parse_scenario(io.BytesIO(scn.to_json().encode()))
    assert again == scn


# hand-audited caption values: preset -> (f_I Hz, delta_f Hz, V_mod, T K, channel, N set)
AUDIT = {
    "fig4a": (300e9, 5e9, 1000, 300, "open_air", (1, 4, 8, 16, 32, 64, 128)),
    "fig4b": (300e9, 5e9, 100, 300, "open_air", (1, 4, 8, 16, 32, 64, 128)),
    "fig4c": (580e9, 5e9, 1000, 300, "open_air", (1, 4, 8, 16, 32, 64, 128)),
    "fig4d": (580e9, 5e9, 100, 300, "open_air", (1, 4, 8, 16, 32, 64, 128)),
    "fig4e": (780e9, 5e9, 1000, 300, "open_air", (1, 4, 8, 16, 32, 64, 128)),
    "fig4f": (780e9, 5e9, 100, 300, "open_air", (1, 4, 8, 16, 32, 64, 128)),
    "fig5": (580e9, 5e9, 1000, 300, "open_air", (1, 32)),
    "fig6a": (780e9, 5e9, 100, 30, "diffraction", (1, 4, 8, 16, 32, 64, 128)),
    "fig6b": (780e9, 5e9, 1000, 30, "diffraction", (1, 4, 8, 16, 32, 64, 128)),
    "fig8a": (840e9, 3e9, None, 300, "open_air", (1, 4, 8, 12)),
    "fig8b": (840e9, 3e9, 1000, 300, "open_air", (12,)),
    "fig9": (840e9, 3e9, 1000, 25, "diffraction", (1, 4, 8, 12)),
}


@pytest.mark.parametrize("name", sorted(AUDIT))
def test_preset_fidelity(name):
    f_i, delta_f, v_mod, temp, kind, n_set = AUDIT[name]
    curves = preset(name)
    assert {curve.plan.n_subcarriers for curve in curves} == set(n_set)
    for scn in curves:
        assert scn.plan.f_i == f_i and scn.plan.delta_f == delta_f
        if v_mod is not None:
            assert scn.modulator.v_mod == v_mod
        assert scn.environment.temperature == temp
        assert scn.channel.type == kind
        mod = scn.modulator
        assert (mod.mu, mod.a_sig, mod.kappa, mod.theta) == (0.01, 1.0, 0.98, math.pi / 50)
        if kind == "diffraction":
            assert scn.channel.beam_waist_m == scn.channel.aperture_m == 0.1
        else:
            assert scn.channel.atmosphere.water_pressure_torr in HUMIDITY_TORR.values()


def test_preset_humidities_and_frequencies():
    assert {curve.channel.atmosphere.water_pressure_torr for curve in preset("fig8b")} == {
        3.60, 8.04, 10.05, 15.23}
    assert {curve.modulator.v_mod for curve in preset("fig8a")} == {100, 1000}
    assert [curve.plan.f_i for curve in preset("fig7")] == [600e9, 900e9, 2.7e12, 8.1e12]
    assert all(curve.plan.n_subcarriers == 32 and curve.modulator.v_mod == 100
               for curve in preset("fig7"))
    for name in ("fig4a", "fig4b", "fig5", "fig8a"):
        assert all(curve.channel.atmosphere.water_pressure_torr == 15.23
                   for curve in preset(name) if "rh" not in curve.name)


def test_fig2_studies():
    items = preset("fig2")
    profiles = [item for item in items if isinstance(item, ModnoiseStudy)]
    assert [prof.plan.n_subcarriers for prof in profiles] == [10, 20, 30, 40, 50, 60]
    (worst,) = [item for item in items if isinstance(item, WorstCaseStudy)]
    assert worst.n_values == tuple(range(1, 129))


def test_preset_lookup():
    assert PRESET_NAMES == ("fig2", "fig4a", "fig4b", "fig4c", "fig4d", "fig4e", "fig4f",
                            "fig5", "fig6a", "fig6b", "fig7", "fig8a", "fig8b", "fig9")
    assert find_curve("fig6b_n128").plan.n_subcarriers == 128
    with pytest.raises(KeyError):
        find_curve("fig6b_n3")
    with pytest.raises(KeyError):
        preset("fig3")


def test_fixed_channel_is_flat():
    doc = _doc(sweep__points=7, eve_noise=1.0, environment__temperature_k=10)
    res = run_sweep(scenario_from_dict(doc))
    assert res.r_ofdm[0] > 0
    assert np.all(res.r_ofdm == res.r_ofdm[0])
    assert res.max_secure_distance == 10.0


def test_emit_csv_layout():
    res = SweepResult("x", np.array([0.0, 1.5]), np.array([2.0, 0.1]),
                      np.array([[1.5, 0.5], [0.1, -0.2]]), 0.5)
    text = emit_csv(res)
    assert text.split("\n") == ["distance_m,r_ofdm_bits", "0.0,2.0", "1.5,0.1",
                                "# max_secure_distance_m=0.0", ""]
    wide = emit_csv(res, wide=True).splitlines()
    assert wide[0] == "distance_m,r_ofdm_bits,r_k_1,r_k_2"
    assert wide[2] == "1.5,0.1,0.1,-0.2"
    buf = io.StringIO()
    assert emit_csv(res, buf) is None and buf.getvalue() == text
    assert "\r" not in text


def test_no_secure_row_reports_zero():
    assert max_secure_distance(np.array([1.0, 2.0]), np.array([0.0, 0.0]), 1e-5) == 0.0


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0, 10), min_size=2, max_size=30), st.floats(1e-8, 5),
       st.floats(1e-8, 5))
def test_max_distance_monotone_in_floor(rates, f1, f2):
    dists = np.arange(len(rates), dtype=float)
    lo, hi = sorted((f1, f2))
    assert (max_secure_distance(dists, np.array(rates), hi)
            <= max_secure_distance(dists, np.array(rates), lo))


def test_open_air_sweep_deterministic_across_threads(tmp_path):
    scn = find_curve("fig4b_n16")
    one = emit_csv(run_sweep(scn, threads=1, cache_dir=tmp_path), wide=True)
    four = emit_csv(run_sweep(scn, threads=4, cache_dir=tmp_path), wide=True)
    again = emit_csv(run_sweep(scn, threads=3), wide=True)
    assert one == four == again
    assert len(list(tmp_path.glob("spectrum-*.csv"))) == 1


def test_spectrum_file_reference(tmp_path):
    (tmp_path / "flat.csv").write_text("frequency_hz,alpha_per_m\n1e11,0.01\n1e12,0.01\n")
    doc = _doc(channel={"type": "open_air", "spectrum_file": "flat.csv"},
               sweep={"start_m": 0, "stop_m": 10, "points": 3}, eve_noise=1.0,
               environment={"temperature_k": 10})
    path = tmp_path / "s.json"
    path.write_text(json.dumps(doc))
    res = run_sweep(load_scenario(path))
    assert np.all(np.diff(res.r_ofdm) < 0)


@pytest.mark.slow
@pytest.mark.parametrize("scn", [item for item in builtin_presets() if isinstance(item, Scenario)],
                         ids=lambda item: item.name)
def test_preset_sweeps_physical_and_monotone(scn):
    res = run_sweep(scn)
    assert res.distances[0] < res.distances[-1]
    assert np.all(np.diff(res.distances) > 0)
    # rates that are zero up to rounding may jitter at the 1e-12 bit level
    assert np.all(np.diff(res.r_ofdm) <= 1e-10)


def test_thermal_reference_field():
    assert scenario_from_dict(_doc()).thermal_reference == "per_subcarrier"
    scn = scenario_from_dict(_doc(thermal_reference="band_centre"))
    assert scn.thermal_reference == "band_centre"
    assert parse_scenario(scn.to_json()) == scn
    with pytest.raises(ValidationError) as info:
        scenario_from_dict(_doc(thermal_reference="edge"))
    assert info.value.path == "$.thermal_reference"
