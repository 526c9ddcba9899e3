"""Built-in parameter sets reproducing the published key-rate figures.

Each preset expands to a list of curves.  Sweep presets are
:class:`~thzqkd.scenarios.Scenario` objects; ``fig2`` is a modulation-noise
study and expands to :class:`ModnoiseStudy` objects instead.  Every
preset fixes the injected channel noise at ``W = 1``; see the decisions
ledger for why.
"""

from dataclasses import dataclass
import math

from .modnoise import CarrierPlan, ModulatorParams
from .physics import ThermalEnvironment
from .scenarios import AtmosphereSpec, ChannelConfig, Scenario, SweepSpec

GHZ = 1e9
THZ = 1e12

#: modulator imperfections used in every figure
MU, A_SIG, KAPPA, THETA = 0.01, 1.0, 0.98, math.pi / 50
#: relative humidity (%) -> water vapour pressure (Torr) as tabulated for 296 K
HUMIDITY_TORR = {17.89: 3.60, 36.79: 8.04, 48.03: 10.05, 70.84: 15.23}
#: open-air spectra cover this band on a 1 GHz grid, so subcarriers hit grid points
SPECTRUM_BAND = (300 * GHZ, 2100 * GHZ, 1 * GHZ)
PRESET_EVE_NOISE = 1.0
FIG2_V_MOD = 100.0

N_SET = (1, 4, 8, 16, 32, 64, 128)


@dataclass(frozen=True)
class ModnoiseStudy:
    """Modulation-noise profile for one subcarrier count."""

    name: str
    plan: CarrierPlan
    modulator: ModulatorParams


@dataclass(frozen=True)
class WorstCaseStudy:
    """Worst-case modulation noise over a range of subcarrier counts."""

    name: str
    f_i: float
    delta_f: float
    n_values: tuple
    modulator: ModulatorParams


def _mod(v_mod):
    return ModulatorParams(MU, A_SIG, KAPPA, THETA, float(v_mod))


def _open_air(rh):
    start, stop, step = SPECTRUM_BAND
    atm = AtmosphereSpec(HUMIDITY_TORR[rh], start, stop, step)
    return ChannelConfig("open_air", atmosphere=atm)


def _vacuum():
    return ChannelConfig("diffraction", beam_waist_m=0.1, aperture_m=0.1)


def _scenario(name, f_i, delta_f, n_sub, v_mod, channel, temperature, sweep):
    return Scenario(name, CarrierPlan(f_i, delta_f, n_sub), _mod(v_mod), channel,
                    ThermalEnvironment(temperature), sweep,
                    eve_noise=PRESET_EVE_NOISE)


def _metres(stop):
    return SweepSpec(0.01, stop, 500, "linear")


def _km(start, stop):
    return SweepSpec(start, stop, 500, "log")


def _fig2():
    mod = _mod(FIG2_V_MOD)
    out = [ModnoiseStudy(f"fig2a_n{n_sub}", CarrierPlan(300 * GHZ, 5 * GHZ, n_sub), mod)
           for n_sub in (10, 20, 30, 40, 50, 60)]
    out.append(WorstCaseStudy("fig2b_worst", 300 * GHZ, 5 * GHZ, tuple(range(1, 129)), mod))
    return out


# panel -> (f_I, V_mod, metre-scale sweep stop)
_FIG4 = {
    "fig4a": (300 * GHZ, 1000, 12.0),
    "fig4b": (300 * GHZ, 100, 12.0),
    "fig4c": (580 * GHZ, 1000, 3.0),
    "fig4d": (580 * GHZ, 100, 3.0),
    "fig4e": (780 * GHZ, 1000, 3.0),
    "fig4f": (780 * GHZ, 100, 3.0),
}


def _fig4(panel):
    f_i, v_mod, stop = _FIG4[panel]
    return [_scenario(f"{panel}_n{n_sub}", f_i, 5 * GHZ, n_sub, v_mod, _open_air(70.84), 300.0,
                      _metres(stop)) for n_sub in N_SET]


def _fig5():
    return [_scenario(f"fig5_rh{rh}_n{n_sub}", 580 * GHZ, 5 * GHZ, n_sub, 1000, _open_air(rh),
                      300.0, _metres(15.0))
            for rh in HUMIDITY_TORR for n_sub in (1, 32)]


def _fig6(v_mod, panel):
    return [_scenario(f"{panel}_n{n_sub}", 780 * GHZ, 5 * GHZ, n_sub, v_mod, _vacuum(), 30.0,
                      _km(100.0, 1e6)) for n_sub in N_SET]


def _fig7():
    out = []
    for label, f_i in (("600ghz", 600 * GHZ), ("900ghz", 900 * GHZ),
                       ("2.7thz", 2.7 * THZ), ("8.1thz", 8.1 * THZ)):
        out.append(_scenario(f"fig7_f{label}_n32", f_i, 5 * GHZ, 32, 100, _vacuum(), 30.0,
                             _km(100.0, 1e7)))
    return out


def _fig8a():
    return [_scenario(f"fig8a_vmod{v_mod}_n{n_sub}", 840 * GHZ, 3 * GHZ, n_sub, v_mod,
                      _open_air(70.84), 300.0, _metres(4.0))
            for v_mod in (1000, 100) for n_sub in (1, 4, 8, 12)]


def _fig8b():
    return [_scenario(f"fig8b_rh{rh}_n12", 840 * GHZ, 3 * GHZ, 12, 1000, _open_air(rh),
                      300.0, _metres(12.0)) for rh in HUMIDITY_TORR]


def _fig9():
    return [_scenario(f"fig9_n{n_sub}", 840 * GHZ, 3 * GHZ, n_sub, 1000, _vacuum(), 25.0,
                      _km(100.0, 1e6)) for n_sub in (1, 4, 8, 12)]


_BUILDERS = {
    "fig2": _fig2,
    **{panel: (lambda name=panel: _fig4(name)) for panel in _FIG4},
    "fig5": _fig5,
    "fig6a": lambda: _fig6(100, "fig6a"),
    "fig6b": lambda: _fig6(1000, "fig6b"),
    "fig7": _fig7,
    "fig8a": _fig8a,
    "fig8b": _fig8b,
    "fig9": _fig9,
}

PRESET_NAMES = tuple(_BUILDERS)


def preset(name):
    """Curves of one named preset."""
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}") from None


def builtin_presets():
    """Every sweep scenario of every preset (``fig2`` contributes studies)."""
    out = []
    for name in PRESET_NAMES:
        out.extend(preset(name))
    return out


def find_curve(curve_name):
    """Look up a single curve, e.g. ``fig6b_n128``, across all presets."""
    for name in PRESET_NAMES:
        if curve_name.startswith(name + "_"):
            for item in preset(name):
                if item.name == curve_name:
                    return item
    raise KeyError(f"unknown preset curve {curve_name!r}")


__all__ = ["ModnoiseStudy", "WorstCaseStudy", "PRESET_NAMES", "builtin_presets",
           "find_curve", "preset"]
