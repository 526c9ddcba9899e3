"""Command-line entry point: ``thzqkd {simulate,preset,absorption,modnoise}``.

Exit status is 0 on success, 1 for invalid input, 2 for I/O failures and
3 when a computation turns out unphysical.
"""

import argparse
from pathlib import Path
import sys

from . import __version__
from .atmosphere import (MoistAir, bundled_water_lines, parse_hitran_records,
                         rh_to_water_pressure, save_spectrum_table,
                         total_absorption_spectrum)
from .atmosphere.absorption import ContinuumCoeffs
from .errors import DomainError, ParseError, PhysicalityError, ValidationError
from .modnoise import (CarrierPlan, ModulatorParams, modulation_noise_profile,
                       worst_modulation_noise)
from .presets import PRESET_NAMES, ModnoiseStudy, WorstCaseStudy, preset
from .scenarios import emit_csv, load_scenario, run_sweep

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_UNPHYSICAL = 0, 1, 2, 3


def _write(text, out):
    if out is None or str(out) == "-":
        sys.stdout.write(text)
        return
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="ascii", newline="\n")


def modnoise_csv(plan, params):
    """Per-subcarrier table followed, after a blank line, by the worst case."""
    prof = modulation_noise_profile(plan, params)
    n_sub = plan.n_subcarriers
    rows = ["N,k,eps_mod_snu"]
    rows += [f"{n_sub},{idx},{float(val)!r}" for idx, val in enumerate(prof, start=1)]
    worst_idx, worst = worst_modulation_noise(plan, params)
    rows += ["", "N,k_worst,eps_worst_snu", f"{n_sub},{worst_idx},{worst!r}"]
    return "\n".join(rows) + "\n"


def worst_case_csv(study: WorstCaseStudy):
    rows = ["N,k_worst,eps_worst_snu"]
    for n_sub in study.n_values:
        idx, val = worst_modulation_noise(CarrierPlan(study.f_i, study.delta_f, n_sub),
                                          study.modulator)
        rows.append(f"{n_sub},{idx},{val!r}")
    return "\n".join(rows) + "\n"


def _cmd_simulate(args):
    scn = load_scenario(args.scenario)
    out_dir = Path(args.out)
    result = run_sweep(scn, threads=args.threads, cache_dir=out_dir / "spectra")
    target = out_dir / f"{scn.name}.csv"
    _write(emit_csv(result, wide=args.wide), target)
    print(f"{target}: max_secure_distance_m={result.max_secure_distance!r}", file=sys.stderr)


def _cmd_preset(args):
    if args.list or args.name is None:
        for name in PRESET_NAMES:
            print(name)
        return
    out_dir = Path(args.out)
    for item in preset(args.name):
        target = out_dir / f"{item.name}.csv"
        if isinstance(item, ModnoiseStudy):
            _write(modnoise_csv(item.plan, item.modulator), target)
        elif isinstance(item, WorstCaseStudy):
            _write(worst_case_csv(item), target)
        else:
            result = run_sweep(item, threads=args.threads, cache_dir=out_dir / "spectra")
            _write(emit_csv(result, wide=args.wide), target)
        print(target, file=sys.stderr)


def _cmd_absorption(args):
    if args.stop <= args.start or args.step <= 0:
        raise DomainError("need --stop > --start and --step > 0")
    p_w = rh_to_water_pressure(args.rh, args.temp) if args.rh is not None else args.pw
    air = MoistAir(p_w, args.total - p_w, args.temp)
    lines = (parse_hitran_records(Path(args.lines).read_bytes()) if args.lines
             else bundled_water_lines())
    defaults = ContinuumCoeffs()
    coeffs = ContinuumCoeffs(
        defaults.self_coeff if args.c_self is None else args.c_self,
        defaults.foreign_coeff if args.c_foreign is None else args.c_foreign)
    count = int(round((args.stop - args.start) / args.step)) + 1
    grid = [args.start + args.step * step_no for step_no in range(count)]
    spec = total_absorption_spectrum(grid, lines, air, coeffs)
    _write(save_spectrum_table(spec).decode("ascii"), args.out)


def _cmd_modnoise(args):
    plan = CarrierPlan(args.fi, args.df, args.n)
    params = ModulatorParams(args.mu, args.a_sig, args.kappa, args.theta, args.vmod)
    _write(modnoise_csv(plan, params), args.out)


class _Parser(argparse.ArgumentParser):
    """Usage errors are validation errors (status 1), not I/O errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(
        prog="thzqkd", description="Multi-carrier CV-QKD key rates over terahertz links.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a scenario JSON file")
    sim.add_argument("scenario")
    sim.add_argument("--out", default=".", help="output directory (default: .)")
    sim.add_argument("--wide", action="store_true", help="add per-subcarrier r_k columns")
    sim.add_argument("--threads", type=int, default=1)
    sim.set_defaults(func=_cmd_simulate)

    pre = sub.add_parser("preset", help="run a built-in figure preset")
    pre.add_argument("name", nargs="?", choices=PRESET_NAMES)
    pre.add_argument("--list", action="store_true", help="list preset names")
    pre.add_argument("--out", default=".", help="output directory (default: .)")
    pre.add_argument("--wide", action="store_true")
    pre.add_argument("--threads", type=int, default=1)
    pre.set_defaults(func=_cmd_preset)

    ab = sub.add_parser("absorption", help="compute a water-vapour absorption spectrum")
    ab.add_argument("--start", type=float, required=True, help="first frequency, Hz")
    ab.add_argument("--stop", type=float, required=True, help="last frequency, Hz")
    ab.add_argument("--step", type=float, required=True, help="grid step, Hz")
    hum = ab.add_mutually_exclusive_group(required=True)
    hum.add_argument("--rh", type=float, help="relative humidity, percent")
    hum.add_argument("--pw", type=float, help="water vapour pressure, Torr")
    ab.add_argument("--temp", type=float, default=296.0, help="temperature, K")
    ab.add_argument("--total", type=float, default=760.0, help="total pressure, Torr")
    ab.add_argument("--lines", help="HITRAN .par file (default: bundled list)")
    ab.add_argument("--c-self", type=float, help="self continuum coefficient")
    ab.add_argument("--c-foreign", type=float, help="foreign continuum coefficient")
    ab.add_argument("--out", help="output CSV (default: stdout)")
    ab.set_defaults(func=_cmd_absorption)

    mn = sub.add_parser("modnoise", help="per-subcarrier modulation noise")
    mn.add_argument("--n", type=int, required=True)
    mn.add_argument("--mu", type=float, required=True)
    mn.add_argument("--kappa", type=float, required=True)
    mn.add_argument("--theta", type=float, required=True, help="radians")
    mn.add_argument("--vmod", type=float, required=True)
    mn.add_argument("--fi", type=float, required=True, help="base frequency, Hz")
    mn.add_argument("--df", type=float, required=True, help="subcarrier spacing, Hz")
    mn.add_argument("--a-sig", type=float, default=1.0)
    mn.add_argument("--out", help="output CSV (default: stdout)")
    mn.set_defaults(func=_cmd_modnoise)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except PhysicalityError as exc:
        print(f"error: unphysical result: {exc}", file=sys.stderr)
        return EXIT_UNPHYSICAL
    except (ValidationError, ParseError, DomainError, IndexError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
