"""Scenario documents, distance sweeps and CSV output."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import hashlib
import json
import math
import os
from pathlib import Path
import threading

import jsonschema
import numpy as np

from .atmosphere import (MoistAir, bundled_water_lines, load_spectrum_table,
                         parse_hitran_records, save_spectrum_table,
                         total_absorption_spectrum)
from .atmosphere.absorption import ContinuumCoeffs
from .channel import NOISE_MODES, THERMAL_REFERENCES, Diffraction, Fixed, OpenAir
from .errors import DomainError, ValidationError
from .modnoise import CarrierPlan, ModulatorParams
from .physics import ThermalEnvironment
from .skr import DetectionParams, rate_table

DEFAULT_SKR_FLOOR = 1e-5
#: distances evaluated per work item; fixed so results do not depend on threads
SWEEP_BLOCK = 64

_POS = {"type": "number", "exclusiveMinimum": 0}
_NONNEG = {"type": "number", "minimum": 0}

SCENARIO_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["name", "plan", "modulator", "channel", "environment", "sweep"],
    "properties": {
        "name": {"type": "string", "minLength": 1},
        "plan": {
            "type": "object", "additionalProperties": False,
            "required": ["f_i_hz", "delta_f_hz", "n"],
            "properties": {"f_i_hz": _POS, "delta_f_hz": _POS,
                           "n": {"type": "integer", "minimum": 1}},
        },
        "modulator": {
            "type": "object", "additionalProperties": False,
            "required": ["mu", "a_sig", "kappa", "theta_rad", "v_mod"],
            "properties": {
                "mu": _POS, "a_sig": _POS,
                "kappa": {"type": "number", "minimum": 0, "maximum": 1},
                "theta_rad": {"type": "number", "minimum": 0, "maximum": math.pi / 2},
                "v_mod": _NONNEG,
            },
        },
        "channel": {
            "type": "object", "additionalProperties": False,
            "required": ["type"],
            "properties": {
                "type": {"enum": ["open_air", "diffraction", "fixed"]},
                "spectrum_file": {"type": "string", "minLength": 1},
                "atmosphere": {
                    "type": "object", "additionalProperties": False,
                    "required": ["water_pressure_torr", "start_hz", "stop_hz", "step_hz"],
                    "properties": {
                        "water_pressure_torr": _NONNEG,
                        "air_pressure_torr": _NONNEG,
                        "temperature_k": _POS,
                        "start_hz": _POS, "stop_hz": _POS, "step_hz": _POS,
                        "lines_file": {"type": "string", "minLength": 1},
                        "continuum_self": _NONNEG,
                        "continuum_foreign": _NONNEG,
                    },
                },
                "beam_waist_m": _POS,
                "aperture_m": _POS,
                "transmissivity": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
            },
            "allOf": [
                {"if": {"properties": {"type": {"const": "open_air"}}},
                 "then": {"oneOf": [{"required": ["spectrum_file"]},
                                    {"required": ["atmosphere"]}]}},
                {"if": {"properties": {"type": {"const": "diffraction"}}},
                 "then": {"required": ["beam_waist_m", "aperture_m"]}},
                {"if": {"properties": {"type": {"const": "fixed"}}},
                 "then": {"required": ["transmissivity"]}},
            ],
        },
        "environment": {
            "type": "object", "additionalProperties": False,
            "required": ["temperature_k"],
            "properties": {"temperature_k": _NONNEG},
        },
        "detection": {
            "type": "object", "additionalProperties": False,
            "properties": {
                "eta": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
                "s": {"type": "number", "minimum": 1},
                "beta": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
            },
        },
        "sweep": {
            "type": "object", "additionalProperties": False,
            "required": ["start_m", "stop_m", "points"],
            "properties": {
                "start_m": _NONNEG, "stop_m": _POS,
                "points": {"type": "integer", "minimum": 2},
                "spacing": {"enum": ["linear", "log"]},
            },
        },
        "noise_mode": {"enum": list(NOISE_MODES)},
        "skr_floor": _POS,
        "eve_noise": {"oneOf": [{"const": "ambient"}, {"type": "number", "minimum": 1}]},
        "thermal_reference": {"enum": list(THERMAL_REFERENCES)},
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(SCENARIO_SCHEMA)


@dataclass(frozen=True)
class AtmosphereSpec:
    """Recipe for computing an open-air spectrum on demand."""

    water_pressure_torr: float
    start_hz: float
    stop_hz: float
    step_hz: float
    air_pressure_torr: float | None = None
    temperature_k: float = 296.0
    lines_file: str | None = None
    continuum_self: float | None = None
    continuum_foreign: float | None = None

    def to_dict(self):
        out = {"water_pressure_torr": self.water_pressure_torr}
        if self.air_pressure_torr is not None:
            out["air_pressure_torr"] = self.air_pressure_torr
        out.update(temperature_k=self.temperature_k, start_hz=self.start_hz,
                   stop_hz=self.stop_hz, step_hz=self.step_hz)
        for key in ("lines_file", "continuum_self", "continuum_foreign"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out

    def digest(self):
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


@dataclass(frozen=True)
class ChannelConfig:
    type: str
    spectrum_file: str | None = None
    atmosphere: AtmosphereSpec | None = None
    beam_waist_m: float | None = None
    aperture_m: float | None = None
    transmissivity: float | None = None

    def to_dict(self):
        out = {"type": self.type}
        if self.spectrum_file is not None:
            out["spectrum_file"] = self.spectrum_file
        if self.atmosphere is not None:
            out["atmosphere"] = self.atmosphere.to_dict()
        for key in ("beam_waist_m", "aperture_m", "transmissivity"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out


@dataclass(frozen=True)
class SweepSpec:
    start_m: float
    stop_m: float
    points: int
    spacing: str = "linear"

    def __post_init__(self):
        if not self.stop_m > self.start_m >= 0:
            raise ValidationError("stop_m must exceed start_m >= 0", "$.sweep")
        if self.spacing == "log" and self.start_m <= 0:
            raise ValidationError("log spacing needs start_m > 0", "$.sweep.start_m")

    def distances(self):
        if self.spacing == "log":
            return np.geomspace(self.start_m, self.stop_m, self.points)
        return np.linspace(self.start_m, self.stop_m, self.points)


@dataclass(frozen=True)
class Scenario:
    name: str
    plan: CarrierPlan
    modulator: ModulatorParams
    channel: ChannelConfig
    environment: ThermalEnvironment
    sweep: SweepSpec
    detection: DetectionParams = DetectionParams()
    noise_mode: str = "worst_case"
    skr_floor: float = DEFAULT_SKR_FLOOR
    eve_noise: object = "ambient"
    thermal_reference: str = "per_subcarrier"
    base_dir: str = field(default=".", compare=False)

    def to_dict(self):
        """JSON-ready document that :func:`parse_scenario` maps back to ``self``."""
        return {
            "name": self.name,
            "plan": {"f_i_hz": self.plan.f_i, "delta_f_hz": self.plan.delta_f,
                     "n": self.plan.n_subcarriers},
            "modulator": {"mu": self.modulator.mu, "a_sig": self.modulator.a_sig,
                          "kappa": self.modulator.kappa, "theta_rad": self.modulator.theta,
                          "v_mod": self.modulator.v_mod},
            "channel": self.channel.to_dict(),
            "environment": {"temperature_k": self.environment.temperature},
            "detection": {"eta": self.detection.eta, "s": self.detection.s_trusted,
                          "beta": self.detection.beta},
            "sweep": {"start_m": self.sweep.start_m, "stop_m": self.sweep.stop_m,
                      "points": self.sweep.points, "spacing": self.sweep.spacing},
            "noise_mode": self.noise_mode,
            "skr_floor": self.skr_floor,
            "eve_noise": self.eve_noise,
            "thermal_reference": self.thermal_reference,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _json_path(error):
    out = "$"
    for part in error.absolute_path:
        out += f"[{part}]" if isinstance(part, int) else f".{part}"
    return out


def scenario_from_dict(doc, base_dir="."):
    """Validate a decoded JSON document and build a :class:`Scenario`."""
    errors = sorted(_VALIDATOR.iter_errors(doc),
                    key=lambda err: (len(err.absolute_path), err.path))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise ValidationError(err.message, _json_path(err))
    try:
        plan = CarrierPlan(doc["plan"]["f_i_hz"], doc["plan"]["delta_f_hz"], doc["plan"]["n"])
        mod = doc["modulator"]
        modulator = ModulatorParams(mod["mu"], mod["a_sig"], mod["kappa"], mod["theta_rad"],
                                    mod["v_mod"])
        ch = dict(doc["channel"])
        if "atmosphere" in ch:
            ch["atmosphere"] = AtmosphereSpec(**ch["atmosphere"])
            if ch["atmosphere"].stop_hz <= ch["atmosphere"].start_hz:
                raise ValidationError("stop_hz must exceed start_hz", "$.channel.atmosphere")
        channel = ChannelConfig(**ch)
        det = doc.get("detection", {})
        detection = DetectionParams(det.get("eta", 0.1), det.get("s", 1.0), det.get("beta", 1.0))
        sw = doc["sweep"]
        sweep = SweepSpec(sw["start_m"], sw["stop_m"], sw["points"], sw.get("spacing", "linear"))
        env = ThermalEnvironment(doc["environment"]["temperature_k"])
    except DomainError as exc:
        raise ValidationError(str(exc)) from exc
    return Scenario(doc["name"], plan, modulator, channel, env, sweep, detection,
                    doc.get("noise_mode", "worst_case"),
                    doc.get("skr_floor", DEFAULT_SKR_FLOOR),
                    doc.get("eve_noise", "ambient"),
                    doc.get("thermal_reference", "per_subcarrier"), str(base_dir))


def parse_scenario(stream, base_dir="."):
    """Parse a UTF-8 JSON scenario from bytes, text or a file object."""
    data = stream if isinstance(stream, (bytes, str)) else stream.read()
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ValidationError(f"not UTF-8: {exc}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}") from None
    return scenario_from_dict(doc, base_dir)


def load_scenario(path):
    path = Path(path)
    with open(path, "rb") as fh:
        return parse_scenario(fh, base_dir=path.parent)


_SPECTRUM_MEMO = {}


def build_spectrum(atm: AtmosphereSpec, base_dir=".", cache_dir=None):
    """Compute (or fetch from the cache) the spectrum an :class:`AtmosphereSpec` describes.

    With ``cache_dir`` the table is stored as ``spectrum-<digest>.csv`` and
    reused by later runs.
    """
    key = (atm.digest(), str(base_dir))
    cached = None if cache_dir is None else Path(cache_dir) / f"spectrum-{atm.digest()}.csv"
    spec = _SPECTRUM_MEMO.get(key)
    if spec is None and cached is not None and cached.exists():
        spec = load_spectrum_table(cached.read_bytes())
    if spec is None:
        spec = _compute_spectrum(atm, base_dir)
    if cached is not None and not cached.exists():
        cached.parent.mkdir(parents=True, exist_ok=True)
        tmp = cached.with_suffix(f".tmp{os.getpid()}.{threading.get_ident()}")
        tmp.write_bytes(save_spectrum_table(spec))
        os.replace(tmp, cached)  # concurrent writers produce identical bytes
    _SPECTRUM_MEMO[key] = spec
    return spec


def _compute_spectrum(atm, base_dir):
    if atm.lines_file is not None:
        lines = parse_hitran_records(Path(base_dir, atm.lines_file).read_bytes())
    else:
        lines = bundled_water_lines()
    if atm.air_pressure_torr is None:
        air = MoistAir.at_total_pressure(atm.water_pressure_torr, atm.temperature_k)
    else:
        air = MoistAir(atm.water_pressure_torr, atm.air_pressure_torr, atm.temperature_k)
    defaults = ContinuumCoeffs()
    coeffs = ContinuumCoeffs(
        defaults.self_coeff if atm.continuum_self is None else atm.continuum_self,
        defaults.foreign_coeff if atm.continuum_foreign is None else atm.continuum_foreign)
    count = int(round((atm.stop_hz - atm.start_hz) / atm.step_hz)) + 1
    grid = atm.start_hz + atm.step_hz * np.arange(count)
    return total_absorption_spectrum(grid, lines, air, coeffs)


def channel_spec(scn: Scenario, cache_dir=None):
    """Resolve a scenario's channel config into a channel model."""
    cfg = scn.channel
    if cfg.type == "fixed":
        return Fixed(cfg.transmissivity)
    if cfg.type == "diffraction":
        return Diffraction(cfg.beam_waist_m, cfg.aperture_m)
    if cfg.spectrum_file is not None:
        path = Path(scn.base_dir, cfg.spectrum_file)
        return OpenAir(load_spectrum_table(path.read_bytes()))
    return OpenAir(build_spectrum(cfg.atmosphere, scn.base_dir, cache_dir))


@dataclass
class SweepResult:
    """Key rate versus distance for one scenario."""

    name: str
    distances: np.ndarray
    r_ofdm: np.ndarray
    r_k: np.ndarray
    skr_floor: float

    @property
    def max_secure_distance(self):
        """Largest swept distance with ``r_ofdm >= skr_floor``; 0 if none."""
        return max_secure_distance(self.distances, self.r_ofdm, self.skr_floor)


def max_secure_distance(distances, r_ofdm, floor):
    ok = np.nonzero(np.asarray(r_ofdm) >= floor)[0]
    return float(distances[ok[-1]]) if ok.size else 0.0


def run_sweep(scn: Scenario, threads=1, cache_dir=None):
    """Evaluate the OFDM key rate at every swept distance."""
    spec = channel_spec(scn, cache_dir)
    dist = scn.sweep.distances()
    blocks = [dist[start:start + SWEEP_BLOCK] for start in range(0, dist.size, SWEEP_BLOCK)]

    def work(block):
        return rate_table(scn.plan, scn.modulator, spec, scn.environment, scn.detection,
                          block, scn.noise_mode, scn.eve_noise, scn.thermal_reference)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, blocks))
    else:
        parts = [work(block) for block in blocks]
    r_k = np.vstack(parts)
    r_ofdm = np.sum(np.maximum(r_k, 0.0), axis=1)
    return SweepResult(scn.name, dist, r_ofdm, r_k, scn.skr_floor)


def emit_csv(result: SweepResult, stream=None, wide=False):
    """Write the sweep as CSV; returns the text when ``stream`` is None."""
    header = ["distance_m", "r_ofdm_bits"]
    if wide:
        header += [f"r_k_{idx}" for idx in range(1, result.r_k.shape[1] + 1)]
    out = [",".join(header)]
    for row, (dist, total) in enumerate(zip(result.distances, result.r_ofdm)):
        cells = [repr(float(dist)), repr(float(total))]
        if wide:
            cells += [repr(float(val)) for val in result.r_k[row]]
        out.append(",".join(cells))
    out.append(f"# max_secure_distance_m={result.max_secure_distance!r}")
    text = "\n".join(out) + "\n"
    if stream is None:
        return text
    stream.write(text)
    return None
