"""Run configuration: an INI document with typed, validated sections.

Sections and keys (all optional unless noted)::

    [grid]       shape (required, e.g. ``32, 32``), lengths
    [model]      id (required), algebra, a_ion, R_hall, seed, amplitude,
                 field_amplitude, cutoff, rho0, S0, density_shaping, irrotational_vs
    [closure]    K, gamma_ad, sigma, beta
    [integrate]  dt (required), t_end (required), dealias, output_every
    [loops]      loop<N> = "center=x,y radius=r n_pts=n velocity=sel [plane=i,j]"
    [output]     dir, snapshots (none|final|cadence), snapshot_every

Unknown sections or keys are rejected.
"""
from __future__ import annotations

import configparser
import math
import re
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from .errors import ConfigError

MODEL_IDS = ("mhd", "ymmhd", "hall", "superfluid", "sf-ymmhd", "sf-hall")
VELOCITY_SELECTORS = ("u", "v_n", "v")
SNAPSHOT_MODES = ("none", "final", "cadence")
SHAPING_MODES = ("exponential", "linear")


@dataclass(frozen=True)
class GridConfig:
    shape: tuple[int, ...] = (32, 32)
    lengths: tuple[float, ...] | None = None


@dataclass(frozen=True)
class ModelConfig:
    id: str = "mhd"
    algebra: str = "u1"
    a_ion: float = 1.0
    R_hall: float = 0.5
    seed: int = 0
    amplitude: float = 0.1
    field_amplitude: float = 0.1
    cutoff: int = 2
    rho0: float = 1.0
    S0: float = 0.1
    density_shaping: str = "exponential"
    irrotational_vs: bool = False


@dataclass(frozen=True)
class ClosureConfig:
    K: float = 1.0
    gamma_ad: float = 1.4
    sigma: float = 0.5
    beta: float = 0.0


@dataclass(frozen=True)
class IntegrateConfig:
    dt: float = 1e-3
    t_end: float = 1.0
    dealias: bool = False
    output_every: int = 10

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))


@dataclass(frozen=True)
class LoopConfig:
    center: tuple[float, ...]
    radius: float
    n_pts: int = 64
    velocity: str = "u"
    plane: tuple[int, int] = (0, 1)


@dataclass(frozen=True)
class OutputConfig:
    dir: str = ""
    snapshots: str = "final"
    snapshot_every: int = 0


@dataclass(frozen=True)
class SimConfig:
    grid: GridConfig = field(default_factory=GridConfig)
    model: ModelConfig = field(default_factory=ModelConfig)
    closure: ClosureConfig = field(default_factory=ClosureConfig)
    integrate: IntegrateConfig = field(default_factory=IntegrateConfig)
    loops: tuple[LoopConfig, ...] = ()
    output: OutputConfig = field(default_factory=OutputConfig)

    def with_steps(self, n_steps: int) -> "SimConfig":
        return replace(self, integrate=replace(self.integrate, t_end=n_steps * self.integrate.dt))

    def with_seed(self, seed: int) -> "SimConfig":
        return replace(self, model=replace(self.model, seed=seed))

    def with_output_dir(self, path: str) -> "SimConfig":
        return replace(self, output=replace(self.output, dir=str(path)))


SECTIONS = {"grid": GridConfig, "model": ModelConfig, "closure": ClosureConfig,
            "integrate": IntegrateConfig, "output": OutputConfig}


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _floats(key, text) -> tuple[float, ...]:
    try:
        vals = tuple(float(t) for t in re.split(r"[,\s]+", text.strip()) if t)
    except ValueError:
        raise ConfigError(key, f"expected a list of numbers, got {text!r}") from None
    if not all(math.isfinite(v) for v in vals):
        raise ConfigError(key, "values must be finite")
    return vals


def _ints(key, text) -> tuple[int, ...]:
    vals = _floats(key, text)
    if any(v != int(v) for v in vals):
        raise ConfigError(key, f"expected integers, got {text!r}")
    return tuple(int(v) for v in vals)


def _convert(key: str, ftype, text: str):
    text = text.strip()
    if ftype in (float, "float"):
        (v,) = _floats(key, text) if text else (None,)
        if v is None:
            raise ConfigError(key, "missing value")
        return v
    if ftype in (int, "int"):
        vals = _ints(key, text)
        if len(vals) != 1:
            raise ConfigError(key, f"expected one integer, got {text!r}")
        return vals[0]
    if ftype in (bool, "bool"):
        low = text.lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ConfigError(key, f"expected a boolean, got {text!r}")
    if ftype in ("tuple[int, ...]",):
        return _ints(key, text)
    if ftype in ("tuple[float, ...] | None",):
        return _floats(key, text) if text else None
    return text


def _parse_loop(key: str, text: str) -> LoopConfig:
    items = {}
    for tok in text.split():
        if "=" not in tok:
            raise ConfigError(key, f"expected key=value tokens, got {tok!r}")
        k, v = tok.split("=", 1)
        items[k] = v
    unknown = set(items) - {"center", "radius", "n_pts", "velocity", "plane"}
    if unknown:
        raise ConfigError(key, f"unknown loop keys {sorted(unknown)}")
    if "center" not in items or "radius" not in items:
        raise ConfigError(key, "loops need center and radius")
    return LoopConfig(center=_floats(f"{key}.center", items["center"]),
                      radius=_convert(f"{key}.radius", float, items["radius"]),
                      n_pts=_convert(f"{key}.n_pts", int, items.get("n_pts", "64")),
                      velocity=items.get("velocity", "u"),
                      plane=tuple(_ints(f"{key}.plane", items.get("plane", "0,1"))))


def parse_config(text: str) -> SimConfig:
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError("document", str(exc).splitlines()[0]) from None
    unknown = set(cp.sections()) - set(SECTIONS) - {"loops"}
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown section")
    parts = {}
    for name, cls in SECTIONS.items():
        kw = {}
        types = {f.name: f.type for f in fields(cls)}
        if cp.has_section(name):
            for key, raw in cp.items(name):
                if key not in types:
                    raise ConfigError(f"{name}.{key}", "unknown key")
                kw[key] = _convert(f"{name}.{key}", types[key], raw)
        parts[name] = cls(**kw)
    loops = []
    if cp.has_section("loops"):
        for key, raw in cp.items("loops"):
            if not re.fullmatch(r"loop\d+", key):
                raise ConfigError(f"loops.{key}", "unknown key (expected loop<N>)")
            loops.append((int(key[4:]), _parse_loop(f"loops.{key}", raw)))
    cfg = SimConfig(loops=tuple(lp for _, lp in sorted(loops)), **parts)
    for sec, required in (("grid", "shape"), ("model", "id"), ("integrate", "dt"), ("integrate", "t_end")):
        if not cp.has_option(sec, required):
            raise ConfigError(f"{sec}.{required}", "required key missing")
    validate_config(cfg)
    return cfg


def load_config(path: str | Path) -> SimConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError("path", f"cannot read {path}: {exc.strerror}") from None
    return parse_config(text)


# ---------------------------------------------------------------------------
# validation and serialization
# ---------------------------------------------------------------------------

def _finite(key, v):
    if not math.isfinite(v):
        raise ConfigError(key, "must be finite")


def validate_config(cfg: SimConfig) -> None:
    g, m, c, it, out = cfg.grid, cfg.model, cfg.closure, cfg.integrate, cfg.output
    if len(g.shape) not in (2, 3) or any(s < 8 or s % 2 for s in g.shape):
        raise ConfigError("grid.shape", "need 2 or 3 even sizes, each >= 8")
    lengths = g.lengths or (2 * math.pi,) * len(g.shape)
    if len(lengths) != len(g.shape) or any(L <= 0 for L in lengths):
        raise ConfigError("grid.lengths", "need one positive length per axis")
    if m.id not in MODEL_IDS:
        raise ConfigError("model.id", f"unknown model {m.id!r}; known: {', '.join(MODEL_IDS)}")
    for key in ("a_ion", "R_hall", "amplitude", "field_amplitude", "rho0", "S0"):
        _finite(f"model.{key}", getattr(m, key))
    if m.R_hall == 0 or m.a_ion == 0:
        raise ConfigError("model.R_hall" if m.R_hall == 0 else "model.a_ion", "must be nonzero")
    if m.rho0 <= 0:
        raise ConfigError("model.rho0", "mass density must be positive")
    if m.S0 <= 0:
        raise ConfigError("model.S0", "entropy density must be positive")
    if m.amplitude < 0 or m.field_amplitude < 0:
        raise ConfigError("model.amplitude", "amplitudes must be non-negative")
    if m.density_shaping not in SHAPING_MODES:
        raise ConfigError("model.density_shaping", f"one of {SHAPING_MODES}")
    if m.density_shaping == "linear" and m.amplitude >= 1:
        raise ConfigError("model.rho0", "linear shaping with amplitude >= 1 gives a non-positive density region")
    if m.cutoff < 1 or 3 * m.cutoff > min(g.shape):
        raise ConfigError("model.cutoff", "must lie in [1, min(shape) / 3]")
    for key in ("K", "gamma_ad", "sigma", "beta"):
        _finite(f"closure.{key}", getattr(c, key))
    if c.K <= 0:
        raise ConfigError("closure.K", "must be positive")
    if not 0 <= c.sigma < 1:
        raise ConfigError("closure.sigma", "superfluid fraction must lie in [0, 1)")
    if c.beta < 0:
        raise ConfigError("closure.beta", "must be non-negative")
    _finite("integrate.dt", it.dt)
    _finite("integrate.t_end", it.t_end)
    if it.dt <= 0:
        raise ConfigError("integrate.dt", "must be positive")
    if it.t_end < 0:
        raise ConfigError("integrate.t_end", "must be non-negative")
    if it.t_end > 0 and it.t_end < it.dt:
        raise ConfigError("integrate.t_end", "must be zero or at least dt")
    if abs(it.n_steps * it.dt - it.t_end) > 1e-9 * max(1.0, it.t_end):
        raise ConfigError("integrate.t_end", "must be an integer multiple of dt")
    if it.output_every < 1:
        raise ConfigError("integrate.output_every", "must be >= 1")
    for i, lp in enumerate(cfg.loops, 1):
        key = f"loops.loop{i}"
        if len(lp.center) != len(g.shape):
            raise ConfigError(key, "center dimension does not match the grid")
        if lp.radius <= 0:
            raise ConfigError(key, "radius must be positive")
        if lp.n_pts < 16:
            raise ConfigError(key, "n_pts must be >= 16")
        if lp.velocity not in VELOCITY_SELECTORS:
            raise ConfigError(key, f"velocity must be one of {VELOCITY_SELECTORS}")
        if len(lp.plane) != 2 or lp.plane[0] == lp.plane[1] or max(lp.plane) >= len(g.shape) or min(lp.plane) < 0:
            raise ConfigError(key, "plane must name two distinct axes")
        for ax in lp.plane:
            if lp.center[ax] - lp.radius < 0 or lp.center[ax] + lp.radius > lengths[ax]:
                raise ConfigError(key, "loop must lie inside the box")
    if out.snapshots not in SNAPSHOT_MODES:
        raise ConfigError("output.snapshots", f"one of {SNAPSHOT_MODES}")
    if out.snapshots == "cadence" and out.snapshot_every < 1:
        raise ConfigError("output.snapshot_every", "must be >= 1 with cadence snapshots")


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, tuple):
        return ", ".join(_fmt(x) for x in v)
    if v is None:
        return ""
    return str(v)


def dump_config(cfg: SimConfig) -> str:
    lines = []
    for name in SECTIONS:
        lines.append(f"[{name}]")
        for key, val in asdict(getattr(cfg, name)).items():
            if val is None:
                continue
            lines.append(f"{key} = {_fmt(tuple(val) if isinstance(val, list) else val)}")
        lines.append("")
    if cfg.loops:
        lines.append("[loops]")
        for i, lp in enumerate(cfg.loops, 1):
            lines.append(f"loop{i} = center={','.join(repr(float(c)) for c in lp.center)} radius={lp.radius!r} "
                         f"n_pts={lp.n_pts} velocity={lp.velocity} plane={lp.plane[0]},{lp.plane[1]}")
        lines.append("")
    return "\n".join(lines)
