"""Time integration, material loops, and the diagnostic battery.

The diagnostics CSV has one row per record with columns, in order:

``step, time, hamiltonian``, then the model constraint monitors (``mass``,
``entropy``, and ``charge_max`` or ``vorticity_max`` where defined), then
``vorticity_transport`` (empty for models without a superfluid velocity), then
for each loop ``i`` (1-based) the circulations of the model one-forms carried by
that loop's velocity, ``loop<i>_<form>[_<component>]``, and, when the loop moves
with the Kelvin velocity, ``loop<i>_kelvin_circulation, loop<i>_kelvin_forcing``.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import fields as F
from .config import SimConfig, dump_config
from .errors import ConfigError, ModelDomainError, NonFiniteStateError
from .models import build_model
from .models.closures import check_positive


# ---------------------------------------------------------------------------
# integrator
# ---------------------------------------------------------------------------

def _axpy(x, a, y):
    """``x + a y`` on states, arrays, or lists of either."""
    if isinstance(x, list):
        return [_axpy(xi, a, yi) for xi, yi in zip(x, y)]
    return x + a * y


def _nonfinite(y) -> str | None:
    if isinstance(y, list):
        for i, yi in enumerate(y):
            bad = _nonfinite(yi)
            if bad is not None:
                return bad if i == 0 else f"aux{i}"
        return None
    if hasattr(y, "nonfinite_field"):
        return y.nonfinite_field()
    return None if np.all(np.isfinite(y)) else "array"


def rk4_step(state, rhs, dt: float, post=None, step: int = 0):
    """Classical four-stage step; ``post`` (e.g. dealiasing) is applied after each stage.

    ``state`` may be a model state, an array, or a list of these.  Raises
    ``NonFiniteStateError`` carrying ``step`` if the result is not finite.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    post = post or (lambda y: y)
    k1 = rhs(state)
    k2 = rhs(post(_axpy(state, dt / 2, k1)))
    k3 = rhs(post(_axpy(state, dt / 2, k2)))
    k4 = rhs(post(_axpy(state, dt, k3)))
    incr = _axpy(_axpy(_axpy(k1, 2.0, k2), 2.0, k3), 1.0, k4)
    out = post(_axpy(state, dt / 6, incr))
    bad = _nonfinite(out)
    if bad is not None:
        raise NonFiniteStateError(step, bad)
    return out


def dealias_state(grid: F.PeriodicGrid, y):
    if isinstance(y, list):
        return [dealias_state(grid, yi) for yi in y]
    if hasattr(y, "map"):
        return y.map(grid.dealias)
    return y


# ---------------------------------------------------------------------------
# loops
# ---------------------------------------------------------------------------

@dataclass
class LoopTracer:
    """A material loop, the velocity that carries it, and its wrapped position history."""

    loop: F.LoopPolyline
    velocity_selector: str
    history: list = field(default_factory=list)

    def record(self, grid: F.PeriodicGrid) -> None:
        self.history.append(self.loop.wrapped(grid))


def advect_loop(tracer: LoopTracer, grid: F.PeriodicGrid, velocity, dt: float) -> LoopTracer:
    """Advance every loop point by one RK4 step in the frozen, interpolated ``velocity``."""
    vel = lambda p: interpolate_velocity(grid, velocity, p)
    pts = rk4_step(tracer.loop.points, vel, dt)
    out = LoopTracer(F.LoopPolyline(pts, tracer.loop.winding), tracer.velocity_selector, list(tracer.history))
    out.record(grid)
    return out


def interpolate_velocity(grid: F.PeriodicGrid, velocity, points) -> np.ndarray:
    return F.interpolate(grid, velocity, points).T


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------

@dataclass
class DiagnosticsRecord:
    step: int
    time: float
    hamiltonian: float
    constraints: dict
    vorticity_transport: float | None = None
    circulations: dict = field(default_factory=dict)
    kelvin: dict = field(default_factory=dict)

    def row(self) -> dict:
        out = {"step": self.step, "time": self.time, "hamiltonian": self.hamiltonian}
        out.update(self.constraints)
        out["vorticity_transport"] = "" if self.vorticity_transport is None else self.vorticity_transport
        for key, val in self.circulations.items():
            arr = np.atleast_1d(val)
            if arr.size == 1:
                out[key] = float(arr[0])
            else:
                out.update({f"{key}_{a}": float(v) for a, v in enumerate(arr)})
        for key, (circ, force) in self.kelvin.items():
            out[f"{key}_kelvin_circulation"] = circ
            out[f"{key}_kelvin_forcing"] = force
        return out


def constraint_monitor(model, state) -> dict:
    """Conserved totals and pointwise constraints of ``state``."""
    return model.constraints(state)


def _vorticity_velocity(model, state):
    if not hasattr(state, "v_s"):
        return None
    return model.velocity(state, "v_n")


def vorticity_tendency(grid: F.PeriodicGrid, omega, v) -> np.ndarray:
    """Transport of a closed two-form: ``-L_v omega = -d i_v omega``."""
    return -F.d_oneform(grid, F.interior_2form(v, omega))


def loop_diagnostics(model, state, tracers) -> tuple[dict, dict]:
    g = model.grid
    circ, kel = {}, {}
    ks = model.kelvin(state) if tracers else None
    for i, tr in enumerate(tracers, 1):
        for spec in model.circulations():
            if spec.velocity == tr.velocity_selector:
                circ[f"loop{i}_{spec.name}"] = F.loop_integral(g, tr.loop, spec.form(state))
        if ks.velocity == tr.velocity_selector:
            kel[f"loop{i}"] = (F.loop_integral(g, tr.loop, ks.momentum / ks.density),
                               F.loop_integral(g, tr.loop, ks.forcing / ks.density))
    return circ, kel


def make_record(model, state, tracers, step, time, omega=None) -> DiagnosticsRecord:
    vt = None
    if omega is not None:
        vt = float(np.max(np.abs(F.d_oneform(model.grid, state.v_s) - omega)))
    circ, kel = loop_diagnostics(model, state, tracers)
    return DiagnosticsRecord(step, time, model.hamiltonian(state), constraint_monitor(model, state), vt, circ, kel)


def kelvin_residual(records, loop: str = "loop1") -> np.ndarray:
    """Central-difference ``d/dt`` of the Kelvin circulation minus the forcing quadrature, at interior records."""
    if len(records) < 3:
        raise ValueError("kelvin_residual needs at least 3 records")
    t = np.array([r.time for r in records])
    c = np.array([r.kelvin[loop][0] for r in records])
    f = np.array([r.kelvin[loop][1] for r in records])
    return (c[2:] - c[:-2]) / (t[2:] - t[:-2]) - f[1:-1]


def gamma_circulation(records, key: str) -> np.ndarray:
    """Series of a one-form circulation (algebra-valued rows for Lie one-forms)."""
    if len(records) < 1:
        raise ValueError("gamma_circulation needs at least one record")
    return np.array([np.atleast_1d(r.circulations[key]) for r in records])


def circulation_deviation(series: np.ndarray) -> float:
    """``max_t |C(t) - C(0)|`` relative to ``max(|C(0)|, 1)``; uses the algebra norm for vector series."""
    series = np.asarray(series, dtype=float)
    dev = np.max(np.linalg.norm(series - series[0], axis=-1)) if series.ndim > 1 else np.max(np.abs(series - series[0]))
    scale = max(float(np.linalg.norm(np.atleast_1d(series[0]))), 1.0)
    return float(dev / scale)


def kelvin_relative_residual(records, loop: str = "loop1") -> float:
    """``max |kelvin_residual|`` relative to ``max(max_t |forcing|, max_t |C(t)|, 1)``."""
    res = kelvin_residual(records, loop)
    c = np.array([r.kelvin[loop][0] for r in records])
    f = np.array([r.kelvin[loop][1] for r in records])
    scale = max(float(np.max(np.abs(f))), float(np.max(np.abs(c))), 1.0)
    return float(np.max(np.abs(res)) / scale)


# ---------------------------------------------------------------------------
# runs
# ---------------------------------------------------------------------------

@dataclass
class RunResult:
    model: object
    state: object
    records: list
    tracers: list
    snapshots: list


def build_grid(cfg: SimConfig) -> F.PeriodicGrid:
    lengths = cfg.grid.lengths or (2 * math.pi,) * len(cfg.grid.shape)
    return F.PeriodicGrid(tuple(cfg.grid.shape), tuple(lengths))


def model_from_config(cfg: SimConfig, grid: F.PeriodicGrid | None = None):
    m, c = cfg.model, cfg.closure
    return build_model(m.id, grid or build_grid(cfg), algebra=m.algebra, K=c.K, gamma_ad=c.gamma_ad,
                       sigma=c.sigma, beta=c.beta, a_ion=m.a_ion, R_hall=m.R_hall)


def initial_state(model, cfg: SimConfig):
    """Seeded band-limited initial data; positivity of the densities is checked here."""
    m = cfg.model
    rng = np.random.default_rng(m.seed)
    kw = dict(amplitude=m.amplitude, cutoff=m.cutoff, rho0=m.rho0, S0=m.S0)
    if m.id == "superfluid":
        st = model.random_state(rng, irrotational=m.irrotational_vs, **kw)
    else:
        st = model.random_state(rng, field_amplitude=m.field_amplitude, **kw)
    if m.density_shaping == "linear":
        st = _relinearize_density(model, st, m)
    try:
        check_positive("rho", st.rho)
        check_positive("S", st.S)
    except ModelDomainError as exc:
        raise ConfigError("model.rho0", str(exc)) from None
    return st


def _relinearize_density(model, st, m):
    """Replace ``rho = rho0 exp(a f)`` by ``rho0 (1 + a f)`` keeping velocities and potentials fixed."""
    g = model.grid
    f = np.log(st.rho / m.rho0)
    rho = m.rho0 * (1 + f)
    if hasattr(st, "n"):
        A = model.potential(st)
        if hasattr(st, "u"):
            th = model.thermo(st)
            return model.from_fields(th.v_n, model.superfluid_velocity(st), rho, st.S, A)
        return model.from_velocity(model.velocity(st, "u"), rho, st.S, A)
    if hasattr(st, "v_s"):
        th = model.thermo(st)
        return replace(st, rho=rho, m=st.m + (rho - st.rho) * th.v_n)
    u = model.velocity(st, "u")
    return replace(st, rho=rho, m=rho * u)


def make_tracers(cfg: SimConfig, grid: F.PeriodicGrid) -> list:
    out = []
    for lp in cfg.loops:
        loop = F.LoopPolyline.circle(lp.center, lp.radius, lp.n_pts, tuple(lp.plane), grid.dim)
        tr = LoopTracer(loop, lp.velocity)
        tr.record(grid)
        out.append(tr)
    return out


def _algebra_dim(model) -> int:
    spec = getattr(model, "spec", None)
    return spec.dim if spec is not None else 1


def write_snapshots(out_dir: Path, model, state, step: int) -> list:
    snap_dir = out_dir / "snapshots"
    snap_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, arr in state.arrays().items():
        p = snap_dir / f"step{step:06d}_{name}.bin"
        lead = arr.shape[:arr.ndim - model.grid.dim]
        F.write_snapshot(p, model.grid, name, arr, _algebra_dim(model),
                         f"C-order; leading axes {list(lead)} then grid axes")
        paths.append(p)
    return paths


def write_csv(path: Path, records) -> None:
    rows = [r.row() for r in records]
    cols = list(rows[0]) if rows else ["step", "time", "hamiltonian"]
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=cols)
        w.writeheader()
        for r in rows:
            w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})


def run_simulation(cfg: SimConfig, output_dir: str | Path | None = None, state=None, log=None) -> RunResult:
    """Integrate ``cfg``; loops and the vorticity transport field are co-integrated with the state.

    Records are taken at step 0, every ``output_every`` steps, and at the final step.
    Files are written only when an output directory is given (argument or config).
    """
    grid = build_grid(cfg)
    model = model_from_config(cfg, grid)
    st = initial_state(model, cfg) if state is None else state
    tracers = make_tracers(cfg, grid)
    it = cfg.integrate
    n_steps = it.n_steps
    post = (lambda y: dealias_state(grid, y)) if it.dealias else None

    v0 = _vorticity_velocity(model, st)
    omega = F.d_oneform(grid, st.v_s) if v0 is not None else None

    def rhs(y):
        s = y[0]
        out = [model.rhs(s)]
        need_v = {tr.velocity_selector for tr in tracers}
        vels = {sel: model.velocity(s, sel) for sel in need_v}
        out += [interpolate_velocity(grid, vels[tr.velocity_selector], p)
                for tr, p in zip(tracers, y[1:1 + len(tracers)])]
        if omega is not None:
            out.append(vorticity_tendency(grid, y[-1], model.velocity(s, "v_n")))
        return out

    def stage_post(y):
        if post is None:
            return y
        return [post(y[0])] + y[1:1 + len(tracers)] + ([grid.dealias(y[-1])] if omega is not None else [])

    out_dir = Path(output_dir or cfg.output.dir) if (output_dir or cfg.output.dir) else None
    snapshots = []
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "resolved_config.ini").write_text(dump_config(cfg))

    records = [make_record(model, st, tracers, 0, 0.0, omega)]
    y = [st] + [tr.loop.points for tr in tracers] + ([omega] if omega is not None else [])
    for step in range(1, n_steps + 1):
        y = rk4_step(y, rhs, it.dt, stage_post if post else None, step)
        st = y[0]
        for tr, p in zip(tracers, y[1:1 + len(tracers)]):
            tr.loop = F.LoopPolyline(p, tr.loop.winding)
        if omega is not None:
            omega = y[-1]
        if step % it.output_every == 0 or step == n_steps:
            for tr in tracers:
                tr.record(grid)
            records.append(make_record(model, st, tracers, step, step * it.dt, omega))
            if log is not None:
                log(f"step {step}/{n_steps}  t={step * it.dt:.6g}  h={records[-1].hamiltonian:.12g}")
        if (out_dir is not None and cfg.output.snapshots == "cadence"
                and step % cfg.output.snapshot_every == 0):
            snapshots += write_snapshots(out_dir, model, st, step)
    if out_dir is not None:
        if cfg.output.snapshots == "final" or (cfg.output.snapshots == "cadence" and n_steps == 0):
            snapshots += write_snapshots(out_dir, model, st, n_steps)
        write_csv(out_dir / "diagnostics.csv", records)
    return RunResult(model, st, records, tracers, snapshots)


# ---------------------------------------------------------------------------
# refinement studies
# ---------------------------------------------------------------------------

def energy_drift(records) -> float:
    h = np.array([r.hamiltonian for r in records])
    return float(np.max(np.abs(h - h[0])) / abs(h[0]))


def fitted_slope(x, y) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def energy_order_study(cfg: SimConfig, dts, t_end: float) -> tuple[list, float]:
    """Relative Hamiltonian drift at ``t_end`` for each ``dt`` and the fitted order."""
    drifts = []
    for dt in dts:
        n = int(round(t_end / dt))
        c = replace(cfg, loops=(), output=replace(cfg.output, dir=""),
                    integrate=replace(cfg.integrate, dt=dt, t_end=n * dt, output_every=n))
        res = run_simulation(c)
        drifts.append(energy_drift(res.records))
    return drifts, fitted_slope(dts, drifts)


def circulation_study(cfg: SimConfig, levels: int = 3) -> list[dict]:
    """Kelvin and one-form circulation deviations under simultaneous halving of ``dt``,
    loop resolution, and the record interval in time (the record cadence in steps is kept).
    """
    rows = []
    for lev in range(levels):
        f = 2 ** lev
        it = cfg.integrate
        dt = it.dt / f
        c = replace(cfg, output=replace(cfg.output, dir=""),
                    integrate=replace(it, dt=dt, t_end=round(it.t_end / dt) * dt),
                    loops=tuple(replace(lp, n_pts=lp.n_pts * f) for lp in cfg.loops))
        res = run_simulation(c)
        row = {"dt": dt, "n_pts": [lp.n_pts for lp in c.loops]}
        keys = res.records[0].circulations.keys()
        for k in keys:
            row[k] = circulation_deviation(gamma_circulation(res.records, k))
        for k in res.records[0].kelvin:
            row[f"{k}_kelvin"] = kelvin_relative_residual(res.records, k)
        rows.append(row)
    return rows
