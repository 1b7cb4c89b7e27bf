"""Property suites with fixed seeds, shared by the ``verify`` command and the test suite.

Each ``criterion_<n>`` function returns a list of ``Check`` records.  Suites
group them: ``liealg``, ``affine`` (1-3), ``fields`` (4), ``models`` (5-8, 11),
``circulation`` (9-10); ``all`` is their union.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import fields as F
from .affine_core import (FunctionalGradient, SemidirectDualPoint, circle_system, heavy_top)
from .config import GridConfig
from .liealg import (Ad, GroupElement, SHIPPED, get_spec, group_exp, lie_bracket, random_group_element, so3, u1,
                     validate_spec)
from .models import (AffineFluidGradient, AffineFluidPoint, MHDState, SuperfluidClosure, PolytropicClosure, build_model, euler_rhs, generic_rhs,
                     matrix_form_rhs, mhd_rhs, momentum_to_velocity_tendency, vn_closed_form, vn_newton,
                     vn_residual, solve_vn)
from .models.base import smooth_positive
from .presets import PRESETS
from .reference import SemidirectReference
from .simulate import circulation_deviation, circulation_study, energy_order_study, run_simulation


@dataclass
class Check:
    criterion: int | None
    name: str
    residual: float
    threshold: float
    mode: str = "max"  # "max": residual <= threshold; "min": residual >= threshold

    @property
    def passed(self) -> bool:
        if not np.isfinite(self.residual):
            return False
        if self.mode == "min":
            return self.residual >= self.threshold
        return self.residual <= self.threshold

    def line(self) -> str:
        tag = f"C{self.criterion}" if self.criterion else "--"
        op = ">=" if self.mode == "min" else "<="
        return (f"[{tag}] {self.name}: {self.residual:.3e} (need {op} {self.threshold:.1e}) "
                f"{'PASS' if self.passed else 'FAIL'}")


@dataclass
class SuiteResult:
    name: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _rel(a, b) -> float:
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))


# ---------------------------------------------------------------------------
# Lie algebras
# ---------------------------------------------------------------------------

def liealg_checks(seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for name in sorted(SHIPPED) + ["so3+u1"]:
        spec = get_spec(name)
        rep = validate_spec(spec)
        out.append(Check(None, f"{name} antisymmetry", rep.antisymmetry, 0.0))
        out.append(Check(None, f"{name} jacobi", rep.jacobi, 1e-12))
        out.append(Check(None, f"{name} k ad-invariance", rep.k_invariance, 1e-12))
        ad_inv, hom = 0.0, 0.0
        k = spec.inner_product
        for _ in range(20):
            g = random_group_element(spec, rng)
            h = random_group_element(spec, rng)
            x, y = rng.standard_normal((2, spec.dim))
            ad_inv = max(ad_inv, abs(Ad(g, x) @ k @ Ad(g, y) - x @ k @ y))
            hom = max(hom, float(np.max(np.abs(Ad(g @ h, x) - Ad(g, Ad(h, x))))))
            hom = max(hom, float(np.max(np.abs(Ad(g, lie_bracket(spec, x, y))
                                               - lie_bracket(spec, Ad(g, x), Ad(g, y))))))
        out.append(Check(None, f"{name} k Ad-invariance", ad_inv, 1e-12))
        out.append(Check(None, f"{name} Ad homomorphism", hom, 1e-12))
    return out


# ---------------------------------------------------------------------------
# affine Lie-Poisson core
# ---------------------------------------------------------------------------

def _random_point(system, rng) -> SemidirectDualPoint:
    return SemidirectDualPoint(rng.standard_normal(system.g_dim), rng.standard_normal(system.v_dim))


def _random_grad(system, rng) -> FunctionalGradient:
    return FunctionalGradient(rng.standard_normal(system.g_dim), rng.standard_normal(system.v_dim))


def _affine_systems(rng):
    return {"u1": circle_system(rng.standard_normal(2)), "so3xR3": heavy_top(rng.standard_normal(3))}


def criterion_1(n_samples: int = 100, seed: int = 1) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for label, sys_ in _affine_systems(rng).items():
        n = sys_.g_dim + sys_.v_dim
        anti = pairing = jac_lin = jac_quad = 0.0
        for _ in range(n_samples):
            pt = _random_point(sys_, rng)
            gf, gg = _random_grad(sys_, rng), _random_grad(sys_, rng)
            anti = max(anti, abs(sys_.affine_lp_bracket(pt, gf, gg) + sys_.affine_lp_bracket(pt, gg, gf)))
            # {f, h} = <df, X_h>
            rhs = sys_.affine_lp_rhs(pt, gg)
            pairing = max(pairing, abs(sys_.affine_lp_bracket(pt, gf, gg) - (gf.vec() @ rhs.vec())))
            gens = [(rng.standard_normal(sys_.g_dim), rng.standard_normal(sys_.v_dim)) for _ in range(3)]
            jac_lin = max(jac_lin, sys_.jacobi_linear(pt, gens))
            funcs = []
            for _ in range(3):
                Q = rng.standard_normal((n, n))
                Q = 0.5 * (Q + Q.T)
                b = rng.standard_normal(n)
                funcs.append(lambda p, Q=Q, b=b: FunctionalGradient.from_vec(Q @ p.vec() + b, sys_.g_dim))
            jac_quad = max(jac_quad, sys_.check_affine_jacobi(pt, funcs))
        out += [Check(1, f"{label} cocycle identity", sys_.check_cocycle(n_samples, seed), 1e-10),
                Check(1, f"{label} bracket antisymmetry", anti, 0.0),
                Check(1, f"{label} bracket vs vector field pairing", pairing, 1e-12),
                Check(1, f"{label} Jacobi, linear functionals", jac_lin, 1e-12),
                Check(1, f"{label} Jacobi, quadratic functionals (nested FD)", jac_quad, 3e-5)]
    return out


def criterion_2(n_samples: int = 50, seed: int = 2) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for label, sys_ in {"u1": circle_system(), "so3xR3": heavy_top()}.items():
        ref = SemidirectReference(sys_.rep)
        n, m = sys_.g_dim, sys_.v_dim
        worst = {}

        def upd(key, val):
            worst[key] = max(worst.get(key, 0.0), float(np.max(np.abs(val))))

        for _ in range(n_samples):
            pt = _random_point(sys_, rng)
            z = pt.vec()
            X, Y = rng.standard_normal((2, n + m))
            xv, yw = (X[:n], X[n:]), (Y[:n], Y[n:])
            upd("bracket", np.concatenate(sys_.bracket(xv, yw)) - ref.bracket(X, Y))
            upd("semidirect ad*", sys_.semidirect_ad_star(xv, pt).vec() - ref.ad_star(X, z))
            upd("diamond", sys_.diamond(X[n:], z[n:]) - ref.ad_star(np.r_[np.zeros(n), X[n:]], np.r_[np.zeros(n), z[n:]])[:n])
            gf, gg = FunctionalGradient.from_vec(X, n), FunctionalGradient.from_vec(Y, n)
            upd("affine LP bracket", sys_.affine_lp_bracket(pt, gf, gg) - ref.lp_bracket(z, X, Y))
            upd("affine LP equation", sys_.affine_lp_rhs(pt, gg).vec() - ref.lp_rhs(z, Y))
            upd("orbit tangent", sys_.orbit_tangent(pt, xv).vec() - ref.ad_star(X, z))
            upd("orbit symplectic form", sys_.orbit_symplectic_form(pt, xv, yw) - ref.kks_form(z, X, Y))
            upd("sigma form", sys_.sigma_form(xv, yw))
            g = group_exp(sys_.spec, X[:n])
            upd("nonequivariance cocycle", sys_.nonequivariance_cocycle(g, Y[n:]).vec())
            # (g, u) = (g, 0)(e, u): coadjoint action is the composition of exponentials
            Xr, Xt = np.r_[X[:n], np.zeros(m)], np.r_[np.zeros(n), Y[n:]]
            expected = ref.coadjoint_exp(Xt, ref.coadjoint_exp(Xr, z))
            upd("orbit point", sys_.affine_orbit_point((g, Y[n:]), pt).vec() - expected)
            upd("semidirect Ad*", sys_.semidirect_Ad_star((g, Y[n:]), pt).vec() - expected)
            upd("affine action theta", sys_.theta(g, z[n:]) - ref.coadjoint_exp(Xr, z)[n:])
            beta = rng.standard_normal(n)
            J = sys_.momentum_map((g, Y[n:]), (beta, z[n:]))
            upd("momentum map", J.vec() - (np.r_[beta, z[n:]] + ref.ad_star(Xt, np.r_[np.zeros(n), z[n:]])))
        out += [Check(2, f"{label} zero cocycle: {k}", v, 1e-13) for k, v in worst.items()]
    return out


def criterion_3(n_samples: int = 50, seed: int = 3) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for label, sys_ in _affine_systems(rng).items():
        worst = 0.0
        seed_pt = _random_point(sys_, rng)
        for _ in range(n_samples):
            g = random_group_element(sys_.spec, rng)
            pt = sys_.affine_orbit_point((g, rng.standard_normal(sys_.v_dim)), seed_pt)
            g1 = (rng.standard_normal(sys_.g_dim), rng.standard_normal(sys_.v_dim))
            g2 = (rng.standard_normal(sys_.g_dim), rng.standard_normal(sys_.v_dim))
            form = sys_.orbit_symplectic_form(pt, g1, g2)
            br = sys_.affine_lp_bracket(pt, FunctionalGradient(*g1), FunctionalGradient(*g2))
            worst = max(worst, abs(form - br))
        out.append(Check(3, f"{label} orbit form vs affine bracket", worst, 1e-12))
    return out


# ---------------------------------------------------------------------------
# covariant calculus
# ---------------------------------------------------------------------------

def criterion_4(seed: int = 4) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for shape in ((32, 32), (16, 16, 16)):
        g = F.PeriodicGrid(shape)
        d = g.dim
        tag = "x".join(map(str, shape))
        for spec in (u1(), so3()):
            n = spec.dim
            gam = g.random_field(rng, (d, n), cutoff=3)
            nu = g.random_field(rng, (n,), cutoff=3)
            w = g.random_field(rng, (d, n), cutoff=3)
            dnu = F.covariant_d_function(g, spec, gam, nu)
            lhs = g.integrate(np.sum(dnu * w, axis=(0, 1)))
            rhs = -g.integrate(np.sum(nu * F.covariant_div(g, spec, gam, w), axis=0))
            scale = np.sqrt(g.integrate(np.sum(dnu ** 2, axis=(0, 1))) * g.integrate(np.sum(w ** 2, axis=(0, 1))))
            out.append(Check(4, f"{tag} {spec.name} adjointness on functions", abs(lhs - rhs) / scale, 1e-10))
            al = g.random_field(rng, (d, n), cutoff=3)
            W = g.random_field(rng, (d, d, n), cutoff=3)
            W = W - np.swapaxes(W, 0, 1)
            dal = F.covariant_d_oneform(g, spec, gam, al)
            l2 = g.integrate(F.pair_2(g, dal, W))
            r2 = -g.integrate(np.sum(al * F.covariant_div(g, spec, gam, W), axis=(0, 1)))
            scale2 = np.sqrt(g.integrate(F.pair_2(g, dal, dal)) * g.integrate(F.pair_2(g, W, W)))
            out.append(Check(4, f"{tag} {spec.name} adjointness on one-forms", abs(l2 - r2) / scale2, 1e-10))
            if spec.is_abelian:
                dev = max(np.max(np.abs(dnu - F.grad(g, nu))),
                          np.max(np.abs(dal - F.d_oneform(g, al))),
                          np.max(np.abs(F.curvature(g, spec, gam) - F.d_oneform(g, gam))),
                          np.max(np.abs(F.covariant_div(g, spec, gam, w) - F.div(g, w))),
                          np.max(np.abs(F.covariant_div(g, spec, gam, W) - F.div(g, W))))
                out.append(Check(4, f"{tag} abelian collapse (bit-exact)", float(dev), 0.0))
        if d == 3:
            B = g.random_field(rng, (3,), cutoff=3)
            u = g.random_field(rng, (3,), cutoff=3)
            Bf = F.vector_to_2form(B)
            curlB = F.curl(g, B)
            out.append(Check(4, f"{tag} (div B)# = -curl B", _rel(F.div(g, Bf), -curlB), 1e-10))
            out.append(Check(4, f"{tag} (i_u B)# = B x u", _rel(F.interior_2form(u, Bf), np.cross(B, u, axis=0)),
                             1e-10))
    return out


def fields_checks(seed: int = 40) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for shape in ((32, 32), (16, 16, 16)):
        g = F.PeriodicGrid(shape)
        tag = "x".join(map(str, shape))
        f = g.random_field(rng, cutoff=4)
        out.append(Check(None, f"{tag} d d f = 0", float(np.max(np.abs(F.d_oneform(g, F.grad(g, f))))), 1e-12))
        a = g.random_field(rng, (g.dim,), cutoff=4)
        out.append(Check(None, f"{tag} integral of div = 0", abs(float(g.integrate(F.div(g, a)))), 1e-12))
        loop = F.LoopPolyline.circle(np.full(g.dim, np.pi), 1.2, 64, dim=g.dim)
        out.append(Check(None, f"{tag} loop integral of exact form", abs(F.loop_integral(g, loop, F.grad(g, f))),
                         1e-10))
    return out


# ---------------------------------------------------------------------------
# models
# ---------------------------------------------------------------------------

GRID_2D = (32, 32)


def random_generic_pair(grid: F.PeriodicGrid, spec, rng, n_dens: int = 2, cutoff: int = 4, amplitude: float = 0.5):
    """Band-limited point and gradient of the generic system; all pairwise products resolve on the grid."""
    d, n = grid.dim, spec.dim

    def rf(*lead):
        return grid.random_field(rng, lead, cutoff=cutoff, amplitude=amplitude)

    dens = 1.0 + 0.5 * rf(n_dens)
    return (AffineFluidPoint(rf(d), rf(n), dens, rf(d, n)), AffineFluidGradient(rf(d), rf(n), rf(n_dens), rf(d, n)))


def criterion_5(seed: int = 5) -> list[Check]:
    rng = np.random.default_rng(seed)
    g = F.PeriodicGrid(GRID_2D)
    out = []
    for algebra in ("u1", "so3"):
        spec = get_spec(algebra)
        worst = 0.0
        for _ in range(3):
            pt, gr = random_generic_pair(g, spec, rng)
            worst = max(worst, (generic_rhs(g, spec, pt, gr) - matrix_form_rhs(g, spec, pt, gr)).max_abs())
        out.append(Check(5, f"{algebra} intrinsic vs coordinate form", worst, 1e-10))
    return out


def criterion_6(seed: int = 6, n_dirs: int = 10, eps: float = 1e-6) -> list[Check]:
    rng = np.random.default_rng(seed)
    g = F.PeriodicGrid(GRID_2D)
    out = []
    for mid, alg in (("mhd", "u1"), ("ymmhd", "so3"), ("hall", "u1"), ("superfluid", "u1"),
                     ("sf-ymmhd", "so3"), ("sf-hall", "u1")):
        M = build_model(mid, g, algebra=alg)
        st = M.random_state(rng, amplitude=0.2, cutoff=2)
        gr = M.grads(st)
        worst = 0.0
        for _ in range(n_dirs):
            dirn = M.random_state(rng, amplitude=1.0, cutoff=3) - M.random_state(rng, amplitude=1.0, cutoff=3)
            fd = (M.hamiltonian(st + eps * dirn) - M.hamiltonian(st - eps * dirn)) / (2 * eps)
            an = gr.pair(dirn, g)
            worst = max(worst, abs(fd - an) / abs(an))
        out.append(Check(6, f"{mid} ({alg}) gradient vs Gateaux difference", worst, 1e-6))
    return out


def criterion_7(seed: int = 7) -> list[Check]:
    rng = np.random.default_rng(seed)
    g = F.PeriodicGrid(GRID_2D)
    M = build_model("ymmhd", g, algebra="u1")
    closure = M.closure
    rho = smooth_positive(g, rng, 1.0, 0.1, 2)
    S = smooth_positive(g, rng, 0.1, 0.1, 2)
    u = g.random_field(rng, (2,), cutoff=2, amplitude=0.1)
    A = g.random_field(rng, (2,), cutoff=2, amplitude=0.1)
    ms = MHDState(u, rho, S, A)
    st = M.from_mhd(ms)
    tend = M.rhs(st)
    ref = mhd_rhs(g, ms, closure)
    dev = max(np.max(np.abs(momentum_to_velocity_tendency(st, tend) - ref.u)),
              np.max(np.abs(tend.rho - ref.rho)), np.max(np.abs(tend.S - ref.S)),
              np.max(np.abs(tend.gamma[:, 0] - ref.A)), np.max(np.abs(tend.kappa)))
    out = [Check(7, "u1 Yang-Mills MHD vs MHD", float(dev), 1e-12)]
    ref0 = mhd_rhs(g, MHDState(u, rho, S, np.zeros_like(A)), closure)
    e = euler_rhs(g, u, rho, S, closure)
    dev0 = max(np.max(np.abs(ref0.u - e[0])), np.max(np.abs(ref0.rho - e[1])), np.max(np.abs(ref0.S - e[2])),
               np.max(np.abs(ref0.A)))
    out.append(Check(7, "MHD with B = 0 vs adiabatic fluid", float(dev0), 1e-12))
    return out


def criterion_8(seed: int = 8) -> list[Check]:
    rng = np.random.default_rng(seed)
    g = F.PeriodicGrid(GRID_2D)
    out = []
    for mid, alg in (("ymmhd", "u1"), ("ymmhd", "so3"), ("hall", "u1"), ("superfluid", "u1"),
                     ("sf-ymmhd", "so3"), ("sf-hall", "u1")):
        M = build_model(mid, g, algebra=alg)
        st = M.random_state(rng, amplitude=0.2, cutoff=2)
        out.append(Check(8, f"{mid} ({alg}) bracket vs stress divergence",
                         _rel(M.stress_momentum_tendency(st), M.bracket_momentum_tendency(st)), 1e-8))
    return out


def sf_hall_ambiguity_note(seed: int = 8) -> str:
    g = F.PeriodicGrid(GRID_2D)
    M = build_model("sf-hall", g)
    st = M.random_state(np.random.default_rng(seed), amplitude=0.2, cutoff=2)
    b = M.bracket_momentum_tendency(st)
    return ("sf-hall stress mismatch with the p (x) v_s term: "
            f"{_rel(M.stress_momentum_tendency(st, True), b):.3e}; without it: "
            f"{_rel(M.stress_momentum_tendency(st, False), b):.3e}")


def criterion_11(seed: int = 11) -> list[Check]:
    rng = np.random.default_rng(seed)
    g = F.PeriodicGrid(GRID_2D)
    rho = smooth_positive(g, rng, 1.0, 0.2, 3)
    S = smooth_positive(g, rng, 0.1, 0.2, 3)
    v_n = g.random_field(rng, (2,), cutoff=3, amplitude=0.3)
    v_s = g.random_field(rng, (2,), cutoff=3, amplitude=0.3)
    out = []
    quartic = SuperfluidClosure(PolytropicClosure(), sigma=0.5, beta=0.8)
    m = rho * v_n + quartic.relative_momentum(rho, S, v_s - v_n)
    vn = solve_vn(quartic, m, rho, S, v_s)
    out.append(Check(11, "quartic closure Newton residual", float(np.max(np.abs(vn_residual(quartic, m, rho, S, v_s, vn)))),
                     1e-12))
    out.append(Check(11, "quartic closure recovers v_n", float(np.max(np.abs(vn - v_n))), 1e-12))
    quad = SuperfluidClosure(PolytropicClosure(), sigma=0.5, beta=0.0)
    m2 = rho * v_n + quad.relative_momentum(rho, S, v_s - v_n)
    closed = vn_closed_form(quad, m2, rho, S, v_s)
    newton = vn_newton(quad, m2, rho, S, v_s)
    out.append(Check(11, "quadratic closure residual", float(np.max(np.abs(vn_residual(quad, m2, rho, S, v_s, closed)))),
                     1e-12))
    out.append(Check(11, "Newton vs closed form", float(np.max(np.abs(newton - closed))), 1e-12))
    return out


def models_checks(seed: int = 50) -> list[Check]:
    g = F.PeriodicGrid(GRID_2D)
    rng = np.random.default_rng(seed)
    out = []
    for mid in ("mhd", "ymmhd", "hall", "superfluid", "sf-ymmhd", "sf-hall"):
        M = build_model(mid, g, algebra="so3")
        out.append(Check(None, f"{mid} hydrostatic state is stationary", M.rhs(M.hydrostatic_state()).max_abs(), 1e-14))
    for mid in ("hall", "sf-hall"):
        M = build_model(mid, g)
        st = M.random_state(rng, amplitude=0.2, cutoff=2)
        out.append(Check(None, f"{mid} charge constraint tendency",
                         float(np.max(np.abs(M.constraint_tendency(st)))), 1e-12))
        out.append(Check(None, f"{mid} Ohm's law vs electron Lie-Poisson system",
                         _rel(M.potential_tendency(st, M.rhs(st)), M.potential_rhs(st)), 1e-9))
    return out


# ---------------------------------------------------------------------------
# conservation and circulation runs
# ---------------------------------------------------------------------------

ENERGY_DTS = (0.08, 0.04, 0.02, 0.01)
ENERGY_T_END = 1.6
CONSTRAINT_PRESETS = ("mhd2d-32", "ymmhd-su2-2d-32", "hall2d-32", "superfluid2d-32", "sf-ymmhd-2d-16",
                      "sf-hall-2d-32")


def constraint_config(preset: str):
    """1000 steps at ``dt = 1e-3`` on a 32^2 grid, without loops."""
    c = PRESETS[preset].config()
    return replace(c, grid=GridConfig((32, 32)), loops=(),
                   integrate=replace(c.integrate, dt=1e-3, t_end=1.0, output_every=50))


def criterion_9(notes: list | None = None) -> list[Check]:
    out = []
    for name in PRESETS:
        drifts, slope = energy_order_study(PRESETS[name].config(), ENERGY_DTS, ENERGY_T_END)
        if notes is not None:
            notes.append(f"{name} energy drift at dt={list(ENERGY_DTS)}: "
                         + ", ".join(f"{x:.2e}" for x in drifts) + f"; slope {slope:.2f}")
        out.append(Check(9, f"{name} Hamiltonian drift order in dt", slope, 3.7, "min"))
    for name in CONSTRAINT_PRESETS:
        res = run_simulation(constraint_config(name))
        rec = res.records
        if notes is not None:
            notes.append(f"{name} 1000 steps: relative energy drift "
                         f"{abs(rec[-1].hamiltonian - rec[0].hamiltonian) / abs(rec[0].hamiltonian):.2e}")
        for key in ("mass", "entropy"):
            v = np.array([r.constraints[key] for r in rec])
            out.append(Check(9, f"{name} total {key} drift (relative)", float(np.max(np.abs(v - v[0])) / abs(v[0])),
                             1e-12))
        if "charge_max" in rec[0].constraints:
            out.append(Check(9, f"{name} max |a rho + n|", max(r.constraints["charge_max"] for r in rec), 1e-10))
        if name == "superfluid2d-32":
            v0 = rec[0].constraints["vorticity_max"]
            vmax = max(r.constraints["vorticity_max"] for r in rec)
            out.append(Check(9, f"{name} max |d v_s| / initial", vmax / v0, 10.0))
            out.append(Check(None, f"{name} vorticity transport residual",
                             max(r.vorticity_transport for r in rec), 1e-12))
    return out


CIRCULATION_GRIDS = {"mhd2d-32": 32, "ymmhd-su2-2d-32": 32, "hall2d-32": 32, "superfluid2d-32": 64,
                     "sf-ymmhd-2d-16": 64, "sf-hall-2d-32": 64}


def circulation_config(preset: str):
    """Smooth variant of a 2D preset for the (dt, loop resolution) refinement study.

    Initial data keep only the lowest Fourier shell, so the spatial error floor
    of the semi-discrete system stays below the time and loop errors being refined.
    """
    c = PRESETS[preset].config()
    N = CIRCULATION_GRIDS[preset]
    return replace(c, grid=GridConfig((N, N)),
                   model=replace(c.model, cutoff=1, amplitude=0.1, field_amplitude=0.1, irrotational_vs=False),
                   integrate=replace(c.integrate, dt=0.02, t_end=1.2, output_every=1),
                   loops=tuple(replace(lp, n_pts=32) for lp in c.loops))


def criterion_10(notes: list | None = None, levels: int = 3) -> list[Check]:
    out = []
    for name in CIRCULATION_GRIDS:
        N = CIRCULATION_GRIDS[name]
        rows = circulation_study(circulation_config(name), levels)
        keys = [k for k in rows[0] if k not in ("dt", "n_pts")]
        for k in keys:
            series = [r[k] for r in rows]
            kind = "Kelvin residual" if k.endswith("_kelvin") else "circulation deviation"
            label = (k[:-len("_kelvin")] if k.endswith("_kelvin") else k) + f" ({N}^2)"
            if notes is not None:
                rates = [np.log2(a / b) if b > 0 else np.inf for a, b in zip(series, series[1:])]
                notes.append(f"{name} {label} {kind}: " + ", ".join(f"{s:.2e}" for s in series)
                             + "  observed orders " + ", ".join(f"{r:.2f}" for r in rates))
            ratio = max(b / a for a, b in zip(series, series[1:]))
            out.append(Check(10, f"{name} {label} {kind} refinement ratio", ratio, 1.0 - 1e-12))
            out.append(Check(10, f"{name} {label} {kind} final", series[-1], 1e-6))
    return out


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

SUITES = ("liealg", "affine", "fields", "models", "circulation")


def run_suite(name: str) -> SuiteResult:
    t0 = time.perf_counter()
    res = SuiteResult(name)
    if name == "liealg":
        res.checks = liealg_checks()
    elif name == "affine":
        res.checks = criterion_1() + criterion_2() + criterion_3()
    elif name == "fields":
        res.checks = criterion_4() + fields_checks()
    elif name == "models":
        res.checks = criterion_5() + criterion_6() + criterion_7() + criterion_8() + criterion_11() + models_checks()
        res.notes.append(sf_hall_ambiguity_note())
    elif name == "circulation":
        res.checks = criterion_9(res.notes) + criterion_10(res.notes)
    else:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITES)}, all")
    res.seconds = time.perf_counter() - t0
    return res


def run_suites(selector: str) -> list[SuiteResult]:
    names = SUITES if selector == "all" else (selector,)
    return [run_suite(n) for n in names]
