"""Two-fluid superfluid models: plain, with a Yang-Mills field, and Hall."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import fields as F
from ..liealg import LieAlgebraSpec, direct_sum, so3, u1
from .base import (CirculationSpec, KelvinSpec, ModelParams, advect_covector, field_norm2, identity_tensor,
                   maxwell_stress, smooth_positive, stress_tendency, ym_field_gradient)
from .closures import SuperfluidClosure, check_positive, solve_vn
from .generic import AffineFluidGradient, AffineFluidPoint, density_lp_rhs, generic_rhs, kelvin_forcing
from .hall import potential_from_electrons
from .state import FieldState


@dataclass
class SuperfluidState(FieldState):
    m: np.ndarray
    rho: np.ndarray
    S: np.ndarray
    v_s: np.ndarray


@dataclass
class SFYMState(FieldState):
    m: np.ndarray
    Q: np.ndarray       # (n, *S)
    rho: np.ndarray
    S: np.ndarray
    A: np.ndarray       # (d, n, *S)
    v_s: np.ndarray


@dataclass
class SFHallState(FieldState):
    m: np.ndarray
    rho: np.ndarray
    S: np.ndarray
    u: np.ndarray       # v_s + (a / R) A
    n_mom: np.ndarray
    n: np.ndarray


@dataclass
class Thermo:
    v_n: np.ndarray
    r: np.ndarray       # v_s - v_n
    p: np.ndarray       # relative momentum de/dr
    mu: np.ndarray
    T: np.ndarray
    energy: np.ndarray
    pressure: np.ndarray


def superfluid_thermo(closure: SuperfluidClosure, m, rho, S, v_s) -> Thermo:
    check_positive("rho", rho)
    v_n = solve_vn(closure, m, rho, S, v_s)
    r = v_s - v_n
    return Thermo(v_n, r, closure.relative_momentum(rho, S, r), closure.chemical_potential(rho, S, r),
                  closure.temperature(rho, S, r), closure.energy(rho, S, r), closure.pressure(rho, S, r))


def _superfluid_energy_density(th: Thermo, m, rho) -> np.ndarray:
    return -0.5 * rho * np.sum(th.v_n ** 2, axis=0) + np.sum(m * th.v_n, axis=0) + th.energy


def superfluid_stress(grid, th: Thermo, m, v_s, q) -> np.ndarray:
    """``v_n (x) m + p (x) v_s + q delta`` stored ``T[j, i]``."""
    return th.v_n[:, None] * m[None] + th.p[:, None] * v_s[None] + identity_tensor(grid, q)


class SuperfluidModel:
    name = "superfluid"
    state_cls = SuperfluidState

    def __init__(self, grid: F.PeriodicGrid, closure: SuperfluidClosure | None = None):
        self.grid = grid
        self.closure = closure or SuperfluidClosure()
        self.spec = u1()

    def thermo(self, st) -> Thermo:
        return superfluid_thermo(self.closure, st.m, st.rho, st.S, st.v_s)

    def velocity(self, st, selector: str = "v_n") -> np.ndarray:
        if selector in ("v_n", "u"):
            return self.thermo(st).v_n
        raise ValueError(f"{self.name} has no velocity {selector!r}")

    def hamiltonian(self, st) -> float:
        return float(self.grid.integrate(_superfluid_energy_density(self.thermo(st), st.m, st.rho)))

    def grads(self, st) -> SuperfluidState:
        th = self.thermo(st)
        return SuperfluidState(th.v_n, -0.5 * np.sum(th.v_n ** 2, axis=0) + th.mu, th.T, th.p)

    def to_generic(self, st, gr=None):
        pt = AffineFluidPoint(st.m, st.rho[None], st.S[None], st.v_s[:, None])
        if gr is None:
            return pt
        return pt, AffineFluidGradient(gr.m, gr.rho[None], gr.S[None], gr.v_s[:, None])

    def rhs(self, st) -> SuperfluidState:
        pt, gr = self.to_generic(st, self.grads(st))
        t = generic_rhs(self.grid, self.spec, pt, gr)
        return SuperfluidState(t.m, t.kappa[0], t.dens[0], t.gamma[:, 0])

    def stress_tensor(self, st) -> np.ndarray:
        th = self.thermo(st)
        return superfluid_stress(self.grid, th, st.m, st.v_s, th.pressure)

    def stress_momentum_tendency(self, st) -> np.ndarray:
        return stress_tendency(self.grid, self.stress_tensor(st))

    def bracket_momentum_tendency(self, st) -> np.ndarray:
        return self.rhs(st).m

    def vs_rhs_advective(self, st) -> np.ndarray:
        """``v_s_t = -grad_{v_s} v_s - grad(mu - 1/2 |v_s - v_n|^2) + i_{v_s - v_n} d v_s``."""
        g = self.grid
        th = self.thermo(st)
        return (-advect_covector(g, st.v_s, st.v_s)
                - F.grad(g, th.mu - 0.5 * np.sum(th.r ** 2, axis=0))
                + F.interior_2form(th.r, F.d_oneform(g, st.v_s)))

    def vs_rhs_advective_3d(self, st) -> np.ndarray:
        """Three-dimensional form with ``(v_n - v_s) x curl v_s``."""
        g = self.grid
        th = self.thermo(st)
        return (-advect_covector(g, st.v_s, st.v_s)
                - F.grad(g, th.mu - 0.5 * np.sum(th.r ** 2, axis=0))
                + np.cross(-th.r, F.curl(g, st.v_s), axis=0))

    def circulations(self):
        return [CirculationSpec("v_s", "v_n", lambda st: st.v_s)]

    def kelvin(self, st) -> KelvinSpec:
        pt, gr = self.to_generic(st, self.grads(st))
        return KelvinSpec("v_n", st.S, st.m, kelvin_forcing(self.grid, self.spec, pt, gr))

    def constraints(self, st) -> dict:
        g = self.grid
        return {"mass": float(g.integrate(st.rho)), "entropy": float(g.integrate(st.S)),
                "vorticity_max": float(np.max(np.abs(F.d_oneform(g, st.v_s))))}

    def from_velocities(self, v_n, v_s, rho, S) -> SuperfluidState:
        p = self.closure.relative_momentum(rho, S, v_s - v_n)
        return SuperfluidState(rho * v_n + p, rho, S, v_s)

    def hydrostatic_state(self, rho0: float = 1.0, S0: float = 0.1) -> SuperfluidState:
        g = self.grid
        z = np.zeros((g.dim,) + g.shape)
        return self.from_velocities(z, z, np.full(g.shape, rho0), np.full(g.shape, S0))

    def random_state(self, rng, amplitude: float = 0.1, cutoff: int = 2, rho0: float = 1.0,
                     S0: float = 0.1, irrotational: bool = False) -> SuperfluidState:
        g = self.grid
        rho = smooth_positive(g, rng, rho0, amplitude, cutoff)
        S = smooth_positive(g, rng, S0, amplitude, cutoff)
        v_n = g.random_field(rng, (g.dim,), cutoff=cutoff, amplitude=amplitude)
        if irrotational:
            v_s = sampled_gradient_field(g, rng, amplitude)
        else:
            v_s = g.random_field(rng, (g.dim,), cutoff=cutoff, amplitude=amplitude)
        return self.from_velocities(v_n, v_s, rho, S)


def sampled_gradient_field(grid: F.PeriodicGrid, rng, amplitude: float, b: float = 0.6) -> np.ndarray:
    """Exact gradient, sampled pointwise, of ``phi = c log(1 + b prod_i cos(x_i + t_i))``.

    ``phi`` is not band-limited, so the spectral ``d`` of the samples is small but
    not zero: it sits at the discretization-error level of the grid.
    """
    x = grid.coords()
    scale = [2 * np.pi / L for L in grid.lengths]
    shifts = rng.uniform(0, 2 * np.pi, grid.dim)
    cos = [np.cos(s * xi + t) for s, xi, t in zip(scale, x, shifts)]
    prod = np.prod(cos, axis=0)
    denom = 1 + b * prod
    out = []
    for i in range(grid.dim):
        dprod = -scale[i] * np.sin(scale[i] * x[i] + shifts[i]) * np.prod(
            [c for j, c in enumerate(cos) if j != i], axis=0)
        out.append(b * dprod / denom)
    v = np.stack(out)
    return amplitude * v / np.max(np.abs(v))


class SFYMModel:
    """Superfluid with a Yang-Mills field; the algebra is ``o + u1`` with the ``u1`` block carrying ``(rho, v_s)``."""

    name = "sf-ymmhd"
    state_cls = SFYMState

    def __init__(self, grid: F.PeriodicGrid, spec: LieAlgebraSpec | None = None,
                 closure: SuperfluidClosure | None = None):
        self.grid = grid
        self.o = spec or so3()
        self.spec = direct_sum(self.o, u1())
        self.closure = closure or SuperfluidClosure()

    def thermo(self, st) -> Thermo:
        return superfluid_thermo(self.closure, st.m, st.rho, st.S, st.v_s)

    def velocity(self, st, selector: str = "v_n") -> np.ndarray:
        if selector in ("v_n", "u"):
            return self.thermo(st).v_n
        raise ValueError(f"{self.name} has no velocity {selector!r}")

    def curvature(self, st):
        return F.curvature(self.grid, self.o, st.A)

    def hamiltonian(self, st) -> float:
        th = self.thermo(st)
        dens = (_superfluid_energy_density(th, st.m, st.rho)
                + 0.5 * field_norm2(self.grid, self.o, self.curvature(st)))
        return float(self.grid.integrate(dens))

    def grads(self, st) -> SFYMState:
        th = self.thermo(st)
        return SFYMState(th.v_n, np.zeros_like(st.Q), -0.5 * np.sum(th.v_n ** 2, axis=0) + th.mu, th.T,
                         ym_field_gradient(self.grid, self.o, st.A), th.p)

    def to_generic(self, st, gr=None):
        pt = AffineFluidPoint(st.m, np.concatenate([st.Q, st.rho[None]]), st.S[None],
                              np.concatenate([st.A, st.v_s[:, None]], axis=1))
        if gr is None:
            return pt
        return pt, AffineFluidGradient(gr.m, np.concatenate([gr.Q, gr.rho[None]]), gr.S[None],
                                       np.concatenate([gr.A, gr.v_s[:, None]], axis=1))

    def rhs(self, st) -> SFYMState:
        pt, gr = self.to_generic(st, self.grads(st))
        t = generic_rhs(self.grid, self.spec, pt, gr)
        n = self.o.dim
        return SFYMState(t.m, t.kappa[:n], t.kappa[n], t.dens[0], t.gamma[:, :n], t.gamma[:, n])

    def stress_tensor(self, st) -> np.ndarray:
        th = self.thermo(st)
        Fc = self.curvature(st)
        q = th.pressure - 0.5 * field_norm2(self.grid, self.o, Fc)
        return superfluid_stress(self.grid, th, st.m, st.v_s, q) + maxwell_stress(self.o, Fc)

    def stress_momentum_tendency(self, st) -> np.ndarray:
        return stress_tendency(self.grid, self.stress_tensor(st))

    def bracket_momentum_tendency(self, st) -> np.ndarray:
        return self.rhs(st).m

    def circulations(self):
        return [CirculationSpec("v_s", "v_n", lambda st: st.v_s), CirculationSpec("A", "v_n", lambda st: st.A)]

    def kelvin(self, st) -> KelvinSpec:
        pt, gr = self.to_generic(st, self.grads(st))
        return KelvinSpec("v_n", st.S, st.m, kelvin_forcing(self.grid, self.spec, pt, gr))

    def constraints(self, st) -> dict:
        g = self.grid
        return {"mass": float(g.integrate(st.rho)), "entropy": float(g.integrate(st.S)),
                "vorticity_max": float(np.max(np.abs(F.d_oneform(g, st.v_s))))}

    def hydrostatic_state(self, rho0: float = 1.0, S0: float = 0.1) -> SFYMState:
        g, n, d = self.grid, self.o.dim, self.grid.dim
        base = SuperfluidModel(g, self.closure).hydrostatic_state(rho0, S0)
        return SFYMState(base.m, np.zeros((n,) + g.shape), base.rho, base.S, np.zeros((d, n) + g.shape), base.v_s)

    def random_state(self, rng, amplitude: float = 0.1, cutoff: int = 2, field_amplitude: float | None = None,
                     rho0: float = 1.0, S0: float = 0.1) -> SFYMState:
        g, n, d = self.grid, self.o.dim, self.grid.dim
        fa = amplitude if field_amplitude is None else field_amplitude
        base = SuperfluidModel(g, self.closure).random_state(rng, amplitude, cutoff, rho0, S0)
        return SFYMState(base.m, g.random_field(rng, (n,), cutoff=cutoff, amplitude=amplitude), base.rho, base.S,
                         g.random_field(rng, (d, n), cutoff=cutoff, amplitude=fa), base.v_s)


class SFHallModel:
    """Superfluid Hall MHD: affine system in ``(m, rho, S, u)`` plus the electron system in ``(n_mom, n)``."""

    name = "sf-hall"
    state_cls = SFHallState

    def __init__(self, grid: F.PeriodicGrid, closure: SuperfluidClosure | None = None,
                 params: ModelParams | None = None):
        self.grid = grid
        self.closure = closure or SuperfluidClosure()
        self.params = params or ModelParams()
        self.spec = u1()

    def potential(self, st) -> np.ndarray:
        return potential_from_electrons(st.n_mom, st.n, self.params.R_hall)

    def superfluid_velocity(self, st, A=None) -> np.ndarray:
        A = self.potential(st) if A is None else A
        return st.u - (self.params.a_ion / self.params.R_hall) * A

    def thermo(self, st, A=None) -> Thermo:
        a, R = self.params.a_ion, self.params.R_hall
        A = self.potential(st) if A is None else A
        return superfluid_thermo(self.closure, st.m - a * st.rho * A / R, st.rho, st.S,
                                 self.superfluid_velocity(st, A))

    def velocity(self, st, selector: str = "v_n") -> np.ndarray:
        if selector in ("v_n", "u"):
            return self.thermo(st).v_n
        if selector == "v":
            return self.grads(st).n_mom
        raise ValueError(f"{self.name} has no velocity {selector!r}")

    def hamiltonian(self, st) -> float:
        a, R = self.params.a_ion, self.params.R_hall
        A = self.potential(st)
        th = self.thermo(st, A)
        B = F.d_oneform(self.grid, A)
        dens = (_superfluid_energy_density(th, st.m - a * st.rho * A / R, st.rho)
                + 0.5 * F.pair_2(self.grid, B, B))
        return float(self.grid.integrate(dens))

    def potential_gradient(self, st, A, th) -> np.ndarray:
        """``dh/dA = -(a / R)(rho v_n + p) + W`` with ``W = -div dA``."""
        a, R = self.params.a_ion, self.params.R_hall
        W = -F.div(self.grid, F.d_oneform(self.grid, A))
        return -(a / R) * (st.rho * th.v_n + th.p) + W

    def grads(self, st) -> SFHallState:
        a, R = self.params.a_ion, self.params.R_hall
        A = self.potential(st)
        th = self.thermo(st, A)
        v = (R / st.n) * self.potential_gradient(st, A, th)
        return SFHallState(
            m=th.v_n,
            rho=-0.5 * np.sum(th.v_n ** 2, axis=0) - (a / R) * np.sum(A * th.v_n, axis=0) + th.mu,
            S=th.T,
            u=th.p,
            n_mom=v,
            n=-np.sum(A * v, axis=0) / R)

    def to_generic(self, st, gr):
        pt = AffineFluidPoint(st.m, st.rho[None], st.S[None], st.u[:, None])
        return pt, AffineFluidGradient(gr.m, gr.rho[None], gr.S[None], gr.u[:, None])

    def rhs(self, st) -> SFHallState:
        gr = self.grads(st)
        pt, gg = self.to_generic(st, gr)
        t = generic_rhs(self.grid, self.spec, pt, gg)
        nm_dot, n_dot = density_lp_rhs(self.grid, st.n_mom, st.n[None], gr.n_mom, gr.n[None])
        return SFHallState(t.m, t.kappa[0], t.dens[0], t.gamma[:, 0], nm_dot, n_dot[0])

    def electron_velocity(self, st) -> np.ndarray:
        """``v = v_n + p / rho + (R / a rho) div B``, valid when ``a rho + n = 0``."""
        a, R = self.params.a_ion, self.params.R_hall
        A = self.potential(st)
        th = self.thermo(st, A)
        return th.v_n + th.p / st.rho + (R / (a * st.rho)) * F.div(self.grid, F.d_oneform(self.grid, A))

    def potential_rhs(self, st) -> np.ndarray:
        """``A_t = -i_{v_n} B - (1/rho) i_p B - (R / a rho) i_{div B} B``."""
        a, R = self.params.a_ion, self.params.R_hall
        A = self.potential(st)
        th = self.thermo(st, A)
        B = F.d_oneform(self.grid, A)
        X = th.v_n + th.p / st.rho + (R / (a * st.rho)) * F.div(self.grid, B)
        return -F.interior_2form(X, B)

    def potential_rhs_3d(self, st) -> np.ndarray:
        """``A_t = (v_n + p / rho - (R / a rho) curl B) x B`` with vector ``B = curl A``."""
        a, R = self.params.a_ion, self.params.R_hall
        A = self.potential(st)
        th = self.thermo(st, A)
        B = F.curl(self.grid, A)
        X = th.v_n + th.p / st.rho - (R / (a * st.rho)) * F.curl(self.grid, B)
        return np.cross(X, B, axis=0)

    def vs_rhs(self, st) -> np.ndarray:
        """``v_s_t = -grad(v_s.v_n + mu - |v_n|^2/2) + (a / R rho) i_p B + (1/rho) i_{div B} B - i_{v_n} d v_s``."""
        g = self.grid
        a, R = self.params.a_ion, self.params.R_hall
        A = self.potential(st)
        th = self.thermo(st, A)
        v_s = self.superfluid_velocity(st, A)
        B = F.d_oneform(g, A)
        return (-F.grad(g, np.sum(v_s * th.v_n, axis=0) + th.mu - 0.5 * np.sum(th.v_n ** 2, axis=0))
                + (a / (R * st.rho)) * F.interior_2form(th.p, B)
                + F.interior_2form(F.div(g, B), B) / st.rho
                - F.interior_2form(th.v_n, F.d_oneform(g, v_s)))

    def potential_tendency(self, st, tend) -> np.ndarray:
        R = self.params.R_hall
        return R * (tend.n_mom / st.n - st.n_mom * tend.n / st.n ** 2)

    def stress_tensor(self, st, include_ambiguous: bool = True) -> np.ndarray:
        """``v_n (x) (rho v_n + p) + p (x) v_s + B.B + q delta``.

        The middle term is the one reading that makes the stress divergence match the
        bracket tendency; ``include_ambiguous=False`` drops it.
        """
        A = self.potential(st)
        th = self.thermo(st, A)
        v_s = self.superfluid_velocity(st, A)
        B = F.d_oneform(self.grid, A)
        q = th.pressure - 0.5 * F.pair_2(self.grid, B, B)
        T = (th.v_n[:, None] * (st.rho * th.v_n + th.p)[None] + maxwell_stress(self.spec, B[:, :, None])
             + identity_tensor(self.grid, q))
        if include_ambiguous:
            T = T + th.p[:, None] * v_s[None]
        return T

    def stress_momentum_tendency(self, st, include_ambiguous: bool = True) -> np.ndarray:
        return stress_tendency(self.grid, self.stress_tensor(st, include_ambiguous))

    def bracket_momentum_tendency(self, st) -> np.ndarray:
        t = self.rhs(st)
        return t.m + t.n_mom

    def circulations(self):
        return [CirculationSpec("u", "v_n", lambda st: st.u), CirculationSpec("A", "v", self.potential)]

    def kelvin(self, st) -> KelvinSpec:
        gr = self.grads(st)
        pt, gg = self.to_generic(st, gr)
        return KelvinSpec("v_n", st.S, st.m, kelvin_forcing(self.grid, self.spec, pt, gg))

    def constraints(self, st) -> dict:
        g = self.grid
        return {"mass": float(g.integrate(st.rho)), "entropy": float(g.integrate(st.S)),
                "charge_max": float(np.max(np.abs(self.params.a_ion * st.rho + st.n)))}

    def constraint_tendency(self, st, tend=None) -> np.ndarray:
        tend = tend or self.rhs(st)
        return self.params.a_ion * tend.rho + tend.n

    def from_fields(self, v_n, v_s, rho, S, A) -> SFHallState:
        a, R = self.params.a_ion, self.params.R_hall
        p = self.closure.relative_momentum(rho, S, v_s - v_n)
        n = -a * rho
        return SFHallState(rho * v_n + a * rho * A / R + p, rho, S, v_s + (a / R) * A, n * A / R, n)

    def hydrostatic_state(self, rho0: float = 1.0, S0: float = 0.1) -> SFHallState:
        g = self.grid
        z = np.zeros((g.dim,) + g.shape)
        return self.from_fields(z, z, np.full(g.shape, rho0), np.full(g.shape, S0), z)

    def random_state(self, rng, amplitude: float = 0.1, cutoff: int = 2, field_amplitude: float | None = None,
                     rho0: float = 1.0, S0: float = 0.1) -> SFHallState:
        g = self.grid
        fa = amplitude if field_amplitude is None else field_amplitude
        rho = smooth_positive(g, rng, rho0, amplitude, cutoff)
        S = smooth_positive(g, rng, S0, amplitude, cutoff)
        v_n = g.random_field(rng, (g.dim,), cutoff=cutoff, amplitude=amplitude)
        v_s = g.random_field(rng, (g.dim,), cutoff=cutoff, amplitude=amplitude)
        A = g.random_field(rng, (g.dim,), cutoff=cutoff, amplitude=fa)
        return self.from_fields(v_n, v_s, rho, S, A)
