"""Yang-Mills magnetohydrodynamics and its abelian and field-free reductions."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import fields as F
from ..liealg import LieAlgebraSpec, u1
from .base import (CirculationSpec, KelvinSpec, advect_covector, field_norm2, identity_tensor,
                   maxwell_stress, smooth_positive, stress_tendency, ym_field_gradient)
from .closures import PolytropicClosure, check_positive
from .generic import AffineFluidGradient, AffineFluidPoint, generic_rhs, kelvin_forcing
from .state import FieldState


@dataclass
class ComplexFluidState(FieldState):
    m: np.ndarray       # (d, *S)
    kappa: np.ndarray   # (n, *S) gauge charge density
    rho: np.ndarray
    S: np.ndarray
    gamma: np.ndarray   # (d, n, *S) gauge potential


@dataclass
class MHDState(FieldState):
    """Velocity form of abelian MHD; ``A`` is a plain one-form ``(d, *S)``."""

    u: np.ndarray
    rho: np.ndarray
    S: np.ndarray
    A: np.ndarray


class YMMHDModel:
    name = "ymmhd"
    state_cls = ComplexFluidState

    def __init__(self, grid: F.PeriodicGrid, spec: LieAlgebraSpec | None = None,
                 closure: PolytropicClosure | None = None):
        self.grid = grid
        self.spec = spec or u1()
        self.closure = closure or PolytropicClosure()

    # -- derived fields ----------------------------------------------------
    def velocity(self, st: ComplexFluidState, selector: str = "u") -> np.ndarray:
        if selector != "u":
            raise ValueError(f"{self.name} has no velocity {selector!r}")
        check_positive("rho", st.rho)
        return st.m / st.rho

    def curvature(self, st) -> np.ndarray:
        return F.curvature(self.grid, self.spec, st.gamma)

    def hamiltonian(self, st: ComplexFluidState) -> float:
        g = self.grid
        check_positive("rho", st.rho)
        dens = (0.5 * np.sum(st.m ** 2, axis=0) / st.rho + self.closure.energy(st.rho, st.S)
                + 0.5 * field_norm2(g, self.spec, self.curvature(st)))
        return float(g.integrate(dens))

    def grads(self, st: ComplexFluidState) -> ComplexFluidState:
        u = self.velocity(st)
        c = self.closure
        return ComplexFluidState(
            m=u,
            kappa=np.zeros_like(st.kappa),
            rho=-0.5 * np.sum(u ** 2, axis=0) + c.chemical_potential(st.rho, st.S),
            S=c.temperature(st.rho, st.S),
            gamma=ym_field_gradient(self.grid, self.spec, st.gamma))

    def to_generic(self, st, gr=None):
        pt = AffineFluidPoint(st.m, st.kappa, np.stack([st.rho, st.S]), st.gamma)
        if gr is None:
            return pt
        return pt, AffineFluidGradient(gr.m, gr.kappa, np.stack([gr.rho, gr.S]), gr.gamma)

    def rhs(self, st: ComplexFluidState) -> ComplexFluidState:
        pt, gr = self.to_generic(st, self.grads(st))
        t = generic_rhs(self.grid, self.spec, pt, gr)
        return ComplexFluidState(t.m, t.kappa, t.dens[0], t.dens[1], t.gamma)

    # -- stress form -------------------------------------------------------
    def stress_tensor(self, st: ComplexFluidState) -> np.ndarray:
        """``T = u (x) rho u + B.B + q delta`` with ``q = p - 1/2 ||B||^2``; stored ``T[j, i]``."""
        u = self.velocity(st)
        Fc = self.curvature(st)
        q = self.closure.pressure(st.rho, st.S) - 0.5 * field_norm2(self.grid, self.spec, Fc)
        return u[:, None] * st.m[None] + maxwell_stress(self.spec, Fc) + identity_tensor(self.grid, q)

    def stress_momentum_tendency(self, st) -> np.ndarray:
        return stress_tendency(self.grid, self.stress_tensor(st))

    def bracket_momentum_tendency(self, st) -> np.ndarray:
        return self.rhs(st).m

    # -- diagnostics -------------------------------------------------------
    def circulations(self):
        return [CirculationSpec("A", "u", lambda st: st.gamma)]

    def kelvin(self, st) -> KelvinSpec:
        pt, gr = self.to_generic(st, self.grads(st))
        return KelvinSpec("u", st.rho, st.m, kelvin_forcing(self.grid, self.spec, pt, gr))

    def constraints(self, st) -> dict:
        g = self.grid
        return {"mass": float(g.integrate(st.rho)), "entropy": float(g.integrate(st.S))}

    # -- initial data ------------------------------------------------------
    def hydrostatic_state(self, rho0: float = 1.0, S0: float = 0.1) -> ComplexFluidState:
        g, n, d = self.grid, self.spec.dim, self.grid.dim
        z = np.zeros(g.shape)
        return ComplexFluidState(np.zeros((d,) + g.shape), np.zeros((n,) + g.shape),
                                 z + rho0, z + S0, np.zeros((d, n) + g.shape))

    def random_state(self, rng, amplitude: float = 0.1, cutoff: int = 2, field_amplitude: float | None = None,
                     rho0: float = 1.0, S0: float = 0.1) -> ComplexFluidState:
        g, n, d = self.grid, self.spec.dim, self.grid.dim
        fa = amplitude if field_amplitude is None else field_amplitude
        rho = smooth_positive(g, rng, rho0, amplitude, cutoff)
        S = smooth_positive(g, rng, S0, amplitude, cutoff)
        u = g.random_field(rng, (d,), cutoff=cutoff, amplitude=amplitude)
        return ComplexFluidState(rho * u, g.random_field(rng, (n,), cutoff=cutoff, amplitude=amplitude),
                                 rho, S, g.random_field(rng, (d, n), cutoff=cutoff, amplitude=fa))

    def from_mhd(self, ms: MHDState) -> ComplexFluidState:
        z = np.zeros((1,) + self.grid.shape)
        return ComplexFluidState(ms.rho * ms.u, z, ms.rho, ms.S, ms.A[:, None])


def _pressure(closure, rho, S):
    return closure.pressure(rho, S)


def mhd_rhs(grid: F.PeriodicGrid, st: MHDState, closure: PolytropicClosure) -> MHDState:
    """Abelian MHD in velocity form, any dimension, with the field as a two-form ``B = dA``."""
    check_positive("rho", st.rho)
    u, rho, S, A = st.u, st.rho, st.S, st.A
    B = F.d_oneform(grid, A)
    divB = F.div(grid, B)                    # (div B)^j = d_i B^ij
    lorentz = F.interior_2form(divB, B)      # i_{div B} B
    p = _pressure(closure, rho, S)
    u_dot = -advect_covector(grid, u, u) - (F.grad(grid, p) - lorentz) / rho
    return MHDState(u_dot, -F.div(grid, rho * u), -F.div(grid, S * u),
                    -F.grad(grid, np.sum(A * u, axis=0)) - F.interior_2form(u, B))


def mhd_rhs_3d(grid: F.PeriodicGrid, st: MHDState, closure: PolytropicClosure) -> MHDState:
    """Abelian MHD in three dimensions with vector ``B = curl A`` and cross products."""
    if grid.dim != 3:
        raise ValueError("mhd_rhs_3d needs a 3D grid")
    check_positive("rho", st.rho)
    u, rho, S, A = st.u, st.rho, st.S, st.A
    B = F.curl(grid, A)
    p = _pressure(closure, rho, S)
    u_dot = -advect_covector(grid, u, u) - (F.grad(grid, p) + np.cross(B, F.curl(grid, B), axis=0)) / rho
    return MHDState(u_dot, -F.div(grid, rho * u), -F.div(grid, S * u),
                    -F.grad(grid, np.sum(A * u, axis=0)) - np.cross(B, u, axis=0))


def euler_rhs(grid: F.PeriodicGrid, u, rho, S, closure: PolytropicClosure):
    """Compressible adiabatic fluid: ``u_t + grad_u u = -grad p / rho`` plus density transport."""
    check_positive("rho", rho)
    p = _pressure(closure, rho, S)
    return (-advect_covector(grid, u, u) - F.grad(grid, p) / rho,
            -F.div(grid, rho * u), -F.div(grid, S * u))


def momentum_to_velocity_tendency(st: ComplexFluidState, tend: ComplexFluidState) -> np.ndarray:
    """``u_dot = (m_dot - rho_dot u) / rho``."""
    u = st.m / st.rho
    return (tend.m - tend.rho * u) / st.rho
