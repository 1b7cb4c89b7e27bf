"""Hall magnetohydrodynamics as two coupled fluid Lie-Poisson systems.

State ``(m, rho, S; n_mom, n)``: ion momentum with mass and entropy densities,
and the electron momentum with the electron charge density.  The magnetic
potential is ``A = R n_mom / n``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import fields as F
from ..errors import ModelDomainError
from .base import (CirculationSpec, KelvinSpec, ModelParams, identity_tensor, maxwell_stress,
                   smooth_positive, stress_tendency)
from .closures import PolytropicClosure, check_positive
from .generic import density_lp_rhs
from .state import FieldState
from ..liealg import u1

CHARGE_TOL = 1e-12


@dataclass
class HallState(FieldState):
    m: np.ndarray
    rho: np.ndarray
    S: np.ndarray
    n_mom: np.ndarray
    n: np.ndarray


def potential_from_electrons(n_mom, n, R: float) -> np.ndarray:
    if np.min(np.abs(n)) <= CHARGE_TOL:
        raise ModelDomainError("electron charge density vanishes somewhere")
    return R * n_mom / n


class HallMHDModel:
    name = "hall"
    state_cls = HallState

    def __init__(self, grid: F.PeriodicGrid, closure: PolytropicClosure | None = None,
                 params: ModelParams | None = None):
        self.grid = grid
        self.closure = closure or PolytropicClosure()
        self.params = params or ModelParams()
        self._k = u1()

    def potential(self, st) -> np.ndarray:
        return potential_from_electrons(st.n_mom, st.n, self.params.R_hall)

    def _fluid_velocity(self, st, A):
        a, R = self.params.a_ion, self.params.R_hall
        check_positive("rho", st.rho)
        return (st.m - a * st.rho * A / R) / st.rho

    def velocity(self, st, selector: str = "u") -> np.ndarray:
        if selector == "u":
            return self._fluid_velocity(st, self.potential(st))
        if selector == "v":
            return self.grads(st).n_mom
        raise ValueError(f"{self.name} has no velocity {selector!r}")

    def hamiltonian(self, st: HallState) -> float:
        g = self.grid
        A = self.potential(st)
        u = self._fluid_velocity(st, A)
        B = F.d_oneform(g, A)
        dens = (0.5 * st.rho * np.sum(u ** 2, axis=0) + self.closure.energy(st.rho, st.S)
                + 0.5 * F.pair_2(g, B, B))
        return float(g.integrate(dens))

    def potential_gradient(self, st, A, u) -> np.ndarray:
        """``dh/dA = -(a rho / R) u + W`` with ``W = -div dA``."""
        a, R = self.params.a_ion, self.params.R_hall
        W = -F.div(self.grid, F.d_oneform(self.grid, A))
        return -(a * st.rho / R) * u + W

    def grads(self, st: HallState) -> HallState:
        a, R = self.params.a_ion, self.params.R_hall
        c = self.closure
        A = self.potential(st)
        u = self._fluid_velocity(st, A)
        v = (R / st.n) * self.potential_gradient(st, A, u)
        return HallState(
            m=u,
            rho=-0.5 * np.sum(u ** 2, axis=0) - (a / R) * np.sum(u * A, axis=0)
            + c.chemical_potential(st.rho, st.S),
            S=c.temperature(st.rho, st.S),
            n_mom=v,
            n=-np.sum(A * v, axis=0) / R)

    def rhs(self, st: HallState) -> HallState:
        gr = self.grads(st)
        m_dot, dens_dot = density_lp_rhs(self.grid, st.m, np.stack([st.rho, st.S]), gr.m,
                                         np.stack([gr.rho, gr.S]))
        nm_dot, n_dot = density_lp_rhs(self.grid, st.n_mom, st.n[None], gr.n_mom, gr.n[None])
        return HallState(m_dot, dens_dot[0], dens_dot[1], nm_dot, n_dot[0])

    def electron_velocity(self, st) -> np.ndarray:
        """``v = u + (R / a rho) (div B)``, valid when ``a rho + n = 0``."""
        a, R = self.params.a_ion, self.params.R_hall
        A = self.potential(st)
        B = F.d_oneform(self.grid, A)
        return self._fluid_velocity(st, A) + (R / (a * st.rho)) * F.div(self.grid, B)

    def potential_rhs(self, st, hall_term: bool = True) -> np.ndarray:
        """Ohm's law ``A_t = -i_u B - (R / a rho) i_{div B} B``."""
        a, R = self.params.a_ion, self.params.R_hall
        A = self.potential(st)
        u = self._fluid_velocity(st, A)
        B = F.d_oneform(self.grid, A)
        out = -F.interior_2form(u, B)
        if hall_term:
            out = out - (R / (a * st.rho)) * F.interior_2form(F.div(self.grid, B), B)
        return out

    def potential_rhs_3d(self, st) -> np.ndarray:
        """``A_t = u x B + (R / a rho) B x curl B`` with vector ``B = curl A``."""
        a, R = self.params.a_ion, self.params.R_hall
        A = self.potential(st)
        u = self._fluid_velocity(st, A)
        B = F.curl(self.grid, A)
        return np.cross(u, B, axis=0) + (R / (a * st.rho)) * np.cross(B, F.curl(self.grid, B), axis=0)

    def potential_tendency(self, st, tend: HallState) -> np.ndarray:
        """Chain rule ``A_t = R (n_mom_t / n - n_mom n_t / n^2)``."""
        R = self.params.R_hall
        return R * (tend.n_mom / st.n - st.n_mom * tend.n / st.n ** 2)

    # -- stress form -------------------------------------------------------
    def stress_tensor(self, st) -> np.ndarray:
        A = self.potential(st)
        u = self._fluid_velocity(st, A)
        B = F.d_oneform(self.grid, A)[:, :, None]
        q = self.closure.pressure(st.rho, st.S) - 0.5 * F.pair_2(self.grid, B, B)
        return (u[:, None] * (st.rho * u)[None] + maxwell_stress(self._k, B)
                + identity_tensor(self.grid, q))

    def stress_momentum_tendency(self, st) -> np.ndarray:
        return stress_tendency(self.grid, self.stress_tensor(st))

    def bracket_momentum_tendency(self, st) -> np.ndarray:
        t = self.rhs(st)
        return t.m + t.n_mom

    # -- diagnostics -------------------------------------------------------
    def circulations(self):
        return [CirculationSpec("A", "v", self.potential)]

    def kelvin(self, st) -> KelvinSpec:
        gr = self.grads(st)
        g = self.grid
        forcing = -st.rho * F.grad(g, gr.rho) - st.S * F.grad(g, gr.S)
        return KelvinSpec("u", st.rho, st.m, forcing)

    def constraints(self, st) -> dict:
        g = self.grid
        return {"mass": float(g.integrate(st.rho)), "entropy": float(g.integrate(st.S)),
                "charge_max": float(np.max(np.abs(self.params.a_ion * st.rho + st.n)))}

    def constraint_tendency(self, st, tend=None) -> np.ndarray:
        tend = tend or self.rhs(st)
        return self.params.a_ion * tend.rho + tend.n

    # -- initial data ------------------------------------------------------
    def from_velocity(self, u, rho, S, A) -> HallState:
        a, R = self.params.a_ion, self.params.R_hall
        n = -a * rho
        return HallState(rho * u + a * rho * A / R, rho, S, n * A / R, n)

    def hydrostatic_state(self, rho0: float = 1.0, S0: float = 0.1) -> HallState:
        g = self.grid
        z = np.zeros((g.dim,) + g.shape)
        return self.from_velocity(z, np.full(g.shape, rho0), np.full(g.shape, S0), z)

    def random_state(self, rng, amplitude: float = 0.1, cutoff: int = 2, field_amplitude: float | None = None,
                     rho0: float = 1.0, S0: float = 0.1) -> HallState:
        g = self.grid
        fa = amplitude if field_amplitude is None else field_amplitude
        rho = smooth_positive(g, rng, rho0, amplitude, cutoff)
        S = smooth_positive(g, rng, S0, amplitude, cutoff)
        u = g.random_field(rng, (g.dim,), cutoff=cutoff, amplitude=amplitude)
        A = g.random_field(rng, (g.dim,), cutoff=cutoff, amplitude=fa)
        return self.from_velocity(u, rho, S, A)
