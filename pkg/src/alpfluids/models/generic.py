"""Affine Lie-Poisson equations for complex fluids on a trivial bundle.

State ``(m, kappa, dens, gamma)``: momentum one-form, o*-valued charge density,
a stack of advected scalar densities and an o-valued connection one-form.
Gradients ``(u, nu, phi, w)`` are the matching functional derivatives.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import fields as F
from ..liealg import LieAlgebraSpec
from .state import FieldState


@dataclass
class AffineFluidPoint(FieldState):
    m: np.ndarray       # (d, *S)
    kappa: np.ndarray   # (n, *S)
    dens: np.ndarray    # (k, *S)
    gamma: np.ndarray   # (d, n, *S)


@dataclass
class AffineFluidGradient(FieldState):
    u: np.ndarray       # (d, *S)
    nu: np.ndarray      # (n, *S)
    phi: np.ndarray     # (k, *S)
    w: np.ndarray       # (d, n, *S)


def ad_star_field(spec: LieAlgebraSpec, nu, kappa) -> np.ndarray:
    """Pointwise ``(ad*_nu kappa)_a = kappa_b C^b_ca nu^c``."""
    return np.einsum("bca,b...,c...->a...", spec.structure_constants, kappa, nu)


def contract_vec(u, gamma) -> np.ndarray:
    """``gamma(u)^a = gamma^a_k u^k``."""
    return np.einsum("k...,ka...->a...", u, gamma)


def density_lp_rhs(grid: F.PeriodicGrid, m, dens, u, phi):
    """Lie-Poisson equations of a fluid carrying scalar densities.

    Returns ``(m_dot, dens_dot)`` for ``m_dot = -L_u m - (div u) m - sum_s dens_s d phi_s``.
    """
    m_dot = -F.lie_derivative_oneform(grid, u, m) - F.div(grid, u) * m
    if len(dens):
        m_dot = m_dot - np.sum(dens[None] * F.grad(grid, phi), axis=1)
    dens_dot = -F.div(grid, u[:, None] * dens[None]) if len(dens) else np.zeros_like(dens)
    return m_dot, dens_dot


def generic_rhs(grid: F.PeriodicGrid, spec: LieAlgebraSpec, pt: AffineFluidPoint,
                gr: AffineFluidGradient) -> AffineFluidPoint:
    """Vector field of the affine Lie-Poisson system, written with intrinsic operators."""
    Fc = F.curvature(grid, spec, pt.gamma)
    m_dot, dens_dot = density_lp_rhs(grid, pt.m, pt.dens, gr.u, gr.phi)
    m_dot = (m_dot - F.kappa_dot_dnu(grid, pt.kappa, gr.nu)
             - F.diamond1(grid, spec, gr.w, pt.gamma, Fc))
    kappa_dot = (-ad_star_field(spec, gr.nu, pt.kappa) - F.div_u_kappa(grid, gr.u, pt.kappa)
                 - F.covariant_div(grid, spec, pt.gamma, gr.w))
    gamma_dot = (-F.covariant_d_function(grid, spec, pt.gamma, contract_vec(gr.u, pt.gamma))
                 - F.interior_2form(gr.u, Fc)
                 - F.covariant_d_function(grid, spec, pt.gamma, gr.nu))
    return AffineFluidPoint(m_dot, kappa_dot, dens_dot, gamma_dot)


def matrix_form_rhs(grid: F.PeriodicGrid, spec: LieAlgebraSpec, pt: AffineFluidPoint,
                    gr: AffineFluidGradient) -> AffineFluidPoint:
    """Same vector field assembled entry by entry from the local-coordinate Hamiltonian operator."""
    d, n = grid.dim, spec.dim
    C = spec.structure_constants

    def P(f, i):
        return F.partial(grid, f, i)

    m, kap, dens, gam = pt.m, pt.kappa, pt.dens, pt.gamma
    u, nu, phi, w = gr.u, gr.nu, gr.phi, gr.w
    m_dot = np.zeros_like(m)
    for i in range(d):
        acc = np.zeros(grid.shape)
        for k in range(d):
            acc += m[k] * P(u[k], i) + P(m[i] * u[k], k)
        for b in range(n):
            acc += kap[b] * P(nu[b], i)
        for s in range(len(dens)):
            acc += dens[s] * P(phi[s], i)
        for j in range(d):
            for b in range(n):
                acc += P(gam[i, b] * w[j, b], j) - P(gam[j, b], i) * w[j, b]
        m_dot[i] = -acc
    kappa_dot = np.zeros_like(kap)
    for a in range(n):
        acc = np.zeros(grid.shape)
        for k in range(d):
            acc += P(kap[a] * u[k], k)
        for j in range(d):
            acc += P(w[j, a], j)
        for b in range(n):
            for c in range(n):
                if C[c, b, a]:
                    acc += C[c, b, a] * kap[c] * nu[b]
                if C[b, c, a]:
                    acc -= C[b, c, a] * sum(gam[j, c] * w[j, b] for j in range(d))
        kappa_dot[a] = -acc
    dens_dot = np.zeros_like(dens)
    for s in range(len(dens)):
        dens_dot[s] = -sum(P(dens[s] * u[k], k) for k in range(d))
    gamma_dot = np.zeros_like(gam)
    for i in range(d):
        for a in range(n):
            acc = P(nu[a], i)
            for k in range(d):
                acc = acc + gam[k, a] * P(u[k], i) + P(gam[i, a], k) * u[k]
            for b in range(n):
                for c in range(n):
                    if C[a, c, b]:
                        acc = acc + C[a, c, b] * gam[i, c] * nu[b]
            gamma_dot[i, a] = -acc
    return AffineFluidPoint(m_dot, kappa_dot, dens_dot, gamma_dot)


def vector_bracket(grid: F.PeriodicGrid, X, Y) -> np.ndarray:
    """Bracket of the right-invariant algebra of vector fields: ``Y . grad X - X . grad Y``."""
    gX, gY = F.grad(grid, X), F.grad(grid, Y)   # g[j, i] = d_j X^i
    return np.einsum("j...,ji...->i...", Y, gX) - np.einsum("j...,ji...->i...", X, gY)


def alp_bracket(grid: F.PeriodicGrid, spec: LieAlgebraSpec, pt: AffineFluidPoint,
                gf: AffineFluidGradient, gg: AffineFluidGradient) -> float:
    """Affine Lie-Poisson bracket of two functionals given by their gradients."""
    def integ(f):
        return float(grid.integrate(f))

    t1 = integ(np.sum(pt.m * vector_bracket(grid, gf.u, gg.u), axis=0))
    dnf, dng = F.grad(grid, gf.nu), F.grad(grid, gg.nu)  # (d, n, *S)
    br = F.pointwise_bracket(spec, gf.nu, gg.nu)
    t2 = integ(np.sum(pt.kappa * (br + contract_vec(gg.u, dnf) - contract_vec(gf.u, dng)), axis=0))
    t3 = 0.0
    if len(pt.dens):
        dpf, dpg = F.grad(grid, gf.phi), F.grad(grid, gg.phi)
        t3 = integ(np.sum(pt.dens * (np.sum(dpf * gg.u[:, None], axis=0)
                                     - np.sum(dpg * gf.u[:, None], axis=0)), axis=0))

    def transport(g):
        return (F.covariant_d_function(grid, spec, pt.gamma, g.nu)
                + F.lie_derivative_oneform(grid, g.u, pt.gamma))

    t4 = integ(np.sum(transport(gf) * gg.w - transport(gg) * gf.w, axis=(0, 1)))
    return t1 + t2 + t3 + t4


def kelvin_forcing(grid: F.PeriodicGrid, spec: LieAlgebraSpec, pt: AffineFluidPoint,
                   gr: AffineFluidGradient) -> np.ndarray:
    """Momentum forcing beyond transport: ``-kappa . d nu - phi <> a - w <>_1 gamma``."""
    out = -F.kappa_dot_dnu(grid, pt.kappa, gr.nu) - F.diamond1(grid, spec, gr.w, pt.gamma)
    if len(pt.dens):
        out = out - np.sum(pt.dens[None] * F.grad(grid, gr.phi), axis=1)
    return out
