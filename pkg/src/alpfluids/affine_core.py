"""Affine Lie-Poisson structures on duals of semidirect products ``g x| V``.

A right representation ``rho`` of ``G`` on ``V`` is given by a matrix-valued
map; its induced algebra action is ``v xi = rho'(xi) v``.  On ``V*`` the dual
representation is ``rho*_g = rho_g^T`` so that ``a xi = -rho'(xi)^T a`` and the
diamond is ``<v <> a, xi> = -<a xi, v> = a . rho'(xi) v``.

A cocycle ``c : G -> V*`` with ``c(fg) = rho*_{g^-1} c(f) + c(g)`` enters
through its derivative ``dc : g -> V*`` (stored as a matrix) and transpose.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .liealg import (Ad_star, GroupElement, LieAlgebraSpec, ad_star, group_exp,
                     lie_bracket, random_group_element, so3, translation_line, u1)

FD_STEP = 1e-5


@dataclass(frozen=True)
class RepresentationSpec:
    group_spec: LieAlgebraSpec
    v_dim: int
    rho: Callable[[GroupElement], np.ndarray]
    inf_generators: np.ndarray  # (dim g, v_dim, v_dim): rho'(e_b)

    def inf_action(self, xi) -> np.ndarray:
        return np.tensordot(np.asarray(xi, dtype=float), self.inf_generators, axes=(0, 0))

    def rho_star(self, g: GroupElement) -> np.ndarray:
        return self.rho(g).T

    def act_v(self, v, xi) -> np.ndarray:
        """``v xi``."""
        return self.inf_action(xi) @ v

    def act_dual(self, a, xi) -> np.ndarray:
        """``a xi = d/dt rho*_{exp(-t xi)} a``."""
        return -self.inf_action(xi).T @ a


@dataclass(frozen=True)
class CocycleSpec:
    c: Callable[[GroupElement], np.ndarray]
    dc_matrix: np.ndarray  # (v_dim, dim g)
    name: str = "cocycle"

    def dc(self, xi) -> np.ndarray:
        return self.dc_matrix @ np.asarray(xi, dtype=float)

    def dcT(self, w) -> np.ndarray:
        return self.dc_matrix.T @ np.asarray(w, dtype=float)


@dataclass(frozen=True)
class SemidirectDualPoint:
    mu: np.ndarray
    a: np.ndarray

    def vec(self) -> np.ndarray:
        return np.concatenate([self.mu, self.a])

    @classmethod
    def from_vec(cls, z, g_dim: int) -> "SemidirectDualPoint":
        z = np.asarray(z, dtype=float)
        return cls(z[:g_dim].copy(), z[g_dim:].copy())


@dataclass(frozen=True)
class FunctionalGradient:
    d_mu: np.ndarray
    d_a: np.ndarray

    def vec(self) -> np.ndarray:
        return np.concatenate([self.d_mu, self.d_a])

    @classmethod
    def from_vec(cls, z, g_dim: int) -> "FunctionalGradient":
        z = np.asarray(z, dtype=float)
        return cls(z[:g_dim].copy(), z[g_dim:].copy())


class AffineSemidirect:
    """``g x| V`` with a representation and a cocycle; hosts all affine LP operations."""

    def __init__(self, rep: RepresentationSpec, cocycle: CocycleSpec | None = None):
        self.rep = rep
        self.spec = rep.group_spec
        if cocycle is None:
            cocycle = zero_cocycle(rep)
        self.cocycle = cocycle

    @property
    def g_dim(self) -> int:
        return self.spec.dim

    @property
    def v_dim(self) -> int:
        return self.rep.v_dim

    def _check(self, *, mu=None, a=None, xi=None, v=None):
        for val, n, label in ((mu, self.g_dim, "g*"), (xi, self.g_dim, "g"),
                              (a, self.v_dim, "V*"), (v, self.v_dim, "V")):
            if val is not None and np.shape(val) != (n,):
                raise ValueError(f"{label} vector must have length {n}, got shape {np.shape(val)}")

    # -- semidirect algebra ------------------------------------------------
    def diamond(self, v, a) -> np.ndarray:
        self._check(v=v, a=a)
        return np.einsum("i,bij,j->b", np.asarray(a, float), self.rep.inf_generators, np.asarray(v, float))

    def bracket(self, xv, yw) -> tuple[np.ndarray, np.ndarray]:
        """``[(xi, v), (eta, w)] = ([xi, eta], v eta - w xi)``."""
        (xi, v), (eta, w) = xv, yw
        self._check(xi=xi, v=v)
        self._check(xi=eta, v=w)
        return (lie_bracket(self.spec, xi, eta),
                self.rep.act_v(v, eta) - self.rep.act_v(w, xi))

    def semidirect_ad_star(self, xv, pt: SemidirectDualPoint) -> SemidirectDualPoint:
        xi, v = xv
        self._check(xi=xi, v=v, mu=pt.mu, a=pt.a)
        return SemidirectDualPoint(ad_star(self.spec, xi, pt.mu) + self.diamond(v, pt.a),
                                   self.rep.act_dual(pt.a, xi))

    def pair(self, pt: SemidirectDualPoint, xv) -> float:
        xi, v = xv
        return float(pt.mu @ xi + pt.a @ v)

    # -- cocycle terms -----------------------------------------------------
    def sigma_form(self, xu, yw) -> float:
        """``Sigma((xi,u),(eta,w)) = <dc(eta), u> - <dc(xi), w>``."""
        (xi, u), (eta, w) = xu, yw
        c = self.cocycle
        return float(c.dc(eta) @ u - c.dc(xi) @ w)

    def alpha_form(self, g_v, tangent) -> float:
        """The one-form on ``S`` attached to the affine term: ``<c(g), u>`` for tangent ``(xi_g, u)``."""
        g, _ = g_v
        _, u = tangent
        return float(self.cocycle.c(g) @ u)

    def d_alpha_identity(self, xu, yw) -> float:
        """``d alpha(e,0)((xi,u),(eta,w)) = <dc(xi), w> - <dc(eta), u>``."""
        (xi, u), (eta, w) = xu, yw
        c = self.cocycle
        return float(c.dc(xi) @ w - c.dc(eta) @ u)

    # -- bracket and equations --------------------------------------------
    def affine_lp_bracket(self, pt: SemidirectDualPoint, gf: FunctionalGradient, gg: FunctionalGradient) -> float:
        self._check(mu=pt.mu, a=pt.a, xi=gf.d_mu, v=gf.d_a)
        self._check(xi=gg.d_mu, v=gg.d_a)
        rep, c = self.rep, self.cocycle
        val = pt.mu @ lie_bracket(self.spec, gf.d_mu, gg.d_mu)
        val += pt.a @ (rep.act_v(gf.d_a, gg.d_mu) - rep.act_v(gg.d_a, gf.d_mu))
        val += c.dc(gf.d_mu) @ gg.d_a - c.dc(gg.d_mu) @ gf.d_a
        return float(val)

    def affine_lp_rhs(self, pt: SemidirectDualPoint, gh: FunctionalGradient) -> SemidirectDualPoint:
        self._check(mu=pt.mu, a=pt.a, xi=gh.d_mu, v=gh.d_a)
        rep, c = self.rep, self.cocycle
        mu_dot = -ad_star(self.spec, gh.d_mu, pt.mu) - self.diamond(gh.d_a, pt.a) + c.dcT(gh.d_a)
        a_dot = -rep.act_dual(pt.a, gh.d_mu) - c.dc(gh.d_mu)
        return SemidirectDualPoint(mu_dot, a_dot)

    # -- group level -------------------------------------------------------
    def theta(self, g: GroupElement, a) -> np.ndarray:
        """Affine action on ``V*``: ``rho*_{g^-1}(a) + c(g)``."""
        return self.rep.rho_star(g.inv()) @ a + self.cocycle.c(g)

    def group_mul(self, s1, s2):
        (g1, v1), (g2, v2) = s1, s2
        return (g1 @ g2, v2 + self.rep.rho(g2) @ v1)

    def semidirect_Ad_star(self, gu, pt: SemidirectDualPoint) -> SemidirectDualPoint:
        g, u = gu
        a_new = self.rep.rho_star(g.inv()) @ pt.a
        return SemidirectDualPoint(Ad_star(g, pt.mu) + self.diamond(u, a_new), a_new)

    def nonequivariance_cocycle(self, f: GroupElement, u) -> SemidirectDualPoint:
        cf = self.cocycle.c(f)
        return SemidirectDualPoint(self.diamond(u, cf) - self.cocycle.dcT(u), cf)

    def affine_orbit_point(self, gu, seed: SemidirectDualPoint) -> SemidirectDualPoint:
        g, u = gu
        b = self.theta(g, seed.a)
        return SemidirectDualPoint(Ad_star(g, seed.mu) + self.diamond(u, b) - self.cocycle.dcT(u), b)

    def momentum_map(self, group_pt, cotangent) -> SemidirectDualPoint:
        """``J(beta_f, (u, a)) = (T*L_f beta + u <> a - dc^T(u), a)``.

        ``cotangent = (beta_body, a)`` with ``beta_body = T*L_f beta`` already
        left-trivialized, so the base point ``f`` only labels the fibre.
        """
        _, u = group_pt
        beta_body, a = cotangent
        return SemidirectDualPoint(np.asarray(beta_body, float) + self.diamond(u, a) - self.cocycle.dcT(u),
                                   np.asarray(a, float).copy())

    def affine_cotangent_action(self, s, z):
        """``Psi_(g,v)`` on left-trivialized ``T*S``: ``((f,u),(beta,a)) -> ((fg, v+rho_g u), (Ad*_g beta, theta_g a))``."""
        g, v = s
        (f, u), (beta, a) = z
        return ((f @ g, v + self.rep.rho(g) @ u), (Ad_star(g, beta), self.theta(g, a)))

    def orbit_tangent(self, pt: SemidirectDualPoint, gen) -> SemidirectDualPoint:
        """Infinitesimal affine orbit vector ``ad*_(xi,u) pt - Sigma((xi,u), .)``."""
        xi, u = gen
        ad = self.semidirect_ad_star(gen, pt)
        c = self.cocycle
        return SemidirectDualPoint(ad.mu - c.dcT(u), ad.a + c.dc(xi))

    def orbit_symplectic_form(self, pt: SemidirectDualPoint, gen1, gen2) -> float:
        """Affine orbit form on the tangent vectors generated by ``gen1``, ``gen2``.

        Value ``<pt, [gen1, gen2]> - Sigma(gen1, gen2)``; this is the sign that
        makes the form depend only on the tangent vectors.
        """
        br = self.bracket(gen1, gen2)
        return self.pair(pt, br) - self.sigma_form(gen1, gen2)

    def advected_evolution(self, g_path, a0) -> np.ndarray:
        """``a(t) = theta_{g(t)^-1}(a0)`` along a sampled group curve."""
        return np.stack([self.theta(g.inv(), a0) for g in g_path])

    # -- verification helpers ---------------------------------------------
    def check_affine_jacobi(self, pt: SemidirectDualPoint, funcs, step: float = FD_STEP) -> float:
        """Cyclic sum ``{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`` at ``pt``.

        ``funcs`` are three callables ``z -> FunctionalGradient`` (analytic
        gradients).  Gradients of the inner brackets are taken by central
        differences with ``step``.
        """
        n = self.g_dim + self.v_dim
        z0 = pt.vec()

        def inner(gf, gg):
            def val(z):
                p = SemidirectDualPoint.from_vec(z, self.g_dim)
                return self.affine_lp_bracket(p, gf(p), gg(p))
            grad = np.zeros(n)
            for i in range(n):
                e = np.zeros(n)
                e[i] = step
                grad[i] = (val(z0 + e) - val(z0 - e)) / (2 * step)
            return FunctionalGradient.from_vec(grad, self.g_dim)

        f, g, h = funcs
        total = 0.0
        for x, y, w in ((f, g, h), (g, h, f), (h, f, g)):
            total += self.affine_lp_bracket(pt, x(pt), inner(y, w))
        return abs(total)

    def jacobi_linear(self, pt: SemidirectDualPoint, gens) -> float:
        """Cyclic sum for the linear functionals ``z -> <z, gen_i>`` (exact, no differences)."""
        def as_grad(gen):
            return FunctionalGradient(np.asarray(gen[0], float), np.asarray(gen[1], float))

        def inner(y, w):
            # {y, w}(z) = <z, [y, w]> - Sigma(y, w): gradient is [y, w]
            return self.bracket(y, w)

        f, g, h = gens
        total = 0.0
        for x, y, w in ((f, g, h), (g, h, f), (h, f, g)):
            total += self.affine_lp_bracket(pt, as_grad(x), as_grad(inner(y, w)))
        return abs(total)

    def check_cocycle(self, n_samples: int = 100, seed: int = 0) -> float:
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(n_samples):
            f = random_group_element(self.spec, rng)
            g = random_group_element(self.spec, rng)
            lhs = self.cocycle.c(f @ g)
            rhs = self.rep.rho_star(g.inv()) @ self.cocycle.c(f) + self.cocycle.c(g)
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        return worst


# ---------------------------------------------------------------------------
# concrete representations and cocycles
# ---------------------------------------------------------------------------

def rotation_rep() -> RepresentationSpec:
    """SO(3) acting on R^3 as a right representation ``rho_g v = g^T v``."""
    spec = so3()
    return RepresentationSpec(spec, 3, lambda g: g.matrix.T.copy(), -spec.rep_generators())


def circle_rep() -> RepresentationSpec:
    """U(1) = SO(2) acting on R^2 by ``rho_g v = g^T v``."""
    spec = u1()
    return RepresentationSpec(spec, 2, lambda g: g.matrix.T.copy(), -spec.rep_generators())


def trivial_rep(spec: LieAlgebraSpec, v_dim: int) -> RepresentationSpec:
    return RepresentationSpec(spec, v_dim, lambda g: np.eye(v_dim), np.zeros((spec.dim, v_dim, v_dim)))


def zero_cocycle(rep: RepresentationSpec) -> CocycleSpec:
    v_dim, g_dim = rep.v_dim, rep.group_spec.dim
    return CocycleSpec(lambda g: np.zeros(v_dim), np.zeros((v_dim, g_dim)), "zero")


def coboundary_cocycle(rep: RepresentationSpec, lam) -> CocycleSpec:
    """``c(g) = rho*_{g^-1}(lam) - lam``; ``dc(xi) = lam xi``."""
    lam = np.asarray(lam, dtype=float)
    dc = np.stack([rep.act_dual(lam, e) for e in np.eye(rep.group_spec.dim)], axis=1)
    return CocycleSpec(lambda g: rep.rho_star(g.inv()) @ lam - lam, dc, "coboundary")


def linear_chart_cocycle(rep: RepresentationSpec, L) -> CocycleSpec:
    """For the translation line acting trivially: ``c(g) = L * t(g)`` with ``t`` the global chart."""
    L = np.asarray(L, dtype=float)
    if not (rep.group_spec.name == "r1" and not np.any(rep.inf_generators)):
        raise ValueError("linear chart cocycles need the trivially acting translation line")
    return CocycleSpec(lambda g: L * g.matrix[0, 1], L.reshape(-1, 1), "linear-chart")


def heavy_top(cocycle_lambda=None) -> AffineSemidirect:
    rep = rotation_rep()
    coc = None if cocycle_lambda is None else coboundary_cocycle(rep, cocycle_lambda)
    return AffineSemidirect(rep, coc)


def circle_system(cocycle_lambda=None) -> AffineSemidirect:
    rep = circle_rep()
    coc = None if cocycle_lambda is None else coboundary_cocycle(rep, cocycle_lambda)
    return AffineSemidirect(rep, coc)


def line_system(L) -> AffineSemidirect:
    rep = trivial_rep(translation_line(), len(L))
    return AffineSemidirect(rep, linear_chart_cocycle(rep, L))


def rk4_path(system: AffineSemidirect, pt: SemidirectDualPoint, grad_h, dt: float, n_steps: int):
    """Integrate the affine LP flow and the reconstruction ``g' = (dh/dmu) g`` together."""
    g = GroupElement.identity(system.spec)
    z = pt.vec()
    gd = system.g_dim
    pts, path = [pt], [g]

    def f(zz):
        p = SemidirectDualPoint.from_vec(zz, gd)
        r = system.affine_lp_rhs(p, grad_h(p))
        return r.vec()

    for _ in range(n_steps):
        k1 = f(z)
        k2 = f(z + 0.5 * dt * k1)
        k3 = f(z + 0.5 * dt * k2)
        k4 = f(z + dt * k3)
        # right-trivialized reconstruction with a midpoint exponential
        xi_mid = grad_h(SemidirectDualPoint.from_vec(z + 0.5 * dt * k2, gd)).d_mu
        g = group_exp(system.spec, dt * xi_mid) @ g
        z = z + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        pts.append(SemidirectDualPoint.from_vec(z, gd))
        path.append(g)
    return pts, path
