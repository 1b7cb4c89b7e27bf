"""Internal energy closures and the implicit normal-velocity solve."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import BijectivityError, ModelDomainError, SolverError

NEWTON_MAX_ITER = 50
NEWTON_TOL = 1e-13
BIJECTIVITY_TOL = 1e-10


def check_positive(name: str, f) -> None:
    if not np.all(np.asarray(f) > 0):
        raise ModelDomainError(f"{name} must be positive everywhere (min {float(np.min(f)):.3e})")


@dataclass(frozen=True)
class PolytropicClosure:
    """``e(rho, S) = K rho^g exp(S / rho)``."""

    K: float = 1.0
    gamma_ad: float = 1.4

    def energy(self, rho, S):
        return self.K * rho ** self.gamma_ad * np.exp(S / rho)

    def chemical_potential(self, rho, S):
        return self.energy(rho, S) * (self.gamma_ad / rho - S / rho ** 2)

    def temperature(self, rho, S):
        return self.energy(rho, S) / rho

    def pressure(self, rho, S):
        return rho * self.chemical_potential(rho, S) + S * self.temperature(rho, S) - self.energy(rho, S)


@dataclass(frozen=True)
class SuperfluidClosure:
    """``e(rho, S, r) = e0(rho, S) + 1/2 sigma rho |r|^2 + 1/4 beta rho |r|^4``.

    ``sigma rho`` is the superfluid density; ``beta = 0`` is the quadratic closure
    for which the normal velocity has a closed form.
    """

    base: PolytropicClosure = PolytropicClosure()
    sigma: float = 0.5
    beta: float = 0.0

    @property
    def is_quadratic(self) -> bool:
        return self.beta == 0.0

    def superfluid_density(self, rho, S):
        return self.sigma * rho

    def _coef(self, rho, r2):
        return self.sigma * rho + self.beta * rho * r2

    def energy(self, rho, S, r):
        r2 = np.sum(r * r, axis=0)
        return self.base.energy(rho, S) + 0.5 * self.sigma * rho * r2 + 0.25 * self.beta * rho * r2 ** 2

    def chemical_potential(self, rho, S, r):
        r2 = np.sum(r * r, axis=0)
        return self.base.chemical_potential(rho, S) + 0.5 * self.sigma * r2 + 0.25 * self.beta * r2 ** 2

    def temperature(self, rho, S, r):
        return self.base.temperature(rho, S)

    def relative_momentum(self, rho, S, r):
        """``p = de/dr``."""
        return self._coef(rho, np.sum(r * r, axis=0)) * r

    def hessian_r(self, rho, S, r):
        """``d^2e/dr^2`` with shape ``(d, d, *S)``."""
        d = r.shape[0]
        eye = np.eye(d).reshape((d, d) + (1,) * (r.ndim - 1))
        return self._coef(rho, np.sum(r * r, axis=0)) * eye + 2 * self.beta * rho * r[:, None] * r[None]

    def pressure(self, rho, S, r):
        return (rho * self.chemical_potential(rho, S, r) + S * self.temperature(rho, S, r)
                - self.energy(rho, S, r))


def _check_bijective(closure: SuperfluidClosure, rho, S, r):
    """The map ``x -> (d^2e/dr^2) x - rho x`` must be invertible at every point."""
    M = closure.hessian_r(rho, S, r) - rho * np.eye(r.shape[0]).reshape((r.shape[0],) * 2 + (1,) * (r.ndim - 1))
    det = np.linalg.det(np.moveaxis(M, (0, 1), (-2, -1)))
    scale = np.max(np.abs(rho)) ** r.shape[0]
    if np.min(np.abs(det)) < BIJECTIVITY_TOL * scale:
        raise BijectivityError("closure bijectivity violated: d2e/dr2 - rho is singular somewhere")
    return M


def vn_closed_form(closure: SuperfluidClosure, m, rho, S, v_s):
    """Quadratic closure: ``v_n = (m - rho_s v_s) / (rho - rho_s)``."""
    if not closure.is_quadratic:
        raise ValueError("closed form exists only for the quadratic closure")
    rho_s = closure.superfluid_density(rho, S)
    gap = rho - rho_s
    if np.min(np.abs(gap)) < BIJECTIVITY_TOL * np.max(np.abs(rho)):
        raise BijectivityError("rho_s - rho vanishes somewhere")
    return (m - rho_s * v_s) / gap


def vn_residual(closure: SuperfluidClosure, m, rho, S, v_s, v_n):
    """``m - rho v_n - de/dr(rho, S, v_s - v_n)``."""
    return m - rho * v_n - closure.relative_momentum(rho, S, v_s - v_n)


def vn_newton(closure: SuperfluidClosure, m, rho, S, v_s, v0=None,
              tol: float = NEWTON_TOL, max_iter: int = NEWTON_MAX_ITER):
    """Pointwise Newton iteration for the implicit normal velocity."""
    check_positive("rho", rho)
    v = m / rho if v0 is None else np.array(v0, dtype=float)
    scale = max(float(np.max(np.abs(m))), 1.0)
    history = []
    for _ in range(max_iter + 1):
        res = vn_residual(closure, m, rho, S, v_s, v)
        err = float(np.max(np.abs(res)))
        history.append(err)
        if err <= tol * scale:
            return v
        if len(history) > max_iter:
            break
        # d(res)/dv = -rho I + d2e/dr2
        J = _check_bijective(closure, rho, S, v_s - v)
        Jm = np.moveaxis(J, (0, 1), (-2, -1))
        rm = np.moveaxis(res, 0, -1)[..., None]
        step = np.linalg.solve(Jm, rm)[..., 0]
        v = v - np.moveaxis(step, -1, 0)
    raise SolverError(f"normal-velocity Newton iteration did not converge in {max_iter} iterations "
                      f"(last residual {history[-1]:.3e})", history)


def solve_vn(closure: SuperfluidClosure, m, rho, S, v_s):
    """Normal velocity from the implicit Legendre condition; closed form when available."""
    check_positive("rho", rho)
    if closure.is_quadratic:
        return vn_closed_form(closure, m, rho, S, v_s)
    return vn_newton(closure, m, rho, S, v_s)
