"""Independent semidirect-product Lie-Poisson reference.

Everything here is derived from one object: the full structure-constant tensor
of the semidirect algebra ``g x| V``, assembled from the algebra constants and
the representation generators.  Brackets, coadjoint actions and the
Lie-Poisson vector field are then plain linear algebra on that tensor, with no
cocycle and no code shared with ``affine_core``.
"""
from __future__ import annotations

import mpmath
import numpy as np

from .affine_core import RepresentationSpec


class SemidirectReference:
    """Lie-Poisson structure of ``(g x| V)*`` with coordinates ``z = (mu, a)``."""

    def __init__(self, rep: RepresentationSpec):
        C = rep.group_spec.structure_constants
        R = rep.inf_generators  # R[b] v = v e_b
        n, m = C.shape[0], rep.v_dim
        N = n + m
        D = np.zeros((N, N, N))
        D[:n, :n, :n] = C
        for b in range(n):
            # [(0, v), (e_b, 0)] = (0, v e_b);  [(e_b, 0), (0, v)] = -(0, v e_b)
            D[n:, n:, b] = R[b]
            D[n:, b, n:] = -R[b]
        self.D = D
        self.n, self.m = n, m

    def split(self, z):
        return z[:self.n], z[self.n:]

    def bracket(self, X, Y) -> np.ndarray:
        return np.einsum("abc,b,c->a", self.D, X, Y)

    def ad(self, X) -> np.ndarray:
        return np.einsum("abc,b->ac", self.D, X)

    def ad_star(self, X, z) -> np.ndarray:
        """``<ad*_X z, Y> = <z, [X, Y]>``."""
        return self.ad(X).T @ z

    def lp_bracket(self, z, df, dg) -> float:
        return float(z @ self.bracket(df, dg))

    def lp_rhs(self, z, dh) -> np.ndarray:
        """``z' = -ad*_{dh} z`` so that ``f' = {f, h}`` for linear ``f``."""
        return -self.ad_star(dh, z)

    def kks_form(self, z, X, Y) -> float:
        return float(z @ self.bracket(X, Y))

    def coadjoint_exp(self, X, z) -> np.ndarray:
        """``Ad*`` of the group element ``exp(X)``: ``expm(ad_X)^T z``, exponentiated in 40-digit arithmetic."""
        with mpmath.workdps(40):
            E = mpmath.expm(mpmath.matrix(self.ad(X).tolist()))
            E = np.array(E.tolist(), dtype=float)
        return E.T @ z
