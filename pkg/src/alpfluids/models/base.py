"""Shared pieces of the concrete fluid models."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .. import fields as F
from ..liealg import LieAlgebraSpec


@dataclass(frozen=True)
class ModelParams:
    a_ion: float = 1.0
    R_hall: float = 0.5

    def __post_init__(self):
        if self.R_hall == 0:
            raise ValueError("R_hall must be nonzero")
        if self.a_ion == 0:
            raise ValueError("a_ion must be nonzero")


@dataclass(frozen=True)
class CirculationSpec:
    """A one-form whose circulation is conserved along loops moved by ``velocity``."""

    name: str
    velocity: str
    form: Callable


@dataclass(frozen=True)
class KelvinSpec:
    """Data for the circulation balance of ``m / density`` along loops moved by ``velocity``."""

    velocity: str
    density: np.ndarray
    momentum: np.ndarray
    forcing: np.ndarray


# ---------------------------------------------------------------------------
# gauge field helpers
# ---------------------------------------------------------------------------

def lower_k(spec: LieAlgebraSpec, X, axis: int = 2) -> np.ndarray:
    """Apply the inner product along the algebra axis (2 for two-forms, 1 for one-forms)."""
    out = np.tensordot(spec.inner_product, np.moveaxis(X, axis, 0), axes=(1, 0))
    return np.moveaxis(out, 0, axis)


def field_norm2(grid: F.PeriodicGrid, spec: LieAlgebraSpec, Fc) -> np.ndarray:
    """Pointwise ``||F||^2 = sum_{i<j} k(F_ij, F_ij)``."""
    return F.pair_2(grid, Fc, lower_k(spec, Fc))


def ym_field_gradient(grid: F.PeriodicGrid, spec: LieAlgebraSpec, A, Fc=None) -> np.ndarray:
    """Functional derivative of ``1/2 int ||d^A A||^2`` with respect to ``A``: ``-div^A (k F)``."""
    if Fc is None:
        Fc = F.curvature(grid, spec, A)
    return -F.covariant_div(grid, spec, A, lower_k(spec, Fc))


def maxwell_stress(spec: LieAlgebraSpec, Fc) -> np.ndarray:
    """``(B.B)_ij = sum_k k(F_ik, F_jk)``."""
    return np.einsum("ikb...,jkb...->ij...", Fc, lower_k(spec, Fc))


def stress_tendency(grid: F.PeriodicGrid, T) -> np.ndarray:
    """``-Div T`` with ``(Div T)_i = d_j T^j_i`` for ``T`` stored as ``T[j, i]``."""
    return -F.div(grid, T)


def identity_tensor(grid: F.PeriodicGrid, q) -> np.ndarray:
    d = grid.dim
    return np.eye(d).reshape((d, d) + (1,) * grid.dim) * q


def advect_covector(grid: F.PeriodicGrid, u, v) -> np.ndarray:
    """``(grad_u v)_i = u^j d_j v_i`` on the flat box."""
    return np.einsum("j...,ji...->i...", u, F.grad(grid, v))


def smooth_positive(grid: F.PeriodicGrid, rng, base: float, amplitude: float, cutoff: int) -> np.ndarray:
    """``base * exp(amplitude * f)`` with ``f`` band-limited and ``max|f| = 1``."""
    return base * np.exp(grid.random_field(rng, cutoff=cutoff, amplitude=amplitude))
