"""Pseudo-spectral calculus on flat periodic boxes.

Array layouts (``S`` = grid shape, ``d`` = spatial dimension, ``n`` = algebra dim):

=====================  =====================
scalar                 ``S``
vector / one-form      ``(d, *S)``
two-form / two-vector  ``(d, d, *S)`` antisymmetric in the first two axes
Lie-valued function    ``(n, *S)``
Lie-valued one-form    ``(d, n, *S)``  (also o*-valued vectors ``w``)
Lie-valued two-form    ``(d, d, n, *S)``
=====================  =====================

The metric is Euclidean, so sharp and flat are the identity on components.
Two-forms pair with two-vectors by ``sum_{i<j}``.  Derivatives are exact for
band-limited fields; odd derivatives drop the Nyquist mode.  Products are
formed pointwise without truncation; dealiasing is left to the caller.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .liealg import LieAlgebraSpec


class FieldShapeError(ValueError):
    pass


@dataclass(frozen=True)
class PeriodicGrid:
    shape: tuple[int, ...]
    lengths: tuple[float, ...] = None
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        shape = tuple(int(s) for s in self.shape)
        if len(shape) not in (2, 3):
            raise FieldShapeError("grid must be 2- or 3-dimensional")
        if any(s < 8 or s % 2 for s in shape):
            raise FieldShapeError(f"grid sizes must be even and >= 8, got {shape}")
        lengths = self.lengths
        if lengths is None:
            lengths = (2 * np.pi,) * len(shape)
        lengths = tuple(float(L) for L in lengths)
        if len(lengths) != len(shape) or any(L <= 0 for L in lengths):
            raise FieldShapeError("lengths must be positive, one per axis")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "lengths", lengths)

    @property
    def dim(self) -> int:
        return len(self.shape)

    @property
    def spacing(self) -> tuple[float, ...]:
        return tuple(L / n for L, n in zip(self.lengths, self.shape))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    @property
    def volume(self) -> float:
        return float(np.prod(self.lengths))

    def coords(self) -> np.ndarray:
        """Grid point coordinates, shape ``(d, *S)``."""
        axes = [np.arange(n) * h for n, h in zip(self.shape, self.spacing)]
        return np.stack(np.meshgrid(*axes, indexing="ij"))

    @property
    def spectral_shape(self) -> tuple[int, ...]:
        return self.shape[:-1] + (self.shape[-1] // 2 + 1,)

    def wavenumbers(self, drop_nyquist: bool = False) -> list[np.ndarray]:
        """Per-axis angular wavenumbers broadcast to the rfft layout."""
        key = ("k", drop_nyquist)
        if key not in self._cache:
            ks = []
            d = self.dim
            for ax, (n, L) in enumerate(zip(self.shape, self.lengths)):
                if ax == d - 1:
                    k = np.fft.rfftfreq(n, d=L / (2 * np.pi * n))
                else:
                    k = np.fft.fftfreq(n, d=L / (2 * np.pi * n))
                if drop_nyquist:
                    k = k.copy()
                    k[n // 2] = 0.0
                shp = [1] * d
                shp[ax] = k.size
                ks.append(k.reshape(shp))
            self._cache[key] = ks
        return self._cache[key]

    def k_squared(self) -> np.ndarray:
        if "k2" not in self._cache:
            self._cache["k2"] = sum(k ** 2 for k in self.wavenumbers(drop_nyquist=True))
        return self._cache["k2"]

    def dealias_mask(self) -> np.ndarray:
        """2/3-rule mask in the rfft layout."""
        if "mask" not in self._cache:
            d = self.dim
            mask = np.ones(self.spectral_shape, dtype=bool)
            for ax, n in enumerate(self.shape):
                idx = np.fft.rfftfreq(n, 1.0 / n) if ax == d - 1 else np.fft.fftfreq(n, 1.0 / n)
                shp = [1] * d
                shp[ax] = idx.size
                mask = mask & (np.abs(idx).reshape(shp) < n / 3.0)
            self._cache["mask"] = mask
        return self._cache["mask"]

    # -- transforms --------------------------------------------------------
    def _axes(self):
        return tuple(range(-self.dim, 0))

    def fft(self, f):
        return np.fft.rfftn(f, axes=self._axes())

    def ifft(self, fh):
        return np.fft.irfftn(fh, s=self.shape, axes=self._axes())

    def check(self, f, lead: int = 0, what: str = "field") -> np.ndarray:
        f = np.asarray(f, dtype=float)
        if f.ndim < self.dim + lead or f.shape[f.ndim - self.dim:] != self.shape:
            raise FieldShapeError(f"{what}: trailing shape {f.shape} does not match grid {self.shape}")
        return f

    def integrate(self, f) -> np.ndarray:
        """Trapezoidal (spectrally exact) quadrature over the box; sums trailing grid axes."""
        return np.sum(f, axis=self._axes()) * self.cell_volume

    def dealias(self, f) -> np.ndarray:
        return self.ifft(self.fft(f) * self.dealias_mask())

    def random_field(self, rng: np.random.Generator, lead=(), cutoff: int = 4, amplitude: float = 1.0) -> np.ndarray:
        """Real band-limited random field with integer mode indices ``|k_i| <= cutoff``."""
        lead = tuple(lead)
        d = self.dim
        fh = np.zeros(lead + self.spectral_shape, dtype=complex)
        mask = np.ones(self.spectral_shape, dtype=bool)
        for ax, n in enumerate(self.shape):
            idx = np.fft.rfftfreq(n, 1.0 / n) if ax == d - 1 else np.fft.fftfreq(n, 1.0 / n)
            shp = [1] * d
            shp[ax] = idx.size
            mask = mask & (np.abs(idx).reshape(shp) <= cutoff)
        noise = rng.standard_normal(fh.shape) + 1j * rng.standard_normal(fh.shape)
        fh[..., mask] = noise[..., mask]
        f = self.ifft(fh)
        scale = np.max(np.abs(f)) if np.any(f) else 1.0
        return amplitude * f / scale


# ---------------------------------------------------------------------------
# derivatives
# ---------------------------------------------------------------------------

def partial(grid: PeriodicGrid, f, axis: int) -> np.ndarray:
    f = grid.check(f)
    k = grid.wavenumbers(drop_nyquist=True)[axis]
    return grid.ifft(1j * k * grid.fft(f))


def grad(grid: PeriodicGrid, f) -> np.ndarray:
    """Exterior derivative of (possibly batched) functions: ``(*lead, *S) -> (d, *lead, *S)``."""
    f = grid.check(f)
    fh = grid.fft(f)
    return np.stack([grid.ifft(1j * k * fh) for k in grid.wavenumbers(drop_nyquist=True)])


spectral_d = grad


def div(grid: PeriodicGrid, u) -> np.ndarray:
    """``sum_i d_i u^i`` for ``u`` of shape ``(d, *lead, *S)``; also the divergence of tensors along their first axis."""
    u = grid.check(u, lead=1)
    if u.shape[0] != grid.dim:
        raise FieldShapeError(f"leading axis must have length {grid.dim}")
    ks = grid.wavenumbers(drop_nyquist=True)
    acc = sum(1j * ks[i] * grid.fft(u[i]) for i in range(grid.dim))
    return grid.ifft(acc)


spectral_div = div


def laplacian(grid: PeriodicGrid, f) -> np.ndarray:
    return grid.ifft(-grid.k_squared() * grid.fft(grid.check(f)))


def d_oneform(grid: PeriodicGrid, alpha) -> np.ndarray:
    """``(d alpha)_{ij} = d_i alpha_j - d_j alpha_i`` for ``alpha`` of shape ``(d, *lead, *S)``."""
    alpha = grid.check(alpha, lead=1)
    g = grad(grid, alpha)  # g[i, j] = d_i alpha_j
    return g - np.swapaxes(g, 0, 1)


def d_twoform(grid: PeriodicGrid, omega) -> np.ndarray:
    """``(d omega)_{ijk} = d_i w_jk + d_j w_ki + d_k w_ij`` (full antisymmetric array)."""
    omega = grid.check(omega, lead=2)
    g = grad(grid, omega)  # g[i, j, k] = d_i w_jk
    return g + np.transpose(g, (1, 2, 0) + tuple(range(3, g.ndim))) + np.transpose(g, (2, 0, 1) + tuple(range(3, g.ndim)))


def curl(grid: PeriodicGrid, u) -> np.ndarray:
    if grid.dim != 3:
        raise FieldShapeError("curl needs a 3D grid")
    g = grad(grid, grid.check(u, lead=1))
    return np.stack([g[1, 2] - g[2, 1], g[2, 0] - g[0, 2], g[0, 1] - g[1, 0]])


def sharp(form):
    return np.array(form, dtype=float, copy=True)


def flat(vec):
    return np.array(vec, dtype=float, copy=True)


def hodge_2_to_vector(F) -> np.ndarray:
    """3D: vector ``B`` with ``F_ij = eps_ijk B_k``."""
    return np.stack([F[1, 2], F[2, 0], F[0, 1]])


def vector_to_2form(B) -> np.ndarray:
    z = np.zeros_like(B[0])
    return np.stack([np.stack([z, B[2], -B[1]]),
                     np.stack([-B[2], z, B[0]]),
                     np.stack([B[1], -B[0], z])])


def interior_2form(u, F) -> np.ndarray:
    """``(i_u F)_j = u^i F_ij``; ``F`` may carry trailing algebra axes."""
    extra = F.ndim - 2 - (u.ndim - 1)
    uu = u.reshape(u.shape[:1] + (1,) * extra + u.shape[1:])
    return np.einsum("i...,ij...->j...", uu, F) if extra == 0 else np.sum(uu[:, None] * F, axis=0)


def pair_2(grid: PeriodicGrid, F, W) -> np.ndarray:
    """Pointwise ``sum_{i<j} F_ij W_ij``, also summing any shared algebra axis."""
    prod = F * W
    return 0.5 * np.sum(prod, axis=tuple(range(prod.ndim - grid.dim)))


# ---------------------------------------------------------------------------
# Lie derivatives and tensor divergences
# ---------------------------------------------------------------------------

def lie_derivative_oneform(grid: PeriodicGrid, u, m) -> np.ndarray:
    """Cartan formula ``L_u m = i_u dm + d(i_u m)``; ``m`` may be Lie-valued ``(d, n, *S)``."""
    u = grid.check(u, lead=1)
    m = grid.check(m, lead=1)
    dm = d_oneform(grid, m)
    um = np.sum(_bcast_vec(u, m) * m, axis=0)
    return interior_2form(u, dm) + grad(grid, um)


def lie_derivative_oneform_coords(grid: PeriodicGrid, u, m) -> np.ndarray:
    """Coordinate form ``u^j d_j m_i + m_j d_i u^j`` (independent route)."""
    gm = grad(grid, m)  # gm[j, i] = d_j m_i
    gu = grad(grid, u)  # gu[i, j] = d_i u^j
    ub = _bcast_vec(u, m)
    out = np.sum(ub[:, None] * gm, axis=0)
    mm = m
    guu = gu.reshape(gu.shape[:2] + (1,) * (m.ndim - u.ndim) + gu.shape[2:])
    out += np.sum(mm[None] * guu, axis=1)
    return out


def _bcast_vec(u, target):
    extra = target.ndim - u.ndim
    return u.reshape(u.shape[:1] + (1,) * extra + u.shape[1:])


def div_u_kappa(grid: PeriodicGrid, u, kappa) -> np.ndarray:
    """``div(u kappa)`` for ``kappa`` of shape ``(n, *S)``."""
    u = grid.check(u, lead=1)
    kappa = grid.check(kappa, lead=1)
    return div(grid, u[:, None] * kappa[None])


def kappa_dot_dnu(grid: PeriodicGrid, kappa, nu) -> np.ndarray:
    """One-form ``kappa . d nu``: ``(kappa . d nu)_i = kappa_a d_i nu^a``."""
    return np.sum(kappa[None] * grad(grid, nu), axis=1)


# ---------------------------------------------------------------------------
# covariant calculus for trivial bundles
# ---------------------------------------------------------------------------

def pointwise_bracket(spec: LieAlgebraSpec, x, y) -> np.ndarray:
    """``[x, y]^a = C^a_bc x^b y^c`` along algebra axis 0 of both arrays."""
    return np.einsum("abc,b...,c...->a...", spec.structure_constants, x, y)


def covariant_d_function(grid: PeriodicGrid, spec: LieAlgebraSpec, gamma, nu) -> np.ndarray:
    """``d^gamma nu (v) = d nu(v) + [gamma(v), nu]``; result ``(d, n, *S)``."""
    gamma = grid.check(gamma, lead=2)
    nu = grid.check(nu, lead=1)
    out = grad(grid, nu)
    if not spec.is_abelian:
        out = out + np.stack([pointwise_bracket(spec, gamma[i], nu) for i in range(grid.dim)])
    return out


def covariant_d_oneform(grid: PeriodicGrid, spec: LieAlgebraSpec, gamma, alpha) -> np.ndarray:
    """``(d^gamma alpha)_ij = d_i alpha_j - d_j alpha_i + [gamma_i, alpha_j] - [gamma_j, alpha_i]``."""
    out = d_oneform(grid, alpha)
    if not spec.is_abelian:
        d = grid.dim
        br = np.stack([np.stack([pointwise_bracket(spec, gamma[i], alpha[j]) for j in range(d)]) for i in range(d)])
        out = out + br - np.swapaxes(br, 0, 1)
    return out


def curvature(grid: PeriodicGrid, spec: LieAlgebraSpec, gamma) -> np.ndarray:
    """``F = d gamma + 1/2 [gamma ^ gamma]``: ``F_ij = d_i g_j - d_j g_i + [g_i, g_j]``."""
    gamma = grid.check(gamma, lead=2)
    out = d_oneform(grid, gamma)
    if not spec.is_abelian:
        d = grid.dim
        out = out + np.stack([np.stack([pointwise_bracket(spec, gamma[i], gamma[j]) for j in range(d)])
                              for i in range(d)])
    return out


def trace_ad_star(spec: LieAlgebraSpec, gamma, w) -> np.ndarray:
    """``Tr(ad*_gamma w)_c = sum_j w^j_b C^b_ac gamma^a_j`` for ``gamma, w`` of shape ``(d, n, *S)``."""
    return np.einsum("bac,ja...,jb...->c...", spec.structure_constants, gamma, w)


def covariant_div(grid: PeriodicGrid, spec: LieAlgebraSpec, gamma, w) -> np.ndarray:
    """Covariant divergence, minus the adjoint of ``d^gamma``.

    ``w`` of shape ``(d, n, *S)`` gives ``div w - Tr(ad*_gamma w)`` of shape
    ``(n, *S)``; a two-vector ``(d, d, n, *S)`` gives ``(div^gamma W)^j_c =
    d_i W^ij_c - C^b_ac gamma^a_i W^ij_b``.
    """
    gamma = grid.check(gamma, lead=2)
    w = np.asarray(w, dtype=float)
    out = div(grid, w)
    if spec.is_abelian:
        return out
    if w.ndim == gamma.ndim:
        return out - trace_ad_star(spec, gamma, w)
    if w.ndim == gamma.ndim + 1:
        return out - np.einsum("bac,ia...,ijb...->jc...", spec.structure_constants, gamma, w)
    raise FieldShapeError("covariant_div expects an o*-valued vector or two-vector")


def diamond1(grid: PeriodicGrid, spec: LieAlgebraSpec, w, gamma, F=None) -> np.ndarray:
    """``w <>_1 gamma = (div^gamma w) . gamma - w . i_ d^gamma gamma``; one-form ``(d, *S)``."""
    if F is None:
        F = curvature(grid, spec, gamma)
    dg = covariant_div(grid, spec, gamma, w)
    return np.sum(dg[None] * gamma, axis=1) - np.einsum("jb...,ijb...->i...", w, F)


def diamond2(spec: LieAlgebraSpec, w, gamma) -> np.ndarray:
    """``w <>_2 gamma = -Tr(ad*_gamma w)``."""
    return -trace_ad_star(spec, gamma, w)


# ---------------------------------------------------------------------------
# off-grid evaluation and loops
# ---------------------------------------------------------------------------

def _full_modes(grid: PeriodicGrid, f):
    f = grid.check(f)
    axes = grid._axes()
    fh = np.fft.fftn(f, axes=axes) / np.prod(grid.shape)
    ks = [np.fft.fftfreq(n, d=L / (2 * np.pi * n)) for n, L in zip(grid.shape, grid.lengths)]
    return fh, ks


def interpolate(grid: PeriodicGrid, f, points) -> np.ndarray:
    """Trigonometric interpolant of ``f`` (shape ``(*lead, *S)``) at ``points`` of shape ``(P, d)``.

    Exact for band-limited fields; the Nyquist mode is evaluated as a cosine.
    """
    fh, ks = _full_modes(grid, f)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    lead = fh.shape[:fh.ndim - grid.dim]
    out = fh.reshape(lead + grid.shape)
    # contract one axis at a time, last axis first
    for ax in reversed(range(grid.dim)):
        phase = np.exp(1j * np.outer(pts[:, ax], ks[ax]))  # (P, n_ax)
        if ax == grid.dim - 1:
            out = np.einsum("...n,pn->...p", out, phase)
        else:
            out = np.einsum("...np,pn->...p", out, phase)
    return out.real


@dataclass
class LoopPolyline:
    """Closed material loop stored as unwrapped points; ``winding`` is the lattice offset ``p_n - p_0``."""

    points: np.ndarray
    winding: np.ndarray = None

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.winding is None:
            self.winding = np.zeros(self.points.shape[1])
        self.winding = np.asarray(self.winding, dtype=float)

    @property
    def n_pts(self) -> int:
        return self.points.shape[0]

    def wrapped(self, grid: PeriodicGrid) -> np.ndarray:
        return np.mod(self.points, np.asarray(grid.lengths))

    def tangents(self) -> np.ndarray:
        """``dc/ds`` at the nodes for ``s`` in ``[0, 2 pi)``, by spectral differentiation."""
        n = self.n_pts
        s = np.arange(n) / n
        per = self.points - np.outer(s, self.winding)
        ph = np.fft.fft(per, axis=0)
        k = np.fft.fftfreq(n, 1.0 / n)
        if n % 2 == 0:
            k[n // 2] = 0.0
        dper = np.fft.ifft(1j * k[:, None] * ph, axis=0).real
        return dper + self.winding / (2 * np.pi)

    @classmethod
    def circle(cls, center, radius, n_pts: int, plane=(0, 1), dim: int = 2) -> "LoopPolyline":
        t = 2 * np.pi * np.arange(n_pts) / n_pts
        pts = np.tile(np.asarray(center, dtype=float), (n_pts, 1))
        pts[:, plane[0]] += radius * np.cos(t)
        pts[:, plane[1]] += radius * np.sin(t)
        return cls(pts)

    @classmethod
    def line(cls, grid: PeriodicGrid, axis: int, offset, n_pts: int) -> "LoopPolyline":
        """Straight loop winding once along ``axis``."""
        L = grid.lengths[axis]
        pts = np.tile(np.asarray(offset, dtype=float), (n_pts, 1))
        pts[:, axis] += L * np.arange(n_pts) / n_pts
        w = np.zeros(grid.dim)
        w[axis] = L
        return cls(pts, w)


class DegenerateLoopError(ValueError):
    pass


MIN_LOOP_POINTS = 16


def loop_integral(grid: PeriodicGrid, loop: LoopPolyline, omega) -> np.ndarray | float:
    """Line integral of a one-form (``(d, *S)``) or Lie-valued one-form (``(d, n, *S)``) around ``loop``."""
    if loop.n_pts < MIN_LOOP_POINTS:
        raise DegenerateLoopError(f"loop needs at least {MIN_LOOP_POINTS} points")
    nxt = np.roll(loop.points, -1, axis=0)
    nxt[-1] += loop.winding
    if np.any(np.linalg.norm(nxt - loop.points, axis=1) == 0.0):
        raise DegenerateLoopError("loop has repeated consecutive points")
    vals = interpolate(grid, omega, loop.points)  # (d, [n,] P)
    tang = loop.tangents().T  # (d, P)
    tang = tang.reshape(tang.shape[:1] + (1,) * (vals.ndim - 2) + tang.shape[1:])
    integrand = np.sum(vals * tang, axis=0)
    res = integrand.sum(axis=-1) * (2 * np.pi / loop.n_pts)
    return float(res) if np.ndim(res) == 0 else res


# ---------------------------------------------------------------------------
# snapshots
# ---------------------------------------------------------------------------

def write_snapshot(path: str | Path, grid: PeriodicGrid, name: str, values, algebra_dim: int = 0,
                   component_order: str = "") -> None:
    """Little-endian float64 raw data plus a JSON sidecar header ``<path>.json``."""
    path = Path(path)
    arr = np.ascontiguousarray(np.asarray(values, dtype="<f8"))
    arr.tofile(path)
    header = {"name": name, "grid_shape": list(grid.shape), "lengths": list(grid.lengths),
              "array_shape": list(arr.shape), "algebra_dim": algebra_dim,
              "component_order": component_order or "C-order, layout per alpfluids.fields",
              "dtype": "<f8"}
    Path(str(path) + ".json").write_text(json.dumps(header, indent=2))


def read_snapshot(path: str | Path):
    path = Path(path)
    header = json.loads(Path(str(path) + ".json").read_text())
    arr = np.fromfile(path, dtype="<f8").reshape(header["array_shape"])
    grid = PeriodicGrid(tuple(header["grid_shape"]), tuple(header["lengths"]))
    return grid, header, arr
