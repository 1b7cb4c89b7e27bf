"""Finite-dimensional Lie algebras given by structure constants.

Conventions
-----------
Structure constants are stored as ``C[a, b, c]`` with
``[e_b, e_c] = C[a, b, c] e_a``.  Algebra vectors and dual vectors are plain
coordinate arrays; the dual pairing is the Euclidean dot product of
coordinates.  Group elements carry a matrix in a faithful representation
whose generators ``E_a`` satisfy ``[E_b, E_c] = C[a, b, c] E_a``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.linalg import expm

VALIDATION_TOL = 1e-12


@dataclass(frozen=True)
class LieAlgebraSpec:
    """Lie algebra data: structure constants plus an Ad-invariant inner product."""

    name: str
    dim: int
    structure_constants: np.ndarray
    inner_product: np.ndarray
    generators: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        C = np.asarray(self.structure_constants, dtype=float)
        k = np.asarray(self.inner_product, dtype=float)
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if C.shape != (self.dim,) * 3:
            raise ValueError(f"structure constants must have shape {(self.dim,) * 3}, got {C.shape}")
        if k.shape != (self.dim, self.dim):
            raise ValueError(f"inner product must have shape {(self.dim, self.dim)}, got {k.shape}")
        object.__setattr__(self, "structure_constants", C)
        object.__setattr__(self, "inner_product", k)
        if self.generators is not None:
            gens = np.asarray(self.generators, dtype=float)
            if gens.ndim != 3 or gens.shape[0] != self.dim or gens.shape[1] != gens.shape[2]:
                raise ValueError("generators must have shape (dim, n, n)")
            object.__setattr__(self, "generators", gens)

    @property
    def is_abelian(self) -> bool:
        return not np.any(self.structure_constants)

    def rep_generators(self) -> np.ndarray:
        """Matrices ``E_a`` of the faithful representation used for group elements."""
        if self.generators is not None:
            return self.generators
        # adjoint representation: (ad_{e_b})^a_c = C[a, b, c]
        return np.transpose(self.structure_constants, (1, 0, 2)).copy()

    def hat(self, xi) -> np.ndarray:
        xi = _check_vec(self, xi)
        return np.tensordot(xi, self.rep_generators(), axes=(0, 0))

    def vee(self, X) -> np.ndarray:
        gens = self.rep_generators().reshape(self.dim, -1)
        coeffs, *_ = np.linalg.lstsq(gens.T, np.asarray(X).reshape(-1).real, rcond=None)
        return coeffs


@dataclass(frozen=True)
class GroupElement:
    matrix: np.ndarray
    spec: LieAlgebraSpec

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.matrix @ other.matrix, self.spec)

    def inv(self) -> "GroupElement":
        return GroupElement(np.linalg.inv(self.matrix), self.spec)

    @classmethod
    def identity(cls, spec: LieAlgebraSpec) -> "GroupElement":
        n = spec.rep_generators().shape[1]
        return cls(np.eye(n), spec)


def _check_vec(spec: LieAlgebraSpec, v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (spec.dim,):
        raise ValueError(f"expected vector of length {spec.dim} for {spec.name}, got shape {v.shape}")
    return v


# ---------------------------------------------------------------------------
# shipped algebras
# ---------------------------------------------------------------------------

def u1() -> LieAlgebraSpec:
    """u(1) ~ so(2), represented by 2x2 rotation generators."""
    gen = np.array([[[0.0, -1.0], [1.0, 0.0]]])
    return LieAlgebraSpec("u1", 1, np.zeros((1, 1, 1)), np.eye(1), gen)


def so3() -> LieAlgebraSpec:
    eps = levi_civita()
    # (L_a)_{ij} = -eps_{aij} gives [L_a, L_b] = eps_{abc} L_c
    return LieAlgebraSpec("so3", 3, eps.copy(), np.eye(3), -eps)


def translation_line() -> LieAlgebraSpec:
    """The additive group (R, +) as unipotent 2x2 matrices; abelian with a global chart."""
    gen = np.array([[[0.0, 1.0], [0.0, 0.0]]])
    return LieAlgebraSpec("r1", 1, np.zeros((1, 1, 1)), np.eye(1), gen)


def levi_civita() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[a, b, c] = 1.0
        eps[a, c, b] = -1.0
    return eps


def direct_sum(s1: LieAlgebraSpec, s2: LieAlgebraSpec) -> LieAlgebraSpec:
    """Direct sum of two algebras; block-diagonal constants, inner product and generators."""
    n1, n2 = s1.dim, s2.dim
    n = n1 + n2
    C = np.zeros((n, n, n))
    C[:n1, :n1, :n1] = s1.structure_constants
    C[n1:, n1:, n1:] = s2.structure_constants
    k = np.zeros((n, n))
    k[:n1, :n1] = s1.inner_product
    k[n1:, n1:] = s2.inner_product
    g1, g2 = s1.rep_generators(), s2.rep_generators()
    m1, m2 = g1.shape[1], g2.shape[1]
    gens = np.zeros((n, m1 + m2, m1 + m2))
    gens[:n1, :m1, :m1] = g1
    gens[n1:, m1:, m1:] = g2
    return LieAlgebraSpec(f"{s1.name}+{s2.name}", n, C, k, gens)


SHIPPED = {"u1": u1, "so3": so3, "su2": so3, "r1": translation_line}


def get_spec(name: str) -> LieAlgebraSpec:
    if "+" in name:
        left, right = name.split("+", 1)
        return direct_sum(get_spec(left), get_spec(right))
    try:
        return SHIPPED[name]()
    except KeyError:
        raise ValueError(f"unknown algebra {name!r}; shipped: {sorted(SHIPPED)}") from None


def load_spec(path: str | Path) -> LieAlgebraSpec:
    """Read an algebra from a JSON document.

    Keys: ``name``, ``dim``, ``constants`` (list of ``[a, b, c, value]`` with
    ``[e_b, e_c] = value * e_a``; only the listed entries are set),
    ``inner_product`` (dim x dim), optional ``generators``.
    """
    doc = json.loads(Path(path).read_text())
    dim = int(doc["dim"])
    C = np.zeros((dim, dim, dim))
    for a, b, c, value in doc.get("constants", []):
        C[int(a), int(b), int(c)] = float(value)
    k = np.asarray(doc.get("inner_product", np.eye(dim).tolist()), dtype=float)
    gens = doc.get("generators")
    return LieAlgebraSpec(doc["name"], dim, C, k, None if gens is None else np.asarray(gens, dtype=float))


def dump_spec(spec: LieAlgebraSpec, path: str | Path) -> None:
    C = spec.structure_constants
    quads = [[int(a), int(b), int(c), float(C[a, b, c])] for a, b, c in zip(*np.nonzero(C))]
    doc = {"name": spec.name, "dim": spec.dim, "constants": quads,
           "inner_product": spec.inner_product.tolist()}
    if spec.generators is not None:
        doc["generators"] = spec.generators.tolist()
    Path(path).write_text(json.dumps(doc, indent=2))


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def lie_bracket(spec: LieAlgebraSpec, xi, eta) -> np.ndarray:
    xi, eta = _check_vec(spec, xi), _check_vec(spec, eta)
    return np.einsum("abc,b,c->a", spec.structure_constants, xi, eta)


def ad_matrix(spec: LieAlgebraSpec, xi) -> np.ndarray:
    """Matrix of ``eta -> [xi, eta]``."""
    xi = _check_vec(spec, xi)
    return np.einsum("abc,b->ac", spec.structure_constants, xi)


def ad_star(spec: LieAlgebraSpec, xi, mu) -> np.ndarray:
    """``ad*_xi mu``, defined by ``<ad*_xi mu, eta> = <mu, [xi, eta]>``."""
    mu = _check_vec(spec, mu)
    return ad_matrix(spec, xi).T @ mu


def _skew_expm(K: np.ndarray) -> np.ndarray:
    """Exponential of a real skew matrix from the eigenbasis of the Hermitian ``iK``.

    Unlike scaling and squaring, the rounding error does not grow with ``||K||``.
    """
    w, Q = np.linalg.eigh(1j * K)
    return ((Q * np.exp(-1j * w)) @ Q.conj().T).real


def group_exp(spec: LieAlgebraSpec, xi) -> GroupElement:
    K = spec.hat(xi)
    if np.array_equal(K, -K.T):
        return GroupElement(_skew_expm(K), spec)
    return GroupElement(expm(K), spec)


def Ad_matrix(g: GroupElement) -> np.ndarray:
    """Matrix of ``xi -> g xi g^{-1}`` in algebra coordinates."""
    spec = g.spec
    ginv = np.linalg.inv(g.matrix)
    gens = spec.rep_generators()
    cols = [spec.vee(g.matrix @ E @ ginv) for E in gens]
    return np.stack(cols, axis=1)


def Ad(g: GroupElement, xi) -> np.ndarray:
    return Ad_matrix(g) @ _check_vec(g.spec, xi)


def Ad_star(g: GroupElement, mu) -> np.ndarray:
    """Dual of ``Ad_g``: ``<Ad*_g mu, eta> = <mu, Ad_g eta>``."""
    return Ad_matrix(g).T @ _check_vec(g.spec, mu)


def random_group_element(spec: LieAlgebraSpec, rng: np.random.Generator, scale: float = 1.0) -> GroupElement:
    return group_exp(spec, scale * rng.standard_normal(spec.dim))


@dataclass
class SpecReport:
    name: str
    antisymmetry: float
    jacobi: float
    k_invariance: float
    k_symmetric_pd: bool
    tol: float = VALIDATION_TOL

    @property
    def passed(self) -> bool:
        return (self.k_symmetric_pd and self.antisymmetry <= self.tol
                and self.jacobi <= self.tol and self.k_invariance <= self.tol)

    def lines(self) -> list[str]:
        return [f"{self.name}.antisymmetry: {self.antisymmetry:.3e}",
                f"{self.name}.jacobi: {self.jacobi:.3e}",
                f"{self.name}.k_invariance: {self.k_invariance:.3e}"]


def jacobi_tensor(C: np.ndarray) -> np.ndarray:
    """``J[a,b,c,d] = C^e_{bc}C^a_{ed} + C^e_{cd}C^a_{eb} + C^e_{db}C^a_{ec}``."""
    return (np.einsum("ebc,aed->abcd", C, C)
            + np.einsum("ecd,aeb->abcd", C, C)
            + np.einsum("edb,aec->abcd", C, C))


def validate_spec(spec: LieAlgebraSpec) -> SpecReport:
    C, k = spec.structure_constants, spec.inner_product
    antisym = float(np.max(np.abs(C + np.transpose(C, (0, 2, 1)))))
    jac = float(np.max(np.abs(jacobi_tensor(C))))
    # k([e_a, e_b], e_c) + k(e_b, [e_a, e_c])
    kinv = np.einsum("dab,dc->abc", C, k) + np.einsum("bd,dac->abc", k, C)
    k_ok = bool(np.allclose(k, k.T) and np.all(np.linalg.eigvalsh(0.5 * (k + k.T)) > 0))
    return SpecReport(spec.name, antisym, jac, float(np.max(np.abs(kinv))), k_ok)
