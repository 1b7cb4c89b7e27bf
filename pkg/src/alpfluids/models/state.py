"""Array-valued dataclass states with vector-space arithmetic."""
from __future__ import annotations

from dataclasses import dataclass, fields, replace

import numpy as np


@dataclass
class FieldState:
    """Base for model states: every dataclass field is an array (or ``None``)."""

    def arrays(self) -> dict[str, np.ndarray]:
        return {f.name: getattr(self, f.name) for f in fields(self) if getattr(self, f.name) is not None}

    def map(self, fn) -> "FieldState":
        return replace(self, **{k: fn(v) for k, v in self.arrays().items()})

    def combine(self, other: "FieldState", fn) -> "FieldState":
        oa = other.arrays()
        return replace(self, **{k: fn(v, oa[k]) for k, v in self.arrays().items()})

    def __add__(self, other):
        return self.combine(other, np.add)

    def __sub__(self, other):
        return self.combine(other, np.subtract)

    def __mul__(self, c: float):
        return self.map(lambda v: c * v)

    __rmul__ = __mul__

    def zeros_like(self) -> "FieldState":
        return self.map(np.zeros_like)

    def copy(self) -> "FieldState":
        return self.map(np.array)

    def max_abs(self) -> float:
        return max(float(np.max(np.abs(v))) for v in self.arrays().values())

    def nonfinite_field(self) -> str | None:
        for k, v in self.arrays().items():
            if not np.all(np.isfinite(v)):
                return k
        return None

    def pair(self, other: "FieldState", grid) -> float:
        """``sum_fields int x . y`` with spectrally exact quadrature."""
        oa = other.arrays()
        total = 0.0
        for k, v in self.arrays().items():
            prod = v * oa[k]
            total += float(grid.integrate(np.sum(prod, axis=tuple(range(prod.ndim - grid.dim)))))
        return total
