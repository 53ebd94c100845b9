from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np


@dataclass(frozen=True, eq=False)
class BaseAlgebra:
    """Finite-dimensional commutative local F_p-algebra with a structure map π.

    Basis b_0 = 1, b_1, ..., b_{m-1} over F_p. `mult[i, j, k]` is the
    coefficient of b_k in b_i·b_j. `pi[i]` is π(h_i) as a coordinate vector.
    `residue` maps A-coordinates onto the residue field's coordinates and
    `residue_field` is that field (None when A is itself a field).
    """

    p: int
    mult: np.ndarray
    pi: np.ndarray
    label: str
    field_degree: int = 1
    residue: Optional[np.ndarray] = None
    residue_field: Optional["BaseAlgebra"] = None
    descriptor: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    @property
    def rank(self) -> int:
        return self.pi.shape[0]

    @property
    def is_field(self) -> bool:
        return self.residue_field is None

    def unit(self) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[0] = 1
        return e

    def scalar(self, c: int) -> np.ndarray:
        return (self.unit() * int(c)) % self.p

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", a, b, self.mult) % self.p

    def right_mult(self, j: int) -> np.ndarray:
        """Matrix of a ↦ a·b_j on coordinate columns."""
        return self.mult[:, j, :].T % self.p

    def mult_by(self, a: np.ndarray) -> np.ndarray:
        """Matrix of x ↦ x·a."""
        return np.einsum("j,ijk->ki", a, self.mult) % self.p

    def with_pi(self, pi: np.ndarray, label: Optional[str] = None) -> "BaseAlgebra":
        residue_field = self.residue_field
        if residue_field is not None and self.residue is not None:
            residue_field = residue_field.with_pi((pi @ self.residue.T) % self.p)
        return replace(self, pi=np.asarray(pi, dtype=np.int64) % self.p,
                       label=label or self.label, residue_field=residue_field)

    def same_as(self, other: "BaseAlgebra") -> bool:
        return (self.p == other.p and self.mult.shape == other.mult.shape
                and np.array_equal(self.mult, other.mult)
                and np.array_equal(self.pi, other.pi))

    def same_ring(self, other: "BaseAlgebra") -> bool:
        return self.p == other.p and self.mult.shape == other.mult.shape and np.array_equal(self.mult, other.mult)
