from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from app.core import lattice
from app.models.algebra import BaseAlgebra
from app.models.rootdata import ChevalleyDatum, PChar, Weight

Grade = Weight
Subspaces = Dict[Grade, np.ndarray]


class SubalgebraSpec(str, Enum):
    """Generator set acting on a module; U^0 and A always act."""

    U = "U"
    B = "B"
    U0 = "U0"
    UI = "UI"
    PI_PLUS = "PI+"
    PI_MINUS = "PI-"
    BI = "BI"

    def roots(self, datum: ChevalleyDatum, chi: PChar) -> Tuple[int, ...]:
        levi = chi.levi
        if self is SubalgebraSpec.U:
            return tuple(range(len(datum.roots)))
        if self is SubalgebraSpec.B:
            return tuple(datum.positive())
        if self is SubalgebraSpec.U0:
            return ()
        if self is SubalgebraSpec.UI:
            return levi.levi_roots
        if self is SubalgebraSpec.PI_PLUS:
            return tuple(sorted(levi.levi_roots + levi.u_plus))
        if self is SubalgebraSpec.PI_MINUS:
            return tuple(sorted(levi.levi_roots + levi.u_minus))
        return levi.levi_positive


@dataclass(frozen=True, eq=False)
class Ambient:
    """Everything a module needs besides its data: datum, χ, A and the acting subalgebra.

    With `graded_by_x` the grades are weights in X rather than classes in X/pZI.
    """

    datum: ChevalleyDatum
    chi: PChar
    algebra: BaseAlgebra
    spec: SubalgebraSpec
    pzi_basis: Tuple[Tuple[int, ...], ...] = ()
    graded_by_x: bool = False

    @property
    def p(self) -> int:
        return self.datum.p

    @property
    def I(self) -> Tuple[int, ...]:
        return self.chi.levi.I

    @property
    def roots(self) -> Tuple[int, ...]:
        return self.spec.roots(self.datum, self.chi)

    def reduce(self, weight) -> Grade:
        if self.graded_by_x:
            return tuple(int(x) for x in weight)
        return lattice.reduce_vector(weight, [list(r) for r in self.pzi_basis])

    def shift(self, grade: Grade, r: int) -> Grade:
        return self.reduce(lattice.add(grade, self.datum.roots[r]))

    def with_spec(self, spec: SubalgebraSpec) -> "Ambient":
        return replace(self, spec=spec)

    def with_algebra(self, algebra: BaseAlgebra) -> "Ambient":
        return replace(self, algebra=algebra)

    def with_chi(self, chi: PChar) -> "Ambient":
        return replace(self, chi=chi)

    def compatible(self, other: "Ambient") -> bool:
        return (self.datum is other.datum
                and self.chi.values == other.chi.values
                and self.chi.levi.I == other.chi.levi.I
                and self.algebra.same_as(other.algebra)
                and self.spec == other.spec
                and self.graded_by_x == other.graded_by_x)


@dataclass(eq=False)
class GradedModule:
    """Finite-dimensional object of the graded category, over F_p.

    `dims[c]` is dim_{F_p} M_c. `a_ops[c][j]` is the matrix of m ↦ m·b_j on
    M_c. `actions[(r, c)]` maps M_c to M_{c+α_r}; missing entries are zero.
    The torus acts on M_c through A by π(h_i) + c_i, so it is never stored.
    """

    ambient: Ambient
    dims: Dict[Grade, int]
    a_ops: Dict[Grade, List[np.ndarray]]
    actions: Dict[Tuple[int, Grade], np.ndarray]
    name: str = ""
    meta: Dict[str, Any] = field(default_factory=dict)

    @property
    def p(self) -> int:
        return self.ambient.p

    @property
    def grades(self) -> List[Grade]:
        return sorted(c for c, n in self.dims.items() if n > 0)

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    def dim_at(self, grade: Grade) -> int:
        return self.dims.get(grade, 0)

    def action(self, r: int, grade: Grade) -> np.ndarray:
        target = self.ambient.shift(grade, r)
        mat = self.actions.get((r, grade))
        if mat is None:
            return np.zeros((self.dim_at(target), self.dim_at(grade)), dtype=np.int64)
        return mat

    def a_op(self, grade: Grade, element: np.ndarray) -> np.ndarray:
        """Matrix of m ↦ m·a on M_c for a in A."""
        n = self.dim_at(grade)
        out = np.zeros((n, n), dtype=np.int64)
        for j, c in enumerate(element):
            if c:
                out = out + int(c) * self.a_ops[grade][j]
        return out % self.p

    def toral(self, i: int, grade: Grade) -> np.ndarray:
        alg = self.ambient.algebra
        value = (alg.pi[i] + int(grade[i]) * alg.unit()) % self.p
        return self.a_op(grade, value)

    def offsets(self) -> Dict[Grade, int]:
        out, pos = {}, 0
        for c in self.grades:
            out[c] = pos
            pos += self.dims[c]
        return out

    def with_ambient(self, ambient: Ambient, name: Optional[str] = None) -> "GradedModule":
        return GradedModule(ambient=ambient, dims=dict(self.dims), a_ops=self.a_ops,
                            actions=self.actions, name=name or self.name, meta=dict(self.meta))


@dataclass(eq=False)
class Morphism:
    """Grade-preserving map; `maps[c]` has shape (dim N_c, dim M_c)."""

    source: GradedModule
    target: GradedModule
    maps: Dict[Grade, np.ndarray]

    def at(self, grade: Grade) -> np.ndarray:
        mat = self.maps.get(grade)
        if mat is None:
            return np.zeros((self.target.dim_at(grade), self.source.dim_at(grade)), dtype=np.int64)
        return mat

    def flatten(self) -> np.ndarray:
        parts = [self.at(c).ravel() for c in self.source.grades if self.target.dim_at(c)]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def is_zero(self) -> bool:
        return not any(np.any(self.at(c) % self.source.p) for c in self.source.grades)


@dataclass(eq=False)
class Summand:
    module: GradedModule
    inclusion: Morphism
    projection: Morphism


@dataclass
class MultiplicityTable:
    """Entries keyed by (row label, column label); labels are orbit representatives."""

    kind: str
    rows: List[Tuple[int, ...]] = field(default_factory=list)
    columns: List[Tuple[int, ...]] = field(default_factory=list)
    entries: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int] = field(default_factory=dict)

    def get(self, row, column) -> int:
        return self.entries.get((tuple(row), tuple(column)), 0)

    def as_rows(self) -> List[Dict[str, Any]]:
        return [{"kind": self.kind, "row": list(r), "column": list(c), "value": self.get(r, c)}
                for r in self.rows for c in self.columns]


@dataclass(eq=False)
class HeadData:
    """rad M as subspaces of M, the head M/rad M and the projection onto it."""

    radical: Subspaces
    head: GradedModule
    projection: Morphism
    simple: bool
    method: str


@dataclass(eq=False)
class FiltrationChain:
    """0 = M_0 ⊂ M_1 ⊂ ... ⊂ M_r = M with identified sections.

    `steps[i]` is M_{i+1} as subspaces of M; `labels[i]` names the section
    M_{i+1}/M_i and `witnesses[i]` carries the isomorphism onto it.
    """

    module: GradedModule
    steps: List[Subspaces] = field(default_factory=list)
    sections: List[GradedModule] = field(default_factory=list)
    labels: List[Any] = field(default_factory=list)
    witnesses: List[Optional[Morphism]] = field(default_factory=list)
    kind: str = ""

    def __len__(self) -> int:
        return len(self.sections)
