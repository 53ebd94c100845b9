from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

Weight = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class ChevalleyDatum:
    """Root system with a Chevalley basis and the prime it is read modulo.

    Weights live in X = Z^d; the toral basis h_1..h_d is dual to the
    coordinates, so dλ(h_i) = λ_i mod p. Roots are indexed 0..|R|-1 with
    the positive roots first (ordered by height, then simple coordinates)
    followed by their negatives in the same order. The Lie algebra basis is
    h_1..h_d followed by e_α for every root index.
    """

    kind: str
    label: str
    p: int
    d: int
    cartan: Tuple[Tuple[int, ...], ...]
    simple_roots: Tuple[Weight, ...]
    roots: Tuple[Weight, ...]
    root_coords: Tuple[Tuple[int, ...], ...]
    coroots: Tuple[Weight, ...]
    structure: Dict[Tuple[int, int], Tuple[int, int]]
    max_string: int
    rho: Weight
    convention: str = "iterated-bracket root vectors, e_{-b} = -omega(e_b)"
    root_index: Dict[Weight, int] = field(default_factory=dict)

    @property
    def n_simple(self) -> int:
        return len(self.simple_roots)

    @property
    def n_positive(self) -> int:
        return len(self.roots) // 2

    @property
    def lie_dim(self) -> int:
        return self.d + len(self.roots)

    def positive(self) -> List[int]:
        return list(range(self.n_positive))

    def negative_of(self, r: int) -> int:
        n = self.n_positive
        return r + n if r < n else r - n

    def is_positive(self, r: int) -> bool:
        return r < self.n_positive

    def height(self, r: int) -> int:
        return sum(self.root_coords[r])

    def simple_index(self, i: int) -> int:
        """Root index of the i-th simple root."""
        return self.root_index[self.simple_roots[i]]

    def pairing(self, weight: Weight, r: int) -> int:
        """<λ, α∨> for the root with index r."""
        return sum(int(a) * int(b) for a, b in zip(weight, self.coroots[r]))

    def lie_index(self, r: int) -> int:
        return self.d + r


@dataclass(frozen=True)
class LeviSpec:
    """Simple-root subset I and the root sets derived from it."""

    I: Tuple[int, ...]
    levi_roots: Tuple[int, ...]
    levi_positive: Tuple[int, ...]
    u_plus: Tuple[int, ...]
    u_minus: Tuple[int, ...]

    @property
    def levi_negative(self) -> Tuple[int, ...]:
        pos = set(self.levi_positive)
        return tuple(r for r in self.levi_roots if r not in pos)


@dataclass(frozen=True)
class PChar:
    """p-character values on root vectors (zero on the torus).

    `values[r]` is χ(e_r) in F_p for every root index r.
    """

    values: Tuple[int, ...]
    levi: LeviSpec

    def __call__(self, r: int) -> int:
        return self.values[r]

    def negated(self, p: int) -> "PChar":
        return PChar(values=tuple((-v) % p for v in self.values), levi=self.levi)

    def is_zero(self) -> bool:
        return not any(self.values)


@dataclass(frozen=True, eq=False)
class TauMap:
    """The automorphism τ on the Lie basis (mod p) and on X."""

    I: Tuple[int, ...]
    matrix: np.ndarray
    inverse: np.ndarray
    x_action: Tuple[Tuple[int, ...], ...]
    root_perm: Tuple[int, ...]
    coefficients: Tuple[int, ...]
    inverse_coefficients: Tuple[int, ...]
    reduced_word: Tuple[int, ...]

    def on_weight(self, weight: Weight) -> Weight:
        return tuple(sum(row[j] * int(weight[j]) for j in range(len(weight))) for row in self.x_action)

    def inverse_on_toral(self, d: int) -> np.ndarray:
        """Matrix t with τ^{-1}(h_i) = Σ_j t[j, i] h_j."""
        return self.inverse[:d, :d]

    def on_toral(self, d: int) -> np.ndarray:
        return self.matrix[:d, :d]
