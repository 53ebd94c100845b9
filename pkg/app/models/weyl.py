from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterator, Tuple

from app.models.rootdata import Weight


class WeylGroup(str, Enum):
    """Which reflection group acts: finite or p-affine, full or parabolic."""

    W = "W"
    W_P = "Wp"
    W_I = "WI"
    W_IP = "WIp"

    @property
    def affine(self) -> bool:
        return self in (WeylGroup.W_P, WeylGroup.W_IP)

    @property
    def parabolic(self) -> bool:
        return self in (WeylGroup.W_I, WeylGroup.W_IP)


@dataclass(frozen=True)
class CosetZI:
    """λ + ZI, stored by its canonical representative."""

    rep: Weight
    I: Tuple[int, ...]


@dataclass(frozen=True)
class CosetpZI:
    """λ + pZI, stored by its canonical representative."""

    rep: Weight
    I: Tuple[int, ...]
    p: int


@dataclass(frozen=True)
class AffineGenerator:
    """s_{α,shift} (reflection) or t_{α,shift} (translation by shift·α)."""

    kind: str
    root: int
    shift: int = 0


@dataclass(frozen=True)
class AffineWord:
    """Generators applied left to right."""

    letters: Tuple[AffineGenerator, ...] = ()

    def then(self, letter: AffineGenerator) -> "AffineWord":
        return AffineWord(self.letters + (letter,))

    def inverse(self) -> "AffineWord":
        inverted = []
        for g in reversed(self.letters):
            if g.kind == "t":
                inverted.append(AffineGenerator("t", g.root, -g.shift))
            else:
                inverted.append(g)
        return AffineWord(tuple(inverted))

    def __len__(self) -> int:
        return len(self.letters)


@dataclass(frozen=True)
class Window:
    """Closed integer box lo <= λ <= hi."""

    lo: Weight
    hi: Weight

    @classmethod
    def cube(cls, a: int, b: int, d: int) -> "Window":
        return cls(lo=(a,) * d, hi=(b,) * d)

    def contains(self, weight: Weight) -> bool:
        return all(l <= x <= h for l, x, h in zip(self.lo, weight, self.hi))

    def points(self) -> Iterator[Weight]:
        return product(*[range(l, h + 1) for l, h in zip(self.lo, self.hi)])

    def size(self) -> int:
        total = 1
        for l, h in zip(self.lo, self.hi):
            total *= max(0, h - l + 1)
        return total
