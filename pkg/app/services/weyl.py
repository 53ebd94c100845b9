"""Weyl groups, dot actions, orbits and coset arithmetic on X/ZI and X/pZI."""
import logging
from collections import deque
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from app.core import lattice, linalg
from app.core.exceptions import InvalidInput, WindowTooSmall
from app.models.rootdata import ChevalleyDatum, Weight
from app.models.weyl import (
    AffineGenerator,
    AffineWord,
    CosetpZI,
    CosetZI,
    WeylGroup,
    Window,
)
from app.services.rootdata import levi_spec

logger = logging.getLogger(__name__)


def _normalize_I(I: Iterable[int]) -> Tuple[int, ...]:
    return tuple(sorted(set(int(i) for i in I)))


@lru_cache(maxsize=256)
def zi_basis(datum: ChevalleyDatum, I: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    rows = [datum.simple_roots[i] for i in I]
    return tuple(tuple(r) for r in lattice.echelon_basis(rows))


@lru_cache(maxsize=256)
def pzi_basis(datum: ChevalleyDatum, I: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    rows = [lattice.scale(datum.p, datum.simple_roots[i]) for i in I]
    return tuple(tuple(r) for r in lattice.echelon_basis(rows))


def reduce_zi(datum: ChevalleyDatum, I: Iterable[int], weight: Sequence[int]) -> Weight:
    return lattice.reduce_vector(weight, [list(r) for r in zi_basis(datum, _normalize_I(I))])


def reduce_pzi(datum: ChevalleyDatum, I: Iterable[int], weight: Sequence[int]) -> Weight:
    return lattice.reduce_vector(weight, [list(r) for r in pzi_basis(datum, _normalize_I(I))])


def coset_zi(datum: ChevalleyDatum, I: Iterable[int], weight: Sequence[int]) -> CosetZI:
    I = _normalize_I(I)
    return CosetZI(rep=reduce_zi(datum, I, weight), I=I)


def reduce_mod_pZI(datum: ChevalleyDatum, I: Iterable[int], weight: Sequence[int]) -> CosetpZI:
    I = _normalize_I(I)
    return CosetpZI(rep=reduce_pzi(datum, I, weight), I=I, p=datum.p)


def d_weight(datum: ChevalleyDatum, weight: Sequence[int]) -> Weight:
    """dλ as its values on h_1..h_d."""
    return tuple(int(x) % datum.p for x in weight)


def split(datum: ChevalleyDatum, coset: CosetpZI) -> Tuple[CosetZI, Weight]:
    """(λ + ZI, dλ) for λ + pZI."""
    return coset_zi(datum, coset.I, coset.rep), d_weight(datum, coset.rep)


def lift(datum: ChevalleyDatum, coset: CosetZI, dlam: Sequence[int]) -> CosetpZI:
    """Inverse of split: the unique λ + pZI inside coset with the given dλ."""
    p = datum.p
    if not coset.I:
        if d_weight(datum, coset.rep) != tuple(int(x) % p for x in dlam):
            raise InvalidInput("dλ is incompatible with the coset")
        return reduce_mod_pZI(datum, coset.I, coset.rep)
    cols = np.array([datum.simple_roots[i] for i in coset.I], dtype=np.int64).T
    target = np.array([int(a) - int(b) for a, b in zip(dlam, coset.rep)], dtype=np.int64)
    sol = linalg.solve(cols % p, target % p, p)
    if sol is None:
        raise InvalidInput("dλ is incompatible with the coset")
    weight = list(coset.rep)
    for n_i, i in zip(sol, coset.I):
        weight = lattice.add(weight, lattice.scale(int(n_i), datum.simple_roots[i]))
    return reduce_mod_pZI(datum, coset.I, weight)


def leq_coset(datum: ChevalleyDatum, a: CosetZI, b: CosetZI) -> bool:
    """a <= b: b - a = Σ m_i α_i + ZI with every m_i >= 0 outside I."""
    diff = lattice.sub(b.rep, a.rep)
    coeffs = lattice.solve_rational(datum.simple_roots, diff)
    if coeffs is None or any(c.denominator != 1 for c in coeffs):
        return False
    return all(c >= 0 for i, c in enumerate(coeffs) if i not in a.I)


def height(datum: ChevalleyDatum, weight: Sequence[int]) -> int:
    """Σ_{α>0} <λ, α∨>; strictly increases along positive roots."""
    return sum(datum.pairing(weight, r) for r in datum.positive())


def coset_height(datum: ChevalleyDatum, I: Iterable[int], weight: Sequence[int]) -> int:
    """Σ <λ, α∨> over positive roots outside R_I; constant on λ + ZI.

    a < b in the coset order forces coset_height(a) < coset_height(b).
    """
    return sum(datum.pairing(weight, r) for r in levi_spec(datum, _normalize_I(I)).u_plus)


# Dot actions.

def _group_I(datum: ChevalleyDatum, group: WeylGroup, I: Iterable[int]) -> Tuple[int, ...]:
    return _normalize_I(I) if group.parabolic else tuple(range(datum.n_simple))


def _group_positive_roots(datum: ChevalleyDatum, group: WeylGroup, I: Iterable[int]) -> Tuple[int, ...]:
    return levi_spec(datum, _group_I(datum, group, I)).levi_positive


def apply_generator(datum: ChevalleyDatum, g: AffineGenerator, nu: Weight) -> Weight:
    """Linear action on ν = λ + ρ."""
    alpha = datum.roots[g.root]
    if g.kind == "t":
        return lattice.add(nu, lattice.scale(g.shift, alpha))
    if g.kind == "s":
        return lattice.sub(nu, lattice.scale(datum.pairing(nu, g.root) - g.shift, alpha))
    raise InvalidInput(f"unknown generator kind '{g.kind}'")


def dot_apply(datum: ChevalleyDatum, word: AffineWord, weight: Sequence[int]) -> Weight:
    """w·λ = w(λ + ρ) - ρ."""
    nu = lattice.add(weight, datum.rho)
    for g in word.letters:
        nu = apply_generator(datum, g, nu)
    return lattice.sub(nu, datum.rho)


def _orbit_generators(datum: ChevalleyDatum, group: WeylGroup, I: Iterable[int]) -> List[AffineGenerator]:
    gens = []
    for i in _group_I(datum, group, I):
        r = datum.simple_index(i)
        gens.append(AffineGenerator("s", r, 0))
        if group.affine:
            gens.append(AffineGenerator("t", r, datum.p))
            gens.append(AffineGenerator("t", r, -datum.p))
    return gens


def dot_orbit(datum: ChevalleyDatum, weight: Sequence[int], group: WeylGroup,
              window: Window, I: Iterable[int] = ()) -> List[Weight]:
    """Orbit points reachable inside the window, sorted."""
    start = tuple(int(x) for x in weight)
    if not window.contains(start):
        raise WindowTooSmall(f"{start} lies outside the window")
    gens = _orbit_generators(datum, group, I)
    seen: Set[Weight] = {start}
    queue = deque([start])
    while queue:
        lam = queue.popleft()
        for g in gens:
            nxt = dot_apply(datum, AffineWord((g,)), lam)
            if nxt not in seen and window.contains(nxt):
                seen.add(nxt)
                queue.append(nxt)
    return sorted(seen)


def reduce_to_chamber(datum: ChevalleyDatum, weight: Sequence[int], group: WeylGroup,
                      I: Iterable[int] = ()) -> Tuple[Weight, AffineWord]:
    """Representative in the closed dominant chamber (finite groups) or closed
    p-alcove (affine groups), and the word carrying λ there."""
    p = datum.p
    positive = _group_positive_roots(datum, group, I)
    nu = lattice.add(weight, datum.rho)
    word = AffineWord()
    while True:
        step = None
        for r in positive:
            value = datum.pairing(nu, r)
            if value < 0:
                step = AffineGenerator("s", r, 0)
                break
            if group.affine and value > p:
                step = AffineGenerator("s", r, p)
                break
        if step is None:
            return lattice.sub(nu, datum.rho), word
        nu = apply_generator(datum, step, nu)
        word = word.then(step)


def fundamental_representative(datum: ChevalleyDatum, weight: Sequence[int], group: WeylGroup,
                               I: Iterable[int] = ()) -> Weight:
    return reduce_to_chamber(datum, weight, group, I)[0]


def same_orbit(datum: ChevalleyDatum, lam: Sequence[int], mu: Sequence[int], group: WeylGroup,
               I: Iterable[int] = (), window: Optional[Window] = None) -> bool:
    if window is not None:
        for weight in (lam, mu):
            if not window.contains(tuple(weight)):
                raise WindowTooSmall(f"{tuple(weight)} lies outside the window")
    return (fundamental_representative(datum, lam, group, I)
            == fundamental_representative(datum, mu, group, I))


def orbit_size(datum: ChevalleyDatum, weight: Sequence[int], I: Iterable[int]) -> int:
    """|W_I · dλ| for the dot action on (Z/p)^d."""
    p = datum.p
    I = _normalize_I(I)
    start = tuple((int(x) + int(r)) % p for x, r in zip(weight, datum.rho))
    seen = {start}
    queue = deque([start])
    while queue:
        nu = queue.popleft()
        for i in I:
            r = datum.simple_index(i)
            c = datum.pairing(nu, r)
            nxt = tuple((x - c * a) % p for x, a in zip(nu, datum.roots[r]))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(seen)


def dot_simple(datum: ChevalleyDatum, I: Iterable[int], i: int, grade: Weight) -> Weight:
    """s_i · λ reduced mod pZI."""
    word = AffineWord((AffineGenerator("s", datum.simple_index(i), 0),))
    return reduce_pzi(datum, I, dot_apply(datum, word, grade))


def grade_path(datum: ChevalleyDatum, I: Iterable[int], lam: Sequence[int],
               mu: Sequence[int]) -> Optional[List[Tuple[Weight, int]]]:
    """Simple reflections joining λ + pZI to μ + pZI inside X/pZI.

    Returns [(g_0, i_0), (g_1, i_1), ...] with g_{t+1} = s_{i_t}·g_t, starting
    at λ, or None when μ is not in W_{I,p}·λ. Translations by pZI are trivial
    on X/pZI, so the W_I dot action on the quotient is all that is needed.
    """
    I = _normalize_I(I)
    start = reduce_pzi(datum, I, lam)
    goal = reduce_pzi(datum, I, mu)
    parent: Dict[Weight, Optional[Tuple[Weight, int]]] = {start: None}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        if g == goal:
            break
        for i in I:
            nxt = dot_simple(datum, I, i, g)
            if nxt not in parent:
                parent[nxt] = (g, i)
                queue.append(nxt)
    if goal not in parent:
        return None
    path: List[Tuple[Weight, int]] = []
    node = goal
    while parent[node] is not None:
        prev, i = parent[node]
        path.append((prev, i))
        node = prev
    path.reverse()
    return path


def orbit_table(datum: ChevalleyDatum, window: Window, group: WeylGroup,
                I: Iterable[int] = ()) -> List[dict]:
    """Rows (weight, orbit_id, representative) for every window point."""
    reps: Dict[Weight, int] = {}
    rows = []
    for weight in window.points():
        rep = fundamental_representative(datum, weight, group, I)
        orbit_id = reps.setdefault(rep, len(reps))
        rows.append({"weight": list(weight), "orbit_id": orbit_id, "representative": list(rep)})
    logger.debug(f"Orbit table: {len(rows)} weights, {len(reps)} orbits")
    return rows
