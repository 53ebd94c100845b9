"""Root data, Chevalley bases, standard Levi p-characters and the automorphism τ."""
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

import galois
import numpy as np

from app.core import linalg
from app.core.exceptions import (
    BadPrime,
    InvalidInput,
    NoIntegralRho,
    TauConstructionFailed,
    UnsupportedType,
)
from app.core.lattice import solve_rational
from app.models.rootdata import ChevalleyDatum, LeviSpec, PChar, TauMap, Weight

logger = logging.getLogger(__name__)

MAX_RANK = 4
MAX_GL = 4


# Cartan matrices, A[i][j] = <α_j, α_i∨>.

def cartan_matrix(letter: str, rank: int) -> Tuple[Tuple[int, ...], ...]:
    letter = letter.upper()
    if letter == "G":
        if rank != 2:
            raise UnsupportedType(f"G{rank} is not a finite type")
        return ((2, -3), (-1, 2))
    if rank < 1 or rank > MAX_RANK:
        raise UnsupportedType(f"rank {rank} outside 1..{MAX_RANK}")
    a = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        a[i][i] = 2
    for i in range(rank - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    if letter == "A":
        pass
    elif letter == "B" and rank >= 2:
        a[rank - 1][rank - 2] = -2
    elif letter == "C" and rank >= 2:
        a[rank - 2][rank - 1] = -2
    elif letter == "D" and rank >= 4:
        a[rank - 2][rank - 1] = a[rank - 1][rank - 2] = 0
        a[rank - 3][rank - 1] = a[rank - 1][rank - 3] = -1
    else:
        raise UnsupportedType(f"{letter}{rank} is not supported")
    return tuple(tuple(r) for r in a)


def parse_type(name: str) -> Tuple[str, int]:
    name = name.strip().upper()
    if len(name) < 2 or not name[1:].isdigit():
        raise UnsupportedType(f"cannot parse Cartan type '{name}'")
    return name[0], int(name[1:])


def classify_cartan(matrix: Sequence[Sequence[int]]) -> Tuple[str, int]:
    rank = len(matrix)
    given = tuple(tuple(int(x) for x in row) for row in matrix)
    for letter in ("A", "B", "C", "D", "G"):
        try:
            if cartan_matrix(letter, rank) == given:
                return letter, rank
        except UnsupportedType:
            continue
    raise UnsupportedType("Cartan matrix is not of a supported finite type")


# Faithful integer realizations of the Chevalley generators.

def _unit(n: int, i: int, j: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=object)
    m[i, j] = 1
    return m


def _sl_generators(n: int) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """Type A_n inside sl_{n+1}."""
    size = n + 1
    es = [_unit(size, i, i + 1) for i in range(n)]
    fs = [_unit(size, i + 1, i) for i in range(n)]
    return es, fs


def _so_generators(m: int) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """Type D_m inside so_{2m}, coordinates ordered 1..m, -m..-1."""
    size = 2 * m

    def pos(k: int) -> int:
        return k - 1 if k > 0 else size + k

    es, fs = [], []
    for i in range(1, m):
        e = _unit(size, pos(i), pos(i + 1)) - _unit(size, pos(-(i + 1)), pos(-i))
        es.append(e)
        fs.append(e.T.copy())
    e = _unit(size, pos(m - 1), pos(-m)) - _unit(size, pos(m), pos(-(m - 1)))
    es.append(e)
    fs.append(e.T.copy())
    return es, fs


def _fold(gens: Tuple[List[np.ndarray], List[np.ndarray]], orbits: List[List[int]]):
    es, fs = gens
    return ([sum(es[i] for i in orbit) for orbit in orbits],
            [sum(fs[i] for i in orbit) for orbit in orbits])


def _generators(letter: str, rank: int):
    if letter == "A":
        return _sl_generators(rank)
    if letter == "D":
        return _so_generators(rank)
    if letter == "B":
        orbits = [[i] for i in range(rank - 1)] + [[rank - 1, rank]]
        return _fold(_so_generators(rank + 1), orbits)
    if letter == "C":
        n = 2 * rank - 1
        orbits = [[i, n - 1 - i] for i in range(rank - 1)] + [[rank - 1]]
        return _fold(_sl_generators(n), orbits)
    if letter == "G":
        return _fold(_so_generators(4), [[0, 2, 3], [1]])
    raise UnsupportedType(f"{letter}{rank} is not supported")


def _bracket_matrices(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a.dot(b) - b.dot(a)


def _ratio(target: np.ndarray, value: np.ndarray) -> Fraction:
    """Scalar c with value == c * target; raises if none exists."""
    flat_t = target.ravel()
    flat_v = value.ravel()
    idx = next(i for i, x in enumerate(flat_t) if x != 0)
    c = Fraction(flat_v[idx]) / Fraction(flat_t[idx])
    if any(Fraction(v) != c * Fraction(t) for v, t in zip(flat_v, flat_t)):
        raise UnsupportedType("structure constant extraction failed")
    return c


# Root systems.

def _positive_roots(cartan: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """Positive roots in simple-root coordinates, by root strings."""
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                r = 0
                while True:
                    lower = tuple(c - (r + 1) * (1 if j == i else 0) for j, c in enumerate(beta))
                    if lower in roots:
                        r += 1
                    else:
                        break
                pairing = sum(cartan[i][j] * beta[j] for j in range(n))
                if r - pairing > 0:
                    up = tuple(c + (1 if j == i else 0) for j, c in enumerate(beta))
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(roots, key=lambda c: (sum(c), tuple(-x for x in c)))


def _string_down(beta, i, root_set) -> int:
    r = 0
    while True:
        lower = tuple(c - (r + 1) * (1 if j == i else 0) for j, c in enumerate(beta))
        if lower in root_set:
            r += 1
        else:
            return r


def _max_string_length(root_vectors: List[Weight]) -> int:
    root_set = set(root_vectors)
    best = 1
    for a in root_vectors:
        for b in root_vectors:
            if b == a or b == tuple(-x for x in a):
                continue
            length = 1
            k = 1
            while tuple(x - k * y for x, y in zip(b, a)) in root_set:
                length += 1
                k += 1
            k = 1
            while tuple(x + k * y for x, y in zip(b, a)) in root_set:
                length += 1
                k += 1
            best = max(best, length)
    return best


def _check_prime(p: int) -> None:
    if p < 2 or not galois.is_prime(p):
        raise BadPrime(f"{p} is not prime")
    if p == 2:
        raise BadPrime("p = 2 is excluded")


def build_gl(n: int, p: int) -> ChevalleyDatum:
    """gl_n with matrix-unit root vectors."""
    if n < 2 or n > MAX_GL:
        raise UnsupportedType(f"gl_{n} outside 2..{MAX_GL}")
    _check_prime(p)
    pairs_pos = [(a, b) for a in range(n) for b in range(n) if a < b]
    pairs_pos.sort(key=lambda ab: (ab[1] - ab[0], ab[0]))
    pairs = pairs_pos + [(b, a) for a, b in pairs_pos]

    def vec(a: int, b: int) -> Weight:
        v = [0] * n
        v[a] += 1
        v[b] -= 1
        return tuple(v)

    roots = tuple(vec(a, b) for a, b in pairs)
    index = {r: k for k, r in enumerate(roots)}
    root_coords = []
    for a, b in pairs:
        lo, hi = min(a, b), max(a, b)
        sign = 1 if a < b else -1
        root_coords.append(tuple(sign if lo <= i < hi else 0 for i in range(n - 1)))
    structure: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for i, (a, b) in enumerate(pairs):
        for j, (c, d) in enumerate(pairs):
            if b == c and a != d:
                structure[(i, j)] = (index[vec(a, d)], 1)
            elif d == a and c != b:
                structure[(i, j)] = (index[vec(c, b)], -1)
    simple = tuple(vec(i, i + 1) for i in range(n - 1))
    cartan = tuple(tuple(sum(x * y for x, y in zip(simple[j], simple[i])) for j in range(n - 1))
                   for i in range(n - 1))
    datum = ChevalleyDatum(
        kind="gl",
        label=f"gl{n}",
        p=p,
        d=n,
        cartan=cartan,
        simple_roots=simple,
        roots=roots,
        root_coords=tuple(root_coords),
        coroots=roots,
        structure=structure,
        max_string=_max_string_length(list(roots)),
        rho=tuple(range(n - 1, -1, -1)),
        convention="matrix units E_ab",
        root_index=index,
    )
    verify_datum(datum)
    logger.debug(f"Built {datum.label} over F_{p}: {datum.n_positive} positive roots")
    return datum


def build_from_cartan(cartan_matrix_rows: Sequence[Sequence[int]], p: int) -> ChevalleyDatum:
    """Simple Lie algebra from a finite-type Cartan matrix of rank at most 4."""
    rank = len(cartan_matrix_rows)
    if rank > MAX_RANK:
        raise UnsupportedType(f"rank {rank} exceeds {MAX_RANK}")
    letter, rank = classify_cartan(cartan_matrix_rows)
    _check_prime(p)
    cartan = cartan_matrix(letter, rank)
    coords = _positive_roots(cartan)
    root_set = set(coords)

    x_of = lambda c: tuple(sum(cartan[i][j] * c[j] for j in range(rank)) for i in range(rank))
    pos_x = [x_of(c) for c in coords]
    all_x = pos_x + [tuple(-v for v in r) for r in pos_x]
    max_string = _max_string_length(all_x)
    if letter == "A" and (rank + 1) % p == 0:
        raise BadPrime(f"p = {p} divides {rank + 1} for type A{rank}")
    if p <= max_string or (letter == "G" and p <= 3):
        raise BadPrime(f"p = {p} is too small for {letter}{rank} (root strings of length {max_string})")

    es, fs = _generators(letter, rank)
    hs = [_bracket_matrices(e, f) for e, f in zip(es, fs)]
    for i in range(rank):
        for j in range(rank):
            got = _ratio(es[j], _bracket_matrices(hs[i], es[j]))
            if got != cartan[i][j]:
                raise UnsupportedType(f"realization of {letter}{rank} does not match its Cartan matrix")

    n_pos = len(coords)
    index_c = {c: k for k, c in enumerate(coords)}
    pos_mats: List[np.ndarray] = []
    neg_mats: List[np.ndarray] = []
    for c in coords:
        if sum(c) == 1:
            i = c.index(1)
            pos_mats.append(es[i])
            neg_mats.append(fs[i])
            continue
        i = next(i for i in range(rank)
                 if c[i] > 0 and tuple(x - (1 if j == i else 0) for j, x in enumerate(c)) in root_set)
        prev = tuple(x - (1 if j == i else 0) for j, x in enumerate(c))
        r = _string_down(prev, i, root_set)
        k = index_c[prev]
        pos_mats.append(_bracket_matrices(es[i], pos_mats[k]) * Fraction(1, r + 1))
        neg_mats.append(_bracket_matrices(fs[i], neg_mats[k]) * Fraction(-1, r + 1))
    mats = pos_mats + neg_mats

    roots = tuple(all_x)
    index = {r: k for k, r in enumerate(roots)}
    structure: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for a in range(2 * n_pos):
        for b in range(2 * n_pos):
            s = tuple(x + y for x, y in zip(roots[a], roots[b]))
            if s in index:
                n_ab = _ratio(mats[index[s]], _bracket_matrices(mats[a], mats[b]))
                if n_ab.denominator != 1:
                    raise UnsupportedType("non-integral structure constant")
                structure[(a, b)] = (index[s], int(n_ab))

    h_flat = [[Fraction(x) for x in h.ravel()] for h in hs]
    coroots = []
    for a in range(2 * n_pos):
        h_alpha = _bracket_matrices(mats[a], mats[(a + n_pos) % (2 * n_pos)])
        sol = solve_rational(h_flat, [Fraction(x) for x in h_alpha.ravel()])
        if sol is None or any(x.denominator != 1 for x in sol):
            raise UnsupportedType("coroot extraction failed")
        coroots.append(tuple(int(x) for x in sol))
    neg_coords = [tuple(-x for x in c) for c in coords]
    datum = ChevalleyDatum(
        kind="cartan",
        label=f"{letter}{rank}",
        p=p,
        d=rank,
        cartan=cartan,
        simple_roots=tuple(pos_x[index_c[tuple(1 if j == i else 0 for j in range(rank))]] for i in range(rank)),
        roots=roots,
        root_coords=tuple(coords) + tuple(neg_coords),
        coroots=tuple(coroots),
        structure=structure,
        max_string=max_string,
        rho=tuple([1] * rank),
        root_index=index,
    )
    verify_datum(datum)
    logger.debug(f"Built {datum.label} over F_{p}: {datum.n_positive} positive roots")
    return datum


@lru_cache(maxsize=64)
def datum_for(selector: str, p: int) -> ChevalleyDatum:
    """Cached datum from a selector such as 'gl3' or 'B2'."""
    sel = selector.strip()
    if sel.lower().startswith("gl"):
        try:
            n = int(sel[2:])
        except ValueError:
            raise InvalidInput(f"cannot parse '{selector}'")
        return build_gl(n, p)
    letter, rank = parse_type(sel)
    return build_from_cartan(cartan_matrix(letter, rank), p)


# Brackets on the Lie basis h_1..h_d, e_r.

def bracket(datum: ChevalleyDatum, x: int, y: int) -> Dict[int, int]:
    """[b_x, b_y] on Lie basis indices as an integer combination."""
    d = datum.d
    if x < d and y < d:
        return {}
    if x < d:
        r = y - d
        c = datum.roots[r][x]
        return {y: c} if c else {}
    if y < d:
        r = x - d
        c = -datum.roots[r][y]
        return {x: c} if c else {}
    a, b = x - d, y - d
    if b == datum.negative_of(a):
        return {i: c for i, c in enumerate(datum.coroots[a]) if c}
    entry = datum.structure.get((a, b))
    if entry is None:
        return {}
    k, n_ab = entry
    return {d + k: n_ab}


def structure_tensor(datum: ChevalleyDatum) -> np.ndarray:
    """C[a, b, k]: coefficient of b_k in [b_a, b_b], over Z."""
    dim = datum.lie_dim
    tensor = np.zeros((dim, dim, dim), dtype=np.int64)
    for a in range(dim):
        for b in range(dim):
            for k, c in bracket(datum, a, b).items():
                tensor[a, b, k] = c
    return tensor


def _bracket_vectors(tensor: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.einsum("a,b,abk->k", u, v, tensor)


def verify_datum(datum: ChevalleyDatum) -> None:
    """Antisymmetry, Jacobi and coroot pairing checks over Z."""
    tensor = structure_tensor(datum)
    if not np.array_equal(tensor, -tensor.transpose(1, 0, 2)):
        raise UnsupportedType(f"{datum.label}: bracket is not antisymmetric")
    # [a,[b,c]] + [b,[c,a]] + [c,[a,b]]
    inner = tensor
    jac = (np.einsum("bck,akm->abcm", inner, tensor)
           + np.einsum("cak,bkm->abcm", inner, tensor)
           + np.einsum("abk,ckm->abcm", inner, tensor))
    if np.any(jac):
        raise UnsupportedType(f"{datum.label}: Jacobi identity fails")
    for r in range(len(datum.roots)):
        if datum.pairing(datum.roots[r], r) != 2:
            raise UnsupportedType(f"{datum.label}: <α, α∨> != 2 for root {r}")


def rho(datum: ChevalleyDatum) -> Weight:
    """Weight with <ρ, α∨> = 1 for every simple root."""
    for i in range(datum.n_simple):
        if datum.pairing(datum.rho, datum.simple_index(i)) != 1:
            raise NoIntegralRho(f"{datum.label}: no lattice ρ")
    return datum.rho


# Levi data and p-characters.

def levi_spec(datum: ChevalleyDatum, I: Iterable[int]) -> LeviSpec:
    I = tuple(sorted(set(int(i) for i in I)))
    if any(i < 0 or i >= datum.n_simple for i in I):
        raise InvalidInput(f"I = {I} is not a subset of the simple roots")
    outside = [j for j in range(datum.n_simple) if j not in I]
    in_levi = lambda r: all(datum.root_coords[r][j] == 0 for j in outside)
    all_roots = range(len(datum.roots))
    levi_roots = tuple(r for r in all_roots if in_levi(r))
    return LeviSpec(
        I=I,
        levi_roots=levi_roots,
        levi_positive=tuple(r for r in levi_roots if datum.is_positive(r)),
        u_plus=tuple(r for r in all_roots if datum.is_positive(r) and not in_levi(r)),
        u_minus=tuple(r for r in all_roots if not datum.is_positive(r) and not in_levi(r)),
    )


def standard_levi_chi(datum: ChevalleyDatum, I: Iterable[int]) -> PChar:
    """χ(e_{-α}) = 1 exactly for the simple roots α in I."""
    levi = levi_spec(datum, I)
    values = [0] * len(datum.roots)
    for i in levi.I:
        values[datum.negative_of(datum.simple_index(i))] = 1
    return PChar(values=tuple(values), levi=levi)


def chi_vector(datum: ChevalleyDatum, chi: PChar) -> np.ndarray:
    vec = np.zeros(datum.lie_dim, dtype=np.int64)
    for r, v in enumerate(chi.values):
        vec[datum.d + r] = v % datum.p
    return vec


# Weyl group action on X.

def reflection_matrix(datum: ChevalleyDatum, r: int) -> np.ndarray:
    """s_α on X as an integer matrix: λ ↦ λ - <λ, α∨> α."""
    alpha = np.array(datum.roots[r], dtype=np.int64)
    coroot = np.array(datum.coroots[r], dtype=np.int64)
    return np.eye(datum.d, dtype=np.int64) - np.outer(alpha, coroot)


def longest_word(datum: ChevalleyDatum, I: Sequence[int]) -> Tuple[int, ...]:
    """Reduced word (simple indices, applied left to right) for the longest element of W_I."""
    weight = np.array(datum.rho, dtype=np.int64)
    word: List[int] = []
    while True:
        step = next((i for i in I if datum.pairing(tuple(weight), datum.simple_index(i)) > 0), None)
        if step is None:
            return tuple(word)
        weight = reflection_matrix(datum, datum.simple_index(step)) @ weight
        word.append(step)


def weyl_matrix(datum: ChevalleyDatum, word: Sequence[int]) -> np.ndarray:
    mat = np.eye(datum.d, dtype=np.int64)
    for i in word:
        mat = reflection_matrix(datum, datum.simple_index(i)) @ mat
    return mat


# The automorphism τ.

def _ad(tensor: np.ndarray, a: int, p: int) -> np.ndarray:
    """ad(b_a) with columns indexed by the argument."""
    return tensor[a].T % p


def _exp_nilpotent(mat: np.ndarray, p: int) -> np.ndarray:
    result = linalg.identity(mat.shape[0])
    term = linalg.identity(mat.shape[0])
    k = 1
    while True:
        term = linalg.matmul(term, mat, p)
        if not np.any(term):
            return result
        if k >= p:
            raise TauConstructionFailed("ad-nilpotency degree reaches p")
        term = (term * linalg.inv_scalar(k, p)) % p
        result = (result + term) % p
        k += 1


def _reflection_automorphism(datum: ChevalleyDatum, tensor: np.ndarray, r: int) -> np.ndarray:
    p = datum.p
    e = _ad(tensor, datum.lie_index(r), p)
    f = _ad(tensor, datum.lie_index(datum.negative_of(r)), p)
    x = _exp_nilpotent(e, p)
    y = _exp_nilpotent((-f) % p, p)
    return linalg.matmul(linalg.matmul(x, y, p), x, p)


def _single_entry(column: np.ndarray) -> Tuple[int, int]:
    nz = np.nonzero(column)[0]
    if nz.size != 1:
        raise TauConstructionFailed("τ does not map root vectors to root vectors")
    return int(nz[0]), int(column[nz[0]])


def tau(datum: ChevalleyDatum, I: Iterable[int]) -> TauMap:
    """τ = (torus correction) ∘ ω ∘ n_{w_I}, verified before it is returned."""
    p = datum.p
    levi = levi_spec(datum, I)
    tensor = structure_tensor(datum)
    dim, d = datum.lie_dim, datum.d

    word = longest_word(datum, levi.I)
    n_w = linalg.identity(dim)
    for i in word:
        n_w = linalg.matmul(_reflection_automorphism(datum, tensor, datum.simple_index(i)), n_w, p)
    omega = linalg.zeros(dim, dim)
    for i in range(d):
        omega[i, i] = p - 1
    for r in range(len(datum.roots)):
        omega[datum.lie_index(datum.negative_of(r)), datum.lie_index(r)] = p - 1
    tau0 = linalg.matmul(omega, n_w, p)
    tau0_inv = linalg.inverse(tau0, p)

    simple_scale: Dict[int, int] = {}
    for i in levi.I:
        neg = datum.negative_of(datum.simple_index(i))
        _, k = _single_entry(tau0_inv[:, datum.lie_index(neg)])
        simple_scale[i] = (-linalg.inv_scalar(k, p)) % p

    def torus_value(r: int) -> int:
        value = 1
        for j, c in enumerate(datum.root_coords[r]):
            t = simple_scale.get(j, 1)
            value = value * pow(t, c, p) if c >= 0 else value * pow(linalg.inv_scalar(t, p), -c, p)
        return value % p

    correction = linalg.identity(dim)
    for r in range(len(datum.roots)):
        correction[datum.lie_index(r), datum.lie_index(r)] = torus_value(r)
    matrix = linalg.matmul(correction, tau0, p)
    inverse = linalg.inverse(matrix, p)

    root_perm, coeffs, inv_coeffs = [], [], []
    for r in range(len(datum.roots)):
        k, c = _single_entry(matrix[:, datum.lie_index(r)])
        root_perm.append(k - d)
        coeffs.append(c)
        _, ci = _single_entry(inverse[:, datum.lie_index(r)])
        inv_coeffs.append(ci)
    x_action = -weyl_matrix(datum, word)
    result = TauMap(
        I=levi.I,
        matrix=matrix,
        inverse=inverse,
        x_action=tuple(tuple(int(v) for v in row) for row in x_action),
        root_perm=tuple(root_perm),
        coefficients=tuple(coeffs),
        inverse_coefficients=tuple(inv_coeffs),
        reduced_word=word,
    )
    verify_tau(datum, standard_levi_chi(datum, levi.I), result, tensor)
    return result


def verify_tau(datum: ChevalleyDatum, chi: PChar, tau_map: TauMap, tensor: np.ndarray = None) -> None:
    p = datum.p
    tensor = structure_tensor(datum) if tensor is None else tensor
    t = tau_map.matrix
    c = tensor % p
    lhs = np.einsum("kc,abc->abk", t, c) % p
    rhs = np.einsum("ia,jb,ijk->abk", t, t, c) % p
    if not np.array_equal(lhs, rhs):
        raise TauConstructionFailed("τ does not preserve brackets")
    chi_vec = chi_vector(datum, chi)
    if not np.array_equal(linalg.matmul(chi_vec[None, :], tau_map.inverse, p)[0], (-chi_vec) % p):
        raise TauConstructionFailed("χ∘τ^{-1} != -χ")
    w_mat = -np.array(tau_map.x_action, dtype=np.int64)
    for r in range(len(datum.roots)):
        h = np.zeros(datum.lie_dim, dtype=np.int64)
        h[:datum.d] = np.array(datum.coroots[r]) % p
        image = linalg.matmul(tau_map.inverse, h[:, None], p)[:, 0]
        w_alpha = tuple(int(v) for v in w_mat @ np.array(datum.roots[r]))
        target = np.zeros(datum.lie_dim, dtype=np.int64)
        target[:datum.d] = np.array(datum.coroots[datum.root_index[w_alpha]]) % p
        if not np.any(image) or linalg.rank(np.stack([image, target]), p) != 1:
            raise TauConstructionFailed(f"τ^{{-1}}(h_α) is not proportional to h_(w_I α) for root {r}")
    logger.debug(f"τ verified for {datum.label}, I = {tau_map.I}")


def datum_to_dict(datum: ChevalleyDatum, chi: PChar = None) -> dict:
    """JSON-ready dump; structure constants as (α, β, N) triples."""
    out = {
        "kind": datum.kind,
        "label": datum.label,
        "p": datum.p,
        "rank": datum.d,
        "cartan": [list(r) for r in datum.cartan],
        "simple_roots": [list(r) for r in datum.simple_roots],
        "positive_roots": [list(datum.roots[r]) for r in datum.positive()],
        "coroots": [list(c) for c in datum.coroots[:datum.n_positive]],
        "structure_constants": sorted(
            [list(datum.roots[a]), list(datum.roots[b]), n]
            for (a, b), (_, n) in datum.structure.items()
        ),
        "rho": list(datum.rho),
        "convention": datum.convention,
        "good_prime": True,
    }
    if chi is not None:
        out["I"] = list(chi.levi.I)
        out["chi"] = [[list(datum.roots[r]), v] for r, v in enumerate(chi.values) if v]
    return out
