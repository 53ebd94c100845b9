"""Integer lattice helpers: echelon bases of sublattices and exact rational solves."""
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Vector = Tuple[int, ...]


def echelon_basis(rows: Sequence[Sequence[int]]) -> List[List[int]]:
    """Integer row echelon basis (positive pivots) of the lattice spanned by rows."""
    mat = [list(map(int, r)) for r in rows if any(r)]
    if not mat:
        return []
    cols = len(mat[0])
    result: List[List[int]] = []
    for c in range(cols):
        active = [r for r in mat if r[c] != 0]
        rest = [r for r in mat if r[c] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            head = active[0]
            reduced = [head]
            for r in active[1:]:
                q = r[c] // head[c]
                new = [a - q * b for a, b in zip(r, head)]
                if new[c] != 0:
                    reduced.append(new)
                elif any(new):
                    rest.append(new)
            active = reduced
        if active:
            pivot_row = active[0]
            if pivot_row[c] < 0:
                pivot_row = [-a for a in pivot_row]
            result.append(pivot_row)
        mat = rest
        if not mat:
            break
    return result


def pivot_column(row: Sequence[int]) -> int:
    for i, a in enumerate(row):
        if a != 0:
            return i
    raise ValueError("zero row has no pivot")


def reduce_vector(v: Sequence[int], basis: List[List[int]]) -> Vector:
    """Canonical representative of v modulo the lattice with echelon basis `basis`.

    Each pivot coordinate is brought into [0, pivot).
    """
    w = [int(a) for a in v]
    for row in basis:
        c = pivot_column(row)
        q = w[c] // row[c]
        if q:
            w = [a - q * b for a, b in zip(w, row)]
    return tuple(w)


def in_lattice(v: Sequence[int], basis: List[List[int]]) -> bool:
    return not any(reduce_vector(v, basis))


def solve_rational(columns: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[List[Fraction]]:
    """Unique x with sum_j x_j * columns[j] = target, for independent columns.

    Returns None when target is outside the rational span.
    """
    n = len(columns)
    dim = len(target)
    aug = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(dim)]
    pivots: List[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, dim) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [a * inv for a in aug[r]]
        for i in range(dim):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][n] != 0 for i in range(r, dim)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    return x


def add(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(int(x) + int(y) for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(int(x) - int(y) for x, y in zip(a, b))


def scale(k: int, a: Sequence[int]) -> Vector:
    return tuple(k * int(x) for x in a)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(int(x) * int(y) for x, y in zip(a, b))
