"""Dense exact linear algebra over the prime field F_p.

Matrices are numpy int64 arrays with entries kept in [0, p). Every routine
returns fresh arrays; inputs are never modified.
"""
from typing import List, Optional, Tuple

import numpy as np


def mod(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def inv_scalar(a: int, p: int) -> int:
    return pow(int(a) % p, -1, p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] == 0 or b.shape[0] == 0:
        return zeros(a.shape[0], b.shape[1])
    return (a @ b) % p


def rref(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form and pivot columns."""
    r_mat = mod(a, p).copy()
    rows, cols = r_mat.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(r_mat[r:, c])[0]
        if nz.size == 0:
            continue
        pivot = r + int(nz[0])
        if pivot != r:
            r_mat[[r, pivot], :] = r_mat[[pivot, r], :]
        r_mat[r, :] = (r_mat[r, :] * inv_scalar(r_mat[r, c], p)) % p
        factors = r_mat[:, c].copy()
        factors[r] = 0
        nzf = np.nonzero(factors)[0]
        if nzf.size:
            r_mat[nzf, :] = (r_mat[nzf, :] - np.outer(factors[nzf], r_mat[r, :])) % p
        pivots.append(c)
        r += 1
    return r_mat, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def row_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Rows of the reduced echelon form spanning the row space."""
    if a.shape[0] == 0:
        return zeros(0, a.shape[1])
    r_mat, pivots = rref(a, p)
    return r_mat[:len(pivots)]


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Rows form a basis of {x : a @ x = 0}."""
    cols = a.shape[1]
    if a.shape[0] == 0:
        return identity(cols)
    r_mat, pivots = rref(a, p)
    free = [j for j in range(cols) if j not in set(pivots)]
    basis = zeros(len(free), cols)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r_mat[i, f]) % p
    return basis


def left_nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Rows form a basis of {y : y @ a = 0}."""
    return nullspace(a.T, p)


def solve(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """One solution of a @ x = b (b a vector or a matrix), or None."""
    b2 = b.reshape(a.shape[0], -1) if b.ndim == 1 else b
    cols = a.shape[1]
    aug = np.concatenate([mod(a, p), mod(b2, p)], axis=1)
    r_mat, pivots = rref(aug, p)
    if any(pc >= cols for pc in pivots):
        return None
    x = zeros(cols, b2.shape[1])
    for i, pc in enumerate(pivots):
        x[pc, :] = r_mat[i, cols:]
    return x.reshape(-1) if b.ndim == 1 else x


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([mod(a, p), identity(n)], axis=1)
    r_mat, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return r_mat[:, n:].copy()


def is_invertible(a: np.ndarray, p: int) -> bool:
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def complement_basis(rows: np.ndarray, n: int, p: int) -> np.ndarray:
    """Standard basis vectors completing the row space of `rows` to F_p^n."""
    _, pivots = rref(rows, p) if rows.shape[0] else (None, [])
    missing = [j for j in range(n) if j not in set(pivots)]
    comp = zeros(len(missing), n)
    for k, j in enumerate(missing):
        comp[k, j] = 1
    return comp


def coordinates(basis_rows: np.ndarray, vectors: np.ndarray, p: int) -> Optional[np.ndarray]:
    """Coefficients c with c @ basis_rows = vectors (rows), or None."""
    if basis_rows.shape[0] == 0:
        return zeros(vectors.shape[0], 0) if not np.any(mod(vectors, p)) else None
    sol = solve(basis_rows.T, vectors.T, p)
    return None if sol is None else sol.T


def intersect_rows(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Basis of rowspace(a) ∩ rowspace(b)."""
    if a.shape[0] == 0 or b.shape[0] == 0:
        return zeros(0, a.shape[1])
    stacked = np.concatenate([a, (-b) % p], axis=0).T
    kernel = nullspace(stacked, p)
    return row_basis(matmul(kernel[:, :a.shape[0]], a, p), p)


def matrix_power(a: np.ndarray, e: int, modulus: int) -> np.ndarray:
    result = identity(a.shape[0])
    base = a % modulus
    while e:
        if e & 1:
            result = (result @ base) % modulus
        base = (base @ base) % modulus
        e >>= 1
    return result


class SemiEchelon:
    """Incrementally grown basis with distinct normalized pivots.

    Vectors are reduced against stored rows in insertion order; each row
    carries an optional payload matrix transformed alongside it.
    """

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        self.rows: List[np.ndarray] = []
        self.pivots: List[int] = []
        self.payloads: List[Optional[np.ndarray]] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: np.ndarray, payload: Optional[np.ndarray] = None):
        """Return (residual, payload minus the combination used)."""
        p = self.p
        w = v % p
        pay = None if payload is None else payload % p
        for row, piv, rp in zip(self.rows, self.pivots, self.payloads):
            c = int(w[piv])
            if c:
                w = (w - c * row) % p
                if pay is not None and rp is not None:
                    pay = (pay - c * rp) % p
        return w, pay

    def add(self, v: np.ndarray, payload: Optional[np.ndarray] = None):
        """Insert v if independent. Returns (added, residual payload)."""
        w, pay = self.reduce(v, payload)
        nz = np.nonzero(w)[0]
        if nz.size == 0:
            return False, pay
        piv = int(nz[0])
        scale = inv_scalar(w[piv], self.p)
        self.rows.append((w * scale) % self.p)
        self.pivots.append(piv)
        self.payloads.append(None if pay is None else (pay * scale) % self.p)
        return True, None

    def contains(self, v: np.ndarray) -> bool:
        w, _ = self.reduce(v)
        return not np.any(w)

    def matrix(self) -> np.ndarray:
        if not self.rows:
            return zeros(0, self.n)
        return np.stack(self.rows)


def random_vector(rng: np.random.Generator, n: int, p: int) -> np.ndarray:
    return rng.integers(0, p, size=n, dtype=np.int64)
