"""Base algebras: finite fields, truncated polynomial rings, structure maps π."""
import logging
import re
from typing import Dict, Iterable, Optional, Sequence, Tuple

import galois
import numpy as np

from app.core import linalg
from app.core.exceptions import InvalidInput, NotLocal
from app.models.algebra import BaseAlgebra
from app.models.rootdata import ChevalleyDatum, TauMap

logger = logging.getLogger(__name__)

NILPOTENT_NAMES = ("t", "eps")


def _coerce_pi(pi: Optional[np.ndarray], rank: int, dim: int, p: int) -> np.ndarray:
    if pi is None:
        return np.zeros((rank, dim), dtype=np.int64)
    arr = np.asarray(pi, dtype=np.int64) % p
    if arr.shape != (rank, dim):
        raise InvalidInput(f"π must have shape ({rank}, {dim}), got {arr.shape}")
    return arr


def _field_mult(p: int, k: int) -> np.ndarray:
    """Structure constants of F_p[x]/(f) for a fixed irreducible f of degree k."""
    if k == 1:
        return np.ones((1, 1, 1), dtype=np.int64)
    field = galois.GF(p ** k, irreducible_poly=galois.irreducible_poly(p, k))
    basis = field([p ** i for i in range(k)])
    products = basis[:, None] * basis[None, :]
    # vector() lists coefficients from x^{k-1} down to 1
    return np.asarray(products.vector(), dtype=np.int64)[..., ::-1].copy()


def make_field(p: int, k: int = 1, rank: int = 1, pi: Optional[np.ndarray] = None) -> BaseAlgebra:
    """F_{p^k} with basis 1, x, ..., x^{k-1}."""
    if k < 1:
        raise InvalidInput("field degree must be positive")
    if not galois.is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    generators = {}
    if k > 1:
        x = np.zeros(k, dtype=np.int64)
        x[1] = 1
        generators["x"] = x
    label = f"F{p}" if k == 1 else f"F{p}^{k}"
    return BaseAlgebra(
        p=p,
        mult=_field_mult(p, k),
        pi=_coerce_pi(pi, rank, k, p),
        label=label,
        field_degree=k,
        descriptor={"kind": "field", "q": p ** k, "generators": generators},
    )


def make_truncated_poly(field: BaseAlgebra, order: int, pi: Optional[np.ndarray] = None) -> BaseAlgebra:
    """F[t]/(t^order) over a field F; basis x^i t^j at index j·k + i."""
    if not field.is_field:
        raise InvalidInput("truncated polynomials are built over a field")
    if order < 1:
        raise InvalidInput("order must be positive")
    p, k = field.p, field.dim
    dim = k * order
    mult = np.zeros((dim, dim, dim), dtype=np.int64)
    for j1 in range(order):
        for j2 in range(order - j1):
            for i1 in range(k):
                for i2 in range(k):
                    mult[j1 * k + i1, j2 * k + i2, (j1 + j2) * k:(j1 + j2 + 1) * k] = field.mult[i1, i2]
    residue = np.zeros((k, dim), dtype=np.int64)
    residue[:, :k] = np.eye(k, dtype=np.int64)
    generators = {}
    for name, vec in field.descriptor.get("generators", {}).items():
        g = np.zeros(dim, dtype=np.int64)
        g[:k] = vec
        generators[name] = g
    if order > 1:
        t = np.zeros(dim, dtype=np.int64)
        t[k] = 1
        for name in NILPOTENT_NAMES:
            generators[name] = t
    pi_arr = _coerce_pi(pi, field.rank, dim, p)
    label = f"{field.label}[eps]" if order == 2 else f"{field.label}[t]/t^{order}"
    if order == 1:
        return field.with_pi(pi_arr)
    return BaseAlgebra(
        p=p,
        mult=mult,
        pi=pi_arr,
        label=label,
        field_degree=field.field_degree,
        residue=residue,
        residue_field=field.with_pi((pi_arr @ residue.T) % p),
        descriptor={"kind": "trunc", "q": p ** k, "order": order, "generators": generators},
    )


def make_dual_numbers(field: BaseAlgebra, pi: Optional[np.ndarray] = None) -> BaseAlgebra:
    return make_truncated_poly(field, 2, pi)


def frobenius_matrix(algebra: BaseAlgebra) -> np.ndarray:
    """a ↦ a^p as an F_p-linear map (columns are images of basis elements)."""
    p, m = algebra.p, algebra.dim
    cols = []
    for j in range(m):
        e = np.zeros(m, dtype=np.int64)
        e[j] = 1
        acc = algebra.unit()
        for _ in range(p):
            acc = algebra.multiply(acc, e)
        cols.append(acc)
    return np.stack(cols, axis=1) % p


def nilradical(algebra: BaseAlgebra) -> np.ndarray:
    """Rows spanning the nilradical ker(Frob^m)."""
    frob = frobenius_matrix(algebra)
    return linalg.nullspace(linalg.matrix_power(frob, algebra.dim, algebra.p), algebra.p)


def _verify_axioms(p: int, mult: np.ndarray) -> None:
    m = mult.shape[0]
    if mult.shape != (m, m, m):
        raise InvalidInput("structure tensor must be m x m x m")
    if not np.array_equal(mult % p, mult.transpose(1, 0, 2) % p):
        raise InvalidInput("algebra is not commutative")
    unit = np.zeros(m, dtype=np.int64)
    unit[0] = 1
    if not np.array_equal(np.einsum("i,ijk->jk", unit, mult) % p, np.eye(m, dtype=np.int64)):
        raise InvalidInput("b_0 is not a unit")
    left = np.einsum("ijk,klm->ijlm", mult, mult) % p
    right = np.einsum("jlk,ikm->ijlm", mult, mult) % p
    if not np.array_equal(left, right):
        raise InvalidInput("algebra is not associative")


def make_generic(p: int, mult: np.ndarray, rank: int, pi: Optional[np.ndarray] = None,
                 label: str = "A") -> BaseAlgebra:
    """Algebra from structure constants; must be local with residue field F_p."""
    mult = np.asarray(mult, dtype=np.int64) % p
    _verify_axioms(p, mult)
    m = mult.shape[0]
    candidate = BaseAlgebra(p=p, mult=mult, pi=_coerce_pi(pi, rank, m, p), label=label,
                            descriptor={"kind": "generic", "q": p, "generators": {}})
    nil = nilradical(candidate)
    if not is_local(candidate, nil):
        raise NotLocal(f"{label} is not local")
    if m - nil.shape[0] != 1:
        raise InvalidInput("generic algebras must have residue field F_p")
    if nil.shape[0] == 0:
        return candidate
    stack = np.concatenate([candidate.unit()[None, :], nil], axis=0)
    inv = linalg.inverse(stack.T, p)
    residue = inv[:1, :]
    prime = make_field(p, 1, rank)
    return BaseAlgebra(
        p=p,
        mult=mult,
        pi=candidate.pi,
        label=label,
        residue=residue,
        residue_field=prime.with_pi((candidate.pi @ residue.T) % p),
        descriptor=candidate.descriptor,
    )


def is_local(algebra: BaseAlgebra, nil: Optional[np.ndarray] = None) -> bool:
    """A/N is a field iff the F_p-points of A/N form a line."""
    p, m = algebra.p, algebra.dim
    nil = nilradical(algebra) if nil is None else nil
    frob = (frobenius_matrix(algebra) - np.eye(m, dtype=np.int64)) % p
    annihilator = linalg.nullspace(nil, p) if nil.shape[0] else np.eye(m, dtype=np.int64)
    fixed = linalg.nullspace(linalg.matmul(annihilator, frob, p), p)
    return fixed.shape[0] == nil.shape[0] + 1


def maximal_ideal(algebra: BaseAlgebra) -> np.ndarray:
    if algebra.is_field:
        return np.zeros((0, algebra.dim), dtype=np.int64)
    return nilradical(algebra)


def residue_quotient(algebra: BaseAlgebra) -> Tuple[BaseAlgebra, np.ndarray]:
    """(F, matrix of A → F); identity for fields."""
    if algebra.is_field:
        return algebra, np.eye(algebra.dim, dtype=np.int64)
    return algebra.residue_field, algebra.residue


def unit_embedding(source: BaseAlgebra, target: BaseAlgebra) -> np.ndarray:
    """The algebra map F_p → A (or F → A for the residue field of A)."""
    if source.dim == 1:
        return target.unit()[:, None].copy()
    if target.residue is not None and source.same_ring(target.residue_field):
        emb = np.zeros((target.dim, source.dim), dtype=np.int64)
        emb[:source.dim, :] = np.eye(source.dim, dtype=np.int64)
        return emb
    if source.same_ring(target):
        return np.eye(target.dim, dtype=np.int64)
    raise InvalidInput(f"no embedding {source.label} → {target.label}")


def twist_pi(algebra: BaseAlgebra, weight: Sequence[int]) -> np.ndarray:
    """π ∘ μ̃ on the toral generators: π(h_i) + dμ(h_i)·1."""
    p = algebra.p
    out = algebra.pi.copy()
    for i, mu_i in enumerate(weight):
        out[i] = (out[i] + int(mu_i) * algebra.unit()) % p
    return out


def derived_algebra(algebra: BaseAlgebra, kind: str, tau_map: Optional[TauMap] = None) -> BaseAlgebra:
    """Ā, ^τA, 𝔻A and 𝔻̄A: same ring, transformed structure map."""
    p, d = algebra.p, algebra.rank
    pi = algebra.pi
    if kind == "bar":
        return algebra.with_pi((-pi) % p, f"bar({algebra.label})")
    if tau_map is None:
        raise InvalidInput(f"derived algebra '{kind}' needs τ")
    inv_t = tau_map.inverse_on_toral(d)
    fwd_t = tau_map.on_toral(d)
    # π(τ^{-1} h_i) = Σ_j inv_t[j, i] π(h_j)
    tau_pi = (inv_t.T @ pi) % p
    if kind == "tau":
        return algebra.with_pi(tau_pi, f"tau({algebra.label})")
    if kind == "D":
        return algebra.with_pi((-tau_pi) % p, f"D({algebra.label})")
    if kind == "Dbar":
        return algebra.with_pi((-(fwd_t.T @ pi)) % p, f"Dbar({algebra.label})")
    raise InvalidInput(f"unknown derived algebra kind '{kind}'")


def pi_of_root(algebra: BaseAlgebra, datum: ChevalleyDatum, r: int) -> np.ndarray:
    """π(h_α) = Σ_i (h_α)_i π(h_i)."""
    coroot = np.array(datum.coroots[r], dtype=np.int64)
    return (coroot @ algebra.pi) % algebra.p


def check_levi_vanishing(algebra: BaseAlgebra, datum: ChevalleyDatum, roots: Iterable[int]) -> bool:
    return all(not np.any(pi_of_root(algebra, datum, r)) for r in roots)


# π-value strings such as "1+t", "2*t", "eps", "x*t^2".

_TERM = re.compile(r"([+-]?)([^+-]+)")


def parse_element(algebra: BaseAlgebra, text: str) -> np.ndarray:
    p = algebra.p
    generators: Dict[str, np.ndarray] = algebra.descriptor.get("generators", {})
    text = text.replace(" ", "")
    if not text:
        raise InvalidInput("empty algebra element")
    total = np.zeros(algebra.dim, dtype=np.int64)
    for sign, body in _TERM.findall(text):
        value = algebra.unit()
        for factor in body.split("*"):
            base, _, exp = factor.partition("^")
            power = int(exp) if exp else 1
            if base.isdigit():
                elem = algebra.scalar(int(base))
            elif base in generators:
                elem = generators[base]
            else:
                raise InvalidInput(f"unknown symbol '{base}' in '{text}'")
            for _ in range(power):
                value = algebra.multiply(value, elem)
        total = (total - value) % p if sign == "-" else (total + value) % p
    return total


def parse_pi(algebra: BaseAlgebra, text: str) -> np.ndarray:
    """'h1=eps,h2=0' → π array; unspecified generators map to zero."""
    pi = np.zeros((algebra.rank, algebra.dim), dtype=np.int64)
    if not text:
        return pi
    for item in text.split(","):
        name, _, value = item.partition("=")
        name = name.strip().lower()
        if not name.startswith("h") or not name[1:].isdigit():
            raise InvalidInput(f"cannot parse π entry '{item}'")
        i = int(name[1:]) - 1
        if not 0 <= i < algebra.rank:
            raise InvalidInput(f"h{i + 1} is out of range")
        pi[i] = parse_element(algebra, value)
    return pi


def make_base(descriptor: str, rank: int, p: int, pi_text: str = "") -> BaseAlgebra:
    """'field:q', 'dual:q' or 'trunc:q:k' with q a power of p."""
    parts = descriptor.strip().lower().split(":")
    kind = parts[0]
    try:
        q = int(parts[1]) if len(parts) > 1 else p
    except ValueError:
        raise InvalidInput(f"cannot parse base algebra '{descriptor}'")
    k = 1
    while p ** k < q:
        k += 1
    if p ** k != q:
        raise InvalidInput(f"{q} is not a power of p = {p}")
    field = make_field(p, k, rank)
    if kind == "field":
        algebra = field
    elif kind == "dual":
        algebra = make_dual_numbers(field)
    elif kind == "trunc":
        if len(parts) < 3:
            raise InvalidInput("trunc needs an order: trunc:q:k")
        algebra = make_truncated_poly(field, int(parts[2]))
    else:
        raise InvalidInput(f"unknown base algebra kind '{kind}'")
    if pi_text:
        algebra = algebra.with_pi(parse_pi(algebra, pi_text))
    return algebra


def algebra_to_dict(algebra: BaseAlgebra) -> dict:
    nz = np.argwhere(algebra.mult % algebra.p)
    return {
        "label": algebra.label,
        "p": algebra.p,
        "dim": algebra.dim,
        "field": algebra.is_field,
        "mult": [[int(i), int(j), int(k), int(algebra.mult[i, j, k])] for i, j, k in nz],
        "pi": algebra.pi.tolist(),
    }
