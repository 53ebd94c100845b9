"""Radicals, heads and composition series over a field."""
import logging
from itertools import product
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.core import linalg
from app.core.config import get_settings
from app.core.exceptions import Inconclusive, InvalidInput, NotAField, NotUniqueMax
from app.models.module import FiltrationChain, Grade, GradedModule, HeadData, SubalgebraSpec, Subspaces
from app.models.weyl import WeylGroup
from app.services import gradedmod, weyl

logger = logging.getLogger(__name__)


def require_field(module: GradedModule) -> None:
    if not module.ambient.algebra.is_field:
        raise NotAField(f"{module.ambient.algebra.label} is not a field")


# The action algebra and its Jacobson radical.

def _flat_generators(module: GradedModule) -> List[np.ndarray]:
    """Root actions, A-operators and grade projections as endomorphisms of the whole space."""
    n = module.dim
    offsets = module.offsets()
    gens = []
    for r in module.ambient.roots:
        mat = np.zeros((n, n), dtype=np.int64)
        for c in module.grades:
            t = module.ambient.shift(c, r)
            if t in offsets:
                mat[offsets[t]:offsets[t] + module.dims[t], offsets[c]:offsets[c] + module.dims[c]] = module.action(r, c)
        if np.any(mat):
            gens.append(mat)
    for j in range(1, module.ambient.algebra.dim):
        mat = np.zeros((n, n), dtype=np.int64)
        for c in module.grades:
            o = offsets[c]
            mat[o:o + module.dims[c], o:o + module.dims[c]] = module.a_ops[c][j]
        gens.append(mat)
    for c in module.grades:
        mat = np.zeros((n, n), dtype=np.int64)
        o = offsets[c]
        mat[o:o + module.dims[c], o:o + module.dims[c]] = np.eye(module.dims[c], dtype=np.int64)
        gens.append(mat)
    return gens


def action_algebra(module: GradedModule) -> List[np.ndarray]:
    """F_p-basis of the subalgebra of End(M) generated by the action."""
    p, n = module.p, module.dim
    gens = _flat_generators(module)
    ech = linalg.SemiEchelon(n * n, p)
    basis: List[np.ndarray] = []
    queue = [np.eye(n, dtype=np.int64)]
    while queue:
        x = queue.pop()
        added, _ = ech.add(x.ravel())
        if not added:
            continue
        basis.append(x)
        queue.extend(linalg.matmul(g, x, p) for g in gens)
    return basis


def _log_floor(n: int, p: int) -> int:
    k = 0
    while p ** (k + 1) <= n:
        k += 1
    return k


def _batched_power(stack: np.ndarray, e: int, modulus: int) -> np.ndarray:
    n = stack.shape[-1]
    result = np.broadcast_to(np.eye(n, dtype=np.int64), stack.shape).copy()
    base = stack % modulus
    while e:
        if e & 1:
            result = np.matmul(result, base) % modulus
        base = np.matmul(base, base) % modulus
        e >>= 1
    return result


def jacobson_radical(basis: List[np.ndarray], p: int) -> List[np.ndarray]:
    """Radical of a matrix algebra over F_p by iterated p-power trace forms.

    I_0 is the kernel of the trace form. I_k is cut out of I_{k-1} by
    x ↦ g_k(x·y) = Tr(x̃ỹ^{p^k} mod p^{k+1}) / p^k for y in the algebra;
    the last I_k with p^k <= n is the radical.
    """
    if not basis:
        return []
    n = basis[0].shape[0]
    ys = np.stack([y.ravel() for y in basis])
    current = list(basis)
    for k in range(_log_floor(n, p) + 1):
        if not current:
            break
        gram = np.zeros((len(basis), len(current)), dtype=np.int64)
        if k == 0:
            xs = np.stack([x.T.ravel() for x in current])
            gram = (ys @ xs.T) % p
        else:
            modulus = p ** (k + 1)
            stacked = np.stack(basis)
            for col, x in enumerate(current):
                z = np.einsum("ab,jbc->jac", x, stacked) % p
                powered = _batched_power(z, p ** k, modulus)
                traces = np.trace(powered, axis1=1, axis2=2) % modulus
                gram[:, col] = (traces // p ** k) % p
        coeffs = linalg.nullspace(gram, p)
        current = [sum(int(c) * x for c, x in zip(row, current)) % p for row in coeffs]
    return current


def radical_by_algebra(module: GradedModule) -> Subspaces:
    p = module.p
    rad = jacobson_radical(action_algebra(module), p)
    if not rad:
        return {}
    images = np.concatenate([x for x in rad], axis=1).T
    out = {}
    for c, o in module.offsets().items():
        block = linalg.row_basis(images[:, o:o + module.dims[c]], p)
        if block.shape[0]:
            out[c] = block
    return out


# Modules generated by their top coset.

def top_grades(module: GradedModule, grade: Optional[Grade] = None) -> List[Grade]:
    """Grades in the maximal ZI-coset, or in the coset of `grade`."""
    datum, I = module.ambient.datum, module.ambient.I
    if grade is not None:
        key = weyl.reduce_zi(datum, I, grade)
        return [c for c in module.grades if weyl.reduce_zi(datum, I, c) == key]
    if not module.grades:
        return []
    heights = {c: weyl.coset_height(datum, I, c) for c in module.grades}
    best = max(heights.values())
    tops = [c for c in module.grades if heights[c] == best]
    keys = {weyl.reduce_zi(datum, I, c) for c in tops}
    if len(keys) > 1:
        return []
    return tops


def core(module: GradedModule, bound: Subspaces) -> Subspaces:
    """Largest submodule contained in the graded subspace `bound`."""
    p = module.p
    spaces = {c: s for c, s in bound.items() if s.shape[0]}
    changed = True
    while changed:
        changed = False
        for c in list(spaces):
            k = spaces[c]
            conds = []
            for r in module.ambient.roots:
                t = module.ambient.shift(c, r)
                if not module.dim_at(t):
                    continue
                kt = spaces.get(t)
                ann = linalg.nullspace(kt, p) if kt is not None else np.eye(module.dims[t], dtype=np.int64)
                if ann.shape[0]:
                    conds.append(linalg.matmul(ann, module.action(r, c), p))
            ann_c = linalg.nullspace(k, p)
            if ann_c.shape[0]:
                for op in module.a_ops[c][1:]:
                    conds.append(linalg.matmul(ann_c, op, p))
            if not conds:
                continue
            cond = np.concatenate(conds, axis=0)
            keep = linalg.nullspace(linalg.matmul(cond, k.T, p), p)
            if keep.shape[0] < k.shape[0]:
                changed = True
                if keep.shape[0]:
                    spaces[c] = linalg.row_basis(linalg.matmul(keep, k, p), p)
                else:
                    del spaces[c]
    return spaces


_LEVI_PART = {
    SubalgebraSpec.U: SubalgebraSpec.UI,
    SubalgebraSpec.PI_PLUS: SubalgebraSpec.UI,
    SubalgebraSpec.PI_MINUS: SubalgebraSpec.UI,
    SubalgebraSpec.UI: SubalgebraSpec.UI,
    SubalgebraSpec.B: SubalgebraSpec.BI,
    SubalgebraSpec.BI: SubalgebraSpec.BI,
    SubalgebraSpec.U0: SubalgebraSpec.U0,
}


def _levi_top(module: GradedModule, tops: List[Grade]) -> GradedModule:
    """The top coset part of M as a module over the Levi part of the acting subalgebra."""
    spec = _LEVI_PART[module.ambient.spec]
    levi = module if spec is module.ambient.spec else gradedmod.restrict(module, spec)
    sub, _ = gradedmod.submodule(levi, {c: np.eye(module.dims[c], dtype=np.int64) for c in tops},
                                 f"top({module.name})")
    return sub


def radical_by_core(module: GradedModule, grade: Optional[Grade] = None) -> Subspaces:
    """rad M = largest submodule whose top part lies in the radical of the top.

    Needs M generated by the part of M in one maximal ZI-coset; the top
    part is then a U^I-module whose radical is computed directly.
    """
    tops = top_grades(module, grade)
    if not tops:
        raise Inconclusive("no unique maximal coset")
    top_space = gradedmod.spin(module, [(c, row) for c in tops for row in np.eye(module.dims[c], dtype=np.int64)])
    if gradedmod.subspace_dim(top_space) != module.dim:
        raise Inconclusive("module is not generated by its top coset")
    levi_top = _levi_top(module, tops)
    top_rad = radical_by_algebra(levi_top)
    bound: Subspaces = {c: np.eye(module.dims[c], dtype=np.int64) for c in module.grades if c not in tops}
    for c, s in top_rad.items():
        bound[c] = s
    return core(module, bound)


def radical(module: GradedModule, grade: Optional[Grade] = None, method: str = "auto") -> Tuple[Subspaces, str]:
    require_field(module)
    if method == "auto":
        tops = top_grades(module, grade)
        top_dim = sum(module.dims[c] for c in tops)
        if tops and top_dim < module.dim:
            try:
                return radical_by_core(module, grade), "core"
            except Inconclusive:
                pass
        method = "algebra"
    if method == "algebra":
        return radical_by_algebra(module), "algebra"
    if method == "core":
        return radical_by_core(module, grade), "core"
    raise InvalidInput(f"unknown radical method '{method}'")


# Simplicity of a semisimple head.

def is_local_algebra(basis: List[np.ndarray], p: int) -> bool:
    """A matrix algebra is local iff its quotient by the radical is a field.

    The quotient is semisimple, so it is a field exactly when it is
    commutative and the Frobenius x ↦ x^p fixes a single line.
    """
    if not basis:
        return False
    rad = jacobson_radical(basis, p)
    ech = linalg.SemiEchelon(basis[0].size, p)
    for x in rad:
        ech.add(x.ravel())
    n_rad = len(ech)
    for x in basis:
        ech.add(x.ravel())
    frame = ech.matrix()
    reps = [row.reshape(basis[0].shape) for row in frame[n_rad:]]

    def residue(x: np.ndarray) -> np.ndarray:
        coords = linalg.coordinates(frame, x.ravel()[None, :], p)
        return coords[0, n_rad:]

    for x, y in product(reps, repeat=2):
        if np.any(residue((linalg.matmul(x, y, p) - linalg.matmul(y, x, p)) % p)):
            return False
    frob = np.stack([residue(linalg.matrix_power(x, p, p)) for x in reps], axis=1)
    fixed = linalg.nullspace((frob - np.eye(len(reps), dtype=np.int64)) % p, p)
    return fixed.shape[0] == 1


def endomorphism_matrices(module: GradedModule) -> List[np.ndarray]:
    return [gradedmod.as_matrix(f) for f in gradedmod.hom_space(module, module)]


def _endomorphism_field(module: GradedModule) -> bool:
    """End(H) of a semisimple H is local iff H is simple."""
    return is_local_algebra(endomorphism_matrices(module), module.p)


def _spins_everywhere(module: GradedModule, rng: np.random.Generator, samples: int) -> bool:
    """Every basis vector and `samples` random vectors generate the whole module."""
    n = module.dim
    vectors = list(np.eye(n, dtype=np.int64))
    vectors += [linalg.random_vector(rng, n, module.p) for _ in range(samples)]
    for v in vectors:
        if not np.any(v):
            continue
        if gradedmod.subspace_dim(gradedmod.spin_flat(module, [v])) != n:
            return False
    return True


def is_simple_semisimple(module: GradedModule, seed: Optional[int] = None) -> bool:
    if module.dim == 0:
        return False
    settings = get_settings()
    rng = np.random.default_rng(settings.SEED if seed is None else seed)
    if not _spins_everywhere(module, rng, settings.RANDOM_SIMPLICITY_VECTORS):
        return False
    return _endomorphism_field(module)


def radical_and_head(module: GradedModule, grade: Optional[Grade] = None, method: str = "auto",
                     require_simple: bool = True) -> HeadData:
    """rad M and M/rad M; NotUniqueMax when the head is not simple."""
    rad, used = radical(module, grade, method)
    head, projection = gradedmod.quotient(module, rad, f"hd({module.name})")
    if used == "core":
        tops = top_grades(module, grade)
        levi_top = _levi_top(module, tops)
        top_head, _ = gradedmod.quotient(levi_top, radical_by_algebra(levi_top))
        simple = is_simple_semisimple(top_head)
    else:
        simple = is_simple_semisimple(head)
    if require_simple and not simple:
        raise NotUniqueMax(f"head of '{module.name}' is not simple")
    logger.debug(f"Radical of {module.name} by {used}: dim {gradedmod.subspace_dim(rad)}, head dim {head.dim}")
    return HeadData(radical=rad, head=head, projection=projection, simple=simple, method=used)


def is_simple(module: GradedModule) -> bool:
    if module.dim == 0:
        return False
    data = radical_and_head(module, require_simple=False)
    return not data.radical and data.simple


# Independent check by exhaustive spinning.

def _projective_points(n: int, p: int):
    for lead in range(n):
        for tail in product(range(p), repeat=n - lead - 1):
            v = np.zeros(n, dtype=np.int64)
            v[lead] = 1
            v[lead + 1:] = tail
            yield v


def oracle_radical(module: GradedModule, budget: Optional[int] = None) -> Optional[Subspaces]:
    """Sum of all proper submodules generated by one homogeneous vector.

    Equals rad M for modules with a simple head. None past the point budget.
    """
    p = module.p
    budget = get_settings().ORACLE_POINT_BUDGET if budget is None else budget
    points = sum((p ** module.dims[c] - 1) // (p - 1) for c in module.grades)
    if points > budget:
        return None
    total: Subspaces = {}
    for c in module.grades:
        for v in _projective_points(module.dims[c], p):
            span = gradedmod.spin(module, [(c, v)])
            if gradedmod.subspace_dim(span) < module.dim:
                total = gradedmod.add_spaces(total, span, p)
    return total


# Composition series.

def section_label(module: GradedModule, grade: Grade) -> Tuple[int, ...]:
    """Canonical name of L(λ): the W_{I,p} dot-orbit representative of λ."""
    amb = module.ambient
    return weyl.fundamental_representative(amb.datum, grade, WeylGroup.W_IP, amb.I)


def primitive_vector(module: GradedModule) -> Tuple[Grade, np.ndarray]:
    tops = top_grades(module)
    if not tops:
        datum, I = module.ambient.datum, module.ambient.I
        best = max(weyl.coset_height(datum, I, c) for c in module.grades)
        tops = [c for c in module.grades if weyl.coset_height(datum, I, c) == best][:1]
    levi_pos = [r for r in module.ambient.chi.levi.levi_positive if r in module.ambient.roots]
    kernels = gradedmod.highest_vectors(module, levi_pos)
    for c in tops:
        if c in kernels:
            return c, kernels[c][0]
    c = tops[0]
    return c, np.eye(module.dims[c], dtype=np.int64)[0]


def _series(module: GradedModule) -> Tuple[List[Subspaces], List[GradedModule], List[Grade]]:
    """Steps as subspaces of `module`, simple sections and the grades generating them."""
    if module.dim == 0:
        return [], [], []
    p = module.p
    grade, v = primitive_vector(module)
    cyclic = gradedmod.spin(module, [(grade, v)])
    sub, inclusion = gradedmod.submodule(module, cyclic)
    data = radical_and_head(sub, grade, require_simple=False)

    steps: List[Subspaces] = []
    sections: List[GradedModule] = []
    grades: List[Grade] = []

    rad_mod, rad_inc = gradedmod.submodule(sub, data.radical)
    r_steps, r_sections, r_grades = _series(rad_mod)
    for s in r_steps:
        steps.append(gradedmod.push_spaces(inclusion, gradedmod.push_spaces(rad_inc, s)))
    sections += r_sections
    grades += r_grades

    steps.append(cyclic)
    sections.append(data.head)
    grades.append(grade)

    quot, projection = gradedmod.quotient(module, cyclic)
    q_steps, q_sections, q_grades = _series(quot)
    for s in q_steps:
        steps.append(gradedmod.preimage(projection, s))
    sections += q_sections
    grades += q_grades
    return steps, sections, grades


def composition_series(module: GradedModule) -> FiltrationChain:
    """Chain with simple sections, labelled by their highest grades."""
    require_field(module)
    steps, sections, grades = _series(module)
    labels = [section_label(module, g) for g in grades]
    logger.debug(f"Composition series of {module.name}: length {len(sections)}")
    return FiltrationChain(module=module, steps=steps, sections=sections, labels=labels,
                           witnesses=[None] * len(sections), kind="composition")


def composition_multiplicities(module: GradedModule) -> Dict[Tuple[int, ...], int]:
    counts: Dict[Tuple[int, ...], int] = {}
    for label in composition_series(module).labels:
        counts[label] = counts.get(label, 0) + 1
    return counts
