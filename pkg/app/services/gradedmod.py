"""Objects and morphisms of the graded category: validation, Hom, sub/quotient modules, spin."""
import logging
from collections import deque
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from app.core import linalg
from app.core.exceptions import (AmbientMismatch, InternalInvariantViolated, InvalidInput, NotIdempotent,
                                 WrongSubalgebra)
from app.models.algebra import BaseAlgebra
from app.models.module import (
    Ambient,
    Grade,
    GradedModule,
    Morphism,
    SubalgebraSpec,
    Subspaces,
)
from app.services import weyl
from app.services.coeff import maximal_ideal, residue_quotient

logger = logging.getLogger(__name__)


# Construction.

def make_ambient(datum, chi, algebra: BaseAlgebra, spec: SubalgebraSpec = SubalgebraSpec.U,
                 graded_by_x: bool = False) -> Ambient:
    if algebra.p != datum.p or algebra.rank != datum.d:
        raise InvalidInput(f"{algebra.label} does not match {datum.label} over F_{datum.p}")
    return Ambient(datum=datum, chi=chi, algebra=algebra, spec=spec,
                   pzi_basis=weyl.pzi_basis(datum, chi.levi.I), graded_by_x=graded_by_x)


def make_module(ambient: Ambient, dims: Dict[Grade, int], a_ops: Dict[Grade, List[np.ndarray]],
                actions: Dict[Tuple[int, Grade], np.ndarray], name: str = "", meta: Optional[dict] = None) -> GradedModule:
    p = ambient.p
    dims = {c: int(n) for c, n in dims.items() if n > 0}
    ops = {c: [np.asarray(a, dtype=np.int64) % p for a in a_ops[c]] for c in dims}
    acts = {}
    for (r, c), mat in actions.items():
        if c not in dims:
            continue
        mat = np.asarray(mat, dtype=np.int64) % p
        if mat.size and np.any(mat):
            acts[(r, c)] = mat
    return GradedModule(ambient=ambient, dims=dims, a_ops=ops, actions=acts, name=name, meta=meta or {})


def zero_module(ambient: Ambient, name: str = "0") -> GradedModule:
    return GradedModule(ambient=ambient, dims={}, a_ops={}, actions={}, name=name)


def scalar_ops(algebra: BaseAlgebra, n: int) -> List[np.ndarray]:
    """A-operators on a direct sum of n copies of the field A/𝔪 = A (fields only)."""
    return [np.kron(np.eye(n, dtype=np.int64), algebra.right_mult(j)) for j in range(algebra.dim)]


def check_ambient(m: GradedModule, n: GradedModule) -> None:
    if not m.ambient.compatible(n.ambient):
        raise AmbientMismatch(f"'{m.name}' and '{n.name}' live in different categories")


# Validation.

def validate(module: GradedModule) -> List[dict]:
    """Violations of the module axioms; an empty list means valid."""
    amb = module.ambient
    p, alg, datum = module.p, amb.algebra, amb.datum
    acting = set(amb.roots)
    report: List[dict] = []

    def flag(condition: str, grade, generator, detail: str) -> None:
        report.append({"condition": condition, "grade": list(grade), "generator": generator, "detail": detail})

    for c in module.grades:
        n = module.dims[c]
        ops = module.a_ops.get(c, [])
        if len(ops) != alg.dim or any(op.shape != (n, n) for op in ops):
            flag("A'", c, "A", "A-operators missing or of the wrong shape")
            continue
        if not np.array_equal(ops[0] % p, np.eye(n, dtype=np.int64)):
            flag("A'", c, "b_0", "unit does not act as identity")
        for i in range(alg.dim):
            for j in range(alg.dim):
                prod = linalg.matmul(ops[j], ops[i], p)
                expected = module.a_op(c, alg.mult[i, j] % p)
                if not np.array_equal(prod, expected):
                    flag("A'", c, f"b_{i}b_{j}", "A-action is not multiplicative")

    for (r, c), mat in module.actions.items():
        target = amb.shift(c, r)
        if r not in acting:
            flag("C'", c, r, "root does not act in this category")
            continue
        if mat.shape != (module.dim_at(target), module.dim_at(c)):
            flag("C'", c, r, f"action does not land in grade {list(target)}")
            continue
        for j, op in enumerate(module.a_ops.get(c, [])):
            if target in module.dims and not np.array_equal(
                    linalg.matmul(mat, op, p), linalg.matmul(module.a_ops[target][j], mat, p)):
                flag("A-linear", c, r, f"action does not commute with b_{j}")
    if any(v["condition"] == "C'" for v in report):
        return report

    for r in acting:
        chi_r = amb.chi(r)
        for c in module.grades:
            comp = np.eye(module.dims[c], dtype=np.int64)
            grade = c
            for _ in range(p):
                comp = linalg.matmul(module.action(r, grade), comp, p)
                grade = amb.shift(grade, r)
            if grade == c:
                ok = np.array_equal(comp, (chi_r * np.eye(module.dims[c], dtype=np.int64)) % p)
            else:
                ok = chi_r == 0 and not np.any(comp)
            if not ok:
                flag("p-power", c, r, "e^p does not act by χ(e)^p")

    for a in acting:
        for b in acting:
            if b <= a:
                continue
            for c in module.grades:
                # e_a e_b - e_b e_a on M_c
                lhs = (linalg.matmul(module.action(a, amb.shift(c, b)), module.action(b, c), p)
                       - linalg.matmul(module.action(b, amb.shift(c, a)), module.action(a, c), p)) % p
                rhs = np.zeros_like(lhs)
                if b == datum.negative_of(a):
                    for i, coeff in enumerate(datum.coroots[a]):
                        if coeff:
                            rhs = (rhs + coeff * module.toral(i, c)) % p
                elif (a, b) in datum.structure:
                    k, n_ab = datum.structure[(a, b)]
                    rhs = (n_ab * module.action(k, c)) % p
                if not np.array_equal(lhs, rhs):
                    flag("bracket", c, [a, b], "commutator does not match the structure constants")
    return report


# Spin with tracked images: the engine behind spin, Hom and morphism extension.

class _Closure:
    """Closure of seed vectors under the acting generators.

    Each echelon row carries a payload: its image under the morphism being
    solved for, written in terms of the unknowns. Dependent vectors turn
    their residual payload into linear constraints on the unknowns.
    """

    def __init__(self, module: GradedModule, target: Optional[GradedModule] = None, width: int = 0):
        self.module = module
        self.target = target
        self.width = width
        self.p = module.p
        self.echelons = {c: linalg.SemiEchelon(module.dims[c], self.p) for c in module.grades}
        self.constraints = linalg.SemiEchelon(width, self.p) if target is not None else None
        self.failed = False
        self._queue: deque = deque()

    def push(self, grade: Grade, vector: np.ndarray, payload: Optional[np.ndarray]) -> None:
        ech = self.echelons.get(grade)
        if ech is None:
            if payload is not None and np.any(payload % self.p):
                self._constrain(payload)
            return
        added, residual = ech.add(vector, payload)
        if added:
            self._queue.append((grade, len(ech) - 1))
        elif residual is not None and np.any(residual):
            self._constrain(residual)

    def _constrain(self, rows: np.ndarray) -> None:
        rows = rows.reshape(-1, self.width) if self.width else rows.reshape(-1, 1)
        if self.constraints is None or self.width == 0:
            self.failed = self.failed or bool(np.any(rows))
            return
        for row in rows:
            self.constraints.add(row)

    def close(self) -> None:
        m, n = self.module, self.target
        roots = m.ambient.roots
        alg_dim = m.ambient.algebra.dim
        while self._queue:
            grade, idx = self._queue.popleft()
            ech = self.echelons[grade]
            v = ech.rows[idx]
            pay = ech.payloads[idx]
            for r in roots:
                tgt = m.ambient.shift(grade, r)
                w = linalg.matmul(m.action(r, grade), v[:, None], self.p)[:, 0]
                img = None if pay is None else linalg.matmul(n.action(r, grade), pay, self.p)
                self.push(tgt, w, img)
            for j in range(1, alg_dim):
                w = linalg.matmul(m.a_ops[grade][j], v[:, None], self.p)[:, 0]
                img = None if pay is None else linalg.matmul(n.a_ops[grade][j], pay, self.p) \
                    if n.dim_at(grade) else pay
                self.push(grade, w, img)

    def subspaces(self) -> Subspaces:
        return {c: e.matrix() for c, e in self.echelons.items() if len(e)}

    def full(self) -> bool:
        return all(len(e) == self.module.dims[c] for c, e in self.echelons.items())

    def maps_for(self, u: np.ndarray) -> Dict[Grade, np.ndarray]:
        """f_c = Img · (B_c^T)^{-1} for a solution u of the constraints."""
        maps = {}
        for c, ech in self.echelons.items():
            rows_n = self.target.dim_at(c)
            if rows_n == 0:
                continue
            basis = ech.matrix()
            img = np.stack([linalg.matmul(pay, u[:, None], self.p)[:, 0] for pay in ech.payloads], axis=1)
            maps[c] = linalg.matmul(img, linalg.inverse(basis.T, self.p), self.p)
        return maps


def _grade_order(module: GradedModule) -> List[Grade]:
    datum = module.ambient.datum
    return sorted(module.grades, key=lambda c: (-weyl.height(datum, c), c))


def spin(module: GradedModule, seeds: Iterable[Tuple[Grade, np.ndarray]]) -> Subspaces:
    """Smallest submodule containing the homogeneous seed vectors."""
    closure = _Closure(module)
    for grade, vec in seeds:
        closure.push(tuple(grade), np.asarray(vec, dtype=np.int64) % module.p, None)
    closure.close()
    return closure.subspaces()


def split_homogeneous(module: GradedModule, flat: np.ndarray) -> List[Tuple[Grade, np.ndarray]]:
    out = []
    for c, off in module.offsets().items():
        part = flat[off:off + module.dims[c]] % module.p
        if np.any(part):
            out.append((c, part))
    return out


def spin_flat(module: GradedModule, vectors: Iterable[np.ndarray]) -> Subspaces:
    seeds = []
    for v in vectors:
        seeds.extend(split_homogeneous(module, np.asarray(v, dtype=np.int64)))
    return spin(module, seeds)


def generators(module: GradedModule) -> List[Tuple[Grade, np.ndarray]]:
    """Greedy homogeneous generating set, highest grades first."""
    closure = _Closure(module)
    gens = []
    for c in _grade_order(module):
        for i in range(module.dims[c]):
            e = np.zeros(module.dims[c], dtype=np.int64)
            e[i] = 1
            if closure.echelons[c].contains(e):
                continue
            gens.append((c, e))
            closure.push(c, e, None)
            closure.close()
    return gens


def subspace_dim(spaces: Subspaces) -> int:
    return sum(s.shape[0] for s in spaces.values())


def hom_space(source: GradedModule, target: GradedModule) -> List[Morphism]:
    """F_p-basis of Hom(source, target)."""
    check_ambient(source, target)
    p = source.p
    gens = generators(source)
    width = sum(target.dim_at(c) for c, _ in gens)
    closure = _Closure(source, target, width)
    col = 0
    for c, v in gens:
        k = target.dim_at(c)
        pay = np.zeros((k, width), dtype=np.int64)
        pay[:, col:col + k] = np.eye(k, dtype=np.int64)
        col += k
        closure.push(c, v, pay)
        closure.close()
    solutions = linalg.nullspace(closure.constraints.matrix(), p) if width else np.zeros((0, 0), dtype=np.int64)
    basis = [Morphism(source, target, closure.maps_for(u)) for u in solutions]
    logger.debug(f"Hom({source.name}, {target.name}): {len(gens)} generators, dim {len(basis)}")
    return basis


def extend_from_generators(source: GradedModule, target: GradedModule,
                           assignments: Sequence[Tuple[Grade, np.ndarray, np.ndarray]]) -> Optional[Morphism]:
    """The morphism sending each generator to its image, or None if none exists."""
    check_ambient(source, target)
    closure = _Closure(source, target, 1)
    for grade, vec, img in assignments:
        closure.push(tuple(grade), np.asarray(vec, dtype=np.int64) % source.p,
                     (np.asarray(img, dtype=np.int64) % source.p).reshape(-1, 1))
        closure.close()
    if not closure.full():
        raise InternalInvariantViolated("the given vectors do not generate the source module")
    if len(closure.constraints):
        return None
    return Morphism(source, target, closure.maps_for(np.ones(1, dtype=np.int64)))


# Morphism algebra.

def identity(module: GradedModule) -> Morphism:
    return Morphism(module, module, {c: np.eye(module.dims[c], dtype=np.int64) for c in module.grades})


def zero_morphism(source: GradedModule, target: GradedModule) -> Morphism:
    return Morphism(source, target, {})


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g ∘ f."""
    p = f.source.p
    return Morphism(f.source, g.target, {c: linalg.matmul(g.at(c), f.at(c), p) for c in f.source.grades
                                         if g.target.dim_at(c)})


def combine(morphisms: Sequence[Morphism], coeffs: Sequence[int]) -> Morphism:
    src, tgt = morphisms[0].source, morphisms[0].target
    p = src.p
    maps = {}
    for c in src.grades:
        if not tgt.dim_at(c):
            continue
        acc = np.zeros((tgt.dim_at(c), src.dim_at(c)), dtype=np.int64)
        for f, k in zip(morphisms, coeffs):
            if k:
                acc = acc + int(k) * f.at(c)
        maps[c] = acc % p
    return Morphism(src, tgt, maps)


def as_matrix(f: Morphism) -> np.ndarray:
    """f as one block matrix between the flattened spaces."""
    src, tgt = f.source.offsets(), f.target.offsets()
    mat = np.zeros((f.target.dim, f.source.dim), dtype=np.int64)
    for c, o in src.items():
        if c in tgt:
            mat[tgt[c]:tgt[c] + f.target.dims[c], o:o + f.source.dims[c]] = f.at(c)
    return mat


def is_isomorphism(f: Morphism) -> bool:
    p = f.source.p
    if f.source.dims != f.target.dims:
        return False
    return all(linalg.is_invertible(f.at(c), p) for c in f.source.grades)


def inverse_morphism(f: Morphism) -> Morphism:
    p = f.source.p
    return Morphism(f.target, f.source, {c: linalg.inverse(f.at(c), p) for c in f.source.grades})


def equal_morphisms(f: Morphism, g: Morphism) -> bool:
    p = f.source.p
    return all(np.array_equal(f.at(c) % p, g.at(c) % p) for c in f.source.grades)


def is_morphism(f: Morphism) -> bool:
    """Commutes with every acting root vector and with A."""
    src, tgt, p = f.source, f.target, f.source.p
    for c in src.grades:
        for r in src.ambient.roots:
            t = src.ambient.shift(c, r)
            lhs = linalg.matmul(f.at(t), src.action(r, c), p)
            rhs = linalg.matmul(tgt.action(r, c), f.at(c), p)
            if lhs.shape == rhs.shape and not np.array_equal(lhs, rhs):
                return False
        for j in range(src.ambient.algebra.dim):
            if tgt.dim_at(c) and not np.array_equal(linalg.matmul(f.at(c), src.a_ops[c][j], p),
                                                    linalg.matmul(tgt.a_ops[c][j], f.at(c), p)):
                return False
    return True


# Submodules, quotients, kernels, images.

def submodule(module: GradedModule, spaces: Subspaces, name: str = "") -> Tuple[GradedModule, Morphism]:
    """Submodule with basis rows `spaces[c]` and its inclusion."""
    p = module.p
    spaces = {c: s for c, s in spaces.items() if s.shape[0]}
    dims = {c: s.shape[0] for c, s in spaces.items()}
    a_ops, actions = {}, {}
    for c, s in spaces.items():
        ops = []
        for op in module.a_ops[c]:
            coords = linalg.coordinates(s, linalg.matmul(s, op.T, p), p)
            if coords is None:
                raise InternalInvariantViolated("subspaces are not stable under A")
            ops.append(coords.T)
        a_ops[c] = ops
        for r in module.ambient.roots:
            t = module.ambient.shift(c, r)
            images = linalg.matmul(s, module.action(r, c).T, p)
            if not np.any(images):
                continue
            coords = linalg.coordinates(spaces[t], images, p) if t in spaces else None
            if coords is None:
                raise InternalInvariantViolated("subspaces are not stable under the action")
            actions[(r, c)] = coords.T
    sub = make_module(module.ambient, dims, a_ops, actions, name or f"sub({module.name})")
    inclusion = Morphism(sub, module, {c: s.T.copy() for c, s in spaces.items()})
    return sub, inclusion


def _complement_data(s: Optional[np.ndarray], n: int, p: int):
    """Complement rows and the projection onto complement coordinates."""
    if s is None:
        s = np.zeros((0, n), dtype=np.int64)
    comp = linalg.complement_basis(s, n, p)
    stack = np.concatenate([s, comp], axis=0)
    inv = linalg.inverse(stack, p)
    projection = inv[:, s.shape[0]:].T.copy()
    return comp, projection


def quotient(module: GradedModule, spaces: Subspaces, name: str = "") -> Tuple[GradedModule, Morphism]:
    """M / S and the projection M → M/S."""
    p = module.p
    comps, projs = {}, {}
    for c in module.grades:
        comps[c], projs[c] = _complement_data(spaces.get(c), module.dims[c], p)
    dims = {c: comps[c].shape[0] for c in module.grades}
    a_ops, actions = {}, {}
    for c in module.grades:
        if not dims[c]:
            continue
        a_ops[c] = [linalg.matmul(projs[c], linalg.matmul(op, comps[c].T, p), p) for op in module.a_ops[c]]
        for r in module.ambient.roots:
            t = module.ambient.shift(c, r)
            if not dims.get(t):
                continue
            mat = linalg.matmul(projs[t], linalg.matmul(module.action(r, c), comps[c].T, p), p)
            if np.any(mat):
                actions[(r, c)] = mat
    q = make_module(module.ambient, dims, a_ops, actions, name or f"quot({module.name})")
    projection = Morphism(module, q, {c: projs[c] for c in module.grades if dims[c]})
    return q, projection


def kernel(f: Morphism) -> Tuple[GradedModule, Morphism]:
    spaces = {c: linalg.nullspace(f.at(c), f.source.p) for c in f.source.grades}
    return submodule(f.source, spaces, f"ker→{f.target.name}")


def image_spaces(f: Morphism) -> Subspaces:
    p = f.source.p
    out = {}
    for c in f.target.grades:
        if f.source.dim_at(c):
            basis = linalg.row_basis(f.at(c).T, p)
            if basis.shape[0]:
                out[c] = basis
    return out


def image(f: Morphism) -> Tuple[GradedModule, Morphism]:
    return submodule(f.target, image_spaces(f), f"im({f.source.name})")


def cokernel(f: Morphism) -> Tuple[GradedModule, Morphism]:
    return quotient(f.target, image_spaces(f), f"coker({f.source.name})")


def preimage(f: Morphism, spaces: Subspaces) -> Subspaces:
    """f^{-1}(S) for a submodule S of the target."""
    p = f.source.p
    out = {}
    for c in f.source.grades:
        fc = f.at(c)
        s = spaces.get(c)
        if s is None or not s.shape[0]:
            out[c] = linalg.nullspace(fc, p) if fc.shape[0] else np.eye(f.source.dims[c], dtype=np.int64)
            continue
        annihilator = linalg.nullspace(s, p)
        out[c] = linalg.nullspace(linalg.matmul(annihilator, fc, p), p) if annihilator.shape[0] \
            else np.eye(f.source.dims[c], dtype=np.int64)
    return {c: s for c, s in out.items() if s.shape[0]}


def push_spaces(f: Morphism, spaces: Subspaces) -> Subspaces:
    """f(S) as subspaces of the target."""
    p = f.source.p
    out = {}
    for c, s in spaces.items():
        if f.target.dim_at(c):
            basis = linalg.row_basis(linalg.matmul(s, f.at(c).T, p), p)
            if basis.shape[0]:
                out[c] = basis
    return out


def add_spaces(a: Subspaces, b: Subspaces, p: int) -> Subspaces:
    out = dict(a)
    for c, s in b.items():
        out[c] = linalg.row_basis(np.concatenate([out[c], s], axis=0), p) if c in out else s
    return out


def direct_sum(*modules: GradedModule, name: str = "") -> Tuple[GradedModule, List[Morphism], List[Morphism]]:
    """⊕ M_k with its canonical inclusions and projections."""
    if not modules:
        raise InvalidInput("direct sum of nothing")
    for m in modules[1:]:
        check_ambient(modules[0], m)
    p = modules[0].p
    amb = modules[0].ambient
    grades = sorted({c for m in modules for c in m.grades})
    dims = {c: sum(m.dim_at(c) for m in modules) for c in grades}
    a_ops, actions = {}, {}
    offsets = {c: [] for c in grades}
    for c in grades:
        pos = 0
        for m in modules:
            offsets[c].append(pos)
            pos += m.dim_at(c)
        ops = []
        for j in range(amb.algebra.dim):
            block = np.zeros((dims[c], dims[c]), dtype=np.int64)
            for m, off in zip(modules, offsets[c]):
                n = m.dim_at(c)
                if n:
                    block[off:off + n, off:off + n] = m.a_ops[c][j]
            ops.append(block)
        a_ops[c] = ops
    for c in grades:
        for r in amb.roots:
            t = amb.shift(c, r)
            if t not in dims:
                continue
            block = np.zeros((dims[t], dims[c]), dtype=np.int64)
            for k, m in enumerate(modules):
                if m.dim_at(c) and m.dim_at(t):
                    block[offsets[t][k]:offsets[t][k] + m.dim_at(t),
                          offsets[c][k]:offsets[c][k] + m.dim_at(c)] = m.action(r, c)
            actions[(r, c)] = block
    total = make_module(amb, dims, a_ops, actions, name or "⊕".join(m.name for m in modules))
    inclusions, projections = [], []
    for k, m in enumerate(modules):
        inc, proj = {}, {}
        for c in m.grades:
            n = m.dims[c]
            emb = np.zeros((dims[c], n), dtype=np.int64)
            emb[offsets[c][k]:offsets[c][k] + n, :] = np.eye(n, dtype=np.int64)
            inc[c] = emb
            proj[c] = emb.T.copy()
        inclusions.append(Morphism(m, total, inc))
        projections.append(Morphism(total, m, proj))
    return total, inclusions, projections


def summand_project(module: GradedModule, idempotent: Morphism) -> Tuple[GradedModule, Morphism, Morphism]:
    """Image of an idempotent e with inclusion and projection (e = inc ∘ proj)."""
    if not equal_morphisms(compose(idempotent, idempotent), idempotent):
        raise NotIdempotent("e ∘ e != e")
    summand, inclusion = image(idempotent)
    p = module.p
    proj = {}
    for c in summand.grades:
        coords = linalg.coordinates(inclusion.at(c).T, idempotent.at(c).T, p)
        proj[c] = coords.T
    return summand, inclusion, Morphism(module, summand, proj)


def restrict(module: GradedModule, spec: SubalgebraSpec) -> GradedModule:
    """Forget the action of every root outside the smaller subalgebra."""
    amb = module.ambient.with_spec(spec)
    keep = set(amb.roots)
    if not keep <= set(module.ambient.roots):
        raise WrongSubalgebra(f"{spec.value} is not contained in {module.ambient.spec.value}")
    actions = {(r, c): mat for (r, c), mat in module.actions.items() if r in keep}
    return GradedModule(ambient=amb, dims=dict(module.dims), a_ops=module.a_ops, actions=actions,
                        name=f"{module.name}|{spec.value}", meta=dict(module.meta))


def highest_vectors(module: GradedModule, roots: Optional[Sequence[int]] = None) -> Subspaces:
    """Common kernel of the acting positive root vectors, grade by grade."""
    datum = module.ambient.datum
    if roots is None:
        roots = [r for r in module.ambient.roots if datum.is_positive(r)]
    out = {}
    for c in module.grades:
        blocks = [module.action(r, c) for r in roots]
        blocks = [b for b in blocks if b.shape[0]]
        if blocks:
            kern = linalg.nullspace(np.concatenate(blocks, axis=0), module.p)
        else:
            kern = np.eye(module.dims[c], dtype=np.int64)
        if kern.shape[0]:
            out[c] = kern
    return out


def grade_decompose(module: GradedModule) -> List[Tuple[Tuple[int, ...], GradedModule]]:
    """Split a U^I-module along X/ZI."""
    if module.ambient.spec is not SubalgebraSpec.UI:
        raise WrongSubalgebra("grade_decompose needs a U^I-module")
    datum, I = module.ambient.datum, module.ambient.I
    pieces: Dict[Tuple[int, ...], Subspaces] = {}
    for c in module.grades:
        key = weyl.reduce_zi(datum, I, c)
        pieces.setdefault(key, {})[c] = np.eye(module.dims[c], dtype=np.int64)
    out = []
    for key in sorted(pieces):
        sub, _ = submodule(module, pieces[key], f"{module.name}[{list(key)}]")
        out.append((key, sub))
    return out


# Change of coefficients.

def base_change(module: GradedModule, target: BaseAlgebra, phi: np.ndarray) -> GradedModule:
    """M ⊗_A A' along the algebra map φ: A → A' (matrix of shape (dim A', dim A)).

    The result's structure map is φ∘π.
    """
    amb = module.ambient
    src, p = amb.algebra, module.p
    phi = np.asarray(phi, dtype=np.int64) % p
    new_alg = target.with_pi((src.pi @ phi.T) % p)
    m2 = target.dim
    comps, projs = {}, {}
    for c in module.grades:
        n = module.dims[c]
        relations = []
        # (v·a) ⊗ b - v ⊗ φ(a)b
        for j in range(src.dim):
            left = np.kron(module.a_ops[c][j], np.eye(m2, dtype=np.int64))
            right = np.kron(np.eye(n, dtype=np.int64), target.mult_by(phi[:, j]))
            relations.append((left - right) % p)
        rel = linalg.row_basis(np.concatenate([r.T for r in relations], axis=0), p)
        comps[c], projs[c] = _complement_data(rel, n * m2, p)
    dims = {c: comps[c].shape[0] for c in module.grades}
    a_ops, actions = {}, {}
    for c in module.grades:
        n = module.dims[c]
        if not dims[c]:
            continue
        a_ops[c] = [linalg.matmul(projs[c], linalg.matmul(np.kron(np.eye(n, dtype=np.int64), target.right_mult(j)),
                                                          comps[c].T, p), p) for j in range(m2)]
        for r in amb.roots:
            t = amb.shift(c, r)
            if not dims.get(t):
                continue
            act = np.kron(module.action(r, c), np.eye(m2, dtype=np.int64))
            actions[(r, c)] = linalg.matmul(projs[t], linalg.matmul(act, comps[c].T, p), p)
    return make_module(amb.with_algebra(new_alg), dims, a_ops, actions, f"{module.name}⊗{target.label}")


def restrict_scalars(module: GradedModule, source: BaseAlgebra, phi: np.ndarray) -> GradedModule:
    """View a module over A' as a module over A through φ: A → A'."""
    amb = module.ambient
    p = module.p
    phi = np.asarray(phi, dtype=np.int64) % p
    if not np.array_equal((source.pi @ phi.T) % p, amb.algebra.pi % p):
        raise InvalidInput("φ∘π_A does not match the structure map of the module")
    a_ops = {c: [module.a_op(c, phi[:, j]) for j in range(source.dim)] for c in module.grades}
    return make_module(amb.with_algebra(source), dict(module.dims), a_ops, dict(module.actions),
                       f"{module.name}|{source.label}")


def is_free(module: GradedModule) -> bool:
    """Every grade is a free A-module."""
    alg = module.ambient.algebra
    field, _ = residue_quotient(alg)
    ideal = maximal_ideal(alg)
    ratio = alg.dim // field.dim
    for c in module.grades:
        n = module.dims[c]
        images = [module.a_op(c, x) for x in ideal]
        span = linalg.rank(np.concatenate(images, axis=1), module.p) if images else 0
        if n != ratio * (n - span):
            return False
    return True


# JSON dump.

def _triples(mat: np.ndarray) -> List[List[int]]:
    return [[int(i), int(j), int(mat[i, j])] for i, j in np.argwhere(mat)]


def module_to_dict(module: GradedModule) -> dict:
    amb = module.ambient
    return {
        "name": module.name,
        "datum": amb.datum.label,
        "p": amb.p,
        "I": list(amb.I),
        "algebra": amb.algebra.label,
        "spec": amb.spec.value,
        "graded_by_x": amb.graded_by_x,
        "dim": module.dim,
        "grades": [{"grade": list(c), "dim": module.dims[c],
                    "a_ops": [_triples(op) for op in module.a_ops[c]]} for c in module.grades],
        "actions": [{"root": list(amb.datum.roots[r]), "grade": list(c), "entries": _triples(mat)}
                    for (r, c), mat in sorted(module.actions.items())],
    }


def module_from_dict(data: dict, ambient: Ambient) -> GradedModule:
    dims, a_ops, actions = {}, {}, {}
    for g in data["grades"]:
        c = tuple(g["grade"])
        n = g["dim"]
        dims[c] = n
        ops = []
        for trip in g["a_ops"]:
            op = np.zeros((n, n), dtype=np.int64)
            for i, j, v in trip:
                op[i, j] = v
            ops.append(op)
        a_ops[c] = ops
    for a in data["actions"]:
        r = ambient.datum.root_index[tuple(a["root"])]
        c = tuple(a["grade"])
        t = ambient.shift(c, r)
        mat = np.zeros((dims.get(t, 0), dims[c]), dtype=np.int64)
        for i, j, v in a["entries"]:
            mat[i, j] = v
        actions[(r, c)] = mat
    return make_module(ambient, dims, a_ops, actions, data.get("name", ""))
