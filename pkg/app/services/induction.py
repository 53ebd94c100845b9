"""Induction, inflation and regrading functors on the PBW basis."""
import logging
from itertools import product
from typing import Dict, List, Sequence, Tuple

import numpy as np

from app.core import lattice, linalg
from app.core.exceptions import UnsupportedPair, WrongSubalgebra
from app.models.module import Ambient, Grade, GradedModule, Morphism, SubalgebraSpec
from app.services import gradedmod
from app.services.gradedmod import highest_vectors, restrict

logger = logging.getLogger(__name__)

S = SubalgebraSpec

SUPPORTED_PAIRS = {
    (S.U0, S.U), (S.U0, S.B), (S.B, S.U),
    (S.PI_PLUS, S.U), (S.PI_MINUS, S.U),
    (S.UI, S.PI_PLUS), (S.UI, S.PI_MINUS), (S.UI, S.U),
    (S.U0, S.UI), (S.BI, S.UI), (S.U0, S.BI),
}

INFLATIONS = {(S.U0, S.B), (S.U0, S.BI), (S.UI, S.PI_PLUS), (S.UI, S.PI_MINUS)}

Exponents = Tuple[int, ...]
Terms = Dict[Exponents, Tuple[Grade, np.ndarray]]


class Straightener:
    """Action of root vectors on y^a ⊗ m in U(to) ⊗_{U(from)} M.

    `complement` lists the roots acting in `to` but not in `from`, in root
    index order; y^a is the ordered monomial over it with exponents below p.
    A term (c_b, mat) of the result maps M_c to M_{c_b}.
    """

    def __init__(self, module: GradedModule, target: SubalgebraSpec):
        self.module = module
        amb = module.ambient
        self.datum = amb.datum
        self.p = amb.p
        self.target_roots = amb.with_spec(target).roots
        inner = set(amb.roots)
        self.complement = tuple(r for r in self.target_roots if r not in inner)
        self.position = {r: k for k, r in enumerate(self.complement)}
        self._memo: Dict[Tuple[int, Exponents, Grade], Terms] = {}

    def weight(self, exps: Exponents, grade: Grade) -> Tuple[int, ...]:
        w = list(grade)
        for k, a in enumerate(exps):
            if a:
                w = lattice.add(w, lattice.scale(a, self.datum.roots[self.complement[k]]))
        return tuple(w)

    def apply(self, x: int, exps: Exponents, grade: Grade) -> Terms:
        key = (x, exps, grade)
        cached = self._memo.get(key)
        if cached is None:
            cached = self._apply(x, exps, grade)
            self._memo[key] = cached
        return cached

    def _apply(self, x: int, exps: Exponents, grade: Grade) -> Terms:
        m, p = self.module, self.p
        n = m.dim_at(grade)
        eye = np.eye(n, dtype=np.int64)
        first = next((k for k, a in enumerate(exps) if a), None)
        if x in self.position:
            k = self.position[x]
            if first is None or k < first:
                return {_bump(exps, k, 1): (grade, eye)}
            if k == first:
                if exps[k] + 1 < p:
                    return {_bump(exps, k, 1): (grade, eye)}
                chi = m.ambient.chi(x) % p
                return {_bump(exps, k, -exps[k]): (grade, chi * eye % p)} if chi else {}
        elif first is None:
            mat = m.action(x, grade)
            return {exps: (m.ambient.shift(grade, x), mat)} if np.any(mat) else {}

        y = self.complement[first]
        rest = _bump(exps, first, -1)
        out: Terms = {}
        for b, (c_b, mat) in self.apply(x, rest, grade).items():
            for b2, (c_b2, mat2) in self.apply(y, b, c_b).items():
                _accumulate(out, b2, c_b2, linalg.matmul(mat2, mat, p), p)
        if x == self.datum.negative_of(y):
            # [e_x, e_{-x}] = h_x acts on rest ⊗ m through π(h_x) + <weight, x∨>
            alg = m.ambient.algebra
            coroot = np.array(self.datum.coroots[x], dtype=np.int64)
            value = self.datum.pairing(self.weight(rest, grade), x)
            element = (coroot @ alg.pi + value * alg.unit()) % p
            _accumulate(out, rest, grade, m.a_op(grade, element), p)
        elif (x, y) in self.datum.structure:
            delta, n_xy = self.datum.structure[(x, y)]
            for b, (c_b, mat) in self.apply(delta, rest, grade).items():
                _accumulate(out, b, c_b, (n_xy * mat) % p, p)
        return {b: v for b, v in out.items() if np.any(v[1])}


def _bump(exps: Exponents, k: int, delta: int) -> Exponents:
    out = list(exps)
    out[k] += delta
    return tuple(out)


def _accumulate(out: Terms, b: Exponents, grade: Grade, mat: np.ndarray, p: int) -> None:
    if b in out:
        out[b] = (grade, (out[b][1] + mat) % p)
    else:
        out[b] = (grade, mat % p)


def straighten_apply(module: GradedModule, target: SubalgebraSpec, root: int,
                     exps: Exponents, grade: Grade) -> Terms:
    """e_root · (y^exps ⊗ M_grade) in the PBW basis."""
    return Straightener(module, target).apply(root, tuple(exps), tuple(grade))


def induce(module: GradedModule, source: SubalgebraSpec, target: SubalgebraSpec, name: str = "") -> GradedModule:
    """U(target) ⊗_{U(source)} M with its PBW basis.

    meta["blocks"] maps (exponents, grade of M) to (grade, offset) in the result.
    """
    if (source, target) not in SUPPORTED_PAIRS:
        raise UnsupportedPair(f"induction {source.value} → {target.value} is not supported")
    if module.ambient.spec is not source:
        raise WrongSubalgebra(f"module acts through {module.ambient.spec.value}, not {source.value}")
    amb = module.ambient.with_spec(target)
    engine = Straightener(module, target)
    p = module.p
    blocks: Dict[Tuple[Exponents, Grade], Tuple[Grade, int]] = {}
    dims: Dict[Grade, int] = {}
    for exps in product(range(p), repeat=len(engine.complement)):
        for c in module.grades:
            g = amb.reduce(engine.weight(exps, c))
            blocks[(exps, c)] = (g, dims.get(g, 0))
            dims[g] = dims.get(g, 0) + module.dims[c]

    a_ops = {g: [np.zeros((n, n), dtype=np.int64) for _ in range(amb.algebra.dim)] for g, n in dims.items()}
    for (exps, c), (g, off) in blocks.items():
        n = module.dims[c]
        for j in range(amb.algebra.dim):
            a_ops[g][j][off:off + n, off:off + n] = module.a_ops[c][j]

    actions: Dict[Tuple[int, Grade], np.ndarray] = {}
    for x in amb.roots:
        for (exps, c), (g, off) in blocks.items():
            g_to = amb.shift(g, x)
            terms = engine.apply(x, exps, c)
            if not terms:
                continue
            mat = actions.get((x, g))
            if mat is None:
                mat = np.zeros((dims[g_to], dims[g]), dtype=np.int64)
                actions[(x, g)] = mat
            n = module.dims[c]
            for b, (c_b, block) in terms.items():
                g_b, off_b = blocks[(b, c_b)]
                mat[off_b:off_b + module.dims[c_b], off:off + n] += block
    induced = gradedmod.make_module(amb, dims, a_ops, actions, name or f"Ind[{source.value}→{target.value}]({module.name})")
    induced.meta["blocks"] = blocks
    induced.meta["complement"] = engine.complement
    induced.meta["inducing"] = module
    logger.debug(f"Induced {module.name} along {source.value} → {target.value}: dim {induced.dim}")
    return induced


def unit_map(module: GradedModule, induced: GradedModule) -> Morphism:
    """m ↦ 1 ⊗ m as a morphism M → res(Ind M) over the smaller subalgebra."""
    blocks = induced.meta["blocks"]
    zero = tuple(0 for _ in induced.meta["complement"])
    res = restrict(induced, module.ambient.spec)
    maps = {}
    for c in module.grades:
        g, off = blocks[(zero, c)]
        emb = np.zeros((induced.dims[g], module.dims[c]), dtype=np.int64)
        emb[off:off + module.dims[c], :] = np.eye(module.dims[c], dtype=np.int64)
        maps[g] = emb
    return Morphism(module, res, maps)


def inflate(module: GradedModule, target: SubalgebraSpec) -> GradedModule:
    """View M over a larger subalgebra whose extra generators act by zero."""
    source = module.ambient.spec
    if (source, target) not in INFLATIONS:
        raise UnsupportedPair(f"inflation {source.value} → {target.value} is not supported")
    amb = module.ambient.with_spec(target)
    return GradedModule(ambient=amb, dims=dict(module.dims), a_ops=module.a_ops,
                        actions=dict(module.actions), name=module.name, meta=dict(module.meta))


# Regrading between X and X/pZI.

def upsilon(module: GradedModule) -> GradedModule:
    """Collapse an X-graded object onto X/pZI: Υ(M)_c = ⊕_{σ ∈ c} M_σ."""
    amb = module.ambient
    if not amb.graded_by_x:
        return module
    target = Ambient(datum=amb.datum, chi=amb.chi, algebra=amb.algebra, spec=amb.spec,
                     pzi_basis=amb.pzi_basis, graded_by_x=False)
    place: Dict[Grade, Tuple[Grade, int]] = {}
    dims: Dict[Grade, int] = {}
    for sigma in module.grades:
        c = target.reduce(sigma)
        place[sigma] = (c, dims.get(c, 0))
        dims[c] = dims.get(c, 0) + module.dims[sigma]
    a_ops = {c: [np.zeros((n, n), dtype=np.int64) for _ in range(amb.algebra.dim)] for c, n in dims.items()}
    for sigma, (c, off) in place.items():
        n = module.dims[sigma]
        for j in range(amb.algebra.dim):
            a_ops[c][j][off:off + n, off:off + n] = module.a_ops[sigma][j]
    actions: Dict[Tuple[int, Grade], np.ndarray] = {}
    for (r, sigma), mat in module.actions.items():
        tau = amb.shift(sigma, r)
        if tau not in place:
            continue
        c, off = place[sigma]
        c_to, off_to = place[tau]
        block = actions.setdefault((r, c), np.zeros((dims[c_to], dims[c]), dtype=np.int64))
        block[off_to:off_to + module.dims[tau], off:off + module.dims[sigma]] += mat
    return gradedmod.make_module(target, dims, a_ops, actions, f"Υ({module.name})")


def lift_grading(module: GradedModule) -> GradedModule:
    """X-graded lift of a U^0-object, each grade placed at its reduced representative."""
    amb = module.ambient
    if amb.spec is not S.U0:
        raise WrongSubalgebra("grading lifts are built for U^0-objects")
    target = Ambient(datum=amb.datum, chi=amb.chi, algebra=amb.algebra, spec=amb.spec,
                     pzi_basis=amb.pzi_basis, graded_by_x=True)
    return GradedModule(ambient=target, dims=dict(module.dims), a_ops=module.a_ops, actions={},
                        name=f"lift({module.name})")


# Frobenius reciprocity.

def frobenius_check(module: GradedModule, other: GradedModule, source: SubalgebraSpec,
                    target: SubalgebraSpec) -> dict:
    """Compare Hom(Ind M, N) with Hom(M, res N) through the unit of the adjunction."""
    induced = induce(module, source, target)
    res = restrict(other, source)
    left = gradedmod.hom_space(induced, other)
    right = gradedmod.hom_space(module, res)
    unit = unit_map(module, induced)
    images: List[np.ndarray] = []
    for f in left:
        f_res = Morphism(unit.target, res, f.maps)
        images.append(gradedmod.compose(f_res, unit).flatten())
    rank = linalg.rank(np.stack(images), module.p) if images else 0
    return {
        "pair": [source.value, target.value],
        "dim_induced_side": len(left),
        "dim_restricted_side": len(right),
        "canonical_map_rank": rank,
        "ok": len(left) == len(right) == rank,
    }


def highest_grade_vectors(module: GradedModule) -> List[Tuple[Grade, np.ndarray]]:
    """Homogeneous vectors killed by every acting positive root vector."""
    out = []
    for c, kern in sorted(highest_vectors(module).items()):
        out.extend((c, row) for row in kern)
    return out


def lambda_object(ambient: Ambient, weight: Sequence[int]) -> GradedModule:
    """A^λ: a free A-module of rank one in the grade of λ, over U^0."""
    amb = ambient.with_spec(S.U0)
    alg = amb.algebra
    c = amb.reduce(weight)
    ops = [alg.right_mult(j) for j in range(alg.dim)]
    return gradedmod.make_module(amb, {c: alg.dim}, {c: ops}, {}, f"A^{list(weight)}")


def free_cover(ambient: Ambient, weight: Sequence[int]) -> GradedModule:
    """Projective module over the ambient's subalgebra generated by 1 ⊗ 1 in the grade of λ."""
    base = lambda_object(ambient, weight)
    spec = ambient.spec
    if spec is S.U0:
        return base
    if spec in (S.PI_PLUS, S.PI_MINUS):
        return induce(induce(base, S.U0, S.UI), S.UI, spec)
    return induce(base, S.U0, spec)


def _generator_position(module: GradedModule) -> Tuple[Grade, int]:
    if "blocks" not in module.meta:
        return module.grades[0], 0
    inner_grade, inner_off = _generator_position(module.meta["inducing"])
    zero = tuple(0 for _ in module.meta["complement"])
    grade, off = module.meta["blocks"][(zero, inner_grade)]
    return grade, off + inner_off


def cover_generator(cover: GradedModule) -> Tuple[Grade, np.ndarray]:
    """The vector 1 ⊗ 1 of a free cover."""
    grade, offset = _generator_position(cover)
    v = np.zeros(cover.dims[grade], dtype=np.int64)
    v[offset] = 1
    return grade, v
