"""Distinguished objects: baby Vermas, simple heads, projective covers and their filtrations."""
import logging
from collections import Counter
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from app.core import lattice, linalg
from app.core.exceptions import (
    EngineError,
    Inconclusive,
    InvalidInput,
    LeviVanishingViolated,
    NoKnownZFiltration,
    NotInOrbit,
    NotLocal,
    NotProjective,
)
from app.models.module import (
    Ambient,
    FiltrationChain,
    Grade,
    GradedModule,
    Morphism,
    MultiplicityTable,
    Subspaces,
    SubalgebraSpec,
)
from app.models.weyl import WeylGroup, Window
from app.services import coeff, decompose, gradedmod, induction, radical, weyl

logger = logging.getLogger(__name__)

S = SubalgebraSpec

LEVELS = ("full", "levi")


def _levi_roots(ambient: Ambient, level: str) -> Tuple[int, ...]:
    if level == "full":
        return tuple(range(len(ambient.datum.roots)))
    return ambient.chi.levi.levi_roots


def require_vanishing(ambient: Ambient, level: str = "levi", pi: Optional[np.ndarray] = None) -> None:
    """π(h_α) = 0 for every α in R (full) or R_I (levi)."""
    algebra = ambient.algebra if pi is None else ambient.algebra.with_pi(pi)
    if not coeff.check_levi_vanishing(algebra, ambient.datum, _levi_roots(ambient, level)):
        raise LeviVanishingViolated(f"π(h_α) != 0 for some α in R{'' if level == 'full' else '_I'}")


def _residue_degree(ambient: Ambient) -> int:
    field, _ = coeff.residue_quotient(ambient.algebra)
    return field.dim


def _mark(module: GradedModule, name: str) -> GradedModule:
    module.name = name
    module.meta["z_filtered"] = True
    return module


# Baby Vermas and simple heads.

def baby_verma(ambient: Ambient, weight: Sequence[int], level: str = "full") -> GradedModule:
    """Z(λ) over U (full) or Z_I(λ) over U^I (levi), generated by 1 ⊗ 1."""
    if level not in LEVELS:
        raise InvalidInput(f"unknown level '{level}'")
    base = induction.lambda_object(ambient, weight)
    if level == "full":
        module = induction.induce(induction.inflate(base, S.B), S.B, S.U)
        return _mark(module, f"Z({list(weight)})")
    module = induction.induce(induction.inflate(base, S.BI), S.BI, S.UI)
    return _mark(module, f"Z_I({list(weight)})")


def verma_generator(module: GradedModule) -> Tuple[Grade, np.ndarray]:
    return induction.cover_generator(module)


def phi(ambient: Ambient, weight: Sequence[int]) -> GradedModule:
    """Φ(λ) = U ⊗_{U^0} A^λ."""
    module = induction.free_cover(ambient.with_spec(S.U), weight)
    return _mark(module, f"Φ({list(weight)})")


def simple_head(ambient: Ambient, weight: Sequence[int], level: str = "full") -> GradedModule:
    z = baby_verma(ambient, weight, level)
    radical.require_field(z)
    data = radical.radical_and_head(z, ambient.reduce(weight))
    head = data.head
    head.name = f"L({list(weight)})" if level == "full" else f"L_I({list(weight)})"
    return head


def is_absolutely_irreducible(module: GradedModule) -> bool:
    """End(L) is the ground field itself."""
    return len(gradedmod.hom_space(module, module)) == _residue_degree(module.ambient)


# Explicit isomorphisms between baby Vermas.

def _lower(module: GradedModule, grade: Grade, vec: np.ndarray, root: int, times: int) -> Tuple[Grade, np.ndarray]:
    p = module.p
    for _ in range(times):
        vec = linalg.matmul(module.action(root, grade), vec[:, None], p)[:, 0]
        grade = module.ambient.shift(grade, root)
    return grade, vec


def _elementary_map(source: GradedModule, target: GradedModule, target_grade: Grade, i: int) -> Morphism:
    """Z(s_i·g) → Z(g): w_0 ↦ e_{-α_i}^{a+1} v_0 with a = <g+ρ, α_i∨> - 1 mod p."""
    amb = target.ambient
    datum, p = amb.datum, amb.p
    r = datum.simple_index(i)
    a = (datum.pairing(lattice.add(target_grade, datum.rho), r) - 1) % p
    v_grade, v0 = verma_generator(target)
    img_grade, img = _lower(target, v_grade, v0, datum.negative_of(r), a + 1)
    w_grade, w0 = verma_generator(source)
    if img_grade != w_grade:
        raise Inconclusive(f"e_-α^{a + 1} v_0 lies in {list(img_grade)}, not {list(w_grade)}")
    f = gradedmod.extend_from_generators(source, target, [(w_grade, w0, img)])
    if f is None:
        raise Inconclusive(f"w_0 ↦ e_-α^{a + 1} v_0 does not extend to {source.name} → {target.name}")
    return f


def verma_iso(ambient: Ambient, weight: Sequence[int], other: Sequence[int]) -> Morphism:
    """Isomorphism Z(λ) → Z(μ) for μ in W_{I,p}·λ, composed from reflections and translations."""
    require_vanishing(ambient, "levi")
    datum, I = ambient.datum, ambient.I
    path = weyl.grade_path(datum, I, weight, other)
    if path is None:
        raise NotInOrbit(f"{list(other)} is not in W_I,p·{list(weight)}")
    source = baby_verma(ambient, weight)
    target = baby_verma(ambient, other)
    current = source
    total = gradedmod.identity(source)
    for t, (g, i) in enumerate(path):
        nxt_grade = path[t + 1][0] if t + 1 < len(path) else ambient.reduce(other)
        nxt = target if t + 1 == len(path) else baby_verma(ambient, nxt_grade)
        total = gradedmod.compose(_elementary_map(current, nxt, nxt_grade, i), total)
        current = nxt
    if not path:
        grade, v0 = verma_generator(source)
        _, w0 = verma_generator(target)
        total = gradedmod.extend_from_generators(source, target, [(grade, v0, w0)])
    if total is None or not gradedmod.is_isomorphism(total):
        raise Inconclusive(f"composite {source.name} → {target.name} is not invertible")
    logger.debug(f"Verma isomorphism {source.name} → {target.name} through {len(path)} reflections")
    return total


# Change of structure map.

def theta(module: GradedModule, pi: np.ndarray, level: str = "full") -> GradedModule:
    """Same data over A with structure map π; both maps must vanish on h_α for α in R (or R_I)."""
    amb = module.ambient
    require_vanishing(amb, level)
    require_vanishing(amb, level, pi)
    target = amb.with_algebra(amb.algebra.with_pi(pi))
    return GradedModule(ambient=target, dims=dict(module.dims), a_ops=module.a_ops,
                        actions=dict(module.actions), name=f"Θ({module.name})", meta=dict(module.meta))


def theta_inverse(module: GradedModule, pi: np.ndarray, level: str = "full") -> GradedModule:
    out = theta(module, pi, level)
    out.name = module.name
    return out


# Levi projective covers and their inductions.

def _prime_ambient(ambient: Ambient, spec: SubalgebraSpec) -> Ambient:
    prime = coeff.make_field(ambient.p, 1, ambient.datum.d)
    return gradedmod.make_ambient(ambient.datum, ambient.chi, prime, spec)


def _summand_onto(module: GradedModule, simple: GradedModule, seed: Optional[int] = None) -> GradedModule:
    for summand in decompose.fitting_split(module, seed):
        if gradedmod.hom_space(summand.module, simple):
            return summand.module
    raise Inconclusive(f"no summand of '{module.name}' maps onto '{simple.name}'")


def projective_cover_levi(ambient: Ambient, weight: Sequence[int]) -> GradedModule:
    """Q_I(λ): built over F_p with π = 0, then moved to A by base change and Θ."""
    require_vanishing(ambient, "levi")
    amb0 = _prime_ambient(ambient, S.UI)
    levi_phi = induction.induce(induction.lambda_object(amb0, weight), S.U0, S.UI)
    q0 = _summand_onto(levi_phi, simple_head(amb0, weight, "levi"))
    alg = ambient.algebra
    name = f"Q_I({list(weight)})"
    if alg.dim == 1 and not np.any(alg.pi):
        return _mark(q0.with_ambient(ambient.with_spec(S.UI)), name)
    embedding = coeff.unit_embedding(amb0.algebra, alg)
    moved = gradedmod.base_change(q0, alg.with_pi(np.zeros_like(alg.pi)), embedding)
    out = theta(moved, alg.pi, "levi")
    out = out.with_ambient(ambient.with_spec(S.UI), name)
    return _mark(out, name)


def q_upper_I(ambient: Ambient, weight: Sequence[int]) -> GradedModule:
    """Q^I(λ) = U ⊗_{P_I^+} Q_I(λ)."""
    levi = projective_cover_levi(ambient, weight)
    module = induction.induce(induction.inflate(levi, S.PI_PLUS), S.PI_PLUS, S.U)
    return _mark(module, f"Q^I({list(weight)})")


def xi_I(ambient: Ambient, weight: Sequence[int]) -> GradedModule:
    """Ξ^I(λ) = U ⊗_{U^I} Q_I(λ)."""
    levi = projective_cover_levi(ambient, weight)
    module = induction.induce(levi, S.UI, S.U)
    return _mark(module, f"Ξ^I({list(weight)})")


# Truncation.

def _coset(ambient: Ambient, weight: Sequence[int]):
    return weyl.coset_zi(ambient.datum, ambient.I, weight)


def outside_spaces(module: GradedModule, bound: Sequence[int]) -> Subspaces:
    """Submodule generated by every grade whose ZI-coset is not <= bound + ZI."""
    amb = module.ambient
    top = _coset(amb, bound)
    seeds = []
    for c in module.grades:
        if not weyl.leq_coset(amb.datum, _coset(amb, c), top):
            seeds.extend((c, row) for row in np.eye(module.dims[c], dtype=np.int64))
    return gradedmod.spin(module, seeds) if seeds else {}


def truncate(module: GradedModule, bound: Sequence[int]) -> Tuple[GradedModule, Morphism]:
    """Largest quotient supported in cosets <= bound + ZI, with its quotient map."""
    spaces = outside_spaces(module, bound)
    out, projection = gradedmod.quotient(module, spaces, f"T[{list(bound)}]({module.name})")
    out.meta = dict(module.meta)
    logger.debug(f"Truncated {module.name} at {list(bound)}: {module.dim} → {out.dim}")
    return out, projection


# Z-filtrations.

def _level_of(module: GradedModule) -> str:
    spec = module.ambient.spec
    if spec is S.U:
        return "full"
    if spec is S.UI:
        return "levi"
    raise NoKnownZFiltration(f"Z-filtrations are built over U or U^I, not {spec.value}")


def _candidate_grades(module: GradedModule) -> List[Grade]:
    datum, I = module.ambient.datum, module.ambient.I
    best = max(weyl.coset_height(datum, I, c) for c in module.grades)
    tops = [c for c in module.grades if weyl.coset_height(datum, I, c) == best]
    return sorted(tops, key=lambda c: (-weyl.height(datum, c), c))


def _find_verma(module: GradedModule, level: str):
    """(grade, span, witness Z(grade) ≅ span) for a highest vector generating a copy of Z."""
    p = module.p
    kernels = gradedmod.highest_vectors(module)
    for c in _candidate_grades(module):
        if c not in kernels:
            continue
        z = baby_verma(module.ambient, c, level)
        z_grade, z0 = verma_generator(z)
        for v in kernels[c]:
            span = gradedmod.spin(module, [(c, v)])
            if gradedmod.subspace_dim(span) != z.dim:
                continue
            sub, _ = gradedmod.submodule(module, span)
            coords = linalg.coordinates(span[c], v[None, :], p)
            f = gradedmod.extend_from_generators(z, sub, [(z_grade, z0, coords[0])])
            if f is not None and gradedmod.is_isomorphism(f):
                return c, span, f
    return None


def _peel(module: GradedModule, level: str) -> FiltrationChain:
    chain = FiltrationChain(module=module, kind="Z")
    current, proj = module, gradedmod.identity(module)
    while current.dim:
        found = _find_verma(current, level)
        if found is None:
            raise NoKnownZFiltration(f"no baby Verma generated at the top of '{current.name}'")
        c, span, witness = found
        chain.steps.append(gradedmod.preimage(proj, span))
        chain.sections.append(witness.target)
        chain.labels.append(radical.section_label(module, c))
        chain.witnesses.append(witness)
        current, q = gradedmod.quotient(current, span)
        proj = gradedmod.compose(q, proj)
    return chain


def z_filtration(module: GradedModule) -> FiltrationChain:
    """0 ⊂ M_1 ⊂ ... ⊂ M with every section a baby Verma, highest cosets at the bottom."""
    if not module.meta.get("z_filtered"):
        raise NoKnownZFiltration(f"'{module.name}' is not a construction known to carry a Z-filtration")
    chain = _peel(module, _level_of(module))
    logger.debug(f"Z-filtration of {module.name}: {len(chain)} sections")
    return chain


def sort_z_filtration(chain: FiltrationChain, bound: Sequence[int]) -> Tuple[FiltrationChain, int]:
    """Reorder so that the first k sections have cosets not <= bound + ZI and the rest are <= it."""
    module = chain.module
    level = _level_of(module)
    outside = outside_spaces(module, bound)
    low, low_inc = gradedmod.submodule(module, outside)
    high, high_proj = gradedmod.quotient(module, outside)
    first = _peel(low, level)
    second = _peel(high, level)
    out = FiltrationChain(module=module, kind="Z")
    for step, section, witness in zip(first.steps, first.sections, first.witnesses):
        out.steps.append(gradedmod.push_spaces(low_inc, step))
        out.sections.append(section)
        out.witnesses.append(witness)
    for step, section, witness in zip(second.steps, second.sections, second.witnesses):
        out.steps.append(gradedmod.add_spaces(outside, gradedmod.preimage(high_proj, step), module.p))
        out.sections.append(section)
        out.witnesses.append(witness)
    out.labels = first.labels + second.labels
    if Counter(out.labels) != Counter(chain.labels):
        raise NoKnownZFiltration("sorted chain has different sections than the original")
    return out, len(first)


def section_grades(chain: FiltrationChain) -> List[Grade]:
    return [verma_generator(w.source)[0] for w in chain.witnesses]


# Q-filtrations.

def levi_label(module: GradedModule) -> Tuple[int, ...]:
    """ν for a Levi projective Q_I(ν), read off a highest vector of its head."""
    amb = module.ambient
    if not amb.algebra.is_field:
        field, res = coeff.residue_quotient(amb.algebra)
        module = gradedmod.base_change(module, field, res)
    data = radical.radical_and_head(module, method="algebra", require_simple=False)
    kernels = gradedmod.highest_vectors(data.head)
    datum = amb.datum
    grade = max(kernels, key=lambda c: (weyl.height(datum, c), c))
    return radical.section_label(module, grade)


def _gamma(summand: GradedModule) -> GradedModule:
    return induction.induce(induction.inflate(summand, S.PI_PLUS), S.PI_PLUS, S.U)


def _gamma_witness(summand: GradedModule, images_of_basis: Subspaces, section: GradedModule,
                   section_proj: Morphism, span: Subspaces) -> Optional[Morphism]:
    """Γ(S) → section, 1 ⊗ s ↦ image of s."""
    p = summand.p
    gamma = _gamma(summand)
    blocks = gamma.meta["blocks"]
    zero = tuple(0 for _ in gamma.meta["complement"])
    assignments = []
    for c in summand.grades:
        g, off = blocks[(zero, c)]
        coords = linalg.coordinates(span[c], images_of_basis[c], p)
        if coords is None:
            return None
        images = linalg.matmul(section_proj.at(c), coords.T, p).T
        for k in range(summand.dims[c]):
            vec = np.zeros(gamma.dims[g], dtype=np.int64)
            vec[off + k] = 1
            assignments.append((g, vec, images[k]))
    f = gradedmod.extend_from_generators(gamma, section, assignments)
    if f is None or not gradedmod.is_isomorphism(f):
        return None
    return f


def q_filtration(module: GradedModule, seed: Optional[int] = None) -> FiltrationChain:
    """Chain with sections Q^I(ν), peeled from the maximal coset downward.

    With a seed the summands of each Levi layer are taken in a shuffled order.
    """
    if module.ambient.spec is not S.U:
        raise NotProjective("Q-filtrations are built for U-modules")
    amb = module.ambient
    datum, I, p = amb.datum, amb.I, amb.p
    rng = np.random.default_rng(seed) if seed is not None else None
    chain = FiltrationChain(module=module, kind="Q")
    current, proj = module, gradedmod.identity(module)
    while current.dim:
        best = max(weyl.coset_height(datum, I, c) for c in current.grades)
        key = min(weyl.reduce_zi(datum, I, c) for c in current.grades
                  if weyl.coset_height(datum, I, c) == best)
        layer_spaces = {c: np.eye(current.dims[c], dtype=np.int64) for c in current.grades
                        if weyl.reduce_zi(datum, I, c) == key}
        layer, layer_inc = gradedmod.submodule(gradedmod.restrict(current, S.UI), layer_spaces)
        summands = decompose.fitting_split(layer, seed)
        if rng is not None:
            summands = [summands[k] for k in rng.permutation(len(summands))]
        factor = p ** len(amb.chi.levi.u_minus)
        acc: Subspaces = {}
        spun_prev: Subspaces = {}
        for summand in summands:
            pieces = {c: linalg.matmul(layer_inc.at(c), summand.inclusion.at(c), p).T
                      for c in summand.module.grades}
            acc = gradedmod.add_spaces(acc, pieces, p)
            spun = gradedmod.spin(current, [(c, row) for c, rows in acc.items() for row in rows])
            if gradedmod.subspace_dim(spun) - gradedmod.subspace_dim(spun_prev) != factor * summand.module.dim:
                raise NotProjective(f"layer {list(key)} of '{module.name}' does not induce freely")
            sub, sub_inc = gradedmod.submodule(current, spun)
            section, section_proj = gradedmod.quotient(sub, gradedmod.preimage(sub_inc, spun_prev))
            witness = _gamma_witness(summand.module, pieces, section, section_proj, spun)
            if witness is None:
                raise NotProjective(f"section over {list(key)} of '{module.name}' is not Q^I")
            chain.steps.append(gradedmod.preimage(proj, spun))
            chain.sections.append(section)
            chain.labels.append(levi_label(summand.module))
            chain.witnesses.append(witness)
            spun_prev = spun
        current, q = gradedmod.quotient(current, spun_prev)
        proj = gradedmod.compose(q, proj)
    logger.debug(f"Q-filtration of {module.name}: {len(chain)} sections")
    return chain


def q_multiplicities(module: GradedModule, seed: Optional[int] = None) -> Dict[Tuple[int, ...], int]:
    return dict(Counter(q_filtration(module, seed).labels))


# Projective covers.

def cover_bound(ambient: Ambient, weight: Sequence[int]) -> Tuple[int, ...]:
    """λ + 2(p-1)ρ, with 2ρ the sum of the positive roots.

    datum.rho may differ from the half sum by a W-invariant weight (gl_n),
    so it is not used here.
    """
    datum = ambient.datum
    two_rho = [0] * datum.d
    for r in datum.positive():
        two_rho = lattice.add(two_rho, datum.roots[r])
    return lattice.add(weight, lattice.scale(ambient.p - 1, two_rho))


def projective_cover(ambient: Ambient, weight: Sequence[int], seed: Optional[int] = None) -> GradedModule:
    """Q(λ): the summand of the truncated Ξ^I(λ) mapping onto L(λ).

    Over local A the summand is matched against the residue-field cover.
    """
    alg = ambient.algebra
    if not coeff.is_local(alg):
        raise NotLocal(f"{alg.label} is not local")
    require_vanishing(ambient, "levi")
    amb = ambient.with_spec(S.U)
    xi, _ = truncate(xi_I(amb, weight), cover_bound(amb, weight))
    name = f"Q({list(weight)})"
    if alg.is_field:
        return _mark(_summand_onto(xi, simple_head(amb, weight), seed), name)
    field, res = coeff.residue_quotient(alg)
    field = field.with_pi((alg.pi @ res.T) % alg.p)
    amb_f = amb.with_algebra(field)
    cover_f = projective_cover(amb_f, weight, seed)
    simple_a = gradedmod.restrict_scalars(simple_head(amb_f, weight), alg, res)
    for summand in decompose.fitting_split(xi, seed):
        if not gradedmod.hom_space(summand.module, simple_a):
            continue
        reduced = gradedmod.base_change(summand.module, field, res)
        if decompose.is_isomorphic(reduced, cover_f, seed) is not None:
            return _mark(summand.module, name)
    raise Inconclusive(f"no summand of '{xi.name}' reduces to {cover_f.name}")


# Multiplicity tables.

def window_representatives(ambient: Ambient, window: Window) -> List[Tuple[int, ...]]:
    datum, I = ambient.datum, ambient.I
    reps = {weyl.fundamental_representative(datum, w, WeylGroup.W_IP, I) for w in window.points()}
    return sorted(reps)


def levi_hom_dim(module: GradedModule, weight: Sequence[int]) -> int:
    """dim Hom over P_I^- from M into Z_I(μ), counted over the ground field."""
    amb = module.ambient
    target = induction.inflate(baby_verma(amb, weight, "levi"), S.PI_MINUS)
    source = gradedmod.restrict(module, S.PI_MINUS)
    return len(gradedmod.hom_space(source, target)) // _residue_degree(amb)


def multiplicities(ambient: Ambient, kind: str, window: Window) -> MultiplicityTable:
    """[Z:L] ("ZL"), (Q:Z) ("QZ") or (Q:Q^I) ("QQI") on orbit representatives of the window."""
    if kind not in ("ZL", "QZ", "QQI"):
        raise InvalidInput(f"unknown multiplicity kind '{kind}'")
    if not ambient.algebra.is_field:
        raise InvalidInput("multiplicity tables are computed over fields")
    amb = ambient.with_spec(S.U)
    reps = window_representatives(amb, window)
    table = MultiplicityTable(kind=kind, rows=list(reps))
    columns = set(reps)
    for lam in reps:
        if kind == "ZL":
            counts = radical.composition_multiplicities(baby_verma(amb, lam))
        elif kind == "QZ":
            counts = Counter(z_filtration(projective_cover(amb, lam)).labels)
        else:
            cover = projective_cover(amb, lam)
            labels = set(reps) | set(z_filtration(cover).labels)
            counts = {mu: levi_hom_dim(cover, mu) for mu in sorted(labels)}
        for mu, n in counts.items():
            if n:
                table.entries[(tuple(lam), tuple(mu))] = int(n)
                columns.add(tuple(mu))
    table.columns = sorted(columns)
    logger.info(f"Multiplicity table {kind}: {len(table.rows)} rows, {len(table.entries)} nonzero entries")
    return table


# Verification sweeps.

def _grade_classes(ambient: Ambient, window: Window) -> Dict[Grade, List[Tuple[int, ...]]]:
    classes: Dict[Grade, List[Tuple[int, ...]]] = {}
    for w in window.points():
        classes.setdefault(ambient.reduce(w), []).append(tuple(w))
    return classes


def verify_iso_criterion(ambient: Ambient, window: Window, seed: Optional[int] = None) -> dict:
    """Z(λ) ≅ Z(μ) against λ ∈ W_{I,p}·μ for every pair of window points."""
    require_vanishing(ambient, "levi")
    amb = ambient.with_spec(S.U)
    datum, I = amb.datum, amb.I
    classes = _grade_classes(amb, window)
    grades = sorted(classes)
    vermas = {c: baby_verma(amb, c) for c in grades}
    mismatches, inconclusive, cases = [], [], 0

    def compare(lam, mu, z_lam, z_mu):
        orbit = weyl.same_orbit(datum, lam, mu, WeylGroup.W_IP, I)
        try:
            iso = decompose.is_isomorphic(z_lam, z_mu, seed) is not None
        except Inconclusive:
            inconclusive.append({"lambda": list(lam), "mu": list(mu)})
            return
        if iso != orbit:
            mismatches.append({"lambda": list(lam), "mu": list(mu), "isomorphic": iso, "same_orbit": orbit})

    for x, a in enumerate(grades):
        points = classes[a]
        if len(points) > 1:
            own = {w: baby_verma(amb, w) for w in points}
            for y, lam in enumerate(points):
                for mu in points[y + 1:]:
                    cases += 1
                    compare(lam, mu, own[lam], own[mu])
        for b in grades[x + 1:]:
            cases += len(points) * len(classes[b])
            compare(a, b, vermas[a], vermas[b])
    logger.info(f"Isomorphism criterion: {cases} pairs over {len(grades)} grades, {len(mismatches)} mismatches")
    return {"cases": cases, "grades": len(grades), "mismatches": mismatches,
            "inconclusive": inconclusive, "ok": not mismatches and not inconclusive}


def linkage_graph(ambient: Ambient, grades: Iterable[Grade]) -> nx.Graph:
    """Edges between baby Vermas with a nonzero Hom or Ext¹ in either direction.

    graph.graph["ext"][(a, b)] holds dim Ext¹(Z(a), Z(b)).
    """
    graph = nx.Graph(ext={})
    grades = list(grades)
    vermas = {c: baby_verma(ambient, c) for c in grades}
    graph.add_nodes_from(grades)
    for a in grades:
        for b in grades:
            if a == b:
                continue
            hom = len(gradedmod.hom_space(vermas[a], vermas[b]))
            ext = decompose.ext1(vermas[a], vermas[b])["dim"]
            graph.graph["ext"][(a, b)] = ext
            if hom or ext:
                graph.add_edge(a, b)
    return graph


def _components(graph: nx.Graph) -> List[List[Grade]]:
    return sorted(sorted(comp) for comp in nx.connected_components(graph))


def verify_blocks(ambient: Ambient, window: Window) -> dict:
    """Blocks of baby Vermas over A against those over its residue field."""
    alg = ambient.algebra
    if not coeff.is_local(alg):
        raise NotLocal(f"{alg.label} is not local")
    require_vanishing(ambient, "full")
    amb = ambient.with_spec(S.U)
    field, res = coeff.residue_quotient(alg)
    amb_f = amb.with_algebra(field.with_pi((alg.pi @ res.T) % alg.p))
    grades = sorted(_grade_classes(amb, window))
    over_a = _components(linkage_graph(amb, grades))
    over_f = _components(linkage_graph(amb_f, grades)) if not alg.is_field else over_a
    logger.info(f"Blocks over {alg.label}: {len(over_a)}, over residue field: {len(over_f)}")
    return {
        "grades": len(grades),
        "blocks_over_A": [[list(c) for c in comp] for comp in over_a],
        "blocks_over_F": [[list(c) for c in comp] for comp in over_f],
        "ok": over_a == over_f,
    }


def head_label(module: GradedModule) -> Tuple[int, ...]:
    """λ with hd M ≅ L(λ), over fields."""
    data = radical.radical_and_head(module)
    grade, _ = radical.primitive_vector(data.head)
    return radical.section_label(module, grade)


def projective_summands(module: GradedModule, seed: Optional[int] = None) -> List[Tuple[int, ...]]:
    """λ for each indecomposable summand, with the summand checked against Q(λ)."""
    labels = []
    for summand in decompose.fitting_split(module, seed):
        try:
            label = head_label(summand.module)
        except EngineError:
            raise NotProjective(f"summand of '{module.name}' has no simple head")
        cover = projective_cover(module.ambient, label, seed)
        if decompose.is_isomorphic(summand.module, cover, seed) is None:
            raise NotProjective(f"summand of '{module.name}' is not Q({list(label)})")
        labels.append(label)
    return labels


MODULE_KINDS = ("verma", "levi-verma", "phi", "simple", "levi-simple", "q-levi", "q-upper", "xi", "proj-cover")


def construct(ambient: Ambient, kind: str, weight: Sequence[int], seed: Optional[int] = None) -> GradedModule:
    """Build a distinguished module by name."""
    if kind == "verma":
        return baby_verma(ambient, weight)
    if kind == "levi-verma":
        return baby_verma(ambient, weight, "levi")
    if kind == "phi":
        return phi(ambient, weight)
    if kind == "simple":
        return simple_head(ambient, weight)
    if kind == "levi-simple":
        return simple_head(ambient, weight, "levi")
    if kind == "q-levi":
        return projective_cover_levi(ambient, weight)
    if kind == "q-upper":
        return q_upper_I(ambient, weight)
    if kind == "xi":
        return xi_I(ambient, weight)
    if kind == "proj-cover":
        return projective_cover(ambient, weight, seed)
    raise InvalidInput(f"unknown module kind '{kind}'; expected one of {', '.join(MODULE_KINDS)}")


def summarize(module: GradedModule) -> dict:
    alg = module.ambient.algebra
    free = gradedmod.is_free(module)
    return {
        "name": module.name,
        "dim": module.dim,
        "rank": module.dim // alg.dim if free else None,
        "free": free,
        "algebra": alg.label,
        "spec": module.ambient.spec.value,
        "grades": len(module.grades),
    }
