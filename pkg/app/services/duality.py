"""The contravariant dualities 𝔻, 𝔻̄ and the τ-twist."""
import logging
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.core import linalg
from app.core.exceptions import Inconclusive, InvalidInput, WrongSubalgebra
from app.models.module import Ambient, Grade, GradedModule, Morphism, Subspaces, SubalgebraSpec
from app.models.rootdata import ChevalleyDatum, TauMap
from app.services import coeff, gradedmod, radical, rootdata

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def tau_for(datum: ChevalleyDatum, I: Tuple[int, ...]) -> TauMap:
    return rootdata.tau(datum, I)


# A-linear dual.

def _dual_basis(module: GradedModule, grade: Grade) -> np.ndarray:
    """Rows are the flattened (dim A × dim M_c) matrices of an F_p-basis of Hom_A(M_c, A)."""
    alg = module.ambient.algebra
    m, n, p = alg.dim, module.dims[grade], module.p
    constraints = [
        (np.kron(np.eye(m, dtype=np.int64), module.a_ops[grade][j].T)
         - np.kron(alg.right_mult(j), np.eye(n, dtype=np.int64))) % p
        for j in range(alg.dim)
    ]
    return linalg.nullspace(np.concatenate(constraints, axis=0), p)


def _transport(operator: np.ndarray, source_basis: np.ndarray, target_basis: np.ndarray, p: int) -> np.ndarray:
    """Matrix (target × source) of a linear map given on flattened functionals."""
    images = linalg.matmul(source_basis, operator.T, p)
    coords = linalg.coordinates(target_basis, images, p)
    if coords is None:
        raise Inconclusive("dual operator leaves the space of A-linear functionals")
    return coords.T


def dual_hom(module: GradedModule) -> GradedModule:
    """Hom_A(M, A) in grade -c, with (x·f)(m) = f(-x·m); lives over Ā in the (-χ)-category."""
    amb = module.ambient
    alg, p = amb.algebra, module.p
    m = alg.dim
    target_amb = amb.with_chi(amb.chi.negated(p)).with_algebra(coeff.derived_algebra(alg, "bar"))
    bases = {c: _dual_basis(module, c) for c in module.grades}
    grade_of = {c: target_amb.reduce(tuple(-x for x in c)) for c in module.grades}
    dims = {grade_of[c]: bases[c].shape[0] for c in module.grades}
    a_ops = {}
    for c in module.grades:
        n = module.dims[c]
        a_ops[grade_of[c]] = [
            _transport(np.kron(alg.right_mult(j), np.eye(n, dtype=np.int64)), bases[c], bases[c], p)
            for j in range(m)
        ]
    actions = {}
    for (r, c), mat in module.actions.items():
        t = amb.shift(c, r)
        if t not in bases:
            continue
        # f on M_t ↦ -f∘e_r on M_c
        operator = (-np.kron(np.eye(m, dtype=np.int64), mat.T)) % p
        actions[(r, grade_of[t])] = _transport(operator, bases[t], bases[c], p)
    out = gradedmod.make_module(target_amb, dims, a_ops, actions, f"{module.name}*")
    out.meta["dual_bases"] = bases
    out.meta["dual_of"] = module
    return out


def dual_morphism(f: Morphism, source_dual: Optional[GradedModule] = None,
                  target_dual: Optional[GradedModule] = None) -> Morphism:
    """f*: N* → M*, φ ↦ φ∘f."""
    m_dual = dual_hom(f.source) if source_dual is None else source_dual
    n_dual = dual_hom(f.target) if target_dual is None else target_dual
    p, m = f.source.p, f.source.ambient.algebra.dim
    m_bases, n_bases = m_dual.meta["dual_bases"], n_dual.meta["dual_bases"]
    maps = {}
    for c in f.source.grades:
        if c not in n_bases:
            continue
        g = m_dual.ambient.reduce(tuple(-x for x in c))
        operator = np.kron(np.eye(m, dtype=np.int64), f.at(c).T) % p
        maps[g] = _transport(operator, n_bases[c], m_bases[c], p)
    return Morphism(n_dual, m_dual, maps)


def evaluation(module: GradedModule) -> Morphism:
    """M → M**, m ↦ (φ ↦ φ(m))."""
    first = dual_hom(module)
    second = dual_hom(first)
    p, m = module.p, module.ambient.algebra.dim
    inner, outer = first.meta["dual_bases"], second.meta["dual_bases"]
    maps = {}
    for c in module.grades:
        g = first.ambient.reduce(tuple(-x for x in c))
        n = module.dims[c]
        phis = inner[c].reshape(-1, m, n)
        k = phis.shape[0]
        images = []
        for v in np.eye(n, dtype=np.int64):
            # column i is Φ_i(v)
            ev = np.stack([linalg.matmul(phi, v[:, None], p)[:, 0] for phi in phis], axis=1) if k \
                else np.zeros((m, 0), dtype=np.int64)
            images.append(ev.ravel())
        coords = linalg.coordinates(outer[g], np.stack(images), p)
        if coords is None:
            raise Inconclusive(f"evaluation on '{module.name}' is not A-linear")
        maps[c] = coords.T
    return Morphism(module, second, maps)


# τ-twists.

def _spec_for(roots: Sequence[int], ambient: Ambient) -> SubalgebraSpec:
    wanted = tuple(sorted(roots))
    for spec in SubalgebraSpec:
        if tuple(sorted(spec.roots(ambient.datum, ambient.chi))) == wanted:
            return spec
    raise WrongSubalgebra(f"τ does not carry {ambient.spec.value} to a supported subalgebra")


def _regrade(module: GradedModule, target: Ambient, x_matrix: np.ndarray, perm: Sequence[int],
             coefficients: Sequence[int], name: str) -> GradedModule:
    """Grade c ↦ x·c and e_r acting as coefficients[r]·e_{perm[r]} of M."""
    p = module.p
    back = {s: r for r, s in enumerate(perm)}
    grade_of = {c: target.reduce(tuple(int(v) for v in x_matrix @ np.array(c, dtype=np.int64)))
                for c in module.grades}
    dims = {grade_of[c]: module.dims[c] for c in module.grades}
    a_ops = {grade_of[c]: module.a_ops[c] for c in module.grades}
    actions = {}
    for (s, c), mat in module.actions.items():
        r = back[s]
        actions[(r, grade_of[c])] = (int(coefficients[r]) * mat) % p
    out = gradedmod.make_module(target, dims, a_ops, actions, name)
    out.meta["regrading"] = grade_of
    return out


def _twisted_ambient(module: GradedModule, tau_map: TauMap, inverse: bool) -> Tuple[Ambient, list, list]:
    amb = module.ambient
    p = module.p
    perm = list(tau_map.root_perm)
    if inverse:
        # e_r acts as τ(e_r) = c_r e_{perm(r)}
        sources, coeffs = perm, list(tau_map.coefficients)
        new_pi = (tau_map.on_toral(amb.datum.d).T @ amb.algebra.pi) % p
    else:
        # e_r acts as τ^{-1}(e_r) = c'_r e_{perm^{-1}(r)}
        back = {s: r for r, s in enumerate(perm)}
        sources = [back[r] for r in range(len(perm))]
        coeffs = list(tau_map.inverse_coefficients)
        new_pi = coeff.derived_algebra(amb.algebra, "tau", tau_map).pi
    back_src = {s: r for r, s in enumerate(sources)}
    new_roots = [back_src[s] for s in amb.roots]
    spec = _spec_for(new_roots, amb)
    target = amb.with_chi(amb.chi.negated(p)).with_algebra(amb.algebra.with_pi(new_pi)).with_spec(spec)
    return target, sources, coeffs


def tau_twist(module: GradedModule, tau_map: Optional[TauMap] = None) -> GradedModule:
    """^τM: grades c ↦ τ(c), x·m = τ^{-1}(x)m; lands over ^τA in the (-χ)-category."""
    amb = module.ambient
    tau_map = tau_for(amb.datum, amb.I) if tau_map is None else tau_map
    target, sources, coeffs = _twisted_ambient(module, tau_map, inverse=False)
    x = np.array(tau_map.x_action, dtype=np.int64)
    return _regrade(module, target, x, sources, coeffs, f"τ({module.name})")


def untwist(module: GradedModule, tau_map: Optional[TauMap] = None) -> GradedModule:
    """Inverse of tau_twist: x·m = τ(x)m."""
    amb = module.ambient
    tau_map = tau_for(amb.datum, amb.I) if tau_map is None else tau_map
    target, sources, coeffs = _twisted_ambient(module, tau_map, inverse=True)
    x = np.array(tau_map.x_action, dtype=np.int64)
    return _regrade(module, target, x, sources, coeffs, f"τ⁻¹({module.name})")


def regrade_morphism(f: Morphism, source: GradedModule, target: GradedModule) -> Morphism:
    """A morphism carried through the same regrading as its ends."""
    grade_of = source.meta["regrading"]
    return Morphism(source, target, {grade_of[c]: mat for c, mat in f.maps.items() if c in grade_of})


# 𝔻 and 𝔻̄.

def dual_D(module: GradedModule) -> GradedModule:
    out = tau_twist(dual_hom(module))
    out.name = f"𝔻({module.name})"
    return out


def dual_Dbar(module: GradedModule) -> GradedModule:
    out = dual_hom(untwist(module))
    out.name = f"𝔻̄({module.name})"
    return out


def dual_D_morphism(f: Morphism) -> Morphism:
    """𝔻f: 𝔻N → 𝔻M."""
    m_dual, n_dual = dual_hom(f.source), dual_hom(f.target)
    inner = dual_morphism(f, m_dual, n_dual)
    return regrade_morphism(inner, tau_twist(n_dual), tau_twist(m_dual))


def dual_Dbar_morphism(f: Morphism) -> Morphism:
    """𝔻̄f: 𝔻̄N → 𝔻̄M."""
    m_tw, n_tw = untwist(f.source), untwist(f.target)
    return dual_morphism(regrade_morphism(f, m_tw, n_tw), dual_hom(m_tw), dual_hom(n_tw))


def biduality(module: GradedModule) -> Morphism:
    """Explicit isomorphism M → 𝔻̄𝔻(M) for A-free M."""
    if not gradedmod.is_free(module):
        raise InvalidInput(f"biduality is constructed for A-free modules; '{module.name}' is not free")
    ev = evaluation(module)
    target = dual_Dbar(dual_D(module))
    witness = Morphism(module, target, ev.maps)
    if not gradedmod.is_morphism(witness) or not gradedmod.is_isomorphism(witness):
        raise Inconclusive(f"evaluation on '{module.name}' is not an isomorphism onto 𝔻̄𝔻")
    return witness


def socle(module: GradedModule) -> Subspaces:
    """soc M as the image of 𝔻̄(hd 𝔻M) → 𝔻̄𝔻M ≅ M."""
    radical.require_field(module)
    dual = dual_D(module)
    data = radical.radical_and_head(dual, require_simple=False)
    inclusion = dual_Dbar_morphism(data.projection)
    witness = biduality(module)
    back = gradedmod.inverse_morphism(witness)
    to_module = Morphism(inclusion.target, module, back.maps)
    return gradedmod.image_spaces(gradedmod.compose(to_module, inclusion))


def socle_is_simple(module: GradedModule) -> bool:
    spaces = socle(module)
    sub, _ = gradedmod.submodule(module, spaces)
    return radical.is_simple(sub)


# Anti-equivalence checks.

def check_antiequivalence(pairs: List[Tuple[GradedModule, GradedModule]], seed: Optional[int] = None) -> dict:
    """Hom-dimension symmetry, identities, composition reversal and exactness over fields."""
    rng = np.random.default_rng(seed)
    cases: List[Dict] = []
    for source, target in pairs:
        radical.require_field(source)
        homs = gradedmod.hom_space(source, target)
        d_source, d_target = dual_D(source), dual_D(target)
        dual_homs = gradedmod.hom_space(d_target, d_source)
        case = {
            "source": source.name,
            "target": target.name,
            "hom_dims": [len(homs), len(dual_homs)],
            "identity": gradedmod.equal_morphisms(dual_D_morphism(gradedmod.identity(source)),
                                                   gradedmod.identity(d_source)),
        }
        if homs:
            f = gradedmod.combine(homs, rng.integers(0, source.p, size=len(homs)))
            ends = gradedmod.hom_space(target, target)
            g = gradedmod.combine(ends, rng.integers(0, source.p, size=len(ends)))
            lhs = dual_D_morphism(gradedmod.compose(g, f))
            rhs = gradedmod.compose(dual_D_morphism(f), dual_D_morphism(g))
            case["composition"] = gradedmod.equal_morphisms(lhs, rhs)
            kernel, _ = gradedmod.kernel(f)
            cokernel, _ = gradedmod.cokernel(dual_D_morphism(f))
            case["exactness"] = kernel.dim == cokernel.dim
        case["ok"] = (case["hom_dims"][0] == case["hom_dims"][1] and case["identity"]
                      and case.get("composition", True) and case.get("exactness", True))
        cases.append(case)
    logger.info(f"Anti-equivalence checks: {sum(c['ok'] for c in cases)}/{len(cases)} passed")
    return {"cases": cases, "ok": all(c["ok"] for c in cases)}
