"""Indecomposable splitting, isomorphism search and Ext¹."""
import logging
from itertools import product
from typing import List, Optional

import numpy as np

from app.core import linalg
from app.core.config import get_settings
from app.core.exceptions import Inconclusive, SplitFailedRetry
from app.models.module import GradedModule, Morphism, Subspaces, Summand
from app.services import gradedmod, induction, radical

logger = logging.getLogger(__name__)


def _power(f: Morphism, exponent: int) -> Morphism:
    result = gradedmod.identity(f.source)
    base = f
    while exponent:
        if exponent & 1:
            result = gradedmod.compose(result, base)
        base = gradedmod.compose(base, base)
        exponent >>= 1
    return result


def _whole(module: GradedModule) -> Subspaces:
    return {c: np.eye(module.dims[c], dtype=np.int64) for c in module.grades}


def _split(module: GradedModule, rng: np.random.Generator, retries: int) -> List[Subspaces]:
    """Summands of M as subspaces of M, by Fitting's lemma on random endomorphisms."""
    if module.dim == 0:
        return []
    ends = gradedmod.hom_space(module, module)
    if len(ends) > 1:
        exponent = max(module.dims.values())
        for _ in range(retries):
            coeffs = rng.integers(0, module.p, size=len(ends))
            if not np.any(coeffs):
                continue
            phi = _power(gradedmod.combine(ends, coeffs), exponent)
            rank = sum(linalg.rank(phi.at(c), module.p) for c in module.grades)
            if rank in (0, module.dim):
                continue
            kernel, k_inc = gradedmod.kernel(phi)
            image, i_inc = gradedmod.image(phi)
            pieces = []
            for sub, inc in ((kernel, k_inc), (image, i_inc)):
                for spaces in _split(sub, rng, retries):
                    pieces.append(gradedmod.push_spaces(inc, spaces))
            return pieces
    return [_whole(module)]


def fitting_split(module: GradedModule, seed: Optional[int] = None) -> List[Summand]:
    """Indecomposable summands with inclusions and projections, Σ inc∘proj = id."""
    settings = get_settings()
    rng = np.random.default_rng(settings.SEED if seed is None else seed)
    pieces = _split(module, rng, settings.SPLIT_RETRIES)
    p = module.p
    frames = {}
    for c in module.grades:
        rows = [s[c] for s in pieces if c in s]
        stack = np.concatenate(rows, axis=0) if rows else np.zeros((0, module.dims[c]), dtype=np.int64)
        if stack.shape[0] != module.dims[c] or not linalg.is_invertible(stack, p):
            raise SplitFailedRetry(f"summands of '{module.name}' do not form a direct sum at {list(c)}")
        frames[c] = linalg.inverse(stack, p)
    summands = []
    for k, spaces in enumerate(pieces):
        sub, inclusion = gradedmod.submodule(module, spaces, f"{module.name}#{k}")
        proj = {}
        for c in sub.grades:
            start = sum(s[c].shape[0] for s in pieces[:k] if c in s)
            proj[c] = frames[c][:, start:start + sub.dims[c]].T.copy()
        summands.append(Summand(module=sub, inclusion=inclusion, projection=Morphism(module, sub, proj)))
    _verify_split(module, summands)
    logger.debug(f"Split {module.name} into {len(summands)} summands")
    return summands


def _verify_split(module: GradedModule, summands: List[Summand]) -> None:
    total = gradedmod.zero_morphism(module, module)
    idempotents = [gradedmod.compose(s.inclusion, s.projection) for s in summands]
    for i, e in enumerate(idempotents):
        total = gradedmod.combine([total, e], [1, 1])
        for j, f in enumerate(idempotents):
            product_ef = gradedmod.compose(e, f)
            expected = e if i == j else gradedmod.zero_morphism(module, module)
            if not gradedmod.equal_morphisms(product_ef, expected):
                raise SplitFailedRetry("idempotents are not orthogonal")
    if not gradedmod.equal_morphisms(total, gradedmod.identity(module)):
        raise SplitFailedRetry("idempotents do not sum to the identity")


def is_indecomposable(module: GradedModule) -> bool:
    return module.dim > 0 and radical.is_local_algebra(radical.endomorphism_matrices(module), module.p)


def is_isomorphic(module: GradedModule, other: GradedModule, seed: Optional[int] = None) -> Optional[Morphism]:
    """An isomorphism M → N, or None when none exists."""
    gradedmod.check_ambient(module, other)
    if {c: n for c, n in module.dims.items() if n} != {c: n for c, n in other.dims.items() if n}:
        return None
    if module.dim == 0:
        return gradedmod.zero_morphism(module, other)
    homs = gradedmod.hom_space(module, other)
    if not homs:
        return None
    settings = get_settings()
    p = module.p
    if len(homs) <= settings.EXHAUSTIVE_HOM_LIMIT:
        for coeffs in product(range(p), repeat=len(homs)):
            if not any(coeffs):
                continue
            f = gradedmod.combine(homs, coeffs)
            if gradedmod.is_isomorphism(f):
                return f
        return None
    rng = np.random.default_rng(settings.SEED if seed is None else seed)
    for _ in range(settings.ISO_RANDOM_TRIES):
        f = gradedmod.combine(homs, rng.integers(0, p, size=len(homs)))
        if gradedmod.is_isomorphism(f):
            return f
    raise Inconclusive(f"no isomorphism {module.name} → {other.name} found in {settings.ISO_RANDOM_TRIES} tries")


# Ext¹ through a projective presentation.

def projective_presentation(module: GradedModule):
    """(P_0, π: P_0 ↠ M, K, ι: K ↪ P_0) with P_0 a sum of free covers on generators of M."""
    gens = gradedmod.generators(module)
    if not gens:
        zero = gradedmod.zero_module(module.ambient)
        return zero, gradedmod.zero_morphism(zero, module), zero, gradedmod.zero_morphism(zero, zero)
    covers = [induction.free_cover(module.ambient, c) for c, _ in gens]
    total, inclusions, _ = gradedmod.direct_sum(*covers, name=f"P0({module.name})")
    assignments = []
    for (c, vec), cover, inc in zip(gens, covers, inclusions):
        grade, unit = induction.cover_generator(cover)
        assignments.append((grade, linalg.matmul(inc.at(grade), unit[:, None], module.p)[:, 0], vec))
    cover_map = gradedmod.extend_from_generators(total, module, assignments)
    if cover_map is None:
        raise Inconclusive(f"cover map onto '{module.name}' does not extend")
    kernel, k_inc = gradedmod.kernel(cover_map)
    return total, cover_map, kernel, k_inc


def ext1(module: GradedModule, other: GradedModule) -> dict:
    """dim Ext¹(M, N) = dim Hom(K, N) − rank(Hom(P_0, N) → Hom(K, N)) and representative cocycles."""
    gradedmod.check_ambient(module, other)
    p = module.p
    _, _, kernel, k_inc = projective_presentation(module)
    hom_k = gradedmod.hom_space(kernel, other)
    if not hom_k:
        return {"dim": 0, "classes": []}
    hom_p = gradedmod.hom_space(k_inc.target, other)
    basis = np.stack([f.flatten() for f in hom_k])
    restricted = [gradedmod.compose(f, k_inc).flatten() for f in hom_p]
    if restricted:
        image = linalg.row_basis(np.stack(restricted), p)
    else:
        image = np.zeros((0, basis.shape[1]), dtype=np.int64)
    ech = linalg.SemiEchelon(basis.shape[1], p)
    for row in image:
        ech.add(row)
    classes = [f for f, row in zip(hom_k, basis) if ech.add(row)[0]]
    logger.debug(f"Ext1({module.name}, {other.name}) = {len(classes)}")
    return {"dim": len(classes), "classes": classes}
