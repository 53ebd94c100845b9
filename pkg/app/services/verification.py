"""Property suites run against a configured datum, coefficient ring and weight window."""
import hashlib
import json
import logging
import time
import zlib
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.core import linalg
from app.core.config import get_settings
from app.core.exceptions import EngineError, WindowTooSmall
from app.models.algebra import BaseAlgebra
from app.models.module import Ambient, Grade, GradedModule, SubalgebraSpec, Subspaces
from app.models.rootdata import ChevalleyDatum, PChar
from app.models.weyl import WeylGroup, Window
from app.schemas.suite import CaseResult, SuiteConfig, SuiteResult, VerificationReport
from app.services import (
    coeff,
    decompose,
    duality,
    gradedmod,
    induction,
    radical,
    rootdata,
    structure,
    weyl,
)

logger = logging.getLogger(__name__)

S = SubalgebraSpec


@dataclass
class SuiteContext:
    config: SuiteConfig
    datum: ChevalleyDatum
    chi: PChar
    algebra: BaseAlgebra
    ambient: Ambient
    window: Window

    @property
    def p(self) -> int:
        return self.datum.p

    def rng(self, salt: str) -> np.random.Generator:
        return np.random.default_rng([self.config.seed, zlib.crc32(salt.encode())])

    def grades(self, limit: Optional[int] = None) -> List[Grade]:
        out = sorted({self.ambient.reduce(w) for w in self.window.points()})
        if not out:
            raise WindowTooSmall("the weight window is empty")
        return out if limit is None else out[:limit]


def build_context(config: SuiteConfig) -> SuiteContext:
    datum = rootdata.datum_for(config.selector, config.p)
    chi = rootdata.standard_levi_chi(datum, config.levi)
    algebra = coeff.make_base(config.base_descriptor, datum.d, config.p, config.pi)
    ambient = gradedmod.make_ambient(datum, chi, algebra)
    window = Window.cube(config.window[0], config.window[1], datum.d)
    return SuiteContext(config=config, datum=datum, chi=chi, algebra=algebra, ambient=ambient, window=window)


def datum_hash(ctx: SuiteContext) -> str:
    dump = rootdata.datum_to_dict(ctx.datum, ctx.chi)
    return hashlib.sha256(json.dumps(dump, sort_keys=True).encode()).hexdigest()[:16]


# Helpers.

def same_spaces(a: Subspaces, b: Subspaces, p: int) -> bool:
    for c in set(a) | set(b):
        x, y = a.get(c), b.get(c)
        rx = linalg.rank(x, p) if x is not None else 0
        ry = linalg.rank(y, p) if y is not None else 0
        if rx != ry:
            return False
        if rx and linalg.rank(np.concatenate([x, y], axis=0), p) != rx:
            return False
    return True


def same_data(m: GradedModule, n: GradedModule) -> bool:
    if m.dims != n.dims:
        return False
    if any(not np.array_equal(a, b) for c in m.grades for a, b in zip(m.a_ops[c], n.a_ops[c])):
        return False
    keys = set(m.actions) | set(n.actions)
    return all(np.array_equal(m.action(r, c) % m.p, n.action(r, c) % n.p) for r, c in keys)


def _random_vector(module: GradedModule, grade: Grade, rng: np.random.Generator) -> np.ndarray:
    v = linalg.random_vector(rng, module.dims[grade], module.p)
    if not np.any(v):
        v[0] = 1
    return v


def random_cyclic(module: GradedModule, rng: np.random.Generator, lowest: bool = True) -> GradedModule:
    """Submodule generated by a random vector, in the lowest grade when asked."""
    datum = module.ambient.datum
    grades = sorted(module.grades, key=lambda c: (weyl.height(datum, c), c))
    grade = grades[0] if lowest else grades[int(rng.integers(len(grades)))]
    spaces = gradedmod.spin(module, [(grade, _random_vector(module, grade, rng))])
    sub, _ = gradedmod.submodule(module, spaces, f"⟨v⟩⊂{module.name}")
    return sub


def random_quotient(module: GradedModule, rng: np.random.Generator) -> GradedModule:
    if module.dim == 0 or rng.integers(3) == 0:
        return module
    grade = module.grades[int(rng.integers(len(module.grades)))]
    spaces = gradedmod.spin(module, [(grade, _random_vector(module, grade, rng))])
    out, _ = gradedmod.quotient(module, spaces, f"{module.name}/⟨v⟩")
    return out


def random_source(ctx: SuiteContext, spec: SubalgebraSpec, rng: np.random.Generator) -> GradedModule:
    weights = ctx.grades()
    weight = weights[int(rng.integers(len(weights)))]
    if spec is S.U0:
        return induction.lambda_object(ctx.ambient, weight)
    if spec is S.U:
        return random_quotient(structure.baby_verma(ctx.ambient, weight), rng)
    cover = induction.free_cover(ctx.ambient.with_spec(spec), weight)
    return random_cyclic(cover, rng)


def random_target(ctx: SuiteContext, spec: SubalgebraSpec, rng: np.random.Generator) -> GradedModule:
    weights = ctx.grades()
    weight = weights[int(rng.integers(len(weights)))]
    z = structure.baby_verma(ctx.ambient, weight)
    base = z if spec is S.U else gradedmod.restrict(z, spec)
    return random_quotient(base, rng)


def _case(key: str, fn: Callable[[], dict]) -> CaseResult:
    """Run one case; input errors mark it skipped, computation failures mark it failed."""
    try:
        detail = fn()
        return CaseResult(key=key, ok=bool(detail.pop("ok")), detail=detail)
    except EngineError as e:
        if e.input_error:
            return CaseResult(key=key, ok=True, skipped=True, detail=e.to_dict())
        logger.warning(f"Case {key} failed: {e.code}: {e.detail}")
        return CaseResult(key=key, ok=False, detail=e.to_dict())


# Suites.

def suite_conditions(ctx: SuiteContext) -> List[CaseResult]:
    rng = ctx.rng("conditions")
    specs = list(S)
    cases = []
    for k in range(ctx.config.samples):
        spec = specs[k % len(specs)]

        def run(spec=spec):
            module = random_source(ctx, spec, rng)
            violations = gradedmod.validate(module)
            return {"ok": not violations, "module": module.name, "dim": module.dim, "violations": violations[:5]}

        cases.append(_case(f"random-{k}-{spec.value}", run))
    for weight in ctx.grades(ctx.config.samples):
        def run(weight=weight):
            z = structure.baby_verma(ctx.ambient, weight)
            violations = gradedmod.validate(z) + gradedmod.validate(duality.dual_hom(z))
            return {"ok": not violations, "dim": z.dim, "violations": violations[:5]}

        cases.append(_case(f"verma-{list(weight)}", run))
    return cases


def suite_frobenius(ctx: SuiteContext) -> List[CaseResult]:
    rng = ctx.rng("frobenius")
    pairs = sorted(induction.SUPPORTED_PAIRS, key=lambda pr: (pr[0].value, pr[1].value))
    cases = []
    for source, target in pairs:
        for k in range(ctx.config.samples):
            def run(source=source, target=target):
                m = random_source(ctx, source, rng)
                n = random_target(ctx, target, rng)
                result = induction.frobenius_check(m, n, source, target)
                return dict(result)

            cases.append(_case(f"{source.value}->{target.value}-{k}", run))
    return cases


def suite_iso_criterion(ctx: SuiteContext) -> List[CaseResult]:
    def run():
        report = structure.verify_iso_criterion(ctx.ambient, ctx.window, ctx.config.seed)
        return dict(report)

    return [_case("window", run)]


def suite_theta(ctx: SuiteContext) -> List[CaseResult]:
    structure.require_vanishing(ctx.ambient, "full")
    zero_pi = np.zeros_like(ctx.algebra.pi)
    plain = ctx.ambient.with_algebra(ctx.algebra.with_pi(zero_pi))
    cases = []
    for weight in ctx.grades(ctx.config.samples):
        def run(weight=weight):
            z0 = structure.baby_verma(plain, weight)
            moved = structure.theta(z0, ctx.algebra.pi)
            direct = structure.baby_verma(ctx.ambient, weight)
            back = structure.theta_inverse(moved, zero_pi)
            ok = same_data(moved, direct) and same_data(back, z0) and not gradedmod.validate(moved)
            detail = {"ok": ok, "dim": z0.dim}
            if not ctx.algebra.is_field:
                field, res = coeff.residue_quotient(ctx.algebra)
                lhs = gradedmod.base_change(moved, field, res)
                rhs = structure.theta(gradedmod.base_change(z0, field, res), (ctx.algebra.pi @ res.T) % ctx.p)
                detail["base_change"] = same_data(lhs, rhs)
                detail["ok"] = ok and detail["base_change"]
            return detail

        cases.append(_case(f"Z{list(weight)}", run))
    return cases


def suite_irreducible_regular(ctx: SuiteContext) -> List[CaseResult]:
    cases = []
    if len(ctx.chi.levi.I) != ctx.datum.n_simple:
        return [CaseResult(key="regular", ok=True, skipped=True, detail={"reason": "χ is not regular nilpotent"})]
    for weight in ctx.grades():
        def run(weight=weight):
            z = structure.baby_verma(ctx.ambient, weight)
            for c in z.grades:
                for row in np.eye(z.dims[c], dtype=np.int64):
                    if gradedmod.subspace_dim(gradedmod.spin(z, [(c, row)])) != z.dim:
                        return {"ok": False, "grade": list(c)}
            return {"ok": True, "dim": z.dim}

        cases.append(_case(f"Z{list(weight)}", run))
    return cases


def suite_levi_dim_formula(ctx: SuiteContext) -> List[CaseResult]:
    levi = ctx.chi.levi
    cases = []
    for weight in ctx.grades(ctx.config.samples):
        def run(weight=weight):
            q = structure.projective_cover_levi(ctx.ambient, weight)
            expected = ctx.p ** len(levi.levi_positive) * weyl.orbit_size(ctx.datum, weight, levi.I)
            rank = q.dim // ctx.algebra.dim
            return {"ok": rank == expected and gradedmod.is_free(q), "rank": rank, "expected": expected}

        cases.append(_case(f"Q_I{list(weight)}", run))
    return cases


def _coset_less(ctx: SuiteContext, a: Sequence[int], b: Sequence[int]) -> bool:
    ca, cb = weyl.coset_zi(ctx.datum, ctx.chi.levi.I, a), weyl.coset_zi(ctx.datum, ctx.chi.levi.I, b)
    return ca != cb and weyl.leq_coset(ctx.datum, ca, cb)


def suite_zfilt(ctx: SuiteContext) -> List[CaseResult]:
    levi = ctx.chi.levi
    cases = []
    for weight in ctx.grades(ctx.config.samples):
        def run(weight=weight):
            q = structure.q_upper_I(ctx.ambient, weight)
            chain = structure.z_filtration(q)
            label = radical.section_label(q, weight)
            expected = weyl.orbit_size(ctx.datum, weight, levi.I)
            ok = len(chain) == expected and all(lab == label for lab in chain.labels)
            sorted_chain, k = structure.sort_z_filtration(chain, weight)
            ok = ok and Counter(sorted_chain.labels) == Counter(chain.labels)
            return {"ok": ok, "length": len(chain), "expected": expected, "sorted_prefix": k}

        cases.append(_case(f"Q^I{list(weight)}", run))
    return cases


def suite_qfilt(ctx: SuiteContext) -> List[CaseResult]:
    cases = []
    for weight in ctx.grades(ctx.config.samples):
        def run(weight=weight):
            xi = structure.xi_I(ctx.ambient, weight)
            chain = structure.q_filtration(xi)
            label = radical.section_label(xi, weight)
            counts = Counter(chain.labels)
            top_ok = chain.labels[-1] == label and counts[label] == 1
            others_ok = all(_coset_less(ctx, weight, lab) for lab in chain.labels[:-1])
            shuffled = Counter(structure.q_filtration(xi, seed=ctx.config.seed + 1).labels)
            q = structure.q_upper_I(ctx.ambient, weight)
            single = structure.q_filtration(q)
            levi_side = induction.induce(structure.projective_cover_levi(ctx.ambient, weight), S.UI, S.PI_MINUS)
            restricted = decompose.is_isomorphic(gradedmod.restrict(q, S.PI_MINUS), levi_side,
                                                 ctx.config.seed) is not None
            return {
                "ok": top_ok and others_ok and shuffled == counts and len(single) == 1 and restricted,
                "length": len(chain),
                "top_once": top_ok,
                "order_independent": shuffled == counts,
                "restricts_to_levi_induction": restricted,
            }

        cases.append(_case(f"Xi^I{list(weight)}", run))
    return cases


def suite_ext_vanishing(ctx: SuiteContext) -> List[CaseResult]:
    grades = ctx.grades(ctx.config.samples)
    cases = []
    for lam in grades:
        for mu in grades:
            if _coset_less(ctx, lam, mu):
                continue

            def run(lam=lam, mu=mu):
                q = structure.q_upper_I(ctx.ambient, lam)
                ext = decompose.ext1(q, structure.baby_verma(ctx.ambient, mu))["dim"]
                return {"ok": ext == 0, "ext1": ext}

            cases.append(_case(f"Q^I{list(lam)}->Z{list(mu)}", run))
    if not ctx.chi.levi.I and ctx.chi.is_zero():
        def witness():
            window = ctx.grades()
            for lam in window:
                for mu in window:
                    if lam != mu and weyl.same_orbit(ctx.datum, lam, mu, WeylGroup.W_P):
                        z_l = structure.baby_verma(ctx.ambient, lam)
                        z_m = structure.baby_verma(ctx.ambient, mu)
                        ext = decompose.ext1(z_l, z_m)["dim"]
                        if ext:
                            return {"ok": True, "lambda": list(lam), "mu": list(mu), "ext1": ext}
            return {"ok": False}

        cases.append(_case("nonzero-witness", witness))
    return cases


def suite_duality(ctx: SuiteContext) -> List[CaseResult]:
    tau_map = duality.tau_for(ctx.datum, ctx.chi.levi.I)
    amb_d = ctx.ambient.with_algebra(coeff.derived_algebra(ctx.algebra, "D", tau_map))
    cases = []
    for weight in ctx.grades(ctx.config.samples):
        def run(weight=weight):
            z = structure.baby_verma(ctx.ambient, weight)
            duality.biduality(z)
            detail = {"ok": True, "biduality": True}
            if ctx.algebra.is_field:
                simple = structure.simple_head(ctx.ambient, weight)
                dual_simple = duality.dual_D(simple)
                target = structure.simple_head(amb_d, weight)
                detail["dual_simple"] = decompose.is_isomorphic(dual_simple, target, ctx.config.seed) is not None
                detail["ok"] = detail["dual_simple"]
            return detail

        cases.append(_case(f"Z{list(weight)}", run))
    if ctx.algebra.is_field:
        rng = ctx.rng("duality")
        pairs = [(random_target(ctx, S.U, rng), random_target(ctx, S.U, rng)) for _ in range(ctx.config.samples)]

        def anti():
            report = duality.check_antiequivalence(pairs, ctx.config.seed)
            return {"ok": report["ok"], "cases": len(report["cases"])}

        cases.append(_case("antiequivalence", anti))
    return cases


def suite_reciprocity(ctx: SuiteContext) -> List[CaseResult]:
    radical.require_field(structure.baby_verma(ctx.ambient, ctx.grades()[0]))
    tau_map = duality.tau_for(ctx.datum, ctx.chi.levi.I)
    amb_d = ctx.ambient.with_algebra(coeff.derived_algebra(ctx.algebra, "D", tau_map))

    def run():
        left = structure.multiplicities(ctx.ambient, "QQI", ctx.window)
        right = structure.multiplicities(amb_d, "ZL", ctx.window)
        mismatches = []
        for lam in left.rows:
            for mu in left.rows:
                if left.get(lam, mu) != right.get(mu, lam):
                    mismatches.append({"lambda": list(lam), "mu": list(mu),
                                       "QQI": left.get(lam, mu), "ZL_dual": right.get(mu, lam)})
        diagonal = all(left.get(lam, lam) == 1 for lam in left.rows)
        return {"ok": not mismatches and diagonal, "mismatches": mismatches, "diagonal": diagonal,
                "rows": len(left.rows)}

    def sections():
        qz = structure.multiplicities(ctx.ambient, "QZ", ctx.window)
        qqi = structure.multiplicities(ctx.ambient, "QQI", ctx.window)
        bad = [{"lambda": list(lam), "mu": list(mu)} for lam in qz.rows for mu in qz.columns
               if qz.get(lam, mu) != weyl.orbit_size(ctx.datum, mu, ctx.chi.levi.I) * qqi.get(lam, mu)]
        return {"ok": not bad, "mismatches": bad}

    return [_case("table", run), _case("z-sections", sections)]


def suite_blocks(ctx: SuiteContext) -> List[CaseResult]:
    def run():
        return dict(structure.verify_blocks(ctx.ambient, ctx.window))

    return [_case("linkage", run)]


def suite_base_change(ctx: SuiteContext) -> List[CaseResult]:
    rng = ctx.rng("base-change")
    cases = []
    for weight in ctx.grades(min(ctx.config.samples, 3)):
        def run(weight=weight):
            q = structure.projective_cover(ctx.ambient, weight, ctx.config.seed)
            exts = [decompose.ext1(q, random_target(ctx, S.U, rng))["dim"] for _ in range(ctx.config.samples)]
            return {"ok": gradedmod.is_free(q) and not any(exts), "dim": q.dim, "ext1": exts}

        cases.append(_case(f"Q{list(weight)}", run))
    return cases


def suite_oracle(ctx: SuiteContext) -> List[CaseResult]:
    radical.require_field(structure.baby_verma(ctx.ambient, ctx.grades()[0]))
    rng = ctx.rng("oracle")
    modules = [structure.baby_verma(ctx.ambient, w) for w in ctx.grades(ctx.config.samples)]
    modules += [random_target(ctx, S.U, rng) for _ in range(ctx.config.samples)]
    cases = []
    for k, module in enumerate(modules):
        if module.dim > 30 or module.dim == 0:
            continue

        def run(module=module):
            data = radical.radical_and_head(module, require_simple=False)
            if not data.simple:
                return {"ok": True, "compared": False}
            oracle = radical.oracle_radical(module)
            if oracle is None:
                return {"ok": True, "compared": False}
            return {"ok": same_spaces(data.radical, oracle, module.p), "compared": True, "method": data.method}

        cases.append(_case(f"{k}-{module.name}", run))
    return cases


SUITES: Dict[str, Callable[[SuiteContext], List[CaseResult]]] = {
    "conditions": suite_conditions,
    "frobenius": suite_frobenius,
    "iso-criterion": suite_iso_criterion,
    "theta": suite_theta,
    "irreducible-regular": suite_irreducible_regular,
    "levi-dim-formula": suite_levi_dim_formula,
    "zfilt": suite_zfilt,
    "qfilt": suite_qfilt,
    "ext-vanishing": suite_ext_vanishing,
    "duality": suite_duality,
    "reciprocity": suite_reciprocity,
    "blocks": suite_blocks,
    "base-change": suite_base_change,
    "oracle": suite_oracle,
}


def run_suite(ctx: SuiteContext, name: str) -> SuiteResult:
    start = time.perf_counter()
    try:
        cases = SUITES[name](ctx)
    except EngineError as e:
        if not e.input_error:
            raise
        cases = [CaseResult(key="precondition", ok=True, skipped=True, detail=e.to_dict())]
    cases = sorted(cases, key=lambda c: c.key)
    failed = sum(not c.ok for c in cases)
    skipped = sum(c.skipped for c in cases)
    seconds = round(time.perf_counter() - start, 3) if ctx.config.timings else None
    logger.info(f"Suite {name}: {len(cases) - failed - skipped} passed, {failed} failed, {skipped} skipped")
    return SuiteResult(name=name, ok=not failed, passed=len(cases) - failed - skipped, failed=failed,
                       skipped=skipped, cases=cases, seconds=seconds)


def run_suites(config: SuiteConfig, workers: Optional[int] = None) -> VerificationReport:
    """Run every requested suite; results are ordered by the request, not by completion."""
    ctx = build_context(config)
    names = config.suites or list(SUITES)
    workers = workers or get_settings().WORKERS
    logger.info(f"Running {len(names)} suites on {ctx.datum.label}, p={ctx.p}, I={list(ctx.chi.levi.I)}, "
                f"A={ctx.algebra.label}, seed={config.seed}")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda name: run_suite(ctx, name), names))
    return VerificationReport(
        schema_version=get_settings().SCHEMA_VERSION,
        datum_hash=datum_hash(ctx),
        config=config.model_dump(),
        suites=results,
        ok=all(r.ok for r in results),
    )
