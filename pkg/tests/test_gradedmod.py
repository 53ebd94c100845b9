import numpy as np
import pytest

from app.core import linalg
from app.core.exceptions import (AmbientMismatch, InternalInvariantViolated, InvalidInput, NotIdempotent,
                                 WrongSubalgebra)
from app.models.module import SubalgebraSpec
from app.services import coeff, gradedmod, induction, rootdata, structure


def ambient(selector="gl2", p=3, levi=(), base="field:3"):
    datum = rootdata.datum_for(selector, p)
    chi = rootdata.standard_levi_chi(datum, levi)
    return gradedmod.make_ambient(datum, chi, coeff.make_base(base, datum.d, p))


class TestAmbient:
    """Tests for ambient categories"""

    def test_algebra_rank_must_match(self):
        """Test that π must be defined on every toral generator"""
        datum = rootdata.datum_for("gl2", 3)
        chi = rootdata.standard_levi_chi(datum, ())
        with pytest.raises(InvalidInput):
            gradedmod.make_ambient(datum, chi, coeff.make_field(3, 1, rank=1))

    def test_compatible_ambients(self):
        """Test that equal data give compatible ambients"""
        assert ambient().compatible(ambient())
        assert not ambient().compatible(ambient(levi=(0,)))

    def test_mismatched_hom_raises(self):
        """Test that Hom across categories raises AmbientMismatch"""
        z = structure.baby_verma(ambient(), (0, 0))
        other = structure.baby_verma(ambient(levi=(0,)), (0, 0))
        with pytest.raises(AmbientMismatch):
            gradedmod.hom_space(z, other)


class TestValidation:
    """Tests for the module axiom checks"""

    def test_baby_verma_is_valid(self):
        """Test that Z(λ) satisfies every axiom"""
        assert gradedmod.validate(structure.baby_verma(ambient(), (1, 0))) == []

    def test_baby_verma_with_nilpotent_character_is_valid(self):
        """Test that e^p acts by χ(e)^p on Z(λ) for regular nilpotent χ"""
        assert gradedmod.validate(structure.baby_verma(ambient(levi=(0,)), (0, 0))) == []

    def test_broken_unit_is_flagged(self):
        """Test that b_0 acting by zero is reported"""
        amb = ambient().with_spec(SubalgebraSpec.U0)
        module = gradedmod.make_module(amb, {(0, 0): 1}, {(0, 0): [np.zeros((1, 1))]}, {})
        report = gradedmod.validate(module)
        assert report
        assert report[0]["condition"] == "A'"

    def test_non_acting_root_is_flagged(self):
        """Test that an action by a root outside the subalgebra is reported"""
        amb = ambient().with_spec(SubalgebraSpec.U0)
        module = gradedmod.make_module(
            amb, {(0, 0): 1, (1, -1): 1},
            {(0, 0): [np.eye(1)], (1, -1): [np.eye(1)]},
            {(0, (0, 0)): np.ones((1, 1))}
        )
        assert any(v["condition"] == "C'" for v in gradedmod.validate(module))


class TestHomAndSpin:
    """Tests for Hom spaces, spin and generators"""

    def test_verma_endomorphisms_are_scalars(self):
        """Test End(Z(λ)) = F_p"""
        z = structure.baby_verma(ambient(), (0, 0))
        assert len(gradedmod.hom_space(z, z)) == 1

    def test_spin_of_singular_vector(self):
        """Test that e_-α v_0 generates a two-dimensional submodule of Z(0)"""
        z = structure.baby_verma(ambient(), (0, 0))
        spaces = gradedmod.spin(z, [((-1, 1), np.array([1]))])
        assert gradedmod.subspace_dim(spaces) == 2

    def test_verma_has_one_generator(self):
        """Test that Z(λ) is cyclic"""
        z = structure.baby_verma(ambient(), (1, 0))
        gens = gradedmod.generators(z)
        assert len(gens) == 1
        assert gens[0][0] == (1, 0)

    def test_extend_from_generators_identity(self):
        """Test that v_0 ↦ v_0 extends to the identity"""
        z = structure.baby_verma(ambient(), (1, 0))
        grade, v0 = structure.verma_generator(z)
        f = gradedmod.extend_from_generators(z, z, [(grade, v0, v0)])
        assert gradedmod.equal_morphisms(f, gradedmod.identity(z))

    def test_extend_requires_generators(self):
        """Test that a non-generating vector raises"""
        z = structure.baby_verma(ambient(), (0, 0))
        v = np.array([1])
        with pytest.raises(InternalInvariantViolated) as excinfo:
            gradedmod.extend_from_generators(z, z, [((-1, 1), v, v)])
        assert excinfo.value.input_error is False


class TestSubquotients:
    """Tests for submodules, quotients, kernels and sums"""

    def test_quotient_by_singular_submodule(self):
        """Test that Z(0) / <e_-α v_0> is one-dimensional"""
        z = structure.baby_verma(ambient(), (0, 0))
        spaces = gradedmod.spin(z, [((-1, 1), np.array([1]))])
        sub, inclusion = gradedmod.submodule(z, spaces)
        quot, projection = gradedmod.quotient(z, spaces)
        assert sub.dim == 2
        assert quot.dim == 1
        assert gradedmod.is_morphism(inclusion)
        assert gradedmod.is_morphism(projection)
        assert gradedmod.compose(projection, inclusion).is_zero()
        assert gradedmod.validate(quot) == []

    def test_submodule_must_be_stable(self):
        """Test that the highest line of Z(0) alone is not a submodule"""
        z = structure.baby_verma(ambient(), (0, 0))
        with pytest.raises(InternalInvariantViolated):
            gradedmod.submodule(z, {(0, 0): np.array([[1]])})

    def test_kernel_of_projection(self):
        """Test that the kernel of M → M/S is S"""
        z = structure.baby_verma(ambient(), (0, 0))
        spaces = gradedmod.spin(z, [((-1, 1), np.array([1]))])
        _, projection = gradedmod.quotient(z, spaces)
        ker, _ = gradedmod.kernel(projection)
        assert ker.dim == 2

    def test_direct_sum(self):
        """Test inclusions and projections of M ⊕ N"""
        amb = ambient()
        m = structure.baby_verma(amb, (0, 0))
        n = structure.baby_verma(amb, (1, 0))
        total, incs, projs = gradedmod.direct_sum(m, n)
        assert total.dim == 6
        assert gradedmod.validate(total) == []
        assert gradedmod.equal_morphisms(gradedmod.compose(projs[0], incs[0]), gradedmod.identity(m))
        assert gradedmod.compose(projs[1], incs[0]).is_zero()

    def test_direct_sum_of_nothing(self):
        """Test that an empty direct sum raises"""
        with pytest.raises(InvalidInput):
            gradedmod.direct_sum()

    def test_summand_project_needs_idempotent(self):
        """Test that 2·id is rejected as an idempotent"""
        z = structure.baby_verma(ambient(), (1, 0))
        two = gradedmod.combine([gradedmod.identity(z)], [2])
        with pytest.raises(NotIdempotent):
            gradedmod.summand_project(z, two)

    def test_summand_of_identity(self):
        """Test that the identity projects onto the whole module"""
        z = structure.baby_verma(ambient(), (1, 0))
        summand, inclusion, projection = gradedmod.summand_project(z, gradedmod.identity(z))
        assert summand.dim == z.dim
        assert gradedmod.is_isomorphism(inclusion)


class TestRestrictionAndCoefficients:
    """Tests for restriction, base change and freeness"""

    def test_restrict_to_borel(self):
        """Test that restriction keeps only positive root actions"""
        z = structure.baby_verma(ambient(), (0, 0))
        res = gradedmod.restrict(z, SubalgebraSpec.B)
        assert res.ambient.spec is SubalgebraSpec.B
        assert all(r in res.ambient.roots for r, _ in res.actions)
        assert gradedmod.validate(res) == []

    def test_restrict_to_larger_subalgebra(self):
        """Test that restricting a U^0-object to U raises"""
        base = induction.lambda_object(ambient(), (0, 0))
        with pytest.raises(WrongSubalgebra):
            gradedmod.restrict(base, SubalgebraSpec.U)

    def test_base_change_to_extension_field(self):
        """Test that Z(λ) ⊗ F_9 has twice the F_3-dimension"""
        z = structure.baby_verma(ambient(), (1, 0))
        target = coeff.make_field(3, 2, rank=2)
        extended = gradedmod.base_change(z, target, coeff.unit_embedding(z.ambient.algebra, target))
        assert extended.dim == 6
        assert gradedmod.is_free(extended)
        assert gradedmod.validate(extended) == []

    def test_verma_over_dual_numbers_is_free(self):
        """Test that Z(λ) over F_3[ε] is A-free of rank 3"""
        z = structure.baby_verma(ambient(base="dual:3"), (1, 0))
        assert z.dim == 6
        assert gradedmod.is_free(z)

    def test_residue_of_dual_verma_is_not_free(self):
        """Test that M/εM is not free over F_3[ε]"""
        z = structure.baby_verma(ambient(base="dual:3"), (1, 0))
        eps = z.ambient.algebra.descriptor["generators"]["eps"]
        spaces = {}
        for c in z.grades:
            basis = linalg.row_basis(z.a_op(c, eps).T, 3)
            if basis.shape[0]:
                spaces[c] = basis
        quot, _ = gradedmod.quotient(z, spaces)
        assert quot.dim == 3
        assert not gradedmod.is_free(quot)


class TestDump:
    """Tests for the JSON form of modules"""

    def test_dump_and_load(self):
        """Test that a dumped module loads back with the same data"""
        z = structure.baby_verma(ambient(), (1, 0))
        loaded = gradedmod.module_from_dict(gradedmod.module_to_dict(z), z.ambient)
        assert loaded.dims == z.dims
        assert gradedmod.validate(loaded) == []
        assert len(gradedmod.hom_space(loaded, z)) == 1

    def test_dump_fields(self):
        """Test the summary fields of the dump"""
        dump = gradedmod.module_to_dict(structure.baby_verma(ambient(), (1, 0)))
        assert dump["dim"] == 3
        assert dump["spec"] == "U"
        assert dump["I"] == []
