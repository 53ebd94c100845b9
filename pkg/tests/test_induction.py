import pytest

from app.core.exceptions import UnsupportedPair, WrongSubalgebra
from app.models.module import SubalgebraSpec as S
from app.services import coeff, gradedmod, induction, rootdata, structure


def ambient(selector="gl2", p=3, levi=(), base=None):
    datum = rootdata.datum_for(selector, p)
    chi = rootdata.standard_levi_chi(datum, levi)
    return gradedmod.make_ambient(datum, chi, coeff.make_base(base or f"field:{p}", datum.d, p))


class TestInduce:
    """Tests for induction along subalgebra pairs"""

    @pytest.mark.parametrize("selector,dim", [("gl2", 3), ("gl3", 27)])
    def test_baby_verma_dimension(self, selector, dim):
        """Test dim Z(λ) = p^{|R+|}"""
        z = structure.baby_verma(ambient(selector), (0,) * (2 if selector == "gl2" else 3))
        assert z.dim == dim
        assert gradedmod.validate(z) == []

    def test_phi_dimension(self):
        """Test dim Φ(λ) = p^{|R|}"""
        assert structure.phi(ambient(), (0, 0)).dim == 9

    def test_levi_verma_of_empty_levi(self):
        """Test that Z_∅(λ) is A^λ itself"""
        assert structure.baby_verma(ambient(), (1, 0), "levi").dim == 1

    def test_unsupported_pair(self):
        """Test that U → U^0 is not an induction"""
        base = induction.lambda_object(ambient(), (0, 0))
        with pytest.raises(UnsupportedPair):
            induction.induce(base, S.U, S.U0)

    def test_wrong_source_subalgebra(self):
        """Test that the module must act through the source subalgebra"""
        base = induction.lambda_object(ambient(), (0, 0))
        with pytest.raises(WrongSubalgebra):
            induction.induce(base, S.B, S.U)

    def test_unit_map_is_a_morphism(self):
        """Test that m ↦ 1 ⊗ m commutes with the U^0-action"""
        base = induction.lambda_object(ambient(base="dual:3"), (1, 0))
        induced = induction.induce(base, S.U0, S.U)
        unit = induction.unit_map(base, induced)
        assert gradedmod.is_morphism(unit)

    def test_cover_generator_sits_in_lambda(self):
        """Test that 1 ⊗ 1 lives in the grade of λ"""
        z = structure.baby_verma(ambient(), (1, 0))
        grade, v = induction.cover_generator(z)
        assert grade == (1, 0)
        assert v.sum() == 1

    def test_induced_module_over_parabolic(self):
        """Test U^I → P_I^+ induction for gl3 with I = {α1}"""
        amb = ambient("gl3", 5, (0,))
        levi_verma = structure.baby_verma(amb, (0, 0, 0), "levi")
        assert levi_verma.dim == 5
        upper = induction.induce(levi_verma, S.UI, S.PI_PLUS)
        assert upper.dim == 5 * 25
        assert gradedmod.validate(upper) == []


class TestFrobeniusReciprocity:
    """Tests for Hom(Ind M, N) = Hom(M, res N)"""

    def test_reciprocity_for_phi(self):
        """Test the adjunction from U^0 to U against a baby Verma"""
        amb = ambient()
        result = induction.frobenius_check(induction.lambda_object(amb, (1, 0)),
                                           structure.baby_verma(amb, (1, 0)), S.U0, S.U)
        assert result["ok"]
        assert result["dim_induced_side"] == 1

    def test_reciprocity_from_borel(self):
        """Test the adjunction from B to U"""
        amb = ambient()
        base = induction.inflate(induction.lambda_object(amb, (0, 0)), S.B)
        result = induction.frobenius_check(base, structure.baby_verma(amb, (0, 0)), S.B, S.U)
        assert result["ok"]


class TestRegrading:
    """Tests for inflation, grading lifts and Υ"""

    def test_inflate_to_borel(self):
        """Test that inflation keeps the data and changes the subalgebra"""
        base = induction.lambda_object(ambient(), (0, 0))
        inflated = induction.inflate(base, S.B)
        assert inflated.ambient.spec is S.B
        assert inflated.dims == base.dims

    def test_inflate_unsupported(self):
        """Test that inflating to U raises"""
        base = induction.lambda_object(ambient(), (0, 0))
        with pytest.raises(UnsupportedPair):
            induction.inflate(base, S.U)

    def test_lift_then_collapse(self):
        """Test that Υ undoes the grading lift of a U^0-object"""
        base = induction.lambda_object(ambient(levi=(0,)), (4, 0))
        lifted = induction.lift_grading(base)
        assert lifted.ambient.graded_by_x
        assert induction.upsilon(lifted).dims == base.dims

    def test_lift_requires_torus_object(self):
        """Test that only U^0-objects lift"""
        with pytest.raises(WrongSubalgebra):
            induction.lift_grading(structure.baby_verma(ambient(), (0, 0)))

    def test_highest_grade_vectors_of_simple_verma(self):
        """Test that Z(λ) with <λ+ρ, α∨> = p has one primitive vector"""
        z = structure.baby_verma(ambient(), (2, 0))
        vectors = induction.highest_grade_vectors(z)
        assert len(vectors) == 1
        assert vectors[0][0] == (2, 0)
