import galois
import numpy as np
import pytest

from app.core import linalg
from app.core.exceptions import InvalidInput, NotLocal
from app.services import coeff, rootdata


class TestFields:
    """Tests for finite fields"""

    def test_prime_field(self):
        """Test that F_p is one-dimensional with b_0 = 1"""
        field = coeff.make_field(3)
        assert field.dim == 1
        assert field.is_field
        assert field.label == "F3"

    def test_extension_field_is_local(self):
        """Test that F_9 is a field with trivial nilradical"""
        field = coeff.make_field(3, 2, rank=2)
        assert field.dim == 2
        assert coeff.nilradical(field).shape[0] == 0
        assert coeff.is_local(field)

    def test_extension_field_has_no_zero_divisors(self):
        """Test that x is invertible in F_9"""
        field = coeff.make_field(3, 2)
        x = field.descriptor["generators"]["x"]
        mult = field.mult_by(x)
        assert linalg.rank(mult, 3) == 2

    def test_extension_field_products(self):
        """Test F_125 products against polynomial arithmetic modulo the defining polynomial"""
        field = coeff.make_field(5, 3)
        f = galois.irreducible_poly(5, 3)
        a, b = [1, 2, 0], [3, 0, 4]
        expected = (galois.Poly(a[::-1], field=galois.GF(5)) * galois.Poly(b[::-1], field=galois.GF(5))) % f
        assert field.multiply(np.array(a), np.array(b)).tolist() == [int(c) for c in expected.coefficients(3, "asc")]
        assert field.multiply(field.unit(), np.array(b)).tolist() == b

    def test_non_prime_rejected(self):
        """Test that a composite p raises"""
        with pytest.raises(InvalidInput):
            coeff.make_field(4)

    def test_frobenius_fixes_prime_field(self):
        """Test that a^p = a on F_p"""
        field = coeff.make_field(5)
        assert np.array_equal(coeff.frobenius_matrix(field), np.array([[1]]))


class TestTruncatedPolynomials:
    """Tests for F[t]/(t^k)"""

    def test_dual_numbers(self):
        """Test the dual numbers over F_3"""
        dual = coeff.make_dual_numbers(coeff.make_field(3))
        assert dual.dim == 2
        assert not dual.is_field
        assert dual.label == "F3[eps]"
        t = dual.descriptor["generators"]["t"]
        assert not np.any(dual.multiply(t, t))

    def test_nilradical_of_dual_numbers(self):
        """Test that the nilradical is spanned by t"""
        dual = coeff.make_dual_numbers(coeff.make_field(3))
        nil = coeff.nilradical(dual)
        assert nil.shape == (1, 2)
        assert nil[0, 0] == 0
        assert coeff.is_local(dual)

    def test_order_one_is_the_field(self):
        """Test that F[t]/(t) collapses to F"""
        algebra = coeff.make_truncated_poly(coeff.make_field(3), 1)
        assert algebra.is_field

    def test_residue_of_truncated_extension(self):
        """Test that F_9[t]/t^2 has residue field F_9"""
        algebra = coeff.make_truncated_poly(coeff.make_field(3, 2), 2)
        field, matrix = coeff.residue_quotient(algebra)
        assert field.dim == 2
        assert matrix.shape == (2, 4)

    def test_truncation_over_non_field_rejected(self):
        """Test that the base of a truncation must be a field"""
        dual = coeff.make_dual_numbers(coeff.make_field(3))
        with pytest.raises(InvalidInput):
            coeff.make_truncated_poly(dual, 2)


class TestGenericAlgebras:
    """Tests for algebras given by structure constants"""

    def test_local_generic_algebra(self):
        """Test F_3[x]/(x^2) from its multiplication table"""
        mult = np.zeros((2, 2, 2), dtype=np.int64)
        mult[0, 0, 0] = mult[0, 1, 1] = mult[1, 0, 1] = 1
        algebra = coeff.make_generic(3, mult, rank=1)
        assert not algebra.is_field
        assert algebra.residue_field.dim == 1

    def test_product_ring_is_not_local(self):
        """Test that F_3 × F_3 raises NotLocal"""
        mult = np.zeros((2, 2, 2), dtype=np.int64)
        mult[0, 0, 0] = mult[0, 1, 1] = mult[1, 0, 1] = mult[1, 1, 1] = 1
        with pytest.raises(NotLocal):
            coeff.make_generic(3, mult, rank=1)

    def test_non_commutative_table_rejected(self):
        """Test that an asymmetric table raises InvalidInput"""
        mult = np.zeros((2, 2, 2), dtype=np.int64)
        mult[0, 0, 0] = mult[0, 1, 1] = mult[1, 0, 1] = 1
        mult[0, 1, 0] = 1
        with pytest.raises(InvalidInput):
            coeff.make_generic(3, mult, rank=1)


class TestStructureMaps:
    """Tests for π parsing and derived algebras"""

    def test_parse_element(self):
        """Test sums, products and signs of generators"""
        dual = coeff.make_dual_numbers(coeff.make_field(3))
        assert coeff.parse_element(dual, "1+2*t").tolist() == [1, 2]
        assert coeff.parse_element(dual, "-t").tolist() == [0, 2]
        assert coeff.parse_element(dual, "eps^2").tolist() == [0, 0]

    def test_parse_unknown_symbol(self):
        """Test that unknown generators raise"""
        with pytest.raises(InvalidInput):
            coeff.parse_element(coeff.make_field(3), "y")

    def test_parse_pi(self):
        """Test that unspecified toral generators map to zero"""
        dual = coeff.make_base("dual:3", 2, 3)
        pi = coeff.parse_pi(dual, "h1=t")
        assert pi.tolist() == [[0, 1], [0, 0]]

    def test_parse_pi_out_of_range(self):
        """Test that h_i beyond the rank raises"""
        with pytest.raises(InvalidInput):
            coeff.parse_pi(coeff.make_field(3, 1, rank=2), "h3=1")

    def test_twist_pi_adds_weight(self):
        """Test π ∘ μ̃ = π + dμ"""
        field = coeff.make_field(3, 1, rank=2)
        assert coeff.twist_pi(field, (1, 2)).tolist() == [[1], [2]]

    def test_bar_is_an_involution(self):
        """Test that Ā of Ā is A"""
        algebra = coeff.make_base("dual:3", 2, 3, "h1=1+t")
        twice = coeff.derived_algebra(coeff.derived_algebra(algebra, "bar"), "bar")
        assert twice.same_as(algebra)

    def test_dual_algebra_for_empty_levi(self):
        """Test that τ = -1 on the torus makes 𝔻A = A"""
        datum = rootdata.datum_for("gl2", 3)
        tau_map = rootdata.tau(datum, ())
        algebra = coeff.make_base("dual:3", 2, 3, "h1=t,h2=1")
        assert coeff.derived_algebra(algebra, "D", tau_map).same_as(algebra)
        assert coeff.derived_algebra(algebra, "tau", tau_map).same_as(coeff.derived_algebra(algebra, "bar"))

    def test_derived_algebra_needs_tau(self):
        """Test that 𝔻A without τ raises"""
        with pytest.raises(InvalidInput):
            coeff.derived_algebra(coeff.make_field(3, 1, rank=2), "D")

    def test_levi_vanishing(self):
        """Test π(h_α) = 0 for α = ε1 - ε2 when π(h1) = π(h2)"""
        datum = rootdata.datum_for("gl2", 3)
        algebra = coeff.make_base("dual:3", 2, 3, "h1=t,h2=t")
        assert coeff.check_levi_vanishing(algebra, datum, [0])
        assert not coeff.check_levi_vanishing(coeff.make_base("dual:3", 2, 3, "h1=t"), datum, [0])


class TestMakeBase:
    """Tests for base algebra descriptors"""

    @pytest.mark.parametrize("descriptor,dim,field", [
        ("field:3", 1, True),
        ("field:9", 2, True),
        ("dual:3", 2, False),
        ("trunc:3:3", 3, False),
        ("trunc:9:2", 4, False),
    ])
    def test_descriptors(self, descriptor, dim, field):
        """Test the dimension and kind of each descriptor"""
        algebra = coeff.make_base(descriptor, 2, 3)
        assert algebra.dim == dim
        assert algebra.is_field == field
        assert algebra.rank == 2

    @pytest.mark.parametrize("descriptor", ["field:8", "ring:3", "trunc:3", "field:x"])
    def test_bad_descriptors(self, descriptor):
        """Test that malformed descriptors raise InvalidInput"""
        with pytest.raises(InvalidInput):
            coeff.make_base(descriptor, 2, 3)

    def test_algebra_dump(self):
        """Test the JSON dump of the dual numbers"""
        dump = coeff.algebra_to_dict(coeff.make_base("dual:3", 1, 3, "h1=t"))
        assert dump["dim"] == 2
        assert dump["field"] is False
        assert dump["pi"] == [[0, 1]]
        assert [0, 0, 0, 1] in dump["mult"]
