import numpy as np
import pytest

from app.core.exceptions import BadPrime, InvalidInput, UnsupportedType
from app.services import rootdata


class TestGlData:
    """Tests for gl_n data"""

    def test_gl2_roots(self):
        """Test that gl2 has one positive root ε1 - ε2"""
        datum = rootdata.datum_for("gl2", 3)
        assert datum.n_positive == 1
        assert datum.roots == ((1, -1), (-1, 1))
        assert datum.rho == (1, 0)

    def test_gl3_positive_roots_in_height_order(self):
        """Test that simple roots come before the highest root"""
        datum = rootdata.datum_for("gl3", 3)
        assert datum.n_positive == 3
        assert datum.roots[:3] == ((1, -1, 0), (0, 1, -1), (1, 0, -1))
        assert [datum.height(r) for r in datum.positive()] == [1, 1, 2]

    def test_negative_of_is_an_involution(self):
        """Test that negative_of pairs each root with its negative"""
        datum = rootdata.datum_for("gl3", 5)
        for r in range(len(datum.roots)):
            neg = datum.negative_of(r)
            assert datum.negative_of(neg) == r
            assert datum.roots[neg] == tuple(-x for x in datum.roots[r])

    def test_p2_is_rejected(self):
        """Test that p = 2 raises BadPrime"""
        with pytest.raises(BadPrime):
            rootdata.build_gl(2, 2)

    def test_composite_is_rejected(self):
        """Test that a composite modulus raises BadPrime"""
        with pytest.raises(BadPrime):
            rootdata.build_gl(2, 9)

    def test_gl_size_limit(self):
        """Test that gl_n beyond the supported range raises"""
        with pytest.raises(UnsupportedType):
            rootdata.build_gl(7, 3)

    def test_datum_is_cached(self):
        """Test that equal selectors give the same object"""
        assert rootdata.datum_for("gl2", 5) is rootdata.datum_for("gl2", 5)


class TestCartanData:
    """Tests for data built from Cartan matrices"""

    def test_b2_has_four_positive_roots(self):
        """Test the B2 root count at p = 7"""
        datum = rootdata.datum_for("B2", 7)
        assert datum.n_positive == 4
        assert datum.lie_dim == 10

    def test_a2_at_p3_is_rejected(self):
        """Test that p dividing n + 1 is rejected for type A"""
        with pytest.raises(BadPrime):
            rootdata.datum_for("A2", 3)

    def test_unknown_type(self):
        """Test that unparsable types raise UnsupportedType"""
        with pytest.raises(UnsupportedType):
            rootdata.parse_type("Z")

    def test_every_root_pairs_to_two_with_its_coroot(self):
        """Test <α, α∨> = 2"""
        datum = rootdata.datum_for("B2", 7)
        for r in range(len(datum.roots)):
            assert datum.pairing(datum.roots[r], r) == 2


class TestLeviAndCharacter:
    """Tests for Levi data and the standard Levi p-character"""

    def test_levi_of_simple_root(self):
        """Test root sets of I = {α1} in gl3"""
        datum = rootdata.datum_for("gl3", 3)
        levi = rootdata.levi_spec(datum, [0])
        assert levi.levi_positive == (0,)
        assert len(levi.levi_roots) == 2
        assert len(levi.u_plus) == 2
        assert len(levi.u_minus) == 2

    def test_chi_is_one_on_negative_simple_roots(self):
        """Test χ(e_{-α}) = 1 exactly for α in I"""
        datum = rootdata.datum_for("gl3", 3)
        chi = rootdata.standard_levi_chi(datum, [1])
        neg = datum.negative_of(datum.simple_index(1))
        assert chi(neg) == 1
        assert sum(chi.values) == 1

    def test_empty_levi_gives_zero_character(self):
        """Test that I = ∅ gives χ = 0"""
        datum = rootdata.datum_for("gl2", 3)
        assert rootdata.standard_levi_chi(datum, []).is_zero()

    def test_invalid_levi_index(self):
        """Test that indices outside the simple roots raise"""
        datum = rootdata.datum_for("gl2", 3)
        with pytest.raises(InvalidInput):
            rootdata.levi_spec(datum, [3])


class TestTau:
    """Tests for the automorphism τ"""

    @pytest.mark.parametrize("selector,p,I", [("gl2", 3, ()), ("gl2", 3, (0,)), ("gl3", 3, (0,)), ("gl3", 5, (0, 1))])
    def test_tau_is_verified_automorphism(self, selector, p, I):
        """Test that τ preserves brackets and negates χ"""
        datum = rootdata.datum_for(selector, p)
        tau_map = rootdata.tau(datum, I)
        rootdata.verify_tau(datum, rootdata.standard_levi_chi(datum, I), tau_map)
        assert np.array_equal(tau_map.matrix @ tau_map.inverse % p, np.eye(datum.lie_dim, dtype=np.int64))

    def test_tau_permutes_roots(self):
        """Test that root_perm is a permutation"""
        datum = rootdata.datum_for("gl3", 3)
        tau_map = rootdata.tau(datum, (0,))
        assert sorted(tau_map.root_perm) == list(range(len(datum.roots)))

    def test_x_action_for_empty_levi_is_minus_identity(self):
        """Test that w_∅ = 1 so τ acts on X by -1"""
        datum = rootdata.datum_for("gl2", 3)
        tau_map = rootdata.tau(datum, ())
        assert tau_map.on_weight((2, -1)) == (-2, 1)


class TestDatumDump:
    """Tests for the JSON dump"""

    def test_dump_fields(self):
        """Test that the dump lists roots, coroots and structure constants"""
        datum = rootdata.datum_for("gl2", 3)
        chi = rootdata.standard_levi_chi(datum, [0])
        dump = rootdata.datum_to_dict(datum, chi)
        assert dump["positive_roots"] == [[1, -1]]
        assert dump["I"] == [0]
        assert dump["chi"] == [[[-1, 1], 1]]
        assert dump["p"] == 3
