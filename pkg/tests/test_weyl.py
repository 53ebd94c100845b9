import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.core.exceptions import InvalidInput, WindowTooSmall
from app.models.weyl import AffineGenerator, AffineWord, CosetZI, WeylGroup, Window
from app.services import rootdata, weyl

GL2 = rootdata.datum_for("gl2", 3)
GL3 = rootdata.datum_for("gl3", 5)

weights2 = st.tuples(st.integers(-8, 8), st.integers(-8, 8))
weights3 = st.tuples(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))


class TestCosets:
    """Tests for X/ZI and X/pZI arithmetic"""

    def test_reduce_zi_moves_along_simple_root(self):
        """Test the canonical representative of λ + Zα"""
        assert weyl.reduce_zi(GL2, (0,), (2, 3)) == (0, 5)

    def test_reduce_zi_with_empty_levi_is_identity(self):
        """Test that I = ∅ leaves weights alone"""
        assert weyl.reduce_zi(GL2, (), (2, 3)) == (2, 3)

    def test_reduce_pzi(self):
        """Test the canonical representative of λ + 3Zα"""
        assert weyl.reduce_pzi(GL2, (0,), (4, 1)) == (1, 4)

    def test_d_weight_reduces_mod_p(self):
        """Test that dλ is λ mod p"""
        assert weyl.d_weight(GL2, (-1, 7)) == (2, 1)

    def test_split_then_lift(self):
        """Test that lift inverts split on a known coset"""
        coset = weyl.reduce_mod_pZI(GL2, (0,), (1, 2))
        zi, dlam = weyl.split(GL2, coset)
        assert zi.rep == (0, 3)
        assert dlam == (1, 2)
        assert weyl.lift(GL2, zi, dlam) == coset

    def test_lift_rejects_incompatible_weight(self):
        """Test that dλ outside the coset raises InvalidInput"""
        zi = weyl.coset_zi(GL2, (), (1, 2))
        with pytest.raises(InvalidInput):
            weyl.lift(GL2, zi, (0, 0))

    @given(weights3)
    @settings(max_examples=60, deadline=None)
    def test_lift_split_round_trip(self, lam):
        """Test that λ + pZI is recovered from (λ + ZI, dλ)"""
        coset = weyl.reduce_mod_pZI(GL3, (0, 1), lam)
        assert weyl.lift(GL3, *weyl.split(GL3, coset)) == coset

    @given(weights3, st.integers(-4, 4))
    @settings(max_examples=60, deadline=None)
    def test_coset_zi_ignores_levi_roots(self, lam, n):
        """Test that adding a root of I keeps the coset"""
        shifted = tuple(x + n * a for x, a in zip(lam, GL3.simple_roots[1]))
        assert weyl.coset_zi(GL3, (1,), lam) == weyl.coset_zi(GL3, (1,), shifted)


class TestCosetOrder:
    """Tests for the order on X/ZI"""

    def test_positive_root_is_above_zero(self):
        """Test 0 < α and not α < 0"""
        zero = CosetZI(rep=(0, 0), I=())
        alpha = CosetZI(rep=(1, -1), I=())
        assert weyl.leq_coset(GL2, zero, alpha)
        assert not weyl.leq_coset(GL2, alpha, zero)

    def test_outside_root_lattice_is_incomparable(self):
        """Test that weights differing by a non-root are incomparable"""
        a = CosetZI(rep=(0, 0), I=())
        b = CosetZI(rep=(1, 0), I=())
        assert not weyl.leq_coset(GL2, a, b)
        assert not weyl.leq_coset(GL2, b, a)

    def test_levi_directions_are_free(self):
        """Test that negative coefficients along I are allowed"""
        a = weyl.coset_zi(GL3, (0,), (0, 0, 0))
        b = CosetZI(rep=(-1, 1, 0), I=(0,))
        assert weyl.leq_coset(GL3, a, b)

    def test_coset_height_is_constant_on_cosets(self):
        """Test that coset_height ignores the Levi directions"""
        assert weyl.coset_height(GL3, (0,), (0, 0, 0)) == weyl.coset_height(GL3, (0,), (1, -1, 0))

    def test_height_of_positive_root(self):
        """Test the height of ε1 - ε2 in gl2"""
        assert weyl.height(GL2, (1, -1)) == 2


class TestDotAction:
    """Tests for the dot action and fundamental representatives"""

    def test_simple_reflection_of_zero(self):
        """Test s·0 = -α for gl2"""
        word = AffineWord((AffineGenerator("s", 0, 0),))
        assert weyl.dot_apply(GL2, word, (0, 0)) == (-1, 1)

    @given(weights2)
    @settings(max_examples=50, deadline=None)
    def test_reflection_is_an_involution(self, lam):
        """Test s·(s·λ) = λ"""
        word = AffineWord((AffineGenerator("s", 0, 3), AffineGenerator("s", 0, 3)))
        assert weyl.dot_apply(GL2, word, lam) == lam

    @given(weights2)
    @settings(max_examples=50, deadline=None)
    def test_word_inverse_undoes_word(self, lam):
        """Test that w^{-1}·(w·λ) = λ"""
        word = AffineWord((AffineGenerator("t", 0, 3), AffineGenerator("s", 0, 0)))
        assert weyl.dot_apply(GL2, word.inverse(), weyl.dot_apply(GL2, word, lam)) == lam

    def test_unknown_generator(self):
        """Test that unknown generator kinds raise"""
        with pytest.raises(InvalidInput):
            weyl.apply_generator(GL2, AffineGenerator("x", 0, 0), (0, 0))

    def test_finite_orbit_of_zero(self):
        """Test that 0 and s·0 share a representative"""
        assert weyl.same_orbit(GL2, (0, 0), (-1, 1), WeylGroup.W)
        assert weyl.fundamental_representative(GL2, (-1, 1), WeylGroup.W) == (0, 0)

    def test_affine_orbit_uses_p_reflection(self):
        """Test that s_{α,p}·0 is linked to 0 under the affine group"""
        assert weyl.same_orbit(GL2, (0, 0), (2, -2), WeylGroup.W_P)
        assert not weyl.same_orbit(GL2, (0, 0), (2, -2), WeylGroup.W)

    def test_parabolic_group_with_empty_levi_is_trivial(self):
        """Test that W_∅ fixes every weight"""
        assert not weyl.same_orbit(GL2, (0, 0), (-1, 1), WeylGroup.W_I, ())

    def test_same_orbit_outside_window(self):
        """Test that weights outside the window raise WindowTooSmall"""
        with pytest.raises(WindowTooSmall):
            weyl.same_orbit(GL2, (0, 0), (5, 5), WeylGroup.W, window=Window.cube(-1, 1, 2))

    @given(weights2)
    @settings(max_examples=40, deadline=None)
    def test_representative_is_constant_on_window_orbit(self, lam):
        """Test that every point of a dot orbit has the same representative"""
        window = Window.cube(-8, 8, 2)
        rep = weyl.fundamental_representative(GL2, lam, WeylGroup.W_P)
        for mu in weyl.dot_orbit(GL2, lam, WeylGroup.W_P, window):
            assert weyl.fundamental_representative(GL2, mu, WeylGroup.W_P) == rep

    def test_dot_orbit_start_outside_window(self):
        """Test that dot_orbit refuses a start outside the window"""
        with pytest.raises(WindowTooSmall):
            weyl.dot_orbit(GL2, (4, 4), WeylGroup.W, Window.cube(0, 1, 2))


class TestOrbitSizes:
    """Tests for |W_I · dλ| and paths between grades"""

    def test_regular_weight(self):
        """Test a free W_I orbit on (Z/p)^d"""
        assert weyl.orbit_size(GL2, (0, 0), (0,)) == 2

    def test_singular_weight(self):
        """Test a weight fixed by the dot action mod p"""
        assert weyl.orbit_size(GL2, (0, 1), (0,)) == 1

    def test_empty_levi(self):
        """Test that W_∅ orbits are points"""
        assert weyl.orbit_size(GL3, (1, 2, 3), ()) == 1

    def test_grade_path_reaches_reflection(self):
        """Test a one-step path from λ to s·λ"""
        target = weyl.dot_simple(GL2, (0,), 0, weyl.reduce_pzi(GL2, (0,), (0, 0)))
        path = weyl.grade_path(GL2, (0,), (0, 0), target)
        assert len(path) == 1
        assert path[0][1] == 0

    def test_grade_path_outside_orbit(self):
        """Test that unlinked grades give None"""
        assert weyl.grade_path(GL2, (0,), (0, 0), (1, 0)) is None


class TestOrbitTable:
    """Tests for the window orbit table"""

    def test_one_row_per_window_point(self):
        """Test that every window weight appears once"""
        window = Window.cube(-1, 1, 2)
        rows = weyl.orbit_table(GL2, window, WeylGroup.W)
        assert len(rows) == window.size() == 9
        assert rows[0] == {"weight": [-1, -1], "orbit_id": 0, "representative": [-1, -1]}

    def test_empty_window(self):
        """Test that a > b gives no rows"""
        assert weyl.orbit_table(GL2, Window.cube(1, 0, 2), WeylGroup.W) == []
