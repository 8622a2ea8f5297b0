from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import small_forms, unimodular_matrices
from tsl.counting import rep_count
from tsl.forms import (
    IDENTITY,
    BinaryForm,
    NotPositiveDefinite,
    NotPrimitive,
    TernaryForm,
    apply_unimodular,
    direct_sum_one,
    discriminant4,
    make_form,
    mat_det,
    mat_inverse_unimodular,
    mat_mul,
    transform_gram2,
)
from tsl.isometry import automorphism_order, is_isometric, minkowski_reduce


def exact_disc4(form):
    """Oracle: 4 * det of the rational Gram matrix."""
    a, b, c, d, e, f = form.coeffs()
    M = [[Fraction(2 * a, 2), Fraction(f, 2), Fraction(e, 2)],
         [Fraction(f, 2), Fraction(2 * b, 2), Fraction(d, 2)],
         [Fraction(e, 2), Fraction(d, 2), Fraction(2 * c, 2)]]
    det = (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
           - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
           + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))
    assert (4 * det).denominator == 1
    return int(4 * det)


class TestMakeForm:
    def test_unit_cube(self):
        form = make_form(1, 1, 1, 0, 0, 0)
        assert form.disc4 == 4
        assert form.scale_is_integral

    def test_all_ones_is_half_scale(self):
        form = make_form(1, 1, 1, 1, 1, 1)
        assert not form.scale_is_integral

    def test_imprimitive_rejected(self):
        with pytest.raises(NotPrimitive):
            make_form(2, 2, 2, 2, 2, 2)

    def test_indefinite_rejected(self):
        with pytest.raises(NotPositiveDefinite):
            make_form(1, 1, -1, 0, 0, 0)
        with pytest.raises(NotPositiveDefinite):
            make_form(1, 1, 1, 5, 0, 0)


class TestDiscriminant:
    def test_values(self):
        assert discriminant4(TernaryForm(1, 1, 1, 0, 0, 0)) == 4
        assert discriminant4(TernaryForm(1, 1, 1, 1, 1, 1)) == 2
        assert discriminant4(TernaryForm(2, 5, 5, 0, 0, 0)) == 200

    @given(small_forms)
    @settings(max_examples=60, deadline=None)
    def test_matches_rational_determinant(self, form):
        assert form.disc4 == exact_disc4(form)

    @given(small_forms, unimodular_matrices())
    @settings(max_examples=40, deadline=None)
    def test_invariant_under_basis_change(self, form, U):
        assert apply_unimodular(form, U).disc4 == form.disc4


class TestDirectSum:
    def test_unit_cube(self):
        assert direct_sum_one(BinaryForm(1, 0, 1)) == TernaryForm(1, 1, 1, 0, 0, 0)

    def test_table_shapes(self):
        assert direct_sum_one(BinaryForm(4, 4, 9)) == TernaryForm(1, 4, 9, 4, 0, 0)
        assert direct_sum_one(BinaryForm(2, 0, 13)) == TernaryForm(1, 2, 13, 0, 0, 0)


class TestTextFormat:
    def test_round_trip(self):
        form = TernaryForm(1, 2, 4, -1, 1, 0)
        assert TernaryForm.parse(str(form)) == form
        assert str(form) == "[1,2,4,-1,1,0]"
        assert BinaryForm.parse("[1, 0, 1]") == BinaryForm(1, 0, 1)

    @pytest.mark.parametrize("bad", ["1,1,1,0,0,0", "[1,1,1]", "[1,1,1,0,0,x]", "[]"])
    def test_parse_errors(self, bad):
        with pytest.raises(ValueError):
            TernaryForm.parse(bad)


class TestMinkowskiReduce:
    def test_diagonal_sort(self):
        reduced, U = minkowski_reduce(TernaryForm(5, 1, 1, 0, 0, 0))
        assert reduced == TernaryForm(1, 1, 5, 0, 0, 0)
        assert transform_gram2(TernaryForm(5, 1, 1, 0, 0, 0).gram2, U) == reduced.gram2

    def test_already_reduced_fixed(self):
        form = TernaryForm(1, 2, 4, 1, 1, 1)
        reduced, U = minkowski_reduce(form)
        assert reduced == form
        assert U == IDENTITY

    @given(small_forms, unimodular_matrices())
    @settings(max_examples=30, deadline=None)
    def test_basis_change_invariance(self, form, U):
        scrambled = apply_unimodular(form, U)
        rf, _ = minkowski_reduce(form)
        rg, _ = minkowski_reduce(scrambled)
        assert rf == rg
        assert rf.disc4 == form.disc4
        for n in range(1, 21):
            assert rep_count(form, n).count == rep_count(scrambled, n).count

    @given(small_forms)
    @settings(max_examples=40, deadline=None)
    def test_idempotent_and_inequalities(self, form):
        reduced, _ = minkowski_reduce(form)
        again, _ = minkowski_reduce(reduced)
        assert again == reduced
        a, b, c, d, e, f = reduced.coeffs()
        assert 0 < a <= b <= c
        assert abs(d) <= b and abs(e) <= a and abs(f) <= a


class TestIsometry:
    def test_self_isometry(self):
        form = TernaryForm(1, 2, 4, 1, 1, 1)
        U = is_isometric(form, form)
        assert U is not None
        assert transform_gram2(form.gram2, U) == form.gram2

    def test_watson_image(self):
        from tsl.watson import watson_lambda

        image = watson_lambda(TernaryForm(2, 5, 5, 0, 0, 0), 5).output
        assert is_isometric(TernaryForm(1, 1, 10, 0, 0, 0), image) is not None

    def test_distinct_classes_in_one_genus(self):
        assert is_isometric(TernaryForm(1, 1, 32, 0, 0, 0),
                            TernaryForm(2, 2, 9, 2, 2, 0)) is None

    def test_equivalence_relation(self):
        forms = [TernaryForm(1, 2, 4, 1, 1, 1), TernaryForm(1, 2, 4, 2, 1, 0),
                 TernaryForm(1, 4, 9, 4, 0, 0), TernaryForm(2, 5, 5, 0, 0, 0)]
        scrambles = [apply_unimodular(f, U) for f, U in zip(
            forms, [((1, 0, 1), (0, 1, 0), (0, 0, 1)), ((1, 0, 0), (2, 1, 0), (0, 0, 1)),
                    ((1, 1, 0), (0, 1, 0), (0, 1, 1)), ((1, 0, 0), (0, 1, 3), (0, 0, 1))])]
        for f, g in zip(forms, scrambles):
            U = is_isometric(f, g)
            assert U is not None
            # symmetry via the inverse map
            V = mat_inverse_unimodular(U)
            assert transform_gram2(g.gram2, V) == f.gram2
        # transitivity via composition on a three-form chain
        f, g = forms[0], scrambles[0]
        h = apply_unimodular(g, ((1, 0, 0), (1, 1, 0), (0, 0, 1)))
        Ufg = is_isometric(f, g)
        Ugh = is_isometric(g, h)
        composed = mat_mul(Ufg, Ugh)
        assert transform_gram2(f.gram2, composed) == h.gram2


class TestAutomorphisms:
    def test_unit_cube_brute_force(self):
        # oracle: exhaustive search over all matrices with entries in {-1,0,1}
        form = TernaryForm(1, 1, 1, 0, 0, 0)
        G = form.gram2
        count = 0
        from itertools import product
        for flat in product((-1, 0, 1), repeat=9):
            U = (flat[:3], flat[3:6], flat[6:])
            if mat_det(U) in (1, -1) and transform_gram2(G, U) == G:
                count += 1
        assert count == 48
        assert automorphism_order(form) == 48

    @pytest.mark.parametrize("form,order", [
        (TernaryForm(1, 4, 9, 4, 0, 0), 8),
        (TernaryForm(1, 1, 32, 0, 0, 0), 16),
        (TernaryForm(2, 2, 9, 2, 2, 0), 16),
        (TernaryForm(3, 3, 4, 3, 0, 3), 12),
        (TernaryForm(1, 1, 27, 0, 0, 1), 24),
    ])
    def test_known_orders(self, form, order):
        assert automorphism_order(form) == order

    @given(small_forms, unimodular_matrices())
    @settings(max_examples=15, deadline=None)
    def test_even_and_isometry_invariant(self, form, U):
        order = automorphism_order(form)
        assert order % 2 == 0
        assert automorphism_order(apply_unimodular(form, U)) == order
