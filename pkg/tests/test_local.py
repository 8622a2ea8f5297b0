import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_forms, unimodular_matrices
from tsl.counting import rep_count
from tsl.forms import TernaryForm, apply_unimodular
from tsl.local import (
    InvalidPrime,
    hecke_weight,
    jacobi,
    jordan_odd,
    split_by_conductor,
    terminal_condition_at,
    unimodular_part_anisotropic,
)

ODD_PRIMES = (3, 5, 7, 11, 13, 47)


class TestJacobi:
    def test_basics(self):
        for p in (3, 5, 7, 11):
            assert jacobi(1, p) == 1
        assert jacobi(-1, 5) == 1
        assert jacobi(2, 5) == -1

    @pytest.mark.parametrize("p", ODD_PRIMES)
    def test_matches_legendre_by_squaring(self, p):
        squares = {(x * x) % p for x in range(1, p)}
        for a in range(p):
            expected = 0 if a == 0 else (1 if a in squares else -1)
            assert jacobi(a, p) == expected

    @given(st.integers(-50, 50), st.integers(-50, 50))
    @settings(max_examples=60, deadline=None)
    def test_multiplicative(self, a, b):
        m = 15
        assert jacobi(a * b, m) == jacobi(a, m) * jacobi(b, m)

    def test_rejects_even_modulus(self):
        with pytest.raises(ValueError):
            jacobi(3, 4)


class TestHeckeWeight:
    def test_lambda_zero(self):
        for D, p in ((200, 3), (4, 7), (26, 3)):
            assert hecke_weight(D, p, 0) == 1

    def test_lambda_one_is_p_plus_one_minus_chi(self):
        for D in (2, 4, 26, 200):
            for p in (3, 7, 13):
                if (2 * D) % p == 0:
                    continue
                value = hecke_weight(D, p, 1)
                assert value in (p, p + 2)
                assert value == p + 1 - jacobi(-D, p)

    def test_thirteen_with_nonresidue(self):
        assert jacobi(-2, 13) == -1
        assert hecke_weight(2, 13, 1) == 15

    def test_closed_form_vs_geometric_sums(self):
        for D, p in ((26, 3), (2, 5), (94, 3)):
            chi = jacobi(-D, p)
            for lam in range(7):
                direct = sum(p**i for i in range(lam + 1)) - chi * sum(
                    p**i for i in range(lam))
                assert hecke_weight(D, p, lam) == direct

    def test_invalid_prime(self):
        with pytest.raises(InvalidPrime):
            hecke_weight(200, 5, 1)
        with pytest.raises(InvalidPrime):
            hecke_weight(200, 2, 1)
        with pytest.raises(InvalidPrime):
            hecke_weight(7, 9, 1)


class TestSplitByConductor:
    def test_examples(self):
        sp = split_by_conductor(12, 6)
        assert (sp.n1, sp.n2, sp.exponents) == (12, 1, {})
        sp = split_by_conductor(35, 200)
        assert (sp.n1, sp.n2, sp.exponents) == (5, 7, {7: 1})
        sp = split_by_conductor(1, 200)
        assert (sp.n1, sp.n2) == (1, 1)

    @given(st.integers(1, 1000), st.integers(1, 5000))
    @settings(max_examples=120, deadline=None)
    def test_recombination(self, n, D):
        sp = split_by_conductor(n, D)
        assert sp.n1 * sp.n2 == n
        from math import gcd
        assert gcd(sp.n2, 2 * D) == 1
        rebuilt = 1
        for p, e in sp.exponents.items():
            rebuilt *= p**e
        assert rebuilt == sp.n2


class TestJordanOdd:
    def test_examples(self):
        assert jordan_odd(TernaryForm(2, 5, 5, 0, 0, 0), 5).components == (
            (0, -1, 1), (1, 1, 1), (1, 1, 1))
        assert jordan_odd(TernaryForm(1, 1, 1, 0, 0, 0), 3).components == (
            (0, 1, 1), (0, 1, 1), (0, 1, 1))
        assert jordan_odd(TernaryForm(1, 1, 10, 0, 0, 0), 5).components == (
            (0, 1, 1), (0, 1, 1), (1, -1, 1))

    def test_determinant_consistency_on_catalog(self, table_entries):
        sample = [e.form for e in table_entries[::23]]
        sample += [TernaryForm(2, 5, 5, 0, 0, 0), TernaryForm(1, 3, 9, 2, 1, 1)]
        for form in sample:
            D = form.disc4
            for p in ODD_PRIMES:
                jd = jordan_odd(form, p)
                vp = 0
                m = D
                while m % p == 0:
                    m //= p
                    vp += 1
                assert sum(jd.valuations()) == vp
                prod = 1
                for _, cls, _ in jd.components:
                    prod *= cls
                assert prod == jacobi(m, p)

    @given(small_forms, unimodular_matrices())
    @settings(max_examples=25, deadline=None)
    def test_basis_change_invariance(self, form, U):
        for p in (3, 5):
            assert jordan_odd(form, p) == jordan_odd(apply_unimodular(form, U), p)


class TestLocalPredicates:
    def test_anisotropic_examples(self):
        assert unimodular_part_anisotropic(TernaryForm(2, 5, 5, 0, 0, 0), 5)
        assert not unimodular_part_anisotropic(TernaryForm(1, 1, 10, 0, 0, 0), 5)
        assert not unimodular_part_anisotropic(TernaryForm(1, 1, 1, 0, 0, 0), 3)

    def test_terminal_examples(self):
        assert terminal_condition_at(TernaryForm(2, 5, 5, 0, 0, 0), 5)
        assert not terminal_condition_at(TernaryForm(1, 1, 1, 0, 0, 0), 3)
        assert terminal_condition_at(TernaryForm(2, 13, 13, 0, 0, 0), 13)


class TestGenusMultiplicativity:
    def test_class_number_one_end_to_end(self):
        form = TernaryForm(1, 1, 1, 0, 0, 0)
        D = form.disc4
        for n in range(1, 41):
            sp = split_by_conductor(n, D)
            rhs = rep_count(form, sp.n1 * sp.n1).count
            for p, e in sp.exponents.items():
                rhs *= hecke_weight(D, p, e)
            assert rep_count(form, n * n).count == rhs
