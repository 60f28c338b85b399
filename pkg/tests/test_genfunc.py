from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratcoord import (
    LinearSet,
    NotQuasiPolynomialError,
    RationalGF,
    SemilinearSet,
    cumulative_to_exact,
    fit_rational,
    gf_add,
    gf_from_json,
    gf_to_json,
    gf_unambiguous_linear,
    series_coeffs,
    slice_counts,
    to_quasi_polynomial,
)

SQUARE_GF = RationalGF((1, 2, 1), (1, -2, 1))  # (1+z)^2/(1-z)^2


class TestCanonicalForm:
    def test_common_factor_cancels(self):
        # (1+z^3)/(1-z^2) and (1-z+z^2)/(1-z) are the same value
        assert RationalGF((1, 0, 0, 1), (1, 0, -1)) == RationalGF((1, -1, 1), (1, -1))

    def test_scaling_cancels(self):
        assert RationalGF((2, 2), (2, -2)) == RationalGF((1, 1), (1, -1))

    def test_zero(self):
        assert RationalGF((0, 0), (1, 5)) == RationalGF.zero()
        assert RationalGF.zero().den == (1,)

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            RationalGF((1,), (0,))

    def test_nonintegral_series_rejected(self):
        with pytest.raises(ValueError):
            RationalGF((1,), (2, -1))  # 1/(2-z) expands with fractions

    def test_z_over_z_denominator(self):
        with pytest.raises(ValueError):
            RationalGF((1,), (0, 1))  # 1/z is not a power series

    def test_idempotent(self, gf_corpus):
        for q in gf_corpus:
            again = RationalGF(q.num, q.den)
            assert again.num == q.num and again.den == q.den

    def test_fraction_input(self):
        q = RationalGF((Fraction(1, 2), Fraction(1, 2)), (Fraction(1, 2), Fraction(-1, 2)))
        assert q == RationalGF((1, 1), (1, -1))


class TestAdd:
    def test_common_denominator(self):
        a = RationalGF((0, 0, 1), (1, 0, -1))
        b = RationalGF((0, 0, 0, 1), (1, 0, -1))
        assert gf_add(a, b) == RationalGF((0, 0, 1, 1), (1, 0, -1))

    def test_with_one(self):
        a = RationalGF((0, 0, 1), (1, 0, -1))
        b = RationalGF((0, 0, 0, 1), (1, 0, -1))
        total = gf_add(gf_add(RationalGF.one(), a), b)
        assert total == RationalGF((1, 0, 0, 1), (1, 0, -1))
        assert series_coeffs(total, 6) == [1, 0, 1, 1, 1, 1, 1]

    def test_additive_identity(self, gf_corpus):
        for q in gf_corpus:
            assert gf_add(q, RationalGF.zero()) == q

    def test_commutative_associative(self, gf_corpus):
        qs = gf_corpus[:6]
        for a in qs:
            for b in qs:
                assert gf_add(a, b) == gf_add(b, a)
                for c in qs[:4]:
                    assert gf_add(gf_add(a, b), c) == gf_add(a, gf_add(b, c))


class TestCumulativeToExact:
    def test_square_lattice(self):
        cumulative = RationalGF((1, 2, 1), (1, -3, 3, -1))  # (1+z)^2/(1-z)^3
        assert cumulative_to_exact(cumulative) == SQUARE_GF

    def test_constant_cumulative(self):
        assert cumulative_to_exact(RationalGF((1,), (1, -1))) == RationalGF.one()

    def test_polynomial(self):
        assert cumulative_to_exact(RationalGF.one()) == RationalGF((1, -1))

    def test_difference_law(self, gf_corpus):
        for q in gf_corpus:
            diff = series_coeffs(cumulative_to_exact(q), 20)
            cum = series_coeffs(q, 21)
            expected = [cum[0]] + [cum[k] - cum[k - 1] for k in range(1, 21)]
            assert diff == expected


class TestSeries:
    def test_square(self):
        assert series_coeffs(SQUARE_GF, 5) == [1, 4, 8, 12, 16, 20]

    def test_geometric(self):
        assert series_coeffs(RationalGF((1,), (1, -1)), 3) == [1, 1, 1, 1]

    def test_matches_slice_example(self):
        q = RationalGF((1, 0, 0, 1), (1, 0, -1))
        assert series_coeffs(q, 6) == [1, 0, 1, 1, 1, 1, 1]


class TestFormula:
    def test_single_period(self):
        q = gf_unambiguous_linear(LinearSet((2, 2), ((2, 0),)), 1)
        assert q == RationalGF((0, 0, 1), (1, 0, -1))

    def test_zero_projection_period_rejected(self):
        with pytest.raises(ValueError):
            gf_unambiguous_linear(LinearSet((2, 2), ((2, 0), (0, 2))), 1)

    def test_point(self):
        assert gf_unambiguous_linear(LinearSet((2,)), 1) == RationalGF((0, 0, 1))

    def test_one_period_from_zero(self):
        q = gf_unambiguous_linear(LinearSet((0,), ((2,),)), 1)
        assert q == RationalGF((1,), (1, 0, -1))

    def test_negative_base_projection_rejected(self):
        with pytest.raises(ValueError):
            gf_unambiguous_linear(LinearSet((-1,), ((2,),)), 1)

    def test_formula_matches_enumeration(self, unambiguous_corpus):
        for l, i in unambiguous_corpus:
            coeffs = series_coeffs(gf_unambiguous_linear(l, i), 30)
            counts = slice_counts(SemilinearSet((l,)), i, 30)
            assert coeffs == counts, (l, i)


class TestFit:
    def test_square_prefix(self):
        prefix = [1, 4, 8, 12, 16, 20, 24, 28, 32, 36]
        assert fit_rational(prefix, 4, 3) == SQUARE_GF

    def test_constant(self):
        assert fit_rational([1, 1, 1, 1, 1, 1], 2, 2) == RationalGF((1,), (1, -1))

    def test_fibonacci(self):
        prefix = [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]
        assert fit_rational(prefix, 3, 2) == RationalGF((0, 1), (1, -1, -1))

    def test_polynomial_sequence(self):
        assert fit_rational([1, 0, 0, 0, 0, 0], 2, 2) == RationalGF.one()

    def test_unexplained_prefix_fails(self):
        primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
        with pytest.raises(ValueError, match="no rational function"):
            fit_rational(primes, 3, 3)

    def test_window_is_predicted_not_fitted(self):
        # agrees with c_k = 2c_{k-1} - c_{k-2} except in the final window
        broken = [1, 4, 8, 12, 16, 20, 24, 28, 32, 999]
        with pytest.raises(ValueError):
            fit_rational(broken, 2, 1)

    def test_round_trip(self, gf_corpus):
        for q in gf_corpus:
            prefix = series_coeffs(q, 39)
            assert fit_rational(prefix, 6, 5) == q


class TestQuasiPolynomial:
    def test_square(self):
        qp = to_quasi_polynomial(SQUARE_GF)
        assert qp.period == 1
        assert qp.exceptional_prefix == (1,)
        assert qp.residue_polynomials == ((Fraction(0), Fraction(4)),)
        assert [qp.evaluate(k) for k in range(6)] == [1, 4, 8, 12, 16, 20]

    def test_alternating(self):
        qp = to_quasi_polynomial(RationalGF((1,), (1, 0, -1)))
        assert qp.period == 2
        assert qp.exceptional_prefix == ()
        assert qp.residue_polynomials == ((Fraction(1),), ())
        assert [qp.evaluate(k) for k in range(5)] == [1, 0, 1, 0, 1]

    def test_golden_ratio_pole_rejected(self):
        with pytest.raises(NotQuasiPolynomialError):
            to_quasi_polynomial(RationalGF((0, 1), (1, -1, -1)))

    def test_evaluation_matches_series(self, gf_corpus):
        for q in gf_corpus:
            try:
                qp = to_quasi_polynomial(q)
            except NotQuasiPolynomialError:
                continue
            coeffs = series_coeffs(q, 200)
            got = [qp.evaluate(k) for k in range(201)]
            assert got == coeffs, q


class TestJson:
    def test_round_trip(self, gf_corpus):
        for q in gf_corpus:
            data = gf_to_json(q)
            assert set(data) == {"num", "den"}
            assert gf_from_json(data) == q


class TestFitHypothesis:
    @settings(max_examples=50, deadline=None)
    @given(
        st.lists(st.integers(-3, 3), max_size=3),
        st.lists(st.integers(-3, 3), max_size=3),
    )
    def test_fit_recovers_random_gf(self, num, den_tail):
        q = RationalGF(num, [1] + den_tail)
        prefix = series_coeffs(q, 17)
        assert fit_rational(prefix, 3, 5) == q
