from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qmatcount.errors import BudgetExceeded, DuplicateAbscissa
from qmatcount.formulas import derangements, f_rect
from qmatcount.oracle import CountQuery
from qmatcount.poly import QPolynomial, interpolate_exact
from qmatcount.polyprobe import fano_experiment, probe
from qmatcount.rook import haglund_rhs
from qmatcount.support import diagonal_prefix, partitions_in_box, straight_shape


def test_interpolate_examples():
    assert interpolate_exact([(2, 1), (3, 4), (5, 16)]) == QPolynomial([1, -2, 1])
    assert interpolate_exact([(2, 7), (3, 7)]) == QPolynomial([7])
    assert interpolate_exact([(2, 3)]) == QPolynomial([3])
    with pytest.raises(DuplicateAbscissa):
        interpolate_exact([(2, 1), (2, 1)])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=5), min_size=1,
                max_size=6))
def test_refit_reproduces_coefficients(coeffs):
    P = QPolynomial(coeffs)
    pts = [(x, P(x)) for x in range(1, len(coeffs) + 1)]
    assert interpolate_exact(pts) == P


def test_poly_arithmetic_and_taylor():
    q = QPolynomial.q()
    P = (q - 1) ** 3 * (q + 2)
    assert P.taylor(1)[:4] == [0, 0, 0, 3]
    assert str(QPolynomial([1, -2, 1])) == "q^2 - 2*q + 1"
    assert P(Fraction(1, 2)) == Fraction(-1, 8) * Fraction(5, 2)


def test_probe_examples():
    res = probe(CountQuery(2, 2, diagonal_prefix(2, 2), 2, 2), [2, 3, 5, 7], holdout=1)
    assert res.verdict == "consistent" and res.fitted == QPolynomial([1, -2, 1])
    res = probe(CountQuery(2, 2, straight_shape((2, 1), 2), 2, 2), [2, 3, 5], holdout=1)
    assert res.verdict == "consistent" and res.fitted.is_zero()
    res = probe(lambda q: q**3, [2, 3], holdout=1, degree_bound=3)
    assert res.verdict == "inconsistent" and res.underdetermined
    assert probe(lambda q: 1, [2], holdout=1).verdict == "insufficient"


def test_probe_budget_keeps_partial():
    def compute(q):
        if q > 3:
            raise BudgetExceeded(10, 1)
        return q

    with pytest.raises(BudgetExceeded) as info:
        probe(compute, [2, 3, 5])
    assert info.value.partial == [(2, 2), (3, 3)]


def test_probe_parity_fits():
    res = probe(lambda q: q * q + (q % 2), [2, 3, 4, 5, 7, 8, 9], holdout=1)
    assert res.verdict == "inconsistent"
    assert res.parity_fits["even"] == QPolynomial([0, 0, 1])
    assert res.parity_fits["odd"] == QPolynomial([1, 0, 1])


PRIME_POWERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19]


def test_straight_shapes_fit_haglund():
    n = 3
    for lam in partitions_in_box(n, n):
        S = straight_shape(lam, n)
        # enough points to pin a polynomial of degree free_count, plus one held out
        qs = PRIME_POWERS[: S.free_count + 2]
        for r in range(n + 1):
            res = probe(CountQuery(n, n, S, r, 2), qs, holdout=1)
            assert res.verdict == "consistent" and not res.underdetermined
            for q in (23, 25, 27):
                assert res.fitted(q) == haglund_rhs(lam, n, r, q)


def test_straight_shapes_4x4_fixed_q_list():
    # with q in {2,...,9} only shapes with few free cells are pinned down
    qs = [2, 3, 4, 5, 7, 8, 9]
    n = 4
    checked = 0
    for lam in partitions_in_box(n, n):
        S = straight_shape(lam, n)
        if S.free_count > len(qs) - 2:
            continue
        for r in range(n + 1):
            res = probe(CountQuery(n, n, S, r, 2), qs, holdout=1)
            assert res.verdict == "consistent" and not res.underdetermined
            assert res.fitted(11) == haglund_rhs(lam, n, r, 11)
            checked += 1
    assert checked > 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_zero_diagonal_derangement_limit(n):
    res = probe(CountQuery(n, n, diagonal_prefix(n, n), n, 2), [2, 3, 4, 5, 7, 8, 9, 11],
                holdout=1)
    assert res.verdict == "consistent"
    taylor = res.fitted.taylor(1) + [0] * (n + 1)
    assert taylor[:n] == [0] * n
    assert taylor[n] == derangements(n)
    assert all(res.fitted(q) == f_rect(n, n, q) for q in (13, 16))


def test_fano_experiment_reports_caveat():
    res = fano_experiment((2,), holdout=1)
    assert res.verdict == "insufficient"
    assert res.samples == [(2, 184768)]
    assert res.degree_bound == 21
