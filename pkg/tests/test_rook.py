from fractions import Fraction

import pytest

from qmatcount import rook
from qmatcount.errors import OddRank, OutOfRange
from qmatcount.formulas import q_factorial
from qmatcount.poly import QPolynomial
from qmatcount.support import (SupportSet, complement, diagonal_prefix, fano_support,
                               partitions_in_box, straight_shape)


def test_t1_examples():
    assert rook.rook_count_T1(2, 2, diagonal_prefix(2, 2), 2) == 1
    assert rook.rook_count_T1(2, 2, SupportSet.of(2, 2), 1) == 4
    assert rook.rook_count_T1(7, 7, fano_support(), 7) == 24
    with pytest.raises(OutOfRange):
        rook.rook_count_T1(2, 2, SupportSet.of(2, 2), 3)


def test_q_rook_examples():
    assert rook.q_rook_polynomial(rook.full_board(2), 2) == QPolynomial([1, 1])
    # the empty placement cancels nothing, so R_0 = q^|board|; Haglund at r = 0 needs this
    assert rook.q_rook_polynomial(SupportSet.of(3, 3, [(1, 2)]), 0) == QPolynomial([0, 1])
    assert rook.q_rook_polynomial(SupportSet.of(3, 3), 0) == QPolynomial([1])
    assert rook.q_rook_polynomial(SupportSet.of(3, 3, [(2, 2)]), 1) == QPolynomial([1])


@pytest.mark.parametrize("n", range(1, 6))
def test_full_board_is_q_factorial(n):
    P = rook.q_rook_polynomial(rook.full_board(n), n)
    for q in (2, 3, 5, 7):
        assert P(q) == q_factorial(n, q)


def test_t1_is_rook_polynomial_at_one():
    for S in rook.random_supports(4, 30, seed=7):
        for r in range(5):
            assert rook.rook_count_T1(4, 4, S, r) == rook.q_rook_polynomial(complement(S), r)(1)


def test_haglund_examples():
    assert rook.haglund_check((), 1, 1, 4) == (3, 3, True)
    lhs, rhs, ok = rook.haglund_check((2, 1), 2, 2, 3)
    assert lhs == rhs == 0 and ok
    assert rook.haglund_check((1,), 2, 2, 3) == (12, 12, True)


@pytest.mark.parametrize("q", [2, 3])
def test_haglund_3x3(q):
    for lam in partitions_in_box(3, 3):
        for r in range(4):
            assert rook.haglund_check(lam, 3, r, q)[2]


def _prose_inv(C, cells):
    # the above/left reading of the cancellation rule
    cancelled = set(C.positions)
    for i, j in C.positions:
        cancelled |= {(a, b) for a, b in cells if (b == j and a < i) or (a == i and b < j)}
    return len(cells - cancelled)


def test_above_left_convention_breaks_haglund():
    q = 3
    board = complement(straight_shape((1,), 2))
    R = sum(Fraction(1, q) ** _prose_inv(C, board.forbidden) for C in rook.placements(board, 2))
    prose_rhs = (q - 1) ** 2 * q ** (4 - 1 - 2) * R
    assert prose_rhs == (q - 1) ** 2
    assert rook.haglund_rhs((1,), 2, 2, q) == q * (q - 1) ** 2 == 12


def test_q_analogue_examples():
    res = rook.q_analogue_check(1, 1, SupportSet.of(1, 1), 1, 4)
    assert res.holds and res.count == 3
    res = rook.q_analogue_check(2, 2, diagonal_prefix(2, 2), 2, 3)
    assert res.holds and res.count == 4 and res.t1 == 1 and res.modulus == 8
    res = rook.q_analogue_check(7, 7, fano_support(), 7, 2)
    assert res.holds and res.t1 == 24


def test_q_analogue_symmetric():
    S = diagonal_prefix(4, 4)
    for q in (3, 5):
        for r in (0, 2, 4):
            res = rook.q_analogue_check(4, 4, S, r, q, "symmetric")
            assert res.holds
            assert res.t1 == rook.symmetric_matchings(4, S, r // 2)
    assert rook.symmetric_matchings(4, S, 2) == 3
    with pytest.raises(OddRank):
        rook.q_analogue_check(4, 4, S, 1, 3, "symmetric")
