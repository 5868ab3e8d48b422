"""Rook placements, Garsia-Remmel q-rook numbers and the q = 1 congruence checks."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from . import oracle
from .errors import EvenCharacteristic, InvalidQuery, OddRank, OutOfRange
from .poly import QPolynomial
from .support import Partition, SupportSet, complement, straight_shape

Cell = tuple[int, int]


@dataclass(frozen=True)
class RookPlacement:
    positions: frozenset[Cell]

    def __post_init__(self):
        rows = [i for i, _ in self.positions]
        cols = [j for _, j in self.positions]
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError("rooks attack each other")

    def __len__(self):
        return len(self.positions)


def _board_cells(board) -> frozenset[Cell]:
    # a SupportSet passed as a board contributes its *forbidden* cells
    if isinstance(board, SupportSet):
        return board.forbidden
    return frozenset(board)


def full_board(n: int) -> SupportSet:
    return complement(SupportSet.of(n, n))


def _check_rank(m: int, n: int, r: int) -> None:
    if not 0 <= r <= min(m, n):
        raise OutOfRange(f"need 0 <= r <= {min(m, n)}, got {r}")


def rook_count_T1(m: int, n: int, S: SupportSet, r: int) -> int:
    """Non-attacking r-rook placements on the free cells of S."""
    _check_rank(m, n, r)
    free_masks = tuple(((1 << n) - 1) & ~S.row_masks[i] for i in range(m))

    @lru_cache(maxsize=None)
    def rec(row: int, used: int, left: int) -> int:
        if left == 0:
            return 1
        if m - row < left:
            return 0
        total = rec(row + 1, used, left)
        avail = free_masks[row] & ~used
        while avail:
            bit = avail & -avail
            avail ^= bit
            total += rec(row + 1, used | bit, left - 1)
        return total

    return rec(0, 0, r)


def placements(board, r: int) -> Iterator[RookPlacement]:
    cells = sorted(_board_cells(board))
    by_row: dict[int, list[int]] = {}
    for i, j in cells:
        by_row.setdefault(i, []).append(j)
    rows = sorted(by_row)

    def rec(k, left, used_cols, chosen):
        if left == 0:
            yield RookPlacement(frozenset(chosen))
            return
        if len(rows) - k < left:
            return
        yield from rec(k + 1, left, used_cols, chosen)
        i = rows[k]
        for j in by_row[i]:
            if j not in used_cols:
                chosen.append((i, j))
                yield from rec(k + 1, left - 1, used_cols | {j}, chosen)
                chosen.pop()

    yield from rec(0, r, frozenset(), [])


def inversions(C: RookPlacement, board) -> int:
    """Board cells left uncancelled by C.

    A rook cancels its own cell, the board cells below it in its column and
    the board cells to its right in its row.
    """
    cells = _board_cells(board)
    cancelled = set()
    for i, j in C.positions:
        cancelled.add((i, j))
        cancelled.update((a, b) for a, b in cells if (b == j and a > i) or (a == i and b > j))
    return len(cells - cancelled)


def q_rook_polynomial(board, r: int) -> QPolynomial:
    """R_r(board, q) = sum over r-placements C on the board of q^inv(C)."""
    if r < 0:
        raise OutOfRange(f"negative rook count {r}")
    coeffs: dict[int, int] = {}
    for C in placements(board, r):
        k = inversions(C, board)
        coeffs[k] = coeffs.get(k, 0) + 1
    if not coeffs:
        return QPolynomial()
    return QPolynomial(coeffs.get(i, 0) for i in range(max(coeffs) + 1))


def haglund_rhs(lam, n: int, r: int, q: int) -> Fraction:
    lam = lam if isinstance(lam, Partition) else Partition(tuple(lam))
    S = straight_shape(lam, n)
    R = q_rook_polynomial(complement(S), r)
    return (q - 1) ** r * Fraction(q) ** (n * n - lam.size - r) * R(Fraction(1, q))


def haglund_check(lam, n: int, r: int, q: int, **oracle_kw) -> tuple[int, Fraction, bool]:
    """Oracle count of rank-r matrices avoiding S_lam against the rook-polynomial product."""
    lam = lam if isinstance(lam, Partition) else Partition(tuple(lam))
    _check_rank(n, n, r)
    S = straight_shape(lam, n)
    lhs = oracle.count(n, n, S, r, q, **oracle_kw)
    rhs = haglund_rhs(lam, n, r, q)
    return lhs, rhs, lhs == rhs


@dataclass(frozen=True)
class QAnalogueResult:
    holds: bool
    cls: str
    q: int
    r: int
    exponent: int  # the congruence is modulo (q-1)^(exponent+1)
    count: int
    t1: int
    modulus: int
    count_residue: int
    rook_residue: int


def symmetric_matchings(n: int, S: SupportSet, s: int) -> int:
    """Sets of s disjoint off-diagonal pairs {i, j} with (i, j) free."""
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if S.is_free(i, j)]

    def rec(k, used, left):
        if left == 0:
            return 1
        total = 0
        for t in range(k, len(edges)):
            i, j = edges[t]
            if not (used >> i & 1 or used >> j & 1):
                total += rec(t + 1, used | 1 << i | 1 << j, left - 1)
        return total

    return rec(0, 0, s)


def q_analogue_check(m: int, n: int, S: SupportSet, r: int, q: int, cls: str = "general",
                     count: int | None = None, **oracle_kw) -> QAnalogueResult:
    """#T_q = #T_1 (q-1)^e mod (q-1)^(e+1), with e = r (general) or r/2 (symmetric).

    ``count`` may carry a precomputed oracle value for the same query.
    """
    _check_rank(m, n, r)
    if cls == "general":
        e = r
        t1 = rook_count_T1(m, n, S, r)
        if count is None:
            count = oracle.count(m, n, S, r, q, **oracle_kw)
    elif cls == "symmetric":
        if r % 2:
            raise OddRank(f"symmetric check needs even rank, got {r}")
        if q % 2 == 0:
            raise EvenCharacteristic("symmetric check needs odd q")
        if m != n or not S.is_symmetric() or not S.contains_diagonal():
            raise InvalidQuery("symmetric check needs a symmetric S containing the diagonal")
        e = r // 2
        t1 = symmetric_matchings(n, S, e)
        if count is None:
            count = oracle.count(n, n, S, r, q, cls="symmetric", **oracle_kw)
    else:
        raise InvalidQuery(f"unknown class {cls!r}")
    modulus = (q - 1) ** (e + 1)
    lhs = count % modulus
    rhs = t1 * (q - 1) ** e % modulus
    return QAnalogueResult(lhs == rhs, cls, q, r, e, count, t1, modulus, lhs, rhs)


def random_supports(n: int, count: int, seed: int, density: float = 0.5) -> list[SupportSet]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if rng.random() < density]
        out.append(SupportSet.of(n, n, cells))
    return out
