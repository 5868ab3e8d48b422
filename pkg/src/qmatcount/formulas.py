"""Closed formulas and recursions for the restricted-support counts.

Every function evaluates at a concrete integer q.  Intermediate values are
``Fraction`` because several recursions carry 1/q and 1/2 factors; anything
that is a matrix count is converted back with :func:`as_count`, which
refuses non-integers.  Characters are passed as +1 / -1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import (EvenCharacteristic, NegativeArgument, NonIntegralCount, OddCharacteristic,
                     OddRank, OutOfRange)


def as_count(x) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise NonIntegralCount(f"expected an integer count, got {x}")
    if x < 0:
        raise NonIntegralCount(f"expected a nonnegative count, got {x}")
    return int(x)


def _binom(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def _qpow(q: int, e: int) -> Fraction:
    return Fraction(q) ** e


def _sign(psi) -> int:
    s = int(psi)
    if s not in (1, -1):
        raise ValueError(f"character must be +1 or -1, got {psi!r}")
    return s


def _require_odd(q: int) -> None:
    if q % 2 == 0:
        raise EvenCharacteristic(f"q = {q} is even")


def psi_minus_one(q: int) -> int:
    """Quadratic character of -1 in GF(q), q odd: + iff q = 1 mod 4."""
    _require_odd(q)
    return 1 if q % 4 == 1 else -1


def minus_one_power_is_square(j: int, q: int) -> bool:
    return j % 2 == 0 or psi_minus_one(q) == 1


def _t(j: int, q: int) -> int:
    # 0 if (-1)^j is a square in GF(q), else 1
    return 0 if minus_one_power_is_square(j, q) else 1


# -- q-analogues -------------------------------------------------------------------


def q_number(n: int, q: int) -> int:
    if n < 0:
        raise NegativeArgument(f"[n]_q needs n >= 0, got {n}")
    return sum(q**i for i in range(n))


def q_factorial(n: int, q: int) -> int:
    if n < 0:
        raise NegativeArgument(f"[n]_q! needs n >= 0, got {n}")
    out = 1
    for i in range(1, n + 1):
        out *= q_number(i, q)
    return out


def q_double_factorial(n: int, q: int) -> int:
    if n < -1:
        raise NegativeArgument(f"[n]_q!! needs n >= -1, got {n}")
    out = 1
    while n > 0:
        out *= q_number(n, q)
        n -= 2
    return out


def q_basics(kind: str, n: int, q: int) -> int:
    if kind == "number":
        return q_number(n, q)
    if kind == "factorial":
        return q_factorial(n, q)
    if kind == "double_factorial":
        return q_double_factorial(n, q)
    raise ValueError(f"unknown kind {kind!r}")


# -- zero diagonal, general matrices ------------------------------------------------


def _f_rect_closed(k: int, n: int, q: int) -> Fraction:
    total = sum(Fraction((-1) ** i * comb(k, i) * q_factorial(n - i, q), q_factorial(n - k, q))
                for i in range(k + 1))
    return _qpow(q, _binom(k - 1, 2)) * (q - 1) ** k * total / q


@lru_cache(maxsize=None)
def _f_rect_rec(k: int, n: int, q: int) -> Fraction:
    if k == 1:
        return Fraction(q ** (n - 1) - 1)
    k0 = k - 1
    return _qpow(q, k0 - 1) * (q - 1) * (_f_rect_rec(k0, n, q) * q_number(n - k0, q)
                                         - _f_rect_rec(k0, n - 1, q))


def f_rect(k: int, n: int, q: int, method: str = "closed") -> int:
    """Full-rank k x n matrices with A_ii = 0 for i <= k."""
    if not 1 <= k <= n:
        raise OutOfRange(f"need 1 <= k <= n, got k={k}, n={n}")
    if method == "closed":
        return as_count(_f_rect_closed(k, n, q))
    if method == "recursive":
        return as_count(_f_rect_rec(k, n, q))
    raise ValueError(f"unknown method {method!r}")


def _matz_base(n: int, r: int, q: int) -> Fraction:
    prod = 1
    for i in range(r):
        prod *= q_number(n - i, q) if n - i >= 0 else 0
    return Fraction(q ** _binom(r, 2) * (q - 1) ** r * prod**2, q_factorial(r, q))


@lru_cache(maxsize=None)
def _matz(n: int, k: int, r: int, q: int) -> Fraction:
    if r < 0 or r > n:
        return Fraction(0)
    if r == 0:
        return Fraction(1)
    if k == 0:
        return _matz_base(n, r, q)
    # matz(n, k, r) from (n-1, k-1, r-1) and (n-1, k-1, r)
    n0, k0, r0 = n - 1, k - 1, r - 1
    return (_matz(n, k0, r, q) / q
            + (_qpow(q, r0 + 1) - _qpow(q, r0)) * _matz(n0, k0, r0 + 1, q)
            - (_qpow(q, r0) - _qpow(q, r0 - 1)) * _matz(n0, k0, r0, q))


def matz_count(n: int, k: int, r: int, q: int) -> int:
    """n x n matrices of rank r whose first k diagonal entries vanish."""
    if not (0 <= k <= n and 0 <= r <= n):
        raise OutOfRange(f"need 0 <= k, r <= n; got n={n}, k={k}, r={r}")
    return as_count(_matz(n, k, r, q))


@lru_cache(maxsize=None)
def _g_rec(n: int, r: int, q: int) -> Fraction:
    if r < 0 or r > n:
        return Fraction(0)
    if r == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(0)
    n0, r0 = n - 1, r - 1
    Q = lambda e: _qpow(q, e)  # noqa: E731
    return ((Q(n0) - Q(r0 - 1)) ** 2 * _g_rec(n0, r0 - 1, q)
            + (Q(2 * r0 + 1) + Q(r0 + 1) - Q(r0)) * _g_rec(n0, r0 + 1, q)
            + (2 * Q(n0 + r0) - Q(2 * r0) - Q(2 * r0 - 1) - Q(r0) + Q(r0 - 1)) * _g_rec(n0, r0, q))


def _g_closed(n: int, r: int, q: int) -> Fraction:
    total = Fraction(0)
    for k in range(n - r + 1):
        for i in range(n + 1):
            term = Fraction((-1) ** (k + r + n + i) * comb(n, i) * q_factorial(n + k - i, q),
                            q_factorial(k, q) ** 2 * q_factorial(n - r - k, q))
            total += term * _qpow(q, comb(n, 2) + comb(k, 2) - n * k - r)
    return (q - 1) ** r * total


def g_zero_diag(n: int, r: int, q: int, method: str = "recursive") -> int:
    """n x n matrices of rank r with zero diagonal."""
    if not 0 <= r <= n:
        raise OutOfRange(f"need 0 <= r <= n, got n={n}, r={r}")
    if method == "recursive":
        return as_count(_g_rec(n, r, q))
    if method == "closed":
        return as_count(_g_closed(n, r, q))
    raise ValueError(f"unknown method {method!r}")


# -- symmetric and skew-symmetric ------------------------------------------------------


def _sym_invertible(n: int, q: int) -> Fraction:
    out = _qpow(q, comb(n + 1, 2))
    for j in range(1, (n + 1) // 2 + 1):
        out *= 1 - _qpow(q, 1 - 2 * j)
    return out


def _sym_rank(n: int, r: int, q: int) -> Fraction:
    if r < 0 or r > n:
        return Fraction(0)
    out = Fraction(1)
    for i in range(1, r // 2 + 1):
        out *= Fraction(q ** (2 * i), q ** (2 * i) - 1)
    for i in range(r):
        out *= q ** (n - i) - 1
    return out


def _sym_rank_char(n: int, r: int, psi: int, q: int) -> Fraction:
    total = _sym_rank(n, r, q)
    if r % 2 == 1:
        plus = total / 2
    else:
        s = r // 2
        plus = (q**s + psi_minus_one(q) ** s) * total / (2 * q**s)
    return plus if psi == 1 else total - plus


def sym_formulas(kind: str, n: int, r: int | None = None, psi=None, q: int = 0) -> int:
    """Symmetric counts: ``invertible`` sym(n), ``rank`` sym(n, r), ``rank_char`` sym^psi(n, r)."""
    if kind == "invertible":
        return as_count(_sym_invertible(n, q))
    if kind == "rank":
        return as_count(_sym_rank(n, r, q))
    if kind == "rank_char":
        if q % 2 == 0:
            raise EvenCharacteristic("the character refinement needs odd q")
        return as_count(_sym_rank_char(n, r, _sign(psi), q))
    raise ValueError(f"unknown kind {kind!r}")


def sym0_even_q(n: int, r: int, q: int) -> int:
    """Zero-diagonal symmetric n x n matrices of rank r, q a power of 2."""
    if q % 2 == 1:
        raise OddCharacteristic(f"q = {q} is odd")
    if not 0 <= r <= n:
        raise OutOfRange(f"need 0 <= r <= n, got n={n}, r={r}")
    if r % 2 == 1:
        return 0
    s = r // 2
    out = Fraction(1)
    for i in range(1, s + 1):
        out *= Fraction(q ** (2 * i - 2), q ** (2 * i) - 1)
    for i in range(2 * s):
        out *= q ** (n - i) - 1
    return as_count(out)


@lru_cache(maxsize=None)
def _sk_rec(n: int, r: int, q: int) -> int:
    if r % 2 or r < 0 or r > n:
        return 0
    if r == 0:
        return 1
    return q**r * _sk_rec(n - 1, r, q) + (q ** (n - 1) - q ** (r - 2)) * _sk_rec(n - 1, r - 2, q)


def _sk_closed(n: int, r: int, q: int) -> Fraction:
    # sign fixed to (q-1)^(r/2): sk(2, 2) = q - 1
    half = r // 2
    return (Fraction(q ** (r * (r - 2) // 4) * (q - 1) ** half * q_factorial(n, q))
            / (q_factorial(n - r, q) * q_double_factorial(r, q)))


def sk_count(n: int, r: int, q: int, method: str = "recursive") -> int:
    """Skew-symmetric (zero diagonal) n x n matrices of rank r."""
    if not 0 <= r <= n:
        raise OutOfRange(f"need 0 <= r <= n, got n={n}, r={r}")
    if r % 2 == 1:
        return 0
    if method == "recursive":
        return _sk_rec(n, r, q)
    if method == "closed":
        return as_count(_sk_closed(n, r, q))
    raise ValueError(f"unknown method {method!r}")


def sq_table(m: int, q: int, psi) -> int:
    """Zeros of x_1^2 + ... + x_{m-1}^2 + z x_m^2 with psi(z) = psi."""
    _require_odd(q)
    if m < 1:
        raise OutOfRange(f"need m >= 1, got {m}")
    psi = _sign(psi)
    if m % 2 == 1:
        return q ** (m - 1)
    h = m // 2
    sign = 1 if minus_one_power_is_square(h, q) else -1
    return q ** (m - 1) + psi * sign * (q**h - q ** (h - 1))


def bilinear_zy(kind: str, N: int, q: int) -> int:
    """z: solutions of sum A_i B_i = 0; y: solutions of sum A_i B_i = alpha != 0."""
    if N < 1:
        raise OutOfRange(f"need N >= 1, got {N}")
    if kind == "z":
        return q ** (N - 1) * (q**N + q - 1)
    if kind == "y":
        return q ** (N - 1) * (q**N - 1)
    raise ValueError(f"unknown kind {kind!r}")


# -- character-refined zero-diagonal symmetric counts (q odd) ------------------------------


@lru_cache(maxsize=None)
def _sym0_char(n: int, k: int, r: int, psi: int, q: int) -> Fraction:
    if r < 0 or r > n:
        return Fraction(0)
    if r == 0:
        return Fraction(1 if psi == 1 else 0)
    if k == 0:
        return _sym_rank_char(n, r, psi, q)
    if r == 1:
        return Fraction(q ** (n - k) - 1, 2)
    n0, k0, r0 = n - 1, k - 1, r - 1
    head = _sym0_char(n, k0, r, psi, q) / q
    if r0 % 2 == 1:
        t = _t((r0 + 1) // 2, q)
        inner = _sym0_total(n0, k0, r0, q) / 2 + _sym0_char(n0, k0, r0 + 1, psi, q)
        return head + (-1) ** t * psi * inner * (_qpow(q, (r0 + 1) // 2) - _qpow(q, (r0 - 1) // 2))
    t = _t(r0 // 2, q)
    diff = _sym0_char(n0, k0, r0, 1, q) - _sym0_char(n0, k0, r0, -1, q)
    return head - Fraction((-1) ** t, 2) * diff * (_qpow(q, r0 // 2) - _qpow(q, r0 // 2 - 1))


def _sym0_total(n: int, k: int, r: int, q: int) -> Fraction:
    return _sym0_char(n, k, r, 1, q) + _sym0_char(n, k, r, -1, q)


def sym0_char_recursive(n: int, k: int, r: int, psi, q: int) -> int:
    """Symmetric n x n matrices, first k diagonal entries zero, rank r, character psi."""
    _require_odd(q)
    if not (0 <= k <= n and 0 <= r <= n):
        raise OutOfRange(f"need 0 <= k, r <= n; got n={n}, k={k}, r={r}")
    return as_count(_sym0_char(n, k, r, _sign(psi), q))


def sym0_count(n: int, k: int, r: int, q: int) -> int:
    """Both characters together (q odd)."""
    _require_odd(q)
    return as_count(_sym0_total(n, k, r, q))


@lru_cache(maxsize=None)
def _symz_rec(n: int, k: int, psi: int, q: int) -> Fraction:
    if k == 0:
        return _sym_rank_char(n, n, psi, q)
    n0, k0 = n - 1, k - 1
    head = _symz_rec(n, k0, psi, q) / q
    if n0 % 2 == 1:
        t = _t((n0 + 1) // 2, q)
        total = _symz_rec(n0, k0, 1, q) + _symz_rec(n0, k0, -1, q)
        return head + Fraction((-1) ** t * psi, 2) * total * (
            _qpow(q, (n0 + 1) // 2) - _qpow(q, (n0 - 1) // 2))
    t = _t(n0 // 2, q)
    diff = _symz_rec(n0, k0, 1, q) - _symz_rec(n0, k0, -1, q)
    return head - Fraction((-1) ** t, 2) * diff * (_qpow(q, n0 // 2) - _qpow(q, (n0 - 2) // 2))


def _symz_closed_total(n: int, k: int, q: int) -> Fraction:
    if k == 0:
        return _sym_invertible(n, q)
    kk = k - 1  # the closed forms are stated for k + 1 zeros
    if n % 2 == 0:
        return _sym_invertible(n, q) / q**k
    m = n // 2
    total = Fraction(0)
    for j in range(kk // 2 + 2):
        total += ((-1) ** j * (q - 1) ** (m + j) * q_double_factorial(2 * m - 2 * j + 1, q)
                  * (_binom(kk + 1, 2 * j - 1) + (q - 1) * _binom(kk + 1, 2 * j)))
    return Fraction(q ** (m * m + m), q**k) * total


def _symz_closed_plus(n: int, k: int, q: int) -> Fraction:
    if k == 0:
        return _sym_rank_char(n, n, 1, q)
    if n % 2 == 1:
        return _symz_closed_total(n, k, q) / 2
    kk = k - 1
    m = n // 2
    # the sign below is (-1)^t with t = 0 when (-1)^m is a square
    t = _t(m, q)
    total = Fraction(0)
    for j in range(-(-kk // 2) + 1):
        total += ((-1) ** j * (q - 1) ** (m + j) * q_double_factorial(2 * m - 2 * j - 1, q)
                  * (_binom(kk + 1, 2 * j) + (q - 1) * _binom(kk + 1, 2 * j + 1)))
    return (_sym_invertible(n, q) / (2 * q**k)
            + Fraction((-1) ** t * q ** (m * m), 2 * q**k) * total)


def symz_count(n: int, k: int, psi="both", q: int = 0, method: str = "recursive") -> int:
    """Invertible symmetric n x n matrices whose first k diagonal entries vanish."""
    _require_odd(q)
    if not 0 <= k <= n:
        raise OutOfRange(f"need 0 <= k <= n, got n={n}, k={k}")
    if method == "recursive":
        if psi == "both":
            return as_count(_symz_rec(n, k, 1, q) + _symz_rec(n, k, -1, q))
        return as_count(_symz_rec(n, k, _sign(psi), q))
    if method == "closed":
        total = _symz_closed_total(n, k, q)
        if psi == "both":
            return as_count(total)
        plus = _symz_closed_plus(n, k, q)
        return as_count(plus if _sign(psi) == 1 else total - plus)
    raise ValueError(f"unknown method {method!r}")


# -- q = 1 limits -------------------------------------------------------------------------


def derangements(n: int) -> int:
    return sum((-1) ** i * factorial(n) // factorial(i) for i in range(n + 1))


def partial_involutions(n: int, r: int) -> int:
    """r-subsets of {1..n} with a fixed-point-free involution on them."""
    if r % 2:
        raise OddRank(f"rank {r} is odd")
    return comb(n, r) * _odd_double_factorial(r - 1)


def _odd_double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def combinatorial_limits(kind: str, n: int, r: int | None = None) -> int:
    if n < 0:
        raise OutOfRange(f"need n >= 0, got {n}")
    if kind == "derangement":
        return derangements(n)
    if kind == "partial_involution":
        return partial_involutions(n, r)
    raise ValueError(f"unknown kind {kind!r}")
