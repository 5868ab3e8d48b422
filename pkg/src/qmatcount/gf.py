"""Finite fields GF(q), q = p^e, with elements encoded as integers 0..q-1.

For e > 1 the base-p digits of an element are its polynomial coefficients
(least significant digit = constant term), reduced modulo a fixed monic
irreducible polynomial of degree e.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import DivisionByZero, EvenCharacteristic, NotAPrimePower, ZeroArgument

TABLE_LIMIT = 256
MAX_ORDER = 1 << 16


class Character(enum.IntEnum):
    """Quadratic character value, stored as +1 / -1 so products are plain arithmetic."""

    PLUS = 1
    MINUS = -1

    def __mul__(self, other):
        if isinstance(other, Character):
            return Character(int(self) * int(other))
        return int(self) * other

    __rmul__ = __mul__

    def __neg__(self):
        return Character(-int(self))

    def __str__(self):
        return "+" if self is Character.PLUS else "-"

    @classmethod
    def parse(cls, text) -> "Character":
        if isinstance(text, Character):
            return text
        if text in ("+", "plus", 1, "1", "+1"):
            return cls.PLUS
        if text in ("-", "minus", -1, "-1"):
            return cls.MINUS
        raise ValueError(f"not a character: {text!r}")


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise NotAPrimePower."""
    if q < 2:
        raise NotAPrimePower(f"{q} is not a prime power")
    p = None
    d = 2
    n = q
    while d * d <= n:
        if n % d == 0:
            p = d
            break
        d += 1
    if p is None:
        return q, 1
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise NotAPrimePower(f"{q} has at least two distinct prime factors")
    return p, e


# -- polynomial helpers over GF(p); coefficient lists, index = degree ------------


def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    a = _poly_trim(a)
    b = _poly_trim(b)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * c) % p
        a = _poly_trim(a)
    return a


def is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _poly_trim(poly)
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not _poly_mod(poly, divisor, p):
                return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree e over GF(p).

    Candidates are ordered by (c_{e-1}, ..., c_0); the result is returned
    as a coefficient tuple (c_0, ..., c_{e-1}, 1).
    """
    for code in range(p**e):
        coeffs = [(code // p**i) % p for i in range(e)]
        poly = coeffs + [1]
        if coeffs[0] != 0 and is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class FieldSpec:
    q: int
    p: int
    e: int
    modulus: tuple[int, ...]
    add_table: np.ndarray | None = field(repr=False, default=None)
    mul_table: np.ndarray | None = field(repr=False, default=None)
    neg_table: np.ndarray | None = field(repr=False, default=None)
    inv_table: np.ndarray | None = field(repr=False, default=None)
    square_table: np.ndarray | None = field(repr=False, default=None)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.q, self.modulus) == (other.q, other.modulus)

    def __hash__(self):
        return hash((self.q, self.modulus))

    @property
    def odd(self) -> bool:
        return self.p != 2

    @property
    def elements(self) -> range:
        return range(self.q)

    # element <-> digit vector
    def _digits(self, x: int):
        p = self.p
        return [(x // p**i) % p for i in range(self.e)]

    def _encode(self, digits) -> int:
        x = 0
        for i, d in enumerate(digits):
            x += (d % self.p) * self.p**i
        return x

    def _add_slow(self, x, y):
        if self.e == 1:
            return (x + y) % self.p
        return self._encode([a + b for a, b in zip(self._digits(x), self._digits(y))])

    def _neg_slow(self, x):
        if self.e == 1:
            return (-x) % self.p
        return self._encode([-a for a in self._digits(x)])

    def _mul_slow(self, x, y):
        if self.e == 1:
            return (x * y) % self.p
        a, b = self._digits(x), self._digits(y)
        prod = [0] * (2 * self.e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        rem = _poly_mod([c % self.p for c in prod], self.modulus, self.p)
        return self._encode(rem)

    def _inv_slow(self, x):
        # x^(q-2) by square-and-multiply
        result, base, k = 1, x, self.q - 2
        while k:
            if k & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            k >>= 1
        return result

    def add(self, x: int, y: int) -> int:
        if self.add_table is not None:
            return int(self.add_table[x, y])
        return self._add_slow(x, y)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def neg(self, x: int) -> int:
        if self.neg_table is not None:
            return int(self.neg_table[x])
        return self._neg_slow(x)

    def mul(self, x: int, y: int) -> int:
        if self.mul_table is not None:
            return int(self.mul_table[x, y])
        return self._mul_slow(x, y)

    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("inverse of zero")
        if self.inv_table is not None:
            return int(self.inv_table[x])
        return self._inv_slow(x)

    def power(self, x: int, k: int) -> int:
        result = 1
        while k:
            if k & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            k >>= 1
        return result

    def is_square(self, x: int) -> bool:
        if x == 0:
            return True
        if self.square_table is not None:
            return bool(self.square_table[x])
        if self.p == 2:
            return True
        return self.power(x, (self.q - 1) // 2) == 1

    @property
    def least_nonsquare(self) -> int:
        if not self.odd:
            raise EvenCharacteristic("every element is a square in characteristic 2")
        for z in range(1, self.q):
            if not self.is_square(z):
                return z
        raise AssertionError("unreachable")  # pragma: no cover

    @property
    def minus_one(self) -> int:
        return self.neg(1)

    def from_int(self, k: int) -> int:
        """Image of the integer k under Z -> GF(q)."""
        return k % self.p


def _build_tables(f: FieldSpec) -> dict:
    q = f.q
    add = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    for x in range(q):
        for y in range(x, q):
            add[x, y] = add[y, x] = f._add_slow(x, y)
            mul[x, y] = mul[y, x] = f._mul_slow(x, y)
    neg = np.array([f._neg_slow(x) for x in range(q)], dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    for x in range(1, q):
        for y in range(1, q):
            if mul[x, y] == 1:
                inv[x] = y
                break
    sq = np.zeros(q, dtype=np.int64)
    for y in range(q):
        sq[mul[y, y]] = 1
    tables = dict(add_table=add, mul_table=mul, neg_table=neg, inv_table=inv, square_table=sq)
    for arr in tables.values():
        arr.setflags(write=False)
    return tables


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldSpec:
    if q >= MAX_ORDER:
        raise NotAPrimePower(f"field order {q} is beyond the supported range")
    p, e = factor_prime_power(q)
    modulus = least_irreducible(p, e) if e > 1 else (0, 1)
    f = FieldSpec(q=q, p=p, e=e, modulus=modulus)
    if q <= TABLE_LIMIT:
        f = FieldSpec(q=q, p=p, e=e, modulus=modulus, **_build_tables(f))
    return f


def arith(f: FieldSpec, op: str, x: int, y: int | None = None) -> int:
    if op == "add":
        return f.add(x, y)
    if op == "mul":
        return f.mul(x, y)
    if op == "neg":
        return f.neg(x)
    if op == "inv":
        return f.inv(x)
    raise ValueError(f"unknown field operation {op!r}")


def legendre_symbol(f: FieldSpec, x: int) -> Character:
    if not f.odd:
        raise EvenCharacteristic("the Legendre symbol needs odd characteristic")
    if x == 0:
        raise ZeroArgument("the Legendre symbol is undefined at 0")
    return Character.PLUS if f.power(x, (f.q - 1) // 2) == 1 else Character.MINUS


def is_prime_power(q: int) -> bool:
    try:
        factor_prime_power(q)
    except NotAPrimePower:
        return False
    return True
