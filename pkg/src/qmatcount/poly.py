"""Univariate polynomials in q with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DuplicateAbscissa


class QPolynomial:
    """Dense polynomial; ``coeffs[i]`` is the coefficient of q^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> "QPolynomial":
        return cls([c])

    @classmethod
    def q(cls) -> "QPolynomial":
        return cls([0, 1])

    @classmethod
    def monomial(cls, degree: int, c=1) -> "QPolynomial":
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    evaluate = __call__

    def __eq__(self, other):
        if isinstance(other, QPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == QPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _lift(self, other) -> "QPolynomial":
        return other if isinstance(other, QPolynomial) else QPolynomial([other])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return QPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return QPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = QPolynomial([1])
        for _ in range(e):
            out = out * self
        return out

    def taylor(self, a) -> list[Fraction]:
        """Coefficients c_i with p(q) = sum c_i (q - a)^i."""
        cs = list(self.coeffs)
        out = []
        while cs:
            # synthetic division by (q - a)
            rem = Fraction(0)
            quot = [Fraction(0)] * len(cs)
            for i in range(len(cs) - 1, -1, -1):
                rem = rem * a + cs[i]
                quot[i] = rem
            out.append(quot[0])
            cs = quot[1:]
        return out

    def __repr__(self):
        return f"QPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if i == 0:
                body = str(mag)
            else:
                power = "q" if i == 1 else f"q^{i}"
                body = power if mag == 1 else f"{mag}*{power}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def interpolate_exact(points: Sequence[tuple[int, int]]) -> QPolynomial:
    """Lagrange interpolation through (q, value) pairs, exactly."""
    if not points:
        raise ValueError("need at least one point")
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        seen = set()
        dup = next(x for x in xs if x in seen or seen.add(x))
        raise DuplicateAbscissa(f"abscissa {dup} appears twice")
    total = QPolynomial()
    for i, (xi, (_, yi)) in enumerate(zip(xs, points)):
        basis = QPolynomial([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * QPolynomial([-xj, 1])
                denom *= xi - xj
        total = total + basis * (Fraction(yi) / denom)
    return total
