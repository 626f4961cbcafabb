"""Univariate polynomials in q with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import factorial


class QPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)  # low -> high

    @classmethod
    def q(cls):
        return cls([0, 1])

    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def from_high(cls, coeffs):
        """Coefficients listed from the leading term down to the constant."""
        return cls(list(reversed(list(coeffs))))

    @staticmethod
    def lift(x):
        return x if isinstance(x, QPolynomial) else QPolynomial([x])

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, q):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __add__(self, other):
        o = self.lift(other).coeffs
        a = self.coeffs
        n = max(len(a), len(o))
        return QPolynomial([(a[i] if i < len(a) else 0) + (o[i] if i < len(o) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self.lift(other))

    def __rsub__(self, other):
        return self.lift(other) - self

    def __mul__(self, other):
        o = self.lift(other).coeffs
        if not o or not self.coeffs:
            return QPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(o) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o):
                    out[i + j] += a * b
        return QPolynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QPolynomial):
            if other.degree != 0:
                raise TypeError("only division by constants is supported")
            other = other.coeffs[0]
        return QPolynomial([c / Fraction(other) for c in self.coeffs])

    def __pow__(self, e):
        out = QPolynomial([1])
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPolynomial([other])
        return isinstance(other, QPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if mono and c == 1:
                s = mono
            elif mono and c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}" if mono else str(c)
            parts.append(s)
        return " + ".join(parts).replace("+ -", "- ")


def binom(p, k):
    """C(p, k) as a polynomial in q when p is a polynomial in q."""
    p = QPolynomial.lift(p)
    out = QPolynomial([1])
    for i in range(k):
        out = out * (p - i)
    return out / factorial(k)


def binom_int(n, k):
    """C(n, k) for any integer n via the falling factorial; 0 when n < k and n >= 0."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= n - i
    return num // factorial(k)
