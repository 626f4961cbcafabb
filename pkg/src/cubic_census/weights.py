"""Homogeneous weight enumerators with exact integer (or rational) coefficients.

counts[i] is the coefficient of X^(n-i) Y^i, i.e. the number of objects of weight i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb


@dataclass
class WeightEnumerator:
    n: int
    counts: list = field(default_factory=list)

    def __post_init__(self):
        c = list(self.counts)
        if len(c) > self.n + 1:
            if any(c[self.n + 1:]):
                raise ValueError("weights above the length")
            c = c[: self.n + 1]
        self.counts = c + [0] * (self.n + 1 - len(c))

    @classmethod
    def monomial(cls, n, weight, coeff=1):
        w = cls(n)
        w.counts[weight] = coeff
        return w

    @classmethod
    def from_zeros(cls, n, by_zeros):
        """Build from a table indexed by the number of zero coordinates."""
        w = cls(n)
        for z, c in enumerate(by_zeros):
            if c:
                w.counts[n - z] += c
        return w

    def coeff_by_zeros(self, z):
        """Coefficient of X^z Y^(n-z)."""
        return self.counts[self.n - z]

    def total(self):
        return sum(self.counts)

    def _check(self, other):
        if self.n != other.n:
            raise ValueError(f"length mismatch {self.n} != {other.n}")

    def __add__(self, other):
        self._check(other)
        return WeightEnumerator(self.n, [a + b for a, b in zip(self.counts, other.counts)])

    def __sub__(self, other):
        self._check(other)
        return WeightEnumerator(self.n, [a - b for a, b in zip(self.counts, other.counts)])

    def scale(self, s):
        return WeightEnumerator(self.n, [s * a for a in self.counts])

    def __eq__(self, other):
        return isinstance(other, WeightEnumerator) and self.n == other.n and self.counts == other.counts

    def is_integral(self):
        return all(not isinstance(c, Fraction) or c.denominator == 1 for c in self.counts)

    def as_integers(self):
        out = []
        for i, c in enumerate(self.counts):
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ArithmeticError(f"non-integral coefficient {c} at weight {i}")
                c = c.numerator
            out.append(int(c))
        return WeightEnumerator(self.n, out)

    def nonzero(self):
        return {i: c for i, c in enumerate(self.counts) if c}

    def to_json(self):
        return {"n": self.n, "counts": [str(c) for c in self.counts]}

    def __str__(self):
        terms = [f"{c}*X^{self.n - i}*Y^{i}" for i, c in enumerate(self.counts) if c]
        return " + ".join(terms) or "0"


def substitute(w, a, b):
    """Coefficients of sum_i A_i (X + a Y)^(n-i) (X - b Y)^i, exactly.

    Uses the convolution of the two binomial expansions; returns a new
    enumerator of the same length (coefficients may be rational).
    """
    n = w.n
    out = [0] * (n + 1)
    for i, A in enumerate(w.counts):
        if not A:
            continue
        m = n - i
        # (X + aY)^m: coefficient of Y^s is C(m,s) a^s
        left = [comb(m, s) * a ** s for s in range(m + 1)]
        right = [comb(i, t) * (-b) ** t for t in range(i + 1)]
        for s, ls in enumerate(left):
            if not ls:
                continue
            base = A * ls
            for t, rt in enumerate(right):
                out[s + t] += base * rt
    return WeightEnumerator(n, out)


def exact_divide(w, d):
    out = []
    for i, c in enumerate(w.counts):
        if isinstance(c, Fraction):
            v = c / d
            if v.denominator != 1:
                raise ArithmeticError(f"coefficient at weight {i} not divisible by {d}")
            out.append(v.numerator)
        else:
            qt, r = divmod(c, d)
            if r:
                raise ArithmeticError(f"coefficient at weight {i} not divisible by {d}")
            out.append(qt)
    return WeightEnumerator(w.n, out)
