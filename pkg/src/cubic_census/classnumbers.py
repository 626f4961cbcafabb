"""Class numbers of imaginary quadratic orders, Frobenius-trace probabilities for
elliptic curves over F_q, and the smooth-cubic weight enumerator they predict."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .gf import prime_power
from .weights import WeightEnumerator


def _check_disc(d):
    if d >= 0 or d % 4 not in (0, 1):
        raise ValueError(f"{d} is not a negative discriminant (need d < 0, d = 0 or 1 mod 4)")


@lru_cache(maxsize=None)
def class_number(d):
    """Number of reduced primitive positive-definite forms (a, b, c) with b^2 - 4ac = d."""
    _check_disc(d)
    h = 0
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or gcd(gcd(a, abs(b)), c) != 1:
                continue
            if b < 0 and a == c:
                continue
            h += 1
        a += 1
    return h


def h_w(d):
    """h(d) weighted by 2 / |units|: h/3 at d = -3, h/2 at d = -4, 0 off the discriminants."""
    if d >= 0 or d % 4 not in (0, 1):
        return Fraction(0)
    h = Fraction(class_number(d))
    if d == -3:
        return h / 3
    if d == -4:
        return h / 2
    return h


@lru_cache(maxsize=None)
def hurwitz_H(delta):
    """Sum of h_w(delta / f^2) over f with f^2 | delta."""
    _check_disc(delta)
    total = Fraction(0)
    for f in range(1, isqrt(-delta) + 1):
        if delta % (f * f) == 0:
            total += h_w(delta // (f * f))
    return total


def _legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def kronecker(a, n):
    """Kronecker symbol (a / n) for n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    out = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        out *= 1 if a % 8 in (1, 7) else -1
    p = 3
    while n > 1:
        if p * p > n:
            p = n
        while n % p == 0:
            n //= p
            out *= _legendre(a, p)
            if out == 0:
                return 0
        p += 2
    return out


def trace_range(q):
    r = isqrt(4 * q)
    return range(-r, r + 1)


def _is_square(q):
    return isqrt(q) ** 2 == q


def trace_probability(q, t):
    """Aut-weighted share of elliptic curves over F_q with Frobenius trace t."""
    pv = prime_power(q)
    if pv is None:
        raise ValueError(f"{q} is not a prime power")
    p = pv[0]
    tt = t * t
    if tt > 4 * q:
        return Fraction(0)
    if tt < 4 * q and t % p:
        return hurwitz_H(tt - 4 * q) / (2 * q)
    if not _is_square(q):
        if t == 0:
            return hurwitz_H(-4 * p) / (2 * q)
        if tt == 2 * q and p == 2:
            return Fraction(1, 4 * q)
        if tt == 3 * q and p == 3:
            return Fraction(1, 6 * q)
        return Fraction(0)
    if t == 0:
        return Fraction(1 - kronecker(-4, p), 4 * q)
    if tt == q:
        return Fraction(1 - kronecker(-3, p), 6 * q)
    if tt == 4 * q:
        return Fraction(p - 1, 24 * q)
    return Fraction(0)


def trace_table(q):
    """{t: probability} over the Hasse interval."""
    return {t: trace_probability(q, t) for t in trace_range(q)}


def trace_table_json(q):
    return {"q": q, "probabilities": {str(t): f"{p.numerator}/{p.denominator}" for t, p in trace_table(q).items()}}


def smooth_form_count(q):
    """|GL_3(F_q)| * q: the factor turning trace probabilities into form counts."""
    return (q ** 3 - 1) * (q ** 3 - q) * (q ** 3 - q * q) * q


def predict_smooth_enumerator(q):
    """W^smooth: X^(q+1-t) Y^(q^2+t) coefficient (q^3-1)(q^3-q)(q^3-q^2) q P_q(t)."""
    if q <= 2:
        raise ValueError("smooth-cubic prediction needs q > 2")
    n = q * q + q + 1
    w = WeightEnumerator(n)
    scale = smooth_form_count(q)
    for t, prob in trace_table(q).items():
        c = scale * prob
        if c.denominator != 1 or c < 0:
            raise ArithmeticError(f"q={q}, t={t}: coefficient {c} is not a nonnegative integer")
        w.counts[n - (q + 1 - t)] += c.numerator
    return w


def unmatched_traces(q, observed):
    """Traces t seen in `observed` (zeros -> count) for which no case of the table fires."""
    table = trace_table(q)
    return [t for t, prob in table.items() if prob == 0 and observed.get(q + 1 - t, 0) > 0]
