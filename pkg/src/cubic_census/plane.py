"""Points of P^2(F_q), homogeneous forms and projective curve classes.

Points use the representative whose first nonzero coordinate is 1 and are
ordered by the position of that 1, then lexicographically by the remaining
coordinates, so [1:0:0] comes first.  Curve classes are ordered the same
way, which makes the class index of a form its canonical coefficient
vector read as a number.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np


class BudgetError(RuntimeError):
    """Raised before any work starts when a job exceeds its configured budget."""


DEFAULT_CLASS_BUDGET = 2 ** 32


@lru_cache(maxsize=None)
def monomials(d):
    """Exponent triples of degree d: x^d, x^(d-1)y, x^(d-1)z, ..., z^d."""
    return tuple((i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1))


@dataclass(frozen=True)
class ProjectivePoint:
    coords: tuple
    index: int


def canonical_coords(f, coords):
    for c in coords:
        if c:
            s = f.inv(c)
            return tuple(f.mul(s, x) for x in coords)
    raise ValueError("the zero vector is not a projective point")


def point_index(q, coords):
    """Index of a canonical representative in the point ordering."""
    a, b, c = coords
    if a == 1:
        return b * q + c
    if b == 1:
        return q * q + c
    return q * q + q


@lru_cache(maxsize=None)
def enumerate_points(f):
    q = f.q
    pts = [(1, a, b) for a in range(q) for b in range(q)]
    pts += [(0, 1, b) for b in range(q)]
    pts.append((0, 0, 1))
    return tuple(ProjectivePoint(c, i) for i, c in enumerate(pts))


def point_order_hash(f):
    data = json.dumps([list(p.coords) for p in enumerate_points(f)]).encode()
    return hashlib.sha256(data).hexdigest()


def _mono_value(f, coords, mono):
    v = 1
    for x, e in zip(coords, mono):
        if e:
            v = f.mul(v, f.pow(x, e))
    return v


def monomial_values(f, d, reps):
    """Matrix of monomial values (element indices), one row per representative."""
    mons = monomials(d)
    return np.array([[_mono_value(f, r, m) for m in mons] for r in reps], dtype=np.int64).reshape(len(reps), len(mons))


# ---- class indexing ----

def class_count(q, d):
    return (q ** comb(d + 2, 2) - 1) // (q - 1)


def _lead_offsets(q, k):
    out, acc = [], 0
    for j in range(k + 1):
        out.append(acc)
        if j < k:
            acc += q ** (k - 1 - j)
    return out


def class_index(coeffs, q):
    """Class index of a canonical coefficient vector (first nonzero = 1)."""
    k = len(coeffs)
    j = next(i for i, c in enumerate(coeffs) if c)
    idx = 0
    for c in coeffs[j + 1:]:
        idx = idx * q + c
    return _lead_offsets(q, k)[j] + idx


def class_coeffs(index, q, k):
    offs = _lead_offsets(q, k)
    j = max(i for i in range(k) if offs[i] <= index)
    rem = index - offs[j]
    tail = []
    for _ in range(k - 1 - j):
        tail.append(rem % q)
        rem //= q
    return (0,) * j + (1,) + tuple(reversed(tail))


# ---- forms ----

@dataclass(frozen=True)
class HomogeneousForm:
    field: object
    degree: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != comb(self.degree + 2, 2):
            raise ValueError(f"degree {self.degree} form needs {comb(self.degree + 2, 2)} coefficients")

    @classmethod
    def from_terms(cls, f, d, terms):
        """Build from a mapping exponent-triple -> element index."""
        pos = {m: i for i, m in enumerate(monomials(d))}
        c = [0] * len(pos)
        for m, a in terms.items():
            c[pos[tuple(m)]] = f.add(c[pos[tuple(m)]], a)
        return cls(f, d, tuple(c))

    @classmethod
    def from_class(cls, f, d, index):
        return cls(f, d, class_coeffs(index, f.q, comb(d + 2, 2)))

    def terms(self):
        return {m: c for m, c in zip(monomials(self.degree), self.coeffs) if c}

    def is_zero(self):
        return not any(self.coeffs)

    def __call__(self, coords):
        f = self.field
        acc = 0
        for m, c in zip(monomials(self.degree), self.coeffs):
            if c:
                acc = f.add(acc, f.mul(c, _mono_value(f, coords, m)))
        return acc

    def scale(self, a):
        return HomogeneousForm(self.field, self.degree, tuple(self.field.mul(a, c) for c in self.coeffs))

    def __add__(self, other):
        f = self.field
        return HomogeneousForm(f, self.degree, tuple(f.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return self.scale(self.field.minus_one)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        f = self.field
        out = {}
        for m1, a in self.terms().items():
            for m2, b in other.terms().items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                out[m] = f.add(out.get(m, 0), f.mul(a, b))
        return HomogeneousForm.from_terms(f, self.degree + other.degree, out)

    def canonical(self):
        lead = next((c for c in self.coeffs if c), None)
        if lead is None:
            return self
        return self.scale(self.field.inv(lead))

    def class_index(self):
        if self.is_zero():
            raise ValueError("the zero form has no class")
        return class_index(self.canonical().coeffs, self.field.q)

    def partial(self, axis):
        f = self.field
        out = {}
        for m, c in self.terms().items():
            if m[axis]:
                e = list(m)
                e[axis] -= 1
                out[tuple(e)] = f.add(out.get(tuple(e), 0), f.mul(f.from_int(m[axis]), c))
        return HomogeneousForm.from_terms(f, self.degree - 1, out)

    def divide(self, lin):
        """Quotient by a linear form, or None if it does not divide."""
        f = self.field
        lt = lin.terms()
        axis = next(i for i, c in enumerate(lin.coeffs) if c)
        lead_mono = monomials(1)[axis]
        inv_lead = f.inv(lin.coeffs[axis])
        rem = dict(self.terms())
        quot = {}
        while True:
            cand = [m for m in rem if m[axis] > 0]
            if not cand:
                break
            m = max(cand, key=lambda t: (t[axis], t))
            c = f.mul(rem[m], inv_lead)
            qm = (m[0] - lead_mono[0], m[1] - lead_mono[1], m[2] - lead_mono[2])
            quot[qm] = f.add(quot.get(qm, 0), c)
            for lm, lc in lt.items():
                t = (qm[0] + lm[0], qm[1] + lm[1], qm[2] + lm[2])
                v = f.sub(rem.get(t, 0), f.mul(c, lc))
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        if rem:
            return None
        return HomogeneousForm.from_terms(f, self.degree - 1, quot)

    def lift(self, ext):
        """The same form over an extension field."""
        return HomogeneousForm(ext.field, self.degree, tuple(ext.embed(c) for c in self.coeffs))

    def conjugate(self, ext, power=1):
        """Apply the relative Frobenius to every coefficient (forms over ext.field)."""
        return HomogeneousForm(self.field, self.degree, tuple(ext.sigma(c, power) for c in self.coeffs))

    def __str__(self):
        names = "xyz"
        parts = []
        for m, c in self.terms().items():
            mono = "*".join(f"{names[i]}^{e}" if e > 1 else names[i] for i, e in enumerate(m) if e)
            coef = str(self.field.to_value(c)) if self.field.v == 1 else f"[{c}]"
            if not mono:
                parts.append(coef)
            elif coef == "1":
                parts.append(mono)
            else:
                parts.append(f"{coef}*{mono}")
        return " + ".join(parts) if parts else "0"


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*((?:[xyz](?:\^\d+)?\s*\*?\s*)*)")


def parse_form(f, text, d=None):
    """Parse a form with integer coefficients, e.g. 'y^2*z - x^3'."""
    text = text.replace(" ", "").replace("**", "^")
    if not text:
        raise ValueError("empty form")
    terms = {}
    pos = 0
    degree = d
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse form {text!r} at position {pos}")
        sign, num, mono = m.groups()
        pos = m.end()
        exps = [0, 0, 0]
        for var, e in re.findall(r"([xyz])(?:\^(\d+))?", mono):
            exps["xyz".index(var)] += int(e) if e else 1
        if not num and not mono:
            raise ValueError(f"cannot parse form {text!r}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        deg = sum(exps)
        if degree is None:
            degree = deg
        elif deg != degree:
            raise ValueError(f"form {text!r} is not homogeneous of degree {degree}")
        key = tuple(exps)
        terms[key] = f.add(terms.get(key, 0), f.from_int(c))
    return HomogeneousForm.from_terms(f, degree, terms)


def evaluate_form(form, point):
    coords = point.coords if isinstance(point, ProjectivePoint) else tuple(point)
    return form(coords)


@dataclass(frozen=True)
class ProjectiveCurveClass:
    form: HomogeneousForm
    index: int
    size: int


def enumerate_curve_classes(f, d, budget=DEFAULT_CLASS_BUDGET):
    if d not in (1, 2, 3):
        raise ValueError(f"degree must be 1, 2 or 3, got {d}")
    total = f.q ** comb(d + 2, 2)
    if total > budget:
        raise BudgetError(f"{total} forms of degree {d} over F_{f.q} exceed the budget {budget}")
    n = class_count(f.q, d)

    def gen():
        for i in range(n):
            yield ProjectiveCurveClass(HomogeneousForm.from_class(f, d, i), i, f.q - 1)

    return gen()


# ---- incidence structure ----

class Plane:
    """Points, lines and incidence of P^2(F_q); lines are indexed like degree-1 classes."""

    def __init__(self, f):
        self.field = f
        self.q = f.q
        self.points = enumerate_points(f)
        self.n = len(self.points)
        self.coords = [p.coords for p in self.points]
        lines = []
        for i in range(self.n):
            lf = HomogeneousForm.from_class(f, 1, i)
            lines.append([p.index for p in self.points if lf(p.coords) == 0])
        self.line_points = lines
        self.line_masks = [sum(1 << i for i in pts) for pts in lines]
        through = np.full((self.n, self.n), -1, dtype=np.int64)
        for li, pts in enumerate(lines):
            for a in pts:
                for b in pts:
                    if a != b:
                        through[a, b] = li
        self.line_through = through

    def index_of(self, coords):
        return point_index(self.q, canonical_coords(self.field, coords))

    def line_form(self, li):
        return HomogeneousForm.from_class(self.field, 1, li)

    def zero_mask(self, form):
        return sum(1 << p.index for p in self.points if form(p.coords) == 0)


@lru_cache(maxsize=None)
def plane(f):
    return Plane(f)


def popcount(x):
    return bin(x).count("1")
