"""Conic types, cubic factorizations, singular points and the per-class factor catalogue.

Two forms share a component over the algebraic closure iff they share an
F_q-irreducible factor (a gcd over F_q stays the gcd over any extension), so
component ids are F_q-irreducible factor classes:

    id = line class                     for rational lines
    id = n_lines + conic class          for irreducible conics (smooth or conjugate pair)
    id = n_lines + n_conics + cubic cls for irreducible cubics

The catalogue is built by generating products (rational lines, conjugate
pairs L*L^s from F_{q^2}, conjugate triples from F_{q^3}) rather than by
factoring every class; the per-form functions factor by trial division and
are cross-checked against it in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from . import kernels as K
from .engine import ScanTables, run_tasks, split_range, chunk_count, sum_histograms
from .gf import extend_field
from .plane import HomogeneousForm, _lead_offsets, class_count, enumerate_points, monomials, plane, popcount
from .codes import build_code

# conic tags
ZERO, DOUBLE_LINE, TWO_LINES, CONJUGATE_PAIR, SMOOTH_CONIC = (
    "zero", "double_line", "two_rational_lines", "conjugate_line_pair", "smooth")
CONIC_CODES = {DOUBLE_LINE: 1, TWO_LINES: 2, CONJUGATE_PAIR: 3, SMOOTH_CONIC: 4}
CONIC_POINTS = {DOUBLE_LINE: lambda q: q + 1, TWO_LINES: lambda q: 2 * q + 1,
                CONJUGATE_PAIR: lambda q: 1, SMOOTH_CONIC: lambda q: q + 1}

# cubic catalogue kinds
THREE_LINES, LINE_SMOOTH_CONIC, LINE_CONJUGATE_PAIR, CONJUGATE_TRIPLE, ABS_IRREDUCIBLE = 1, 2, 3, 4, 5

# singular cubic tags (indexed like the kernel tags)
SINGULAR_TAGS = ("smooth", "cuspidal", "split_nodal", "nonsplit_nodal", "reducible")


# ---------------------------------------------------------------- vectorised helpers

def _product_positions(d1, d2):
    pos = {m: i for i, m in enumerate(monomials(d1 + d2))}
    return [[pos[(a[0] + b[0], a[1] + b[1], a[2] + b[2])] for b in monomials(d2)] for a in monomials(d1)]


def product_coeffs(f, d1, A, d2, B):
    """Row-wise products of degree-d1 forms A and degree-d2 forms B (broadcasting rows)."""
    A = np.atleast_2d(A)
    B = np.atleast_2d(B)
    n = max(A.shape[0], B.shape[0])
    out = np.zeros((n, comb(d1 + d2 + 2, 2)), dtype=np.int64)
    add, mul = f.add_table, f.mul_table
    for a, row in enumerate(_product_positions(d1, d2)):
        for b, t in enumerate(row):
            out[:, t] = add[out[:, t], mul[A[:, a], B[:, b]]]
    return out


def canonical_class_indices(f, coeffs):
    """Class indices of nonzero coefficient rows."""
    coeffs = np.atleast_2d(coeffs)
    n, M = coeffs.shape
    lead_pos = (coeffs != 0).argmax(axis=1)
    lead = coeffs[np.arange(n), lead_pos]
    canon = f.mul_table[f.inv_table[lead][:, None], coeffs]
    weights = np.array([f.q ** (M - 1 - i) for i in range(M)], dtype=np.int64)
    tail = np.where(np.arange(M)[None, :] > lead_pos[:, None], canon, 0)
    offsets = np.array(_lead_offsets(f.q, M), dtype=np.int64)
    return offsets[lead_pos] + (tail * weights[None, :]).sum(axis=1)


def all_class_coeffs(f, d):
    """Canonical coefficient rows of every degree-d class, in class order."""
    M = comb(d + 2, 2)
    rows = []
    for j in range(M):
        tail = M - 1 - j
        grid = np.indices((f.q,) * tail).reshape(tail, -1).T if tail else np.zeros((1, 0), dtype=np.int64)
        block = np.zeros((grid.shape[0], M), dtype=np.int64)
        block[:, j] = 1
        block[:, j + 1:] = grid
        rows.append(block)
    return np.concatenate(rows)


def _extension_conjugate_products(f, degree):
    """Base classes of L * L^s (* L^s^2) over non-rational lines L of F_{q^degree}."""
    ext = extend_field(f, degree)
    E = ext.field
    lines = all_class_coeffs(E, 1)
    restrict = np.full(E.q, -1, dtype=np.int64)
    restrict[ext.embedding] = np.arange(f.q)
    rational = (restrict[lines] >= 0).all(axis=1)
    lines = lines[~rational]
    Q1 = E.q - 1

    def sigma(x, power):
        e = f.q ** power
        return np.where(x == 0, 0, 1 + ((x - 1) * e) % Q1)

    prod = lines
    deg = 1
    for pw in range(1, degree):
        prod = product_coeffs(E, deg, prod, 1, sigma(lines, pw))
        deg += 1
    base = restrict[prod]
    if (base < 0).any():
        raise AssertionError("norm form not defined over the base field")
    return np.unique(canonical_class_indices(f, base))


# ---------------------------------------------------------------- catalogue

class Catalogue:
    """Per-class factor types and component ids for lines, conics and (optionally) cubics."""

    def __init__(self, f, cubics=True):
        self.field = f
        q = f.q
        self.n_lines = class_count(q, 1)
        self.n_conics = class_count(q, 2)
        L = self.n_lines
        line_c = all_class_coeffs(f, 1)
        self.line_coeffs = line_c

        # conics
        kind2 = np.full(self.n_conics, CONIC_CODES[SMOOTH_CONIC], dtype=np.int8)
        comps2 = np.full((self.n_conics, 2), -1, dtype=np.int64)
        i, j = np.triu_indices(L)
        cls = canonical_class_indices(f, product_coeffs(f, 1, line_c[i], 1, line_c[j]))
        kind2[cls] = np.where(i == j, CONIC_CODES[DOUBLE_LINE], CONIC_CODES[TWO_LINES])
        comps2[cls, 0] = i
        comps2[cls, 1] = j
        self.conjugate_pairs = _extension_conjugate_products(f, 2)
        kind2[self.conjugate_pairs] = CONIC_CODES[CONJUGATE_PAIR]
        irr = np.flatnonzero(kind2 >= CONIC_CODES[CONJUGATE_PAIR])
        comps2[irr, 0] = L + irr
        self.conic_kind = kind2
        self.conic_comps = comps2

        self.n_cubics = class_count(q, 3)
        self.cubic_kind = None
        self.cubic_comps = None
        if cubics:
            self._build_cubics()

    def _build_cubics(self):
        f = self.field
        L, n2 = self.n_lines, self.n_conics
        line_c = self.line_coeffs
        kind3 = np.full(self.n_cubics, ABS_IRREDUCIBLE, dtype=np.int8)
        comps3 = np.full((self.n_cubics, 3), -1, dtype=np.int64)
        # three rational lines
        tri = np.array([(a, b, c) for a in range(L) for b in range(a, L) for c in range(b, L)],
                       dtype=np.int64).reshape(-1, 3)
        pc = product_coeffs(f, 1, line_c[tri[:, 0]], 1, line_c[tri[:, 1]])
        cls = canonical_class_indices(f, product_coeffs(f, 2, pc, 1, line_c[tri[:, 2]]))
        kind3[cls] = THREE_LINES
        comps3[cls] = tri
        # line times irreducible conic
        irr = np.flatnonzero(self.conic_kind >= CONIC_CODES[CONJUGATE_PAIR])
        conic_c = all_class_coeffs(f, 2)[irr]
        for li in range(L):
            cls = canonical_class_indices(f, product_coeffs(f, 2, conic_c, 1, line_c[li:li + 1]))
            smooth = self.conic_kind[irr] == CONIC_CODES[SMOOTH_CONIC]
            kind3[cls] = np.where(smooth, LINE_SMOOTH_CONIC, LINE_CONJUGATE_PAIR)
            comps3[cls, 0] = li
            comps3[cls, 1] = L + irr
        self.conjugate_triples = _extension_conjugate_products(f, 3)
        kind3[self.conjugate_triples] = CONJUGATE_TRIPLE
        irr3 = np.flatnonzero(kind3 >= CONJUGATE_TRIPLE)
        comps3[irr3, 0] = L + n2 + irr3
        self.cubic_kind = kind3
        self.cubic_comps = comps3

    def conic_tag(self, index):
        code = int(self.conic_kind[index])
        return next(t for t, c in CONIC_CODES.items() if c == code)


@lru_cache(maxsize=None)
def catalogue(f, cubics=True):
    if not cubics:
        return Catalogue(f, cubics=False)
    return Catalogue(f, cubics=True)


# ---------------------------------------------------------------- per-form API

def _lines_over(field):
    return [HomogeneousForm.from_class(field, 1, i) for i in range(class_count(field.q, 1))]


def rational_line_factors(form):
    """Split off rational linear factors by trial division: (line class indices, cofactor)."""
    f = form.field
    found = []
    rest = form
    lines = _lines_over(f)
    progress = True
    while rest.degree > 0 and progress:
        progress = False
        for i, lf in enumerate(lines):
            quo = rest.divide(lf)
            if quo is not None:
                found.append(i)
                rest = quo
                progress = True
                break
    return found, rest


def has_linear_factor_over(form, degree):
    """Trial division by every line over F_{q^degree}."""
    ext = extend_field(form.field, degree)
    lifted = form.lift(ext)
    return any(lifted.divide(lf) is not None for lf in _lines_over(ext.field))


def classify_conic(form):
    if form.degree != 2:
        raise ValueError("classify_conic needs a degree-2 form")
    if form.is_zero():
        return ZERO
    lines, rest = rational_line_factors(form)
    if len(lines) == 2:
        return DOUBLE_LINE if lines[0] == lines[1] else TWO_LINES
    if has_linear_factor_over(form, 2):
        return CONJUGATE_PAIR
    return SMOOTH_CONIC


@dataclass(frozen=True)
class Factor:
    degree: int
    kind: str  # line, smooth_conic, conjugate_pair, conjugate_triple, absolutely_irreducible
    form: HomogeneousForm
    multiplicity: int

    @property
    def absolutely_irreducible(self):
        return self.kind in ("line", "smooth_conic", "absolutely_irreducible")

    @property
    def component_id(self):
        return (self.degree, self.form.class_index())


@dataclass(frozen=True)
class CubicFactorization:
    factors: tuple

    @property
    def component_ids(self):
        return {fa.component_id: fa.multiplicity for fa in self.factors}

    @property
    def absolutely_irreducible(self):
        return len(self.factors) == 1 and self.factors[0].kind == "absolutely_irreducible"

    def product(self):
        out = None
        for fa in self.factors:
            for _ in range(fa.multiplicity):
                out = fa.form if out is None else out * fa.form
        return out


def factor_form(form):
    """Factor a nonzero form of degree <= 3 into canonical F_q-irreducible factors.

    The product of the factors equals the form up to a nonzero scalar.
    """
    if form.is_zero():
        raise ValueError("cannot factor the zero form")
    f = form.field
    lines, rest = rational_line_factors(form)
    counts = {}
    for li in lines:
        counts[li] = counts.get(li, 0) + 1
    factors = [Factor(1, "line", HomogeneousForm.from_class(f, 1, li), m) for li, m in sorted(counts.items())]
    if rest.degree == 2:
        kind = "conjugate_pair" if has_linear_factor_over(rest, 2) else "smooth_conic"
        factors.append(Factor(2, kind, rest.canonical(), 1))
    elif rest.degree == 3:
        triples = catalogue_triples(f)
        kind = "conjugate_triple" if rest.class_index() in triples else "absolutely_irreducible"
        factors.append(Factor(3, kind, rest.canonical(), 1))
    return CubicFactorization(tuple(factors))


@lru_cache(maxsize=None)
def catalogue_triples(f):
    return frozenset(int(x) for x in _extension_conjugate_products(f, 3))


def factor_cubic(form):
    if form.degree != 3:
        raise ValueError("factor_cubic needs a degree-3 form")
    return factor_form(form)


def common_component_degree(f1, f2):
    if f1.is_zero() or f2.is_zero():
        raise ValueError("common_component_degree needs nonzero forms")
    a = factor_form(f1).component_ids
    b = factor_form(f2).component_ids
    return sum(key[0] * min(m, b[key]) for key, m in a.items() if key in b)


def common_zero_count(f1, f2):
    pl = plane(f1.field)
    return popcount(pl.zero_mask(f1) & pl.zero_mask(f2))


def singular_points(form, field=None):
    """Points P of P^2(field) with f(P) = 0 and all partials zero at P.

    field may be the form's own field or an Extension of it.
    """
    if field is None or field is form.field:
        g, F = form, form.field
    else:
        g, F = form.lift(field), field.field
    partials = [g.partial(a) for a in range(3)] if g.degree > 0 else []
    out = []
    for p in enumerate_points(F):
        if g(p.coords) == 0 and all(d(p.coords) == 0 for d in partials):
            out.append(p)
    return out


def _complement_basis(coords):
    if coords[0]:
        return (0, 1, 0), (0, 0, 1)
    if coords[1]:
        return (1, 0, 0), (0, 0, 1)
    return (1, 0, 0), (0, 1, 0)


def _t2_coefficient(f, mono, P, v):
    """Coefficient of t^2 in prod_c (P_c + t v_c)^e_c."""
    poly = [1, 0, 0]
    for pc, vc, e in zip(P, v, mono):
        for _ in range(e):
            new = [0, 0, 0]
            for i in range(3):
                if poly[i]:
                    new[i] = f.add(new[i], f.mul(poly[i], pc))
                    if i < 2:
                        new[i + 1] = f.add(new[i + 1], f.mul(poly[i], vc))
            poly = new
    return poly[2]


def tangent_cone_roots(form, P):
    """Rational roots of the tangent cone at a singular point P (-1 if it vanishes)."""
    f = form.field
    u, w = _complement_basis(P)
    uw = tuple(f.add(a, b) for a, b in zip(u, w))
    vals = []
    for v in (u, w, uw):
        acc = 0
        for m, c in form.terms().items():
            acc = f.add(acc, f.mul(c, _t2_coefficient(f, m, P, v)))
        vals.append(acc)
    A, C, ApC = vals
    B = f.sub(f.sub(ApC, A), C)
    if A == B == C == 0:
        return -1
    r = 1 if A == 0 else 0
    for s in range(f.q):
        if f.add(f.add(f.mul(A, f.mul(s, s)), f.mul(B, s)), C) == 0:
            r += 1
    return r


def classify_singular_cubic(form):
    if form.degree != 3:
        raise ValueError("classify_singular_cubic needs a degree-3 form")
    if form.is_zero() or not factor_cubic(form).absolutely_irreducible:
        return "reducible"
    sing = singular_points(form)
    if not sing:
        return "smooth"
    r = tangent_cone_roots(form, sing[0].coords)
    return {2: "split_nodal", 1: "cuspidal", 0: "nonsplit_nodal"}.get(r, "reducible")


# ---------------------------------------------------------------- cubic class scan

@lru_cache(maxsize=None)
def cubic_scan_data(f):
    """Derivative, tangent-cone and line tables consumed by the compiled cubic scan."""
    pts = enumerate_points(f)
    mons = monomials(3)
    der = np.zeros((len(pts), 3, len(mons)), dtype=np.int64)
    cone = np.zeros((len(pts), 3, len(mons)), dtype=np.int64)
    for p in pts:
        P = p.coords
        for m_i, m in enumerate(mons):
            for axis in range(3):
                if m[axis]:
                    e = list(m)
                    e[axis] -= 1
                    v = f.from_int(m[axis])
                    for x, ex in zip(P, e):
                        v = f.mul(v, f.pow(x, ex))
                    der[p.index, axis, m_i] = v
            u, w = _complement_basis(P)
            uw = tuple(f.add(a, b) for a, b in zip(u, w))
            for r, v in enumerate((u, w, uw)):
                cone[p.index, r, m_i] = _t2_coefficient(f, m, P, v)
    line_pts = np.array(plane(f).line_points, dtype=np.int64)
    return der, cone, line_pts


@dataclass
class CubicScan:
    q: int
    hist_all: list      # classes by number of rational zeros
    hist_smooth: list
    hist_types: dict    # tag -> classes by number of rational zeros
    tags: np.ndarray | None = None
    singular_point: np.ndarray | None = None


def scan_cubic_classes(f, threads=None, per_class=False, chunks=None):
    """Classify every cubic class (q >= 3): smoothness, singular type, zero count."""
    if f.q < 3:
        raise ValueError("cubic classification needs q >= 3")
    code = build_code(f, 3)
    der, cone, line_pts = cubic_scan_data(f)
    # running vector: f(P) for every point, then df/dx(P)
    tables = ScanTables(f, np.hstack([code.generator, der[:, 0, :].T]))
    n = tables.n_classes
    N = code.n
    tags = np.zeros(n if per_class else 0, dtype=np.int8)
    sing = np.zeros(n if per_class else 0, dtype=np.int64)
    pieces = split_range(n, chunks or chunk_count(n, threads))

    def work(piece):
        a, b = piece
        ha = np.zeros(N + 1, dtype=np.int64)
        hs = np.zeros(N + 1, dtype=np.int64)
        ht = np.zeros((5, N + 1), dtype=np.int64)
        t_out = tags[a:b] if per_class else tags
        s_out = sing[a:b] if per_class else sing
        K.scan_cubics(*tables.args(), f.add_table, f.mul_table, der, cone, line_pts,
                      a, b, ha, hs, ht, t_out, s_out)
        return ha, hs, ht

    res = run_tasks(work, pieces, threads)
    hist_all = sum_histograms([r[0] for r in res])
    hist_smooth = sum_histograms([r[1] for r in res])
    types = {}
    for t, name in enumerate(SINGULAR_TAGS):
        types[name] = sum_histograms([r[2][t] for r in res])
    return CubicScan(f.q, hist_all, hist_smooth, types,
                     tags if per_class else None, sing if per_class else None)
