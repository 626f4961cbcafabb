"""Exhaustive weight enumerators and curve-pair censuses.

Everything is counted over projective classes (nonzero vectors up to scalars).
A class pair stands for (q-1)^2 ordered vector pairs with the same support
union; pairs involving the zero vector are added from the Hamming enumerators.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classify import catalogue
from .codes import build_code
from .engine import ScanTables, class_masks, class_weight_histogram, pair_counts
from .plane import BudgetError, DEFAULT_CLASS_BUDGET
from .weights import WeightEnumerator

DEFAULT_PAIR_BUDGET = 2 * 10 ** 11


def _class_total(c):
    q = c.q
    return (q ** c.k - 1) // (q - 1)


def check_class_budget(c, budget=DEFAULT_CLASS_BUDGET):
    if c.q ** c.k > budget:
        raise BudgetError(f"{c.name} over F_{c.q} has q^k = {c.q ** c.k} codewords, budget {budget}")


def check_pair_budget(n1, n2, same, budget=DEFAULT_PAIR_BUDGET):
    work = n1 * (n1 - 1) // 2 if same else n1 * n2
    if work > budget:
        raise BudgetError(f"{work} class pairs required, budget {budget}")
    return work


def class_weights(c, threads=None, chunks=None):
    """Classes of c binned by weight (list of ints, length n+1)."""
    check_class_budget(c)
    if c.k == 0:
        return [0] * (c.n + 1)
    return class_weight_histogram(ScanTables(c.field, c.generator), c.n, threads, chunks)


def hamming_enumerator(c, threads=None, chunks=None):
    hist = class_weights(c, threads, chunks)
    counts = [(c.q - 1) * h for h in hist]
    counts[0] += 1
    return WeightEnumerator(c.n, counts)


def support_masks(c, threads=None, chunks=None):
    check_class_budget(c)
    if c.k == 0:
        return np.zeros((0, (c.n + 63) // 64), dtype=np.uint64)
    return class_masks(ScanTables(c.field, c.generator), c.n, threads, chunks)


def _masks_weights(masks, n):
    w = np.zeros(len(masks), dtype=np.int64)
    for j in range(masks.shape[1]):
        col = masks[:, j]
        for b in range(64):
            w += ((col >> np.uint64(b)) & np.uint64(1)).astype(np.int64)
    return w


def _same_code(c1, c2):
    return c1 is c2 or (c1.field is c2.field and np.array_equal(c1.generator, c2.generator))


def _class_pair_zero_hist(c1, c2, threads=None, chunks=None, budget=DEFAULT_PAIR_BUDGET):
    """(off-diagonal ordered class pairs by zeros, diagonal classes by zeros)."""
    same = _same_code(c1, c2)
    m1 = support_masks(c1, threads)
    m2 = m1 if same else support_masks(c2, threads)
    check_pair_budget(len(m1), len(m2), same, budget)
    n = c1.n
    free, _ = pair_counts(m1, m2, n, same, threads=threads, chunks=chunks)
    if same:
        free = [2 * x for x in free]
        diag = [0] * (n + 1)
        for z, cnt in zip(*np.unique(n - _masks_weights(m1, n), return_counts=True)):
            diag[int(z)] = int(cnt)
        return free, diag
    return free, None


def _zero_pairs(w1, w2):
    """Pairs (x, 0), (0, y) and (0, 0) as an enumerator."""
    return w1 + w2 - WeightEnumerator.monomial(w1.n, 0)


def second_enumerator(c1, c2=None, threads=None, chunks=None, budget=DEFAULT_PAIR_BUDGET):
    """Joint weight enumerator W^[2] of (c1, c2) by exhaustive class-pair scan."""
    c2 = c1 if c2 is None else c2
    if c1.n != c2.n or c1.q != c2.q:
        raise ValueError("codes must share field and length")
    n, q = c1.n, c1.q
    w1 = hamming_enumerator(c1, threads)
    w2 = w1 if _same_code(c1, c2) else hamming_enumerator(c2, threads)
    out = _zero_pairs(w1, w2)
    if c1.k == 0 or c2.k == 0:
        return out
    free, diag = _class_pair_zero_hist(c1, c2, threads, chunks, budget)
    s = (q - 1) ** 2
    out = out + WeightEnumerator.from_zeros(n, [s * x for x in free])
    if diag is not None:
        out = out + WeightEnumerator.from_zeros(n, [s * x for x in diag])
    return out


def support_r_enumerators(c, threads=None, chunks=None, budget=DEFAULT_PAIR_BUDGET):
    """Enumerators W^(1), W^(2) over the 1- and 2-dimensional subspaces of c."""
    n, q = c.n, c.q
    w1 = WeightEnumerator(n, class_weights(c, threads))
    if c.k < 2:
        return w1, WeightEnumerator(n)
    free, _ = _class_pair_zero_hist(c, c, threads, chunks, budget)
    # each plane holds q+1 classes, i.e. (q+1)q ordered pairs of distinct classes
    per = (q + 1) * q
    counts = []
    for x in free:
        if x % per:
            raise ArithmeticError("class pairs do not split evenly into planes")
        counts.append(x // per)
    return w1, WeightEnumerator.from_zeros(n, counts)


def assemble_from_supports(n, q, w1, w2):
    """W^[2] = X^n + (q^2-1) W^(1) + (q^2-1)(q^2-q) W^(2)."""
    return WeightEnumerator.monomial(n, 0) + w1.scale(q * q - 1) + w2.scale((q * q - 1) * (q * q - q))


# ---- curve-pair census ----

@dataclass
class CensusTable:
    """Ordered pairs (f, g) of forms binned by number of common rational zeros k.

    free: both nonzero, not proportional, no common component over the closure.
    common: both nonzero, not proportional, sharing a component.
    proportional: g a nonzero multiple of f (only when both have the same degree).
    zero: f or g is the zero form.
    """
    q: int
    d: int
    e: int
    n_points: int
    dims: tuple
    affine: bool = False
    free: list = field(default_factory=list)
    common: list = field(default_factory=list)
    proportional: list = field(default_factory=list)
    zero: list = field(default_factory=list)

    def c(self, k):
        return self.free[k] if k < len(self.free) else 0

    @property
    def bezout(self):
        return self.d * self.e

    def total(self):
        return sum(self.free) + sum(self.common) + sum(self.proportional) + sum(self.zero)

    def expected_total(self):
        return self.q ** (self.dims[0] + self.dims[1])

    def second_enumerator(self):
        """The joint weight enumerator W^[2] assembled from all four tables."""
        n = self.n_points
        tot = [a + b + c + d for a, b, c, d in zip(self.free, self.common, self.proportional, self.zero)]
        return WeightEnumerator.from_zeros(n, tot)

    def common_enumerator(self):
        return WeightEnumerator.from_zeros(self.n_points, self.common)

    def to_json(self):
        s = lambda xs: [str(x) for x in xs]
        return {
            "q": self.q, "d": self.d, "e": self.e, "affine": self.affine,
            "n_points": self.n_points,
            "free": s(self.free), "common": s(self.common),
            "proportional": s(self.proportional), "zero": s(self.zero),
            "total": str(self.total()),
        }


def _component_table(f, d, affine):
    """Per-class component ids (rows padded with -1) for forms of degree d."""
    cat = catalogue(f, cubics=(d == 3))
    L = cat.n_lines
    if d == 1:
        comps = np.arange(L, dtype=np.int64).reshape(L, 1)
    elif d == 2:
        comps = cat.conic_comps.copy()
    else:
        comps = cat.cubic_comps.copy()
    if affine:
        # the line at infinity z = 0 is the last line class; it is not an affine component
        comps[comps == L - 1] = -1
        comps = -np.sort(-comps, axis=1)  # keep ids first, padding last
    return np.ascontiguousarray(comps)


def _hist_by_zeros(masks, n):
    out = [0] * (n + 1)
    for z, cnt in zip(*np.unique(n - _masks_weights(masks, n), return_counts=True)):
        out[int(z)] = int(cnt)
    return out


def pair_census(f, d, e, affine=False, threads=None, chunks=None, budget=DEFAULT_PAIR_BUDGET):
    """Census of ordered form pairs (deg d, deg e) by common zeros and shared components."""
    if d not in (1, 2, 3) or e not in (1, 2, 3):
        raise ValueError("degrees must be in {1, 2, 3}")
    kind = "affine" if affine else "projective"
    if affine and not (d == e == 2):
        raise ValueError("the affine census is only defined for two conics")
    c1 = build_code(f, d, kind)
    c2 = c1 if e == d else build_code(f, e, kind)
    same = e == d
    n, q = c1.n, f.q
    n1 = _class_total(c1)
    n2 = _class_total(c2)
    check_pair_budget(n1, n2, same, budget)
    m1 = support_masks(c1, threads)
    m2 = m1 if same else support_masks(c2, threads)
    k1 = _component_table(f, d, affine)
    k2 = k1 if same else _component_table(f, e, affine)
    free, comm = pair_counts(m1, m2, n, same, k1, k2, threads=threads, chunks=chunks)
    s = (q - 1) ** 2
    mult = 2 * s if same else s
    tab = CensusTable(q, d, e, n, (c1.k, c2.k), affine)
    tab.free = [mult * x for x in free]
    tab.common = [mult * x for x in comm]
    h1 = _hist_by_zeros(m1, n)
    h2 = h1 if same else _hist_by_zeros(m2, n)
    tab.proportional = [s * x for x in h1] if same else [0] * (n + 1)
    # (f, 0) and (0, g) have the zeros of the nonzero form; (0, 0) vanishes everywhere
    zero = [(q - 1) * (a + b) for a, b in zip(h1, h2)]
    zero[n] += 1
    tab.zero = zero
    return tab
