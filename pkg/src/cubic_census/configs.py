"""Point sets that fail to impose independent conditions on conics and cubics.

Rank tests, a tagger for the low-weight failing configurations, exhaustive
subset scans for nine-point pencil bases (I_9) and the eight-point families
behind J_8, and the collinear dual-codeword spaces V_{d,m}.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from . import kernels as K
from .classify import SINGULAR_TAGS, catalogue, common_component_degree, scan_cubic_classes, CONIC_CODES, SMOOTH_CONIC
from .codes import build_code
from .engine import resolve_threads, run_tasks, split_range
from .enumerators import support_masks
from .linalg import nullspace, rank
from .plane import BudgetError, HomogeneousForm, enumerate_points, monomial_values, plane, popcount
from . import closedforms as cf

DEFAULT_SUBSET_BUDGET = 10 ** 6


@dataclass(frozen=True)
class PointSet:
    indices: tuple

    def __post_init__(self):
        idx = tuple(sorted(int(i) for i in self.indices))
        if len(set(idx)) != len(idx):
            raise ValueError("points must be distinct")
        object.__setattr__(self, "indices", idx)

    @property
    def size(self):
        return len(self.indices)

    @property
    def mask(self):
        return sum(1 << i for i in self.indices)

    @classmethod
    def from_mask(cls, mask):
        return cls(tuple(i for i in range(mask.bit_length()) if mask >> i & 1))


@dataclass(frozen=True)
class ConfigClass:
    tag: str                 # collinear, conic_smooth, two_lines, cubic_pencil_base, other
    sizes: tuple = ()
    through_intersection: bool | None = None

    def __str__(self):
        s = f"{self.tag}({', '.join(map(str, self.sizes))}"
        if self.through_intersection is not None:
            s += ", with" if self.through_intersection else ", without"
        return s + ")"


def _reps(f, s):
    pts = enumerate_points(f)
    return [pts[i].coords for i in s.indices]


def evaluation_matrix(f, s, d):
    """k x C(d+2, 2) monomial values at the canonical representatives."""
    return monomial_values(f, d, _reps(f, s))


def gamma_dim(f, s, d):
    if s.size == 0:
        return comb(d + 2, 2)
    return comb(d + 2, 2) - rank(f, evaluation_matrix(f, s, d).tolist())


def imposes_independent(f, s, d):
    return s.size == 0 or rank(f, evaluation_matrix(f, s, d).tolist()) == s.size


def vanishing_forms(f, s, d):
    """Basis of Gamma_{S,d} as HomogeneousForms."""
    basis = nullspace(f, evaluation_matrix(f, s, d).tolist(), comb(d + 2, 2))
    return [HomogeneousForm(f, d, tuple(b)) for b in basis]


def _max_on_line(pl, mask):
    best, line = 0, -1
    for li, lm in enumerate(pl.line_masks):
        c = popcount(mask & lm)
        if c > best:
            best, line = c, li
    return best, line


def _smooth_conic_through(f, s):
    """True when some smooth conic contains the set."""
    kinds = catalogue(f, cubics=False).conic_kind
    return any(kinds[form.canonical().class_index()] == CONIC_CODES[SMOOTH_CONIC]
               for form in vanishing_forms(f, s, 2))


def _two_lines(pl, mask):
    """(a, b, through) if the set lies on two distinct lines, a >= b counting
    points off the intersection; None otherwise."""
    pts = [i for i in range(mask.bit_length()) if mask >> i & 1]
    first = pts[0]
    for other in pts[1:]:
        l1 = pl.line_through[first, other]
        rest = mask & ~pl.line_masks[l1]
        if not rest:
            continue
        r = [i for i in range(rest.bit_length()) if rest >> i & 1]
        l2 = int(pl.line_through[r[0], r[1]]) if len(r) > 1 else None
        cands = [l2] if l2 is not None else [li for li, lm in enumerate(pl.line_masks) if lm >> r[0] & 1]
        for l2 in cands:
            if rest & ~pl.line_masks[l2]:
                continue
            both = pl.line_masks[l1] & pl.line_masks[l2]
            through = bool(mask & both)
            a = popcount(mask & pl.line_masks[l1] & ~both)
            b = popcount(mask & pl.line_masks[l2] & ~both)
            return (max(a, b), min(a, b), through)
    return None


def classify_failing(f, s, d):
    """Tag a set that fails to impose independent conditions on degree-d curves."""
    if d not in (2, 3):
        raise ValueError("degree must be 2 or 3")
    if s.size > 2 * d + 3:
        raise ValueError(f"sets larger than {2 * d + 3} points are outside the classification")
    if imposes_independent(f, s, d):
        raise ValueError("the set imposes independent conditions")
    pl = plane(f)
    mask = s.mask
    best, _ = _max_on_line(pl, mask)
    if best == s.size:
        return ConfigClass("collinear", (s.size,))
    if s.size >= 5 and _smooth_conic_through(f, s):
        return ConfigClass("conic_smooth", (s.size,))
    two = _two_lines(pl, mask)
    if two is not None:
        return ConfigClass("two_lines", two[:2], two[2])
    if d == 3 and s.size == 9 and pencil_base(f, s):
        return ConfigClass("cubic_pencil_base", (9,))
    if best >= d + 2:
        return ConfigClass("collinear", (best,))
    return ConfigClass("other", (s.size,))


def pencil_base(f, s, all_pairs=False):
    """gamma_dim(S, 3) = 2 and the pencil has a component-free pair cutting out exactly S.

    With all_pairs, every pair of distinct pencil members is tested and the
    result is (basis verdict, set of verdicts over all pairs).
    """
    forms = vanishing_forms(f, s, 3)
    if len(forms) != 2:
        return (False, set()) if all_pairs else False
    pl = plane(f)

    def ok(F, G):
        return common_component_degree(F, G) == 0 and (pl.zero_mask(F) & pl.zero_mask(G)) == s.mask

    F, G = forms
    verdict = ok(F, G)
    if not all_pairs:
        return verdict
    members = [F] + [HomogeneousForm(f, 3, tuple(f.add(a, f.mul(t, b)) for a, b in zip(G.coeffs, F.coeffs)))
                     for t in range(f.q)]
    seen = {ok(members[i], members[j]) for i in range(len(members)) for j in range(i + 1, len(members))}
    return verdict, seen


def _check_subsets(n, k, budget):
    if comb(n, k) > budget:
        raise BudgetError(f"{comb(n, k)} subsets of size {k}, budget {budget}")


def _field_tables(f):
    return (np.ascontiguousarray(f.add_table), np.ascontiguousarray(f.mul_table),
            np.ascontiguousarray(f.inv_table), np.ascontiguousarray(f.neg_table))


def subset_rank_scan(f, size, d, target, threads=None, budget=DEFAULT_SUBSET_BUDGET, keep=1 << 18):
    """Histogram of ranks over all size-subsets, plus the masks of rank == target."""
    pl = plane(f)
    n = pl.n
    if n > 64:
        raise ValueError("subset scans need at most 64 points")
    _check_subsets(n, size, budget)
    evals = np.ascontiguousarray(monomial_values(f, d, [p.coords for p in enumerate_points(f)]))
    tabs = _field_tables(f)
    ncols = evals.shape[1]

    def work(piece):
        lo, hi = piece
        hist = np.zeros(ncols + 1, np.int64)
        out = np.zeros(keep, np.uint64)
        found = K.scan_subset_ranks(evals, size, lo, hi, *tabs, hist, target, out)
        if found > keep:
            raise BudgetError(f"{found} subsets of rank {target}, kept at most {keep}")
        return hist, out[:found]

    res = run_tasks(work, split_range(n - size + 1, 4 * resolve_threads(threads)), threads)
    hist = sum(r[0] for r in res)
    masks = np.concatenate([r[1] for r in res]) if res else np.zeros(0, np.uint64)
    return [int(x) for x in hist], [int(m) for m in masks]


def count_I9(f, threads=None, budget=DEFAULT_SUBSET_BUDGET):
    """Nine-point sets cut out exactly by two cubics without a common component."""
    if f.q < 3:
        return 0
    pl = plane(f)
    _, masks = subset_rank_scan(f, 9, 3, 8, threads, budget)
    total = 0
    for m in masks:
        # a cubic through 4 collinear points contains the line
        if _max_on_line(pl, m)[0] >= 4:
            continue
        if pencil_base(f, PointSet.from_mask(m)):
            total += 1
    return total


def _singular_cubic_table(f, min_points):
    """Zero masks and singular points of absolutely irreducible singular cubics with >= min_points zeros."""
    n = plane(f).n
    full = (1 << n) - 1
    scan = scan_cubic_classes(f, per_class=True)
    keep = np.isin(scan.tags, [SINGULAR_TAGS.index(t) for t in ("cuspidal", "split_nodal", "nonsplit_nodal")])
    if not keep.any():
        return np.zeros(0, np.uint64), np.zeros(0, np.int64)
    sup = support_masks(build_code(f, 3))[:, 0]
    zeros = (~sup) & np.uint64(full)
    cnt = np.array([popcount(int(z)) for z in zeros[keep]])
    sel = cnt >= min_points
    return np.ascontiguousarray(zeros[keep][sel]), np.ascontiguousarray(scan.singular_point[keep][sel])


@dataclass
class EightPointCounts:
    q: int
    total: int
    l_ge4: int
    c_ge7: int
    excluded_by_1: int
    absirred: int
    conic6_line2_sets: int
    conic6_line2_decorations: int
    two_triples_sets: int
    two_triples_decorations: int
    j8: int


def scan_eight_point_sets(f, threads=None, budget=DEFAULT_SUBSET_BUDGET):
    pl = plane(f)
    n = pl.n
    if n > 64:
        raise ValueError("subset scans need at most 64 points")
    _check_subsets(n, 8, budget)
    full = (1 << n) - 1
    line_masks = np.array(pl.line_masks, dtype=np.uint64)
    cat = catalogue(f, cubics=False)
    conic_sup = support_masks(build_code(f, 2))[:, 0]
    conic_masks = np.ascontiguousarray((~conic_sup) & np.uint64(full))
    conic_smooth = np.ascontiguousarray(cat.conic_kind == CONIC_CODES[SMOOTH_CONIC])
    through = np.ascontiguousarray(pl.line_through)
    cub, sing = _singular_cubic_table(f, 8)

    def work(piece):
        lo, hi = piece
        counts = np.zeros(K.J_NCOUNTERS, np.int64)
        K.scan_eight_subsets(n, lo, hi, line_masks, conic_masks, conic_smooth, through, cub, sing, counts)
        return counts

    c = sum(run_tasks(work, split_range(n - 7, 4 * resolve_threads(threads)), threads))
    c = [int(x) for x in c]
    return EightPointCounts(f.q, c[K.J_TOTAL], c[K.J_LGE4], c[K.J_CGE7], c[K.J_ANY7], c[K.J_ABSIRR],
                            c[K.J_C6L2_SETS], c[K.J_C6L2_DEC], c[K.J_332_SETS], c[K.J_332_DEC], c[K.J_GOOD])


def count_J8(f, threads=None, budget=DEFAULT_SUBSET_BUDGET):
    return scan_eight_point_sets(f, threads, budget).j8


@dataclass
class ConfigRow:
    name: str
    formula_id: str
    formula: int
    brute: int

    @property
    def ok(self):
        return self.formula == self.brute


def appendix_config_counts(f, threads=None, budget=DEFAULT_SUBSET_BUDGET, with_i9=True):
    """Brute-force eight-point family counts beside their closed forms."""
    q = f.q
    s = scan_eight_point_sets(f, threads, budget)
    ev = lambda fid: cf.eval_formula(fid, q)
    rows = [
        ConfigRow("all 8-subsets", "", comb(q * q + q + 1, 8), s.total),
        ConfigRow("at least 7 on a smooth conic", "C_ge7", ev("C_ge7"), s.c_ge7),
        ConfigRow("at least 4 on a line", "L_ge4", ev("L_ge4"), s.l_ge4),
        ConfigRow("no 4 collinear, no 7 on a conic", "no4no7", ev("no4no7"), s.total - s.excluded_by_1),
        ConfigRow("on an absolutely irreducible singular cubic through its singular point",
                  "absirred_singular", ev("absirred_singular"), s.absirred),
        ConfigRow("6 on a smooth conic with a line through exactly one", "conic6_line2",
                  ev("conic6_line2"), s.conic6_line2_decorations),
        ConfigRow("6 on a smooth conic with a line through exactly one (sets)", "conic6_line2",
                  ev("conic6_line2"), s.conic6_line2_sets),
        ConfigRow("two collinear triples with a line through exactly one", "two_triples",
                  ev("two_triples"), s.two_triples_sets),
        ConfigRow("two collinear triples, decompositions per set = 2", "two_triples",
                  2 * ev("two_triples"), s.two_triples_decorations),
        ConfigRow("J_8", "J8", ev("J8"), s.j8),
    ]
    if with_i9:
        i9 = count_I9(f, threads, max(budget, comb(q * q + q + 1, 9)) if q <= 4 else budget)
        rows.append(ConfigRow("I_9", "I9", ev("I9"), i9))
        rows.append(ConfigRow("J_8 = 9 I_9", "J8", 9 * i9, s.j8))
    return rows


# ---------------------------------------------------------------- collinear dual spaces

def _span(f, basis, m):
    words = np.zeros((1, m), np.int64)
    for b in basis:
        b = np.asarray(b, np.int64)
        words = np.concatenate([f.add_table[words, f.mul_table[a, b][None, :]] for a in range(f.q)])
    return words


def collinear_dual_counts(f, d, m):
    """(dim V_{d,m}, full-support words, ordered nonzero pairs with full support union)
    for the dual codewords supported on m points of a fixed line."""
    q = f.q
    if not (d + 2 <= m <= q + 1):
        raise ValueError(f"need {d + 2} <= m <= {q + 1}, got m={m}")
    pl = plane(f)
    pts = pl.line_points[0][:m]
    evals = monomial_values(f, d, [pl.coords[i] for i in pts])
    basis = nullspace(f, evals.T.tolist(), m)
    words = _span(f, basis, m)
    sup = (words != 0).astype(np.int64) @ (1 << np.arange(m, dtype=np.int64))
    by_mask = np.bincount(sup, minlength=1 << m)
    full = (1 << m) - 1
    f_count = int(by_mask[full])
    nz = np.flatnonzero(by_mask)
    nz = nz[nz != 0]
    g_count = 0
    for a in nz:
        for b in nz:
            if (a | b) == full:
                g_count += int(by_mask[a]) * int(by_mask[b])
    return len(basis), f_count, g_count


def collinear_dual_formulas(q, d, m):
    return max(m - d - 1, 0), int(cf.f_poly(d, m)(q)), int(cf.g_poly(d, m)(q))
