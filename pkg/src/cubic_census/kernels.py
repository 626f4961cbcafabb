"""Compiled scan kernels.

Class scans walk projective classes of a code in class-index order.  The
running codeword (plus any extra linear functionals appended as columns) is
kept in the polynomial-basis value encoding, where addition is XOR for
p = 2 and addition mod p for prime fields; other fields use a table.  Moving
to the next class touches one digit of the message most of the time, so the
update is a single vector addition of a precomputed step row.

All kernels release the GIL and write only to caller-owned output arrays, so
disjoint index ranges can run concurrently and be merged afterwards.
"""

from __future__ import annotations

import numpy as np
from numba import njit

ADD_XOR, ADD_MODP, ADD_TABLE = 0, 1, 2

SMOOTH, CUSP, SPLIT_NODE, NONSPLIT_NODE, REDUCIBLE = 0, 1, 2, 3, 4


@njit(cache=True, nogil=True)
def popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return int((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True, nogil=True, inline="always")
def _vadd_row(vec, tab, i, d, mode, p, addt):
    """vec += tab[i, d] in the value encoding."""
    n = vec.shape[0]
    if mode == 0:
        for c in range(n):
            vec[c] ^= tab[i, d, c]
    elif mode == 1:
        for c in range(n):
            x = vec[c] + tab[i, d, c]
            vec[c] = x - p if x >= p else x
    else:
        for c in range(n):
            vec[c] = addt[vec[c], tab[i, d, c]]


@njit(cache=True, nogil=True, inline="always")
def _set_row(vec, tab, i, d):
    for c in range(vec.shape[0]):
        vec[c] = tab[i, d, c]


@njit(cache=True, nogil=True)
def _start(mult, offsets, q, mode, p, addt, idx, digits, vec):
    k = mult.shape[0]
    j = 0
    while j + 1 < k and offsets[j + 1] <= idx:
        j += 1
    rem = idx - offsets[j]
    for i in range(k):
        digits[i] = 0
    for i in range(k - 1, j, -1):
        digits[i] = rem % q
        rem //= q
    _set_row(vec, mult, j, 1)
    for i in range(j + 1, k):
        if digits[i] != 0:
            _vadd_row(vec, mult, i, digits[i], mode, p, addt)
    return j


@njit(cache=True, nogil=True)
def scan_weights(mult, step, offsets, q, mode, p, addt, ncols, start, stop, hist):
    """hist[w] += number of classes in [start, stop) of weight w (first ncols columns)."""
    k = mult.shape[0]
    C = mult.shape[2]
    digits = np.zeros(k, np.int64)
    vec = np.empty(C, np.uint8)
    j = _start(mult, offsets, q, mode, p, addt, start, digits, vec)
    count = stop - start
    for t in range(count):
        w = 0
        for c in range(ncols):
            w += vec[c] != 0
        hist[w] += 1
        if t + 1 == count:
            break
        # advance to the next class; kept inline because the loop only
        # vectorises when the update is visible in the caller's body
        i = k - 1
        while True:
            if i == j:
                j += 1
                if j < k:
                    for c in range(C):
                        vec[c] = mult[j, 1, c]
                break
            d = digits[i]
            if mode == 0:
                for c in range(C):
                    vec[c] ^= step[i, d, c]
            elif mode == 1:
                for c in range(C):
                    x = vec[c] + step[i, d, c]
                    vec[c] = x - p if x >= p else x
            else:
                for c in range(C):
                    vec[c] = addt[vec[c], step[i, d, c]]
            d += 1
            if d == q:
                digits[i] = 0
                i -= 1
            else:
                digits[i] = d
                break


@njit(cache=True, nogil=True)
def scan_masks(mult, step, offsets, q, mode, p, addt, ncols, start, stop, out):
    """out[t] = support mask (uint64 words) of class start + t."""
    k = mult.shape[0]
    C = mult.shape[2]
    digits = np.zeros(k, np.int64)
    vec = np.empty(C, np.uint8)
    j = _start(mult, offsets, q, mode, p, addt, start, digits, vec)
    count = stop - start
    nw = out.shape[1]
    for t in range(count):
        for w in range(nw):
            out[t, w] = 0
        for c in range(ncols):
            if vec[c] != 0:
                out[t, c >> 6] |= np.uint64(1) << np.uint64(c & 63)
        if t + 1 == count:
            break
        # advance to the next class; see scan_weights
        i = k - 1
        while True:
            if i == j:
                j += 1
                if j < k:
                    for c in range(C):
                        vec[c] = mult[j, 1, c]
                break
            d = digits[i]
            if mode == 0:
                for c in range(C):
                    vec[c] ^= step[i, d, c]
            elif mode == 1:
                for c in range(C):
                    x = vec[c] + step[i, d, c]
                    vec[c] = x - p if x >= p else x
            else:
                for c in range(C):
                    vec[c] = addt[vec[c], step[i, d, c]]
            d += 1
            if d == q:
                digits[i] = 0
                i -= 1
            else:
                digits[i] = d
                break


@njit(cache=True, nogil=True)
def _dot(coef, row, addi, muli):
    acc = 0
    for m in range(coef.shape[0]):
        if coef[m] != 0 and row[m] != 0:
            acc = addi[acc, muli[coef[m], row[m]]]
    return acc


@njit(cache=True, nogil=True)
def _binary_quadratic_roots(a, b, c, q, addi, muli):
    """Number of roots of a*s^2 + b*s*t + c*t^2 on P^1(F_q); -1 if identically zero."""
    if a == 0 and b == 0 and c == 0:
        return -1
    r = 0
    if a == 0:  # the point (s:t) = (1:0)
        r += 1
    for s in range(q):
        ss = muli[s, s]
        v = addi[addi[muli[a, ss], muli[b, s]], c]
        if v == 0:
            r += 1
    return r


@njit(cache=True, nogil=True)
def scan_cubics(mult, step, offsets, q, mode, p, addt, addi, muli, der, cone, line_pts,
                start, stop, hist_all, hist_smooth, hist_types, tags, sing):
    """Classify cubic classes in [start, stop) by smoothness and singularity type.

    Columns 0..n-1 of the running vector are f(P), columns n..2n-1 are
    df/dx(P).  der[P, axis, m]: partial derivative of monomial m at P (index
    encoded).  cone[P, r, m]: t^2 coefficient of monomial m along P + t*v_r
    for the directions u, w, u + w spanning a complement of P.
    hist_types[tag, z] counts classes by tag and number z of rational zeros;
    tags/sing (when non-empty) receive per-class results.

    Without a rational singular point the only non-smooth cubics with a
    rational point are a line times a smooth conic meeting it in a conjugate
    pair (2q+2 points; smooth cubics have fewer by the Hasse bound), so lines
    are only searched in that case or when a singular point was found.
    """
    k = mult.shape[0]
    n = line_pts.shape[0]
    C = mult.shape[2]
    digits = np.zeros(k, np.int64)
    vec = np.empty(C, np.uint8)
    coef = np.zeros(k, np.int64)
    j = _start(mult, offsets, q, mode, p, addt, start, digits, vec)
    count = stop - start
    store = tags.shape[0] > 0
    for t in range(count):
        z = 0
        sp = -1
        for c in range(n):
            if vec[c] == 0:
                z += 1
                if sp < 0 and vec[n + c] == 0:
                    for m in range(k):
                        coef[m] = 0
                    coef[j] = 1
                    for m in range(j + 1, k):
                        coef[m] = digits[m]
                    if _dot(coef, der[c, 1], addi, muli) == 0 and _dot(coef, der[c, 2], addi, muli) == 0:
                        sp = c
        tag = REDUCIBLE
        if z > 0:
            has_line = False
            if z >= q + 1 and (sp >= 0 or z == 2 * q + 2):
                for li in range(n):
                    full = True
                    for b in range(q + 1):
                        if vec[line_pts[li, b]] != 0:
                            full = False
                            break
                    if full:
                        has_line = True
                        break
            if not has_line:
                if sp < 0:
                    tag = SMOOTH
                else:
                    qa = _dot(coef, cone[sp, 0], addi, muli)
                    qc = _dot(coef, cone[sp, 1], addi, muli)
                    qb = _dot(coef, cone[sp, 2], addi, muli)
                    # cross term: Q(u + w) - Q(u) - Q(w)
                    for x in range(q):
                        if addi[x, qa] == qb:
                            qb = x
                            break
                    for x in range(q):
                        if addi[x, qc] == qb:
                            qb = x
                            break
                    r = _binary_quadratic_roots(qa, qb, qc, q, addi, muli)
                    if r == 2:
                        tag = SPLIT_NODE
                    elif r == 1:
                        tag = CUSP
                    elif r == 0:
                        tag = NONSPLIT_NODE
        hist_all[z] += 1
        if tag == SMOOTH:
            hist_smooth[z] += 1
        hist_types[tag, z] += 1
        if store:
            tags[t] = tag
            sing[t] = sp
        if t + 1 == count:
            break
        # advance to the next class; see scan_weights
        i = k - 1
        while True:
            if i == j:
                j += 1
                if j < k:
                    for c in range(C):
                        vec[c] = mult[j, 1, c]
                break
            d = digits[i]
            if mode == 0:
                for c in range(C):
                    vec[c] ^= step[i, d, c]
            elif mode == 1:
                for c in range(C):
                    x = vec[c] + step[i, d, c]
                    vec[c] = x - p if x >= p else x
            else:
                for c in range(C):
                    vec[c] = addt[vec[c], step[i, d, c]]
            d += 1
            if d == q:
                digits[i] = 0
                i -= 1
            else:
                digits[i] = d
                break


@njit(cache=True, nogil=True)
def pair_histogram(m1, m2, comp1, comp2, same, nbits, i0, i1, hist_free, hist_comm):
    """Histogram class pairs (i, j), i in [i0, i1), by common-zero count.

    same: only j > i (the two tables are the same code).  Pairs sharing a
    component id go to hist_comm, the rest to hist_free.
    """
    nw = m1.shape[1]
    n2 = m2.shape[0]
    nc = comp1.shape[1]
    for i in range(i0, i1):
        jstart = i + 1 if same else 0
        has_c = comp1[i, 0] >= 0
        for j in range(jstart, n2):
            pc = 0
            for w in range(nw):
                pc += popcount64(m1[i, w] | m2[j, w])
            z = nbits - pc
            shared = False
            if has_c and comp2[j, 0] >= 0:
                for s in range(nc):
                    x = comp1[i, s]
                    if x < 0:
                        break
                    for u in range(comp2.shape[1]):
                        y = comp2[j, u]
                        if y < 0:
                            break
                        if x == y:
                            shared = True
                            break
                    if shared:
                        break
            if shared:
                hist_comm[z] += 1
            else:
                hist_free[z] += 1


@njit(cache=True, nogil=True)
def pair_histogram_plain(m1, m2, same, nbits, i0, i1, hist):
    """As pair_histogram without component ids."""
    nw = m1.shape[1]
    n2 = m2.shape[0]
    for i in range(i0, i1):
        jstart = i + 1 if same else 0
        for j in range(jstart, n2):
            pc = 0
            for w in range(nw):
                pc += popcount64(m1[i, w] | m2[j, w])
            hist[nbits - pc] += 1


# ---- point-subset scans ----

@njit(cache=True, nogil=True)
def matrix_rank(mat, addi, muli, invi, negi):
    """Rank of an index-encoded matrix; mat is overwritten."""
    rows, cols = mat.shape
    r = 0
    for c in range(cols):
        piv = -1
        for i in range(r, rows):
            if mat[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for x in range(cols):
                tmp = mat[r, x]
                mat[r, x] = mat[piv, x]
                mat[piv, x] = tmp
        s = invi[mat[r, c]]
        for x in range(c, cols):
            mat[r, x] = muli[s, mat[r, x]]
        for i in range(r + 1, rows):
            if mat[i, c] != 0:
                t = negi[mat[i, c]]
                for x in range(c, cols):
                    mat[i, x] = addi[mat[i, x], muli[t, mat[r, x]]]
        r += 1
        if r == rows:
            break
    return r


@njit(cache=True, nogil=True)
def _next_combination(idx, n):
    s = idx.shape[0]
    i = s - 1
    while i >= 0 and idx[i] == n - s + i:
        i -= 1
    if i < 0:
        return False
    idx[i] += 1
    for x in range(i + 1, s):
        idx[x] = idx[x - 1] + 1
    return True


@njit(cache=True, nogil=True)
def scan_subset_ranks(evals, size, lo, hi, addi, muli, invi, negi, rank_hist, target, out):
    """Scan size-subsets whose least element lies in [lo, hi).

    rank_hist[r] counts subsets by rank of their evaluation rows; subsets of
    rank == target are written to out as bit masks (the return value is the
    number found, which may exceed len(out)).
    """
    n, ncols = evals.shape
    if lo + size > n:
        return 0
    idx = np.arange(lo, lo + size)
    mat = np.empty((size, ncols), np.int64)
    found = 0
    while idx[0] < hi:
        for a in range(size):
            mat[a] = evals[idx[a]]
        r = matrix_rank(mat, addi, muli, invi, negi)
        rank_hist[r] += 1
        if r == target:
            if found < out.shape[0]:
                m = np.uint64(0)
                for a in range(size):
                    m |= np.uint64(1) << np.uint64(idx[a])
                out[found] = m
            found += 1
        if not _next_combination(idx, n):
            break
    return found


# indices into the counters filled by scan_eight_subsets
J_TOTAL, J_LGE4, J_CGE7, J_ANY7, J_ABSIRR, J_C6L2_SETS, J_C6L2_DEC, J_332_SETS, J_332_DEC, J_GOOD = range(10)
J_NCOUNTERS = 10


@njit(cache=True, nogil=True)
def scan_eight_subsets(n, lo, hi, line_masks, conic_masks, conic_smooth, line_through,
                       cubic_masks, cubic_sing, counts):
    """Classify 8-subsets of P^2(F_q) (n <= 64) for the pencil-base count.

    Excluded families: >= 4 collinear or >= 7 on a conic; all 8 on an
    absolutely irreducible singular cubic through its singular point;
    6 on a smooth conic plus 2 whose line meets the 6 in one point;
    two disjoint collinear triples plus 2 whose line meets the triples once.
    """
    size = 8
    idx = np.arange(lo, lo + size)
    if lo + size > n:
        return
    nl = line_masks.shape[0]
    trip = np.empty(nl, np.int64)
    while idx[0] < hi:
        S = np.uint64(0)
        for a in range(size):
            S |= np.uint64(1) << np.uint64(idx[a])
        counts[J_TOTAL] += 1
        lge4 = False
        nt = 0
        for li in range(nl):
            c = popcount64(S & line_masks[li])
            if c >= 4:
                lge4 = True
            elif c == 3:
                trip[nt] = li
                nt += 1
        cge7 = False
        any7 = False
        c6 = 0
        for ci in range(conic_masks.shape[0]):
            on = S & conic_masks[ci]
            c = popcount64(on)
            if c >= 7:
                any7 = True
                if conic_smooth[ci]:
                    cge7 = True
            elif c == 6 and conic_smooth[ci]:
                rest = S & ~conic_masks[ci]
                a = -1
                b = -1
                for x in range(n):
                    if (rest >> np.uint64(x)) & np.uint64(1):
                        if a < 0:
                            a = x
                        else:
                            b = x
                ln = line_masks[line_through[a, b]]
                if popcount64(ln & on) == 1:
                    c6 += 1
        if lge4:
            counts[J_LGE4] += 1
        if cge7:
            counts[J_CGE7] += 1
        if any7 or lge4:
            counts[J_ANY7] += 1
        good = not (lge4 or any7)
        absirr = False
        for ci in range(cubic_masks.shape[0]):
            if (S & cubic_masks[ci]) == S and (S >> np.uint64(cubic_sing[ci])) & np.uint64(1):
                absirr = True
                break
        if absirr:
            counts[J_ABSIRR] += 1
        if c6 > 0:
            counts[J_C6L2_DEC] += c6
            if good:
                counts[J_C6L2_SETS] += 1
        d332 = 0
        for x in range(nt):
            for y in range(x + 1, nt):
                A = S & line_masks[trip[x]]
                B = S & line_masks[trip[y]]
                if A & B:
                    continue
                rest = S & ~(A | B)
                if popcount64(rest) != 2:
                    continue
                a = -1
                b = -1
                for u in range(n):
                    if (rest >> np.uint64(u)) & np.uint64(1):
                        if a < 0:
                            a = u
                        else:
                            b = u
                ln = line_masks[line_through[a, b]]
                if popcount64(ln & (A | B)) == 1:
                    d332 += 1
        if d332 > 0:
            counts[J_332_DEC] += d332
            if good:
                counts[J_332_SETS] += 1
        if good and not absirr and c6 == 0 and d332 == 0:
            counts[J_GOOD] += 1
        if not _next_combination(idx, n):
            break
