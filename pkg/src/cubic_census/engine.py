"""Driver for the compiled kernels: scan tables, partitioning and thread pool."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import kernels as K
from .plane import _lead_offsets

THREADS_ENV = "CUBIC_CENSUS_THREADS"


def default_threads():
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def resolve_threads(threads):
    return default_threads() if threads is None else max(1, int(threads))


def split_range(n, parts):
    parts = max(1, min(parts, n)) if n else 1
    bounds = [n * i // parts for i in range(parts + 1)]
    return [(bounds[i], bounds[i + 1]) for i in range(parts) if bounds[i] < bounds[i + 1]]


def split_triangle(n, parts):
    """Split rows 0..n-1 of an upper triangle (row i has n-1-i cells) into even pieces."""
    total = n * (n - 1) // 2
    if total == 0 or parts <= 1:
        return [(0, n)] if n else []
    out, start, acc = [], 0, 0
    target = total / parts
    for i in range(n):
        acc += n - 1 - i
        if acc >= target * (len(out) + 1) and len(out) < parts - 1:
            out.append((start, i + 1))
            start = i + 1
    if start < n:
        out.append((start, n))
    return out


def run_tasks(fn, pieces, threads):
    """Apply fn to each piece, in a pool of `threads` workers; results keep piece order."""
    threads = resolve_threads(threads)
    if threads == 1 or len(pieces) <= 1:
        return [fn(p) for p in pieces]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, pieces))


def chunk_count(work, threads, minimum=1 << 16):
    """Number of pieces: a few per thread, independent of nothing but the inputs."""
    threads = resolve_threads(threads)
    return max(1, min(4 * threads, work // minimum or 1))


class ScanTables:
    """Per-code tables for class scans: k x q x C multiples and step rows (value encoded)."""

    def __init__(self, field, gen):
        f = field
        gen = np.asarray(gen, dtype=np.int64)
        self.field = f
        self.k, self.ncols = gen.shape
        q = f.q
        ev = f.exp_values
        a = np.arange(q)
        self.mult = np.ascontiguousarray(ev[f.mul_table[a[None, :, None], gen[:, None, :]]]).astype(np.uint8)
        negv = ev[f.neg_table[f.index_of]]
        nxt = (a + 1) % q
        self.step = np.ascontiguousarray(f.add_value_table[self.mult[:, nxt, :], negv[self.mult]]).astype(np.uint8)
        self.offsets = np.array(_lead_offsets(q, self.k), dtype=np.int64)
        self.n_classes = int(self.offsets[-1])
        if f.p == 2:
            self.mode = K.ADD_XOR
        elif f.v == 1:
            self.mode = K.ADD_MODP
        else:
            self.mode = K.ADD_TABLE
        self.addt = np.ascontiguousarray(f.add_value_table)

    def args(self):
        return (self.mult, self.step, self.offsets, self.field.q, self.mode, self.field.p, self.addt)


def class_weight_histogram(tables, ncols, threads=None, chunks=None):
    n = tables.n_classes
    pieces = split_range(n, chunks or chunk_count(n, threads))

    def work(piece):
        hist = np.zeros(ncols + 1, dtype=np.int64)
        K.scan_weights(*tables.args(), ncols, piece[0], piece[1], hist)
        return hist

    return sum_histograms(run_tasks(work, pieces, threads))


def class_masks(tables, ncols, threads=None, chunks=None):
    n = tables.n_classes
    words = (ncols + 63) // 64
    out = np.zeros((n, words), dtype=np.uint64)
    pieces = split_range(n, chunks or chunk_count(n, threads))

    def work(piece):
        K.scan_masks(*tables.args(), ncols, piece[0], piece[1], out[piece[0]:piece[1]])

    run_tasks(work, pieces, threads)
    return out


def sum_histograms(hists):
    """Exact merge of per-piece int64 histograms into Python integers."""
    total = [0] * len(hists[0])
    for h in hists:
        for i, x in enumerate(h.tolist()):
            total[i] += x
    return total


def pair_counts(m1, m2, nbits, same, comp1=None, comp2=None, threads=None, chunks=None):
    """Class-pair histograms by number of common zeros.

    Returns (free, common) with common=None when no component ids are given;
    with same=True only pairs i < j are visited.
    """
    n1 = m1.shape[0]
    work_total = n1 * (n1 - 1) // 2 if same else n1 * m2.shape[0]
    nch = chunks or chunk_count(work_total, threads, minimum=1 << 24)
    pieces = split_triangle(n1, nch) if same else split_range(n1, nch)

    def work(piece):
        free = np.zeros(nbits + 1, dtype=np.int64)
        if comp1 is None:
            K.pair_histogram_plain(m1, m2, same, nbits, piece[0], piece[1], free)
            return free, None
        comm = np.zeros(nbits + 1, dtype=np.int64)
        K.pair_histogram(m1, m2, comp1, comp2, same, nbits, piece[0], piece[1], free, comm)
        return free, comm

    results = run_tasks(work, pieces, threads)
    free = sum_histograms([r[0] for r in results])
    if comp1 is None:
        return free, None
    return free, sum_histograms([r[1] for r in results])
