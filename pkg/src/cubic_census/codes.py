"""Projective and affine Reed-Muller codes C_{2,d}, C^A_{2,d} and their duals."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .linalg import nullspace, rank
from .plane import enumerate_points, monomial_values


@dataclass(frozen=True, eq=False)
class LinearCode:
    field: object
    generator: np.ndarray  # k x n element indices
    kind: str  # "projective", "affine" or "dual"
    degree: int | None = None
    parent: "LinearCode | None" = None

    @property
    def q(self):
        return self.field.q

    @property
    def n(self):
        return self.generator.shape[1]

    @property
    def k(self):
        return self.generator.shape[0]

    @property
    def size(self):
        return self.q ** self.k

    @property
    def name(self):
        if self.kind == "dual":
            return f"dual({self.parent.name})"
        return f"{self.kind}({self.degree})"

    def to_json(self):
        return {
            "q": str(self.q),
            "kind": self.name,
            "n": str(self.n),
            "k": str(self.k),
            "generator": [[str(x) for x in row] for row in self.generator.tolist()],
        }


@dataclass(frozen=True)
class Codeword:
    symbols: tuple
    mask: int

    @property
    def weight(self):
        return bin(self.mask).count("1")


def affine_points(f):
    """Representatives (a, b, 1) of the affine plane, lexicographic in (a, b)."""
    return [(a, b, 1) for a in range(f.q) for b in range(f.q)]


def build_code(f, d, kind="projective"):
    if d not in (1, 2, 3):
        raise ValueError(f"degree must be 1, 2 or 3, got {d}")
    if kind == "projective":
        if f.q < d:
            raise ValueError(f"projective degree {d} code requires q >= {d} (got q={f.q})")
        reps = [p.coords for p in enumerate_points(f)]
    elif kind == "affine":
        if f.q - 1 < d:
            raise ValueError(f"affine degree {d} code requires q > {d} (got q={f.q})")
        reps = affine_points(f)
    else:
        raise ValueError(f"unknown code kind {kind!r}")
    gen = np.ascontiguousarray(monomial_values(f, d, reps).T)
    assert gen.shape[0] == comb(d + 2, 2)
    return LinearCode(f, gen, kind, d)


def dual_code(c):
    rows = nullspace(c.field, c.generator.tolist(), c.n)
    gen = np.array(rows, dtype=np.int64).reshape(len(rows), c.n)
    return LinearCode(c.field, gen, "dual", None, c)


def code_rank(c):
    return rank(c.field, c.generator.tolist())


def encode(c, message):
    message = list(message)
    if len(message) != c.k:
        raise ValueError(f"message length {len(message)} does not match dimension {c.k}")
    f = c.field
    sym = [0] * c.n
    for a, row in zip(message, c.generator.tolist()):
        if a:
            sym = [f.add(s, f.mul(a, g)) for s, g in zip(sym, row)]
    mask = sum(1 << i for i, s in enumerate(sym) if s)
    return Codeword(tuple(sym), mask)


def inner(f, x, y):
    acc = 0
    for a, b in zip(x, y):
        acc = f.add(acc, f.mul(a, b))
    return acc
