"""Exact Gaussian elimination over F_q (element indices) and over the rationals."""

from __future__ import annotations

from fractions import Fraction


def rref(f, rows):
    """Reduced row echelon form; pivots are chosen as the first nonzero column."""
    m = [list(map(int, r)) for r in rows]
    if not m:
        return [], []
    add, mul, inv, neg = f.add, f.mul, f.inv, f.neg
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = inv(m[r][c])
        m[r] = [mul(s, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                t = neg(m[i][c])
                m[i] = [add(x, mul(t, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(f, rows):
    return len(rref(f, rows)[1])


def nullspace(f, rows, ncols):
    """Basis of {y : row . y = 0 for every row}, one basis vector per free column."""
    red, pivots = rref(f, rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        y = [0] * ncols
        y[fc] = 1
        for r, pc in enumerate(pivots):
            y[pc] = f.neg(red[r][fc])
        basis.append(y)
    return basis


class SingularMatrixError(ArithmeticError):
    def __init__(self, det):
        super().__init__(f"matrix is singular (determinant {det})")
        self.det = det


def determinant(matrix):
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                t = m[i][c] / m[c][c]
                m[i] = [a - t * b for a, b in zip(m[i], m[c])]
    return det


def solve_rational(matrix, rhs):
    """Exact solution of matrix . x = rhs over Q."""
    n = len(matrix)
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise SingularMatrixError(determinant(matrix))
        m[c], m[piv] = m[piv], m[c]
        s = m[c][c]
        m[c] = [x / s for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                t = m[i][c]
                m[i] = [a - t * b for a, b in zip(m[i], m[c])]
    return [row[n] for row in m]
