"""Finite fields F_q stored as discrete-log (Zech) tables.

Elements are integer indices: 0 is zero, 1 is one and index k >= 1 stands
for g^(k-1), g being the least primitive element in the polynomial basis.
The polynomial-basis encoding ("value", digits base p, constant term least
significant) is kept alongside because addition is digitwise there.
"""

from __future__ import annotations

from functools import cached_property, lru_cache

import numpy as np

MAX_Q = 64
MAX_TABLE = 1 << 18


class FieldError(ValueError):
    pass


def prime_power(q):
    """Return (p, v) with q = p**v, or None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    v, r = 0, q
    while r % p == 0:
        r //= p
        v += 1
    return (p, v) if r == 1 else None


# ---- polynomial helpers over F_p (coefficient lists, low degree first) ----

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(_trim(a)) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
    return a


def _pmulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, m, p)


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _frobenius_power(m, p, times):
    """x^(p^times) mod m."""
    x = _pmod([0, 1], m, p)
    for _ in range(times):
        y, e, base = [1], p, x
        while e:
            if e & 1:
                y = _pmulmod(y, base, m, p)
            base = _pmulmod(base, base, m, p)
            e >>= 1
        x = y
    return x


def is_irreducible(m, p):
    """Rabin's test for a monic polynomial m over F_p."""
    v = len(m) - 1
    if v == 1:
        return True
    if _trim(_sub(_frobenius_power(m, p, v), [0, 1], p)):
        return False
    r = 2
    primes = set()
    n = v
    while n > 1:
        if n % r == 0:
            primes.add(r)
            n //= r
        else:
            r += 1
    for r in primes:
        g = _pgcd(m, _sub(_frobenius_power(m, p, v // r), [0, 1], p), p)
        if len(g) > 1:
            return False
    return True


def _sub(a, b, p):
    n = max(len(a), len(b))
    return [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]


def least_irreducible(p, v):
    """Lexicographically least monic irreducible of degree v (tail read from x^(v-1) down)."""
    for tail in range(p ** v):
        digits = [(tail // p ** i) % p for i in range(v)]
        m = digits + [1]
        if v > 1 and m[0] == 0:
            continue
        if is_irreducible(m, p):
            return tuple(m)
    raise FieldError(f"no irreducible polynomial of degree {v} over F_{p}")


def _digits(x, p, v):
    return [(x // p ** i) % p for i in range(v)]


def _undigits(d, p):
    x = 0
    for c in reversed(d):
        x = x * p + c
    return x


class Field:
    """F_q with index-encoded elements; immutable after construction."""

    def __init__(self, p, v, modulus=None):
        q = p ** v
        if q > MAX_TABLE:
            raise FieldError(f"field of size {q} exceeds table limit {MAX_TABLE}")
        self.p, self.v, self.q = p, v, q
        if modulus is None:
            modulus = least_irreducible(p, v) if v > 1 else (0, 1)
        self.modulus = tuple(modulus)
        vals = self._powers_of_generator()
        self.exp_values = np.array([0] + vals, dtype=np.int64)
        self.index_of = np.zeros(q, dtype=np.int64)
        self.index_of[self.exp_values] = np.arange(q)
        # zech[n] = index of 1 + g^n
        ev = self.exp_values[1:]
        self.zech = self.index_of[ev - ev % p + (ev % p + 1) % p]
        self.minus_one = 1 if p == 2 else 1 + (q - 1) // 2
        self._zl = self.zech.tolist()

    def _mul_by_value_map(self, g):
        """Permutation of all values induced by multiplication with the value g."""
        p, v, q = self.p, self.v, self.q
        m = list(self.modulus)
        gd = _digits(g, p, v)
        images = []
        for i in range(v):
            basis = [0] * i + [1]
            prod = _pmulmod(basis, gd, m, p)
            images.append(np.array(prod + [0] * (v - len(prod)), dtype=np.int64))
        x = np.arange(q, dtype=np.int64)
        digits = (x[:, None] // (p ** np.arange(v))[None, :]) % p
        acc = (digits @ np.array(images)) % p
        return (acc * (p ** np.arange(v))[None, :]).sum(axis=1)

    def _powers_of_generator(self):
        q = self.q
        for g in range(2 if self.v == 1 else self.p, q):
            step = self._mul_by_value_map(g).tolist()
            vals, x = [1], step[1]
            while x != 1:
                vals.append(x)
                x = step[x]
            if len(vals) == q - 1:
                return vals
        if q == 2:
            return [1]
        raise FieldError(f"modulus {self.modulus} is not irreducible over F_{self.p}")

    def __repr__(self):
        return f"Field(q={self.q}, p={self.p}, v={self.v}, modulus={self.modulus})"

    # ---- scalar operations on indices ----
    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        z = self._zl[(b - a) % (self.q - 1)]
        if z == 0:
            return 0
        return 1 + (a + z - 2) % (self.q - 1)

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return 1 + (a + b - 2) % (self.q - 1)

    def neg(self, a):
        return self.mul(a, self.minus_one)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.q)
        return 1 + (1 - a) % (self.q - 1)

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        e %= self.q - 1
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def from_int(self, n):
        """Element of the prime subfield represented by the integer n."""
        return int(self.index_of[n % self.p])

    def from_value(self, x):
        return int(self.index_of[x])

    def to_value(self, a):
        return int(self.exp_values[a])

    def frobenius(self, a, power=1):
        return self.pow(a, self.p ** power)

    # ---- dense tables (base fields only) ----
    def _check_dense(self):
        if self.q > 4096:
            raise FieldError("dense tables are only built for q <= 4096")

    @cached_property
    def mul_table(self):
        self._check_dense()
        i = np.arange(self.q)
        t = 1 + (i[:, None] + i[None, :] - 2) % (self.q - 1)
        t[0, :] = 0
        t[:, 0] = 0
        return t.astype(np.int64)

    @cached_property
    def add_value_table(self):
        """Addition on polynomial-basis values."""
        self._check_dense()
        p, v = self.p, self.v
        x = np.arange(self.q)
        out = np.zeros((self.q, self.q), dtype=np.int64)
        for i in range(v):
            da = (x // p ** i) % p
            out += ((da[:, None] + da[None, :]) % p) * p ** i
        return out

    @cached_property
    def add_table(self):
        ev, io = self.exp_values, self.index_of
        return io[self.add_value_table[ev[:, None], ev[None, :]]]

    @cached_property
    def mul_value_table(self):
        ev, io = self.exp_values, self.index_of
        return ev[self.mul_table[io[:, None], io[None, :]]]

    @cached_property
    def neg_table(self):
        return np.array([self.neg(a) for a in range(self.q)], dtype=np.int64)

    @cached_property
    def inv_table(self):
        return np.array([0] + [self.inv(a) for a in range(1, self.q)], dtype=np.int64)

    def fingerprint(self):
        return {"q": self.q, "p": self.p, "v": self.v, "modulus": list(self.modulus)}


@lru_cache(maxsize=None)
def make_field(q):
    if not isinstance(q, int) or isinstance(q, bool):
        raise FieldError(f"field size must be an integer, got {q!r}")
    pv = prime_power(q)
    if pv is None:
        raise FieldError(f"{q} is not a prime power")
    if q > MAX_Q:
        raise FieldError(f"q={q} is out of range (2 <= q <= {MAX_Q})")
    return Field(*pv)


def arith(f, op, a, b=None):
    if op == "add":
        return f.add(a, b)
    if op == "mul":
        return f.mul(a, b)
    if op == "neg":
        return f.neg(a)
    if op == "inv":
        return f.inv(a)
    if op == "pow":
        return f.pow(a, b)
    raise ValueError(f"unknown field operation {op!r}")


class Extension:
    """F_{q^m} with an embedding table F_q -> F_{q^m}."""

    def __init__(self, base, field, embedding):
        self.base = base
        self.field = field
        self.degree = field.v // base.v
        self.embedding = embedding
        self._restrict = {int(b): a for a, b in enumerate(embedding)}

    def embed(self, a):
        return int(self.embedding[a])

    def restrict(self, b):
        """Base-field index of b, or None if b is not in the image."""
        return self._restrict.get(b)

    def sigma(self, b, power=1):
        """Relative Frobenius x -> x^(q^power)."""
        return self.field.pow(b, self.base.q ** power)


def _minimal_polynomial(f, a):
    """Minimal polynomial of a over F_p as integer coefficients, low degree first."""
    conj = [a]
    x = f.frobenius(a)
    while x != a:
        conj.append(x)
        x = f.frobenius(x)
    poly = [1]  # indices, low degree first
    for c in conj:
        negc = f.neg(c)
        new = [0] * (len(poly) + 1)
        for i, pc in enumerate(poly):
            new[i + 1] = f.add(new[i + 1], pc)
            new[i] = f.add(new[i], f.mul(pc, negc))
        poly = new
    out = []
    for c in poly:
        val = f.to_value(c)
        if val >= f.p:
            raise FieldError("minimal polynomial not over the prime field")
        out.append(val)
    return out


@lru_cache(maxsize=None)
def extend_field(f, degree):
    if degree not in (2, 3):
        raise FieldError(f"extension degree must be 2 or 3, got {degree}")
    size = f.q ** degree
    if size > MAX_TABLE:
        raise FieldError(f"F_{f.q}^{degree} needs tables of size {size} > {MAX_TABLE}")
    big = Field(f.p, f.v * degree)
    if f.q == f.p:
        emb = np.array([big.from_int(f.to_value(a)) for a in range(f.q)], dtype=np.int64)
        return Extension(f, big, emb)
    mp = _minimal_polynomial(f, 2)  # index 2 is the generator
    root = None
    for b in range(1, big.q):
        acc = 0
        for c in reversed(mp):
            acc = big.add(big.mul(acc, b), big.from_int(c))
        if acc == 0:
            root = b
            break
    emb = np.zeros(f.q, dtype=np.int64)
    for a in range(1, f.q):
        emb[a] = big.pow(root, a - 1)
    return Extension(f, big, emb)
