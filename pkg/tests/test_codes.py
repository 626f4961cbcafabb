import random

import pytest

from cubic_census.codes import build_code, code_rank, dual_code, encode, inner
from cubic_census.enumerators import hamming_enumerator
from cubic_census.gf import make_field
from cubic_census.linalg import rank


@pytest.mark.parametrize("q,d,kind,n,k", [(3, 3, "projective", 13, 10), (3, 2, "projective", 13, 6),
                                          (3, 2, "affine", 9, 6), (4, 3, "projective", 21, 10),
                                          (5, 1, "projective", 31, 3)])
def test_dimensions(q, d, kind, n, k):
    c = build_code(make_field(q), d, kind)
    assert (c.n, c.k) == (n, k)
    assert code_rank(c) == k


def test_small_q_rejected():
    with pytest.raises(ValueError):
        build_code(make_field(2), 3)
    with pytest.raises(ValueError):
        build_code(make_field(2), 2, "affine")


@pytest.mark.parametrize("q,d,dim", [(3, 3, 3), (3, 2, 7), (4, 3, 11)])
def test_dual(q, d, dim):
    f = make_field(q)
    c = build_code(f, d)
    dc = dual_code(c)
    assert dc.k == dim
    for x in dc.generator.tolist():
        for y in c.generator.tolist():
            assert inner(f, x, y) == 0
    ddc = dual_code(dc)
    both = c.generator.tolist() + ddc.generator.tolist()
    assert ddc.k == c.k and rank(f, both) == c.k


def test_encode_examples():
    f = make_field(3)
    c1 = build_code(f, 1)
    assert encode(c1, [0, 0, 0]).mask == 0
    assert encode(c1, [1, 0, 0]).weight == 9
    c2 = build_code(f, 2)
    xz = [0] * 6
    xz[2] = 1  # monomial order x^2, xy, xz, ...
    assert encode(c2, xz).weight == 6
    with pytest.raises(ValueError):
        encode(c2, [1])


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_lines_have_weight_q2(q):
    w = hamming_enumerator(build_code(make_field(q), 1))
    assert w.nonzero() == {0: 1, q * q: q ** 3 - 1}


@pytest.mark.parametrize("q", [3, 4])
def test_dual_minimum_weights(q):
    f = make_field(q)
    for d, dmin in ((2, 4), (3, 5)):
        w = hamming_enumerator(dual_code(build_code(f, d)))
        assert w.counts[0] == 1 and not any(w.counts[1:dmin])


def test_to_json_decimal_strings():
    j = build_code(make_field(3), 2).to_json()
    assert j["n"] == "13" and j["k"] == "6"
    assert all(isinstance(x, str) for row in j["generator"] for x in row)


def test_encode_matches_generator_span():
    f = make_field(5)
    c = build_code(f, 2)
    rnd = random.Random(1)
    for _ in range(20):
        m = [rnd.randrange(5) for _ in range(6)]
        w = encode(c, m)
        assert all((s != 0) == bool(w.mask >> i & 1) for i, s in enumerate(w.symbols))
