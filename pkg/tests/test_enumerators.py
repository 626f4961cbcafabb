import numpy as np
import pytest

from cubic_census.codes import LinearCode, build_code
from cubic_census.engine import THREADS_ENV, default_threads, split_range, split_triangle
from cubic_census.enumerators import (BudgetError, assemble_from_supports, hamming_enumerator,
                                      pair_census, second_enumerator, support_r_enumerators)
from cubic_census.gf import make_field
from cubic_census.weights import WeightEnumerator


def test_split_range_partitions():
    for n in (0, 1, 7, 100):
        for parts in (1, 3, 8):
            pieces = split_range(n, parts)
            covered = [i for a, b in pieces for i in range(a, b)]
            assert covered == list(range(n))


def test_split_triangle_partitions():
    pieces = split_triangle(50, 6)
    assert pieces[0][0] == 0 and pieces[-1][1] == 50
    assert all(a[1] == b[0] for a, b in zip(pieces, pieces[1:]))


def test_threads_env(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "3")
    assert default_threads() == 3


def test_hamming_examples():
    f = make_field(3)
    assert hamming_enumerator(build_code(f, 1)).nonzero() == {0: 1, 9: 26}
    assert hamming_enumerator(build_code(f, 2)).nonzero() == {0: 1, 6: 156, 9: 494, 12: 78}


@pytest.mark.parametrize("q", [3, 4])
def test_thread_invariance(q):
    f = make_field(q)
    c = build_code(f, 3)
    base = hamming_enumerator(c, threads=1, chunks=1)
    for threads, chunks in ((4, None), (2, 7), (4, 31)):
        assert hamming_enumerator(c, threads=threads, chunks=chunks) == base
    t1 = pair_census(f, 2, 3, threads=1, chunks=1) if q == 3 else pair_census(f, 2, 2, threads=1, chunks=1)
    for threads, chunks in ((4, None), (3, 11)):
        d, e = (2, 3) if q == 3 else (2, 2)
        assert pair_census(f, d, e, threads=threads, chunks=chunks) == t1


def test_second_enumerator_conservation_and_swap():
    f = make_field(3)
    c2, c1 = build_code(f, 2), build_code(f, 1)
    w = second_enumerator(c2, c1)
    assert w.total() == 3 ** 9
    assert w == second_enumerator(c1, c2)


def test_second_enumerator_census_agree():
    f = make_field(3)
    c2 = build_code(f, 2)
    assert second_enumerator(c2) == pair_census(f, 2, 2).second_enumerator()


def test_support_relation():
    f = make_field(3)
    for c in (build_code(f, 1), build_code(f, 2), build_code(f, 2, "affine")):
        w1, w2 = support_r_enumerators(c)
        assert w1.total() == (3 ** c.k - 1) // 2
        assert assemble_from_supports(c.n, 3, w1, w2) == second_enumerator(c)
        assert hamming_enumerator(c) == WeightEnumerator.monomial(c.n, 0) + w1.scale(2)


def test_zero_dimensional_code():
    f = make_field(3)
    triv = LinearCode(f, np.zeros((0, 13), dtype=np.int64), "dual", None, build_code(f, 1))
    assert hamming_enumerator(triv).nonzero() == {0: 1}
    assert second_enumerator(triv).nonzero() == {0: 1}


def test_census_basic():
    f = make_field(3)
    t = pair_census(f, 2, 2)
    assert t.total() == t.expected_total() == 3 ** 12
    assert not any(t.free[5:])


def test_cubic_census_q3():
    t = pair_census(make_field(3), 3, 3)
    assert t.total() == 3 ** 20
    assert t.c(9) == 624 and t.c(8) == 0
    assert not any(t.free[10:])


def test_budget():
    with pytest.raises(BudgetError):
        pair_census(make_field(5), 3, 3)
    with pytest.raises(BudgetError):
        pair_census(make_field(3), 2, 2, budget=10)
