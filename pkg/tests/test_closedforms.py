import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cubic_census import closedforms as cf
from cubic_census.weights import WeightEnumerator, substitute



def _prime_powers(lo, hi):
    from cubic_census.gf import prime_power
    return [q for q in range(lo, hi + 1) if prime_power(q)]


def test_examples():
    assert cf.eval_formula("I9", 3) == 13
    assert cf.eval_formula("I9", 4) == 1400
    assert cf.eval_formula("J8", 3) == 117
    assert cf.eval_formula("c8_cubic_cubic", 3) == 0
    assert cf.eval_formula("c9_cubic_cubic", 3) == 624
    assert len(cf.list_formulas()) >= 60


def test_unknown_and_out_of_range():
    with pytest.raises(cf.FormulaError):
        cf.eval_formula("no_such_formula", 3)
    with pytest.raises(cf.FormulaRangeError):
        cf.eval_formula("c0_cubic_cubic", 2)
    assert isinstance(cf.eval_formula("c0_cubic_cubic", 2, allow_out_of_range=True), int)


def test_alternative_I9_agrees():
    for q in _prime_powers(3, 64):
        assert cf.eval_formula("I9", q) == cf.eval_formula("I9_alt", q)


def test_corrected_transcriptions_differ_from_printed():
    # the printed variants are kept for reference but are not counts
    for fid in ("c1_affine_conic", "g3_7", "B8_dual_cubic"):
        printed = cf.REGISTRY[fid + "_printed"]
        assert not printed.count
        assert printed.poly != cf.REGISTRY[fid].poly


@pytest.mark.parametrize("fid", sorted(fid for fid, fm in cf.REGISTRY.items() if fm.count))
def test_nonnegative_integers(fid):
    fm = cf.REGISTRY[fid]
    for q in _prime_powers(max(fm.qmin, 2), 64):
        v = cf.eval_formula(fid, q)
        assert isinstance(v, int) and v >= 0, (fid, q, v)


@pytest.mark.parametrize("k", range(10))
def test_cubic_degrees_and_leading(k):
    poly = cf.REGISTRY[f"c{k}_cubic_cubic"].poly
    if k == 8:
        assert poly.degree == 19
    else:
        assert poly.degree == 20
        assert poly.leading == cf.fixed_point_proportion(k, 9)


def test_coefficients_sum_to_free_total():
    # sum_k c_k + shared-component pairs + degenerate pairs = q^20
    for q in (3, 4, 5, 7, 8, 9, 11):
        cs = cf.registered_coefficients("cubic_cubic", q)
        W = cf.assemble_second_enumerator("cubic_cubic", q)
        assert W.total() == q ** 20
        assert sum(cs) < q ** 20


def test_fixed_point_proportion():
    assert sum(cf.fixed_point_proportion(k, 9) for k in range(10)) == 1
    assert cf.fixed_point_proportion(8, 9) == 0
    assert cf.fixed_point_proportion(9, 9) == Fraction(1, 362880)


@pytest.mark.parametrize("case", cf.CASES)
def test_solver_reproduces_registry(case):
    for q in _prime_powers(cf.case_qmin(case), 32):
        assert cf.solved_coefficients(case, q) == cf.registered_coefficients(case, q)


@pytest.mark.parametrize("case", cf.CASES)
def test_assembled_transform_has_dual_targets(case):
    for q in (3, 4, 5, 7):
        W = cf.assemble_second_enumerator(case, q)
        d1, d2 = cf.case_dims(case)
        D = cf.macwilliams2(W, q, q ** (d1 + d2))
        t = cf.dual_targets(case, q)
        assert D.counts[:len(t)] == t


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_hamming_templates_conserve(q):
    assert cf.conic_enumerator(q).total() == q ** 6
    assert cf.affine_conic_enumerator(q).total() == q ** 6
    assert cf.cubic_enumerator(q).total() == q ** 10


def _random_enumerator(rnd, n, scale):
    return WeightEnumerator(n, [rnd.randrange(-scale, scale) for _ in range(n + 1)])


@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3, 4, 5, 7]), st.integers(1, 14))
def test_macwilliams_involution(seed, q, n):
    # applying the substitution twice multiplies by q^n
    rnd = random.Random(seed)
    w = _random_enumerator(rnd, n, 10 ** 6)
    twice = substitute(substitute(w, q - 1, 1), q - 1, 1)
    assert twice == w.scale(q ** n)
    assert cf.inverse_substitution(substitute(w, q * q - 1, 1), q * q) == w


def test_macwilliams_on_codes_round_trip():
    for q in (3, 4, 5):
        w = cf.conic_enumerator(q)
        n = q * q + q + 1
        back = cf.macwilliams(cf.macwilliams(w, q, q ** 6), q, q ** (n - 6))
        assert back == w


@pytest.mark.parametrize("d", [2, 3])
def test_collinear_minimal_case(d):
    # d+2 collinear points carry a one-dimensional dual space: every nonzero word has full support
    for q in (3, 4, 5, 7, 8, 9):
        assert cf.f_poly(d, d + 2)(q) == q - 1
        assert cf.g_poly(d, d + 2)(q) == (q - 1) ** 2


def test_json_shape():
    j = cf.formula("I9").to_json()
    assert j["id"] == "I9" and "polynomial" in j and j["degree"] >= 1
