from fractions import Fraction

import pytest

from cubic_census.classify import scan_cubic_classes
from cubic_census.classnumbers import (class_number, h_w, hurwitz_H, kronecker, predict_smooth_enumerator,
                                       trace_probability, trace_range, trace_table, trace_table_json,
                                       unmatched_traces)
from cubic_census.gf import make_field, prime_power

# class numbers of small fundamental and non-fundamental discriminants
KNOWN_H = {-3: 1, -4: 1, -7: 1, -8: 1, -11: 1, -12: 1, -15: 2, -16: 1, -20: 2, -23: 3, -24: 2,
           -27: 1, -28: 1, -31: 3, -47: 5, -56: 4, -71: 7, -163: 1, -164: 8}


@pytest.mark.parametrize("d,h", sorted(KNOWN_H.items()))
def test_class_numbers(d, h):
    assert class_number(d) == h


def test_bad_discriminants():
    for d in (0, 5, -1, -2, -5):
        with pytest.raises(ValueError):
            class_number(d)
    assert h_w(-5) == 0


def test_hurwitz_small():
    assert hurwitz_H(-3) == Fraction(1, 3)
    assert hurwitz_H(-4) == Fraction(1, 2)
    assert hurwitz_H(-12) == Fraction(4, 3)
    assert hurwitz_H(-16) == Fraction(3, 2)


def test_kronecker():
    assert kronecker(-4, 3) == -1 and kronecker(-4, 5) == 1
    assert kronecker(-3, 2) == -1 and kronecker(-3, 7) == 1
    assert kronecker(5, 1) == 1 and kronecker(2, 4) == 0


@pytest.mark.parametrize("q", [q for q in range(2, 65) if prime_power(q)])
def test_probabilities_sum_to_one(q):
    assert sum(trace_table(q).values()) == 1
    assert trace_probability(q, max(trace_range(q)) + 1) == 0


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32])
def test_prediction_is_integral(q):
    w = predict_smooth_enumerator(q)
    assert w.total() == (q ** 3 - 1) * (q ** 3 - q) * (q ** 3 - q * q) * q


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_smooth_histogram_matches(q):
    s = scan_cubic_classes(make_field(q))
    pred = predict_smooth_enumerator(q)
    for t in trace_range(q):
        z = q + 1 - t
        assert pred.coeff_by_zeros(z) == (q - 1) * s.hist_smooth[z], t
    assert unmatched_traces(q, dict(enumerate(s.hist_smooth))) == []


def test_json_fractions():
    j = trace_table_json(4)
    assert j["probabilities"]["4"] == str(trace_probability(4, 4).numerator) + "/" + \
        str(trace_probability(4, 4).denominator)
