import random
from math import comb

import numpy as np
import pytest

from cubic_census import closedforms as cf
from cubic_census.classify import (CONIC_CODES, CONIC_POINTS, catalogue, classify_conic,
                                   classify_singular_cubic, common_component_degree, common_zero_count,
                                   factor_cubic, scan_cubic_classes, singular_points)
from cubic_census.gf import extend_field, make_field
from cubic_census.plane import HomogeneousForm, class_count, parse_form, plane


def form(q, text):
    return parse_form(make_field(q), text)


def test_conic_examples():
    assert classify_conic(form(3, "x*z")) == "two_rational_lines"
    assert classify_conic(form(3, "x^2")) == "double_line"
    assert classify_conic(form(3, "x^2+y^2")) == "conjugate_line_pair"
    assert classify_conic(form(3, "x*y-z^2")) == "smooth"


def test_common_component_examples():
    assert common_component_degree(form(5, "x^3"), form(5, "y^3")) == 0
    assert common_component_degree(form(5, "x*y^2-x^2*z"), form(5, "x*z^2")) >= 1
    assert common_component_degree(form(5, "x*y^2-x^2*z"), form(5, "y^3-x*y*z")) == 2
    assert common_component_degree(form(5, "x^2*y"), form(5, "x^2*z")) == 2


def test_common_zero_examples():
    assert common_zero_count(form(3, "x"), form(3, "y")) == 1
    c = form(3, "x*y-z^2")
    assert common_zero_count(c, c) == 4


def test_singular_cubic_examples():
    for q in (3, 4, 5, 7):
        f = make_field(q)
        pl = plane(f)
        cusp = parse_form(f, "y^2*z-x^3")
        assert classify_singular_cubic(cusp) == "cuspidal"
        assert bin(pl.zero_mask(cusp)).count("1") == q + 1
        assert [p.coords for p in singular_points(cusp)] == [(0, 0, 1)]
        if q % 2:
            node = parse_form(f, "y^2*z-x^3-x^2*z")
            assert classify_singular_cubic(node) == "split_nodal"
            assert bin(pl.zero_mask(node)).count("1") == q
        assert classify_singular_cubic(parse_form(f, "x*y^2-x^2*z")) == "reducible"


def test_singular_points_examples():
    f = make_field(3)
    assert singular_points(parse_form(f, "x*y-z^2")) == []
    pts = singular_points(parse_form(f, "x^3"))
    assert len(pts) == 4 and all(p.coords[0] == 0 for p in pts)


def test_singular_needs_vanishing_form():
    # in characteristic 3 every partial of x^3 + y^3 + z^3 vanishes identically
    f = make_field(3)
    F = parse_form(f, "x^3+y^3+z^3")
    assert all(F(p) == 0 for p in [pt.coords for pt in singular_points(F)])
    assert len(singular_points(F)) == bin(plane(f).zero_mask(F)).count("1")


@pytest.mark.parametrize("q", [3, 4])
def test_conic_inventory(q):
    cat = catalogue(make_field(q), cubics=False)
    n = q * q + q + 1
    counts = np.bincount(cat.conic_kind, minlength=5)
    assert counts[CONIC_CODES["double_line"]] == n
    assert counts[CONIC_CODES["two_rational_lines"]] == comb(n, 2)
    assert counts[CONIC_CODES["conjugate_line_pair"]] == n * (q * q - q) // 2
    assert counts[CONIC_CODES["smooth"]] == cf.eval_formula("smooth_conics", q) == q ** 5 - q * q


@pytest.mark.parametrize("q", [3, 4])
def test_conic_tag_point_counts(q):
    f = make_field(q)
    cat = catalogue(f, cubics=False)
    pl = plane(f)
    for i in range(cat.n_conics):
        F = HomogeneousForm.from_class(f, 2, i)
        tag = cat.conic_tag(i)
        assert bin(pl.zero_mask(F)).count("1") == CONIC_POINTS[tag](q)
        if i % 37 == 0:
            assert classify_conic(F) == tag


def test_factorization_reconstructs_all_cubics_q3():
    f = make_field(3)
    cat = catalogue(f)
    kinds = {"line": 1, "smooth_conic": 2, "conjugate_pair": 2, "conjugate_triple": 3,
             "absolutely_irreducible": 3}
    for i in range(class_count(3, 3)):
        F = HomogeneousForm.from_class(f, 3, i)
        fac = factor_cubic(F)
        assert fac.product().canonical() == F
        assert sum(kinds[x.kind] * x.multiplicity for x in fac.factors) == 3
        assert (cat.cubic_kind[i] == 5) == fac.absolutely_irreducible


@pytest.mark.parametrize("q", [3, 4, 5])
def test_singular_type_counts(q):
    s = scan_cubic_classes(make_field(q))
    counts = {k: sum(v) for k, v in s.hist_types.items()}
    assert counts["cuspidal"] == cf.eval_formula("cuspidal_cubics", q)
    assert counts["split_nodal"] == cf.eval_formula("split_nodal_cubics", q)
    assert counts["nonsplit_nodal"] == cf.eval_formula("nonsplit_nodal_cubics", q)
    assert sum(s.hist_all) == class_count(q, 3)


def test_scan_tags_agree_with_per_form_q3():
    f = make_field(3)
    s = scan_cubic_classes(f, per_class=True)
    rnd = random.Random(3)
    for i in rnd.sample(range(class_count(3, 3)), 300):
        tag = classify_singular_cubic(HomogeneousForm.from_class(f, 3, i))
        assert tag == ("reducible" if s.tags[i] == 4 else
                       ("smooth", "cuspidal", "split_nodal", "nonsplit_nodal")[s.tags[i]])


@pytest.mark.parametrize("q,degrees", [(3, (2, 3)), (4, (2,))])
def test_bezout_over_extensions(q, degrees):
    f = make_field(q)
    rnd = random.Random(q)
    exts = [None] + [extend_field(f, m) for m in degrees]
    checked = 0
    while checked < 15:
        d, e = rnd.choice([(2, 2), (2, 3), (3, 3)])
        F = HomogeneousForm.from_class(f, d, rnd.randrange(class_count(q, d)))
        G = HomogeneousForm.from_class(f, e, rnd.randrange(class_count(q, e)))
        if common_component_degree(F, G):
            continue
        for ext in exts:
            if ext is None:
                k = common_zero_count(F, G)
            else:
                k = common_zero_count(F.lift(ext), G.lift(ext))
            assert k <= d * e
        checked += 1
