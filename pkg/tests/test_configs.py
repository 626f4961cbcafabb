import pytest

from cubic_census.configs import (ConfigClass, PointSet, _max_on_line, appendix_config_counts,
                                  classify_failing, collinear_dual_counts, collinear_dual_formulas,
                                  count_I9, gamma_dim, imposes_independent, pencil_base,
                                  subset_rank_scan)
from cubic_census.gf import make_field
from cubic_census.plane import BudgetError, enumerate_points, plane


def pts(q, where):
    f = make_field(q)
    return f, PointSet(tuple(p.index for p in enumerate_points(f) if where(f, p.coords)))


def test_point_set_mask_roundtrip():
    s = PointSet((5, 1, 3))
    assert s.indices == (1, 3, 5) and PointSet.from_mask(s.mask) == s
    with pytest.raises(ValueError):
        PointSet((1, 1))


def test_gamma_examples():
    f = make_field(4)
    assert gamma_dim(f, PointSet(()), 3) == 10
    _, line = pts(4, lambda f, c: c[0] == 0)
    assert line.size == 5
    assert gamma_dim(f, line, 3) == 6
    assert not imposes_independent(f, line, 3)
    assert imposes_independent(f, PointSet((7,)), 3)


def test_four_general_points_independent_on_conics():
    f = make_field(5)
    pl = plane(f)
    s = PointSet(tuple(pl.index_of(c) for c in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]))
    assert _max_on_line(pl, s.mask)[0] == 2
    assert imposes_independent(f, s, 2)


def test_affine_plane_is_pencil_base():
    # the nine points of AG(2,3) are cut out by x^3 - x z^2 and y^3 - y z^2
    f, s = pts(3, lambda f, c: c[2] != 0)
    assert s.size == 9
    assert gamma_dim(f, s, 3) == 2
    assert pencil_base(f, s)
    assert classify_failing(f, s, 3) == ConfigClass("cubic_pencil_base", (9,))


def test_classify_examples():
    f5, conic = pts(5, lambda f, c: f.add(f.mul(c[0], c[1]), f.neg(f.mul(c[2], c[2]))) == 0)
    assert conic.size == 6
    assert classify_failing(f5, conic, 2) == ConfigClass("conic_smooth", (6,))

    f4, two = pts(4, lambda f, c: (c[0] == 0) != (c[1] == 0))
    assert two.size == 8
    assert classify_failing(f4, two, 3) == ConfigClass("two_lines", (4, 4), False)

    f7, line = pts(7, lambda f, c: c[0] == 0)
    seven = PointSet(line.indices[:7])
    assert classify_failing(f7, seven, 3) == ConfigClass("collinear", (7,))
    assert str(ConfigClass("two_lines", (4, 4), False)) == "two_lines(4, 4, without)"


def test_classify_rejects_independent():
    f = make_field(5)
    with pytest.raises(ValueError):
        classify_failing(f, PointSet((0, 1)), 3)


def test_I9_q3():
    assert count_I9(make_field(3)) == 13


def test_pencil_verdict_independent_of_basis_q3():
    # whether the pencil has a component-free pair cutting out S exactly does not depend on
    # which pair of members is used, for every pencil arising from 9 points at q=3
    f = make_field(3)
    pl = plane(f)
    _, masks = subset_rank_scan(f, 9, 3, 8, budget=10 ** 6)
    assert masks
    for m in masks:
        if _max_on_line(pl, m)[0] >= 4:
            continue
        verdict, seen = pencil_base(f, PointSet.from_mask(m), all_pairs=True)
        assert seen == {verdict}


def test_appendix_q3():
    rows = appendix_config_counts(make_field(3))
    bad = [(r.name, r.formula, r.brute) for r in rows if not r.ok]
    assert not bad


def test_subset_budget():
    with pytest.raises(BudgetError):
        subset_rank_scan(make_field(5), 9, 3, 8, budget=1000)


@pytest.mark.parametrize("q", [4, 5, 7])
def test_collinear_duals(q):
    f = make_field(q)
    for d in (2, 3):
        for m in range(d + 2, q + 2):
            assert collinear_dual_counts(f, d, m) == collinear_dual_formulas(q, d, m)
    with pytest.raises(ValueError):
        collinear_dual_counts(f, 3, 4)
