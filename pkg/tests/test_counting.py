"""Gcd-degree counting: profiles, the degree inequality, both detector
pairs, the renitent-line lower bound, and the index dichotomy."""

import pytest

from renitent import (
    BiPoly,
    PointMultiset,
    ProjPoint,
    build_point_detector,
    build_slope_detector,
    classify_direction,
    dichotomy_check,
    field_create,
    gcd_degree_bound,
    gcd_profile,
    gen_norm_conic,
    gen_planted,
    index_of_point,
    intercept_profile,
    renitent_lower_bound_check,
    slope_direction,
    slope_of,
    uniform_directions,
    vertical_direction,
)
from renitent.errors import (
    BadLeadingCoefficient,
    FieldMismatch,
    HypothesisNotMet,
    InputError,
    NoSharpDirection,
    TooManyDirections,
    VerticalDirectionPresent,
)

K5 = field_create(5)
K7 = field_create(7)


def slope_reports(T, lam):
    return [r for r in uniform_directions(T, lam)
            if slope_of(r.direction) is not None and r.lambda_d > 0]


# -- gcd profiles ------------------------------------------------------------


def test_profile_constant_common_factor():
    # f = (X - 1)(X - Y), g = X - 1: the gcd is X - 1 in every row
    f = BiPoly(K5, {(2, 0): 1, (1, 1): K5.neg(1), (1, 0): K5.neg(1), (0, 1): 1})
    g = BiPoly(K5, {(1, 0): 1, (0, 0): K5.neg(1)})
    profile = gcd_profile(f, g)
    assert profile.deg_f == 2 and profile.deg_g == 1
    assert profile.k == {y: 1 for y in K5.elements()}


def test_profile_zero_row_counts_full_degree():
    # g(X, y) = (y - 2) X vanishes identically in the row y = 2
    f = BiPoly(K5, {(5, 0): 1, (1, 0): K5.neg(1)})  # X^5 - X
    g = BiPoly(K5, {(1, 1): 1, (1, 0): K5.neg(2)})
    profile = gcd_profile(f, g)
    assert profile.k[2] == 5
    assert all(profile.k[y] == 1 for y in K5.elements() if y != 2)


def test_profile_rejects_variable_leading_coefficient():
    f = BiPoly(K5, {(1, 1): 1})  # X Y
    g = BiPoly(K5, {(1, 0): 1})
    with pytest.raises(BadLeadingCoefficient):
        gcd_profile(f, g)
    with pytest.raises(BadLeadingCoefficient):
        gcd_profile(BiPoly.constant(K5, 0), g)


def test_profile_rejects_mixed_fields():
    f = BiPoly(K5, {(1, 0): 1})
    g = BiPoly(K7, {(1, 0): 1})
    with pytest.raises(FieldMismatch):
        gcd_profile(f, g)


def test_degree_bound_on_a_skewed_profile():
    # k_0 = 1 (gcd X), every other row 0
    f = BiPoly(K5, {(2, 0): 1})           # X^2
    g = BiPoly(K5, {(1, 0): 1, (0, 1): K5.neg(1)})  # X - Y
    profile = gcd_profile(f, g)
    check = gcd_degree_bound(profile, 1)
    assert (check.k_y0, check.lhs, check.rhs) == (0, 1, 2)
    assert check.ok and check.slack == 1
    anchored = gcd_degree_bound(profile, 0)
    assert (anchored.k_y0, anchored.lhs, anchored.rhs) == (1, 0, 0)
    assert anchored.ok
    js = anchored.to_json()
    assert js["pass"] is True and js["slack"] == 0


def test_degree_bound_rejects_bad_anchor():
    f = BiPoly(K5, {(1, 0): 1})
    profile = gcd_profile(f, f)
    with pytest.raises(InputError):
        gcd_degree_bound(profile, 5)
    with pytest.raises(InputError):
        gcd_degree_bound(profile, "0")


# -- slope detector ---------------------------------------------------------


def test_slope_detector_semantics():
    # the full line y = 0 plus a doubled point: generic slopes see every
    # typical line once, so m_d = 1 there, while slope 0 has m_d = 0
    T = PointMultiset(K7, [((x, 0), 1) for x in K7.elements()] + [((1, 1), 2)])
    reports = slope_reports(T, 1)
    assert {slope_of(r.direction) for r in reports} == set(K7.elements())
    assert {r.m_d for r in reports} == {0, 1}
    det = build_slope_detector(T, reports)
    for r in reports:
        d = slope_of(r.direction)
        assert det.h(d) == K7.from_int(r.m_d)
        profile = intercept_profile(T, r.direction)
        for x in K7.elements():
            count = K7.from_int(profile.get(x, 0))
            assert det.g.eval(x, d) == K7.sub(K7.from_int(r.m_d), count)


def test_slope_detector_uncovered_slope():
    T = PointMultiset(K7, [((x, 0), 1) for x in K7.elements()] + [((1, 1), 2)])
    partial = [r for r in slope_reports(T, 1) if slope_of(r.direction) not in (1, 2)]
    det = build_slope_detector(T, partial)
    assert det.h(1) == 0 and det.h(2) == 0
    assert det.h(3) == 1  # still covered


def test_slope_detector_profile_counts_renitent_lines():
    T = PointMultiset(K7, [((0, 0), 1), ((1, 1), 1)])
    reports = slope_reports(T, 2)
    det = build_slope_detector(T, reports)
    profile = gcd_profile(det.f, det.g)
    for r in reports:
        assert profile.k[slope_of(r.direction)] == K7.q - r.lambda_d


def test_detector_input_checks():
    T = PointMultiset(K7, [((0, 0), 1)])
    reports = uniform_directions(T, 1)
    with pytest.raises(InputError):
        build_slope_detector(T, [])
    with pytest.raises(TooManyDirections):
        build_slope_detector(T, reports)  # q + 1 of them
    slopes = [r for r in reports if slope_of(r.direction) is not None]
    with pytest.raises(InputError):
        build_slope_detector(T, slopes[:1] * 2)  # duplicate direction
    with pytest.raises(VerticalDirectionPresent):
        build_slope_detector(T, reports[-1:])
    other = PointMultiset(K5, [((0, 0), 1)])
    with pytest.raises(FieldMismatch):
        build_slope_detector(other, slopes[:1])


# -- lower bound ------------------------------------------------------------


def test_lower_bound_single_point_is_tight():
    T = PointMultiset(K5, [((2, 3), 1)])
    reports = slope_reports(T, 1)
    rep = renitent_lower_bound_check(T, reports)
    assert rep.count == rep.gcd_count == 5
    assert rep.bound == 5
    assert rep.counts_agree and rep.ok
    js = rep.to_json()
    assert js["pass"] is True and js["counts_agree"] is True


def test_lower_bound_two_points_with_merged_direction():
    T = PointMultiset(K7, [((0, 0), 1), ((1, 1), 1)])
    reports = slope_reports(T, 2)
    rep = renitent_lower_bound_check(T, reports)
    assert rep.n_directions == 7   # slope 1 is uniform too, with lambda_d = 1
    assert rep.count == rep.gcd_count == 6 * 2 + 1
    assert rep.bound == 2 * (7 + 1 - 2)
    assert rep.ok


def test_lower_bound_needs_a_sharp_direction():
    K11 = field_create(11)
    T = PointMultiset(K11, [((0, 0), 1), ((1, 1), 1), ((2, 2), 1)])
    merged = [r for r in slope_reports(T, 3) if r.lambda_d == 1]
    assert len(merged) == 1
    with pytest.raises(NoSharpDirection):
        renitent_lower_bound_check(T, merged)


def test_lower_bound_rejects_mixed_bounds():
    T = PointMultiset(K7, [((0, 0), 1)])
    r1 = classify_direction(T, slope_direction(K7, 0), 1)
    r2 = classify_direction(T, slope_direction(K7, 2), 2)
    with pytest.raises(InputError):
        renitent_lower_bound_check(T, [r1, r2])


# -- point indices ----------------------------------------------------------


def test_index_of_member_point():
    T = PointMultiset(K7, [((2, 3), 1)])
    reports = slope_reports(T, 1)
    rep = index_of_point(reports, ProjPoint.affine(K7, 2, 3))
    assert rep.count == 7
    assert len(rep.lines) == 7
    assert rep.to_json()["index"] == 7


def test_index_of_other_points():
    T = PointMultiset(K7, [((2, 3), 1)])
    reports = slope_reports(T, 1)
    # same column as the member: only the (uncovered) vertical joins them
    assert index_of_point(reports, ProjPoint.affine(K7, 2, 5)).count == 0
    # generic affine point: exactly the joining line
    assert index_of_point(reports, ProjPoint.affine(K7, 3, 3)).count == 1
    # a direction meets the one renitent line of its own class
    assert index_of_point(reports, slope_direction(K7, 4)).count == 1
    assert index_of_point(reports, vertical_direction(K7)).count == 0


# -- dichotomy --------------------------------------------------------------


def test_dichotomy_single_point():
    T = PointMultiset(K5, [((2, 3), 1)])
    rep = dichotomy_check(T, 1)
    assert rep.ok
    assert rep.n_uniform == 6 and rep.n_lines == 6
    assert (rep.low, rep.high) == (1, 6)
    assert rep.high_points == ((ProjPoint.affine(K5, 2, 3), 6),)
    assert rep.offenders == ()
    assert rep.worst is None
    assert rep.to_json()["pass"] is True


def test_dichotomy_norm_conic_nucleus():
    K4 = field_create(2, 2)
    inst = gen_norm_conic(K4)
    rep = dichotomy_check(inst.multiset, 1)
    assert rep.ok
    high = dict(rep.high_points)
    assert high[inst.nucleus] == rep.n_uniform


def test_dichotomy_hypothesis_checks():
    K2 = field_create(2)
    with pytest.raises(HypothesisNotMet):
        dichotomy_check(PointMultiset(K2, [((0, 0), 1)]), 1)
    # lam = 2 over GF(5) can never clear lam^2 + lam = 6 = q + 1 directions
    T = PointMultiset(K5, [((0, 0), 1), ((1, 1), 1)])
    with pytest.raises(HypothesisNotMet):
        dichotomy_check(T, 2)


# -- point detector ---------------------------------------------------------


def test_point_detector_counts_lines_through_the_pencil():
    T = PointMultiset(K5, [((2, 3), 1)])
    reports = slope_reports(T, 1)
    R = ProjPoint.affine(K5, 0, 0)
    det = build_point_detector(T, reports, R)
    profile = gcd_profile(det.f, det.g)
    inv = det.frame.inverse()
    for y in K5.elements():
        pre = inv.apply_point(ProjPoint(K5, 1, y, 0))
        idx = index_of_point(reports, pre).count
        assert profile.k[y] == len(reports) - idx
    # R itself is one of the pencil's points
    imgs = {y: inv.apply_point(ProjPoint(K5, 1, y, 0)) for y in K5.elements()}
    assert R in imgs.values()


def test_point_detector_bound_holds_at_every_anchor():
    T = PointMultiset(K7, [((0, 0), 1), ((1, 1), 1)])
    reports = slope_reports(T, 2)
    det = build_point_detector(T, reports, ProjPoint.affine(K7, 3, 0))
    profile = gcd_profile(det.f, det.g)
    assert profile.deg_f == len(reports)
    for y in K7.elements():
        assert gcd_degree_bound(profile, y).ok


def test_point_detector_accepts_vertical_reports():
    T = PointMultiset(K5, [((2, 3), 1)])
    # q reports including the vertical class; slope 0 left out as the spare
    reports = [r for r in uniform_directions(T, 1) if slope_of(r.direction) != 0]
    assert len(reports) == K5.q
    assert any(slope_of(r.direction) is None for r in reports)
    det = build_point_detector(T, reports, ProjPoint.affine(K5, 0, 1))
    profile = gcd_profile(det.f, det.g)
    inv = det.frame.inverse()
    for y in K5.elements():
        pre = inv.apply_point(ProjPoint(K5, 1, y, 0))
        assert profile.k[y] == len(reports) - index_of_point(reports, pre).count
