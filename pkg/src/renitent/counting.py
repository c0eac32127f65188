"""Counting renitent lines two ways: geometry and gcd degrees.

For a bivariate pair (f, g) whose X-leading coefficient is a nonzero
constant, the profile k_y = deg gcd(f(X,y), g(X,y)) obeys

    sum over y of max(0, k_y - k_y0)  <=  (deg f - k_y0)(deg g - k_y0)

for every choice of y0.  Two detector pairs turn that inequality into
renitent-line counts: the slope detector makes k_y drop by one for each
renitent line of the uniform slope y, giving a lower bound on the total
number of renitent lines; the point detector moves a chosen point R to
infinity first, making k_y record how many renitent lines pass through
each point of one pencil, which yields the index dichotomy (every point
of the plane sits on at most lam renitent lines or on almost all of
them).
"""

from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    BadLeadingCoefficient,
    FieldMismatch,
    HypothesisNotMet,
    InputError,
    NoSharpDirection,
    TooManyDirections,
    VerticalDirectionPresent,
)
from .plane import (
    ProjPoint,
    all_directions,
    format_point,
    frame_collineation,
    incident,
    slope_of,
    vertical_direction,
)
from .poly import BiPoly, UniPoly, uni_gcd
from .uniformity import uniform_directions


@dataclass
class GcdProfile:
    field: object
    k: dict        # y -> deg gcd(f(X,y), g(X,y))
    deg_f: int     # total degree of f
    deg_g: int     # total degree of g

    def to_json(self):
        return {"deg_f": self.deg_f, "deg_g": self.deg_g,
                "k": {str(y): ky for y, ky in sorted(self.k.items())}}


def gcd_profile(f, g):
    """k_y for every y in the field.  The X-leading coefficient of f
    must be a nonzero constant, so deg f(X,y) never drops; g(X,y) = 0
    falls out of the Euclidean algorithm as k_y = deg f."""
    if f.field != g.field:
        raise FieldMismatch("mixed contexts")
    K = f.field
    du = f.deg_u
    lead = {j for (i, j) in f.terms if i == du}
    if du < 0 or lead != {0}:
        raise BadLeadingCoefficient(
            "the X-leading coefficient of f must be a nonzero constant")
    k = {}
    for y in K.elements():
        f_y = f.eval_v(y)
        g_y = g.eval_v(y)
        if g_y.is_zero():
            k[y] = f_y.degree
        else:
            k[y] = uni_gcd(f_y, g_y).degree
    return GcdProfile(K, k, f.total_degree, g.total_degree)


@dataclass
class GcdBoundCheck:
    y0: int
    k_y0: int
    lhs: int
    rhs: int

    @property
    def ok(self):
        return self.lhs <= self.rhs

    @property
    def slack(self):
        return self.rhs - self.lhs

    def to_json(self):
        return {"y0": self.y0, "k_y0": self.k_y0, "lhs": self.lhs,
                "rhs": self.rhs, "slack": self.slack, "pass": self.ok}


def gcd_degree_bound(profile, y0):
    """Both sides of the degree inequality at the anchor row y0."""
    if y0 not in profile.k:
        raise InputError(f"anchor {y0!r} is not a field element")
    k0 = profile.k[y0]
    lhs = sum(max(0, ky - k0) for ky in profile.k.values())
    rhs = (profile.deg_f - k0) * (profile.deg_g - k0)
    return GcdBoundCheck(y0, k0, lhs, rhs)


class SlopeDetector(NamedTuple):
    f: BiPoly  # X^q - X
    g: BiPoly  # vanishes at (x, d) exactly when the slope-d line of
               # intercept x is typical, for every covered slope d
    h: UniPoly  # in Y: the typical count m_d at covered slopes, else 0


def _check_detector_reports(T, reports, allow_vertical=False):
    if not reports:
        raise InputError("need at least one direction report")
    if len(reports) > T.field.q:
        raise TooManyDirections(
            f"at most q = {T.field.q} directions, got {len(reports)}")
    seen = set()
    for r in reports:
        if r.direction.field != T.field:
            raise FieldMismatch("report uses a different context")
        if r.direction in seen:
            raise InputError(f"duplicate direction {format_point(r.direction)}")
        seen.add(r.direction)
        if not allow_vertical and slope_of(r.direction) is None:
            raise VerticalDirectionPresent(
                "slope directions only; re-coordinatize the vertical away")


def build_slope_detector(T, reports):
    """The pair whose gcd profile counts renitent lines per slope.

    g(x, y) = m_y - |line of slope y, intercept x meets T| mod p holds
    at every covered slope y, so the common roots of f(X,y) = X^q - X
    and g(X,y) are the typical intercepts: k_y = q - lambda_y there.
    """
    _check_detector_reports(T, reports)
    K = T.field
    q = K.q
    f = BiPoly(K, {(q, 0): 1, (1, 0): K.neg(1)})
    h = UniPoly.zero(K)
    for r in reports:
        m = K.from_int(r.m_d)
        if m == 0:
            continue
        bump = UniPoly.one(K) - UniPoly.x_minus(K, slope_of(r.direction)) ** (q - 1)
        h = h + bump.scale(m)
    g = BiPoly.constant(K, K.neg(K.from_int(T.size))) + BiPoly.from_uni(h, var=1)
    for (a, b), mult in T.items():
        w = K.from_int(mult)
        if w == 0:
            continue
        lin = BiPoly(K, {(1, 0): 1, (0, 1): a, (0, 0): K.neg(b)})
        g = g + (lin ** (q - 1)).scale(w)
    return SlopeDetector(f, g, h)


@dataclass
class LowerBoundReport:
    lam: int
    n_directions: int
    count: int       # renitent lines summed from the reports
    gcd_count: int   # the same total re-derived from the gcd profile
    bound: int       # lam * (n_directions + 1 - lam)

    @property
    def counts_agree(self):
        return self.count == self.gcd_count

    @property
    def ok(self):
        return self.counts_agree and self.count >= self.bound

    def to_json(self):
        return {"lambda": self.lam, "directions": self.n_directions,
                "count": self.count, "gcd_count": self.gcd_count,
                "bound": self.bound, "counts_agree": self.counts_agree,
                "pass": self.ok}


def renitent_lower_bound_check(T, reports):
    """At least lam(|E| + 1 - lam) renitent lines live on |E| uniform
    slope directions once one of them is sharp.  Counts both ways and
    requires agreement; a mismatch means the algebra and the geometry
    disagree, which is a bug, not a property of the input."""
    _check_detector_reports(T, reports)
    bounds = {r.bound for r in reports}
    if len(bounds) != 1:
        raise InputError(f"reports were classified at different bounds: {sorted(bounds)}")
    lam = bounds.pop()
    if not any(r.lambda_d == lam for r in reports):
        raise NoSharpDirection("the bound needs a direction with lambda_d = lam")
    count = sum(r.lambda_d for r in reports)
    det = build_slope_detector(T, reports)
    profile = gcd_profile(det.f, det.g)
    q = T.field.q
    gcd_count = sum(q - profile.k[slope_of(r.direction)] for r in reports)
    bound = lam * (len(reports) + 1 - lam)
    return LowerBoundReport(lam, len(reports), count, gcd_count, bound)


@dataclass
class IndexReport:
    point: ProjPoint
    count: int
    lines: tuple  # the renitent lines through the point

    def to_json(self):
        from .plane import format_line
        return {"point": format_point(self.point), "index": self.count,
                "lines": [format_line(l) for l in self.lines]}


def index_of_point(reports, point):
    """How many renitent lines of the given reports pass through the
    point, by direct incidence.  An affine point meets at most one line
    per parallel class; a direction meets every renitent line of its
    own class and no others."""
    hits = tuple(entry.line
                 for r in reports for entry in r.renitent
                 if incident(point, entry.line))
    return IndexReport(point, len(hits), hits)


@dataclass
class DichotomyReport:
    lam: int
    n_uniform: int
    n_lines: int
    low: int    # indices <= low are allowed
    high: int   # indices >= high are allowed
    high_points: tuple  # (point, index) for every point at or above high
    offenders: tuple    # (point, index) strictly between, must be empty

    @property
    def ok(self):
        return not self.offenders

    @property
    def worst(self):
        return self.offenders[0] if self.offenders else None

    def to_json(self):
        return {"lambda": self.lam, "uniform_directions": self.n_uniform,
                "renitent_lines": self.n_lines,
                "low": self.low, "high": self.high,
                "high_points": [{"point": format_point(P), "index": i}
                                for P, i in self.high_points],
                "offenders": [{"point": format_point(P), "index": i}
                              for P, i in self.offenders],
                "pass": self.ok}


def dichotomy_check(T, lam):
    """Every point of the plane meets at most lam renitent lines or at
    least |F| + 1 - lam of them, where F is the set of all uniform
    directions.  Needs q > 2 and |F| > lam^2 + lam; scans all
    q^2 + q + 1 points and reports any middle index, ordered nearest
    the middle first (there must be none)."""
    K = T.field
    if K.q <= 2:
        raise HypothesisNotMet("the dichotomy needs q > 2")
    reports = uniform_directions(T, lam)
    if len(reports) <= lam * lam + lam:
        raise HypothesisNotMet(
            f"need more than lam^2 + lam = {lam * lam + lam} uniform "
            f"directions, found {len(reports)}")
    lines = [entry.line for r in reports for entry in r.renitent]
    low = lam
    high = len(reports) + 1 - lam
    high_points = []
    offenders = []
    for P in _all_points(K):
        ind = sum(1 for l in lines if incident(P, l))
        if ind >= high:
            high_points.append((P, ind))
        elif ind > low:
            offenders.append((P, ind))
    mid = (low + high) / 2
    offenders.sort(key=lambda pair: (abs(pair[1] - mid), pair[1]))
    return DichotomyReport(lam, len(reports), len(lines), low, high,
                           tuple(high_points), tuple(offenders))


def _all_points(field):
    for a in field.elements():
        for b in field.elements():
            yield ProjPoint.affine(field, a, b)
    yield from all_directions(field)


class PointDetector(NamedTuple):
    f: BiPoly           # product of (X - c_k) over the moved directions
    g: BiPoly           # vanishes at (c_k, y) exactly when the line from
                        # the moved direction c_k to (1:y:0) is typical
    collineation: object

    @property
    def frame(self):
        return self.collineation


def build_point_detector(T, reports, R):
    """Detector in a frame where R sits at infinity as (1:y0:0).

    A collineation sends the line at infinity to the Y-axis, R to a
    point (1:y0:0), and each covered direction to an affine Y-axis
    point (0:c_k:1).  In that frame g is built so that for every y the
    common roots of f(X, y) and g(X, y) mark the typical lines from the
    moved directions through (1:y:0); hence

        k_y = |E| - (number of renitent lines through (1:y:0)),

    which feeds the degree inequality anchored at y0.  The multiset may
    cross the moved line at infinity: those members turn into (1:z_j:0)
    and contribute (Y - z_j)^(q-1) terms.
    """
    _check_detector_reports(T, reports, allow_vertical=True)
    K = T.field
    q = K.q
    coll = frame_collineation(K, [r.direction for r in reports], R)
    c_vals = []
    for r in reports:
        img = coll.apply_point(r.direction)
        x, y, z = img.coords
        if x != 0 or z == 0:
            raise InputError(
                f"direction {format_point(r.direction)} did not land on the "
                f"affine Y-axis")
        c_vals.append(K.div(y, z))
    if len(set(c_vals)) != len(c_vals):
        raise InputError("moved directions collide; frame is broken")
    f_uni = UniPoly.one(K)
    for c in c_vals:
        f_uni = f_uni * UniPoly.x_minus(K, c)
    f = BiPoly.from_uni(f_uni, var=0)
    h = UniPoly.zero(K)
    for r, c in zip(reports, c_vals):
        m = K.from_int(r.m_d)
        if m == 0:
            continue
        bump = UniPoly.one(K) - UniPoly.x_minus(K, c) ** (q - 1)
        h = h + bump.scale(m)
    g = BiPoly.constant(K, K.neg(K.from_int(T.size))) + BiPoly.from_uni(h, var=0)
    for (a, b), mult in T.items():
        w = K.from_int(mult)
        if w == 0:
            continue
        img = coll.apply_point(ProjPoint.affine(K, a, b))
        x, y, z = img.coords
        if z != 0:
            ai, bi = K.div(x, z), K.div(y, z)
            lin = BiPoly(K, {(1, 0): 1, (0, 1): ai, (0, 0): K.neg(bi)})
        else:
            zj = K.div(y, x)
            lin = BiPoly(K, {(0, 1): 1, (0, 0): K.neg(zj)})
        g = g + (lin ** (q - 1)).scale(w)
    return PointDetector(f, g, coll)
