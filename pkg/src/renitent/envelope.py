"""Envelope curves through the renitent lines of uniform directions.

Everything here works in the dual plane: the line [d:-1:alpha] of slope
d and Y-axis intercept alpha becomes the dual point (alpha : d : 1), and
a class-n envelope is a homogeneous curve g(U,V,W) of degree n that
vanishes on the dual points of the renitent lines.  The unique
projective extension of that convention maps a general line [a:b:c] to
(c : a : -b); in particular the vertical renitent line [1:0:-alpha]
becomes (-alpha : 1 : 0) on the W=0 section of the curve.

Three constructions are provided.  The `regular` one applies when every
direction shows the same number of renitent lines, each with one shared
count offset c, and yields a monic class-lam curve via Newton's
identities on the multiset power sums.  The `weighted` one relaxes the
equal-count hypothesis by reading a weight off each renitent line (the
count offset divided by c mod p) and produces a class-Lambda curve that
meets each renitent line with exactly its weight.  The `general` one
drops the shared-offset hypothesis entirely: a Hankel system in the
power sums produces a class lam^2 curve that either factors through the
renitent dual points of a direction (sharp case, nonzero leading
coefficient) or contains the direction's whole pencil.
"""

from dataclasses import dataclass

from .errors import (
    CZero,
    DegenerateCurve,
    FieldMismatch,
    HypothesisViolation,
    InconsistentLambda,
    InputError,
    InsufficientPowerSums,
    KMaxTooLarge,
    LambdaCapExceeded,
    LambdaOutOfRange,
    LambdaTooLarge,
    NoSharpDirection,
    TooManyDirections,
    TotalSizeDivisibleByP,
    VerticalDirectionPresent,
    ZeroDifference,
)
from .plane import ProjPoint, format_line, format_point, slope_of
from .poly import BiPoly, PolyMatrix, TriHomPoly, UniPoly, homogenize


def dual_coords(line):
    """Dual-plane coordinates (U:V:W) of a line: [a:b:c] -> (c:a:-b)."""
    a, b, c = line.coords
    return (c, a, line.field.neg(b))


@dataclass
class EnvelopeCurve:
    poly: TriHomPoly
    nominal_class: int
    provenance: str      # "regular" | "weighted" | "general"
    lead: UniPoly = None  # general construction: U^lam coefficient in V

    @property
    def affine_degree(self):
        return self.poly.affine_degree

    def to_json(self):
        return {
            "class": self.nominal_class,
            "affine_degree": self.affine_degree,
            "provenance": self.provenance,
            "monomials": [{"i": i, "j": j, "k": k, "coeff": c}
                          for i, j, k, c in self.poly.monomials()],
        }


def power_sum_polys(T, k_max):
    """Power-sum polynomials in V: sum of m * (b - a V)^k for k = 0..k_max.

    Evaluated at a slope d these give the k-th power sums of the
    multiset's intercepts on the direction-d pencil.
    """
    K = T.field
    if not isinstance(k_max, int) or k_max < 0:
        raise InputError(f"k_max must be a non-negative integer, got {k_max!r}")
    if k_max > K.q - 2:
        raise KMaxTooLarge(f"k_max must stay below q-1 = {K.q - 1}")
    sums = [UniPoly.zero(K) for _ in range(k_max + 1)]
    for (a, b), m in T.items():
        weight = K.from_int(m)
        if weight == 0:
            continue
        lin = UniPoly(K, (b, K.neg(a)))
        cur = UniPoly.one(K)
        for k in range(k_max + 1):
            sums[k] = sums[k] + cur.scale(weight)
            if k < k_max:
                cur = cur * lin
    return sums


def newton_sigma(power_sums, lam, c):
    """Elementary symmetric polynomials sigma_1..sigma_lam of the
    intercept multiset, from power sums scaled by 1/c, via Newton's
    recursion j*sigma_j = sum_{i<=j} (-1)^(i-1) sigma_{j-i} p_i."""
    if not power_sums:
        raise InsufficientPowerSums("need the power sums up to index lam")
    K = power_sums[0].field
    if not isinstance(lam, int) or not 0 < lam <= min(K.q - 2, K.p - 1):
        raise LambdaTooLarge(
            f"need 0 < lam <= min(q-2, p-1) = {min(K.q - 2, K.p - 1)}, got {lam!r}")
    if len(power_sums) < lam + 1:
        raise InsufficientPowerSums(
            f"need power sums up to index {lam}, got {len(power_sums) - 1}")
    if not isinstance(c, int) or not 0 < c < K.p:
        raise CZero(f"count offset must be a nonzero residue mod p, got {c!r}")
    c_inv = K.inv(c)
    scaled = [ps.scale(c_inv) for ps in power_sums[: lam + 1]]
    sigma = [UniPoly.one(K)]
    for j in range(1, lam + 1):
        acc = UniPoly.zero(K)
        for i in range(1, j + 1):
            term = sigma[j - i] * scaled[i]
            acc = acc + (term if i % 2 == 1 else -term)
        sigma.append(acc.scale(K.inv(K.from_int(j))))
    return sigma[1:]


def _monic_from_sigmas(K, sigmas, lam):
    """U^lam - sigma_1 U^(lam-1) + sigma_2 U^(lam-2) - ... as a BiPoly."""
    terms = {(lam, 0): 1}
    f = BiPoly(K, terms)
    for j, s in enumerate(sigmas, start=1):
        part = BiPoly(K, {(lam - j, i): coeff
                          for i, coeff in enumerate(s.coeffs) if coeff})
        f = f + (-part if j % 2 == 1 else part)
    return f


def _check_reports(T, reports):
    if not reports:
        raise InputError("need at least one direction report")
    seen = set()
    for r in reports:
        if r.direction.field != T.field:
            raise FieldMismatch("report uses a different context")
        if r.direction in seen:
            raise InputError(f"duplicate direction {format_point(r.direction)}")
        seen.add(r.direction)


def envelope_regular(T, reports):
    """Class-lam envelope for directions with equal renitent counts.

    Hypotheses: (i) the shared renitent-line count lam lies in
    1..min(q-2, p-1); (ii) within each direction all renitent lines have
    one count t_d; (iii) t_d - m_d is one residue c for every direction.
    The returned curve is monic of degree lam in U and satisfies
    g(U, d, 1) = prod_i (U - alpha_i(d)) at each covered slope d.
    """
    _check_reports(T, reports)
    for r in reports:
        if slope_of(r.direction) is None:
            raise VerticalDirectionPresent(
                "the regular construction works on slope directions only")
    K = T.field
    lams = {r.lambda_d for r in reports}
    if len(lams) != 1:
        raise InconsistentLambda(
            f"renitent counts differ across directions: {sorted(lams)}")
    lam = lams.pop()
    if not 0 < lam <= min(K.q - 2, K.p - 1):
        raise HypothesisViolation(
            "i", f"need 0 < lam <= min(q-2, p-1), got lam = {lam}")
    offsets = set()
    for r in reports:
        ts = {entry.t for entry in r.renitent}
        if len(ts) != 1:
            raise HypothesisViolation(
                "ii", f"direction {format_point(r.direction)} has counts {sorted(ts)}")
        offsets.add((ts.pop() - r.m_d) % K.p)
    if len(offsets) != 1:
        raise HypothesisViolation(
            "iii", f"count offsets differ across directions: {sorted(offsets)}")
    c = offsets.pop()
    sigmas = newton_sigma(power_sum_polys(T, lam), lam, c)
    f = _monic_from_sigmas(K, sigmas, lam)
    return EnvelopeCurve(homogenize(f, lam), lam, "regular")


@dataclass(frozen=True)
class WeightEntry:
    direction: ProjPoint
    weights: tuple  # one weight in 1..p-1 per renitent line, report order
    total: int      # natural-number sum of the weights


def lambda_weights(report, c):
    """Weights of a direction's renitent lines for count offset c: the
    unique w in 1..p-1 with c*w = t - m_d (mod p), per line."""
    K = report.direction.field
    if not isinstance(c, int) or not 0 < c < K.p:
        raise CZero(f"count offset must be a nonzero residue mod p, got {c!r}")
    c_inv = pow(c, K.p - 2, K.p)
    weights = []
    for entry in report.renitent:
        diff = (entry.t - report.m_d) % K.p
        if diff == 0:
            raise ZeroDifference(
                f"line {format_line(entry.line)} has the typical count")
        weights.append(diff * c_inv % K.p)
    return WeightEntry(report.direction, tuple(weights), sum(weights))


def envelope_weighted(T, reports, c):
    """Class-Lambda envelope meeting each renitent line with its weight.

    Requires |T| nonzero mod p and a common weight total Lambda(c) in
    1..min(q-2, p-1) across all covered directions.  The curve itself
    comes from the power sums of T, so covering all q+1 directions is
    allowed: vertical renitent lines are then met on the W=0 section.
    A vertical direction in a smaller report set is rejected, since the
    slope-only hypothesis cannot see it; re-coordinatize instead.

    Returns (curve, weight map keyed by renitent line).
    """
    _check_reports(T, reports)
    K = T.field
    if T.size % K.p == 0:
        raise TotalSizeDivisibleByP(
            f"|T| = {T.size} vanishes mod p; weights are undetermined")
    full_scan = len(reports) == K.q + 1
    if not full_scan:
        for r in reports:
            if slope_of(r.direction) is None:
                raise VerticalDirectionPresent(
                    "vertical direction allowed only when all q+1 are covered")
    cap = min(K.q - 2, K.p - 1)
    entries = [lambda_weights(r, c) for r in reports]
    totals = {e.total for e in entries}
    for e in entries:
        if e.total > cap:
            raise LambdaCapExceeded(
                f"direction {format_point(e.direction)} needs class {e.total} > {cap}")
    if len(totals) != 1:
        raise InconsistentLambda(
            f"weight totals differ across directions: {sorted(totals)}")
    total = totals.pop()
    if total == 0:
        raise InputError("no renitent lines to envelope")
    sigmas = newton_sigma(power_sum_polys(T, total), total, c)
    f = _monic_from_sigmas(K, sigmas, total)
    curve = EnvelopeCurve(homogenize(f, total), total, "weighted")
    weight_map = {}
    for r, e in zip(reports, entries):
        for entry, w in zip(r.renitent, e.weights):
            weight_map[entry.line] = w
    return curve, weight_map


def scan_weight_classes(reports, p, cap):
    """Try every count offset c; return ({c: total or None}, best c).

    A c is feasible when all directions agree on one total <= cap; the
    winner is the feasible c with the smallest total, ties to smaller c.
    """
    outcomes = {}
    best = None
    for c in range(1, p):
        totals = set()
        try:
            for r in reports:
                totals.add(lambda_weights(r, c).total)
        except ZeroDifference:
            outcomes[c] = None
            continue
        if len(totals) == 1 and (total := totals.pop()) <= cap:
            outcomes[c] = total
            if best is None or total < outcomes[best]:
                best = c
        else:
            outcomes[c] = None
    return outcomes, best


def weighted_power_recursion_check(field, c_list, x_list, j):
    """Direct check of the weighted power-sum recursion: with
    P_k = sum c_i x_i^k and sigma the elementary symmetric functions of
    the x_i, P_{lam+j} = sum_{i=1..lam} (-1)^(i+1) P_{lam+j-i} sigma_i."""
    K = field
    if len(c_list) != len(x_list) or not x_list:
        raise InputError("need matching nonempty coefficient and node lists")
    if not isinstance(j, int) or j < 0:
        raise InputError(f"index shift must be a non-negative integer, got {j!r}")
    lam = len(x_list)

    def psum(k):
        acc = 0
        for ci, xi in zip(c_list, x_list):
            acc = K.add(acc, K.mul(ci, K.pow(xi, k)))
        return acc

    poly = UniPoly.one(K)
    for xi in x_list:
        poly = poly * UniPoly.x_minus(K, xi)
    # poly = x^lam - sigma_1 x^(lam-1) + ... + (-1)^lam sigma_lam
    lhs = psum(lam + j)
    rhs = 0
    for i in range(1, lam + 1):
        # poly.coeffs[lam - i] carries (-1)^i sigma_i, so the recursion's
        # (-1)^(i+1) sigma_i is its negation for either parity
        term = K.mul(psum(lam + j - i), poly.coeffs[lam - i])
        rhs = K.sub(rhs, term)
    return lhs == rhs


def hankel_matrix(power_sums, lam):
    """The lam x lam moment matrix with (r, c) entry pi_{lam-1+r-c}."""
    if not isinstance(lam, int) or lam < 1:
        raise InputError(f"lam must be a positive integer, got {lam!r}")
    if len(power_sums) < 2 * lam - 1:
        raise InsufficientPowerSums(
            f"need power sums up to index {2 * lam - 2}, got {len(power_sums) - 1}")
    K = power_sums[0].field
    rows = [[power_sums[lam - 1 + r - c] for c in range(lam)] for r in range(lam)]
    return PolyMatrix(K, rows)


def hankel_det_closed_form(field, c_list, x_list):
    """(-1)^(lam(lam-1)/2) * prod c_i * prod_{i<j} (x_i - x_j)^2."""
    K = field
    if len(c_list) != len(x_list) or not x_list:
        raise InputError("need matching nonempty coefficient and node lists")
    lam = len(x_list)
    acc = 1
    for ci in c_list:
        acc = K.mul(acc, ci)
    for i in range(lam):
        for j in range(i + 1, lam):
            d = K.sub(x_list[i], x_list[j])
            acc = K.mul(acc, K.mul(d, d))
    if (lam * (lam - 1) // 2) % 2 == 1:
        acc = K.neg(acc)
    return acc


def envelope_general(T, reports, lam):
    """Class lam^2 envelope with no shared-offset hypothesis.

    The U^lam coefficient is M(V) = det of the Hankel matrix of power
    sums; the lower coefficients are -M_i(V) with the i-th column
    replaced by the next lam power sums.  At a sharp direction d the
    section g(U, d, 1) equals M(d) * prod_i (U - alpha_i(d)) with
    M(d) != 0; at a covered non-sharp direction it vanishes identically
    (the curve contains the whole dual pencil line).
    """
    _check_reports(T, reports)
    K = T.field
    if not isinstance(lam, int) or not 0 < lam <= (K.q - 1) // 2:
        raise LambdaOutOfRange(
            f"need 0 < lam <= (q-1)/2 = {(K.q - 1) // 2}, got {lam!r}")
    if len(reports) > K.q:
        raise TooManyDirections(f"at most q = {K.q} directions, got {len(reports)}")
    for r in reports:
        if slope_of(r.direction) is None:
            raise VerticalDirectionPresent(
                "the general construction works on slope directions only")
        if r.lambda_d > lam:
            raise InputError(
                f"direction {format_point(r.direction)} shows {r.lambda_d} "
                f"renitent lines, more than lam = {lam}")
    sums = power_sum_polys(T, 2 * lam - 1)
    H = hankel_matrix(sums, lam)
    lead = H.det()
    column = [sums[lam + r] for r in range(lam)]
    f = BiPoly(K, {(lam, i): coeff for i, coeff in enumerate(lead.coeffs) if coeff})
    for i in range(1, lam + 1):
        minor = H.replace_col(i - 1, column).det()
        part = BiPoly(K, {(lam - i, j): coeff
                          for j, coeff in enumerate(minor.coeffs) if coeff})
        f = f - part
    if f.is_zero():
        raise DegenerateCurve(
            "every coefficient determinant vanishes; no envelope of this class")
    return EnvelopeCurve(homogenize(f, lam * lam), lam * lam, "general", lead=lead)


@dataclass
class DeficiencyReport:
    lam: int
    per_direction: tuple  # (direction, lambda_d) pairs
    total_deficit: int
    bound: int
    ok: bool

    def to_json(self):
        return {
            "lambda": self.lam,
            "per_direction": [{"direction": format_point(d), "lambda_d": ld}
                              for d, ld in self.per_direction],
            "total_deficit": self.total_deficit,
            "bound": self.bound,
            "pass": self.ok,
        }


def deficiency_bound_check(reports, lam):
    """Sum of (lam - lambda_d) over covered directions against lam^2 - lam.

    Requires at least one sharp direction, as the bound does.
    """
    if not reports:
        raise InputError("need at least one direction report")
    if not any(r.lambda_d == lam for r in reports):
        raise NoSharpDirection("the bound needs a direction with lambda_d = lam")
    per = tuple((r.direction, r.lambda_d) for r in reports)
    total = sum(lam - r.lambda_d for r in reports)
    bound = lam * lam - lam
    return DeficiencyReport(lam, per, total, bound, total <= bound)


# -- verification --------------------------------------------------------


@dataclass
class RootCheck:
    line: object
    alpha: int
    expected: int
    actual: int   # None under pencil containment
    exact: bool   # whether expected multiplicity was enforced exactly
    ok: bool

    def to_json(self):
        return {"line": format_line(self.line), "alpha": self.alpha,
                "expected": self.expected, "actual": self.actual,
                "exact": self.exact, "ok": self.ok}


@dataclass
class DirectionCheck:
    direction: ProjPoint
    pencil_contained: bool
    roots: tuple

    @property
    def ok(self):
        return all(r.ok for r in self.roots)

    def to_json(self):
        return {"direction": format_point(self.direction),
                "pencil_contained": self.pencil_contained,
                "roots": [r.to_json() for r in self.roots],
                "ok": self.ok}


@dataclass
class VerificationReport:
    directions: tuple

    @property
    def ok(self):
        return all(d.ok for d in self.directions)

    def to_json(self):
        return {"directions": [d.to_json() for d in self.directions],
                "pass": self.ok}


def _root_multiplicity(poly, root):
    K = poly.field
    m = 0
    while poly.degree >= 1 and poly(root) == 0:
        poly = poly // UniPoly.x_minus(K, root)
        m += 1
    return m


def verify_envelope(curve, reports, mults=None):
    """Check the curve against each report's renitent lines.

    Slope d is checked on the section g(U, d, 1), the vertical direction
    on g(U, 1, 0) where the dual point of [1:0:-alpha] is (-alpha:1:0).
    Without a weight map each dual point must be a root; with one, root
    multiplicities must match it exactly.  A direction whose whole
    section vanishes is flagged as pencil containment and its roots
    count as covered.
    """
    checks = []
    for r in reports:
        K = r.direction.field
        if K != curve.poly.field:
            raise FieldMismatch("report uses a different context")
        s = slope_of(r.direction)
        section = curve.poly.at_vw(s, 1) if s is not None else curve.poly.at_vw(1, 0)
        pencil = section.is_zero()
        roots = []
        for entry in r.renitent:
            root = entry.alpha if s is not None else K.neg(entry.alpha)
            exact = mults is not None and entry.line in mults
            expected = mults[entry.line] if exact else 1
            if pencil:
                roots.append(RootCheck(entry.line, entry.alpha, expected,
                                       None, exact, True))
                continue
            actual = _root_multiplicity(section, root)
            ok = actual == expected if exact else actual >= expected
            roots.append(RootCheck(entry.line, entry.alpha, expected,
                                   actual, exact, ok))
        checks.append(DirectionCheck(r.direction, pencil, tuple(roots)))
    return VerificationReport(tuple(checks))
