"""Deterministic factories for instances with known ground truth.

The planted factory places a few multiplicity-weighted points and hands
back the exact envelope their dual lines must form, so the curve
constructions can be tested against a closed-form oracle.  The conic
factory builds the even-characteristic unit-norm arc whose tangents
concur at a nucleus.  The random factory flips one coin per affine
point with a fixed, documented generator so instances are bit-stable
across runs and platforms.
"""

from dataclasses import dataclass

from .errors import (
    DuplicatePoints,
    InputError,
    LambdaGEp,
    NotEvenCharacteristic,
)
from .plane import ProjPoint, all_directions, format_point, slope_direction, vertical_direction
from .poly import TriHomPoly
from .uniformity import PointMultiset

_MASK = (1 << 64) - 1


class SplitMix64:
    """splitmix64, bit-exact.

    state += 0x9E3779B97F4A7C15 (mod 2^64); then the output mix
    z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
    z *= 0x94D049BB133111EB; z ^= z >> 31.
    """

    def __init__(self, seed):
        if not isinstance(seed, int) or seed < 0:
            raise InputError(f"seed must be a non-negative integer, got {seed!r}")
        self.state = seed & _MASK

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)


@dataclass
class PlantedInstance:
    multiset: PointMultiset
    oracle: TriHomPoly       # product of dual lines, weight as exponent
    generic_directions: tuple  # directions seeing all planted points separately
    expected_class: int      # sum of the weights
    points: tuple
    weights: tuple
    c: int

    def to_json(self):
        return {
            "kind": "planted",
            "points": [list(pt) for pt in self.points],
            "weights": list(self.weights),
            "c": self.c,
            "expected_class": self.expected_class,
            "generic_directions": [format_point(d) for d in self.generic_directions],
            "oracle": [{"i": i, "j": j, "k": k, "coeff": co}
                       for i, j, k, co in self.oracle.monomials()],
        }


def gen_planted(field, points, weights, c=1):
    """Multiset with the i-th point carrying multiplicity c * w_i.

    At a generic direction (one seeing the planted points on separate
    lines) each planted point contributes one renitent line with count
    c * w_i mod p while the remaining lines stay empty, so m_d = 0 and
    the weights recovered at offset c are exactly the w_i.  The oracle
    curve is the product of the points' dual lines (U + aV - bW) raised
    to their weights; its class is the weight sum.
    """
    K = field
    lam = len(points)
    if lam == 0:
        raise InputError("need at least one point")
    if lam >= K.p:
        raise LambdaGEp(f"need fewer points than p = {K.p}, got {lam}")
    pts = [(K.check(a), K.check(b)) for a, b in points]
    if len(set(pts)) != lam:
        raise DuplicatePoints("planted points must be distinct")
    if len(weights) != lam:
        raise InputError(f"need one weight per point, got {len(weights)}")
    for w in weights:
        if not isinstance(w, int) or w < 1:
            raise InputError(f"weights must be positive integers, got {w!r}")
        if w % K.p == 0:
            raise InputError(
                f"weight {w} vanishes mod p = {K.p}; its lines would be typical")
    if not isinstance(c, int) or not 0 < c < K.p:
        raise InputError(f"multiplier must lie in 1..p-1, got {c!r}")
    T = PointMultiset(K, [((a, b), c * w) for (a, b), w in zip(pts, weights)])
    oracle = None
    for (a, b), w in zip(pts, weights):
        factor = TriHomPoly.linear(K, 1, a, K.neg(b)) ** w
        oracle = factor if oracle is None else oracle * factor
    spanned = set()
    for i in range(lam):
        for j in range(i + 1, lam):
            (a1, b1), (a2, b2) = pts[i], pts[j]
            if a1 == a2:
                spanned.add(vertical_direction(K))
            else:
                s = K.div(K.sub(b2, b1), K.sub(a2, a1))
                spanned.add(slope_direction(K, s))
    generic = tuple(d for d in all_directions(K) if d not in spanned)
    return PlantedInstance(T, oracle, generic, sum(weights),
                           tuple(pts), tuple(weights), c)


@dataclass
class ConicInstance:
    multiset: PointMultiset
    nucleus: ProjPoint
    delta: int  # the trace-one element defining the norm form

    def to_json(self):
        return {"kind": "norm_conic",
                "delta": self.delta,
                "nucleus": format_point(self.nucleus),
                "size": self.multiset.size}


def gen_norm_conic(field):
    """The q+1 affine points of x^2 + xy + delta y^2 = 1, q even.

    delta is the smallest-index element of absolute trace 1, which
    makes the form irreducible: no points at infinity, so the curve is
    an arc of q+1 affine points whose q+1 tangents all pass through the
    nucleus (0, 0).
    """
    K = field
    if K.p != 2 or K.e < 2:
        raise NotEvenCharacteristic("needs q = 2^e with e >= 2")
    delta = next(g for g in K.elements() if K.trace(g) == 1)
    pts = []
    for x in K.elements():
        xx = K.mul(x, x)
        for y in K.elements():
            val = K.add(xx, K.add(K.mul(x, y), K.mul(delta, K.mul(y, y))))
            if val == 1:
                pts.append((x, y))
    assert len(pts) == K.q + 1, "the unit-norm set must be an oval"
    T = PointMultiset(K, [((a, b), 1) for a, b in pts])
    return ConicInstance(T, ProjPoint.affine(K, 0, 0), delta)


def gen_random(field, seed, density):
    """One independent coin per affine point, multiplicity 1.

    Points are visited in (a, b) index order, a outermost; the point is
    kept when the next 64-bit draw falls below density * 2^64.  Equal
    seeds give equal multisets, bit for bit.
    """
    K = field
    if not 0 < density <= 1:
        raise InputError(f"density must lie in (0, 1], got {density!r}")
    threshold = int(density * (1 << 64))
    rng = SplitMix64(seed)
    entries = []
    for a in K.elements():
        for b in K.elements():
            if rng.next_u64() < threshold:
                entries.append(((a, b), 1))
    return PointMultiset(K, entries)
