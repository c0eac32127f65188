"""Point multisets in AG(2,q) and the uniformity classification.

A direction is (q-lam)-uniform when at least q-lam of the q lines of its
parallel class meet the multiset in the same number of points mod p;
that shared residue is the typical count m_d, and the exceptional lines
are the renitent lines of the direction.  For lam <= (q-1)/2 the typical
residue is unique (two residues on q-lam lines each would need more than
q lines), so the classification is well defined.

Each renitent line is recorded with its intercept alpha: for slope d the
line [d:-1:alpha] meets the Y-axis at (0:alpha:1); for the vertical
class alpha is the x-coordinate of [1:0:-alpha].
"""

from collections import Counter
from dataclasses import dataclass

from .errors import (
    FewerThanTwoLines,
    FieldMismatch,
    InputError,
    LambdaOutOfRange,
    LineAtInfinity,
    ParseError,
)
from .plane import (
    ProjLine,
    ProjPoint,
    all_directions,
    format_line,
    format_point,
    incident,
    line_meet,
    slope_of,
)


class PointMultiset:
    """Affine points with positive integer multiplicities."""

    __slots__ = ("field", "_mults")

    def __init__(self, field, entries=()):
        mults = {}
        items = entries.items() if isinstance(entries, dict) else entries
        for key, m in items:
            a, b = key
            field.check(a), field.check(b)
            if not isinstance(m, int) or m < 1:
                raise InputError(f"multiplicity of ({a},{b}) must be a positive integer")
            mults[(a, b)] = mults.get((a, b), 0) + m
        self.field = field
        self._mults = mults

    @classmethod
    def from_points(cls, field, points):
        """Multiset with multiplicity 1 per occurrence of each point."""
        return cls(field, [((a, b), 1) for a, b in points])

    @property
    def size(self):
        return sum(self._mults.values())

    @property
    def support_size(self):
        return len(self._mults)

    def multiplicity(self, a, b):
        return self._mults.get((a, b), 0)

    def items(self):
        """(point, multiplicity) pairs sorted by coordinates."""
        return sorted(self._mults.items())

    def __eq__(self, other):
        return (isinstance(other, PointMultiset)
                and self.field == other.field and self._mults == other._mults)

    def __repr__(self):
        return f"PointMultiset({self.field!r}, size={self.size})"


def parse_points(field, text):
    """Parse the "a b m" line format (m optional, '#' starts a comment)."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ParseError(f"line {lineno}: expected 'a b' or 'a b m', got {raw!r}")
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer field in {raw!r}") from None
        a, b = nums[0], nums[1]
        m = nums[2] if len(nums) == 3 else 1
        if not (0 <= a < field.q and 0 <= b < field.q):
            raise ParseError(f"line {lineno}: coordinates out of range for {field!r}")
        if m < 1:
            raise ParseError(f"line {lineno}: multiplicity must be positive")
        entries.append(((a, b), m))
    return PointMultiset(field, entries)


def dump_points(T):
    """Serialize a multiset to the 'a b m' format, sorted, byte-stable."""
    return "".join(f"{a} {b} {m}\n" for (a, b), m in T.items())


@dataclass(frozen=True)
class RenitentLine:
    line: ProjLine
    alpha: int  # intercept: Y-axis intercept for slopes, x-coordinate for vertical
    t: int      # line count mod p

    def to_json(self):
        return {"line": format_line(self.line), "alpha": self.alpha, "t": self.t}


@dataclass
class DirectionReport:
    direction: ProjPoint
    bound: int                  # the lam used to classify
    m_d: int                    # typical count mod p
    counts: dict                # intercept -> exact line count, all q lines
    renitent: tuple             # RenitentLine entries, ascending intercept

    @property
    def lambda_d(self):
        return len(self.renitent)

    @property
    def sharp(self):
        return self.lambda_d == self.bound

    def to_json(self):
        return {
            "direction": format_point(self.direction),
            "uniform": True,
            "m_d": self.m_d,
            "lambda_d": self.lambda_d,
            "sharp": self.sharp,
            "renitent": [r.to_json() for r in self.renitent],
        }


def line_count(T, line):
    """Number of multiset points on an affine line, with multiplicity."""
    if T.field != line.field:
        raise FieldMismatch("multiset and line use different contexts")
    if line.is_line_at_infinity():
        raise LineAtInfinity("the multiset is affine; [0:0:1] carries no points")
    K = T.field
    a, b, c = line.coords
    total = 0
    for (x, y), m in T._mults.items():
        if K.add(K.add(K.mul(a, x), K.mul(b, y)), c) == 0:
            total += m
    return total


def intercept_profile(T, direction):
    """Nonzero line counts of a parallel class, keyed by intercept."""
    K = T.field
    s = slope_of(direction)
    profile = {}
    for (a, b), m in T._mults.items():
        key = a if s is None else K.sub(b, K.mul(a, s))
        profile[key] = profile.get(key, 0) + m
    return profile


def _class_line(field, slope, alpha):
    if slope is None:
        return ProjLine(field, 1, 0, field.neg(alpha))
    return ProjLine(field, slope, field.neg(1), alpha)


def classify_direction(T, direction, lam):
    """DirectionReport when the direction is (q-lam)-uniform, else None."""
    K = T.field
    if not isinstance(lam, int) or not 0 < lam <= (K.q - 1) // 2:
        raise LambdaOutOfRange(
            f"need 0 < lam <= (q-1)/2 = {(K.q - 1) // 2}, got {lam!r}")
    s = slope_of(direction)  # raises NotADirection off the line at infinity
    profile = intercept_profile(T, direction)
    counts = {t: profile.get(t, 0) for t in K.elements()}
    freq = Counter(c % K.p for c in counts.values())
    typical = [r for r, n in freq.items() if n >= K.q - lam]
    if not typical:
        return None
    m_d = typical[0]  # unique: two residues on q-lam lines each would exceed q
    renitent = tuple(
        RenitentLine(_class_line(K, s, t), t, counts[t] % K.p)
        for t in K.elements() if counts[t] % K.p != m_d)
    return DirectionReport(direction=direction, bound=lam, m_d=m_d,
                           counts=counts, renitent=renitent)


def uniform_directions(T, lam):
    """Reports for every uniform direction, in direction-index order."""
    out = []
    for d in all_directions(T.field):
        report = classify_direction(T, d, lam)
        if report is not None:
            out.append(report)
    return out


def concurrency_point(lines):
    """The common point of the given lines, or None."""
    distinct = []
    for line in lines:
        if line not in distinct:
            distinct.append(line)
    if len(distinct) < 2:
        raise FewerThanTwoLines("need at least two distinct lines")
    candidate = line_meet(distinct[0], distinct[1])
    for line in distinct[2:]:
        if not incident(candidate, line):
            return None
    return candidate
