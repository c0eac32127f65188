"""AG(2,q) inside PG(2,q): points, lines, directions, collineations.

Affine points embed as (a : b : 1); the line at infinity is [0:0:1] and
carries the directions (1 : d : 0) (slope d) and (0 : 1 : 0) (vertical).
Homogeneous triples are stored canonically with the last nonzero
coordinate scaled to 1, so equality is plain tuple equality.  Lines of
slope s through intercept t are [s : -1 : t]; vertical lines x = t are
[1 : 0 : -t]; collineations act on points by M.v and on lines by the
inverse transpose.
"""

from .errors import (
    CollineationFailure,
    EqualPoints,
    FieldMismatch,
    InputError,
    NotADirection,
    ParseError,
    SingularMatrix,
)


def _canonical(field, coords):
    coords = tuple(field.check(c) for c in coords)
    if len(coords) != 3:
        raise InputError("expected three homogeneous coordinates")
    for i in (2, 1, 0):
        if coords[i]:
            inv = field.inv(coords[i])
            return tuple(field.mul(c, inv) for c in coords)
    raise InputError("projective coordinates cannot all be zero")


class ProjPoint:
    __slots__ = ("field", "coords")

    def __init__(self, field, x, y, z):
        self.field = field
        self.coords = _canonical(field, (x, y, z))

    @classmethod
    def affine(cls, field, a, b):
        return cls(field, a, b, 1)

    def is_at_infinity(self):
        return self.coords[2] == 0

    def affine_coords(self):
        if self.is_at_infinity():
            raise InputError(f"{self!r} is at infinity")
        return self.coords[0], self.coords[1]

    def __eq__(self, other):
        return (isinstance(other, ProjPoint)
                and self.field == other.field and self.coords == other.coords)

    def __hash__(self):
        return hash((self.field, self.coords))

    def __repr__(self):
        x, y, z = self.coords
        return f"({x}:{y}:{z})"


class ProjLine:
    __slots__ = ("field", "coords")

    def __init__(self, field, a, b, c):
        self.field = field
        self.coords = _canonical(field, (a, b, c))

    def is_line_at_infinity(self):
        return self.coords[0] == 0 and self.coords[1] == 0

    def __eq__(self, other):
        return (isinstance(other, ProjLine)
                and self.field == other.field and self.coords == other.coords)

    def __hash__(self):
        return hash((self.field, self.coords, "line"))

    def __repr__(self):
        a, b, c = self.coords
        return f"[{a}:{b}:{c}]"


def incident(point, line):
    """True when the point lies on the line (dot product vanishes)."""
    if point.field != line.field:
        raise FieldMismatch("point and line use different contexts")
    K = point.field
    acc = 0
    for pc, lc in zip(point.coords, line.coords):
        acc = K.add(acc, K.mul(pc, lc))
    return acc == 0


def _cross(K, u, v):
    return (
        K.sub(K.mul(u[1], v[2]), K.mul(u[2], v[1])),
        K.sub(K.mul(u[2], v[0]), K.mul(u[0], v[2])),
        K.sub(K.mul(u[0], v[1]), K.mul(u[1], v[0])),
    )


def line_through(p, q):
    """The unique line joining two distinct points."""
    if p.field != q.field:
        raise FieldMismatch("points use different contexts")
    if p == q:
        raise EqualPoints(f"no unique line through {p!r} twice")
    a, b, c = _cross(p.field, p.coords, q.coords)
    return ProjLine(p.field, a, b, c)


def line_meet(l1, l2):
    """The unique point common to two distinct lines."""
    if l1.field != l2.field:
        raise FieldMismatch("lines use different contexts")
    if l1 == l2:
        raise InputError(f"lines {l1!r} and {l2!r} are equal")
    x, y, z = _cross(l1.field, l1.coords, l2.coords)
    return ProjPoint(l1.field, x, y, z)


# -- directions ----------------------------------------------------------


def slope_direction(field, d):
    return ProjPoint(field, 1, d, 0)


def vertical_direction(field):
    return ProjPoint(field, 0, 1, 0)


def line_at_infinity(field):
    return ProjLine(field, 0, 0, 1)


def slope_of(direction):
    """Slope element of a direction, or None for the vertical direction."""
    if not direction.is_at_infinity():
        raise NotADirection(f"{direction!r} is not at infinity")
    x, y, _ = direction.coords
    if x == 0:
        return None
    return direction.field.div(y, x)


def direction_index(direction):
    """Slope index for (1:d:0), q for the vertical direction."""
    s = slope_of(direction)
    return direction.field.q if s is None else s


def all_directions(field):
    """The q+1 directions, slopes 0..q-1 first, vertical last."""
    out = [slope_direction(field, d) for d in field.elements()]
    out.append(vertical_direction(field))
    return out


def parallel_class(field, direction):
    """The q affine lines through a direction, in intercept order.

    Slope s gives [s:-1:t] for t = 0..q-1 (y = sx + t); the vertical
    class gives [1:0:-t] (x = t).
    """
    s = slope_of(direction)
    if s is None:
        return [ProjLine(field, 1, 0, field.neg(t)) for t in field.elements()]
    m = field.neg(1)
    return [ProjLine(field, s, m, t) for t in field.elements()]


# -- collineations -------------------------------------------------------


def _mat_det(K, m):
    t0 = K.mul(m[0][0], K.sub(K.mul(m[1][1], m[2][2]), K.mul(m[1][2], m[2][1])))
    t1 = K.mul(m[0][1], K.sub(K.mul(m[1][0], m[2][2]), K.mul(m[1][2], m[2][0])))
    t2 = K.mul(m[0][2], K.sub(K.mul(m[1][0], m[2][1]), K.mul(m[1][1], m[2][0])))
    return K.add(K.sub(t0, t1), t2)


def _mat_adjugate(K, m):
    def cof(i, j):
        r = [x for x in (0, 1, 2) if x != i]
        c = [x for x in (0, 1, 2) if x != j]
        minor = K.sub(K.mul(m[r[0]][c[0]], m[r[1]][c[1]]),
                      K.mul(m[r[0]][c[1]], m[r[1]][c[0]]))
        return minor if (i + j) % 2 == 0 else K.neg(minor)

    return tuple(tuple(cof(j, i) for j in range(3)) for i in range(3))


def _mat_vec(K, m, v):
    return tuple(
        K.add(K.add(K.mul(row[0], v[0]), K.mul(row[1], v[1])), K.mul(row[2], v[2]))
        for row in m)


class Collineation:
    """Projectivity of PG(2,q) given by an invertible 3x3 matrix."""

    __slots__ = ("field", "matrix", "_adj")

    def __init__(self, field, matrix):
        matrix = tuple(tuple(field.check(c) for c in row) for row in matrix)
        if len(matrix) != 3 or any(len(r) != 3 for r in matrix):
            raise InputError("collineation matrix must be 3x3")
        if _mat_det(field, matrix) == 0:
            raise SingularMatrix("collineation matrix is singular")
        self.field = field
        self.matrix = matrix
        self._adj = _mat_adjugate(field, matrix)

    def apply_point(self, point):
        if point.field != self.field:
            raise FieldMismatch("point uses a different context")
        x, y, z = _mat_vec(self.field, self.matrix, point.coords)
        return ProjPoint(self.field, x, y, z)

    def apply_line(self, line):
        """Lines map by the inverse transpose (adjugate transpose works
        projectively since it differs by the determinant scalar)."""
        if line.field != self.field:
            raise FieldMismatch("line uses a different context")
        adj_t = tuple(tuple(self._adj[j][i] for j in range(3)) for i in range(3))
        a, b, c = _mat_vec(self.field, adj_t, line.coords)
        return ProjLine(self.field, a, b, c)

    def inverse(self):
        return Collineation(self.field, self._adj)

    def __repr__(self):
        return f"Collineation({self.matrix})"


def apply_collineation(obj, coll):
    """Transform a ProjPoint or ProjLine."""
    if isinstance(obj, ProjPoint):
        return coll.apply_point(obj)
    if isinstance(obj, ProjLine):
        return coll.apply_line(obj)
    raise InputError(f"cannot transform {type(obj).__name__}")


def frame_collineation(field, avoid, target):
    """Frame change used by the point-index argument.

    Returns a collineation that maps the line at infinity onto the
    Y-axis [1:0:0], maps the affine point `target` to some (1:y0:0) on
    the new line at infinity, and keeps (0:1:0) out of the image of the
    `avoid` directions.  Deterministic: the spare direction is the first
    one (by direction index) outside `avoid`, and the middle matrix row
    is the first vector (by index) that makes the matrix invertible
    without sending the spare direction off (0:1:0).

    The frame exists only for affine `target` (a point at infinity would
    have to land on both the new Y-axis and the new line at infinity,
    which pins it to (0:1:0)) and only when some direction is spare.
    """
    avoid = set(avoid)
    for d in avoid:
        if not d.is_at_infinity():
            raise NotADirection(f"{d!r} is not a direction")
    if target.field != field:
        raise FieldMismatch("target point uses a different context")
    if target.is_at_infinity():
        raise CollineationFailure(
            "no frame maps a point at infinity onto the new line at infinity")
    spare = None
    for d in all_directions(field):
        if d not in avoid:
            spare = d
            break
    if spare is None:
        raise CollineationFailure("every direction must stay off (0:1:0)")
    row1 = (0, 0, 1)
    row3 = line_through(spare, target).coords
    q = field.q
    for idx in range(q ** 3):
        row2 = (idx % q, idx // q % q, idx // (q * q))
        matrix = (row1, row2, row3)
        if _mat_det(field, matrix) == 0:
            continue
        coll = Collineation(field, matrix)
        if coll.apply_point(spare) != vertical_direction(field):
            continue
        bad = vertical_direction(field)
        if any(coll.apply_point(d) == bad for d in avoid):  # pragma: no cover
            continue
        return coll
    raise CollineationFailure("exhausted the search space")  # pragma: no cover


# -- text formats --------------------------------------------------------


def format_point(point):
    """"a,b" for affine points, "inf:d" / "inf:vert" for directions."""
    if point.is_at_infinity():
        s = slope_of(point)
        return "inf:vert" if s is None else f"inf:{s}"
    a, b = point.affine_coords()
    return f"{a},{b}"


def parse_point(field, text):
    text = text.strip()
    if text == "inf:vert":
        return vertical_direction(field)
    if text.startswith("inf:"):
        try:
            d = int(text[4:])
        except ValueError:
            raise ParseError(f"bad direction {text!r}") from None
        if not 0 <= d < field.q:
            raise ParseError(f"slope {d} out of range for {field!r}")
        return slope_direction(field, d)
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"bad point {text!r} (want 'a,b' or 'inf:d')")
    try:
        a, b = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"bad point {text!r}") from None
    if not (0 <= a < field.q and 0 <= b < field.q):
        raise ParseError(f"point {text!r} out of range for {field!r}")
    return ProjPoint.affine(field, a, b)


def format_line(line):
    a, b, c = line.coords
    return f"[{a}:{b}:{c}]"
