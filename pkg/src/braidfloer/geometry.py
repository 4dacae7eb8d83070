"""
Exact rational planar primitives.

Points are pairs of fractions.  Everything here is exact: intersections,
orientation tests, and point-in-polygon all use integer/rational
arithmetic, so tangencies and collinearity are detected, never guessed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Point = tuple[Fraction, Fraction]


def pt(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def add(a: Point, b: Point) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def scale(a: Point, s) -> Point:
    s = Fraction(s)
    return (a[0] * s, a[1] * s)


def cross(a: Point, b: Point) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def dot(a: Point, b: Point) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def orient(a: Point, b: Point, c: Point) -> Fraction:
    """Twice the signed area of triangle abc; >0 iff ccw."""
    return cross(sub(b, a), sub(c, a))


def dist2(a: Point, b: Point) -> Fraction:
    d = sub(a, b)
    return d[0] * d[0] + d[1] * d[1]


def lerp(a: Point, b: Point, t: Fraction) -> Point:
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def on_segment(a: Point, b: Point, p: Point) -> bool:
    """p lies on the closed segment ab (exact)."""
    if orient(a, b, p) != 0:
        return False
    lo_x, hi_x = min(a[0], b[0]), max(a[0], b[0])
    lo_y, hi_y = min(a[1], b[1]), max(a[1], b[1])
    return lo_x <= p[0] <= hi_x and lo_y <= p[1] <= hi_y


def seg_intersect(a: Point, b: Point, c: Point, d: Point) -> Optional[tuple[Fraction, Fraction, Point]]:
    """
    Proper or improper intersection of segments ab and cd.

    Returns (t, u, point) with point = a + t*(b-a) = c + u*(d-c) and
    t, u in [0, 1], or None if the segments do not meet.  Collinear
    overlapping segments return None here; callers that care about
    degeneracy must test `segments_overlap` first.
    """
    r = sub(b, a)
    s = sub(d, c)
    denom = cross(r, s)
    qp = sub(c, a)
    if denom == 0:
        return None
    t = cross(qp, s) / denom
    u = cross(qp, r) / denom
    if 0 <= t <= 1 and 0 <= u <= 1:
        return (t, u, lerp(a, b, t))
    return None


def line_intersect(a: Point, b: Point, c: Point, d: Point) -> Optional[Point]:
    """Intersection of the infinite lines ab and cd, or None if parallel."""
    r = sub(b, a)
    s = sub(d, c)
    denom = cross(r, s)
    if denom == 0:
        return None
    t = cross(sub(c, a), s) / denom
    return lerp(a, b, t)


def segments_overlap(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True if ab and cd are collinear and share more than one point."""
    if cross(sub(b, a), sub(d, c)) != 0:
        return False
    if orient(a, b, c) != 0:
        return False
    # collinear: check 1-d interval overlap with positive length
    r = sub(b, a)
    if r == (0, 0):
        return False
    t_c = dot(sub(c, a), r)
    t_d = dot(sub(d, a), r)
    lo, hi = min(t_c, t_d), max(t_c, t_d)
    return lo < dot(r, r) and hi > 0


class Polyline:
    """An embedded open polyline with rational vertices."""

    __slots__ = ("points",)

    def __init__(self, points: Sequence[Point]):
        self.points = [(Fraction(p[0]), Fraction(p[1])) for p in points]
        if len(self.points) < 2:
            raise ValueError("polyline needs at least 2 points")

    def __repr__(self):
        return f"Polyline({self.points[0]}..{self.points[-1]}, {len(self.points)} pts)"

    @property
    def start(self) -> Point:
        return self.points[0]

    @property
    def end(self) -> Point:
        return self.points[-1]

    def segments(self) -> Iterable[tuple[Point, Point]]:
        return zip(self.points, self.points[1:])

    def reversed(self) -> "Polyline":
        return Polyline(list(reversed(self.points)))

    def simplified(self) -> "Polyline":
        """Drop repeated points and interior vertices on straight runs."""
        pts = [self.points[0]]
        for p in self.points[1:]:
            if p != pts[-1]:
                pts.append(p)
        if len(pts) < 2:
            raise ValueError("degenerate polyline")
        simp = [pts[0]]
        for i in range(1, len(pts) - 1):
            if orient(simp[-1], pts[i], pts[i + 1]) != 0:
                simp.append(pts[i])
            elif not on_segment(simp[-1], pts[i + 1], pts[i]):
                # collinear but a turn-back; keep it (embeddedness will flag)
                simp.append(pts[i])
        simp.append(pts[-1])
        return Polyline(simp)

    def is_embedded(self) -> bool:
        """No self-intersections (shared endpoints of adjacent segments ok)."""
        segs = list(self.segments())
        n = len(segs)
        for i in range(n):
            a, b = segs[i]
            for j in range(i + 1, n):
                c, d = segs[j]
                if segments_overlap(a, b, c, d):
                    return False
                hit = seg_intersect(a, b, c, d)
                if hit is None:
                    continue
                t, u, _ = hit
                if j == i + 1:
                    if not (t == 1 and u == 0):
                        return False
                else:
                    return False
        return True


def polyline_intersections(p: Polyline, q: Polyline) -> list[tuple[tuple[int, Fraction], tuple[int, Fraction], Point]]:
    """
    All intersection points of two embedded polylines.

    Returns a list of ((i, t), (j, u), point): point lies on segment i of p
    at parameter t and on segment j of q at parameter u.  Duplicates from
    shared segment endpoints inside a polyline are merged.
    """
    found: dict[Point, tuple[tuple[int, Fraction], tuple[int, Fraction]]] = {}
    psegs = list(p.segments())
    qsegs = list(q.segments())
    for i, (a, b) in enumerate(psegs):
        for j, (c, d) in enumerate(qsegs):
            if segments_overlap(a, b, c, d):
                from braidfloer.errors import DegeneratePosition

                raise DegeneratePosition("collinear overlap between arcs")
            hit = seg_intersect(a, b, c, d)
            if hit is None:
                continue
            t, u, x = hit
            if x not in found:
                found[x] = ((i, t), (j, u))
    out = [(pi, qi, x) for x, (pi, qi) in found.items()]
    out.sort(key=lambda rec: (rec[0][0], rec[0][1]))
    return out


def point_in_polygon(point: Point, ring: Sequence[Point]) -> bool:
    """
    Exact point-in-closed-polygon (ring given as a cycle of vertices,
    last edge closing back to the first).  Points exactly on the
    boundary count as inside.
    """
    n = len(ring)
    # boundary check
    for k in range(n):
        if on_segment(ring[k], ring[(k + 1) % n], point):
            return True
    inside = False
    x, y = point
    for k in range(n):
        ax, ay = ring[k]
        bx, by = ring[(k + 1) % n]
        if (ay > y) != (by > y):
            # x coordinate of the crossing of edge with horizontal line
            xc = ax + (bx - ax) * (y - ay) / (by - ay)
            if xc > x:
                inside = not inside
    return inside


def signed_area2(ring: Sequence[Point]) -> Fraction:
    """Twice the signed area of a closed polygonal cycle."""
    total = Fraction(0)
    n = len(ring)
    for k in range(n):
        a = ring[k]
        b = ring[(k + 1) % n]
        total += cross(a, b)
    return total


def angle_key(v: Point):
    """
    Sort key for direction vectors by ccw angle from the positive x axis,
    exact.  Vectors must be nonzero.
    """
    x, y = v
    if x == 0 and y == 0:
        raise ValueError("zero direction")
    if y > 0 or (y == 0 and x > 0):
        half = 0
    else:
        half = 1

    class _K:
        __slots__ = ("half", "vec")

        def __init__(self, half, vec):
            self.half = half
            self.vec = vec

        def __lt__(self, other):
            if self.half != other.half:
                return self.half < other.half
            return cross(self.vec, other.vec) > 0

        def __eq__(self, other):
            return self.half == other.half and cross(self.vec, other.vec) == 0

    return _K(half, (x, y))
