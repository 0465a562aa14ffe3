"""Exact planar geometry on pairs of CyclotomicReal.

Points and vectors are plain 2-tuples.  All predicates are decided
exactly through certified sign evaluation; there are no epsilons.
"""

from __future__ import annotations

from .cyclotomic import ZERO, CyclotomicReal

Vec = tuple  # (CyclotomicReal, CyclotomicReal)

ORIGIN = (ZERO, ZERO)


def vadd(a: Vec, b: Vec) -> Vec:
    return (a[0] + b[0], a[1] + b[1])


def vsub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def vneg(a: Vec) -> Vec:
    return (-a[0], -a[1])


def vscale(a: Vec, s) -> Vec:
    return (a[0] * s, a[1] * s)


def cross(a: Vec, b: Vec) -> CyclotomicReal:
    return a[0] * b[1] - a[1] * b[0]


def dot(a: Vec, b: Vec) -> CyclotomicReal:
    return a[0] * b[0] + a[1] * b[1]


def norm2(a: Vec) -> CyclotomicReal:
    return a[0] * a[0] + a[1] * a[1]


def is_zero_vec(a: Vec) -> bool:
    return a[0].is_zero and a[1].is_zero


def veq(a: Vec, b: Vec) -> bool:
    return (a[0] - b[0]).is_zero and (a[1] - b[1]).is_zero


def vkey(a: Vec):
    return (a[0].key(), a[1].key())


def orient(o: Vec, a: Vec, b: Vec) -> int:
    """Sign of the turn o->a->b: 1 ccw, -1 cw, 0 collinear."""
    return cross(vsub(a, o), vsub(b, o)).sign()


def on_segment(p: Vec, a: Vec, b: Vec) -> bool:
    """Is p on the closed segment [a, b]?  Assumes a != b."""
    if orient(a, b, p) != 0:
        return False
    d = vsub(b, a)
    t = dot(vsub(p, a), d)
    return t.sign() >= 0 and (t - norm2(d)).sign() <= 0


def segments_overlap_info(a: Vec, b: Vec, c: Vec, d: Vec) -> str:
    """Classify the intersection of segments [a,b] and [c,d].

    Returns one of: 'disjoint', 'point' (single shared point),
    'overlap' (collinear with a shared sub-segment of positive length).
    """
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    if o1 == o2 == 0:
        # collinear: compare extents along the line
        dir_ab = vsub(b, a)
        ta = dot(vsub(a, a), dir_ab)  # zero
        tb = dot(vsub(b, a), dir_ab)
        tc = dot(vsub(c, a), dir_ab)
        td = dot(vsub(d, a), dir_ab)
        lo1, hi1 = sorted([ta, tb], key=_sort_key)
        lo2, hi2 = sorted([tc, td], key=_sort_key)
        lo = lo1 if (lo1 - lo2).sign() >= 0 else lo2
        hi = hi1 if (hi1 - hi2).sign() <= 0 else hi2
        s = (hi - lo).sign()
        if s > 0:
            return "overlap"
        if s == 0:
            return "point"
        return "disjoint"
    if o1 != o2 and o3 != o4 and o1 * o2 <= 0 and o3 * o4 <= 0:
        return "point"
    if o1 == 0 and on_segment(c, a, b):
        return "point"
    if o2 == 0 and on_segment(d, a, b):
        return "point"
    if o3 == 0 and on_segment(a, c, d):
        return "point"
    if o4 == 0 and on_segment(b, c, d):
        return "point"
    return "disjoint"


class _SortWrap:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return (self.v - other.v).sign() < 0


def _sort_key(v):
    return _SortWrap(v)


def point_in_polygon(p: Vec, boundary: list[Vec]) -> bool:
    """Winding test for p strictly off the boundary of a simple polygon.

    Uses the half-open crossing rule on the y coordinate, which is
    exact-safe when p is not on the boundary.
    """
    wn = 0
    k = len(boundary)
    for i in range(k):
        a = boundary[i]
        b = boundary[(i + 1) % k]
        ay = (a[1] - p[1]).sign()
        by = (b[1] - p[1]).sign()
        if ay <= 0 < by:
            if orient(a, b, p) > 0:
                wn += 1
        elif by <= 0 < ay:
            if orient(a, b, p) < 0:
                wn -= 1
    return wn != 0


def polygon_area_twice(boundary: list[Vec]) -> CyclotomicReal:
    """Twice the signed area of the polygon (positive if ccw)."""
    total = ZERO
    k = len(boundary)
    for i in range(k):
        total = total + cross(boundary[i], boundary[(i + 1) % k])
    return total
