"""Planar primitives on the extended complex plane.

Points are Python complex numbers; the point at infinity is the module
singleton ``INFINITY``.  Everything here is exact scalar arithmetic, no
tolerances except where a function documents one.
"""

from __future__ import annotations

import cmath
import math
from typing import Union

from .errors import DegenerateCrossRatio, OriginArgument, ZeroNormal


class _Infinity:
    """The point at infinity of the Riemann sphere.  Compares equal only to itself."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()

ExtendedPoint = Union[complex, _Infinity]


def is_infinity(p: ExtendedPoint) -> bool:
    return p is INFINITY


def chordal(x: ExtendedPoint, y: ExtendedPoint) -> float:
    """Spherical (chordal) distance between two extended points.

    |x-y| / (sqrt(1+|x|^2) sqrt(1+|y|^2)) for finite points,
    1 / sqrt(1+|x|^2) if exactly one point is infinite, 0 if both are.
    """
    xinf, yinf = is_infinity(x), is_infinity(y)
    if xinf and yinf:
        return 0.0
    if xinf:
        return 1.0 / math.sqrt(1.0 + abs(y) ** 2)
    if yinf:
        return 1.0 / math.sqrt(1.0 + abs(x) ** 2)
    return abs(x - y) / (math.sqrt(1.0 + abs(x) ** 2) * math.sqrt(1.0 + abs(y) ** 2))


def _points_equal(p: ExtendedPoint, q: ExtendedPoint) -> bool:
    if is_infinity(p) or is_infinity(q):
        return p is q
    return p == q


def cross_ratio(a: ExtendedPoint, b: ExtendedPoint, c: ExtendedPoint,
                d: ExtendedPoint) -> float:
    """Absolute cross-ratio |a,b,c,d| = q(a,c) q(b,d) / (q(a,b) q(c,d)).

    For four finite points this equals |a-c||b-d| / (|a-b||c-d|); with one
    argument at infinity the corresponding limit of that quotient is used,
    which is exact (the chordal normalisation factors cancel).

    Raises DegenerateCrossRatio when a=b or c=d.
    """
    if _points_equal(a, b) or _points_equal(c, d):
        raise DegenerateCrossRatio("cross_ratio undefined for a=b or c=d")
    infs = [is_infinity(p) for p in (a, b, c, d)]
    n_inf = sum(infs)
    if n_inf == 0:
        return abs(a - c) * abs(b - d) / (abs(a - b) * abs(c - d))
    if n_inf == 1:
        # limit of the Euclidean form: factors containing the infinite point cancel
        if infs[0]:
            return abs(b - d) / abs(c - d)
        if infs[1]:
            return abs(a - c) / abs(c - d)
        if infs[2]:
            return abs(b - d) / abs(a - b)
        return abs(a - c) / abs(a - b)
    # two or more infinite arguments: fall back to the chordal expression,
    # zeros (a=c or b=d) come out as an exact 0
    qac, qbd = chordal(a, c), chordal(b, d)
    qab, qcd = chordal(a, b), chordal(c, d)
    return qac * qbd / (qab * qcd)


def invert_in_circle(x: ExtendedPoint, center: complex, radius: float) -> ExtendedPoint:
    """Inversion in the circle S^1(center, radius); an involution swapping center and INFINITY."""
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    if is_infinity(x):
        return center
    if x == center:
        return INFINITY
    w = x - center
    return center + radius * radius * w / (w.real * w.real + w.imag * w.imag)


def reflect_in_line(x: ExtendedPoint, u: complex, t: float = 0.0) -> ExtendedPoint:
    """Reflection in the line {p : p.u = t} with normal u; fixes the line and INFINITY."""
    if u == 0:
        raise ZeroNormal("reflection line needs a nonzero normal")
    if is_infinity(x):
        return INFINITY
    dot = x.real * u.real + x.imag * u.imag
    return x - 2.0 * (dot - t) * u / (u.real * u.real + u.imag * u.imag)


def distance_origin_to_segment(x: complex, y: complex) -> float:
    """Minimum of |p| over p on the closed segment [x, y]."""
    d = y - x
    dd = d.real * d.real + d.imag * d.imag
    if dd == 0.0:
        return abs(x)
    # parameter of the orthogonal projection of 0 onto the segment's line
    t = -(x.real * d.real + x.imag * d.imag) / dd
    t = min(1.0, max(0.0, t))
    return abs(x + t * d)


def segment_meets_closed_disk(x: complex, y: complex, r: float) -> bool:
    """True iff the segment [x, y] meets the closed disk of radius r about 0."""
    return distance_origin_to_segment(x, y) <= r


def angle_at_origin(x: complex, y: complex) -> float:
    """Angle between the rays from 0 through x and y, normalised to [0, pi]."""
    if x == 0 or y == 0:
        raise OriginArgument("angle at origin undefined for the origin itself")
    # phase of x * conj(y) lies in (-pi, pi] and pi is returned as pi
    return abs(cmath.phase(x * y.conjugate()))
