"""Triangular ratio metric in the annulus and punctured disk.

The central primitive finds the point z on a circle S^1(0, j) minimising
|x-z| + |z-y|.  By the law of reflection the minimiser satisfies a quartic
with complex coefficients; its roots are taken from the eigenvalues of the
companion matrix, polished with one Newton step, filtered back onto the
circle and compared against the two radial boundary candidates.
All batch helpers accept numpy arrays and are used by the contour module.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .base_metrics import (ANNULUS_KIND, COINCIDENCE_TOL, EXTERIOR_KIND,
                           Domain, MetricResult, PUNCTURED_DISK,
                           UNIT_DISK_KIND, annulus)
from .errors import (BallNotContained, CoincidentPoints, NoAdmissibleRoot,
                     NotCollinear, OutsideDomain, ParameterOutOfRange)
from .geometry import distance_origin_to_segment, segment_meets_closed_disk
from .optimize import golden_min

CIRCLE_FILTER_TOL = 1e-8
COLLINEAR_TOL = 1e-12
FALLBACK_SAMPLES = 4096


@dataclass(frozen=True)
class QuarticSolution:
    """Roots of the reflection quartic and the chosen minimiser on the circle."""

    roots: Tuple[complex, ...]
    chosen: complex
    sum: float


class _AttainsOne:
    """Tag for an upper bound that is only a supremum, approached but not attained."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ATTAINS_ONE"


ATTAINS_ONE = _AttainsOne()


@dataclass(frozen=True)
class EmrQuadruple:
    """Euclidean midpoint rotation of a point pair.

    x0, y0 rotate the diameter perpendicular to the midpoint direction
    (origin-equidistant pair); x1, y1 rotate it onto the ray through the
    midpoint (origin-collinear pair, undefined if the midpoint is 0).
    """

    x0: complex
    y0: complex
    x1: Optional[complex]
    y1: Optional[complex]
    k: complex
    q: float
    x1y1_inside: bool


def _quartic_coefficients(x, y, j):
    """Coefficients [z^4, z^3, z^2, z^1, z^0] of the reflection quartic."""
    xb, yb = np.conjugate(x), np.conjugate(y)
    j2 = j * j
    j4 = j2 * j2
    return (xb * yb, -j2 * (xb + yb), np.zeros_like(xb), j4 * (x + y), -j4 * (x * y))


def _reflection_candidates_batch(x, y, j):
    """Best circle point and sum |x-z|+|z-y| for each row of x, y (arrays).

    Returns (roots, chosen, sums).  Rows where no quartic root survives the
    circle filter are redone by dense sampling plus golden-section.
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    j = np.broadcast_to(np.asarray(j, dtype=float), x.shape).copy()
    c4, c3, _, c1, c0 = _quartic_coefficients(x, y, j)

    n = x.shape[0]
    comp = np.zeros((n, 4, 4), dtype=complex)
    comp[:, 0, 0] = -c3 / c4
    comp[:, 0, 2] = -c1 / c4
    comp[:, 0, 3] = -c0 / c4
    comp[:, 1, 0] = 1.0
    comp[:, 2, 1] = 1.0
    comp[:, 3, 2] = 1.0
    roots = np.linalg.eigvals(comp)

    # one Newton step per root sharpens eigenvalues near double roots
    p = ((c4[:, None] * roots + c3[:, None]) * roots ** 2 + c1[:, None]) * roots + c0[:, None]
    dp = (4.0 * c4[:, None] * roots + 3.0 * c3[:, None]) * roots ** 2 + c1[:, None]
    step = np.where(np.abs(dp) > 0.0, p / np.where(dp == 0.0, 1.0, dp), 0.0)
    roots = roots - step

    on_circle = np.abs(np.abs(roots) - j[:, None]) <= CIRCLE_FILTER_TOL
    absroots = np.abs(roots)
    safe = np.where(absroots == 0.0, 1.0, absroots)
    projected = j[:, None] * roots / safe

    sums = np.abs(x[:, None] - projected) + np.abs(projected - y[:, None])
    sums = np.where(on_circle, sums, np.inf)

    # radial safety-net candidates never win strictly but guard numerics
    zx = j * x / np.abs(x)
    zy = j * y / np.abs(y)
    cand = np.concatenate([projected, zx[:, None], zy[:, None]], axis=1)
    cand_sums = np.concatenate(
        [sums,
         (np.abs(x - zx) + np.abs(zx - y))[:, None],
         (np.abs(x - zy) + np.abs(zy - y))[:, None]], axis=1)

    pick = np.argmin(cand_sums, axis=1)
    rows = np.arange(n)
    chosen = cand[rows, pick]
    best = cand_sums[rows, pick]

    no_root = ~np.any(on_circle, axis=1)
    for i in np.flatnonzero(no_root):
        z, s = _sampled_reflection_point(complex(x[i]), complex(y[i]), float(j[i]))
        if s < best[i]:
            chosen[i] = z
            best[i] = s
    return roots, chosen, best


def _sampled_reflection_point(x, y, j):
    """Dense-sampling fallback: 4096 circle points, then golden-section."""
    theta = 2.0 * np.pi * np.arange(FALLBACK_SAMPLES) / FALLBACK_SAMPLES
    z = j * np.exp(1j * theta)
    sums = np.abs(x - z) + np.abs(z - y)
    k = int(np.argmin(sums))
    width = 2.0 * np.pi / FALLBACK_SAMPLES

    def f(t):
        w = j * cmath.exp(1j * t)
        return abs(x - w) + abs(w - y)

    t, s = golden_min(f, theta[k] - width, theta[k] + width)
    return j * cmath.exp(1j * t), s


def optimal_reflection_point(x: complex, y: complex, j: float, side: str) -> QuarticSolution:
    """Point z on S^1(0, j) minimising |x-z| + |z-y|.

    side is "inside" (both points inside the circle) or "outside" (both
    outside, segment [x,y] disjoint from the closed disk).
    """
    if abs(x - y) < COINCIDENCE_TOL:
        raise CoincidentPoints("reflection point needs two distinct points")
    if x == 0 or y == 0:
        raise NoAdmissibleRoot("points must differ from the origin")
    if side == "inside":
        if not (abs(x) < j and abs(y) < j):
            raise NoAdmissibleRoot("inside solve needs |x|, |y| < j")
    elif side == "outside":
        if not (abs(x) > j and abs(y) > j):
            raise NoAdmissibleRoot("outside solve needs |x|, |y| > j")
        if segment_meets_closed_disk(x, y, j):
            raise NoAdmissibleRoot("segment [x,y] meets the closed disk; "
                                   "the minimiser is a segment point, not a reflection")
    else:
        raise ParameterOutOfRange(f"side must be 'inside' or 'outside', got {side!r}")

    roots, chosen, best = _reflection_candidates_batch(
        np.array([x]), np.array([y]), np.array([float(j)]))
    return QuarticSolution(tuple(roots[0]), complex(chosen[0]), float(best[0]))


def _segment_hit_point(x, y, r):
    """A point of [x,y] on S^1(0,r), given that the segment meets the closed disk."""
    d = y - x
    a = d.real * d.real + d.imag * d.imag
    if a == 0.0:
        return r * x / abs(x) if x != 0 else complex(r, 0.0)
    b = 2.0 * (x.real * d.real + x.imag * d.imag)
    c = x.real * x.real + x.imag * x.imag - r * r
    disc = b * b - 4.0 * a * c
    if disc < 0.0:  # tangency within rounding
        t = -b / (2.0 * a)
    else:
        t = (-b - math.sqrt(disc)) / (2.0 * a)
    t = min(1.0, max(0.0, t))
    z = x + t * d
    return r * z / abs(z) if z != 0 else complex(r, 0.0)


def s_values(x, y, r: float):
    """Batch triangular ratio metric in the annulus R(r,1); no diagnostics."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    vals = np.zeros(x.shape, dtype=float)
    dist = np.abs(x - y)
    coincident = dist < COINCIDENCE_TOL

    d = y - x
    dd = (d * np.conjugate(d)).real
    t = np.where(dd > 0.0, -((x * np.conjugate(d)).real) / np.where(dd == 0.0, 1.0, dd), 0.0)
    t = np.clip(t, 0.0, 1.0)
    seg_dist = np.abs(x + t * d)
    hits = (seg_dist <= r) & ~coincident
    vals[hits] = 1.0

    solve = ~hits & ~coincident
    if np.any(solve):
        xs, ys = x[solve], y[solve]
        _, _, sum_outer = _reflection_candidates_batch(xs, ys, np.ones(xs.shape))
        _, _, sum_inner = _reflection_candidates_batch(xs, ys, np.full(xs.shape, r))
        vals[solve] = dist[solve] * np.maximum(1.0 / sum_outer, 1.0 / sum_inner)
    return vals


def s_annulus(x: complex, y: complex, r: float) -> MetricResult:
    """Triangular ratio metric s_{R(r,1)}(x, y) with branch diagnostics."""
    dom = annulus(r)
    if not (dom.contains(x) and dom.contains(y)):
        raise OutsideDomain(f"points must lie in {dom.describe()}")
    if abs(x - y) < COINCIDENCE_TOL:
        return MetricResult(0.0, "coincident", ())
    if segment_meets_closed_disk(x, y, r):
        return MetricResult(1.0, "segment-hits-inner", (_segment_hit_point(x, y, r),))
    outer = optimal_reflection_point(x, y, 1.0, "inside")
    inner = optimal_reflection_point(x, y, r, "outside")
    v_outer = abs(x - y) / outer.sum
    v_inner = abs(x - y) / inner.sum
    if v_outer >= v_inner:
        return MetricResult(v_outer, "outer-circle", (outer.chosen, inner.chosen))
    return MetricResult(v_inner, "inner-circle", (outer.chosen, inner.chosen))


def s_collinear(x: complex, y: complex, r: float) -> float:
    """Closed form for points on a common ray from the origin."""
    dom = annulus(r)
    if not (dom.contains(x) and dom.contains(y)):
        raise OutsideDomain(f"points must lie in {dom.describe()}")
    if abs(x - y) < COINCIDENCE_TOL:
        return 0.0
    phi = cmath.phase(x * y.conjugate())
    if abs(math.sin(phi)) > COLLINEAR_TOL or math.cos(phi) <= 0.0:
        raise NotCollinear("s_collinear needs arg(x) = arg(y)")
    ssum = abs(x) + abs(y)
    return abs(x - y) / min(2.0 - ssum, ssum - 2.0 * r)


def s_equidistant(h: float, mu: float, r: float) -> float:
    """Closed form for |x| = |y| = h with angle mu between the rays."""
    if not (0.0 < r < h < 1.0):
        raise ParameterOutOfRange(f"need r < h < 1, got r={r}, h={h}")
    if not (0.0 < mu < math.pi):
        raise ParameterOutOfRange(f"need 0 < mu < pi, got {mu}")
    return _s_equidistant_unchecked(h, mu, r)


def _s_equidistant_unchecked(h, mu, r):
    c = math.cos(mu / 2.0)
    s = math.sin(mu / 2.0)
    if c < r / h:
        return 1.0
    ring = h * s / math.sqrt(h * h + r * r - 2.0 * h * r * c)
    if c <= h:
        return max(h, ring)
    if c <= (1.0 + r) / (2.0 * h):
        return ring
    return h * s / math.sqrt(1.0 + h * h - 2.0 * h * c)


def s_conjugate_disk(x: complex) -> float:
    """s in the unit disk between x and its conjugate, for Im x > 0."""
    if abs(x) >= 1.0:
        raise OutsideDomain("point must lie in the unit disk")
    if x.imag <= 0.0:
        raise ParameterOutOfRange("s_conjugate_disk needs Im x > 0")
    h, k = x.real, x.imag
    if abs(x - 0.5) > 0.5:
        return abs(x)
    return k / math.sqrt((1.0 - h) ** 2 + k * k)


def s_punctured(x: complex, y: complex) -> MetricResult:
    """Triangular ratio metric in the punctured unit disk."""
    if not (PUNCTURED_DISK.contains(x) and PUNCTURED_DISK.contains(y)):
        raise OutsideDomain("points must lie in the punctured unit disk")
    if abs(x - y) < COINCIDENCE_TOL:
        return MetricResult(0.0, "coincident", ())
    disk = optimal_reflection_point(x, y, 1.0, "inside")
    v_disk = abs(x - y) / disk.sum
    v_punct = abs(x - y) / (abs(x) + abs(y))
    if v_disk >= v_punct:
        return MetricResult(v_disk, "disk-part", (disk.chosen, 0.0 + 0.0j))
    return MetricResult(v_punct, "puncture-part", (disk.chosen, 0.0 + 0.0j))


def emr(x: complex, y: complex, domain: Optional[Domain] = None) -> EmrQuadruple:
    """Euclidean midpoint rotation of x, y.

    x0, y0 are always defined.  x1, y1 exist only when the midpoint is not
    the origin; x1y1_inside reports whether the rotated closed disk stays in
    `domain` (equivalently both x1, y1 inside and the ball clear of the hole).
    """
    if abs(x - y) < COINCIDENCE_TOL:
        raise CoincidentPoints("midpoint rotation needs distinct points")
    k = (x + y) / 2.0
    q = abs(x - k)
    if k == 0:
        # pair is already a diameter through the origin; collinear rotation undefined
        return EmrQuadruple(x, y, None, None, k, q, False)
    u = k / abs(k)
    x0 = k + q * 1j * u
    y0 = k - q * 1j * u
    x1 = (abs(k) + q) * u
    y1 = (abs(k) - q) * u
    inside = abs(k) > q
    if inside and domain is not None:
        inside = bool(domain.contains(x1)) and bool(domain.contains(y1))
    return EmrQuadruple(x0, y0, x1, y1, k, q, inside)


def emr_bounds_s(x: complex, y: complex, r: float) -> Tuple[float, Union[float, _AttainsOne]]:
    """Sandwich bounds s(x0,y0) <= s(x,y) <= s(x1,y1) from midpoint rotation.

    The upper bound is the ATTAINS_ONE tag when x1, y1 leave the annulus
    (the supremum tends to 1 but is not attained).
    """
    dom = annulus(r)
    if not (dom.contains(x) and dom.contains(y)):
        raise OutsideDomain(f"points must lie in {dom.describe()}")
    quad = emr(x, y, dom)
    if quad.k == 0:
        lower = 1.0  # x0, y0 antipodal: the segment crosses the inner disk
    else:
        h = abs(quad.x0)
        mu0 = 2.0 * math.atan2(quad.q, abs(quad.k))
        lower = _s_equidistant_unchecked(h, mu0, r) if mu0 < math.pi else 1.0
    if not quad.x1y1_inside:
        return lower, ATTAINS_ONE
    return lower, s_collinear(quad.x1, quad.y1, r)


def s_ball_diameter(k: complex, q: float, d: Domain) -> float:
    """s-diameter q / (q + dist) of the closed ball B(k, q) inside d."""
    if q <= 0.0:
        raise ParameterOutOfRange(f"ball radius must be positive, got {q}")
    a = abs(k)
    if d.kind == ANNULUS_KIND:
        dist = min(a - q - d.r, 1.0 - a - q)
    elif d.kind == UNIT_DISK_KIND:
        dist = 1.0 - a - q
    elif d.kind == EXTERIOR_KIND:
        dist = a - q - d.r
    else:
        dist = min(a - q, 1.0 - a - q)
    if dist <= 0.0:
        raise BallNotContained(f"closed ball B({k}, {q}) is not inside {d.describe()}")
    return q / (q + dist)


def reflection_partner(x: complex, u: float, r: float, R: float) -> complex:
    """Partner y of x such that z = r e^{iu} bisects the angle XZY.

    Construction: reflect x over the line through 0 and z, then walk from z
    towards the reflected point by the factor R > 0.
    """
    if x == 0:
        raise ParameterOutOfRange("x must differ from the origin")
    if R <= 0.0 or r <= 0.0:
        raise ParameterOutOfRange("r and R must be positive")
    z = r * cmath.exp(1j * u)
    x_reflected = abs(x) * cmath.exp(1j * (2.0 * u - cmath.phase(x)))
    return z + R * (x_reflected - z)
