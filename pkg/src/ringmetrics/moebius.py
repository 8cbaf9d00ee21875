"""Moebius metric in the annulus, punctured disk and unit disk.

In the annulus the supremum over boundary pairs collapses to a maximum of
three parts: the unit-disk hyperbolic distance, its pullback from outside
the inner circle, and a cross term whose boundary pair is parametrised by
a single angle v in [mu, pi].  The cross term is maximised by a 64-point
pre-scan followed by golden-section refinement; both interval endpoints
always participate.

The batch entry points take numpy arrays and are shared with the contour
and verification code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .base_metrics import (ANNULUS_KIND, COINCIDENCE_TOL, Domain,
                           MetricResult, PUNCTURED_DISK, PUNCTURED_KIND,
                           UNIT_DISK, annulus, j_star, rho_disk)
from .errors import (CoincidentPoints, DegenerateCoefficients,
                     EmrPointOutsideDomain, NotCollinear, OutsideDomain,
                     ParameterOutOfRange, RootOutOfRange)
from .geometry import angle_at_origin
from .optimize import INV_PHI
from .tri_ratio import emr, s_annulus, s_punctured

PRESCAN_POINTS = 64
GOLDEN_ITERS = 60
ARCSIN_ERROR_TOL = 1e-9
COLLINEAR_ANGLE_TOL = 1e-12
CHAIN_SLACK = 1e-10


@dataclass(frozen=True)
class CrossCoefficients:
    """Quadratic coefficients behind the stationary angle u(v)."""

    c1: float
    c2: float
    c3: float


@dataclass(frozen=True)
class DeltaAnnulusTrace:
    """Value of the annulus Moebius metric plus the structure of the maximum."""

    value: float
    maximand: str  # "disk" | "exterior" | "cross" | "coincident"
    disk_part: float
    exterior_part: float
    cross_part: float
    mu: float
    v_star: Optional[float] = None
    u_star: Optional[float] = None


@dataclass(frozen=True)
class DeltaEmrBounds:
    lower: float
    upper: float
    conjectural: bool


@dataclass(frozen=True)
class ChainReport:
    """The five chained quantities s/2 <= j* <= th(delta/2) <= 2 j* <= 2 s."""

    s_half: float
    j_star: float
    th_delta_half: float
    two_j_star: float
    two_s: float
    holds: bool
    max_violation: float


@dataclass(frozen=True)
class DistortionReport:
    """Distortion of s and j* under the inversion x -> r x / |x|^2."""

    s_before: float
    s_after: float
    jstar_before: float
    jstar_after: float
    s_ratio: float
    jstar_ratio: float
    s_within_bounds: bool
    jstar_within_bounds: bool


@dataclass(frozen=True)
class ConjectureScanReport:
    """Monotonicity scan of the cross part under midpoint rotation."""

    r: float
    k: float
    q: float
    steps: int
    mu: np.ndarray
    cross_values: np.ndarray
    delta_values: np.ndarray
    max_increment: float
    violation_mu: Optional[float]
    monotone: bool


def cross_coefficients(v: float, absx: float, r: float) -> CrossCoefficients:
    c1, c2, c3 = _coefficients_arrays(np.asarray(v, float), absx, r)
    return CrossCoefficients(float(c1), float(c2), float(c3))


def _coefficients_arrays(v, absx, r):
    sv = np.sin(v)
    cv = np.cos(v)
    a = absx * (1.0 + r * r)
    b = r * (1.0 + absx * absx)
    c1 = a * a + b * b - 2.0 * a * b * cv
    c2 = 4.0 * r * absx * sv * (a - b * cv)
    c3 = -(r * sv * (1.0 - absx * absx)) ** 2
    return c1, c2, c3


def _u_arrays(v, absx, r):
    """Stationary angle u(v) = arcsin of the positive root; vectorised."""
    c1, c2, c3 = _coefficients_arrays(v, absx, r)
    if np.any(c1 < 1e-300):
        raise DegenerateCoefficients("leading coefficient vanished")
    t = (-c2 + np.sqrt(c2 * c2 - 4.0 * c1 * c3)) / (2.0 * c1)
    bad = (t < -ARCSIN_ERROR_TOL) | (t > 1.0 + ARCSIN_ERROR_TOL)
    if np.any(bad):
        raise RootOutOfRange(f"arcsin argument out of range: {np.asarray(t)[bad][:3]}")
    return np.arcsin(np.clip(t, 0.0, 1.0))


def u_of_v(v: float, absx: float, r: float) -> float:
    """Angle u of the outer boundary point e^{-iu} paired with r e^{iv}."""
    if not 0.0 < r < absx < 1.0:
        raise ParameterOutOfRange(f"need 0 < r < |x| < 1, got r={r}, |x|={absx}")
    if not 0.0 <= v <= math.pi + 1e-12:
        raise ParameterOutOfRange(f"need v in [0, pi], got {v}")
    return float(_u_arrays(np.asarray(v, float), absx, r))


def _cross_value(v, absx, absy, mu, r):
    """log(1 + |a, |x|, b, |y| e^{i mu}|) with a = e^{-iu(v)}, b = r e^{iv}."""
    u = _u_arrays(v, absx, r)
    a = np.exp(-1j * u)
    b = r * np.exp(1j * v)
    yy = absy * np.exp(1j * mu)
    num = np.abs(a - b) * np.abs(absx - yy)
    den = np.abs(a - absx) * np.abs(b - yy)
    return np.log1p(num / den)


def _cross_part_sup(absx, absy, mu, r):
    """Supremum of the cross term over v in [mu, pi], vectorised over rows.

    Returns (value, v_star).  The objective can be multimodal near mu = 0,
    so a pre-scan locates the basin before golden-section refinement.
    """
    absx = np.asarray(absx, float)
    lo = np.asarray(mu, float)
    hi = np.full_like(lo, math.pi)
    ks = np.arange(PRESCAN_POINTS)
    grid = lo[..., None] + (hi - lo)[..., None] * ks / (PRESCAN_POINTS - 1)
    vals = _cross_value(grid, absx[..., None], np.asarray(absy, float)[..., None],
                        lo[..., None], r)
    kbest = np.argmax(vals, axis=-1)
    take = np.take_along_axis
    best_f = take(vals, kbest[..., None], -1)[..., 0]
    best_v = take(grid, kbest[..., None], -1)[..., 0]

    a = take(grid, np.maximum(kbest - 1, 0)[..., None], -1)[..., 0]
    b = take(grid, np.minimum(kbest + 1, PRESCAN_POINTS - 1)[..., None], -1)[..., 0]

    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc = _cross_value(c, absx, absy, lo, r)
    fd = _cross_value(d, absx, absy, lo, r)
    for _ in range(GOLDEN_ITERS):
        keep_left = fc > fd  # maximum lies in [a, d]
        b = np.where(keep_left, d, b)
        a = np.where(keep_left, a, c)
        c_new = b - INV_PHI * (b - a)
        d_new = a + INV_PHI * (b - a)
        probe = np.where(keep_left, c_new, d_new)
        fprobe = _cross_value(probe, absx, absy, lo, r)
        # keep_left: old c slides into the d slot; otherwise old d into the c slot
        fc, fd = (np.where(keep_left, fprobe, fd),
                  np.where(keep_left, fc, fprobe))
        c, d = c_new, d_new
    vmid = 0.5 * (a + b)
    fmid = _cross_value(vmid, absx, absy, lo, r)
    improved = fmid > best_f
    best_v = np.where(improved, vmid, best_v)
    best_f = np.maximum(fmid, best_f)
    return best_f, best_v


def _rho_from_polar(ax, ay, mu):
    num = np.abs(ax - ay * np.exp(1j * mu))
    den = np.abs(1.0 - ax * ay * np.exp(-1j * mu))
    return 2.0 * np.arctanh(num / den)


def delta_parts_batch(absx, absy, mu, r):
    """Disk, exterior and cross components for normalised polar data (arrays)."""
    disk = _rho_from_polar(absx, absy, mu)
    ext = _rho_from_polar(r / absx, r / absy, mu)
    cross, v_star = _cross_part_sup(absx, absy, mu, r)
    return disk, ext, cross, v_star


def _normalize_pair(x, y):
    ax = np.abs(x)
    ay = np.abs(y)
    absx = np.maximum(ax, ay)
    absy = np.minimum(ax, ay)
    mu = np.abs(np.angle(np.asarray(x) * np.conjugate(y)))
    return absx, absy, mu


def delta_values(x, y, r: float):
    """Batch Moebius metric in the annulus R(r,1); values only."""
    dom = annulus(r)
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if not (np.all(dom.contains(x)) and np.all(dom.contains(y))):
        raise OutsideDomain(f"points must lie in {dom.describe()}")
    absx, absy, mu = _normalize_pair(x, y)
    coincident = np.abs(x - y) < COINCIDENCE_TOL
    # coincident rows are evaluated at a harmless fixed configuration, then zeroed
    absx_safe = np.where(coincident, (2.0 + r) / 3.0, absx)
    absy_safe = np.where(coincident, (1.0 + 2.0 * r) / 3.0, absy)
    disk, ext, cross, _ = delta_parts_batch(
        absx_safe, absy_safe, np.where(coincident, 0.0, mu), r)
    vals = np.maximum(np.maximum(disk, ext), cross)
    out = np.where(coincident, 0.0, vals)
    return float(out) if np.ndim(out) == 0 else out


def delta_annulus(x: complex, y: complex, r: float) -> DeltaAnnulusTrace:
    """Moebius metric delta_{R(r,1)}(x, y) with the maximising structure."""
    dom = annulus(r)
    if not (dom.contains(x) and dom.contains(y)):
        raise OutsideDomain(f"points must lie in {dom.describe()}")
    if abs(x - y) < COINCIDENCE_TOL:
        return DeltaAnnulusTrace(0.0, "coincident", 0.0, 0.0, 0.0, 0.0)
    if abs(y) > abs(x):
        x, y = y, x
    absx, absy = abs(x), abs(y)
    mu = angle_at_origin(x, y)
    disk, ext, cross, v_star = delta_parts_batch(
        np.asarray(absx), np.asarray(absy), np.asarray(mu), r)
    disk, ext, cross, v_star = float(disk), float(ext), float(cross), float(v_star)
    value = max(disk, ext, cross)
    if cross == value:
        name = "cross"
    elif disk == value:
        name = "disk"
    else:
        name = "exterior"
    u_star = float(_u_arrays(np.asarray(v_star), absx, r))
    return DeltaAnnulusTrace(value, name, disk, ext, cross, mu, v_star, u_star)


def delta_collinear(x: complex, y: complex, r: float) -> float:
    """Closed form of the annulus Moebius metric for points collinear with 0."""
    dom = annulus(r)
    if not (dom.contains(x) and dom.contains(y)):
        raise OutsideDomain(f"points must lie in {dom.describe()}")
    if abs(x - y) < COINCIDENCE_TOL:
        return 0.0
    mu = angle_at_origin(x, y)
    if min(mu, math.pi - mu) > COLLINEAR_ANGLE_TOL:
        raise NotCollinear("points are neither argument-equal nor antipodal")
    ax, ay = max(abs(x), abs(y)), min(abs(x), abs(y))
    if mu < math.pi / 2.0:
        quotients = (
            (ax - ay) / (1.0 - ax * ay),
            r * (ax - ay) / (ax * ay - r * r),
            (ax - ay) * (1.0 - r)
            / (2.0 * (1.0 - ax) * (ay - r) + (ax - ay) * (1.0 - r)),
        )
    else:
        quotients = (
            (ax + ay) / (1.0 + ax * ay),
            r * (ax + ay) / (ax * ay + r * r),
            (ax + ay) * (1.0 + r)
            / (2.0 * (1.0 - ax) * (ay - r) + (ax + ay) * (1.0 + r)),
        )
    return 2.0 * math.atanh(max(quotients))



def delta_punctured(x: complex, y: complex) -> MetricResult:
    """Moebius metric in the punctured unit disk."""
    if not (PUNCTURED_DISK.contains(x) and PUNCTURED_DISK.contains(y)):
        raise OutsideDomain("points must lie in the punctured unit disk")
    if abs(x - y) < COINCIDENCE_TOL:
        return MetricResult(0.0, "coincident", ())
    if abs(y) > abs(x):
        x, y = y, x
    disk = float(rho_disk(x, y))
    punct = math.log1p(abs(x - y) / ((1.0 - abs(x)) * abs(y)))
    if disk >= punct:
        return MetricResult(disk, "disk-part", ())
    return MetricResult(punct, "puncture-part", (x / abs(x), 0.0 + 0.0j))


def delta_disk(x: complex, y: complex) -> float:
    """In the unit disk the Moebius metric equals the hyperbolic metric."""
    if not (UNIT_DISK.contains(x) and UNIT_DISK.contains(y)):
        raise OutsideDomain("points must lie in the unit disk")
    return float(rho_disk(x, y))


def _delta_in(domain: Domain, x: complex, y: complex) -> float:
    if domain.kind == ANNULUS_KIND:
        return delta_annulus(x, y, domain.r).value
    if domain.kind == PUNCTURED_KIND:
        return delta_punctured(x, y).value
    return delta_disk(x, y)


def emr_bounds_delta(domain: Domain, x: complex, y: complex) -> DeltaEmrBounds:
    """Midpoint-rotation bounds delta(x0,y0) <= delta(x,y) <= delta(x1,y1).

    The upper bound in the annulus rests on an open monotonicity conjecture
    and is flagged conjectural; in the punctured disk it is proved.
    """
    if domain.kind not in (ANNULUS_KIND, PUNCTURED_KIND):
        raise ParameterOutOfRange("midpoint-rotation bounds need annulus or punctured disk")
    if not (domain.contains(x) and domain.contains(y)):
        raise OutsideDomain(f"points must lie in {domain.describe()}")
    quad = emr(x, y, domain)
    pts = [quad.x0, quad.y0, quad.x1, quad.y1]
    if quad.x1 is None or not all(bool(domain.contains(p)) for p in pts):
        raise EmrPointOutsideDomain("a rotated point left the domain")
    lower = _delta_in(domain, quad.x0, quad.y0)
    upper = _delta_in(domain, quad.x1, quad.y1)
    return DeltaEmrBounds(lower, upper, conjectural=domain.kind == ANNULUS_KIND)


def conjecture_scan(r: float, k: float, q: float, steps: int) -> ConjectureScanReport:
    """Scan the cross-part supremum along the midpoint rotation angle.

    Evaluates x = q e^{i mu} + k, y = q e^{i(pi+mu)} + k on a `steps`-point
    grid of mu in [0, pi/2] and reports the largest positive increment of
    the cross part (0 for a perfectly decreasing profile).
    """
    if not 0.0 < r < k < 1.0:
        raise ParameterOutOfRange(f"need r < k < 1, got r={r}, k={k}")
    if not 0.0 < q < min(k - r, 1.0 - k):
        raise ParameterOutOfRange(f"need 0 < q < min(k-r, 1-k), got q={q}")
    if steps < 2:
        raise ParameterOutOfRange(f"need steps >= 2, got {steps}")
    mu = np.linspace(0.0, math.pi / 2.0, steps)
    x = k + q * np.exp(1j * mu)
    y = k - q * np.exp(1j * mu)
    absx, absy, mu_pair = _normalize_pair(x, y)
    disk, ext, cross, _ = delta_parts_batch(absx, absy, mu_pair, r)
    delta = np.maximum(np.maximum(disk, ext), cross)
    inc = np.diff(cross)
    worst = float(inc.max()) if inc.size else 0.0
    max_increment = max(0.0, worst)
    violation_mu = float(mu[int(np.argmax(inc)) + 1]) if max_increment > 0.0 else None
    return ConjectureScanReport(r, k, q, steps, mu, cross, delta,
                                max_increment, violation_mu,
                                monotone=max_increment == 0.0)



def inequality_chain(domain: Domain, x: complex, y: complex) -> ChainReport:
    """Evaluate s/2 <= j* <= th(delta/2) <= 2 j* <= 2 s for one pair."""
    if domain.kind == ANNULUS_KIND:
        s = s_annulus(x, y, domain.r).value
    elif domain.kind == PUNCTURED_KIND:
        s = s_punctured(x, y).value
    else:
        raise ParameterOutOfRange("inequality chain needs annulus or punctured disk")
    js = float(j_star(domain, x, y))
    th = math.tanh(_delta_in(domain, x, y) / 2.0)
    chain = (0.5 * s, js, th, 2.0 * js, 2.0 * s)
    viol = max(chain[i] - chain[i + 1] for i in range(4))
    return ChainReport(*chain, holds=viol <= CHAIN_SLACK, max_violation=max(0.0, viol))


def distortion_bounds_check(x: complex, y: complex, r: float) -> DistortionReport:
    """Distortion of s and j* under the ring-preserving inversion f(x) = r x/|x|^2."""
    dom = annulus(r)
    fx = r * x / abs(x) ** 2
    fy = r * y / abs(y) ** 2
    s0 = s_annulus(x, y, r).value
    s1 = s_annulus(fx, fy, r).value
    j0 = float(j_star(dom, x, y))
    j1 = float(j_star(dom, fx, fy))
    rs = s1 / s0 if s0 > 0 else 1.0
    rj = j1 / j0 if j0 > 0 else 1.0
    slack = 1e-12
    return DistortionReport(
        s0, s1, j0, j1, rs, rj,
        s_within_bounds=0.25 - slack <= rs <= 4.0 + slack,
        jstar_within_bounds=0.5 - slack <= rj <= 2.0 + slack,
    )
