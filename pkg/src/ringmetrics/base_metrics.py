"""Domains and the closed-form elementary metrics (hyperbolic, j, j*).

All metric functions accept either complex scalars or numpy arrays of
complex values and broadcast like numpy ufuncs.  Scalars in, float out.
Domain membership is strict: boundary points are outside, no snapping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import OutsideDomain, ParameterOutOfRange

UNIT_DISK_KIND = "disk"
EXTERIOR_KIND = "exterior"
ANNULUS_KIND = "annulus"
PUNCTURED_KIND = "punctured"

# below this separation every metric returns exactly 0 to avoid cancellation noise
COINCIDENCE_TOL = 1e-15


@dataclass(frozen=True)
class Domain:
    """One of the four supported plane domains.

    kind      "disk" | "exterior" | "annulus" | "punctured"
    r         inner radius for "annulus" (0 < r < 1), disk radius for "exterior" (r > 0)
    """

    kind: str
    r: Optional[float] = None

    def __post_init__(self):
        if self.kind not in (UNIT_DISK_KIND, EXTERIOR_KIND, ANNULUS_KIND, PUNCTURED_KIND):
            raise ParameterOutOfRange(f"unknown domain kind {self.kind!r}")
        if self.kind == ANNULUS_KIND:
            if self.r is None or not 0.0 < self.r < 1.0:
                raise ParameterOutOfRange(f"annulus needs 0 < r < 1, got {self.r}")
        elif self.kind == EXTERIOR_KIND:
            if self.r is None or self.r <= 0.0:
                raise ParameterOutOfRange(f"exterior disk needs r > 0, got {self.r}")
        elif self.r is not None:
            raise ParameterOutOfRange(f"domain {self.kind!r} takes no parameter")

    def contains(self, x):
        """Strict membership test; works elementwise on arrays."""
        a = np.abs(x)
        if self.kind == UNIT_DISK_KIND:
            return a < 1.0
        if self.kind == EXTERIOR_KIND:
            return a > self.r
        if self.kind == ANNULUS_KIND:
            return (a > self.r) & (a < 1.0)
        return (a > 0.0) & (a < 1.0)

    def boundary_distance(self, x):
        """Euclidean distance to the boundary; raises OutsideDomain off the domain."""
        if not np.all(self.contains(x)):
            raise OutsideDomain(f"point outside {self.describe()}")
        a = np.abs(x)
        if self.kind == UNIT_DISK_KIND:
            d = 1.0 - a
        elif self.kind == EXTERIOR_KIND:
            d = a - self.r
        elif self.kind == ANNULUS_KIND:
            d = np.minimum(a - self.r, 1.0 - a)
        else:
            d = np.minimum(a, 1.0 - a)
        return float(d) if np.isscalar(x) or np.ndim(d) == 0 else d

    def describe(self) -> str:
        if self.kind == ANNULUS_KIND:
            return f"annulus R({self.r}, 1)"
        if self.kind == EXTERIOR_KIND:
            return f"exterior of the disk of radius {self.r}"
        if self.kind == PUNCTURED_KIND:
            return "punctured unit disk"
        return "unit disk"


UNIT_DISK = Domain(UNIT_DISK_KIND)
PUNCTURED_DISK = Domain(PUNCTURED_KIND)


def annulus(r: float) -> Domain:
    return Domain(ANNULUS_KIND, r)


def exterior_disk(r: float) -> Domain:
    return Domain(EXTERIOR_KIND, r)


@dataclass(frozen=True)
class MetricResult:
    """A metric value together with diagnostics about which case produced it."""

    value: float
    active_branch: str
    witnesses: tuple = field(default_factory=tuple)

    def __float__(self):
        return self.value


def _zero_snap(dist, value):
    """Return exactly 0 where the two inputs coincide to COINCIDENCE_TOL."""
    out = np.where(dist < COINCIDENCE_TOL, 0.0, value)
    return float(out) if np.ndim(out) == 0 else out


def rho_disk(x, y):
    """Hyperbolic distance in the unit disk, 2 artanh |(x-y)/(1 - x conj(y))|."""
    ax, ay = np.abs(x), np.abs(y)
    if np.any(ax >= 1.0) or np.any(ay >= 1.0):
        raise OutsideDomain("rho_disk needs both points in the unit disk")
    num = np.abs(np.asarray(x) - np.asarray(y))
    den = np.abs(1.0 - np.asarray(x) * np.conjugate(y))
    with np.errstate(divide="ignore", invalid="ignore"):
        val = 2.0 * np.arctanh(np.where(num < COINCIDENCE_TOL, 0.0, num / den))
    return _zero_snap(num, val)


def rho_exterior(x, y, r: float):
    """Hyperbolic-type distance outside the disk of radius r, pulled back
    through the inversion z -> r z / |z|^2 into the unit disk."""
    ax, ay = np.abs(x), np.abs(y)
    if np.any(ax <= r) or np.any(ay <= r):
        raise OutsideDomain("rho_exterior needs both points outside the disk")
    fx = r * np.asarray(x) / (ax * ax)
    fy = r * np.asarray(y) / (ay * ay)
    return rho_disk(fx, fy)


def j_metric(d: Domain, x, y):
    """Distance ratio metric log(1 + |x-y| / min(d(x), d(y)))."""
    dx = d.boundary_distance(x)
    dy = d.boundary_distance(y)
    dist = np.abs(np.asarray(x) - np.asarray(y))
    val = np.log1p(dist / np.minimum(dx, dy))
    return _zero_snap(dist, val)


def j_star(d: Domain, x, y):
    """j*-metric |x-y| / (|x-y| + 2 min(d(x), d(y))), i.e. tanh(j/2); values in [0, 1)."""
    dx = d.boundary_distance(x)
    dy = d.boundary_distance(y)
    dist = np.abs(np.asarray(x) - np.asarray(y))
    val = dist / (dist + 2.0 * np.minimum(dx, dy))
    return _zero_snap(dist, val)
