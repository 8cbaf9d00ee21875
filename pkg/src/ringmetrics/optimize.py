"""Scalar golden-section search used by the solvers and the oracle."""

import math

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def golden_min(f, a, b, tol=1e-12, max_iter=200):
    """Minimise a unimodal f on [a, b]; returns (x, f(x)).

    Endpoints are evaluated too, so a minimum sitting exactly on the
    boundary of the bracket is never missed.
    """
    if b < a:
        a, b = b, a
    fa, fb = f(a), f(b)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        fx = f(x)
        return min(((fa, a), (fb, b), (fx, x)))[::-1]
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    fc, fd = f(c), f(d)
    n = min(max_iter, max(1, int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))))
    for _ in range(n):
        if fc < fd:
            b, d, fd = d, c, fc
            h *= INV_PHI
            c = a + INV_PHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h *= INV_PHI
            d = a + INV_PHI * h
            fd = f(d)
    candidates = [(fa, a), (fb, b), (fc, c), (fd, d)]
    fbest, xbest = min(candidates)
    return xbest, fbest


def golden_max(f, a, b, tol=1e-12, max_iter=200):
    """Maximise f on [a, b]; returns (x, f(x))."""
    x, fneg = golden_min(lambda t: -f(t), a, b, tol=tol, max_iter=max_iter)
    return x, -fneg
