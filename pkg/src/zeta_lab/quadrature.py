"""Panelled Gauss-Legendre quadrature on top of mpmath.quad.

Each panel is integrated by mpmath with increasing Gauss-Legendre degree until
its own error estimate settles; panels are summed in their given order, so the
result is deterministic.  Callers choose the panel layout (forced breakpoints
plus a maximum panel width), which is where all the problem knowledge lives.
"""

from __future__ import annotations

import mpmath
from mpmath import mp, mpf

from .errors import QuadratureError


def panel_points(a, b, forced=(), max_width=None):
    """Sorted breakpoints in [a, b]: forced points inside, then uniform splits."""
    a = mpf(a)
    b = mpf(b)
    pts = sorted({a, b} | {mpf(p) for p in forced if a < p < b})
    if max_width is None:
        return pts
    out = [pts[0]]
    for lo, hi in zip(pts, pts[1:]):
        n = max(1, int(mpmath.ceil((hi - lo) / max_width)))
        step = (hi - lo) / n
        out.extend(lo + step * k for k in range(1, n))
        out.append(hi)
    return out


def integrate(f, points, tol=None, maxdegree=None):
    """Integrate f over consecutive panels; returns (value, error estimate).

    Raises QuadratureError when the summed panel error estimate exceeds tol.
    """
    if tol is None:
        tol = mpf(10) ** (-mp.dps + 5)
    if maxdegree is None:
        maxdegree = 10
    total = mpmath.mpc(0)
    err = mpf(0)
    for lo, hi in zip(points, points[1:]):
        v, e = mpmath.quad(f, [lo, hi], method="gauss-legendre", error=True, maxdegree=maxdegree)
        total += v
        err += e
    if err > tol:
        raise QuadratureError(f"quadrature error estimate {mpmath.nstr(err, 3)} exceeds {mpmath.nstr(tol, 3)}")
    return total, err
