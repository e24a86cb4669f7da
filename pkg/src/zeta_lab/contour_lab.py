"""Numerical contour pieces for F(u) = e^(su)/(e^(e^u)+1).

The closed contour runs along the real axis from -infinity to L = ln(2 N pi),
up the vertical leg u = L + iy (0 <= y <= 2 pi) and back along Im u = 2 pi.
The two horizontal legs combine into I1 = (1 - e^(2 i s pi)) int F(x) dx and
the vertical leg is

    I2 = i (2 pi N)^s int_0^{2 pi} h(y) dy,   h(y) = e^(isy)/(e^(2 pi N e^(iy)) + 1).

Cauchy's theorem gives I1 + I2 = 2 pi i S_N.  I0 replaces h by the step
function equal to e^(isy) on [pi/2, 3pi/2]; the corrections near the two
transition points are of second order in 1/N and proportional to eps_v.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf, mpc

from .errors import BoundViolation, DomainError, PoleError
from .expansions import (
    DEFAULT_MODE,
    epsilon_v_mp,
    odd_power_sums_mp,
    sn_prefactor_mp,
)
from .numeric_core import NumericContext, StripPoint, as_mpc, gamma_mp, mp_real
from .quadrature import integrate, panel_points
from .zeta_reference import zeta_mp

HALF_PI = "half_pi"
THREE_HALF_PI = "three_half_pi"
POLE_GUARD = mpf("1e-8")
MAX_I2_N = 512
MAX_CAUCHY_N = 16


@dataclass(frozen=True)
class ContourBreakdown:
    s: StripPoint
    N: int
    i1_closed: mpc
    i1_numeric: mpc
    i2_numeric: mpc
    i0_closed: mpc
    d_i2_half: mpc
    d_i2_threehalf: mpc
    i2_model: mpc
    sn: mpc
    cauchy_residual: mpf


def _check_n(N, low=1, high=None):
    if int(N) != N or N < low:
        raise DomainError(f"N must be an integer >= {low}")
    if high is not None and N > high:
        raise DomainError(f"N must be <= {high} for direct quadrature")


# ---------------------------------------------------------------- integrand


def _nearest_pole_distance(u: mpc):
    """Distance from u to the pole lattice ln(pi(2n-1)) + i pi(1/2+m)."""
    pi = mpmath.pi
    m0 = int(mpmath.floor(u.imag / pi - mpf(1) / 2))
    x = mpmath.exp(u.real) / pi  # approximately 2n-1
    n0 = max(1, int(mpmath.floor((x + 1) / 2)))
    best = None
    for n in (n0 - 1, n0, n0 + 1):
        if n < 1:
            continue
        for m in (m0, m0 + 1):
            p = mpc(mpmath.ln(pi * (2 * n - 1)), pi * (m + mpf(1) / 2))
            d = abs(u - p)
            best = d if best is None or d < best else best
    return best


def integrand_mp(u: mpc, s: mpc):
    return mpmath.exp(s * u) / (mpmath.exp(mpmath.exp(u)) + 1)


def integrand_f(u, s: StripPoint, ctx: NumericContext) -> mpc:
    """F(u) = e^(su)/(e^(e^u)+1), refusing points within 1e-8 of a pole."""
    with ctx.working():
        u = mpc(as_mpc(u))
        if _nearest_pole_distance(u) < POLE_GUARD:
            raise PoleError(f"u = {mpmath.nstr(u, 15)} is within 1e-8 of a pole of F")
        r = integrand_mp(u, s.mpc())
    return ctx.round(r)


# ---------------------------------------------------------------- I1


def default_lower_cut(s: StripPoint, ctx: NumericContext) -> mpf:
    return -mpf(ctx.precision_digits) * mpmath.ln(10) / mp_real(s.sigma)


def i1_closed_mp(s: mpc):
    """-2i e^(isπ) sin(sπ)(1 - 2^(1-s)) Γ(s) ζ(s)."""
    pi = mpmath.pi
    return (mpc(0, -2) * mpmath.exp(mpc(0, 1) * s * pi) * mpmath.sin(s * pi)
            * (1 - mpmath.power(2, 1 - s)) * gamma_mp(s) * zeta_mp(s))


def real_axis_integral_mp(s: mpc, lower, upper):
    """int_lower^upper F(x) dx on panels short enough for the e^(itx) oscillation."""
    t = abs(s.imag)
    width = min(mpf(2), mpf(1) / max(t, mpf(1)) * 4)
    pts = panel_points(lower, upper, forced=[mpf(0)], max_width=width)
    tol = mpf(10) ** (-mp.dps + 8)
    val, _ = integrate(lambda x: integrand_mp(mpc(x), s), pts, tol=tol)
    return val


def i1_eval(N: int, s: StripPoint, ctx: NumericContext, lower_cut=None):
    """(closed, numeric) values of the horizontal-leg contribution I1."""
    _check_n(N)
    with ctx.working():
        z = s.mpc()
        cut = default_lower_cut(s, ctx) if lower_cut is None else mp_real(lower_cut)
        if cut > default_lower_cut(s, ctx) + mpf("1e-20"):
            raise DomainError("lower_cut too large: the neglected left tail would exceed rounding")
        L = mpmath.ln(2 * N * mpmath.pi)
        closed = i1_closed_mp(z)
        numeric = (1 - mpmath.exp(2j * z * mpmath.pi)) * real_axis_integral_mp(z, cut, L)
    return ctx.round(closed), ctx.round(numeric)


# ---------------------------------------------------------------- I2 and I0


def h_mp(y, s: mpc, N: int):
    return mpmath.exp(mpc(0, 1) * s * y) / (mpmath.exp(2 * mpmath.pi * N * mpmath.expj(y)) + 1)


def i2_points(N: int, lo=None, hi=None):
    pi = mpmath.pi
    lo = mpf(0) if lo is None else lo
    hi = 2 * pi if hi is None else hi
    forced = []
    for c in (pi / 2, 3 * pi / 2):
        forced += [c - mpf(5) / N, c, c + mpf(5) / N]
    forced.append(pi)
    return panel_points(lo, hi, forced=forced, max_width=min(pi / 8, mpf(1) / N))


def vertical_integral_mp(s: mpc, N: int, lo=None, hi=None, subtract_step=False):
    """int_lo^hi h(y) dy (optionally h - e^(isy) on (pi/2, 3pi/2))."""
    pi = mpmath.pi
    if subtract_step:
        def f(y):
            v = h_mp(y, s, N)
            if pi / 2 < y < 3 * pi / 2:
                v -= mpmath.exp(mpc(0, 1) * s * y)
            return v
    else:
        def f(y):
            return h_mp(y, s, N)
    tol = mpf(10) ** (-mp.dps + 8)
    val, _ = integrate(f, i2_points(N, lo, hi), tol=tol)
    return val


def i2_quadrature(N: int, s: StripPoint, ctx: NumericContext) -> mpc:
    """I2 = i (2 pi N)^s int_0^{2pi} h(y) dy by panelled quadrature."""
    _check_n(N, 1, MAX_I2_N)
    with ctx.working():
        z = s.mpc()
        r = mpc(0, 1) * mpmath.power(2 * mpmath.pi * N, z) * vertical_integral_mp(z, N)
    return ctx.round(r)


def i0_closed_mp(N: int, s: mpc):
    half = mpmath.exp(mpc(0, 1) * s * mpmath.pi / 2)
    return mpmath.power(2 * mpmath.pi * N, s) * (half**3 - half) / s


def i0_closed(N: int, s: StripPoint, ctx: NumericContext) -> mpc:
    """(2 pi N)^s (e^(3 i s pi/2) - e^(i s pi/2))/s."""
    _check_n(N)
    with ctx.working():
        r = i0_closed_mp(N, s.mpc())
    return ctx.round(r)


def delta_i2_mp(N: int, s: mpc, which: str, mode: str):
    eps = epsilon_v_mp(s, mpmath.ln(N), mode)
    lead = mpc(0, 1) * mpmath.power(2 * mpmath.pi * N, s)
    core = mpc(0, 1) * eps * (s - 1) / mpf(N) ** 2
    if which == HALF_PI:
        return lead * mpmath.exp(mpc(0, 1) * s * mpmath.pi / 2) * core
    if which == THREE_HALF_PI:
        return lead * mpmath.exp(mpc(0, 3) * s * mpmath.pi / 2) * (-core)
    raise DomainError(f"unknown transition point {which!r}")


def delta_i2(N: int, s: StripPoint, which: str, mode: str, ctx: NumericContext) -> mpc:
    """Second-order correction of I2 relative to I0 at pi/2 or 3pi/2."""
    _check_n(N, 2)
    with ctx.working():
        r = delta_i2_mp(N, s.mpc(), which, mode)
    return ctx.round(r)


def i2_model(N: int, s: StripPoint, mode: str, ctx: NumericContext) -> mpc:
    _check_n(N, 2)
    with ctx.working():
        z = s.mpc()
        r = i0_closed_mp(N, z) + delta_i2_mp(N, z, HALF_PI, mode) + delta_i2_mp(N, z, THREE_HALF_PI, mode)
    return ctx.round(r)


# ---------------------------------------------------------------- Cauchy check


def cauchy_check(N: int, s: StripPoint, ctx: NumericContext, mode: str = DEFAULT_MODE) -> ContourBreakdown:
    """All contour pieces and |I1 + I2 - 2 pi i S_N| from direct quadrature."""
    _check_n(N, 1, MAX_CAUCHY_N)
    with ctx.working():
        z = s.mpc()
        L = mpmath.ln(2 * N * mpmath.pi)
        i1c = i1_closed_mp(z)
        i1n = (1 - mpmath.exp(2j * z * mpmath.pi)) * real_axis_integral_mp(z, default_lower_cut(s, ctx), L)
        i2n = mpc(0, 1) * mpmath.power(2 * mpmath.pi * N, z) * vertical_integral_mp(z, N)
        i0 = i0_closed_mp(N, z)
        if N >= 2:
            dh = delta_i2_mp(N, z, HALF_PI, mode)
            dt = delta_i2_mp(N, z, THREE_HALF_PI, mode)
        else:
            # ln N = 0: the transition-width argument does not apply at N = 1
            dh = dt = mpc(0)
        sn = sn_prefactor_mp(z) * odd_power_sums_mp([N], [z - 1], ctx.summation_order)[0][0]
        residual = abs(i1n + i2n - 2j * mpmath.pi * sn)
        model = i0 + dh + dt
    r = ctx.round
    return ContourBreakdown(s, N, r(i1c), r(i1n), r(i2n), r(i0), r(dh), r(dt),
                            r(model), r(sn), r(residual))


# ---------------------------------------------------------------- outside-interval error


def outside_interval_bound(N: int, s: StripPoint, ctx: NumericContext) -> mpf:
    """1/2 (2 pi N)^sigma e^(2 pi |t|) / N^5."""
    with ctx.working():
        sig = mp_real(s.sigma)
        r = (2 * mpmath.pi * N) ** sig * mpmath.exp(2 * mpmath.pi * abs(mp_real(s.t))) / (2 * mpf(N) ** 5)
    return ctx.round(r)


def outside_interval_value_mp(N: int, s: mpc):
    pi = mpmath.pi
    delta = mpmath.ln(N) / N
    left = vertical_integral_mp(s, N, mpf(0), pi / 2 - delta)
    right = vertical_integral_mp(s, N, pi / 2 + delta, pi, subtract_step=True)
    return abs(mpc(0, 1) * mpmath.power(2 * pi * N, s) * (left + right))


def outside_interval_error(N: int, s: StripPoint, ctx: NumericContext) -> mpf:
    """|i(2pi N)^s (int_0^{pi/2-d} h + int_{pi/2+d}^{pi} (h - e^(isy)))|, d = ln N / N.

    This is what the pi/2 correction leaves out by integrating only over
    |y - pi/2| <= d.  Raises BoundViolation if it exceeds
    outside_interval_bound.
    """
    _check_n(N, 5, MAX_I2_N)
    with ctx.working():
        value = outside_interval_value_mp(N, s.mpc())
    bound = outside_interval_bound(N, s, ctx)
    if value >= bound:
        raise BoundViolation(f"outside-interval error {mpmath.nstr(value, 5)} >= bound {mpmath.nstr(bound, 5)}")
    return ctx.round(value)


# ---------------------------------------------------------------- second-order structure


@dataclass(frozen=True)
class SecondOrderFit:
    s: StripPoint
    Ns: tuple
    c1: mpc
    c2: mpc
    c2_predicted: mpc
    fit_residual: mpf
    c1_stderr: mpf


def second_order_fit(s: StripPoint, ctx: NumericContext, Ns=(8, 16, 32, 64)) -> SecondOrderFit:
    """Least-squares fit of (I2 - I0)/N^s to c1/N + c2/N^2.

    The predicted c2 is the N-independent part of the two transition
    corrections, -eps (s-1)(2 pi)^s (e^(i s pi/2) - e^(3 i s pi/2)) with the
    limiting eps = -1/24.
    """
    Ns = tuple(int(N) for N in Ns)
    with ctx.working():
        z = s.mpc()
        rows = []
        rhs = []
        for N in Ns:
            i2 = mpc(0, 1) * mpmath.power(2 * mpmath.pi * N, z) * vertical_integral_mp(z, N)
            d = (i2 - i0_closed_mp(N, z)) / mpmath.power(N, z)
            rows.append([mpf(1) / N, mpf(1) / N**2])
            rhs.append(d)
        A = mpmath.matrix(rows)
        b = mpmath.matrix(rhs)
        # normal equations; A is real so A^T A is real symmetric
        At = A.T
        coef = mpmath.lu_solve(At * A, At * b)
        c1, c2 = coef[0], coef[1]
        resid = mpmath.norm(A * coef - b)
        # standard error of c1 from the residual scatter (the fit noise)
        dof = max(1, len(Ns) - 2)
        cov11 = mpmath.inverse(At * A)[0, 0]
        c1_err = mpmath.sqrt(resid**2 / dof * cov11)
        pi = mpmath.pi
        half = mpmath.exp(mpc(0, 1) * z * pi / 2)
        pred = (z - 1) * mpmath.power(2 * pi, z) * (half - half**3) / 24
    r = ctx.round
    return SecondOrderFit(s, Ns, r(mpc(c1)), r(mpc(c2)), r(pred), r(mpf(resid)), r(mpf(c1_err)))
