"""Independent reference values of zeta(s) in the critical strip.

The primary evaluator is Euler-Maclaurin summation; the secondary one is the
alternating (eta) series accelerated with Borwein's Chebyshev weights.  Neither
uses the truncated two-sided expansions studied elsewhere in the package, so
both serve as ground truth for them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
from mpmath import mp, mpf, mpc

from .errors import BudgetError
from .numeric_core import NumericContext, StripPoint, gamma_mp
from .summation import power_sums

EULER_MACLAURIN = "euler_maclaurin"
ETA_ACCELERATED = "eta_accelerated"

MAX_CUTOFF = 200_000


@dataclass(frozen=True)
class ZetaValue:
    value: mpc
    method: str
    certified_digits: int


@lru_cache(maxsize=64)
def _bernoulli_ratios(count: int, prec: int):
    """B_{2k}/(2k)! for k = 1..count."""
    with mp.workprec(prec):
        return tuple(mpmath.bernoulli(2 * k) / mpmath.factorial(2 * k) for k in range(1, count + 1))


def zeta_em_mp(s: mpc, cutoff: int | None = None):
    """Euler-Maclaurin zeta at the current precision.

    Returns (value, absolute error estimate).  The truncation estimate is the
    first omitted correction times |s+2K+1|/(sigma+2K+1).
    """
    digits = mp.dps
    t = abs(s.imag)
    sigma = s.real
    M = cutoff or max(10, int(math.ceil(float(t))) + digits)
    kmax = 2 * digits + 20
    while True:
        eps = mpf(10) ** (-digits - 2)
        head = power_sums(1, 1, [M - 1], [-s])[0][0] if M > 1 else mpc(0)
        Mf = mpf(M)
        Ms = mpmath.power(Mf, -s)
        total = head + Mf * Ms / (s - 1) + Ms / 2
        ratios = _bernoulli_ratios(kmax, mp.prec)
        poch = s  # s (s+1) ... (s+2k-2)
        Mpow = Ms / Mf  # M^(-s-2k+1), k = 1
        inv_M2 = 1 / (Mf * Mf)
        previous = None
        converged = False
        for k in range(1, kmax + 1):
            term = ratios[k - 1] * poch * Mpow
            mag = abs(term)
            if previous is not None and mag > previous:
                break  # asymptotic series began to diverge
            total += term
            if mag <= eps * abs(total):
                nxt = abs(ratios[k] * poch * (s + 2 * k - 1) * (s + 2 * k) * Mpow * inv_M2) if k < kmax else mag
                bound = nxt * abs(s + 2 * k + 1) / (sigma + 2 * k + 1)
                converged = True
                break
            previous = mag
            poch *= (s + 2 * k - 1) * (s + 2 * k)
            Mpow *= inv_M2
        if converged:
            scale = mpmath.power(Mf, 1 - sigma) / (1 - sigma) + 1
            rounding = scale * mpf(10) ** (-digits) * 4
            return total, bound + rounding
        M *= 2
        if M > MAX_CUTOFF:
            raise BudgetError(f"Euler-Maclaurin cutoff exceeded {MAX_CUTOFF} terms")


def _borwein_weights(n: int):
    """Partial sums d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!) as integers."""
    d = []
    acc = 0
    for i in range(n + 1):
        val = n * math.factorial(n + i - 1) * 4**i // (math.factorial(n - i) * math.factorial(2 * i))
        acc += val
        d.append(acc)
    return d


def zeta_eta_mp(s: mpc):
    """Zeta from the accelerated alternating series at the current precision.

    Returns (value, condition factor).  The caller is expected to have raised
    the precision by the e^(pi|t|/2) cancellation of the alternating sum.
    """
    digits = mp.dps
    t = float(abs(s.imag))
    # error <= 3 (1+2|t|) e^(pi|t|/2) / ((3+sqrt 8)^n |Gamma(s)|)
    mag = digits + t * math.pi / 2 / math.log(10) + math.log10(1 + 2 * t) + 2
    n = int(math.ceil(mag / math.log10(3 + math.sqrt(8)))) + 1
    d = _borwein_weights(n)
    dn = d[n]
    acc = mpc(0)
    for k in range(n):
        w = d[k] - dn
        term = w * mpmath.power(k + 1, -s)
        acc = acc - term if k & 1 else acc + term
    eta = -acc / dn
    denom = 1 - mpmath.power(2, 1 - s)
    return eta / denom, max(mpf(1), 1 / abs(denom))


def _certified(ctx: NumericContext, value, abs_err) -> int:
    if abs_err == 0:
        return ctx.precision_digits
    if value == 0:
        return 0
    rel = abs_err / abs(value)
    return min(ctx.precision_digits, int(mpmath.floor(-mpmath.log10(rel))))


def zeta_ref(s: StripPoint, ctx: NumericContext, method: str = EULER_MACLAURIN) -> ZetaValue:
    """Reference zeta(s) for s in the open strip.

    The Euler-Maclaurin path raises its working precision once if cancellation
    (|zeta| small relative to the summands) leaves fewer than
    precision - guard certified digits; within 10^-precision of a zero no
    relative accuracy is possible and the reported certified_digits says so.
    """
    if method == ETA_ACCELERATED:
        t = float(abs(s.t))
        extra = int(math.ceil(t * math.pi / 2 / math.log(10))) + 5
        with ctx.working(extra):
            z, cond = zeta_eta_mp(s.mpc())
            cert = ctx.precision_digits - ctx.guard_digits - int(mpmath.ceil(mpmath.log10(cond)))
        return ZetaValue(ctx.round(z), ETA_ACCELERATED, cert)
    if method != EULER_MACLAURIN:
        raise ValueError(f"unknown method {method!r}")
    extra = 0
    for _ in range(2):
        with ctx.working(extra):
            z, err = zeta_em_mp(s.mpc())
            cert = _certified(ctx, z, err)
            deficit = ctx.precision_digits - cert
            if deficit <= 0 or extra:
                break
            extra = min(deficit + 5, ctx.precision_digits)
    return ZetaValue(ctx.round(z), EULER_MACLAURIN, cert)


def zeta_mp(s: mpc):
    """Euler-Maclaurin zeta at the current precision, value only."""
    return zeta_em_mp(s)[0]


def functional_eq_rhs_mp(s: mpc):
    """2^s pi^(s-1) sin(s pi/2) Gamma(1-s) zeta(1-s) at the current precision."""
    pi = mpmath.pi
    return (mpmath.power(2, s) * mpmath.power(pi, s - 1) * mpmath.sin(s * pi / 2)
            * gamma_mp(1 - s) * zeta_mp(1 - s))


def functional_eq_rhs(s: StripPoint, ctx: NumericContext) -> mpc:
    with ctx.working():
        r = functional_eq_rhs_mp(s.mpc())
    return ctx.round(r)


def eta_partial(s: StripPoint, terms: int, ctx: NumericContext) -> mpc:
    """Unaccelerated partial sum of the alternating Dirichlet series."""
    if int(terms) != terms or terms < 1:
        raise ValueError("terms must be a positive integer")
    with ctx.working():
        r = power_sums(1, 1, [terms], [-s.mpc()], order=ctx.summation_order, alternate=True)[0][0]
    return ctx.round(r)
