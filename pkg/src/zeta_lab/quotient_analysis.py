"""The quotient of the two expansions and the closed form of its difference quotient.

With diff' = zeta_N' - zeta and diff'' = zeta_N'' - zeta, the leading terms of
the telescoped step differences give

    diff'  ~ -(7/11520) pi^s 4^s N^(s-4) / (cos(s pi/2)(2^s-2) Gamma(s-3))
    diff'' ~ -(7/5760) s(s+1)(s+2) N^(-s-3) / (2^s-1)

and their ratio is the closed form ratio_model = diff'/diff'' + O(N^(2 sigma - 2)).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath
from mpmath import mp, mpf, mpc

from .errors import DivisionError, DomainError, PrecisionError
from .expansions import expansion_extra_digits, zeta_n_pairs_mp
from .numeric_core import NumericContext, StripPoint, gamma_mp, mp_real
from .summation import power_sums
from .zeta_reference import _bernoulli_ratios, zeta_mp

PRIME = "prime"
DPRIME = "dprime"


@dataclass(frozen=True)
class QuotientReport:
    s: StripPoint
    N: int
    q1: mpf
    diff_prime: mpc
    diff_dprime: mpc
    ratio: mpc
    ratio_model: mpc
    ratio_residual: mpf


@dataclass(frozen=True)
class RemainderConstants:
    c_prime: mpc
    c_dprime: mpc
    k_of_s: mpc


@dataclass(frozen=True)
class IdentityCheck:
    t: mpf
    value: mpf
    deviation: mpf
    factor_deviations: dict = field(default_factory=dict)


def _check_n(N, low=1):
    if int(N) != N or N < low:
        raise DomainError(f"N must be an integer >= {low}")


# ---------------------------------------------------------------- closed forms


def ratio_model_mp(N: int, s: mpc):
    pi = mpmath.pi
    return (mpmath.power(N, 2 * s - 1) * mpmath.power(pi, s) * (-mpmath.power(4, s) + mpmath.power(8, s))
            / (2 * mpmath.cos(s * pi / 2) * (-2 + mpmath.power(2, s)) * gamma_mp(s - 3) * (s + 2) * (s + 1) * s))


def ratio_model(N: int, s: StripPoint, ctx: NumericContext) -> mpc:
    """Closed-form limit of diff'/diff'' (no remainder term)."""
    _check_n(N)
    with ctx.working():
        r = ratio_model_mp(N, s.mpc())
    return ctx.round(r)


def k_of_s_mp(s: mpc):
    return (s - 2) * (s - 3) / ((s + 2) * (s + 1))


def ratio_model_k_form(N: int, s: StripPoint, ctx: NumericContext) -> mpc:
    """ratio_model rewritten with K(s) and Gamma(s+1)."""
    _check_n(N)
    with ctx.working():
        z = s.mpc()
        pi = mpmath.pi
        r = ((z - 1) * mpmath.power(N, 2 * z - 1) * k_of_s_mp(z) * mpmath.power(pi, z)
             * (-mpmath.power(4, z) + mpmath.power(8, z))
             / (2 * mpmath.cos(z * pi / 2) * gamma_mp(z + 1) * (-2 + mpmath.power(2, z))))
    return ctx.round(r)


def diff_models_mp(N: int, s: mpc):
    """Leading-order models of (diff', diff'') from the summed step differences."""
    pi = mpmath.pi
    prime = (-mpf(7) / 11520 * mpmath.power(pi, s) * mpmath.power(4, s) * mpmath.power(N, s - 4)
             / (mpmath.cos(s * pi / 2) * (-2 + mpmath.power(2, s)) * gamma_mp(s - 3)))
    dprime = (-mpf(7) / 5760 * s * (s + 1) * (s + 2) * mpmath.power(N, -s - 3)
              / (-1 + mpmath.power(2, s)))
    return prime, dprime


def leading_diff_mp(N: int, s: mpc, which: str):
    pi = mpmath.pi
    if which == PRIME:
        return (mpf(7) / 11520 * mpmath.power(pi, s) * mpmath.power(4, s) * mpmath.power(N, s - 5)
                / (mpmath.cos(s * pi / 2) * (-2 + mpmath.power(2, s)) * gamma_mp(s - 4)))
    if which == DPRIME:
        return (-mpf(7) / 5760 * mpmath.power(N, -s - 4) * s * (s + 1) * (s + 2) * (s + 3)
                / (-1 + mpmath.power(2, s)))
    raise DomainError(f"unknown expansion {which!r}")


def leading_diff(N: int, s: StripPoint, which: str, ctx: NumericContext) -> mpc:
    """Leading term of zeta_N - zeta_{N+1} for either expansion."""
    _check_n(N, 10)
    with ctx.working():
        r = leading_diff_mp(N, s.mpc(), which)
    return ctx.round(r)


def leading_diff_prime_polynomial_form(N: int, s: StripPoint, ctx: NumericContext) -> mpc:
    """Same leading prime term written with Gamma(s+1) and an explicit polynomial."""
    _check_n(N, 10)
    with ctx.working():
        z = s.mpc()
        pi = mpmath.pi
        poly = z * (z - 1) * (z - 2) * (z - 3) * (z - 4)
        r = (mpf(7) / 11520 * mpmath.power(pi, z) * mpmath.power(4, z) * mpmath.power(N, z) * poly
             / (mpf(N) ** 5 * mpmath.cos(z * pi / 2) * gamma_mp(z + 1) * (mpmath.power(2, z) - 2)))
    return ctx.round(r)


def remainder_constants_mp(s: mpc):
    pi = mpmath.pi
    c_prime = (-mpf(7) / 23040 * mpmath.power(pi, s) * mpmath.power(2, s)
               / (mpmath.cos(s * pi / 2) * (-1 + mpmath.power(2, 1 - s)) * gamma_mp(s - 5)))
    c_dprime = mpf(7) / 11520 * s * (s + 1) * (s + 2) * (s + 3) * (s + 4) / (-1 + mpmath.power(2, s))
    return c_prime, c_dprime, k_of_s_mp(s)


def remainder_constants(s: StripPoint, ctx: NumericContext) -> RemainderConstants:
    """Second-order constants: step difference - leading term ~ c' N^(s-6), c'' N^(-s-5)."""
    with ctx.working():
        c1, c2, k = remainder_constants_mp(s.mpc())
    return RemainderConstants(ctx.round(c1), ctx.round(c2), ctx.round(k))


# ---------------------------------------------------------------- evaluated quotients


def q1(N: int, s: StripPoint, mode: str, ctx: NumericContext) -> mpf:
    """|zeta_N'(s) / zeta_N''(s)|."""
    _check_n(N)
    with ctx.working(expansion_extra_digits(N, s)):
        zp, zpp = zeta_n_pairs_mp([N], s.mpc(), mode, ctx.summation_order)[0]
        if zpp == 0:
            raise DivisionError("zeta_N'' vanishes at s; a zero of the dprime expansion is nearby")
        r = abs(zp) / abs(zpp)
    return ctx.round(r)


def _needed_extra_digits(N: int, s: StripPoint) -> int:
    with mp.workdps(20):
        z = s.mpc()
        mp_model, dp_model = diff_models_mp(N, z)
        smallest = min(abs(mp_model), abs(dp_model))
        lost = max(0, int(mpmath.ceil(-mpmath.log10(smallest)))) if smallest > 0 else 0
    return expansion_extra_digits(N, s) + lost + 5


def _differences_mp(N: int, s: mpc, mode: str, order):
    zp, zpp = zeta_n_pairs_mp([N], s, mode, order)[0]
    zeta = zeta_mp(s)
    return zp, zpp, zeta


def difference_quotient(N: int, s: StripPoint, mode: str, ctx: NumericContext) -> QuotientReport:
    """diff', diff'', their quotient and the closed form ratio_model.

    Working precision is sized from the modelled magnitudes of the two
    differences.  Both differences must come out at least 10^precision_digits
    above the rounding noise of the expansions; otherwise the evaluation is
    repeated once at doubled precision, and a second failure raises
    PrecisionError with a digit hint.
    """
    _check_n(N)
    extra = _needed_extra_digits(N, s)
    for attempt in range(2):
        with ctx.working(extra):
            z = s.mpc()
            zp, zpp, zeta = _differences_mp(N, z, mode, ctx.summation_order)
            d1 = zp - zeta
            d2 = zpp - zeta
            noise = mpf(10) ** (-(mp.dps - expansion_extra_digits(N, s))) * (1 + abs(zeta))
            floor = noise * mpf(10) ** ctx.precision_digits
            if min(abs(d1), abs(d2)) >= floor:
                lhs = d1 / d2
                rhs = ratio_model_mp(N, z)
                return QuotientReport(
                    s, N,
                    ctx.round(abs(zp) / abs(zpp)),
                    ctx.round(d1), ctx.round(d2), ctx.round(lhs), ctx.round(rhs),
                    ctx.round(abs(lhs - rhs)),
                )
        if attempt == 0:
            extra += ctx.working_digits + extra
    raise PrecisionError("differences not resolved at doubled precision",
                         required_digits=2 * (ctx.working_digits + extra))


def differences(Ns, s: StripPoint, mode: str, ctx: NumericContext):
    """[(diff', diff'') for N in Ns] from one checkpointed summation pass."""
    Ns = [int(N) for N in Ns]
    for N in Ns:
        _check_n(N)
    extra = max(_needed_extra_digits(N, s) for N in Ns)
    with ctx.working(extra):
        z = s.mpc()
        pairs = zeta_n_pairs_mp(Ns, z, mode, ctx.summation_order)
        zeta = zeta_mp(z)
        out = [(a - zeta, b - zeta) for a, b in pairs]
    return [ctx.round(d) for d in out]


# ---------------------------------------------------------------- critical line


def critical_line_identity(t, ctx: NumericContext) -> IdentityCheck:
    """Check 1/2 |pi^s (4^s - 8^s)/(cos(s pi/2)(2^s - 2) Gamma(s))| = 1 on s = 1/2 + it.

    The factor formulas checked individually are
    |cos(s pi/2)| = sqrt(2) sqrt(cosh(pi t))/2, |4^s - 8^s| = 2 sqrt(3 - 2 sqrt2 cos(t ln2)),
    |2^s - 2| = sqrt(6 - 4 sqrt2 cos(t ln2)), |Gamma(s)|^2 = pi/cosh(pi t) and
    |(s+2)(s+1) s Gamma(s-3)| = |Gamma(s)|.
    """
    with ctx.working():
        t = mp_real(t) if not isinstance(t, mpf) else t
        s = mpc(mpf(1) / 2, t)
        pi = mpmath.pi
        cos_f = mpmath.cos(s * pi / 2)
        p4m8 = mpmath.power(4, s) - mpmath.power(8, s)
        two = -2 + mpmath.power(2, s)
        g = gamma_mp(s)
        value = abs(mpmath.power(pi, s) * p4m8 / (cos_f * two * g)) / 2
        c = mpmath.cos(t * mpmath.ln(2))
        sq2 = mpmath.sqrt(2)
        checks = {
            "cos": abs(abs(cos_f) - sq2 * mpmath.sqrt(mpmath.cosh(pi * t)) / 2),
            "four_minus_eight": abs(abs(p4m8) - 2 * mpmath.sqrt(3 - 2 * sq2 * c)),
            "two_power_minus_two": abs(abs(two) - mpmath.sqrt(6 - 4 * sq2 * c)),
        }
        # relative forms for the quantities that shrink like e^(-pi t/2)
        g_abs = abs(g)
        checks["gamma_modulus"] = abs(g_abs**2 * mpmath.cosh(pi * t) / pi - 1)
        checks["gamma_shift"] = abs(abs((s + 2) * (s + 1) * s * gamma_mp(s - 3)) / g_abs - 1)
        checks["middle_member"] = abs(mpmath.sqrt(pi / mpmath.cosh(pi * t)) / g_abs - 1)
        # the absolute factor checks are scaled by the size of the factor
        checks["cos"] /= abs(cos_f)
        checks["four_minus_eight"] /= max(abs(p4m8), mpf(1))
        checks["two_power_minus_two"] /= max(abs(two), mpf(1))
        dev = abs(value - 1)
    factors = {k: ctx.round(v) for k, v in checks.items()}
    return IdentityCheck(ctx.round(t), ctx.round(value), ctx.round(dev), factors)


# ---------------------------------------------------------------- polygamma tail


def hurwitz_em_mp(p: int, a):
    """sum_{n>=0} (a+n)^(-p) for integer p >= 2 by Euler-Maclaurin."""
    a = mpf(a)
    M = mp.dps + 10
    head = mpf(0)
    for n in range(M):
        head += (a + n) ** (-p)
    x = a + M
    total = head + x ** (1 - p) / (p - 1) + x ** (-p) / 2
    eps = mpf(10) ** (-mp.dps - 2)
    ratios = _bernoulli_ratios(2 * mp.dps + 20, mp.prec)
    poch = mpf(p)
    xpow = x ** (-p - 1)
    for k in range(1, len(ratios) + 1):
        term = ratios[k - 1] * poch * xpow
        total += term
        if abs(term) < eps * abs(total):
            break
        poch *= (p + 2 * k - 1) * (p + 2 * k)
        xpow /= x * x
    return total


def tail_polygamma(N: int, k_terms: int, ctx: NumericContext):
    """(sum_{n=0..k} (N+n)^-5, its k -> infinity limit -psi^(4)(N)/24)."""
    _check_n(N, 2)
    if int(k_terms) != k_terms or k_terms < 0:
        raise DomainError("k_terms must be a nonnegative integer")
    with ctx.working(2):
        partial = power_sums(N, 1, [k_terms + 1], [mpf(-5)], order=ctx.summation_order)[0][0].real
        limit = hurwitz_em_mp(5, N)
    return ctx.round(partial), ctx.round(limit)
