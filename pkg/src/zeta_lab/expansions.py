"""Residues, the dilogarithmic error factor and the two truncated expansions.

Notation used throughout:

* poles of F(u) = e^(su)/(e^(e^u)+1) sit at u = ln(pi(2n-1)) + i pi(1/2+m);
* S1 = sum_{n<=N} (2n-1)^(s-1),  S2 = sum_{n<=N} (2n-1)^(-s);
* E_N(s) = 1 + s(s-1) eps_v(s)/N^2 with v = ln N, and Xi_N(s) the same with
  eps_v replaced by an approximation (by default the constant -1/24);
* zeta_N'(s)  = pi^s (-2^(s-1) N^s Xi_N(s) + s S1) / (cos(s pi/2)(2^(1-s)-1) Gamma(s+1))
* zeta_N''(s) = (-N^(1-s) Xi_N(1-s) + 2^s (1-s) S2) / ((2^s-1)(1-s))

With E_N in place of Xi_N both expressions equal zeta(s) exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf, mpc

from .errors import DivisionError, DomainError, RangeError
from .numeric_core import NumericContext, StripPoint, as_mpc, dilog_mp, gamma_mp, mp_real
from .summation import power_sums
from .zeta_reference import functional_eq_rhs_mp, zeta_mp

EXACT_DILOG = "exact_dilog"
MINUS_ONE_24 = "asymptotic_minus_one_24"
FIRST_CORRECTION = "asymptotic_with_first_correction"
MODES = (EXACT_DILOG, MINUS_ONE_24, FIRST_CORRECTION)
DEFAULT_MODE = MINUS_ONE_24

# e^(2 v pi) with more decimal digits than this is treated as out of range
MAX_EXACT_EXPONENT_DIGITS = 100_000


@dataclass(frozen=True)
class TruncationParams:
    N: int
    L: mpf
    v: mpf
    delta: mpf

    @classmethod
    def for_n(cls, N: int, ctx: NumericContext) -> "TruncationParams":
        _check_n(N)
        with ctx.working():
            v = mpmath.ln(N)
            L = mpmath.ln(2 * N * mpmath.pi)
            delta = v / N
        return cls(N, ctx.round(L), ctx.round(v), ctx.round(delta))


@dataclass(frozen=True)
class ErrorFactor:
    epsilon_v: mpc
    E: mpc
    mode: str
    s: StripPoint
    N: int

    def recompute_E(self):
        s = self.s.mpc()
        return 1 + s * (s - 1) * self.epsilon_v / mpf(self.N) ** 2


@dataclass(frozen=True)
class PairEvaluation:
    s: StripPoint
    N: int
    zn_prime: mpc
    zn_dprime: mpc
    zeta: mpc
    q1: mpf


def _check_n(N):
    if int(N) != N or N < 1:
        raise DomainError("N must be a positive integer")


def _check_mode(mode):
    if mode not in MODES:
        raise DomainError(f"unknown error-factor mode {mode!r}")


def expansion_extra_digits(N: int, s: StripPoint) -> int:
    """Extra working digits for the large cancelling pair in the numerators."""
    return int(math.ceil(math.log10(max(N, 1)))) + int(math.ceil(0.2 * abs(float(s.t))))


# ---------------------------------------------------------------- poles and residues


def pole_location(n: int, m: int, ctx: NumericContext | None = None) -> mpc:
    if int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
    ctx = ctx or NumericContext()
    with ctx.working():
        u = mpc(mpmath.ln(mpmath.pi * (2 * n - 1)), mpmath.pi * (mpf(m) + mpf(1) / 2))
    return ctx.round(u)


def residue_mp(n: int, m: int, s: mpc):
    pi = mpmath.pi
    sign = -1 if m % 2 else 1
    return (mpc(0, sign) * mpmath.power(2 * n - 1, s - 1) * mpmath.power(pi, s - 1)
            * mpmath.exp(mpc(0, 1) * (mpf(m) + mpf(1) / 2) * s * pi))


def residue(n: int, m: int, s: StripPoint, ctx: NumericContext) -> mpc:
    """Residue of F(u) at pole_location(n, m)."""
    if int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
    with ctx.working():
        r = residue_mp(n, m, s.mpc())
    return ctx.round(r)


def sn_prefactor_mp(s: mpc):
    """2 sin(s pi/2) e^(i s pi) pi^(s-1)."""
    pi = mpmath.pi
    return 2 * mpmath.sin(s * pi / 2) * mpmath.exp(mpc(0, 1) * s * pi) * mpmath.power(pi, s - 1)


def residue_sum_SN(N: int, s: StripPoint, ctx: NumericContext) -> mpc:
    """S_N = sum of the residues with n <= N, m in {0, 1}, in closed form."""
    _check_n(N)
    with ctx.working():
        z = s.mpc()
        S1 = power_sums(1, 2, [N], [z - 1], order=ctx.summation_order)[0][0]
        r = sn_prefactor_mp(z) * S1
    return ctx.round(r)


# ---------------------------------------------------------------- odd power sums


def odd_power_sums_mp(Ns, exponents, order):
    """Prefix sums sum_{n<=N}(2n-1)^a for each N in ascending Ns, each exponent."""
    return power_sums(1, 2, Ns, [as_mpc(a) for a in exponents], order=order)


def odd_power_sum(N: int, a, ctx: NumericContext) -> mpc:
    _check_n(N)
    with ctx.working(int(math.ceil(math.log10(N))) + 1):
        r = odd_power_sums_mp([N], [a], ctx.summation_order)[0][0]
    return ctx.round(r)


def odd_power_sums(Ns, exponents, ctx: NumericContext):
    """Checkpointed odd power sums; returns out[i][j] for Ns[i], exponents[j]."""
    Ns = [int(N) for N in Ns]
    for N in Ns:
        _check_n(N)
    order = sorted(range(len(Ns)), key=lambda i: Ns[i])
    with ctx.working(int(math.ceil(math.log10(max(Ns)))) + 1):
        rows = odd_power_sums_mp([Ns[i] for i in order], exponents, ctx.summation_order)
        out = [None] * len(Ns)
        for pos, i in enumerate(order):
            out[i] = [ctx.round(x) for x in rows[pos]]
    return out


# ---------------------------------------------------------------- eps_v


def epsilon_v_mp(s: mpc, v, mode: str):
    _check_mode(mode)
    v = mp_real(v) if not isinstance(v, mpf) else v
    if v < 0:
        raise DomainError("v must be nonnegative")
    pi = mpmath.pi
    if mode == MINUS_ONE_24:
        return mpc(-1) / 24
    if mode == FIRST_CORRECTION:
        return -mpf(1) / 24 + (1 / (2 * pi**2) + v / pi + v**2 / (1 - s)) * mpmath.exp(-2 * v * pi)
    if 2 * v * pi / math.log(10) > MAX_EXACT_EXPONENT_DIGITS:
        raise RangeError("e^(2 v pi) out of range; use an asymptotic mode")
    X = mpmath.exp(2 * v * pi)
    # ln(X+1) loses nothing when X is huge: it is 2 v pi + ln(1 + 1/X)
    ln_x1 = 2 * v * pi + mpmath.log1p(1 / X)
    extra = int(2 * math.log2(float(v) + 2)) + 10
    with mp.workprec(mp.prec + extra):
        r = ((dilog_mp(X + 1) - dilog_mp(1 / X + 1)) / (4 * pi**2)
             + ln_x1 * v / pi - mpf(3) / 2 * v**2 + v**2 / ((X + 1) * (1 - s)))
    return mpc(+r)


def epsilon_v(s: StripPoint, v, mode: str, ctx: NumericContext) -> mpc:
    """Error factor eps_v(s) in the selected mode."""
    with ctx.working():
        r = epsilon_v_mp(s.mpc(), v, mode)
    return ctx.round(r)


def epsilon_v_dv_mp(s: mpc, v):
    """Closed form of d eps_v/dv (derivative of the exact form)."""
    v = mp_real(v) if not isinstance(v, mpf) else v
    X = mpmath.exp(2 * v * mpmath.pi)
    return 2 * v * (-s * (X + 1) + v * mpmath.pi * X) / ((s - 1) * (X + 1) ** 2)


def epsilon_v_dv(s: StripPoint, v, ctx: NumericContext) -> mpc:
    with ctx.working():
        r = epsilon_v_dv_mp(s.mpc(), v)
    return ctx.round(r)


def error_factor_mp(N: int, s: mpc, mode: str):
    eps = epsilon_v_mp(s, mpmath.ln(N), mode)
    return eps, 1 + s * (s - 1) * eps / mpf(N) ** 2


def error_factor(N: int, s: StripPoint, mode: str, ctx: NumericContext) -> ErrorFactor:
    """E_N(s) = 1 + s(s-1) eps_v(s)/N^2 with v = ln N."""
    _check_n(N)
    with ctx.working():
        eps, E = error_factor_mp(N, s.mpc(), mode)
    return ErrorFactor(ctx.round(eps), ctx.round(E), mode, s, N)


# ---------------------------------------------------------------- the two expansions


def prime_denominator_mp(s: mpc):
    pi = mpmath.pi
    return mpmath.cos(s * pi / 2) * (-1 + mpmath.power(2, 1 - s)) * gamma_mp(s + 1)


def dprime_denominator_mp(s: mpc):
    return (-1 + mpmath.power(2, s)) * (1 - s)


def zeta_prime_form_mp(N: int, s: mpc, E, S1):
    """Right-hand side of the s-form: pi^s(-2^(s-1)N^s E + s S1)/denominator."""
    return (mpmath.power(mpmath.pi, s) * (-mpmath.power(2, s - 1) * mpmath.power(N, s) * E + s * S1)
            / prime_denominator_mp(s))


def zeta_dprime_form_mp(N: int, s: mpc, E_reflected, S2):
    """Right-hand side of the (1-s)-form: (-N^(1-s) E(1-s) + 2^s(1-s) S2)/denominator."""
    return ((-mpmath.power(N, 1 - s) * E_reflected + mpmath.power(2, s) * (1 - s) * S2)
            / dprime_denominator_mp(s))


def error_function_prime_form_mp(N: int, s: mpc, zeta, S1):
    """E_N(s) solved from the s-form given the true zeta(s)."""
    return ((s * S1 - zeta * prime_denominator_mp(s) / mpmath.power(mpmath.pi, s))
            / (mpmath.power(2, s - 1) * mpmath.power(N, s)))


def error_function_dprime_form_mp(N: int, s: mpc, zeta, S2):
    """E_N(1-s) solved from the (1-s)-form given the true zeta(s)."""
    return ((mpmath.power(2, s) * (1 - s) * S2 - zeta * dprime_denominator_mp(s))
            / mpmath.power(N, 1 - s))


def zeta_n_pairs_mp(Ns, s: mpc, mode: str, order):
    """[(zeta_N'(s), zeta_N''(s)) for N in Ns] sharing one pass over the sums."""
    _check_mode(mode)
    idx = sorted(range(len(Ns)), key=lambda i: Ns[i])
    sums = odd_power_sums_mp([Ns[i] for i in idx], [s - 1, -s], order)
    out = [None] * len(Ns)
    for pos, i in enumerate(idx):
        N = Ns[i]
        S1, S2 = sums[pos]
        _, xi = error_factor_mp(N, s, mode)
        _, xi_reflected = error_factor_mp(N, 1 - s, mode)
        out[i] = (zeta_prime_form_mp(N, s, xi, S1), zeta_dprime_form_mp(N, s, xi_reflected, S2))
    return out


def zeta_n_pairs(Ns, s: StripPoint, mode: str, ctx: NumericContext, extra_digits: int = 0):
    """Both truncated expansions for every N in Ns (one summation pass)."""
    Ns = [int(N) for N in Ns]
    for N in Ns:
        _check_n(N)
    with ctx.working(expansion_extra_digits(max(Ns), s) + extra_digits):
        pairs = zeta_n_pairs_mp(Ns, s.mpc(), mode, ctx.summation_order)
    return [ctx.round(p) for p in pairs]


def zeta_n_prime(N: int, s: StripPoint, mode: str, ctx: NumericContext) -> mpc:
    _check_n(N)
    _check_mode(mode)
    with ctx.working(expansion_extra_digits(N, s)):
        z = s.mpc()
        S1 = odd_power_sums_mp([N], [z - 1], ctx.summation_order)[0][0]
        _, xi = error_factor_mp(N, z, mode)
        r = zeta_prime_form_mp(N, z, xi, S1)
    return ctx.round(r)


def zeta_n_dprime(N: int, s: StripPoint, mode: str, ctx: NumericContext) -> mpc:
    _check_n(N)
    _check_mode(mode)
    with ctx.working(expansion_extra_digits(N, s)):
        z = s.mpc()
        S2 = odd_power_sums_mp([N], [-z], ctx.summation_order)[0][0]
        _, xi_reflected = error_factor_mp(N, 1 - z, mode)
        r = zeta_dprime_form_mp(N, z, xi_reflected, S2)
    return ctx.round(r)


def pair_evaluation(N: int, s: StripPoint, mode: str, ctx: NumericContext) -> PairEvaluation:
    zp, zpp = zeta_n_pairs([N], s, mode, ctx)[0]
    with ctx.working():
        zeta = zeta_mp(s.mpc())
        if zpp == 0:
            raise DivisionError("zeta_N'' vanishes")
        q = abs(zp) / abs(zpp)
    return PairEvaluation(s, N, zp, zpp, ctx.round(zeta), ctx.round(q))


def zeta_n_steps_mp(N: int, k: int, s: mpc, mode: str):
    """(zeta_N' - zeta_{N+k}', zeta_N'' - zeta_{N+k}'') without the common head sum."""
    seg = power_sums(2 * N + 1, 2, [k], [s - 1, -s])[0]
    pi = mpmath.pi
    _, xa = error_factor_mp(N, s, mode)
    _, xb = error_factor_mp(N + k, s, mode)
    _, ya = error_factor_mp(N, 1 - s, mode)
    _, yb = error_factor_mp(N + k, 1 - s, mode)
    two = mpmath.power(2, s - 1)
    prime = (mpmath.power(pi, s) * (-two * mpmath.power(N, s) * xa + two * mpmath.power(N + k, s) * xb
                                     - s * seg[0]) / prime_denominator_mp(s))
    dprime = ((-mpmath.power(N, 1 - s) * ya + mpmath.power(N + k, 1 - s) * yb
               - mpmath.power(2, s) * (1 - s) * seg[1]) / dprime_denominator_mp(s))
    return prime, dprime


def zeta_n_steps(N: int, k: int, s: StripPoint, mode: str, ctx: NumericContext, extra_digits: int = 0):
    """Differences zeta_N - zeta_{N+k} of both expansions, evaluated directly."""
    _check_n(N)
    _check_n(k)
    with ctx.working(expansion_extra_digits(N + k, s) + extra_digits):
        r = zeta_n_steps_mp(N, k, s.mpc(), mode)
    return ctx.round(r)


def error_function_consistency(N: int, s: StripPoint, ctx: NumericContext) -> mpf:
    """|E_N(s) from the s-form - E_N(s) from the (1-s)-form at s' = 1-s|.

    The first uses the reference zeta(s); the second uses zeta(1-s) supplied
    by the functional equation.  Analytically the two agree for every N.
    """
    _check_n(N)
    with ctx.working(expansion_extra_digits(N, s)):
        z = s.mpc()
        S1 = odd_power_sums_mp([N], [z - 1], ctx.summation_order)[0][0]
        E_a = error_function_prime_form_mp(N, z, zeta_mp(z), S1)
        w = 1 - z
        # sum (2n-1)^(-w) is S1 again
        E_b = error_function_dprime_form_mp(N, w, functional_eq_rhs_mp(w), S1)
        r = abs(E_a - E_b)
    return ctx.round(r)
