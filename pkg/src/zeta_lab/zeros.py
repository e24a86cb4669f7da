"""Zeros of zeta and of the two truncated expansions near a known ordinate.

Roots are found by complex Newton iteration with a central finite-difference
derivative.  At finite N the expansions zeta_N' and zeta_N'' each have their
own zero close to the zeta zero; pair_analysis locates all three and measures
how their real parts straddle the critical line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mpf, mpc

from .errors import DegenerateError, DomainError, SearchError
from .expansions import (
    DEFAULT_MODE,
    error_factor_mp,
    odd_power_sums_mp,
    zeta_prime_form_mp,
    zeta_dprime_form_mp,
    zeta_n_pairs_mp,
)
from .numeric_core import NumericContext, mp_real, to_exact
from .quotient_analysis import diff_models_mp
from .zeta_reference import zeta_mp

REF = "ref"
N_PRIME = "n_prime"
N_DPRIME = "n_dprime"
TARGETS = (REF, N_PRIME, N_DPRIME)

MAX_ITERATIONS = 60

# ordinates of two nontrivial zeros, keyed by their index along the critical line
KNOWN_ORDINATES = {
    7: "40.918719",
    25: ("88.809111207634465423682348079509378395444893409818675042199871"
         "618814013559182198439520793279503933064153393514217920973698829552912796"),
}


@dataclass(frozen=True)
class ZeroReport:
    N: int
    t_seed: mpf
    s0_ref: mpc
    s0_prime: mpc
    s0_dprime: mpc
    epsilon_sep: mpf
    pair_defect: mpf
    derivative_order_p: int
    displacement_prime: mpf
    displacement_dprime: mpf
    residual_ref: mpf
    residual_prime: mpf
    residual_dprime: mpf
    multiplicity_flag: bool = False


def _target_mp(fn: str, N, z: mpc, mode: str, order):
    if fn == REF:
        return zeta_mp(z)
    if fn == N_PRIME:
        S1 = odd_power_sums_mp([N], [z - 1], order)[0][0]
        return zeta_prime_form_mp(N, z, error_factor_mp(N, z, mode)[1], S1)
    if fn == N_DPRIME:
        S2 = odd_power_sums_mp([N], [-z], order)[0][0]
        return zeta_dprime_form_mp(N, z, error_factor_mp(N, 1 - z, mode)[1], S2)
    raise DomainError(f"unknown target {fn!r}")


def _check_target(fn, N):
    if fn not in TARGETS:
        raise DomainError(f"unknown target {fn!r}")
    if fn != REF and (N is None or int(N) != N or N < 1):
        raise DomainError(f"{fn} needs a positive integer N")


def _extra_digits(fn, N, t) -> int:
    if fn == REF:
        return 5
    return _expansion_digits(N, t)


def _expansion_digits(N, t) -> int:
    return int(math.ceil(math.log10(int(N)))) + int(math.ceil(0.2 * abs(float(t)))) + 5


def _fd_derivative(f, z, h):
    return (f(z + h) - f(z - h)) / (2 * h)


def _newton_mp(f, z, ctx: NumericContext):
    """Newton iteration from z at the current precision; returns the root."""
    P = ctx.precision_digits
    tiny = mpf(10) ** (-P)
    for _ in range(MAX_ITERATIONS):
        h = mpf(10) ** (-(P // 2)) * max(1, abs(z))
        fz = f(z)
        d = _fd_derivative(f, z, h)
        if abs(d) < tiny:
            raise DegenerateError(f"derivative {mpmath.nstr(abs(d), 3)} below 10^-{P} at {mpmath.nstr(z, 15)}")
        step = fz / d
        z = z - step
        if not 0 < z.real < 1:
            raise SearchError(f"iterate left the critical strip: {mpmath.nstr(z, 10)}")
        if abs(step) <= mpf(10) ** (-(P + 1)) * max(1, abs(z)):
            return z
    raise SearchError(f"Newton did not converge in {MAX_ITERATIONS} iterations")


def find_zero(fn: str, N, t_seed, sigma_seed, ctx: NumericContext, mode: str = DEFAULT_MODE) -> mpc:
    """Zero of zeta (fn='ref') or of an expansion (fn='n_prime'/'n_dprime') near a seed."""
    _check_target(fn, N)
    with ctx.working(_extra_digits(fn, N, to_exact(t_seed))):
        z0 = mpc(mp_real(sigma_seed), mp_real(t_seed))
        root = _newton_mp(lambda z: _target_mp(fn, N, z, mode, ctx.summation_order), z0, ctx)
    return ctx.round(root)


def target_value(fn: str, N, s0: mpc, ctx: NumericContext, mode: str = DEFAULT_MODE) -> mpc:
    """The target function evaluated at a (rounded) point."""
    _check_target(fn, N)
    with ctx.working(_extra_digits(fn, N, abs(s0.imag))):
        r = _target_mp(fn, N, mpc(s0), mode, ctx.summation_order)
    return ctx.round(r)


def zeta_derivative(s0: mpc, ctx: NumericContext) -> mpc:
    """zeta'(s0) by a central difference of the reference evaluator."""
    with ctx.working(5):
        z = mpc(s0)
        h = mpf(10) ** (-(ctx.precision_digits // 2)) * max(1, abs(z))
        r = _fd_derivative(zeta_mp, z, h)
    return ctx.round(r)


def derivative_order(fn: str, N, s0: mpc, ctx: NumericContext, mode: str = DEFAULT_MODE):
    """(p, flagged): p=1 unless |f'(s0)| is below 10^-(precision/4)."""
    _check_target(fn, N)
    with ctx.working(_extra_digits(fn, N, abs(s0.imag))):
        z = mpc(s0)
        h = mpf(10) ** (-(ctx.precision_digits // 2)) * max(1, abs(z))
        d = _fd_derivative(lambda w: _target_mp(fn, N, w, mode, ctx.summation_order), z, h)
        small = abs(d) < mpf(10) ** (-(ctx.precision_digits // 4))
    return (2, True) if small else (1, False)


def pair_analysis(N: int, t_seed, ctx: NumericContext, mode: str = DEFAULT_MODE,
                  sigma_seed="0.5") -> ZeroReport:
    """Locate the zeta zero and the two expansion zeros next to it."""
    if int(N) != N or N < 1:
        raise DomainError("N must be a positive integer")
    N = int(N)
    s_ref = find_zero(REF, None, t_seed, sigma_seed, ctx)
    s_prime = find_zero(N_PRIME, N, s_ref.imag, s_ref.real, ctx, mode)
    s_dprime = find_zero(N_DPRIME, N, s_ref.imag, s_ref.real, ctx, mode)
    p, flagged = derivative_order(REF, None, s_ref, ctx)
    residuals = [abs(target_value(fn, N, z, ctx, mode))
                 for fn, z in ((REF, s_ref), (N_PRIME, s_prime), (N_DPRIME, s_dprime))]
    with ctx.working():
        eps = s_prime.real - s_dprime.real
        defect = abs(s_prime.real + s_dprime.real - 1)
        d1 = abs(s_prime - s_ref)
        d2 = abs(s_dprime - s_ref)
    return ZeroReport(
        N, ctx.round(mp_real(t_seed)), s_ref, s_prime, s_dprime,
        ctx.round(eps), ctx.round(defect), p,
        ctx.round(d1), ctx.round(d2),
        *[ctx.round(r) for r in residuals],
        multiplicity_flag=flagged,
    )


def _model_terms_mp(N, s0, ds, zeta_prime):
    dm1, dm2 = diff_models_mp(N, s0 + ds)
    return dm1 + ds * zeta_prime, dm2 + ds * zeta_prime


def quotient_model_near_zero(N: int, s0: mpc, ds, ctx: NumericContext, mode: str = DEFAULT_MODE):
    """(model, direct) values of |zeta_N'/zeta_N''| at s0 + ds.

    model linearises zeta about its zero s0 and adds the leading remainder
    models; direct evaluates the two expansions at s0 + ds.
    """
    if int(N) != N or N < 1:
        raise DomainError("N must be a positive integer")
    zp0 = zeta_derivative(s0, ctx)
    with ctx.working(_expansion_digits(N, s0.imag)):
        z0 = mpc(s0)
        dz = mpmath.mpmathify(ds)
        num, den = _model_terms_mp(N, z0, dz, zp0)
        model = abs(num) / abs(den)
        zp, zpp = zeta_n_pairs_mp([int(N)], z0 + dz, mode, ctx.summation_order)[0]
        direct = abs(zp) / abs(zpp)
    return ctx.round(model), ctx.round(direct)


def cancelling_offsets(N: int, s0: mpc, ctx: NumericContext):
    """(ds_zero, ds_pole): offsets where the model numerator or denominator vanishes.

    Found by a few fixed-point steps of ds = -diff_model(s0+ds)/zeta'(s0).
    """
    zp0 = zeta_derivative(s0, ctx)
    out = []
    with ctx.working(5):
        z0 = mpc(s0)
        for idx in (0, 1):
            ds = mpc(0)
            for _ in range(8):
                ds = -diff_models_mp(N, z0 + ds)[idx] / zp0
            out.append(ds)
    return ctx.round(tuple(out))

