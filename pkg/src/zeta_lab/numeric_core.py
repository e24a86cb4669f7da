"""Arbitrary-precision plumbing and the three special functions used everywhere.

Values are mpmath ``mpf``/``mpc`` numbers.  Every public operation takes a
``NumericContext``, runs at ``precision_digits + guard_digits`` decimal digits
and rounds its result to ``precision_digits`` on return.  Functions whose name
ends in ``_mp`` are the raw kernels: they work at whatever precision is
currently active in mpmath and are meant for use inside other modules, which
manage their own working precision.
"""

from __future__ import annotations

import math
import re
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mp, mpf, mpc

from .errors import DomainError, NonFiniteError, PoleError

APComplex = mpc

SERIAL_ASCENDING = "serial_ascending"
FIXED_TREE = "fixed_tree"
SUMMATION_ORDERS = (SERIAL_ASCENDING, FIXED_TREE)


@dataclass(frozen=True)
class NumericContext:
    precision_digits: int = 40
    guard_digits: int = 10
    summation_order: str = SERIAL_ASCENDING

    def __post_init__(self):
        if int(self.precision_digits) != self.precision_digits or self.precision_digits < 30:
            raise DomainError("precision_digits must be an integer >= 30")
        if int(self.guard_digits) != self.guard_digits or self.guard_digits < 5:
            raise DomainError("guard_digits must be an integer >= 5")
        if self.summation_order not in SUMMATION_ORDERS:
            raise DomainError(f"unknown summation order {self.summation_order!r}")

    @property
    def working_digits(self) -> int:
        return self.precision_digits + self.guard_digits

    def with_precision(self, digits: int) -> "NumericContext":
        return NumericContext(digits, self.guard_digits, self.summation_order)

    @contextmanager
    def working(self, extra_digits: int = 0):
        """Set mpmath to working precision (plus ``extra_digits``)."""
        with mp.workdps(self.working_digits + max(0, int(extra_digits))):
            yield

    def round(self, x):
        """Round an mpf/mpc (or a tuple of them) to ``precision_digits``."""
        if isinstance(x, tuple):
            return tuple(self.round(v) for v in x)
        check_finite(x)
        with mp.workdps(self.precision_digits):
            return +x

    def tolerance(self, slack_digits: int = 0):
        """10^-(precision - guard - slack) as an mpf."""
        with mp.workdps(self.working_digits):
            return mpf(10) ** (-(self.precision_digits - self.guard_digits - slack_digits))


def check_finite(x):
    if isinstance(x, mpc):
        ok = mpmath.isfinite(x.real) and mpmath.isfinite(x.imag)
    elif isinstance(x, mpf):
        ok = mpmath.isfinite(x)
    else:
        return x
    if not ok:
        raise NonFiniteError(f"non-finite value {x}")
    return x


def to_exact(x) -> Fraction:
    """Exact rational form of a real input (str, int, float, Fraction, mpf)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, mpf):
        sign, man, exp, _ = x._mpf_
        m = -int(man) if sign else int(man)
        if exp >= 0:
            return Fraction(m << int(exp))
        return Fraction(m, 1 << int(-exp))
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def mp_real(x) -> mpf:
    """An exact real input as an mpf at the current precision."""
    if isinstance(x, mpf):
        return +x
    if hasattr(x, "_mpf_"):  # mpmath constants such as mpmath.e
        return mpf(x)
    q = to_exact(x)
    if q.denominator == 1:
        return mpf(q.numerator)
    return mpf(q.numerator) / q.denominator


_POINT_RE = re.compile(
    r"^\s*(?P<re>[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)"
    r"\s*(?:(?P<sign>[+-])\s*(?P<im>(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)?\s*[ij])?\s*$"
)


@dataclass(frozen=True)
class StripPoint:
    """s = sigma + i t with 0 < sigma < 1, stored exactly as rationals."""

    sigma: Fraction
    t: Fraction = Fraction(0)

    def __post_init__(self):
        sigma = to_exact(self.sigma)
        t = to_exact(self.t)
        if not 0 < sigma < 1:
            raise DomainError(f"sigma={float(sigma)} outside the open strip (0, 1)")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "t", t)

    @classmethod
    def parse(cls, text: str) -> "StripPoint":
        """Parse '0.7+30i', '0.5-2i', '0.5' (decimal components only)."""
        m = _POINT_RE.match(text)
        if not m:
            raise DomainError(f"cannot parse strip point {text!r}")
        im = Fraction(0)
        if m.group("sign"):
            im = Fraction(m.group("im") or "1")
            if m.group("sign") == "-":
                im = -im
        return cls(Fraction(m.group("re")), im)

    @classmethod
    def from_mpc(cls, z) -> "StripPoint":
        z = mpmath.mpmathify(z)
        if isinstance(z, mpc):
            # raw parts: .real/.imag would round to the active precision
            re_, im = (mp.make_mpf(v) for v in z._mpc_)
        else:
            re_, im = z, mpf(0)
        return cls(to_exact(re_), to_exact(im))

    def mpc(self) -> mpc:
        """The point as an mpc at the current mpmath precision."""
        return mpc(mp_real(self.sigma), mp_real(self.t))

    def conj(self) -> "StripPoint":
        return StripPoint(self.sigma, -self.t)

    def reflect(self) -> "StripPoint":
        """1 - s."""
        return StripPoint(1 - self.sigma, -self.t)

    def __str__(self):
        sign = "-" if self.t < 0 else "+"
        return f"{_decimal_text(self.sigma)}{sign}{_decimal_text(abs(self.t))}i"


def _decimal_text(q: Fraction) -> str:
    """Exact decimal text when q terminates, else 30 significant digits."""
    d = q.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d != 1:
        with mp.workdps(40):
            return mpmath.nstr(mp_real(q), 30)
    sign = "-" if q < 0 else ""
    q = abs(q)
    digits = 0
    while (q * 10**digits).denominator != 1:
        digits += 1
    text = str(int(q * 10**digits)).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}" if digits else sign + text


def as_mpc(s) -> mpc:
    """StripPoint or numeric value as an mpc at the current precision."""
    if isinstance(s, StripPoint):
        return s.mpc()
    return mpmath.mpmathify(s) if not isinstance(s, mpc) else s


# ---------------------------------------------------------------- cpow


def cpow_mp(base, exponent):
    b = mp_real(base) if not isinstance(base, mpf) else base
    if b <= 0:
        raise DomainError("cpow requires a positive real base")
    e = as_mpc(exponent)
    return mpmath.exp(e * mpmath.ln(b))


def cpow(base, exponent, ctx: NumericContext) -> mpc:
    """base**exponent for real base > 0 using the principal real logarithm."""
    with ctx.working():
        r = mpc(cpow_mp(base, exponent))
    return ctx.round(r)


# ---------------------------------------------------------------- gamma


def _spouge_a(prec_bits: int) -> int:
    # relative error <= a^-1/2 (2 pi)^-(a+1/2)
    return int(math.ceil(prec_bits * math.log(2) / math.log(2 * math.pi))) + 2


@lru_cache(maxsize=16)
def _spouge_coefficients(a: int, prec_bits: int):
    # the c_k alternate in sign and grow roughly like e^a / sqrt(a), so they are
    # computed (and later summed) with that many extra bits
    extra = int(a * math.log2(math.e)) + 20
    with mp.workprec(prec_bits + extra):
        coeffs = [mpmath.sqrt(2 * mpmath.pi)]
        fact = mpf(1)
        for k in range(1, a):
            if k > 1:
                fact *= k - 1
            ck = (-1) ** (k - 1) / fact * mpmath.power(a - k, k - mpf(0.5)) * mpmath.exp(a - k)
            coeffs.append(ck)
    return extra, tuple(coeffs)


def _is_nonpositive_integer(z: mpc) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == mpmath.floor(z.real)


def gamma_mp(z):
    """Complex gamma at the current precision (Spouge + reflection)."""
    z = mpc(as_mpc(z))
    if _is_nonpositive_integer(z):
        raise PoleError(f"gamma has a pole at {z.real}")
    if z.real < 0.5:
        with mp.workprec(mp.prec + 10):
            refl = mpmath.pi / (mpmath.sinpi(z) * gamma_mp(1 - z))
        return +refl
    prec = mp.prec
    a = _spouge_a(prec + 10)
    extra, coeffs = _spouge_coefficients(a, prec + 10)
    with mp.workprec(prec + 10 + extra):
        x = z - 1
        acc = coeffs[0]
        for k in range(1, a):
            acc += coeffs[k] / (x + k)
        w = x + a
        r = mpmath.exp((x + mpf(0.5)) * mpmath.ln(w) - w) * acc
    return +r


def gamma(z, ctx: NumericContext) -> mpc:
    """Complex gamma function to context precision."""
    with ctx.working():
        r = mpc(gamma_mp(z))
    return ctx.round(r)


# ---------------------------------------------------------------- dilog


def _li2_series(y):
    """Li2(y) = sum y^k / k^2 for |y| <= 1/2."""
    eps = mpf(2) ** (-mp.prec - 4)
    total = mpf(0)
    p = y
    k = 1
    while True:
        term = p / (k * k)
        total += term
        if abs(term) <= eps * max(abs(total), eps):
            break
        k += 1
        p *= y
    return total


def dilog_mp(x):
    """A&S dilog(x) = -int_1^x ln t/(t-1) dt = Li2(1-x), for real x > 0."""
    x = mp_real(x) if not isinstance(x, mpf) else x
    if x <= 0:
        raise DomainError("dilog_as requires x > 0")
    if x == 1:
        return mpf(0)
    with mp.workprec(mp.prec + 20):
        if x > mpf(1.5):
            # inversion: dilog(x) + dilog(1/x) = -1/2 ln(x)^2
            r = -mpmath.ln(x) ** 2 / 2 - dilog_mp(1 / x)
        elif x < mpf(0.5):
            # reflection: Li2(y) + Li2(1-y) = pi^2/6 - ln y ln(1-y), y = 1-x
            r = mpmath.pi ** 2 / 6 - mpmath.ln(x) * mpmath.ln(1 - x) - _li2_series(x)
        else:
            r = _li2_series(1 - x)
    return +r


def dilog_as(x, ctx: NumericContext) -> mpf:
    """Abramowitz-Stegun dilogarithm of a positive real argument."""
    with ctx.working():
        r = dilog_mp(x)
    return ctx.round(r)


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log|y| against log x."""
    lx = [math.log(float(x)) for x in xs]
    ly = [float(mpmath.log(abs(y))) for y in ys]
    n = len(lx)
    if n < 2:
        raise DomainError("a slope needs at least two points")
    mx = sum(lx) / n
    my = sum(ly) / n
    sxx = sum((a - mx) ** 2 for a in lx)
    return sum((a - mx) * (b - my) for a, b in zip(lx, ly)) / sxx
