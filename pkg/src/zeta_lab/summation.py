"""Deterministic big-float power sums  sum_k (+-1) (start + step*j)^a.

The inner loop runs on gmpy2 (MPFR) numbers: one logarithm and one sin/cos pair
per base are shared by all requested exponents with the same |Im a|, which is
what makes N = 10^7 odd-integer sums affordable in pure Python.

Two reduction shapes are supported, both bit-reproducible:

* ``serial_ascending``: one running sum per exponent, ascending index.
* ``fixed_tree``: ascending serial sums over fixed blocks of ``BLOCK`` terms,
  combined by pairwise reduction in a fixed shape.
"""

from __future__ import annotations

import math

import gmpy2
import mpmath
from gmpy2 import mpfr
from mpmath import mp

from .errors import DomainError
from .numeric_core import FIXED_TREE, SERIAL_ASCENDING

BLOCK = 4096


def _to_mpfr(x):
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    m = -int(man) if sign else int(man)
    return gmpy2.mul_2exp(mpfr(m), int(exp))


def _to_mpf(x):
    if x == 0:
        return mpmath.mpf(0)
    man, exp = x.as_mantissa_exp()
    return mpmath.mpf((int(man), int(exp)))


def _kernel_bits(count: int) -> int:
    # headroom for rounding accumulated over `count` additions
    return mp.prec + 16 + max(0, int(math.log2(max(count, 1))) + 1)


def _segment(start, step, lo, hi, groups, alternate, acc):
    """Add terms j = lo..hi-1 into acc (list of [re, im] per exponent)."""
    log = gmpy2.log
    exp = gmpy2.exp
    sin_cos = gmpy2.sin_cos
    for j in range(lo, hi):
        k = start + step * j
        L = log(k)
        neg = alternate and (j & 1)
        for t_abs, members in groups:
            if t_abs:
                sn, cs = sin_cos(t_abs * L)
            for idx, re_a, positive_im in members:
                mag = exp(re_a * L)
                r = acc[idx]
                if t_abs:
                    re_part = mag * cs
                    im_part = mag * sn if positive_im else -(mag * sn)
                    if neg:
                        r[0] -= re_part
                        r[1] -= im_part
                    else:
                        r[0] += re_part
                        r[1] += im_part
                else:
                    if neg:
                        r[0] -= mag
                    else:
                        r[0] += mag


def _group_exponents(exponents):
    groups = {}
    for idx, a in enumerate(exponents):
        a = mpmath.mpc(a)
        key = abs(a.imag)
        groups.setdefault(key, []).append((idx, _to_mpfr(a.real), a.imag >= 0))
    return [(_to_mpfr(key) if key else None, members) for key, members in groups.items()]


def _tree_reduce(values):
    while len(values) > 1:
        nxt = [values[i] + values[i + 1] for i in range(0, len(values) - 1, 2)]
        if len(values) % 2:
            nxt.append(values[-1])
        values = nxt
    return values[0] if values else mpfr(0)


def power_sums(start: int, step: int, checkpoints, exponents, order=SERIAL_ASCENDING, alternate=False):
    """Prefix power sums at each checkpoint count.

    Returns ``out[c][e]`` = sum_{j<checkpoints[c]} sgn_j (start + step j)^exponents[e]
    as mpmath mpc at the current precision.  ``checkpoints`` must be sorted
    ascending positive integers.  With ``alternate`` the j-th term carries (-1)^j.
    """
    checkpoints = [int(c) for c in checkpoints]
    if not checkpoints or any(c < 1 for c in checkpoints):
        raise DomainError("term counts must be positive")
    if checkpoints != sorted(checkpoints):
        raise DomainError("checkpoints must be ascending")
    if start < 1 or step < 0:
        raise DomainError("bases must be positive integers")
    if order not in (SERIAL_ASCENDING, FIXED_TREE):
        raise DomainError(f"unknown summation order {order!r}")
    exponents = list(exponents)
    total = checkpoints[-1]
    with gmpy2.context(precision=_kernel_bits(total)):
        groups = _group_exponents(exponents)
        results = []
        if order == SERIAL_ASCENDING:
            acc = [[mpfr(0), mpfr(0)] for _ in exponents]
            lo = 0
            for c in checkpoints:
                _segment(start, step, lo, c, groups, alternate, acc)
                lo = c
                results.append([(r[0], r[1]) for r in acc])
        else:
            blocks = []  # per-block sums, each a list of [re, im]
            lo = 0
            for c in checkpoints:
                while lo + BLOCK <= c:
                    acc = [[mpfr(0), mpfr(0)] for _ in exponents]
                    _segment(start, step, lo, lo + BLOCK, groups, alternate, acc)
                    blocks.append(acc)
                    lo += BLOCK
                tail = [[mpfr(0), mpfr(0)] for _ in exponents]
                _segment(start, step, lo, c, groups, alternate, tail)
                row = []
                for e in range(len(exponents)):
                    parts_re = [b[e][0] for b in blocks] + [tail[e][0]]
                    parts_im = [b[e][1] for b in blocks] + [tail[e][1]]
                    row.append((_tree_reduce(parts_re), _tree_reduce(parts_im)))
                results.append(row)
        out = []
        for row in results:
            out.append([mpmath.mpc(_to_mpf(re), _to_mpf(im)) for re, im in row])
    return out
