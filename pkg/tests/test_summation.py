import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpc, mpf

from zeta_lab.errors import DomainError
from zeta_lab.numeric_core import FIXED_TREE, SERIAL_ASCENDING
from zeta_lab.summation import BLOCK, power_sums


def brute(start, step, count, a, alternate=False):
    total = mpc(0)
    for j in range(count):
        term = mpmath.power(start + step * j, a)
        total += -term if alternate and j % 2 else term
    return total


def test_small_integer_sum():
    with mp.workdps(30):
        out = power_sums(1, 2, [3], [2])
    assert out[0][0] == 35


def test_single_term_is_one():
    with mp.workdps(30):
        assert power_sums(1, 2, [1], [mpc("0.3", "-7")])[0][0] == 1


@pytest.mark.parametrize("a", [mpc("-0.7", "-30"), mpc("-0.3", "4"), mpc("-0.5", "0"), mpc("0.2", "15")])
def test_matches_brute_force(a):
    with mp.workdps(40):
        got = power_sums(1, 2, [37, 100], [a])
        with mp.workdps(80):
            w1 = brute(1, 2, 37, a)
            w2 = brute(1, 2, 100, a)
        assert abs(got[0][0] - w1) < mpf(10) ** -37 * max(1, abs(w1))
        assert abs(got[1][0] - w2) < mpf(10) ** -37 * max(1, abs(w2))


def test_negative_real_exponent_sign():
    # regression: the exponent's sign must survive conversion to the kernel
    with mp.workdps(30):
        got = power_sums(1, 1, [4], [mpf(-2)])[0][0]
        assert abs(got - (1 + mpf(1) / 4 + mpf(1) / 9 + mpf(1) / 16)) < mpf(10) ** -28


def test_shared_groups_give_independent_exponents():
    a1, a2 = mpc("-0.3", "5"), mpc("-0.7", "-5")
    with mp.workdps(40):
        both = power_sums(1, 2, [50], [a1, a2])[0]
        solo1 = power_sums(1, 2, [50], [a1])[0][0]
        solo2 = power_sums(1, 2, [50], [a2])[0][0]
    assert both[0] == solo1 and both[1] == solo2


def test_alternating():
    with mp.workdps(30):
        got = power_sums(1, 1, [2], [mpf("-0.5")], alternate=True)[0][0]
        assert abs(got - (1 - 1 / mpmath.sqrt(2))) < mpf(10) ** -28


def test_fixed_tree_agrees_with_serial():
    a = mpc("-0.7", "30")
    n = 2 * BLOCK + 123
    with mp.workdps(40):
        s = power_sums(1, 2, [BLOCK, n], [a], order=SERIAL_ASCENDING)
        t = power_sums(1, 2, [BLOCK, n], [a], order=FIXED_TREE)
        for r1, r2 in zip(s, t):
            assert abs(r1[0] - r2[0]) < mpf(10) ** -38 * abs(r1[0])


def test_deterministic():
    a = mpc("-0.4", "12")
    with mp.workdps(40):
        x = power_sums(1, 2, [5000], [a], order=FIXED_TREE)[0][0]
        y = power_sums(1, 2, [5000], [a], order=FIXED_TREE)[0][0]
    assert x == y


@pytest.mark.parametrize("kwargs", [
    {"checkpoints": []},
    {"checkpoints": [0]},
    {"checkpoints": [10, 5]},
    {"checkpoints": [3], "order": "random"},
])
def test_rejects_bad_arguments(kwargs):
    args = {"start": 1, "step": 2, "checkpoints": [3], "exponents": [1]}
    args.update(kwargs)
    with pytest.raises(DomainError):
        power_sums(**args)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 60), st.floats(-1.5, 0.5), st.floats(-50, 50))
def test_checkpoints_are_prefix_sums(n, re_, im):
    a = mpc(re_, im)
    with mp.workdps(30):
        both = power_sums(1, 2, [n, n + 7], [a])
        single = power_sums(1, 2, [n + 7], [a])[0][0]
        tail = power_sums(2 * n + 1, 2, [7], [a])[0][0]
        assert abs(both[1][0] - single) <= mpf(10) ** -28 * max(1, abs(single))
        assert abs(both[0][0] + tail - single) <= mpf(10) ** -27 * max(1, abs(single))
