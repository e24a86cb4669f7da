"""Command-line front end: reproduction tables and parameter sweeps.

    zeta-lab reproduce {quotient_t30, low_sigma, zero25_scaled} [options]
    zeta-lab sweep {convergence, quotient_ratio, contour, identities, zeros} [options]

Exit codes: 0 all checks pass, 1 a tolerance check failed, 2 bad
configuration, 3 the report could not be written.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from .contour_lab import MAX_CAUCHY_N, cauchy_check
from .errors import ConfigError, DomainError, ZetaLabError
from .expansions import DEFAULT_MODE, MODES, zeta_n_pairs
from .numeric_core import NumericContext, StripPoint, loglog_slope, mp_real
from .quotient_analysis import critical_line_identity, difference_quotient, differences
from .report import CSV, FORMATS, ReportRow, decimal_text, emit_report
from .zeros import KNOWN_ORDINATES, REF, find_zero, pair_analysis
from .zeta_reference import zeta_ref

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_CONFIG = 2
EXIT_IO = 3

DIGITS_ENV = "ZETA_LAB_DIGITS"
DEFAULT_DIGITS = 40

CASES = {"quotient_t30": 40, "low_sigma": 50, "zero25_scaled": 50}
SWEEPS = ("convergence", "quotient_ratio", "contour", "identities", "zeros")

SWEEP_DEFAULTS = {
    "convergence": {"n_list": [1000, 3000, 10000, 30000, 100000], "s_list": ["0.7+5i"]},
    "quotient_ratio": {"n_list": [100000], "s_list": ["0.7+30i"]},
    "contour": {"n_list": [1, 2, 3, 4], "s_list": ["0.3+1i", "0.5+2i", "0.7+4i"]},
    "identities": {"t_list": ["0", "2", "10"]},
    "zeros": {"n_list": [100, 1000, 10000], "t_list": [KNOWN_ORDINATES[7]]},
}

# printed reference values of the reproduction tables
QUOTIENT_T30 = {
    "diff_prime": ("-0.373511085416521e-15", "-0.174631217030210e-15"),
    "diff_dprime": ("0.333100167313817e-17", "-0.338795678198075e-17"),
    "ratio": ("-28.906181537", "-81.826470700"),
    "ratio_model": ("-28.906181640", "-81.826470663"),
}
LOW_SIGMA = {
    "zeta_n_dprime": ("6.38166671825299080091", "0.17431634200064642086"),
    "zeta": ("6.38166671825299080590", "0.17431634200064641950"),
    "q1": "1.000000000000000000078",
}


@dataclass
class RunConfig:
    command: str
    target: str
    digits: int = DEFAULT_DIGITS
    n_list: list = field(default_factory=list)
    s_list: list = field(default_factory=list)
    t_list: list = field(default_factory=list)
    output_format: str = CSV
    output_path: str | None = None
    full: bool = False
    mode: str = DEFAULT_MODE

    def validate(self):
        if int(self.digits) != self.digits or self.digits < 30:
            raise ConfigError("digits must be an integer >= 30")
        if self.output_format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        for N in self.n_list:
            if int(N) != N or N < 1:
                raise ConfigError(f"N must be a positive integer, got {N!r}")
        if self.command == "reproduce":
            if self.target not in CASES:
                raise ConfigError(f"unknown case {self.target!r}")
            if self.digits < CASES[self.target]:
                raise ConfigError(f"{self.target} needs at least {CASES[self.target]} digits")
        elif self.command == "sweep":
            if self.target not in SWEEPS:
                raise ConfigError(f"unknown sweep {self.target!r}")
            need_t = self.target in ("identities", "zeros")
            if (need_t and not self.t_list) or (self.target != "identities" and not self.n_list):
                raise ConfigError("sweep lists must be nonempty")
            if self.target not in ("identities", "zeros") and not self.s_list:
                raise ConfigError("sweep lists must be nonempty")
            if self.target == "contour" and max(self.n_list) > MAX_CAUCHY_N:
                raise ConfigError(f"contour sweep supports N <= {MAX_CAUCHY_N}")
        else:
            raise ConfigError(f"unknown command {self.command!r}")
        return self


def _parse_points(items):
    try:
        return [p if isinstance(p, StripPoint) else StripPoint.parse(p) for p in items]
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_reals(items):
    out = []
    for x in items:
        try:
            out.append(Fraction(str(x).strip()))
        except ValueError as exc:
            raise ConfigError(f"not a decimal number: {x!r}") from exc
    return out


def _parse_ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError(f"not an integer list: {text!r}") from exc


def build_parser():
    p = argparse.ArgumentParser(prog="zeta-lab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    rep = sub.add_parser("reproduce", help="recompute a printed table")
    rep.add_argument("target", choices=sorted(CASES))
    sw = sub.add_parser("sweep", help="grid sweep emitting one report row per point")
    sw.add_argument("target", choices=SWEEPS)
    for q in (rep, sw):
        q.add_argument("--digits", type=int, help=f"precision digits (default ${DIGITS_ENV} or {DEFAULT_DIGITS})")
        grp = q.add_mutually_exclusive_group()
        grp.add_argument("--n", type=int, help="single truncation order")
        grp.add_argument("--n-list", help="comma-separated truncation orders")
        q.add_argument("--s", action="append", help="strip point 'sigma+ti' (repeatable)")
        q.add_argument("--t-list", help="comma-separated ordinates")
        q.add_argument("--out", help="report path (default: stdout for sweeps)")
        q.add_argument("--format", choices=FORMATS, help="report format (default csv)")
        q.add_argument("--mode", choices=MODES, help="error-factor mode")
        q.add_argument("--full", action="store_true", help="run the full-size case")
        q.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    return p


def make_config(args, environ=None) -> RunConfig:
    environ = os.environ if environ is None else environ
    file_cfg = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                file_cfg = json.load(fh)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(file_cfg, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = set(file_cfg) - {"digits", "n_list", "s_list", "t_list", "output_format",
                                   "output_path", "full", "mode"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    defaults = SWEEP_DEFAULTS.get(args.target, {}) if args.command == "sweep" else {}
    digits = args.digits
    if digits is None:
        digits = file_cfg.get("digits")
    if digits is None and environ.get(DIGITS_ENV):
        try:
            digits = int(environ[DIGITS_ENV])
        except ValueError as exc:
            raise ConfigError(f"{DIGITS_ENV} is not an integer") from exc
    if digits is None:
        digits = CASES.get(args.target, DEFAULT_DIGITS) if args.command == "reproduce" else DEFAULT_DIGITS

    if args.n is not None:
        n_list = [args.n]
    elif args.n_list:
        n_list = _parse_ints(args.n_list)
    else:
        n_list = list(file_cfg.get("n_list", defaults.get("n_list", [])))
    s_list = args.s or file_cfg.get("s_list", defaults.get("s_list", []))
    t_list = args.t_list.split(",") if args.t_list else file_cfg.get("t_list", defaults.get("t_list", []))
    cfg = RunConfig(
        command=args.command,
        target=args.target,
        digits=digits,
        n_list=n_list,
        s_list=_parse_points(s_list),
        t_list=_parse_reals(t_list),
        output_format=args.format or file_cfg.get("output_format", CSV),
        output_path=args.out or file_cfg.get("output_path"),
        full=args.full or bool(file_cfg.get("full", False)),
        mode=args.mode or file_cfg.get("mode", DEFAULT_MODE),
    )
    return cfg.validate()


# ---------------------------------------------------------------- checks


def matches_significant(x, printed: str, sig: int) -> bool:
    """x rounds to the same `sig` significant digits as the printed value."""
    with mp.workdps(max(mp.dps, sig + 20)):
        return mpmath.nstr(mpf(x), sig) == mpmath.nstr(mpf(printed), sig)


def matches_decimals(x, printed: str, decimals: int) -> bool:
    """x agrees with the printed value at `decimals` places.

    Printed tables may round or truncate the last digit, so either reading
    of x's expansion is accepted; both keep the error below one unit there.
    """
    with mp.workdps(mp.dps + decimals + 20):
        scale = mpf(10) ** decimals
        target = mpmath.nint(mpf(printed) * scale)
        y = mpf(x) * scale
        truncated = mpmath.floor(y) if y >= 0 else mpmath.ceil(y)
        return mpmath.nint(y) == target or truncated == target


def _complex_text(pair):
    re_, im = pair
    sign = "-" if im.startswith("-") else "+"
    return f"{re_} {sign} {im.lstrip('+-')}i"


# ---------------------------------------------------------------- reproduce


def _reproduce_quotient_t30(cfg, ctx):
    N = cfg.n_list[0] if cfg.n_list else 10**5
    s = cfg.s_list[0] if cfg.s_list else StripPoint.parse("0.7+30i")
    rep = difference_quotient(N, s, cfg.mode, ctx)
    cmd = "reproduce quotient_t30"
    inputs = {"N": N, "s": str(s)}
    rows = []
    for name in ("diff_prime", "diff_dprime"):
        v = getattr(rep, name)
        pr, pi_ = QUOTIENT_T30[name]
        rows.append(ReportRow.make(cmd, name, cfg.digits, inputs,
                                   {"value": v, "printed": _complex_text(QUOTIENT_T30[name])},
                                   checks={"digits15": matches_significant(v.real, pr, 15)
                                           and matches_significant(v.imag, pi_, 15)}))
    for name in ("ratio", "ratio_model"):
        v = getattr(rep, name)
        pr, pi_ = QUOTIENT_T30[name]
        with mp.workdps(cfg.digits):
            dev = abs(v - mpmath.mpc(pr, pi_))
        rows.append(ReportRow.make(cmd, name, cfg.digits, inputs,
                                   {"value": v, "printed": _complex_text(QUOTIENT_T30[name])},
                                   {"deviation": dev}, {"within_1e-6": dev < mpf("1e-6")}))
    rows.append(ReportRow.make(cmd, "ratio_residual", cfg.digits, inputs, {"value": rep.ratio_residual},
                               checks={"below_1e-3": rep.ratio_residual < mpf("1e-3")}))
    return rows


def _reproduce_low_sigma(cfg, ctx):
    full_n = 10**7
    N = cfg.n_list[0] if cfg.n_list else (full_n if cfg.full else 10**5)
    s = StripPoint.parse("0.01+100i")
    cmd = "reproduce low_sigma"
    inputs = {"N": N, "s": str(s)}
    zp, zpp = zeta_n_pairs([N], s, cfg.mode, ctx, extra_digits=10)[0]
    zeta = zeta_ref(s, ctx).value
    with mp.workdps(ctx.working_digits):
        q = abs(zp) / abs(zpp)
        d1 = abs(zp - zeta)
        d2 = abs(zpp - zeta)
    ref_ok = all(matches_decimals(v, p, 20) for v, p in zip((zeta.real, zeta.imag), LOW_SIGMA["zeta"]))
    rows = [ReportRow.make(cmd, "zeta", cfg.digits, inputs,
                           {"value": zeta, "printed": _complex_text(LOW_SIGMA["zeta"])},
                           checks={"decimals20": ref_ok})]
    if N == full_n:
        dp_ok = all(matches_decimals(v, p, 20) for v, p in zip((zpp.real, zpp.imag), LOW_SIGMA["zeta_n_dprime"]))
        rows.append(ReportRow.make(cmd, "zeta_n_dprime", cfg.digits, inputs,
                                   {"value": zpp, "printed": _complex_text(LOW_SIGMA["zeta_n_dprime"])},
                                   {"diff": d2}, {"decimals20": dp_ok}))
        rows.append(ReportRow.make(cmd, "zeta_n_prime", cfg.digits, inputs, {"value": zp},
                                   {"diff": d1}, {"diff_below_1e-21": d1 < mpf("1e-21")}))
        rows.append(ReportRow.make(cmd, "q1", cfg.digits, inputs,
                                   {"value": q, "printed": LOW_SIGMA["q1"]},
                                   checks={"decimals21": matches_decimals(q, LOW_SIGMA["q1"], 21)}))
    else:
        # reduced size: the dprime remainder scales like N^(-sigma-3)
        lo, hi = mpf(10) ** mpf("-11.5"), mpf(10) ** mpf("-9.5")
        rows.append(ReportRow.make(cmd, "zeta_n_dprime", cfg.digits, inputs, {"value": zpp},
                                   {"diff": d2}, {"diff_in_envelope": lo <= d2 <= hi}))
        rows.append(ReportRow.make(cmd, "zeta_n_prime", cfg.digits, inputs, {"value": zp},
                                   {"diff": d1}, {"prime_closer": d1 < d2}))
        with mp.workdps(ctx.working_digits):
            env = 2 * (d1 + d2) / abs(zeta)
            dev = abs(q - 1)
        rows.append(ReportRow.make(cmd, "q1", cfg.digits, inputs, {"value": q},
                                   {"deviation": dev, "envelope": env}, {"within_envelope": dev <= env}))
    return rows


def _reproduce_zero25(cfg, ctx):
    N = cfg.n_list[0] if cfg.n_list else 10**4
    cmd = "reproduce zero25_scaled"
    s0 = find_zero(REF, None, KNOWN_ORDINATES[25], "0.5", ctx)
    tol = ctx.tolerance()
    with mp.workdps(ctx.working_digits):
        t_dev = abs(s0.imag - mpf(KNOWN_ORDINATES[25]))
        s_dev = abs(s0.real - mpf(1) / 2)
    inputs = {"N": N, "t_seed": KNOWN_ORDINATES[25][:34]}
    rows = [ReportRow.make(cmd, "s0", cfg.digits, inputs, {"value": s0},
                           {"ordinate_deviation": t_dev, "sigma_deviation": s_dev},
                           {"ordinate": t_dev <= tol, "on_line": s_dev <= tol})]
    point = StripPoint.from_mpc(s0)
    rep = difference_quotient(N, point, cfg.mode, ctx)
    with mp.workdps(ctx.working_digits):
        sigma = mpf(point.sigma.numerator) / point.sigma.denominator
        dev = abs(rep.q1 - 1)
        env = abs(abs(rep.ratio_model) - 1) + rep.ratio_residual
        bound = mpf(N) ** (2 * sigma - 2)
    rows.append(ReportRow.make(cmd, "q1", cfg.digits, inputs,
                               {"value": rep.q1, "zeta_n_prime": rep.diff_prime, "zeta_n_dprime": rep.diff_dprime,
                                "ratio_model": rep.ratio_model},
                               {"deviation": dev, "envelope": env, "ratio_residual": rep.ratio_residual},
                               {"within_envelope": dev <= env, "ratio_residual_bound": rep.ratio_residual <= bound}))
    return rows


REPRODUCERS = {
    "quotient_t30": _reproduce_quotient_t30,
    "low_sigma": _reproduce_low_sigma,
    "zero25_scaled": _reproduce_zero25,
}


# ---------------------------------------------------------------- sweeps


def _failed_row(cmd, label, digits, inputs, exc):
    return ReportRow.make(cmd, label, digits, inputs, {"error": f"{type(exc).__name__}: {exc}"},
                          checks={"evaluated": False})


def _sweep_convergence(cfg, ctx):
    cmd = "sweep convergence"
    Ns = sorted(cfg.n_list)
    rows = []
    for s in cfg.s_list:
        try:
            diffs = differences(Ns, s, cfg.mode, ctx)
        except ZetaLabError as exc:
            rows.extend(_failed_row(cmd, f"N={N} s={s}", cfg.digits, {"N": N, "s": str(s)}, exc) for N in Ns)
            continue
        sigma = float(s.sigma)
        slopes = {}
        checks = {}
        if len(Ns) > 1:
            slopes["slope_prime"] = loglog_slope(Ns, [d[0] for d in diffs])
            slopes["slope_dprime"] = loglog_slope(Ns, [d[1] for d in diffs])
            # measured orders of the leading remainders: sigma-4 and -sigma-3
            checks["slope_prime"] = abs(slopes["slope_prime"] - (sigma - 4)) <= 0.1
            checks["slope_dprime"] = abs(slopes["slope_dprime"] - (-sigma - 3)) <= 0.1
        for N, (d1, d2) in zip(Ns, diffs):
            rows.append(ReportRow.make(cmd, f"N={N} s={s}", cfg.digits, {"N": N, "s": str(s)},
                                       {"diff_prime": d1, "diff_dprime": d2, **slopes}, checks=checks))
    return rows


def _sweep_quotient_ratio(cfg, ctx):
    cmd = "sweep quotient_ratio"
    rows = []
    for s in cfg.s_list:
        for N in cfg.n_list:
            inputs = {"N": N, "s": str(s)}
            try:
                rep = difference_quotient(N, s, cfg.mode, ctx)
            except ZetaLabError as exc:
                rows.append(_failed_row(cmd, f"N={N} s={s}", cfg.digits, inputs, exc))
                continue
            with mp.workdps(ctx.working_digits):
                bound = mpf(N) ** (2 * mp_real(s.sigma) - 2)
            rows.append(ReportRow.make(cmd, f"N={N} s={s}", cfg.digits, inputs,
                                       {"q1": rep.q1, "ratio": rep.ratio, "ratio_model": rep.ratio_model},
                                       {"ratio_residual": rep.ratio_residual, "bound": bound},
                                       {"ratio_residual_bound": rep.ratio_residual <= bound}))
    return rows


def _sweep_contour(cfg, ctx):
    cmd = "sweep contour"
    tol = mpf(10) ** (-(cfg.digits - 15))
    rows = []
    for s in cfg.s_list:
        for N in cfg.n_list:
            inputs = {"N": N, "s": str(s)}
            try:
                b = cauchy_check(N, s, ctx, cfg.mode)
            except ZetaLabError as exc:
                rows.append(_failed_row(cmd, f"N={N} s={s}", cfg.digits, inputs, exc))
                continue
            rows.append(ReportRow.make(cmd, f"N={N} s={s}", cfg.digits, inputs,
                                       {"i1": b.i1_numeric, "i2": b.i2_numeric, "sn": b.sn, "i2_model": b.i2_model},
                                       {"cauchy_residual": b.cauchy_residual},
                                       {"cauchy_residual": b.cauchy_residual < tol}))
    return rows


def _sweep_identities(cfg, ctx):
    cmd = "sweep identities"
    tol = mpf(10) ** (-(cfg.digits - 10))
    rows = []
    for t in cfg.t_list:
        chk = critical_line_identity(t, ctx)
        checks = {"identity": chk.deviation < tol}
        checks.update({k: v < tol for k, v in chk.factor_deviations.items()})
        rows.append(ReportRow.make(cmd, f"t={decimal_text(chk.t, cfg.digits)}", cfg.digits,
                                   {"t": chk.t}, {"value": chk.value},
                                   {"deviation": chk.deviation, **chk.factor_deviations}, checks))
    return rows


def _sweep_zeros(cfg, ctx):
    cmd = "sweep zeros"
    tol = ctx.tolerance(5)
    Ns = sorted(cfg.n_list)
    rows = []
    for t in cfg.t_list:
        reports = []
        for N in Ns:
            try:
                reports.append(pair_analysis(N, t, ctx, cfg.mode))
            except ZetaLabError as exc:
                reports.append(exc)
        good = [r for r in reports if not isinstance(r, Exception)]
        extra = {}
        if len(good) > 1:
            extra["slope_prime"] = loglog_slope([r.N for r in good], [r.displacement_prime for r in good])
            extra["slope_dprime"] = loglog_slope([r.N for r in good], [r.displacement_dprime for r in good])
        previous = None
        for N, r in zip(Ns, reports):
            inputs = {"N": N, "t_seed": decimal_text(mp_real(t), 20) if not isinstance(t, str) else t}
            if isinstance(r, Exception):
                rows.append(_failed_row(cmd, f"N={N} t={inputs['t_seed']}", cfg.digits, inputs, r))
                previous = None
                continue
            with mp.workdps(ctx.working_digits):
                near_seed = abs(r.s0_ref.imag - mp_real(t)) <= mpf(1) / 2
            checks = {
                "residual_ref": r.residual_ref <= tol,
                "residual_prime": r.residual_prime <= tol,
                "residual_dprime": r.residual_dprime <= tol,
                "near_seed": near_seed,
            }
            if previous is not None:
                checks["epsilon_decreasing"] = abs(r.epsilon_sep) < abs(previous.epsilon_sep)
            previous = r
            rows.append(ReportRow.make(
                cmd, f"N={N} t={inputs['t_seed']}", cfg.digits, inputs,
                {"s0_ref": r.s0_ref, "s0_prime": r.s0_prime, "s0_dprime": r.s0_dprime,
                 "epsilon_sep": r.epsilon_sep, "pair_defect": r.pair_defect,
                 "displacement_prime": r.displacement_prime, "displacement_dprime": r.displacement_dprime,
                 "derivative_order_p": r.derivative_order_p, **extra},
                {"residual_ref": r.residual_ref, "residual_prime": r.residual_prime,
                 "residual_dprime": r.residual_dprime},
                checks))
    return rows


SWEEPERS = {
    "convergence": _sweep_convergence,
    "quotient_ratio": _sweep_quotient_ratio,
    "contour": _sweep_contour,
    "identities": _sweep_identities,
    "zeros": _sweep_zeros,
}


# ---------------------------------------------------------------- entry points


def _print_table(rows, stream):
    for r in rows:
        value = ", ".join(f"{k}={v}" for k, v in r.outputs.items() if k.startswith("value"))
        printed = r.outputs.get("printed", "")
        status = "PASS" if r.passed else "FAIL"
        stream.write(f"{r.label:<14} {status}  computed: {value}\n")
        if printed:
            stream.write(f"{'':<20}printed: {printed}\n")


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    ctx = NumericContext(cfg.digits)
    # checks below take .real/.imag of results, which round to the active precision
    with mp.workdps(ctx.working_digits):
        if cfg.command == "reproduce":
            rows = REPRODUCERS[cfg.target](cfg, ctx)
            _print_table(rows, stdout)
        else:
            rows = SWEEPERS[cfg.target](cfg, ctx)
    if cfg.output_path or cfg.command == "sweep":
        try:
            emit_report(rows, cfg.output_format, cfg.output_path, stdout)
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK if all(r.passed for r in rows) else EXIT_TOLERANCE


def main(argv=None, environ=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args, environ)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return run(cfg)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ZetaLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE


if __name__ == "__main__":
    sys.exit(main())
