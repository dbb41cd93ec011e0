"""Command-line front end.

Subcommands write CSV (default) or JSON lines to stdout; diagnostics go to
stderr.  Exit codes: 0 ok, 1 usage error, 2 evaluation/check failure,
3 expectation failure (``demo-positivity --expect-failure``).

Complex literals are ``a``, ``a+bi``, ``a-bi`` or ``bi`` with optional
exponents.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import re
import sys
from dataclasses import dataclass, field

from . import criterion, mellin, oracle, regdemo, theta
from .errors import AccuracyError, DomainError, ExclusionError, PoleError, ZetaCritError
from .results import Method

EXIT_OK, EXIT_USAGE, EXIT_CHECK, EXIT_EXPECT = 0, 1, 2, 3
STATUSES = ("ok", "excluded", "pole", "accuracy_fail")
RECORD_FIELDS = ("command", "inputs", "value_re", "value_im", "abs_error", "method", "status")
ZERO_FIELDS = ("ordinate", "bracket_lo", "bracket_hi", "criterion_residual", "oracle_residual")
ORACLE_REL_ERROR = 1e-12

_COMPLEX_RE = re.compile(
    r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?([+-](\d+\.?\d*|\.\d+)?([eE][+-]?\d+)?i)?$"
    r"|^[+-]?(\d+\.?\d*|\.\d+)?([eE][+-]?\d+)?i$"
)


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``a+bi`` style literals."""
    t = text.strip()
    if not _COMPLEX_RE.match(t):
        raise UsageError(f"malformed complex literal {text!r} (expected a+bi)")
    if t.endswith("i"):
        head = t[:-1]
        # a bare 'i' or '+i' carries an implicit unit coefficient
        if head == "" or head[-1] in "+-":
            head += "1"
        t = head + "j"
    return complex(t)


def fmt(x: float) -> str:
    return format(float(x), ".15g")


@dataclass
class OutputRecord:
    command: str
    inputs: dict = field(default_factory=dict)
    value_re: float = math.nan
    value_im: float = math.nan
    abs_error: float = math.nan
    method: str = ""
    status: str = "ok"

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "ok" and not all(map(math.isfinite, (self.value_re, self.value_im, self.abs_error))):
            raise ValueError("status ok requires finite value and error fields")

    def row(self) -> dict:
        inputs = ";".join(f"{k}={_fmt_input(v)}" for k, v in self.inputs.items())
        return {
            "command": self.command, "inputs": inputs,
            "value_re": fmt(self.value_re), "value_im": fmt(self.value_im),
            "abs_error": fmt(self.abs_error), "method": self.method, "status": self.status,
        }

    def json_obj(self) -> dict:
        return {
            "command": self.command, "inputs": {k: _json_input(v) for k, v in self.inputs.items()},
            "value_re": _json_float(self.value_re), "value_im": _json_float(self.value_im),
            "abs_error": _json_float(self.abs_error), "method": self.method, "status": self.status,
        }


def _fmt_input(v) -> str:
    if isinstance(v, complex):
        return f"{fmt(v.real)}{'+' if v.imag >= 0 else '-'}{fmt(abs(v.imag))}i"
    if isinstance(v, float):
        return fmt(v)
    return str(v)


def _json_float(x):
    return float(fmt(x)) if math.isfinite(x) else None


def _json_input(v):
    if isinstance(v, complex):
        return [_json_float(v.real), _json_float(v.imag)]
    if isinstance(v, float):
        return _json_float(v)
    return v


class Writer:
    def __init__(self, stream, fmt_name: str, fields):
        self.stream = stream
        self.json = fmt_name == "json"
        if not self.json:
            self.csv = csv.DictWriter(stream, fieldnames=fields, lineterminator="\n")
            self.csv.writeheader()

    def write(self, row: dict, obj: dict | None = None):
        if self.json:
            self.stream.write(json.dumps(obj if obj is not None else row) + "\n")
        else:
            self.csv.writerow(row)


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # Let "-1+2i" through as a positional, as argparse already does for "-1".
        self._negative_number_matcher = _COMPLEX_RE

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--method", choices=("quadrature", "gamma-series"), default="gamma-series",
                        help="backend for F (default: gamma-series)")
    common.add_argument("--tol", type=float, default=1e-12, help="evaluation tolerance (default: 1e-12)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="write records to this file instead of stdout")

    parser = _Parser(prog="zetacrit", description="Theta-integral zeta criterion toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="evaluate a function at points")
    p.add_argument("function", choices=("omega", "F", "Z", "Z_oracle", "zeta", "inner", "proposition", "corollary"))
    p.add_argument("points", nargs="*", help="complex literals (inner takes pairs s z)")
    p.add_argument("--t", type=float, action="append", default=[], help="real argument for omega (repeatable)")

    p = sub.add_parser("scan-zeros", parents=[common], help="find critical-line zeros")
    p.add_argument("y_lo", type=float)
    p.add_argument("y_hi", type=float)
    p.add_argument("step", type=float, nargs="?", default=0.25)
    p.add_argument("refine_tol", type=float, nargs="?", default=1e-9)
    p.add_argument("--dps", type=int, default=criterion.ZERO_FINDER_DPS,
                   help="working digits for Z on the critical line; 0 = double (default: %(default)s)")
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("check-identities", parents=[common], help="run the identity checks")
    p.add_argument("--grid-im-max", type=float, default=60.0)
    p.add_argument("--tolerance", type=float, default=1e-10)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("demo-positivity", parents=[common], help="scan the regularised product for negative values")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--l", type=float, required=True)
    p.add_argument("x_lo", type=float)
    p.add_argument("x_hi", type=float)
    p.add_argument("step", type=float)
    p.add_argument("--expect-failure", action="store_true",
                   help="exit 3 unless at least one negative value is found")
    return parser


def _method(args) -> Method:
    return Method.QUADRATURE if args.method == "quadrature" else Method.GAMMA_SERIES


def _guarded(command, inputs, fn) -> OutputRecord:
    try:
        value, err, method = fn()
    except ExclusionError:
        return OutputRecord(command, inputs, status="excluded")
    except PoleError:
        return OutputRecord(command, inputs, status="pole")
    except AccuracyError as exc:
        print(f"accuracy failure at {inputs}: {exc}", file=sys.stderr)
        return OutputRecord(command, inputs, status="accuracy_fail")
    value = complex(value)
    return OutputRecord(command, inputs, value.real, value.imag, err, method)


def cmd_eval(args) -> list[OutputRecord]:
    method = _method(args)
    tol = args.tol
    fn_name = args.function
    records = []
    if fn_name == "omega":
        ts = list(args.t) + [parse_complex(p).real for p in args.points]
        if not ts:
            raise UsageError("omega needs --t values")
        for t in ts:
            if not t > 0:
                raise UsageError(f"omega requires t > 0, got {t}")
            records.append(_guarded("eval omega", {"t": t}, lambda t=t: _res(theta.omega_t(t, tol))))
        return records
    points = [parse_complex(p) for p in args.points]
    if not points:
        raise UsageError(f"{fn_name} needs at least one point")
    if fn_name == "inner":
        if len(points) % 2:
            raise UsageError("inner takes pairs of points: s z [s z ...]")
        for s, z in zip(points[::2], points[1::2]):
            records.append(_guarded("eval inner", {"s": s, "z": z},
                                    lambda s=s, z=z: _res(criterion.inner_product(s, z, tol=tol, method=method))))
        return records
    for p in points:
        if fn_name == "F":
            fn = lambda p=p: _res(mellin.F(p, tol, method))
        elif fn_name == "Z":
            fn = lambda p=p: _res(criterion.Z(p, tol=tol, method=method))
        elif fn_name == "Z_oracle":
            fn = lambda p=p: _oracle_res(oracle.Z_oracle(p))
        elif fn_name == "zeta":
            fn = lambda p=p: _oracle_res(oracle.zeta_oracle(p))
        elif fn_name == "proposition":
            fn = lambda p=p: _report_res(criterion.proposition_residual(p, tol=tol, method=method), method)
        else:
            fn = lambda p=p: _report_res(criterion.corollary_residual(p.real, tol=tol, method=method), method)
        key = "y" if fn_name == "corollary" else ("z" if fn_name == "proposition" else "s")
        records.append(_guarded(f"eval {fn_name}", {key: p.real if key == "y" else p}, fn))
    return records


def _res(r):
    return r.value, r.abs_error_estimate, r.method.value


def _oracle_res(v):
    return v, ORACLE_REL_ERROR * abs(v), Method.ORACLE.value


def _report_res(rep, method):
    return rep.residual, rep.abs_error_estimate, method.value


def cmd_scan_zeros(args, out) -> int:
    w = Writer(out, args.format, ZERO_FIELDS)
    try:
        zeros = criterion.find_zeros(args.y_lo, args.y_hi, args.step, args.refine_tol,
                                     dps=args.dps or None, workers=args.workers)
    except AccuracyError as exc:
        print(f"scan-zeros: {exc}", file=sys.stderr)
        return EXIT_CHECK
    for z in zeros:
        values = (z.ordinate, z.bracket[0], z.bracket[1], z.criterion_residual, z.oracle_residual)
        w.write({k: fmt(v) for k, v in zip(ZERO_FIELDS, values)},
                {k: _json_float(v) for k, v in zip(ZERO_FIELDS, values)})
    return EXIT_OK


# Grid for the Z and F checks.
CHECK_RE = (-1.5, -0.5, 0.25, 0.5, 0.75, 1.5, 2.0)
CHECK_IM = (0.0, 5.0, 15.0, 30.0, 60.0)
FALSIFICATION_MARGIN = 1e-2


def identity_checks(grid_im_max: float = 60.0, tol: float = 1e-12, seed: int = 0, method=Method.GAMMA_SERIES):
    """Yield (name, max residual, passes(threshold)) for every identity check."""
    grid = [complex(x, y) for x in CHECK_RE for y in CHECK_IM if y <= grid_im_max]
    below = lambda r, thr: r < thr

    yield "mellin_dual_method", max(
        abs(mellin.F_quadrature(s, tol).value - mellin.F_gamma_series(s, tol).value) for s in grid), below

    def z_residual(s, pi_power=0.5):
        return abs(criterion.Z(s, tol=tol, method=method).value - oracle.Z_oracle(s, pi_power=pi_power))

    yield "Z_vs_oracle_pi^(-s/2)", max(z_residual(s) for s in grid if s not in (0, 1)), below
    # With pi^(-s) in place of pi^(-s/2) the identity must break.
    yield "Z_vs_oracle_pi^(-s)_must_fail", z_residual(2, pi_power=1.0), lambda r, thr: r > FALSIFICATION_MARGIN

    rng = random.Random(seed)

    def rand_c():
        return complex(rng.uniform(-5, 5), rng.uniform(-5, 5))

    shift = 0.0
    for _ in range(50):
        s, z, w = rand_c(), rand_c(), rand_c()
        a = criterion.inner_product(s, z, tol=tol, method=method).value
        b = criterion.inner_product(s - w.conjugate(), z + w, tol=tol, method=method).value
        shift = max(shift, abs(a - b))
    yield "shift_identity", shift, below

    jac = 0.0
    for i in range(200):
        t = 0.05 * (20 / 0.05) ** (i / 199)
        lhs = 2 * theta.omega_t(t, tol).value + 1
        rhs = t**-0.5 * (2 * theta.omega_t(1 / t, tol).value + 1)
        jac = max(jac, abs(lhs - rhs))
    yield "theta_functional_equation", jac, below

    eig = 0.0
    for s in (0, 2, 1 + 3j):
        for T in (0.5, 1.0, 2.0):
            exact = s / 4 * criterion.eigenfunction_value(s, T)
            eig = max(eig, abs(criterion.apply_A_fd(s, T) - exact))
    yield "eigenrelation", eig, below


def cmd_check_identities(args, out) -> int:
    w = Writer(out, args.format, RECORD_FIELDS)
    first_failure = None
    worst = 0.0
    try:
        for name, residual, passes in identity_checks(args.grid_im_max, args.tol, args.seed, _method(args)):
            ok = passes(residual, args.tolerance)
            if not ok and first_failure is None:
                first_failure = name
            if not name.endswith("must_fail"):
                worst = max(worst, residual)
            rec = OutputRecord("check-identities", {"identity": name, "tolerance": args.tolerance},
                               residual, 0.0, 0.0, "max_residual", "ok" if ok else "accuracy_fail")
            w.write(rec.row(), rec.json_obj())
    except ZetaCritError as exc:
        print(f"check-identities: evaluation failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    summary = OutputRecord("check-identities", {"identity": "summary", "tolerance": args.tolerance},
                           worst, 0.0, 0.0, "max_residual", "ok" if first_failure is None else "accuracy_fail")
    w.write(summary.row(), summary.json_obj())
    if first_failure is not None:
        print(f"check-identities: first failing identity: {first_failure}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def cmd_demo_positivity(args, out) -> int:
    try:
        params = regdemo.RegProductParams(args.k, args.l)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not args.x_lo < args.x_hi or not args.step > 0:
        raise UsageError("need x_lo < x_hi and step > 0")
    scan = regdemo.positivity_scan(params, args.x_lo, args.x_hi, args.step)
    w = Writer(out, args.format, RECORD_FIELDS)
    inputs = {"k": args.k, "l": args.l}
    rows = [(x, OutputRecord("demo-positivity", {**inputs, "x": x}, v, 0.0, oracle_err(v), "oracle"))
            for x, v in scan.negatives]
    rows += [(x, OutputRecord("demo-positivity", {**inputs, "x": x}, status="pole")) for x in scan.skipped]
    for _, rec in sorted(rows, key=lambda r: r[0]):
        w.write(rec.row(), rec.json_obj())
    if args.expect_failure and not scan.negatives:
        print("demo-positivity: no negative self-products found", file=sys.stderr)
        return EXIT_EXPECT
    return EXIT_OK


def oracle_err(v: float) -> float:
    return ORACLE_REL_ERROR * abs(v)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    buf = io.StringIO()
    try:
        if args.command == "eval":
            records = cmd_eval(args)
            w = Writer(buf, args.format, RECORD_FIELDS)
            for rec in records:
                w.write(rec.row(), rec.json_obj())
            code = EXIT_OK if all(r.status == "ok" for r in records) else EXIT_CHECK
        elif args.command == "scan-zeros":
            code = cmd_scan_zeros(args, buf)
        elif args.command == "check-identities":
            code = cmd_check_identities(args, buf)
        else:
            code = cmd_demo_positivity(args, buf)
    except (UsageError, DomainError) as exc:
        print(f"zetacrit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
