"""Command-line interface.

Subcommands:
  fracineq sweep --config FILE [--alpha X]... [--interval a,b]...
                 [--function NAME]... [--format csv|json] [--out FILE]
  fracineq check-identity --function NAME --interval a,b --alpha X
  fracineq certify --function NAME --s X

Exit codes: 0 all checks pass, 1 at least one check fails, 2 bad
configuration or arguments.  The environment variable FRACINEQ_QUAD_TOL
overrides the configured quadrature tolerance.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

from .errors import ConfigError, DomainError, FracineqError
from .funclib import certify_declared, get_function
from .hhbounds import defect_identity_rhs, trapezoid_defect
from .quadrature import Interval
from .sweep import load_config, render_report, run_sweep, validate_config

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2

DEFAULT_IDENTITY_SLACK = 1e-8


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracineq",
        description="Verify fractional trapezoid-defect identities and bounds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run the configured check sweep")
    p_sweep.add_argument("--config", required=True, help="path to config file")
    p_sweep.add_argument("--alpha", action="append", type=float, default=None,
                         help="override the alphas list (repeatable)")
    p_sweep.add_argument("--interval", action="append", default=None,
                         metavar="a,b", help="override the intervals list (repeatable)")
    p_sweep.add_argument("--function", action="append", default=None,
                         help="override the functions list (repeatable)")
    p_sweep.add_argument("--format", choices=("csv", "json"), default=None)
    p_sweep.add_argument("--out", default=None, help="output path (default stdout)")

    p_id = sub.add_parser("check-identity",
                          help="check the defect identity for one tuple")
    p_id.add_argument("--function", required=True)
    p_id.add_argument("--interval", required=True, metavar="a,b")
    p_id.add_argument("--alpha", required=True, type=float)

    p_cert = sub.add_parser("certify",
                            help="certify a catalog function's declared class")
    p_cert.add_argument("--function", required=True)
    p_cert.add_argument("--s", required=True, type=float)

    return parser


def _apply_env_quad_tol(config):
    raw = os.environ.get("FRACINEQ_QUAD_TOL")
    if raw is None:
        return config
    try:
        tol = float(raw)
    except ValueError as exc:
        raise ConfigError("quad_tol",
                          f"FRACINEQ_QUAD_TOL is not a number: {raw!r}") from exc
    config = replace(config, quad_tol=tol)
    validate_config(config)
    return config


def _cmd_sweep(args) -> int:
    config = load_config(args.config)
    overrides = {}
    if args.alpha:
        overrides["alphas"] = tuple(args.alpha)
    if args.interval:
        overrides["intervals"] = tuple(Interval.parse(t) for t in args.interval)
    if args.function:
        overrides["functions"] = tuple(args.function)
    if args.format:
        overrides["output_format"] = args.format
    if overrides:
        config = replace(config, **overrides)
        validate_config(config)
    config = _apply_env_quad_tol(config)

    report = run_sweep(config)
    data = render_report(report, config.output_format)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
    return EXIT_FAIL if report.any_fail else EXIT_OK


def _cmd_check_identity(args) -> int:
    f = get_function(args.function)
    iv = Interval.parse(args.interval)
    lhs = trapezoid_defect(f, iv, args.alpha).lhs
    rhs = defect_identity_rhs(f, iv, args.alpha)
    diff = abs(lhs - rhs)
    ok = diff <= DEFAULT_IDENTITY_SLACK
    print(f"function={f.name} interval=[{iv.a:g},{iv.b:g}] alpha={args.alpha:g}")
    print(f"defect lhs      = {lhs:.17g}")
    print(f"identity rhs    = {rhs:.17g}")
    print(f"|lhs - rhs|     = {diff:.3e}  ({'PASS' if ok else 'FAIL'} at 1e-08)")
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_certify(args) -> int:
    f = get_function(args.function)
    result = certify_declared(f, s=args.s)
    label = f"{f.name} as {f.declared_class.kind} at s={args.s:g}"
    if result.passed:
        print(f"PASS {label} ({result.checked} triples checked)")
        return EXIT_OK
    w = result.witness
    print(f"FAIL {label}: witness x={w.x:.17g} y={w.y:.17g} lam={w.lam:.17g} "
          f"lhs={w.lhs:.17g} rhs={w.rhs:.17g}")
    return EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad arguments, matching the config-error code
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "check-identity":
            return _cmd_check_identity(args)
        return _cmd_certify(args)
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FracineqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
