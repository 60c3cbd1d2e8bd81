"""Command line entry point ``hp``.

Exit status: 0 on success, 1 when a check or verification suite finds a
violation, 2 on usage errors (including symbolic-cap refusals).
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import characters as chars
from . import report, verify
from .exact import SymbolicCapError, ThetaMode, format_scalar
from .polyspace import Partition, parse_partition
from .spectra import brute, catalog, closed, eigenfunctions

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _partition_arg(text: str) -> Partition:
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not a partition: {exc}") from None


def _composition_arg(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated list of integers") from None
    if not parts or any(p <= 0 for p in parts):
        raise argparse.ArgumentTypeError(f"{text!r} must list positive integers")
    return parts


def _theta_arg(text: str) -> ThetaMode:
    try:
        return ThetaMode.parse(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is neither 'sym' nor a rational p/q") from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be at least 1")
    return value


def _mlist_arg(text: str) -> list[int]:
    return [_positive(x) for x in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hp", description="Exact spectra of Heckman-Polychronakos operators.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=report.FORMATS, default="json")
    common.add_argument("--cap", type=_positive, default=None, help="symbolic dimension cap (default: HP_SYMBOLIC_CAP or 24)")
    theta = argparse.ArgumentParser(add_help=False)
    theta.add_argument("--theta", type=_theta_arg, default=ThetaMode.symbolic(), help="'sym' or a rational p/q")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eig", parents=[common, theta], help="symmetric eigenvalue eig_m(lambda)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--m", type=_positive, required=True)

    p = sub.add_parser("series", parents=[common, theta], help="eig_0..eig_M from the generating function")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--mmax", type=int, required=True)

    p = sub.add_parser("spectrum", parents=[common, theta], help="spectrum of sum T_i^m on V_lambda")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--m", type=_positive, required=True)

    p = sub.add_parser("trace", parents=[common, theta], help="isotypic trace, closed form and brute force")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--tau", type=_partition_arg, required=True)
    p.add_argument("--m", type=_positive, required=True)

    p = sub.add_parser("jack", parents=[common, theta], help="symmetric Jack polynomial")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--m-list", dest="m_list", type=_mlist_arg, default=[2])

    p = sub.add_parser("basis", parents=[common, theta], help="joint eigenfunctions of P_m, m in m-list")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--m-list", dest="m_list", type=_mlist_arg, default=[1, 2])

    p = sub.add_parser("char", parents=[common], help="irreducible character value")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--tau", type=_partition_arg, required=True)
    p.add_argument("--class", dest="cls", type=_composition_arg, required=True)

    p = sub.add_parser("avgchar", parents=[common], help="character averaged over a Young subgroup")
    p.add_argument("--tau", type=_partition_arg, required=True)
    p.add_argument("--blocks", type=_composition_arg, required=True)
    p.add_argument("--subset", type=_composition_arg, required=True, help="1-based block indices joined by the cycle")

    p = sub.add_parser("catalog3", parents=[common, theta], help="three-variable eigenvalue catalog")
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--m", type=_positive, required=True)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=verify.SUITES + ("all",))
    p.add_argument("--n", type=_positive, default=3)
    p.add_argument("--maxdeg", type=int, default=4)
    p.add_argument("--mmax", type=_positive, default=3)
    p.add_argument("--theta", type=_theta_arg, default=ThetaMode.at(1))
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)

    sub.add_parser("schema", help="print the JSON schema of all reports")
    return parser


# ---------------------------------------------------------------------------


def _check_lambda(lam: Partition, n: int) -> None:
    if len(lam) > n:
        raise UsageError(f"--lambda {lam} has more than --n {n} parts")


def _check_tau(tau: Partition, n: int) -> None:
    if sum(tau) != n:
        raise UsageError(f"--tau {tau} is not a partition of --n {n}")


def cmd_eig(args) -> tuple[dict, bool]:
    _check_lambda(args.lam, args.n)
    value = closed.eig_sym_closed(args.lam, args.m, args.n, args.theta)
    brute_value = brute.symmetric_eigenvalue_brute(args.lam, args.m, args.n, args.theta)
    payload = {
        "command": "eig",
        "n": args.n,
        "lambda": list(args.lam),
        "m": args.m,
        "theta": str(args.theta),
        "eigenvalue": format_scalar(value),
        "brute_force": format_scalar(brute_value),
        "match": value == brute_value,
    }
    return payload, payload["match"]


def cmd_series(args) -> tuple[dict, bool]:
    _check_lambda(args.lam, args.n)
    if args.mmax < 0:
        raise UsageError("--mmax must be nonnegative")
    values = closed.eig_sym_series(args.lam, args.n, args.mmax, args.theta)
    payload = {
        "command": "series",
        "n": args.n,
        "lambda": list(args.lam),
        "m_max": args.mmax,
        "theta": str(args.theta),
        "series": [format_scalar(v) for v in values],
    }
    return payload, True


def cmd_spectrum(args) -> tuple[dict, bool]:
    _check_lambda(args.lam, args.n)
    rep = brute.spectrum_on_v_lambda(args.lam, args.m, args.n, args.theta, args.cap)
    return report.spectrum_dict(rep), rep.ok


def cmd_trace(args) -> tuple[dict, bool]:
    _check_lambda(args.lam, args.n)
    _check_tau(args.tau, args.n)
    c = closed.trace_isotypic_closed(args.lam, args.tau, args.m, args.n, args.theta)
    b = brute.trace_isotypic_brute(args.lam, args.tau, args.m, args.n, args.theta, args.cap)
    payload = {
        "command": "trace",
        "n": args.n,
        "lambda": list(args.lam),
        "tau": list(args.tau),
        "m": args.m,
        "theta": str(args.theta),
        "isotypic_dimension": chars.isotypic_dimension(args.lam, args.tau, args.n),
        "closed": format_scalar(c),
        "brute": format_scalar(b),
        "match": c == b,
    }
    return payload, payload["match"]


def cmd_jack(args) -> tuple[dict, bool]:
    _check_lambda(args.lam, args.n)
    res = eigenfunctions.jack_polynomial(args.lam, args.n, args.theta, args.m_list)
    ok = all(v == closed.eig_sym_closed(args.lam, m, args.n, args.theta) for m, v in res.eigenvalues.items())
    payload = {
        "command": "jack",
        "n": args.n,
        "lambda": list(args.lam),
        "theta": str(args.theta),
        "terms": report.poly_terms(res.poly),
        "eigenvalues": [{"m": m, "value": format_scalar(v)} for m, v in res.eigenvalues.items()],
    }
    return payload, ok


def cmd_basis(args) -> tuple[dict, bool]:
    _check_lambda(args.lam, args.n)
    funcs = eigenfunctions.joint_eigenbasis(args.lam, args.n, args.m_list, args.theta, args.cap)
    payload = {
        "command": "basis",
        "n": args.n,
        "lambda": list(args.lam),
        "theta": str(args.theta),
        "m_list": list(args.m_list),
        "functions": [report.eigenfunction_dict(f) for f in funcs],
    }
    return payload, True


def cmd_char(args) -> tuple[dict, bool]:
    _check_tau(args.tau, args.n)
    if sum(args.cls) != args.n:
        raise UsageError(f"--class {args.cls} is not a cycle type of size --n {args.n}")
    value = chars.character(args.tau, args.cls)
    payload = {"command": "char", "n": args.n, "tau": list(args.tau), "class": sorted(args.cls, reverse=True), "value": str(value)}
    return payload, True


def cmd_avgchar(args) -> tuple[dict, bool]:
    if sum(args.tau) != sum(args.blocks):
        raise UsageError(f"--tau {args.tau} and --blocks {args.blocks} have different sizes")
    try:
        spec = chars.AveragedCharacterSpec(args.blocks, args.subset)
    except ValueError as exc:
        raise UsageError(f"--subset: {exc}") from None
    value = chars.averaged_character(args.tau, spec)
    payload = {
        "command": "avgchar",
        "n": spec.size,
        "tau": list(args.tau),
        "blocks": list(args.blocks),
        "subset": list(args.subset),
        "value": format_scalar(value),
    }
    ok = True
    n = spec.size
    if n >= 2 and args.tau == (n - 1, 1):
        closed_form = chars.averaged_character_n11(spec)
        payload["closed_form"] = format_scalar(closed_form)
        ok = closed_form == value
    return payload, ok


def cmd_catalog3(args) -> tuple[dict, bool]:
    _check_lambda(args.lam, 3)
    entries = catalog.n3_catalog(args.lam, args.m, args.theta)
    problems = catalog.check_catalog(args.lam, args.m, args.theta, args.cap)
    payload = {
        "command": "catalog3",
        "lambda": list(args.lam),
        "m": args.m,
        "theta": str(args.theta),
        "entries": [report.catalog_entry_dict(e) for e in entries],
        "violations": problems,
    }
    return payload, not problems


def cmd_verify(args) -> tuple[dict, bool]:
    if args.maxdeg < 0:
        raise UsageError("--maxdeg must be nonnegative")
    config = verify.VerifyConfig(n=args.n, maxdeg=args.maxdeg, mode=args.theta, m_max=args.mmax, seed=args.seed, cap=args.cap)
    result = verify.run_suite(args.suite, config)
    if args.format == "pretty":
        print(f"suite {args.suite}: {result.checks} checks, {len(result.violations)} violations", file=sys.stderr)
    return {"violations": result.violations}, not result.violations


COMMANDS = {
    "eig": cmd_eig,
    "series": cmd_series,
    "spectrum": cmd_spectrum,
    "trace": cmd_trace,
    "jack": cmd_jack,
    "basis": cmd_basis,
    "char": cmd_char,
    "avgchar": cmd_avgchar,
    "catalog3": cmd_catalog3,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.command == "schema":
        sys.stdout.write(report.to_json(report.load_schema()) + "\n")
        return EXIT_OK
    try:
        payload, ok = COMMANDS[args.command](args)
        text = report.render(payload, args.format)
    except (UsageError, SymbolicCapError) as exc:
        print(f"hp {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"hp {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"hp {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
