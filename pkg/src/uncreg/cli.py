"""Command line interface: ``fit``, ``predict`` and ``bench-paper``.

Exit codes: 0 success, 2 invalid input or infeasible problem, 3 the
optimiser did not meet its tolerances (results are still written).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench
from .errors import UncregError
from .files import parse_dataset, parse_fit
from .infer import ErrorMoments, default_error_distribution, forecast
from .models import by_name
from .optim import OptimOptions
from .pipeline import fit, to_record
from .quad import GAUSS, MIDPOINT, QuadratureRule
from .udist import from_literal

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_CONVERGED = 3

_SCHEMES = {"midpoint": MIDPOINT, "gauss": GAUSS, MIDPOINT: MIDPOINT, GAUSS: GAUSS}


def _init_box(text):
    box = []
    for part in text.split(","):
        try:
            lo, hi = (float(v) for v in part.split(":"))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected lo:hi intervals separated by commas, got {part!r}")
        box.append((lo, hi))
    return tuple(box)


def _literal(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"not a JSON distribution literal: {exc.msg}")
    try:
        return from_literal(doc)
    except UncregError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _level(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"level must be a number, got {text!r}")
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"level must lie in (0, 1), got {value}")
    return value


def _add_quad(p, defaults=True):
    p.add_argument("--quad-nodes", type=int, default=2001 if defaults else None, help="quadrature nodes (default 2001)")
    p.add_argument("--quad-scheme", choices=["midpoint", "gauss"], default="midpoint" if defaults else None)
    p.add_argument("--quad-panels", type=int, default=None, help="panels for the gauss scheme")


def _add_optim(p):
    p.add_argument("--starts", type=int, default=16)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--max-iters", type=int, default=2000)
    p.add_argument("--xtol", type=float, default=1e-8)
    p.add_argument("--ftol", type=float, default=1e-10)
    p.add_argument("--init-box", type=_init_box, default=None, help="per-parameter lo:hi, comma separated")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uncreg", description="LAD and least squares regression on uncertain data")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="estimate model parameters")
    p.add_argument("--data", required=True, type=Path)
    p.add_argument("--model", choices=["linear", "mm", "gompertz"], default="linear")
    p.add_argument("--loss", choices=["lad", "ls"], default="lad")
    _add_quad(p)
    _add_optim(p)
    p.add_argument("--strict-theorem-flip", action="store_true", help="gompertz: read predictors at alpha")
    p.add_argument("--out", type=Path, default=None, help="fit file path (default: standard output)")

    p = sub.add_parser("predict", help="forecast value and prediction interval")
    p.add_argument("--fit", required=True, type=Path)
    p.add_argument("--x", type=_literal, action="append", required=True, help="predictor literal; repeat per predictor")
    p.add_argument("--level", type=_level, default=0.9)
    p.add_argument("--err-dist", type=_literal, default=None, help="error literal (default normal(e_hat, sigma_hat))")
    _add_quad(p, defaults=False)
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("bench-paper", help="reproduce the published examples")
    _add_quad(p)
    _add_optim(p)
    p.add_argument("--out", type=Path, default=None)
    return parser


def _rule(args, fallback=None) -> QuadratureRule:
    fallback = fallback or {}
    scheme = _SCHEMES[args.quad_scheme or fallback.get("scheme", MIDPOINT)]
    nodes = args.quad_nodes or fallback.get("nodes", 2001)
    panels = args.quad_panels
    if panels is None and args.quad_scheme is None and args.quad_nodes is None:
        panels = fallback.get("panels")
    return QuadratureRule(scheme, nodes, panels if scheme == GAUSS else None)


def _options(args) -> OptimOptions:
    return OptimOptions(args.starts, args.seed, args.max_iters, args.xtol, args.ftol, args.init_box)


def _emit(text: str, out: Path | None, stdout) -> None:
    if out is None:
        stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _vec(values) -> str:
    return ", ".join(f"{v:.4f}" for v in values)


def cmd_fit(args, stdout=sys.stdout) -> int:
    data = parse_dataset(args.data)
    model = by_name(args.model, data.p)
    q = _rule(args)
    opts = _options(args)
    result = fit(data, model, args.loss, q, opts, args.strict_theorem_flip)
    record = to_record(result, q, opts, args.strict_theorem_flip)
    names = model.names
    stdout.write(f"model {model.kind}, loss {result.loss}, n = {data.n}\n")
    for name, b in zip(names, result.beta):
        stdout.write(f"  {name:<10} {b:>12.4f}\n")
    stdout.write(f"  {'objective':<10} {result.objective_value:>12.4f}\n")
    stdout.write(f"  {'e_hat':<10} {result.moments.e_hat:>12.4f}\n")
    stdout.write(f"  {'sigma2':<10} {result.moments.sigma2_hat:>12.4f}\n")
    stdout.write(f"  converged: {'yes' if result.converged else 'no'}\n")
    _emit(record.dumps(), args.out, stdout)
    return EXIT_OK if result.converged else EXIT_NOT_CONVERGED


def cmd_predict(args, stdout=sys.stdout) -> int:
    record = parse_fit(args.fit)
    model = by_name(record.model, record.predictors)
    if len(args.x) != model.p:
        raise UncregError(f"model takes {model.p} predictor(s), got {len(args.x)} --x value(s)")
    q = _rule(args, record.quadrature)
    moments = ErrorMoments(record.e_hat, record.sigma2_hat)
    err = args.err_dist if args.err_dist is not None else default_error_distribution(moments)
    result = forecast(model, record.beta, args.x, moments, args.level, err, q)
    doc = {
        "mu": result.mu,
        "b": result.b,
        "interval": list(result.interval),
        "level": result.level,
        "err_dist": err.to_literal(),
    }
    stdout.write(f"forecast value   {result.mu:.4f}\n")
    stdout.write(f"{result.level:.0%} interval     [{_vec(result.interval)}]  (b = {result.b:.4f})\n")
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out, stdout)
    return EXIT_OK


def cmd_bench_paper(args, stdout=sys.stdout) -> int:
    report = bench.run(_rule(args), _options(args))
    stdout.write(bench.format_report(report) + "\n")
    _emit(json.dumps(report.to_json(), indent=2) + "\n", args.out, stdout)
    return EXIT_NOT_CONVERGED if report.fit_failures else EXIT_OK


COMMANDS = {"fit": cmd_fit, "predict": cmd_predict, "bench-paper": cmd_bench_paper}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, stdout)
    except UncregError as exc:
        stderr.write(f"uncreg {args.command}: error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
