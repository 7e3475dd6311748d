"""Command line entry point: ``chebgruss {eval,verify,sharpness,constants}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .. import constants
from ..bounds import Family, HolderPair, evaluate_all
from ..space import NormDescriptor
from .ensemble import SCALAR_MODES, WEIGHT_MODES, EnsembleConfig
from .io import InstanceFormatError, dumps, load_instance, parse_norm_spec
from .report import run_report
from .search import DEFAULT_BUDGET, SharpnessCeilingError, sharpness_search


def _holder(value: float | None) -> HolderPair | None:
    return HolderPair.from_p(value) if value is not None else None


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        inst = load_instance(args.instance)
    except (OSError, InstanceFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = evaluate_all(inst, _holder(args.holder_p))
    out = report.to_dict()
    out["instance_id"] = Path(args.instance).stem
    out["config_echo"] = {"instance": str(args.instance), "holder_p": report.holder.p_exp, "norm": inst.norm.label()}
    out["seed"] = None
    sys.stdout.write(dumps(out))
    return 1 if report.violations() else 0


def cmd_verify(args: argparse.Namespace) -> int:
    norm = parse_norm_spec(args.norm, args.dim)
    cfg = EnsembleConfig(
        n=args.n,
        trials=args.trials,
        dimension=norm.dimension,
        norm=norm,
        weight_mode=args.weight_mode,
        scalar_mode=args.scalar_mode,
        holder_p=args.holder_p,
        seed=args.seed,
    )
    report = run_report(cfg, workers=args.workers, per_instance=args.per_instance)
    text = dumps(report)
    if args.output:
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    failed = report["violations"] or report["identities"]["failures"]
    return 1 if failed else 0


def cmd_sharpness(args: argparse.Namespace) -> int:
    norm = parse_norm_spec(args.norm, args.dim)
    try:
        result = sharpness_search(
            args.family,
            args.n,
            norm.dimension,
            norm,
            args.budget,
            seed=args.seed,
            holder=_holder(args.holder_p),
            structured_start=not args.random_start,
            keep_trace=not args.no_trace,
        )
    except SharpnessCeilingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out = result.to_dict()
    out["seed"] = args.seed
    sys.stdout.write(dumps(out))
    return 0


def cmd_constants(args: argparse.Namespace) -> int:
    kc = constants.KernelConstants(args.n)
    out = kc.as_dict(tuple(args.q or ()))
    out["k_one_closed_form"] = float(constants.k_one_closed_form(args.n))
    out["k_inf_cap"] = constants.k_infinity_cap()
    if args.q:
        out["k_q_cap"] = {format(q, "g"): constants.k_q_cap(args.n, q) for q in args.q}
    sys.stdout.write(dumps(out))
    return 0


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _holder_p(text: str) -> float:
    value = float(text)
    if not value > 1:
        raise argparse.ArgumentTypeError(f"Hölder exponent must be > 1, got {text}")
    return value


def _q_exponent(text: str) -> float:
    value = float(text)
    if not value > 1:
        raise argparse.ArgumentTypeError(f"q must be > 1, got {text}")
    return value


def _n(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"n must be >= 2, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chebgruss", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate every bound on one instance file")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--holder-p", type=_holder_p, default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="check every bound over a seeded random ensemble")
    p.add_argument("--n", type=_n, required=True)
    p.add_argument("--trials", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weight-mode", choices=WEIGHT_MODES, default="positive_random")
    p.add_argument("--scalar-mode", choices=SCALAR_MODES, default="real")
    p.add_argument("--norm", default="lp:2", help="lp:P, l1, linf, complex_modulus or real_abs")
    p.add_argument("--dim", type=_positive_int, default=1)
    p.add_argument("--holder-p", type=_holder_p, default=None)
    p.add_argument("--workers", type=int, default=1, help="worker processes (output is identical)")
    p.add_argument("--per-instance", action="store_true", help="include every instance's report")
    p.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sharpness", help="search for an instance where a bound is tight")
    p.add_argument("--family", choices=[f.value for f in Family], required=True)
    p.add_argument("--n", type=_n, required=True)
    p.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--norm", default="lp:2")
    p.add_argument("--dim", type=_positive_int, default=1)
    p.add_argument("--holder-p", type=_holder_p, default=None)
    p.add_argument("--random-start", action="store_true", help="skip the two-point starting instance")
    p.add_argument("--no-trace", action="store_true")
    p.set_defaults(func=cmd_sharpness)

    p = sub.add_parser("constants", help="kernel constants k_inf, k_one and k_q")
    p.add_argument("--n", type=_n, required=True)
    p.add_argument("--q", type=_q_exponent, action="append", help="may be repeated")
    p.set_defaults(func=cmd_constants)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
