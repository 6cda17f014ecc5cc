"""Candidate subtori and translates, without scanning."""
import argparse

from gcdlab.core.errors import ConfigError
from gcdlab.arith.subtori import (
    CandidateSet,
    prop1_candidates,
    prop2_candidates,
    prop3_translates,
    prop4_candidates,
    refine_translates,
)
from gcdlab.commands.common import EXIT_OK, open_output, write_csv, write_json
from gcdlab.parsing.expr_parser import parse_function, parse_rational, parse_univariate

MODES = ("prop1", "refine", "prop2", "prop3", "prop4")


def _need(args: argparse.Namespace, *names: str) -> None:
    for name in names:
        if getattr(args, name) is None:
            raise ConfigError(f"{name}: required for mode {args.mode}", field=name)


def build(args: argparse.Namespace) -> CandidateSet:
    mode = args.mode
    if mode in ("prop1", "refine"):
        _need(args, "function")
        f = parse_function(args.function)
        base = prop1_candidates(f)
        return base if mode == "prop1" else base | refine_translates(f, base)
    _need(args, "epsilon")
    eps = parse_rational(args.epsilon, field="epsilon")
    if eps <= 0:
        raise ConfigError("epsilon: must be positive", field="epsilon")
    if mode == "prop2":
        return prop2_candidates(eps)
    if mode == "prop3":
        _need(args, "theta", "eta")
        theta = parse_rational(args.theta, field="theta")
        eta = parse_rational(args.eta, field="eta")
        if theta == 0 or eta == 0:
            raise ConfigError("theta, eta: must be nonzero", field="theta")
        return prop3_translates(theta, eta, eps)
    _need(args, "r", "s")
    return prop4_candidates(parse_univariate(args.r, field="r"), parse_univariate(args.s, field="s"), eps)


def add_parser(subparsers) -> None:
    p = subparsers.add_parser("candidates", help="candidate relations u^p v^q = w (JSON or CSV)")
    p.add_argument("mode", choices=MODES)
    p.add_argument("--function", default=None)
    p.add_argument("--epsilon", default=None)
    p.add_argument("--theta", default=None)
    p.add_argument("--eta", default=None)
    p.add_argument("--r", default=None)
    p.add_argument("--s", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    candidates = build(args)
    records = [c.to_json() for c in candidates]
    with open_output(args.output) as out:
        if args.format == "csv":
            write_csv(out, ("p", "q", "w", "provenance", "detail"),
                      ([r["p"], r["q"], r["w"], r["provenance"], r["detail"]] for r in records))
        else:
            write_json(out, records)
    args.summary = f"{len(records)} candidates"
    return EXIT_OK
