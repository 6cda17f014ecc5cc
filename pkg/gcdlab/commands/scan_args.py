"""Flags shared by the config-driven subcommands; they override the JSON file."""
import argparse

from gcdlab.scan_config import ScanConfig
from gcdlab.commands.common import parse_primes


def add_scan_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", "-c", default=None, help="JSON scan configuration")
    p.add_argument("--primes", default=None, help='finite places of S, e.g. "2,3"')
    p.add_argument("--bound", type=int, default=None, dest="exponent_bound")
    p.add_argument("--epsilon", default=None, help='exact rational, e.g. "3/5"')
    p.add_argument("--inequality", default=None)
    p.add_argument("--function", default=None, help='e.g. "(X - 1)/(Y - 1)"')
    p.add_argument("--signs", default=None, choices=["both", "positive"])
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--precision-bits", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--theta", default=None)
    p.add_argument("--eta", default=None)
    p.add_argument("--r", default=None, help="r(X) for the resultant inequality")
    p.add_argument("--s", default=None, help="s(Y) for the resultant inequality")
    p.add_argument("--variant", default=None, choices=["complement", "all"])
    p.add_argument("--workers", type=int, default=None)


def config_from_args(args: argparse.Namespace) -> ScanConfig:
    base = ScanConfig.load(args.config) if args.config else ScanConfig()
    return base.with_overrides(
        primes=parse_primes(args.primes) if args.primes is not None else None,
        exponent_bound=args.exponent_bound,
        epsilon=args.epsilon,
        inequality=args.inequality,
        function=args.function,
        signs=args.signs,
        output=args.output,
        precision_bits=args.precision_bits,
        seed=args.seed,
        theta=args.theta,
        eta=args.eta,
        r=args.r,
        s=args.s,
        variant=args.variant,
        workers=args.workers,
    )
