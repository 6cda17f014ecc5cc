"""Auxiliary-point ledger for one S-unit pair (JSON or text)."""
import argparse
from typing import TextIO

from gcdlab.core.errors import ConfigError
from gcdlab.arith.heights import height_rational
from gcdlab.arith.proofscope import ChainLedger, HpBoundReport, choose_params, hp_bound_check, verify_chain
from gcdlab.arith.qplaces import PlaceSet, rational_str
from gcdlab.commands.common import EXIT_OK, EXIT_UNDECIDED, open_output, parse_primes, write_json
from gcdlab.parsing.expr_parser import parse_rational


def hp_json(report: HpBoundReport) -> dict:
    return {
        "height_P": rational_str(report.height_point),
        "bound_2HukHvh": rational_str(report.sharp),
        "bound_2HukHvh1": rational_str(report.doubled),
        "bound_Hvhk2": rational_str(report.top),
        "preconditions_met": report.preconditions_met,
        "holds": report.holds,
        "undoubled_intermediate_holds": report.printed_holds,
    }


def write_text(out: TextIO, ledger: ChainLedger, hp: HpBoundReport) -> None:
    p = ledger.params.to_json()
    out.write(f"u = {rational_str(ledger.u)}, v = {rational_str(ledger.v)}"
              f"{' (swapped)' if ledger.swapped else ''}\n")
    out.write("params: " + ", ".join(f"{k}={v}" for k, v in p.items()) + "\n")
    for name, ok in ledger.hypotheses.items():
        out.write(f"hypothesis {name}: {'met' if ok else 'unmet'}\n")
    for e in ledger.entries:
        mark = "asserted" if e.asserted else "recorded"
        out.write(f"{e.name:16} {e.verdict.value:9} {mark:8} "
                  f"lhs={format(float(e.lhs), '.17g')} rhs={format(float(e.rhs), '.17g')}\n")
    out.write(f"H(P) = {rational_str(hp.height_point)}; bound chain {'holds' if hp.holds else 'FAILS'}\n")


def add_parser(subparsers) -> None:
    p = subparsers.add_parser("proof-trace", help="auxiliary-point inequality ledger for one pair")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--epsilon", required=True)
    p.add_argument("--primes", required=True, help='finite places of S, e.g. "2,3"')
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    u = parse_rational(args.u, field="u")
    v = parse_rational(args.v, field="v")
    eps = parse_rational(args.epsilon, field="epsilon")
    if eps <= 0:
        raise ConfigError("epsilon: must be positive", field="epsilon")
    S = PlaceSet(tuple(parse_primes(args.primes)))
    params = choose_params(eps)
    ledger = verify_chain(u, v, params, S)
    hp = hp_bound_check(ledger.u, ledger.v, params)
    with open_output(args.output) as out:
        if args.format == "text":
            write_text(out, ledger, hp)
        else:
            payload = ledger.to_json()
            payload["hp_bound"] = hp_json(hp)
            payload["heights"] = {
                "H_u": rational_str(height_rational(ledger.u).multiplicative),
                "H_v": rational_str(height_rational(ledger.v).multiplicative),
            }
            write_json(out, payload)
    args.params = {"u": args.u, "v": args.v, "epsilon": args.epsilon, "primes": args.primes}
    args.summary = f"{len(ledger.entries)} entries, hypotheses {'met' if ledger.hypotheses_met else 'unmet'}"
    return EXIT_UNDECIDED if ledger.undecided else EXIT_OK
