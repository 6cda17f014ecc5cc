"""
Exact-identity suites on seeded samples. Any failure is an InvariantViolation
(exit code 4); nothing here is approximate.
"""
import argparse
import random
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from gcdlab.core.errors import DomainError, InvariantViolation
from gcdlab.core.logger import get_logger
from gcdlab.arith.gcdcore import decomposition_identity, integer_gcd_bridge, resultant_chain, resultants_of
from gcdlab.arith.laurent import MonomialSet, lemma2_bound
from gcdlab.arith.proofscope import ProofParams, build_point, hp_bound_check, special_form_value
from gcdlab.arith.qplaces import PlaceSet, product_formula_check
from gcdlab.arith.sunits import SUnit
from gcdlab.commands.common import EXIT_OK, open_output, write_json
from gcdlab.parsing.expr_parser import parse_ast, parse_function, to_text

logger = get_logger(__name__)

FUNCTIONS = ("(X - 1)/(Y - 1)", "(X^2 - Y)/(X*Y + 1)", "(X + Y - 2)/(X - Y + 3)")
PARSER_CORPUS = (
    "1 + 2/3*X^2*Y^-1",
    "-X + Y^3 - 7",
    "X*-2 - -3/4*Y",
    "(X - 1)/(Y - 1)",
    "(X^-1 + 2)/(Y + 5/3)",
    "- Y^-2*X + 0",
)


def _random_sunit(rng: random.Random, S: PlaceSet, bound: int) -> Fraction:
    exps = tuple(rng.randint(-bound, bound) for _ in S.primes)
    return SUnit(rng.choice((-1, 1)), exps, S).value


def check_product_formula(rng: random.Random, size: int) -> int:
    for _ in range(size):
        x = Fraction(rng.randint(1, 10**9) * rng.choice((-1, 1)), rng.randint(1, 10**9))
        if not product_formula_check(x).holds:
            raise InvariantViolation(f"product formula failed for {x}")
    return size


def check_gcd_bridge(rng: random.Random, size: int) -> int:
    for _ in range(size):
        integer_gcd_bridge(rng.randint(1, 10**12), rng.randint(1, 10**12))
    return size


def check_decomposition(rng: random.Random, size: int) -> int:
    S = PlaceSet.of(2, 3, 5)
    done = 0
    for text in FUNCTIONS:
        f = parse_function(text)
        for _ in range(size):
            u, v = _random_sunit(rng, S, 15), _random_sunit(rng, S, 15)
            try:
                decomposition_identity(f.numerator, f.denominator, u, v)
            except DomainError:
                continue
            done += 1
    return done


def check_lemma2(rng: random.Random, size: int) -> int:
    done = 0
    while done < size:
        mons = {(0, 0)}
        target = rng.randint(3, 5)
        while len(mons) < target:
            mons.add((rng.randint(0, 6), rng.randint(0, 6)))
        u, v = (Fraction(rng.choice((2, 3, 5))) ** rng.randint(-10, 10) / rng.choice((1, 7)) ** rng.randint(0, 3)
                for _ in range(2))
        try:
            report = lemma2_bound(MonomialSet(tuple(sorted(mons))), u, v)
        except DomainError:
            continue
        if not report.holds:
            raise InvariantViolation(f"monomial height bound failed at {u}, {v}")
        done += 1
    return done


def check_resultant_chain(rng: random.Random, size: int) -> int:
    S = PlaceSet.of(2, 3)
    done = 0
    for text in FUNCTIONS:
        res = resultants_of(parse_function(text))
        for _ in range(size):
            u, v = _random_sunit(rng, S, 8), _random_sunit(rng, S, 8)
            try:
                resultant_chain(res, u, v, S)
            except DomainError:
                continue
            done += 1
    return done


def check_aux_point(rng: random.Random, size: int) -> int:
    S = PlaceSet.of(2, 3)
    done = 0
    while done < size:
        u, v = _random_sunit(rng, S, 6), _random_sunit(rng, S, 6)
        if v == 1:
            continue
        k, h = rng.randint(1, 6), rng.randint(1, 10)
        P = build_point(u, v, k, h)
        for j in range(1, k + 1):
            special_form_value(P, j)
        hp_bound_check(u, v, ProofParams(Fraction(1), k, h))
        done += 1
    return done


def check_parser(rng: random.Random, size: int) -> int:
    for text in PARSER_CORPUS:
        ast = parse_ast(text)
        if parse_ast(to_text(ast)) != ast:
            raise InvariantViolation(f"parser round trip failed for {text!r}")
    return len(PARSER_CORPUS)


SUITES: Dict[str, Callable[[random.Random, int], int]] = {
    "product_formula": check_product_formula,
    "gcd_bridge": check_gcd_bridge,
    "decomposition": check_decomposition,
    "lemma2": check_lemma2,
    "resultant_chain": check_resultant_chain,
    "aux_point": check_aux_point,
    "parser": check_parser,
}


def run_suites(seed: int, size: int, only: Optional[List[str]] = None) -> Dict[str, int]:
    results = {}
    for name, suite in SUITES.items():
        if only and name not in only:
            continue
        rng = random.Random(f"{seed}:{name}")
        try:
            results[name] = suite(rng, size)
        except DomainError as e:
            raise InvariantViolation(f"{name}: unexpected domain error: {e}")
        logger.info(f"selfcheck {name}: {results[name]} cases passed")
    return results


def add_parser(subparsers) -> None:
    p = subparsers.add_parser("selfcheck", help="run the exact-identity suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, default=50)
    p.add_argument("--suite", action="append", choices=sorted(SUITES), default=None)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    results = run_suites(args.seed, args.size, args.suite)
    with open_output(args.output) as out:
        write_json(out, {"seed": args.seed, "size": args.size, "passed": results})
    args.summary = f"{sum(results.values())} cases passed"
    return EXIT_OK
