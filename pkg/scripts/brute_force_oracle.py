"""
Independent re-computations for cross-checking gcdlab.

Nothing here goes through gcdlab.arith: valuations come from sympy.factorint,
resultants from an explicit Sylvester determinant, and inequalities are compared
as exact integer powers. Usable from tests and from the command line:

    python -m scripts.brute_force_oracle pair --primes 2,3 --bound 8 --epsilon 3/5
    python -m scripts.brute_force_oracle growth 2 3 --n-max 60
    python -m scripts.brute_force_oracle ratio --primes 2,3 --bound 12 --thresholds 10,20,30
"""
import argparse
import itertools
import json
import math
import sys
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Set, Tuple

import sympy
from sympy.polys.subresultants_qq_zz import sylvester

from gcdlab.core.logger import configure_logging, get_logger

configure_logging()
logger = get_logger(__name__)


def fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def sunits(primes: Sequence[int], bound: int, signs: str = "both") -> List[Fraction]:
    out = []
    for exps in itertools.product(range(-bound, bound + 1), repeat=len(primes)):
        value = Fraction(1)
        for p, e in zip(primes, exps):
            value *= Fraction(p) ** e
        out.extend((-value, value) if signs == "both" else (value,))
    return out


def valuations(x: Fraction) -> Dict[int, int]:
    """p -> v_p(x) over the primes dividing the numerator or the denominator."""
    out = dict(sympy.factorint(abs(x.numerator)))
    for p, e in sympy.factorint(x.denominator).items():
        out[p] = out.get(p, 0) - e
    out.pop(1, None)
    return out


def common_part(a: Fraction, b: Fraction, skip: Iterable[int] = ()) -> int:
    """prod of p^max(0, min(v_p(a), v_p(b))), the finite gcd-analogue of a and b."""
    va, vb = valuations(a), valuations(b)
    skip = set(skip)
    g = 1
    for p in set(va) & set(vb):
        if p in skip:
            continue
        g *= p ** max(0, min(va[p], vb[p]))
    return g


def height(x: Fraction) -> int:
    return max(abs(x.numerator), x.denominator)


def pair_solutions(primes: Sequence[int], bound: int, epsilon: Fraction,
                   outside_only: bool = False, signs: str = "both") -> Set[Tuple[str, str]]:
    """
    Points (u, v) of the S-unit box with u, v != 1 satisfying
        all places:   min(1, max|u-1|, |v-1|) / G < Hmax^-eps
        outside S:    1 / G_out < Hmax^(-eps/2)
    where G is the finite common part and Hmax = max(H(u), H(v)). Both sides are
    raised to the denominator of eps so that the comparison is between rationals.
    """
    p, q = epsilon.numerator, epsilon.denominator
    units = sunits(primes, bound, signs)
    found = set()
    for u in units:
        if u == 1:
            continue
        for v in units:
            if v == 1:
                continue
            a, b = u - 1, v - 1
            hmax = max(height(u), height(v))
            if outside_only:
                g = common_part(a, b, skip=primes)
                ok = Fraction(g) ** (2 * q) > Fraction(hmax) ** p
            else:
                g = common_part(a, b)
                arch = min(Fraction(1), max(abs(a), abs(b)))
                ok = (Fraction(g) / arch) ** q > Fraction(hmax) ** p
            if ok:
                found.add((fraction_str(u), fraction_str(v)))
    logger.info(f"Oracle found {len(found)} pair solutions ({'outside S' if outside_only else 'all places'})")
    return found


def projective_height(coords: Sequence[Fraction]) -> int:
    """max |x_i| of the primitive integer vector proportional to coords."""
    scale = math.lcm(*(x.denominator for x in coords))
    ints = [int(x * scale) for x in coords]
    g = math.gcd(*ints)
    return max(abs(n) // g for n in ints)


def ratio_trend(primes: Sequence[int], bound: int, thresholds: Sequence[float],
                sporadic_height: float = 20.0, signs: str = "both") -> dict:
    """
    Minimum of log H((u-1)/(v-1)) / log H(1:u:v) over multiplicatively
    independent pairs with log H(1:u:v) >= threshold, and the independent
    pairs with ratio < 1/2 above sporadic_height.
    """
    units = [u for u in sunits(primes, bound, signs) if u != 1]
    exps = {u: [valuations(u).get(p, 0) for p in primes] for u in units}
    rows = []
    for u in units:
        eu = exps[u]
        for v in units:
            ev = exps[v]
            if any(eu[i] * ev[j] != eu[j] * ev[i] for i in range(len(primes)) for j in range(i + 1, len(primes))):
                h1uv = math.log(projective_height([Fraction(1), u, v]))
                ratio = math.log(height((u - 1) / (v - 1))) / h1uv
                rows.append((ratio, u, v, h1uv))
    rows.sort()
    trend = []
    for h0 in thresholds:
        pool = [r for r in rows if r[3] >= h0]
        best = pool[0] if pool else None
        trend.append({
            "threshold": h0,
            "minimum": None if best is None else best[0],
            "witness": None if best is None else [fraction_str(best[1]), fraction_str(best[2])],
            "count": len(pool),
        })
    sporadic = sorted((fraction_str(u), fraction_str(v)) for ratio, u, v, h in rows
                      if ratio < 0.5 and h >= sporadic_height)
    logger.info(f"Oracle ratio trend over {len(rows)} independent pairs, {len(sporadic)} sporadic")
    return {"trend": trend, "sporadic": sporadic}


def gcd_growth(a: int, b: int, n_max: int) -> List[Tuple[int, int]]:
    return [(n, math.gcd(a ** n - 1, b ** n - 1)) for n in range(1, n_max + 1)]


def per_prime_gcd(a: int, b: int) -> int:
    """gcd through the factorizations of a and b."""
    return common_part(Fraction(a), Fraction(b))


def sylvester_resultant(f, g, var) -> sympy.Expr:
    """Determinant of the Sylvester matrix of f and g in var."""
    return sympy.expand(sylvester(sympy.expand(f), sympy.expand(g), var, 1).det())


def product_formula(x: Fraction) -> Fraction:
    """prod over all places of |x|_mu, which must be 1."""
    total = abs(x)
    for p, e in valuations(x).items():
        total *= Fraction(p) ** e
    return total


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Brute-force oracles for gcdlab cross-checks.")
    sub = parser.add_subparsers(dest="mode", required=True)
    pair = sub.add_parser("pair")
    pair.add_argument("--primes", required=True)
    pair.add_argument("--bound", type=int, required=True)
    pair.add_argument("--epsilon", required=True)
    pair.add_argument("--outside", action="store_true")
    pair.add_argument("--signs", choices=["both", "positive"], default="both")
    growth = sub.add_parser("growth")
    growth.add_argument("a", type=int)
    growth.add_argument("b", type=int)
    growth.add_argument("--n-max", type=int, default=60)
    ratio = sub.add_parser("ratio")
    ratio.add_argument("--primes", required=True)
    ratio.add_argument("--bound", type=int, required=True)
    ratio.add_argument("--thresholds", default="10,20,30")
    args = parser.parse_args(argv)

    if args.mode == "pair":
        primes = [int(p) for p in args.primes.split(",") if p.strip()]
        found = pair_solutions(primes, args.bound, Fraction(args.epsilon), args.outside, args.signs)
        json.dump(sorted(found), sys.stdout, indent=2)
        sys.stdout.write("\n")
    elif args.mode == "ratio":
        primes = [int(p) for p in args.primes.split(",") if p.strip()]
        thresholds = [float(t) for t in args.thresholds.split(",")]
        json.dump(ratio_trend(primes, args.bound, thresholds), sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for n, g in gcd_growth(args.a, args.b, args.n_max):
            sys.stdout.write(f"{n},{g}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
