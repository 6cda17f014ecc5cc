"""
Recursive-descent parser for Laurent polynomials and rational functions in X, Y.

    func     := expr | "(" expr ")" "/" "(" expr ")"
    expr     := term (("+" | "-") term)*
    term     := ["-"] factor ("*" factor)*
    factor   := rational | var | var "^" int
    rational := int | int "/" posint

Whitespace is ignored. A "-" directly in front of digits is the sign of the
literal; in front of anything else it negates the whole term.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from gcdlab.core import messages
from gcdlab.core.errors import ConfigError, ExprSyntaxError
from gcdlab.arith.laurent import Function2, LaurentPoly2, RationalFunction2, UniPoly
from gcdlab.arith.qplaces import rational_str


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Pow:
    base: Var
    exponent: int


@dataclass(frozen=True)
class Product:
    factors: Tuple["ExprAst", ...]


@dataclass(frozen=True)
class Neg:
    operand: "ExprAst"


@dataclass(frozen=True)
class Sum:
    terms: Tuple["ExprAst", ...]
    ops: Tuple[str, ...]


@dataclass(frozen=True)
class Quotient:
    numerator: "ExprAst"
    denominator: "ExprAst"


ExprAst = Union[Num, Var, Pow, Product, Neg, Sum, Quotient]


class ExprParser:
    """One parser instance per input string; positions are character indices internally."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.int_pattern = re.compile(r"\d+")
        self.space_pattern = re.compile(r"\s*")

    def parse(self) -> ExprAst:
        self._skip()
        if self.pos >= len(self.text):
            raise self._error(messages.MSG_EMPTY_EXPRESSION)
        if self._peek() == "(":
            ast = self._quotient()
        else:
            ast = self._expr()
        self._skip()
        if self.pos < len(self.text):
            raise self._error(messages.MSG_UNEXPECTED_CHAR.format(char=self.text[self.pos]))
        return ast

    def _error(self, message: str) -> ExprSyntaxError:
        return ExprSyntaxError(message, len(self.text[:self.pos].encode("utf-8")))

    def _skip(self) -> None:
        self.pos = self.space_pattern.match(self.text, self.pos).end()

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, char: str) -> None:
        if self._peek() != char:
            if self.pos >= len(self.text):
                raise self._error(messages.MSG_UNEXPECTED_END)
            raise self._error(messages.MSG_EXPECTED.format(what=repr(char)))
        self.pos += 1

    def _quotient(self) -> Quotient:
        self._expect("(")
        num = self._expr()
        self._expect(")")
        self._expect("/")
        self._expect("(")
        den = self._expr()
        self._expect(")")
        return Quotient(num, den)

    def _expr(self) -> ExprAst:
        terms = [self._term()]
        ops = []
        while self._peek() in ("+", "-"):
            ops.append(self.text[self.pos])
            self.pos += 1
            terms.append(self._term())
        if not ops:
            return terms[0]
        return Sum(tuple(terms), tuple(ops))

    def _term(self) -> ExprAst:
        negate = False
        if self._peek() == "-":
            after = self.space_pattern.match(self.text, self.pos + 1).end()
            if not self.int_pattern.match(self.text, after):
                self.pos += 1
                negate = True
        factors = [self._factor()]
        while self._peek() == "*":
            self.pos += 1
            factors.append(self._factor())
        node = factors[0] if len(factors) == 1 else Product(tuple(factors))
        return Neg(node) if negate else node

    def _integer(self, allow_sign: bool) -> int:
        sign = 1
        if allow_sign and self._peek() == "-":
            self.pos += 1
            sign = -1
        self._skip()
        m = self.int_pattern.match(self.text, self.pos)
        if not m:
            if self.pos >= len(self.text):
                raise self._error(messages.MSG_UNEXPECTED_END)
            raise self._error(messages.MSG_EXPECTED.format(what="an integer"))
        self.pos = m.end()
        return sign * int(m.group())

    def _factor(self) -> ExprAst:
        c = self._peek()
        if c in ("X", "Y"):
            self.pos += 1
            var = Var(c)
            if self._peek() == "^":
                self.pos += 1
                return Pow(var, self._integer(allow_sign=True))
            return var
        if c == "-" or c.isdigit():
            num = self._integer(allow_sign=True)
            if self._peek() == "/":
                self.pos += 1
                start = self.pos
                den = self._integer(allow_sign=False)
                if den == 0:
                    self.pos = start
                    raise self._error("zero denominator in rational literal")
                return Num(Fraction(num, den))
            return Num(Fraction(num))
        if not c:
            raise self._error(messages.MSG_UNEXPECTED_END)
        raise self._error(messages.MSG_UNEXPECTED_CHAR.format(char=c))


def parse_ast(text: str) -> ExprAst:
    return ExprParser(text).parse()


def to_text(ast: ExprAst) -> str:
    """Canonical print; parse_ast(to_text(a)) == a for every parsed a."""
    if isinstance(ast, Num):
        return rational_str(ast.value)
    if isinstance(ast, Var):
        return ast.name
    if isinstance(ast, Pow):
        return f"{ast.base.name}^{ast.exponent}"
    if isinstance(ast, Product):
        return "*".join(to_text(f) for f in ast.factors)
    if isinstance(ast, Neg):
        return "-" + to_text(ast.operand)
    if isinstance(ast, Sum):
        out = to_text(ast.terms[0])
        for op, term in zip(ast.ops, ast.terms[1:]):
            out += f" {op} {to_text(term)}"
        return out
    return f"({to_text(ast.numerator)})/({to_text(ast.denominator)})"


def lower(ast: ExprAst) -> Function2:
    if isinstance(ast, Quotient):
        num, den = _lower_poly(ast.numerator), _lower_poly(ast.denominator)
        if den.is_zero():
            raise ConfigError(messages.MSG_ZERO_DENOMINATOR, field="function")
        # one common monomial shift keeps the quotient and clears negative exponents
        (ni, nj), (di, dj) = num.min_exponents(), den.min_exponents()
        mi, mj = min(ni, di), min(nj, dj)
        si, sj = max(0, -mi), max(0, -mj)
        return RationalFunction2(num.shift(si, sj), den.shift(si, sj))
    return _lower_poly(ast)


def _lower_poly(ast: ExprAst) -> LaurentPoly2:
    if isinstance(ast, Num):
        return LaurentPoly2.constant(ast.value)
    if isinstance(ast, Var):
        return LaurentPoly2.monomial(1, 0) if ast.name == "X" else LaurentPoly2.monomial(0, 1)
    if isinstance(ast, Pow):
        e = ast.exponent
        return LaurentPoly2.monomial(e, 0) if ast.base.name == "X" else LaurentPoly2.monomial(0, e)
    if isinstance(ast, Product):
        out = LaurentPoly2.constant(1)
        for f in ast.factors:
            out = out * _lower_poly(f)
        return out
    if isinstance(ast, Neg):
        return -_lower_poly(ast.operand)
    if isinstance(ast, Sum):
        out = _lower_poly(ast.terms[0])
        for op, term in zip(ast.ops, ast.terms[1:]):
            out = out + _lower_poly(term) if op == "+" else out - _lower_poly(term)
        return out
    raise ConfigError("a quotient is only allowed at the top level", field="function")


def parse_function(text: str) -> Function2:
    """LaurentPoly2 for a plain expression, RationalFunction2 for a top-level quotient."""
    return lower(parse_ast(text))


def parse_rational(text: str, field: str = "value") -> Fraction:
    """A rational literal "a" or "a/b"."""
    ast = parse_ast(text)
    if not isinstance(ast, Num):
        raise ConfigError(messages.MSG_CONFIG_FIELD.format(field=field, reason=f"expected a rational, got {text!r}"),
                          field=field)
    return ast.value


def parse_univariate(text: str, field: str = "polynomial") -> UniPoly:
    """A polynomial in a single variable (X or Y) with nonnegative exponents."""
    poly = parse_function(text)
    if isinstance(poly, RationalFunction2):
        raise ConfigError(messages.MSG_CONFIG_FIELD.format(field=field, reason="quotients are not allowed"),
                          field=field)
    if not poly.is_polynomial():
        raise ConfigError(messages.MSG_CONFIG_FIELD.format(field=field, reason="negative exponents"), field=field)
    xs = {i for i, _ in poly.support if i}
    ys = {j for _, j in poly.support if j}
    if xs and ys:
        raise ConfigError(messages.MSG_CONFIG_FIELD.format(field=field, reason="expected one variable"), field=field)
    axis = 0 if xs else 1
    coeffs = {}
    for e, c in poly.terms:
        coeffs[e[axis]] = c
    degree = max(coeffs, default=0)
    return UniPoly(tuple(coeffs.get(k, Fraction(0)) for k in range(degree + 1)))
