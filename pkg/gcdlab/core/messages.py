"""
Centralized storage for error texts, warnings and report labels.
"""

# Domain errors
MSG_VALUATION_OF_ZERO = "valuation of zero undefined"
MSG_NOT_PRIME = "{value} is not a prime"
MSG_ALL_ZERO = "all coordinates are zero"
MSG_LOG_DOMAIN = "logarithm requires a positive argument, got {value}"
MSG_POLE = "pole"
MSG_COMMON_ZERO = "common zero"
MSG_SHARED_FACTOR = "inputs share a factor"
MSG_DEGENERATE_SUPPORT = "degenerate support"
MSG_EXTENSION_FIELD = "parametrization requires extension field"
MSG_NOT_ON_SUBTORUS = "point is not on the subtorus u^{p} v^{q} = {w}"
MSG_NOT_COPRIME_RELATION = "relation exponents ({p}, {q}) must be coprime and not both zero"
MSG_Z_UNDEFINED = "z undefined"
MSG_MONOMIAL_ONE_REQUIRED = "monomial 1 required"
MSG_VALUE_IS_ONE = "{name} = 1 is not allowed"
MSG_BOTH_VANISH_AT_ZERO = "r and s both vanish at 0"
MSG_EMPTY_SUPPORT = "degree of an empty collapse map is undefined"
MSG_ZERO_ARGUMENT = "{name} must be nonzero"
MSG_FACTOR_BAILOUT = "cofactor {cofactor} exceeds the factorization bail-out {limit}"
MSG_NOT_S_UNIT = "{prime} not in S"
MSG_EPSILON_POSITIVE = "epsilon must be positive"

# Invariant violations
MSG_PRODUCT_FORMULA = "product formula failed for {x}"
MSG_DECOMPOSITION = "decomposition identity failed at {point}"
MSG_LEMMA2 = "height lower bound for monomials failed at {point}"
MSG_RECURRENCE = "z_j recurrence failed for j={j}"
MSG_CLOSED_FORM = "closed form of the special linear form failed for j={j}"
MSG_HP_BOUND = "auxiliary point height bound failed at {point}"
MSG_FORMULATIONS_DISAGREE = "gcd and height formulations disagree at {point}"
MSG_RESULTANT_CHAIN = "resultant divisibility failed at {point}"

# Config / parser errors
MSG_UNEXPECTED_CHAR = "unexpected character {char!r}"
MSG_UNEXPECTED_END = "unexpected end of input"
MSG_EXPECTED = "expected {what}"
MSG_ZERO_DENOMINATOR = "denominator is the zero polynomial"
MSG_EMPTY_EXPRESSION = "empty expression"
MSG_CONFIG_JSON = "invalid JSON at line {line}, column {column}: {reason}"
MSG_CONFIG_FIELD = "{field}: {reason}"
MSG_CONFIG_UNKNOWN_FIELD = "unknown field"

# Warnings / info
MSG_DEPENDENT_INPUTS = "inputs {a} and {b} are multiplicatively dependent"
MSG_UNDECIDED = "{count} comparisons could not be decided"
MSG_HYPOTHESIS_UNMET = "hypothesis {name} unmet"
