"""
Experiment configuration: a JSON file plus command-line overrides.

Environment variables never carry experiment parameters; see gcdlab.config
for process-level settings.
"""
import json
from dataclasses import asdict, dataclass, field, fields, replace
from fractions import Fraction
from typing import Any, Dict, List, Optional

from gcdlab.core import messages
from gcdlab.core.errors import ConfigError
from gcdlab.core.logger import get_logger
from gcdlab.arith.gcdcore import Prop4Variant
from gcdlab.arith.qplaces import PlaceSet, rational_str
from gcdlab.arith.scan import Inequality, ScanTask, build_task
from gcdlab.parsing.expr_parser import parse_function, parse_rational, parse_univariate

logger = get_logger(__name__)

SIGN_MODES = ("both", "positive")


@dataclass(frozen=True)
class ScanConfig:
    primes: List[int] = field(default_factory=lambda: [2, 3])
    exponent_bound: int = 2
    epsilon: str = "1/2"
    inequality: str = "thm1"
    function: Optional[str] = None
    signs: str = "both"
    output: Optional[str] = None
    precision_bits: Optional[int] = None
    seed: Optional[int] = None
    theta: Optional[str] = None
    eta: Optional[str] = None
    r: Optional[str] = None
    s: Optional[str] = None
    variant: str = "complement"
    workers: Optional[int] = None

    @classmethod
    def from_json_text(cls, text: str) -> "ScanConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(messages.MSG_CONFIG_JSON.format(line=e.lineno, column=e.colno, reason=e.msg))
        if not isinstance(data, dict):
            raise ConfigError(messages.MSG_CONFIG_JSON.format(line=1, column=1, reason="expected an object"))
        known = {f.name for f in fields(cls)}
        for key in data:
            if key not in known:
                raise ConfigError(messages.MSG_CONFIG_FIELD.format(field=key, reason=messages.MSG_CONFIG_UNKNOWN_FIELD),
                                  field=key)
        if "epsilon" in data and not isinstance(data["epsilon"], str):
            raise ConfigError(messages.MSG_CONFIG_FIELD.format(field="epsilon", reason='must be a string like "3/5"'),
                              field="epsilon")
        config = cls(**data)
        config.validate()
        return config

    @classmethod
    def load(cls, path: str) -> "ScanConfig":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise ConfigError(f"config: cannot read {path}: {e}", field="config")
        logger.debug(f"Loaded scan config from {path}")
        return cls.from_json_text(text)

    def with_overrides(self, **overrides: Any) -> "ScanConfig":
        """Flag values win over file values; None means "not given"."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        config = replace(self, **changes)
        config.validate()
        return config

    def _fail(self, name: str, reason: str) -> ConfigError:
        return ConfigError(messages.MSG_CONFIG_FIELD.format(field=name, reason=reason), field=name)

    def validate(self) -> None:
        if not isinstance(self.primes, list) or not all(isinstance(p, int) and p > 1 for p in self.primes):
            raise self._fail("primes", "expected a list of primes")
        try:
            PlaceSet(tuple(self.primes))
        except ValueError as e:
            raise self._fail("primes", str(e))
        if not isinstance(self.exponent_bound, int) or self.exponent_bound < 0:
            raise self._fail("exponent_bound", "must be a nonnegative integer")
        eps = self.epsilon_value
        if eps < 0:
            raise self._fail("epsilon", "must be nonnegative")
        Inequality.parse(self.inequality)
        if self.signs not in SIGN_MODES:
            raise self._fail("signs", f"must be one of {', '.join(SIGN_MODES)}")
        if self.variant not in {v.value for v in Prop4Variant}:
            raise self._fail("variant", "must be complement or all")
        if self.precision_bits is not None and (not isinstance(self.precision_bits, int) or self.precision_bits < 53):
            raise self._fail("precision_bits", "must be an integer >= 53")
        if self.workers is not None and (not isinstance(self.workers, int) or self.workers < 1):
            raise self._fail("workers", "must be a positive integer")
        if self.seed is not None and (not isinstance(self.seed, int) or self.seed < 0):
            raise self._fail("seed", "must be a nonnegative integer")

    @property
    def epsilon_value(self) -> Fraction:
        return parse_rational(self.epsilon, field="epsilon")

    @property
    def place_set(self) -> PlaceSet:
        return PlaceSet(tuple(self.primes))

    def to_task(self) -> ScanTask:
        """Parses the expressions and builds a validated ScanTask."""
        ineq = Inequality.parse(self.inequality)
        function = parse_function(self.function) if self.function else None
        theta = parse_rational(self.theta, field="theta") if self.theta else None
        eta = parse_rational(self.eta, field="eta") if self.eta else None
        r = parse_univariate(self.r, field="r") if self.r else None
        s = parse_univariate(self.s, field="s") if self.s else None
        return build_task(ineq, self.epsilon_value, self.place_set, function, r, s,
                          theta, eta, Prop4Variant(self.variant))

    def to_json(self) -> Dict[str, Any]:
        out = asdict(self)
        out["epsilon"] = rational_str(self.epsilon_value)
        return out
