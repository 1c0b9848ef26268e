from dataclasses import dataclass
from typing import Dict, Iterable, Tuple

from Core.Utils.exception import EscapingVariable, VariableLhs
from Core.Utils.logger import Logger
from Kernel.term import Term, Var, occurrences, variables

logger = Logger.get_logger()


@dataclass(frozen=True)
class RewriteRule:
    name: str
    lhs: Term
    rhs: Term

    @property
    def left_linear(self) -> bool:
        return all(count == 1 for count in occurrences(self.lhs).values())

    def __str__(self) -> str:
        return f"{self.name}: {self.lhs} => {self.rhs}"


@dataclass(frozen=True)
class TRS:
    rules: Tuple[RewriteRule, ...] = ()
    left_linear: bool = True
    name: str = "trs"

    def rule(self, name: str) -> RewriteRule:
        for rule in self.rules:
            if rule.name == name:
                return rule
        raise KeyError(name)

    def without(self, names: Iterable[str]) -> "TRS":
        names = set(names)
        return validate_trs([r for r in self.rules if r.name not in names], self.name)

    def __len__(self) -> int:
        return len(self.rules)

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "left_linear": self.left_linear,
            "rules": [str(r) for r in self.rules],
        }


def validate_trs(rules: Iterable[RewriteRule], name: str = "trs") -> TRS:
    """Reject variable left-hand sides and right-hand variables missing on the left."""
    rules = tuple(rules)
    for rule in rules:
        if isinstance(rule.lhs, Var):
            raise VariableLhs(f"Rule '{rule.name}' has a variable left-hand side")
        escaping = variables(rule.rhs) - variables(rule.lhs)
        if escaping:
            var = sorted(v.name for v in escaping)[0]
            raise EscapingVariable(f"Rule '{rule.name}': variable '{var}' does not occur on the left")
    trs = TRS(rules, all(r.left_linear for r in rules), name)
    logger.debug("📐 TRS '%s': %d rules, left_linear=%s", name, len(rules), trs.left_linear)
    return trs
