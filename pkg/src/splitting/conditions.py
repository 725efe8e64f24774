"""
Literal evaluation of the splitting conditions.

For a candidate (T, R) each presentation relation lhs = rhs becomes the test
lhs(T, R) . rhs(T, R)^-1 in K. Condition (i) holds by construction of the
lifts; the families map onto the remaining conditions as

    ORDER_T, ORDER_R -> (ii)    COMMUTE -> (iii)
    SQUARE           -> (iv)    BRAID   -> (v)
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

from algebra.sdproduct import SdElement, in_kernel, sd_inverse, sd_mul, sd_pow
from algebra.slgroup import RelationFamily, RelationInstance, enumerate_relations, evaluate_word, relation_words
from splitting.criteria import evaluate_criteria
from splitting.params import GenParams, build_generators

logger = logging.getLogger(__name__)

CONDITION_OF_FAMILY = {
    RelationFamily.ORDER_T: "ii",
    RelationFamily.ORDER_R: "ii",
    RelationFamily.COMMUTE: "iii",
    RelationFamily.SQUARE: "iv",
    RelationFamily.BRAID: "v",
}


@dataclass
class ConditionReport:
    """Per-relation outcome of the direct evaluation for one candidate."""
    params: GenParams
    results: Dict[RelationInstance, bool] = field(default_factory=dict)
    criteria: Dict[str, bool] = field(default_factory=dict)

    @property
    def failing(self) -> List[RelationInstance]:
        return [instance for instance, ok in self.results.items() if not ok]

    @property
    def passed(self) -> bool:
        return all(self.results.values())

    def condition_passed(self, condition: str) -> bool:
        return all(
            ok for instance, ok in self.results.items()
            if CONDITION_OF_FAMILY[instance.family] == condition
        )


class RelationEvaluator:
    """Evaluates relation elements for one (T, R), reusing powers across relations."""

    def __init__(self, params: GenParams):
        self.params = params
        self.t_lift, self.r_lift = build_generators(params)
        self._identity = SdElement.identity(params.dim)
        self._powers: Dict[tuple, SdElement] = {}

    def _power(self, base: SdElement, exponent: int) -> SdElement:
        key = (base is self.t_lift, exponent)
        cached = self._powers.get(key)
        if cached is None:
            cached = sd_pow(base, exponent)
            self._powers[key] = cached
        return cached

    def word(self, word) -> SdElement:
        return evaluate_word(word, (self.t_lift, self.r_lift), sd_mul, self._identity, self._power)

    def relation_element(self, instance: RelationInstance) -> SdElement:
        """lhs . rhs^-1 for the relation instance."""
        lhs, rhs = relation_words(instance)
        return sd_mul(self.word(lhs), sd_inverse(self.word(rhs)))

    def holds(self, instance: RelationInstance) -> bool:
        return in_kernel(self.relation_element(instance))


def check_conditions_direct(p: GenParams, with_criteria: bool = True) -> ConditionReport:
    """Evaluate every relation instance of SL(2, Z_N) on the candidate lifts."""
    logger.info("check_conditions_direct called for %s", p)
    evaluator = RelationEvaluator(p)
    report = ConditionReport(params=p)
    for instance in enumerate_relations(p.dim):
        report.results[instance] = evaluator.holds(instance)
    if with_criteria:
        report.criteria = evaluate_criteria(p)
    logger.info("check_conditions_direct completed: %d failing", len(report.failing))
    return report


def families_hold_direct(p: GenParams, families: Optional[Iterable[RelationFamily]] = None) -> bool:
    """True iff every instance of the given families holds; stops at the first failure."""
    wanted = set(families) if families is not None else None
    evaluator = RelationEvaluator(p)
    for instance in enumerate_relations(p.dim):
        if wanted is not None and instance.family not in wanted:
            continue
        if not evaluator.holds(instance):
            return False
    return True


def passes_direct(p: GenParams) -> bool:
    return families_hold_direct(p)
