"""
Closed-form criteria, one per splitting condition.

Each predicate reads only the ten candidate parameters and is equivalent to
the literal relation-by-relation test in splitting.conditions for the same
condition. They are what makes searching beyond tiny dimensions feasible.
"""
import logging
from typing import Callable, Dict, List, Tuple

from algebra.slgroup import units
from splitting.params import GenParams

logger = logging.getLogger(__name__)


class CriterionDomainError(ValueError):
    """Raised when a criterion is asked about a dimension it does not cover."""


def criterion_orders(p: GenParams) -> bool:
    """T^N and R^N lie in K."""
    half = p.dim // 2
    return p.v % 2 == (half * p.c + 1) % 2 and p.u1 % 2 == (half * p.b1 + 1) % 2


def criterion_commute_k_even(p: GenParams) -> bool:
    """
    T^k R^l and R^l T^k agree modulo K for every coprime N = k l with k even.
    Only v and c matter; the R-side bits a', c' cancel in the commutator.
    """
    expected = (1 + p.c) % 2 if p.dim % 4 == 2 else 1
    return p.v % 2 == expected


def criterion_commute_k_odd(p: GenParams) -> bool:
    """The same for k odd (so l even)."""
    expected = (1 + p.b1) % 2 if p.dim % 4 == 2 else 1
    return p.u1 % 2 == expected


def criterion_commute(p: GenParams) -> bool:
    return criterion_commute_k_even(p) and criterion_commute_k_odd(p)


def criterion_square(p: GenParams) -> bool:
    """3(k^2 - 1) v = 0 and (l^2 - 1) u' = 0 in Z_N over all unit pairs k l = 1."""
    n = p.dim
    for k in units(n):
        l = pow(k, -1, n)
        if (3 * (k * k - 1) * p.v) % n or ((l * l - 1) * p.u1) % n:
            return False
    return True


def criterion_braid(p: GenParams) -> bool:
    """v, u' in {0, N/2} with 2v/N + 2u'/N of the same parity as c + b'."""
    half = p.dim // 2
    if p.v not in (0, half) or p.u1 not in (0, half):
        return False
    return (p.v // half + p.u1 // half) % 2 == (p.c + p.b1) % 2


def criterion_combined_mod4_2(p: GenParams) -> bool:
    """
    All five conditions at once, valid only for N = 2 (mod 4):
    v = (N/2)(c + 1) and u' = (N/2)(b' + 1) in Z_N, with all six bits free.
    """
    n = p.dim
    if n % 4 != 2:
        raise CriterionDomainError(f"combined criterion needs N = 2 mod 4, got {n}")
    half = n // 2
    return p.v == (half * (p.c + 1)) % n and p.u1 == (half * (p.b1 + 1)) % n


CRITERIA: Dict[str, Callable[[GenParams], bool]] = {
    "orders": criterion_orders,
    "commute_k_even": criterion_commute_k_even,
    "commute_k_odd": criterion_commute_k_odd,
    "square": criterion_square,
    "braid": criterion_braid,
}


def evaluate_criteria(p: GenParams) -> Dict[str, bool]:
    """Every criterion value for one candidate; 'combined' only when N = 2 (mod 4)."""
    values = {name: check(p) for name, check in CRITERIA.items()}
    if p.dim % 4 == 2:
        values["combined"] = criterion_combined_mod4_2(p)
    return values


def fast_path_order(dim: int) -> List[Tuple[str, Callable[[GenParams], bool]]]:
    """Cheapest and most selective checks first."""
    middle = ("combined", criterion_combined_mod4_2) if dim % 4 == 2 else ("commute", criterion_commute)
    return [
        ("orders", criterion_orders),
        middle,
        ("braid", criterion_braid),
        ("square", criterion_square),
    ]


def passes_criteria(p: GenParams) -> bool:
    return all(check(p) for _, check in fast_path_order(p.dim))
