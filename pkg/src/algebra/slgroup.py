"""
SL(2, Z_N) through its two generators t, r and the relation families of the
presentation

    t^N = r^N = 1
    t^k r^l = r^l t^k                  N = k*l, gcd(k, l) = 1
    (t^k r^l t^k)^2 = (t r t)^2        1 <= k, l <= N-1, k*l = 1 (mod N)
    t^k r^l t^k = r^l t^k r^l          1 <= k, l <= N-1, k*l = 1 (mod N)

Words use non-negative exponents only; r^N = 1 is part of the presentation
so no inverses are ever needed.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import gcd
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

from algebra.modmat import Mat2, mat_mul, mat_pow

logger = logging.getLogger(__name__)

G = TypeVar("G")


class RelationFamily(Enum):
    """Relation families, declared in enumeration order."""
    ORDER_T = "order_t"
    ORDER_R = "order_r"
    COMMUTE = "commute"
    SQUARE = "square"
    BRAID = "braid"


class Symbol(Enum):
    T = "t"
    R = "r"


# A word is a sequence of (generator, non-negative exponent) letters
Word = Tuple[Tuple[Symbol, int], ...]


@dataclass(frozen=True)
class RelationInstance:
    """One concrete relation: family plus exponents (k, l)."""
    family: RelationFamily
    k: int
    l: int

    def label(self) -> str:
        if self.family is RelationFamily.ORDER_T:
            return f"t^{self.k} = 1"
        if self.family is RelationFamily.ORDER_R:
            return f"r^{self.l} = 1"
        if self.family is RelationFamily.COMMUTE:
            return f"t^{self.k} r^{self.l} = r^{self.l} t^{self.k}"
        if self.family is RelationFamily.SQUARE:
            return f"(t^{self.k} r^{self.l} t^{self.k})^2 = (t r t)^2"
        return f"t^{self.k} r^{self.l} t^{self.k} = r^{self.l} t^{self.k} r^{self.l}"


def _check_dim(n: int) -> None:
    if n < 2:
        raise ValueError(f"SL(2, Z_N) needs N >= 2, got {n}")


def generators(n: int) -> Tuple[Mat2, Mat2]:
    """t = [[1,1],[0,1]] and r = [[1,0],[-1,1]] over Z_N."""
    _check_dim(n)
    return Mat2(n, 1, 1, 0, 1), Mat2(n, 1, 0, -1, 1)


def units(n: int) -> List[int]:
    return [k for k in range(1, n) if gcd(k, n) == 1]


def coprime_factorizations(n: int) -> List[Tuple[int, int]]:
    """Ordered pairs (k, l) with k*l = N and gcd(k, l) = 1, k ascending."""
    return [(k, n // k) for k in range(1, n + 1) if n % k == 0 and gcd(k, n // k) == 1]


@lru_cache(maxsize=None)
def _relations(n: int) -> Tuple[RelationInstance, ...]:
    instances = [
        RelationInstance(RelationFamily.ORDER_T, n, 0),
        RelationInstance(RelationFamily.ORDER_R, 0, n),
    ]
    instances.extend(RelationInstance(RelationFamily.COMMUTE, k, l) for k, l in coprime_factorizations(n))
    unit_pairs = [(k, pow(k, -1, n)) for k in units(n)]
    instances.extend(RelationInstance(RelationFamily.SQUARE, k, l) for k, l in unit_pairs)
    instances.extend(RelationInstance(RelationFamily.BRAID, k, l) for k, l in unit_pairs)
    return tuple(instances)


def enumerate_relations(n: int) -> List[RelationInstance]:
    logger.info("enumerate_relations called with n=%d", n)
    _check_dim(n)
    result = list(_relations(n))
    logger.info("enumerate_relations completed with %d instances", len(result))
    return result


def relation_words(instance: RelationInstance) -> Tuple[Word, Word]:
    """Left- and right-hand words of a relation instance."""
    t, r = Symbol.T, Symbol.R
    k, l = instance.k, instance.l
    family = instance.family
    if family is RelationFamily.ORDER_T:
        return ((t, k),), ()
    if family is RelationFamily.ORDER_R:
        return ((r, l),), ()
    if family is RelationFamily.COMMUTE:
        return ((t, k), (r, l)), ((r, l), (t, k))
    if family is RelationFamily.SQUARE:
        return ((t, k), (r, l), (t, k)) * 2, ((t, 1), (r, 1), (t, 1)) * 2
    return ((t, k), (r, l), (t, k)), ((r, l), (t, k), (r, l))


def evaluate_word(
    word: Sequence[Tuple[Symbol, int]],
    images: Tuple[G, G],
    multiply: Callable[[G, G], G],
    identity: G,
    power: Optional[Callable[[G, int], G]] = None,
) -> G:
    """
    Evaluate a word in any group given the images of t and r.

    Args:
        word: letters (symbol, exponent) with exponent >= 0
        images: (image of t, image of r)
        multiply: the target group law
        identity: the target identity
        power: optional fast power; repeated multiplication otherwise

    Returns:
        The product of the letter images in word order.
    """
    result = identity
    for symbol, exponent in word:
        if exponent < 0:
            raise ValueError(f"negative exponent {exponent} in word")
        base = images[0] if symbol is Symbol.T else images[1]
        if power is not None:
            letter = power(base, exponent)
        else:
            letter = identity
            for _ in range(exponent):
                letter = multiply(letter, base)
        result = multiply(result, letter)
    return result


def verify_presentation(n: int) -> bool:
    """True iff t and r satisfy every enumerated relation in SL(2, Z_N)."""
    logger.info("verify_presentation called with n=%d", n)
    t, r = generators(n)
    identity = Mat2.identity(n)
    for instance in enumerate_relations(n):
        lhs, rhs = relation_words(instance)
        left = evaluate_word(lhs, (t, r), mat_mul, identity, mat_pow)
        right = evaluate_word(rhs, (t, r), mat_mul, identity, mat_pow)
        if left != right:
            logger.warning("Relation %s fails in SL(2, Z_%d)", instance.label(), n)
            return False
    logger.info("verify_presentation completed for n=%d", n)
    return True
