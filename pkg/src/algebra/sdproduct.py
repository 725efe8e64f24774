"""
The group SL(2, Z_2N) x| Z_N^2 for even N, with the action A.u = [A]_N u.

Elements are pairs (C, w). The product is

    (C, w) . (D, x) = (C D, w + [C]_N x)

and the 8-element normal subgroup K (the kernel of the map onto the
projective Clifford group) is materialized explicitly per dimension.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product
from math import comb
from typing import FrozenSet, Sequence, Tuple

from algebra.modmat import (
    Mat2,
    Vec2,
    mat_mul,
    mat_pow,
    mat_vec,
    power_and_geometric_sum,
    reduce_mod,
    sl2_inverse,
    vec_add,
    vec_neg,
)

logger = logging.getLogger(__name__)


class DimensionMismatchError(ValueError):
    """Raised when elements of different dimensions are combined."""


class OddDimensionError(ValueError):
    """Raised when an even-dimension construction is asked for an odd N."""


class Side(Enum):
    """Which generator lift a closed form refers to."""
    T_SIDE = "T"
    R_SIDE = "R"


def check_even_dim(n: int) -> None:
    if n < 2 or n % 2:
        raise OddDimensionError(f"dimension must be an even integer >= 2, got {n}")


@dataclass(frozen=True, slots=True)
class SdElement:
    """(matrix over Z_2N with det 1, vector over Z_N)."""
    dim: int
    matrix: Mat2
    vector: Vec2

    def __post_init__(self):
        check_even_dim(self.dim)
        if self.matrix.modulus != 2 * self.dim or self.vector.modulus != self.dim:
            raise DimensionMismatchError(
                f"element of dimension {self.dim} needs Z_{2 * self.dim} matrix and Z_{self.dim} vector"
            )
        if self.matrix.det() != 1:
            raise ValueError(f"{self.matrix} is not in SL(2, Z_{2 * self.dim})")

    @classmethod
    def identity(cls, dim: int) -> "SdElement":
        return cls(dim, Mat2.identity(2 * dim), Vec2.zero(dim))

    @classmethod
    def of(cls, dim: int, rows, vector: Sequence[int] = (0, 0)) -> "SdElement":
        return cls(dim, Mat2.from_rows(2 * dim, rows), Vec2(dim, *vector))

    def __mul__(self, other: "SdElement") -> "SdElement":
        return sd_mul(self, other)

    def __str__(self) -> str:
        return f"({self.matrix}, {self.vector})"


def omega(p: SdElement) -> Mat2:
    return p.matrix


def vector_part(p: SdElement) -> Vec2:
    return p.vector


def _same_dim(p: SdElement, q: SdElement) -> None:
    if p.dim != q.dim:
        raise DimensionMismatchError(f"cannot combine dimensions {p.dim} and {q.dim}")


def sd_mul(s: SdElement, p: SdElement) -> SdElement:
    _same_dim(s, p)
    n = s.dim
    return SdElement(
        n,
        mat_mul(s.matrix, p.matrix),
        vec_add(s.vector, mat_vec(reduce_mod(s.matrix, n), p.vector)),
    )


def sd_inverse(p: SdElement) -> SdElement:
    """(C, w)^-1 = (C^-1, -[C^-1]_N w)."""
    inverse = sl2_inverse(p.matrix)
    return SdElement(p.dim, inverse, vec_neg(mat_vec(reduce_mod(inverse, p.dim), p.vector)))


def sd_pow(p: SdElement, k: int) -> SdElement:
    """(C, w)^k = (C^k, [C^0 + ... + C^(k-1)]_N w), summed over Z_N."""
    if k < 0:
        raise ValueError(f"negative exponent {k}")
    _, geometric = power_and_geometric_sum(reduce_mod(p.matrix, p.dim), k)
    return SdElement(p.dim, mat_pow(p.matrix, k), mat_vec(geometric, p.vector))


def sd_pow_iterative(p: SdElement, k: int) -> SdElement:
    """k-fold product; the reference the closed form is checked against."""
    result = SdElement.identity(p.dim)
    for _ in range(k):
        result = sd_mul(result, p)
    return result


@lru_cache(maxsize=None)
def _kernel(n: int) -> Tuple[SdElement, ...]:
    half = n // 2
    return tuple(
        SdElement.of(n, ((1 + n * r, n * s), (n * t, 1 + n * r)), (half * s, half * t))
        for r, s, t in product((0, 1), repeat=3)
    )


@lru_cache(maxsize=None)
def _kernel_set(n: int) -> FrozenSet[SdElement]:
    return frozenset(_kernel(n))


def kernel_elements(n: int) -> list:
    """The 8 elements of K indexed by (r, s, t) in {0,1}^3, lexicographically."""
    check_even_dim(n)
    return list(_kernel(n))


def in_kernel(p: SdElement) -> bool:
    return p in _kernel_set(p.dim)


def sigma(p: SdElement) -> Mat2:
    """Image in SL(2, Z_N) of the K-coset of p."""
    return reduce_mod(p.matrix, p.dim)


def coset_equal(p: SdElement, q: SdElement) -> bool:
    _same_dim(p, q)
    return in_kernel(sd_mul(p, sd_inverse(q)))


@lru_cache(maxsize=None)
def reduction_kernel(n: int) -> Tuple[Mat2, ...]:
    """The 8 matrices of ker(SL(2, Z_2N) -> SL(2, Z_N)), indexed by (a, b, c)."""
    check_even_dim(n)
    return tuple(
        Mat2(2 * n, 1 + a * n, b * n, c * n, 1 + a * n)
        for a, b, c in product((0, 1), repeat=3)
    )


def generator_lift(side: Side, bits: Sequence[int], n: int) -> Mat2:
    """
    The lift A (T side) or B (R side) of t or r selected by the six bits
    (a, b, c, a', b', c'):

        A = [[1,1],[0,1]] + N [[a+c, a+b], [c, a]]
        B = [[1,0],[-1,1]] + N [[a', b'], [c'-a', a'-b']]
    """
    check_even_dim(n)
    a, b, c, a1, b1, c1 = bits
    if side is Side.T_SIDE:
        return Mat2(2 * n, 1 + n * (a + c), 1 + n * (a + b), n * c, 1 + n * a)
    return Mat2(2 * n, 1 + n * a1, n * b1, -1 + n * (c1 - a1), 1 + n * (a1 - b1))


def closed_form_power_matrix(side: Side, bits: Sequence[int], n: int, k: int) -> Mat2:
    """A^k or B^k from the binomial closed form, valid for every k >= 1."""
    if k < 1:
        raise ValueError(f"closed form needs k >= 1, got {k}")
    check_even_dim(n)
    a, b, c, a1, b1, c1 = bits
    if side is Side.T_SIDE:
        return Mat2(
            2 * n,
            1 + n * (k * a + comb(k + 1, 2) * c),
            k + n * (k * k * a + k * b + comb(k + 1, 3) * c),
            n * (k * c),
            1 + n * (k * a + comb(k, 2) * c),
        )
    return Mat2(
        2 * n,
        1 + n * (k * a1 - comb(k, 2) * b1),
        n * (k * b1),
        -k + n * (-k * k * a1 + comb(k + 1, 3) * b1 + k * c1),
        1 + n * (k * a1 - comb(k + 1, 2) * b1),
    )


def parity_power_matrix(side: Side, bits: Sequence[int], n: int, k: int) -> Mat2:
    """The same power after reducing the binomials mod 2 (parity split on k)."""
    if k < 1:
        raise ValueError(f"closed form needs k >= 1, got {k}")
    check_even_dim(n)
    a, b, c, a1, b1, c1 = bits
    half = k // 2
    if side is Side.T_SIDE:
        if k % 2 == 0:
            return Mat2(2 * n, 1 + n * half * c, k + n * half * c, 0, 1 + n * half * c)
        return Mat2(
            2 * n,
            1 + n * (a + (k + 1) // 2 * c),
            k + n * (a + b),
            n * c,
            1 + n * (a + (k - 1) // 2 * c),
        )
    if k % 2 == 0:
        return Mat2(2 * n, 1 + n * half * b1, 0, -k + n * half * b1, 1 + n * half * b1)
    return Mat2(
        2 * n,
        1 + n * (a1 + (k - 1) // 2 * b1),
        n * b1,
        -k + n * (a1 + c1),
        1 + n * (a1 + (k + 1) // 2 * b1),
    )
