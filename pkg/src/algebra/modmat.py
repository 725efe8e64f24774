"""
Exact residue arithmetic for 2-vectors and 2x2 matrices over Z_M.
Every value carries its modulus and every binary operation checks that the
moduli agree.
"""
import logging
from dataclasses import dataclass
from typing import Tuple

logger = logging.getLogger(__name__)

# Dimensions are capped at 2^15, so the largest modulus in use is 2N = 2^16
MAX_MODULUS = 2 ** 16


class ModulusMismatchError(ValueError):
    """Raised when two values over different moduli are combined."""


class NotUnimodularError(ValueError):
    """Raised when an SL(2) inverse is requested for a matrix with det != 1."""


class ModulusBoundError(ValueError):
    """Raised for a modulus outside [2, MAX_MODULUS]."""


def _check_modulus(modulus: int) -> None:
    if not 2 <= modulus <= MAX_MODULUS:
        raise ModulusBoundError(f"modulus {modulus} outside supported range [2, {MAX_MODULUS}]")


def _same_modulus(left: int, right: int) -> None:
    if left != right:
        raise ModulusMismatchError(f"cannot combine values over Z_{left} and Z_{right}")


@dataclass(frozen=True, slots=True)
class Mat2:
    """A 2x2 matrix over Z_modulus, entries kept canonical in [0, modulus)."""
    modulus: int
    a11: int
    a12: int
    a21: int
    a22: int

    def __post_init__(self):
        _check_modulus(self.modulus)
        m = self.modulus
        object.__setattr__(self, "a11", self.a11 % m)
        object.__setattr__(self, "a12", self.a12 % m)
        object.__setattr__(self, "a21", self.a21 % m)
        object.__setattr__(self, "a22", self.a22 % m)

    @classmethod
    def identity(cls, modulus: int) -> "Mat2":
        return cls(modulus, 1, 0, 0, 1)

    @classmethod
    def zero(cls, modulus: int) -> "Mat2":
        return cls(modulus, 0, 0, 0, 0)

    @classmethod
    def from_rows(cls, modulus: int, rows) -> "Mat2":
        (a11, a12), (a21, a22) = rows
        return cls(modulus, a11, a12, a21, a22)

    def rows(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        return (self.a11, self.a12), (self.a21, self.a22)

    def det(self) -> int:
        return (self.a11 * self.a22 - self.a12 * self.a21) % self.modulus

    def is_identity(self) -> bool:
        return (self.a11, self.a12, self.a21, self.a22) == (1, 0, 0, 1)

    def __mul__(self, other: "Mat2") -> "Mat2":
        return mat_mul(self, other)

    def __add__(self, other: "Mat2") -> "Mat2":
        return mat_add(self, other)

    def __str__(self) -> str:
        return f"[[{self.a11},{self.a12}],[{self.a21},{self.a22}]] over Z_{self.modulus}"


@dataclass(frozen=True, slots=True)
class Vec2:
    """A column 2-vector over Z_modulus."""
    modulus: int
    x1: int
    x2: int

    def __post_init__(self):
        _check_modulus(self.modulus)
        object.__setattr__(self, "x1", self.x1 % self.modulus)
        object.__setattr__(self, "x2", self.x2 % self.modulus)

    @classmethod
    def zero(cls, modulus: int) -> "Vec2":
        return cls(modulus, 0, 0)

    def is_zero(self) -> bool:
        return self.x1 == 0 and self.x2 == 0

    def __add__(self, other: "Vec2") -> "Vec2":
        return vec_add(self, other)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return vec_sub(self, other)

    def __str__(self) -> str:
        return f"({self.x1},{self.x2}) over Z_{self.modulus}"


def mat_mul(a: Mat2, b: Mat2) -> Mat2:
    _same_modulus(a.modulus, b.modulus)
    return Mat2(
        a.modulus,
        a.a11 * b.a11 + a.a12 * b.a21,
        a.a11 * b.a12 + a.a12 * b.a22,
        a.a21 * b.a11 + a.a22 * b.a21,
        a.a21 * b.a12 + a.a22 * b.a22,
    )


def mat_add(a: Mat2, b: Mat2) -> Mat2:
    _same_modulus(a.modulus, b.modulus)
    return Mat2(a.modulus, a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22)


def mat_scale(a: Mat2, factor: int) -> Mat2:
    return Mat2(a.modulus, factor * a.a11, factor * a.a12, factor * a.a21, factor * a.a22)


def sl2_inverse(a: Mat2) -> Mat2:
    """Inverse of a det-1 matrix: [[d, -b], [-c, a]]."""
    if a.det() != 1:
        logger.error("sl2_inverse called on non-unimodular %s", a)
        raise NotUnimodularError(f"{a} has determinant {a.det()}, expected 1")
    return Mat2(a.modulus, a.a22, -a.a12, -a.a21, a.a11)


def reduce_mod(a: Mat2, n: int) -> Mat2:
    """Entrywise reduction Z_M -> Z_n; n must divide the modulus."""
    if n < 2 or a.modulus % n != 0:
        raise ModulusMismatchError(f"cannot reduce a matrix over Z_{a.modulus} to Z_{n}")
    return Mat2(n, a.a11, a.a12, a.a21, a.a22)


def mat_pow(a: Mat2, k: int) -> Mat2:
    if k < 0:
        raise ValueError(f"negative exponent {k}")
    result = Mat2.identity(a.modulus)
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def power_and_geometric_sum(c: Mat2, k: int) -> Tuple[Mat2, Mat2]:
    """Return (C^k, C^0 + C^1 + ... + C^(k-1)) by doubling."""
    if k < 0:
        raise ValueError(f"negative exponent {k}")
    if k == 0:
        return Mat2.identity(c.modulus), Mat2.zero(c.modulus)
    if k % 2 == 0:
        half_power, half_sum = power_and_geometric_sum(c, k // 2)
        return mat_mul(half_power, half_power), mat_add(half_sum, mat_mul(half_power, half_sum))
    power, partial = power_and_geometric_sum(c, k - 1)
    return mat_mul(c, power), mat_add(Mat2.identity(c.modulus), mat_mul(c, partial))


def mat_vec(a: Mat2, x: Vec2) -> Vec2:
    _same_modulus(a.modulus, x.modulus)
    return Vec2(a.modulus, a.a11 * x.x1 + a.a12 * x.x2, a.a21 * x.x1 + a.a22 * x.x2)


def vec_add(x: Vec2, y: Vec2) -> Vec2:
    _same_modulus(x.modulus, y.modulus)
    return Vec2(x.modulus, x.x1 + y.x1, x.x2 + y.x2)


def vec_sub(x: Vec2, y: Vec2) -> Vec2:
    _same_modulus(x.modulus, y.modulus)
    return Vec2(x.modulus, x.x1 - y.x1, x.x2 - y.x2)


def vec_neg(x: Vec2) -> Vec2:
    return Vec2(x.modulus, -x.x1, -x.x2)
