"""
Dense numerical model of the generalized Pauli matrices, Weyl operators and a
few Clifford unitaries, used to check the operator facts behind the
symplectic action at small N.

Conventions: X|j> = |j-1 mod N>, Z|j> = w^j |j> with w = exp(2 pi i / N),
tau = -exp(i pi / N) (so tau^2 = w), W(k, l) = tau^(k l) X^k Z^l.
"""
import logging
from dataclasses import dataclass, field
from itertools import product
from typing import List, Optional, Tuple

import numpy as np

from algebra.modmat import Mat2, mat_mul
from config.settings import settings

logger = logging.getLogger(__name__)

Point = Tuple[int, int]


class NotCliffordError(ValueError):
    """Raised when a unitary does not normalize the projective Heisenberg group."""


class NotProportionalError(ValueError):
    """Raised when two operators expected to agree up to a phase do not."""


def _check_dim(n: int) -> None:
    if n < 2:
        raise ValueError(f"operators need N >= 2, got {n}")
    if n > settings.WEYL_MAX_DIM:
        raise ValueError(f"dimension {n} exceeds numeric bound {settings.WEYL_MAX_DIM}")


def _max_norm(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(matrix)))


@dataclass(frozen=True, eq=False)
class UnitaryMatrix:
    """An N x N complex matrix with the tolerance used to compare it."""
    dim: int
    data: np.ndarray
    tolerance: float = field(default_factory=lambda: settings.WEYL_TOLERANCE)

    def __post_init__(self):
        if self.data.shape != (self.dim, self.dim):
            raise ValueError(f"expected a {self.dim}x{self.dim} matrix, got shape {self.data.shape}")

    def __matmul__(self, other: "UnitaryMatrix") -> "UnitaryMatrix":
        if self.dim != other.dim:
            raise ValueError(f"cannot multiply dimensions {self.dim} and {other.dim}")
        return UnitaryMatrix(self.dim, self.data @ other.data, self.tolerance)

    def dagger(self) -> "UnitaryMatrix":
        return UnitaryMatrix(self.dim, self.data.conj().T, self.tolerance)

    def power(self, k: int) -> "UnitaryMatrix":
        if k < 0:
            return self.dagger().power(-k)
        return UnitaryMatrix(self.dim, np.linalg.matrix_power(self.data, k), self.tolerance)

    def scaled(self, factor: complex) -> "UnitaryMatrix":
        return UnitaryMatrix(self.dim, factor * self.data, self.tolerance)

    def is_unitary(self) -> bool:
        return _max_norm(self.data @ self.data.conj().T - np.eye(self.dim)) <= self.tolerance

    def close_to(self, other: "UnitaryMatrix") -> bool:
        return _max_norm(self.data - other.data) <= self.tolerance

    def is_identity(self) -> bool:
        return _max_norm(self.data - np.eye(self.dim)) <= self.tolerance


def identity(n: int) -> UnitaryMatrix:
    return UnitaryMatrix(n, np.eye(n, dtype=complex))


def omega(n: int) -> complex:
    return complex(np.exp(2j * np.pi / n))


def tau_power(n: int, m: int) -> complex:
    """tau^m, with the exponent reduced exactly before any floating point."""
    return complex(np.exp(1j * np.pi * ((m * (n + 1)) % (2 * n)) / n))


def tau_order(n: int) -> int:
    """Multiplicative order of tau: N for odd N, 2N for even N."""
    return n if n % 2 else 2 * n


def pauli_matrices(n: int) -> Tuple[UnitaryMatrix, UnitaryMatrix]:
    """The cyclic shift X and the clock Z."""
    _check_dim(n)
    shift = np.roll(np.eye(n, dtype=complex), -1, axis=0)
    clock = np.diag(np.exp(2j * np.pi * np.arange(n) / n))
    return UnitaryMatrix(n, shift), UnitaryMatrix(n, clock)


def weyl(n: int, k: int, l: int) -> UnitaryMatrix:
    """W(k, l) = tau^(k l) X^k Z^l for integers k, l of any sign."""
    shift, clock = pauli_matrices(n)
    body = shift.power(k % n) @ clock.power(l % n)
    return body.scaled(tau_power(n, k * l))


def proportionality_factor(u: UnitaryMatrix, v: UnitaryMatrix) -> Optional[complex]:
    """
    The unit-modulus lambda with U = lambda V, or None. lambda is read off the
    largest-modulus entry of V and then checked on the whole matrix.
    """
    if u.dim != v.dim:
        return None
    index = np.unravel_index(np.argmax(np.abs(v.data)), v.data.shape)
    pivot = v.data[index]
    if abs(pivot) <= u.tolerance:
        return None
    factor = complex(u.data[index] / pivot)
    if abs(abs(factor) - 1.0) > u.tolerance:
        return None
    if _max_norm(u.data - factor * v.data) > u.tolerance:
        return None
    return factor


def projective_equal(u: UnitaryMatrix, v: UnitaryMatrix) -> bool:
    return proportionality_factor(u, v) is not None


@dataclass(frozen=True, eq=False)
class ProjectiveClass:
    """A unitary up to a unit-modulus scalar."""
    representative: UnitaryMatrix

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProjectiveClass):
            return NotImplemented
        return projective_equal(self.representative, other.representative)

    def __mul__(self, other: "ProjectiveClass") -> "ProjectiveClass":
        return ProjectiveClass(self.representative @ other.representative)

    __hash__ = None


def weyl_compose_phase(n: int, u: Point, w: Point) -> complex:
    """The scalar lambda with W(u) W(w) = lambda W(u + w), measured numerically."""
    composed = weyl(n, *u) @ weyl(n, *w)
    target = weyl(n, u[0] + w[0], u[1] + w[1])
    factor = proportionality_factor(composed, target)
    if factor is None:
        logger.error("W%s W%s is not proportional to W(u + w) at N=%d", u, w, n)
        raise NotProportionalError(f"W{u} W{w} is not a multiple of W(u + w) for N={n}")
    return factor


def weyl_phase_exponent(n: int, u: Point, w: Point) -> int:
    """The m in [0, tau_order(N)) with W(u) W(w) = tau^m W(u + w)."""
    factor = weyl_compose_phase(n, u, w)
    for m in range(tau_order(n)):
        if abs(tau_power(n, m) - factor) <= settings.WEYL_TOLERANCE:
            return m
    raise NotProportionalError(f"phase {factor} of W{u} W{w} is not a power of tau for N={n}")


def predicted_phase_exponent(n: int, u: Point, w: Point) -> int:
    """-(k1 l2 + 3 k2 l1) modulo the order of tau, under the shift/clock convention above."""
    (k1, l1), (k2, l2) = u, w
    return (-(k1 * l2 + 3 * k2 * l1)) % tau_order(n)


def commutation_phase(n: int, u: Point, w: Point) -> complex:
    """W(u) W(w) = w^(k1 l2 - k2 l1) W(w) W(u)."""
    (k1, l1), (k2, l2) = u, w
    return complex(np.exp(2j * np.pi * ((k1 * l2 - k2 * l1) % n) / n))


def fourier_matrix(n: int) -> UnitaryMatrix:
    """F_jk = w^(j k) / sqrt(N)."""
    _check_dim(n)
    j = np.arange(n)
    return UnitaryMatrix(n, np.exp(2j * np.pi * np.outer(j, j) / n) / np.sqrt(n))


def phase_gate(n: int) -> UnitaryMatrix:
    """diag(tau^(j^2))."""
    _check_dim(n)
    return UnitaryMatrix(n, np.diag([tau_power(n, j * j) for j in range(n)]))


def random_unitary(n: int, seed: Optional[int] = None) -> UnitaryMatrix:
    """QR of a complex Gaussian matrix with the diagonal phases of R divided out."""
    _check_dim(n)
    rng = np.random.default_rng(seed)
    gaussian = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(gaussian)
    diagonal = np.diag(r)
    return UnitaryMatrix(n, q * (diagonal / np.abs(diagonal)))


def _conjugate(u: UnitaryMatrix, inner: UnitaryMatrix) -> UnitaryMatrix:
    return u @ inner @ u.dagger()


def _match_weyl(n: int, target: UnitaryMatrix) -> Optional[Point]:
    for point in product(range(n), repeat=2):
        if projective_equal(target, weyl(n, *point)):
            return point
    return None


def projective_action(u: UnitaryMatrix) -> Mat2:
    """
    The A in SL(2, Z_N) with U W(x) U^-1 ~ W(A x) for every x.

    The columns of A come from the images of W(1,0) and W(0,1); the result
    is then checked on all of Z_N^2.
    """
    n = u.dim
    _check_dim(n)
    if not u.is_unitary():
        raise NotCliffordError("matrix is not unitary")
    columns = []
    for generator in ((1, 0), (0, 1)):
        image = _match_weyl(n, _conjugate(u, weyl(n, *generator)))
        if image is None:
            raise NotCliffordError(f"U W{generator} U^-1 is not proportional to any Weyl operator")
        columns.append(image)
    (p1, q1), (p2, q2) = columns
    action = Mat2(n, p1, p2, q1, q2)
    if action.det() != 1:
        raise NotCliffordError(f"induced action {action} is not in SL(2, Z_{n})")
    for x in product(range(n), repeat=2):
        image = ((action.a11 * x[0] + action.a12 * x[1]) % n, (action.a21 * x[0] + action.a22 * x[1]) % n)
        if not projective_equal(_conjugate(u, weyl(n, *x)), weyl(n, *image)):
            raise NotCliffordError(f"U W{x} U^-1 is not proportional to W{image}")
    return action


@dataclass
class WeylCheck:
    name: str
    dim: int
    passed: bool
    detail: str = ""


def _all_points(n: int) -> List[Point]:
    return list(product(range(n), repeat=2))


def run_weyl_checks(n: int, seed: int = 0) -> List[WeylCheck]:
    """Numerical operator checks at dimension N."""
    _check_dim(n)
    logger.info("run_weyl_checks called with n=%d", n)
    shift, clock = pauli_matrices(n)
    points = _all_points(n)
    fourier = fourier_matrix(n)
    gate = phase_gate(n)
    results: List[WeylCheck] = []

    def record(name: str, passed: bool, detail: str = "") -> None:
        results.append(WeylCheck(name, n, bool(passed), "" if passed else detail))

    record(
        "unitarity",
        all(m.is_unitary() for m in (shift, clock, fourier, gate)),
        "X, Z, F or the phase gate is not unitary",
    )
    record("commutation", (shift @ clock).close_to((clock @ shift).scaled(omega(n))), "XZ != w ZX")
    record("orders", shift.power(n).is_identity() and clock.power(n).is_identity(), "X^N or Z^N != I")

    bad_orders = [pt for pt in points if not weyl(n, *pt).power(n).is_identity()]
    record("weyl_orders", not bad_orders, f"W(k,l)^N != I at {bad_orders[:5]}")

    if n % 2 == 0:
        bad_signs = [
            (k, l) for k, l in points
            if not weyl(n, k + n, l).close_to(weyl(n, k, l).scaled((-1) ** l))
            or not weyl(n, k, l + n).close_to(weyl(n, k, l).scaled((-1) ** k))
        ]
        record("sign_relations", not bad_signs, f"sign relation fails at {bad_signs[:5]}")

    bad_phase = []
    bad_swap = []
    for u_pt, w_pt in product(points, repeat=2):
        if weyl_phase_exponent(n, u_pt, w_pt) != predicted_phase_exponent(n, u_pt, w_pt):
            bad_phase.append((u_pt, w_pt))
        ratio = weyl_compose_phase(n, u_pt, w_pt) / weyl_compose_phase(n, w_pt, u_pt)
        if abs(ratio - commutation_phase(n, u_pt, w_pt)) > settings.WEYL_TOLERANCE:
            bad_swap.append((u_pt, w_pt))
    record("composition_phase", not bad_phase, f"measured phase differs at {bad_phase[:5]}")
    record("commutation_phase", not bad_swap, f"swap ratio differs at {bad_swap[:5]}")

    identity_action = Mat2.identity(n)
    bad_weyl_action = [pt for pt in points if projective_action(weyl(n, *pt)) != identity_action]
    record("weyl_action_trivial", not bad_weyl_action, f"non-trivial action at {bad_weyl_action[:5]}")

    fourier_action = projective_action(fourier)
    record(
        "fourier_action",
        fourier_action == Mat2(n, 0, 1, -1, 0),
        f"Fourier acts as {fourier_action}",
    )
    gate_action = projective_action(gate)
    record("phase_gate_action", gate_action == Mat2(n, 1, 0, -1, 1), f"phase gate acts as {gate_action}")

    pairs = [(fourier, gate), (gate, fourier), (fourier, weyl(n, 1, 1)), (gate @ fourier, fourier)]
    multiplicative = all(
        projective_action(left @ right) == mat_mul(projective_action(left), projective_action(right))
        for left, right in pairs
    )
    record("action_multiplicative", multiplicative, "action of a product differs from product of actions")

    try:
        projective_action(random_unitary(n, seed))
        rejected = False
    except NotCliffordError:
        rejected = True
    record("random_rejected", rejected, "a random unitary was accepted as Clifford")

    logger.info("run_weyl_checks completed: %d of %d passed", sum(c.passed for c in results), len(results))
    return results
