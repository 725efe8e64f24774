"""
Closed-form matrix and vector identities for powers, commutators, squares and
braids of candidate lifts, and a suite that checks each of them against
direct group arithmetic.

Notation: h = (u, v), h' = (u', v'), v(P) is the vector part of P, and
eps = ((k l - 1) / N) mod 2 for a unit pair k l = 1 (mod N).
"""
import logging
import random
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, List, Optional, Sequence

from algebra.modmat import Mat2, Vec2, mat_add, mat_mul, mat_pow, mat_scale, mat_vec, vec_add
from algebra.sdproduct import (
    SdElement,
    Side,
    check_even_dim,
    closed_form_power_matrix,
    omega,
    parity_power_matrix,
    sd_mul,
    sd_pow,
    sd_pow_iterative,
    vector_part,
)
from algebra.slgroup import RelationFamily, RelationInstance, Symbol, coprime_factorizations, units
from splitting.conditions import RelationEvaluator
from splitting.params import GenParams, build_generators

logger = logging.getLogger(__name__)

MAX_FAILURE_DETAILS = 20


@dataclass
class LemmaCheck:
    """Outcome of one identity over all cases it was evaluated on."""
    name: str
    dim: int
    cases: int = 0
    failures: List[str] = field(default_factory=list)
    failure_count: int = 0

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def record(self, ok: bool, detail: Callable[[], str]) -> None:
        self.cases += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_FAILURE_DETAILS:
                self.failures.append(detail())


def _h(p: GenParams) -> Vec2:
    return Vec2(p.dim, p.u, p.v)


def _h1(p: GenParams) -> Vec2:
    return Vec2(p.dim, p.u1, p.v1)


def _combine(p: GenParams, on_h, on_h1) -> Vec2:
    n = p.dim
    return vec_add(mat_vec(Mat2.from_rows(n, on_h), _h(p)), mat_vec(Mat2.from_rows(n, on_h1), _h1(p)))


def epsilon(k: int, l: int, n: int) -> int:
    return ((k * l - 1) // n) % 2


def _check_unit_pair(k: int, l: int, n: int) -> None:
    if not (1 <= k < n and 1 <= l < n and (k * l) % n == 1):
        raise ValueError(f"({k}, {l}) is not a unit pair modulo {n}")


def _check_factorization(k: int, l: int, n: int) -> None:
    if (k, l) not in coprime_factorizations(n):
        raise ValueError(f"({k}, {l}) is not a coprime factorization of {n}")


# Powers and products

def perturbed_power(base: Mat2, perturbation: Mat2, n: int, k: int) -> Mat2:
    """(U + N G)^k = U^k + N sum_{i=1..k} U^(i-1) G U^(k-i) over Z_2N."""
    if base.modulus != 2 * n or perturbation.modulus != 2 * n:
        raise ValueError(f"perturbation expansion needs matrices over Z_{2 * n}")
    total = Mat2.zero(2 * n)
    for i in range(1, k + 1):
        term = mat_mul(mat_mul(mat_pow(base, i - 1), perturbation), mat_pow(base, k - i))
        total = mat_add(total, term)
    return mat_add(mat_pow(base, k), mat_scale(total, n))


def power_vector_t(p: GenParams, k: int) -> Vec2:
    return mat_vec(Mat2(p.dim, k, comb(k, 2), 0, k), _h(p))


def power_vector_r(p: GenParams, l: int) -> Vec2:
    return mat_vec(Mat2(p.dim, l, 0, -comb(l, 2), l), _h1(p))


def product_vector_tr(p: GenParams, k: int, l: int) -> Vec2:
    """v(T^k R^l)."""
    return _combine(p, ((k, comb(k, 2)), (0, k)), ((l - k * comb(l, 2), k * l), (-comb(l, 2), l)))


def product_vector_rt(p: GenParams, k: int, l: int) -> Vec2:
    """v(R^l T^k)."""
    return _combine(p, ((k, comb(k, 2)), (-k * l, k - l * comb(k, 2))), ((l, 0), (-comb(l, 2), l)))


def binomial_parity_holds(n: int) -> bool:
    """C(n,2) and C(n,3) mod 2 from the parity of n alone."""
    if n % 2 == 0:
        expected2, expected3 = n // 2, 0
    else:
        expected2, expected3 = (n - 1) // 2, (n - 1) // 2
    return comb(n, 2) % 2 == expected2 % 2 and comb(n, 3) % 2 == expected3 % 2


# Orders

def order_power_t(p: GenParams) -> SdElement:
    """T^N = (I + N[[hc, 1+hc], [0, hc]], ((N/2) v, 0)) with hc = (N/2) c."""
    n = p.dim
    hc = (n // 2) * p.c
    return SdElement(n, Mat2(2 * n, 1 + n * hc, n * (1 + hc), 0, 1 + n * hc), Vec2(n, (n // 2) * p.v, 0))


def order_power_r(p: GenParams) -> SdElement:
    """R^N = (I + N[[hb, 0], [1+hb, hb]], (0, (N/2) u')) with hb = (N/2) b'."""
    n = p.dim
    hb = (n // 2) * p.b1
    return SdElement(n, Mat2(2 * n, 1 + n * hb, 0, n * (1 + hb), 1 + n * hb), Vec2(n, 0, (n // 2) * p.u1))


# Commutators, N = k l with gcd(k, l) = 1

def commutator_vector(p: GenParams, k: int, l: int) -> Vec2:
    """v(T^k R^l (R^l T^k)^-1)."""
    _check_factorization(k, l, p.dim)
    half = p.dim // 2
    return Vec2(p.dim, half * (l - 1) * p.u1, half * (k - 1) * p.v)


def commutator_matrix(p: GenParams, k: int, l: int) -> Mat2:
    """
    A^k B^l (B^l A^k)^-1; the shape depends on which of k, l is even:

        k even:  I + N x [[1, 0], [1, 1]],  x = 1 + (k/2) c
        k odd:   I + N z [[1, 1], [0, 1]],  z = 1 + (l/2) b'
    """
    _check_factorization(k, l, p.dim)
    n = p.dim
    if k % 2 == 0:
        x = 1 + (k // 2) * p.c
        return Mat2(2 * n, 1 + n * x, 0, n * x, 1 + n * x)
    z = 1 + (l // 2) * p.b1
    return Mat2(2 * n, 1 + n * z, n * z, 0, 1 + n * z)


# Squares, k l = 1 (mod N)

def square_triple_vector(p: GenParams, k: int, l: int) -> Vec2:
    """v(T^k R^l T^k)."""
    _check_unit_pair(k, l, p.dim)
    return _combine(
        p,
        ((k, k * (3 * k - 1) // 2), (-1, (3 * k + 1) // 2)),
        (((l + 1) // 2, 1), (-comb(l, 2), l)),
    )


def square_vector(p: GenParams, k: int, l: int) -> Vec2:
    """v((T^k R^l T^k)^2)."""
    _check_unit_pair(k, l, p.dim)
    return _combine(p, ((0, 3 * k * k), (-2, 1)), ((1, 2), (-l * l, 0)))


def base_square_vector(p: GenParams) -> Vec2:
    """v((T R T)^2)."""
    return _combine(p, ((0, 3), (-2, 1)), ((1, 2), (-1, 0)))


def square_quotient_vector(p: GenParams, k: int, l: int) -> Vec2:
    """v((T^k R^l T^k)^2 (T R T)^-2)."""
    _check_unit_pair(k, l, p.dim)
    return Vec2(p.dim, 3 * (k * k - 1) * p.v, -(l * l - 1) * p.u1)


def product_matrix_ab(p: GenParams, k: int, l: int) -> Mat2:
    """A^k B^l."""
    _check_unit_pair(k, l, p.dim)
    n = p.dim
    e = epsilon(k, l, n)
    return Mat2(
        2 * n,
        n * (p.b + (k + 1) // 2 * p.c + (l - 1) // 2 * p.b1 + p.c1 + e),
        k + n * (p.a + p.b + p.a1 + (l - 1) // 2 * p.b1),
        -l + n * (p.a + (k + 1) // 2 * p.c + p.a1 + p.c1),
        1 + n * (p.a + (k - 1) // 2 * p.c + p.a1 + (l + 1) // 2 * p.b1),
    )


def triple_matrix_aba(p: GenParams, k: int, l: int) -> Mat2:
    """A^k B^l A^k."""
    _check_unit_pair(k, l, p.dim)
    n = p.dim
    e = epsilon(k, l, n)
    return Mat2(
        2 * n,
        n * (p.b + (k - 1) // 2 * p.c + (l - 1) // 2 * p.b1 + p.c1 + e),
        k + n * (p.c + p.a1 + p.c1 + e),
        -l + n * (p.c + p.a1 + p.c1),
        n * (p.b + (k + 1) // 2 * p.c + (l + 1) // 2 * p.b1 + p.c1 + e),
    )


def square_matrix(p: GenParams) -> Mat2:
    """(A^k B^l A^k)^2, the same for every unit pair: -I + N[[0, c+b'], [c+b', 0]]."""
    n = p.dim
    off = n * (p.c + p.b1)
    return Mat2(2 * n, -1, off, off, -1)


# Braids, k l = 1 (mod N)

def braid_triple_vector(p: GenParams, k: int, l: int) -> Vec2:
    """v(R^l T^k R^l)."""
    _check_unit_pair(k, l, p.dim)
    return _combine(
        p,
        ((k, comb(k, 2)), (-1, (k + 1) // 2)),
        (((3 * l + 1) // 2, 1), (-(l * (3 * l - 1) // 2), l)),
    )


def braid_quotient_vector(p: GenParams, k: int, l: int) -> Vec2:
    """v(T^k R^l T^k (R^l T^k R^l)^-1)."""
    _check_unit_pair(k, l, p.dim)
    return Vec2(p.dim, k * k * p.v - l * p.u1, k * p.v + l * l * p.u1)


def braid_matrix(p: GenParams, k: int, l: int) -> Mat2:
    """A^k B^l A^k (B^l A^k B^l)^-1 = I + N[[r, c+b'], [c+b', r]]."""
    _check_unit_pair(k, l, p.dim)
    n = p.dim
    r = p.a + p.b + p.c + p.a1 + p.b1 + p.c1 + epsilon(k, l, n)
    off = n * (p.c + p.b1)
    return Mat2(2 * n, 1 + n * r, off, off, 1 + n * r)


def kernel_vector_test_holds(e: int, n: int) -> bool:
    """
    A vector entry e pairs with a kernel element having a zero off-diagonal
    block exactly when e = 0 (mod N).
    """
    half = n // 2
    paired = any((e - half * s) % n == 0 and (n * s) % (2 * n) == 0 for s in (0, 1))
    return paired == (e % n == 0)


# Suite

def _sampled_params(n: int, samples: int, rng: random.Random) -> Iterable[GenParams]:
    for code in range(64):
        bits = [(code >> shift) & 1 for shift in range(5, -1, -1)]
        for _ in range(samples):
            yield GenParams(n, *bits, *(rng.randrange(n) for _ in range(4)))


def _unit_pairs(n: int) -> List[tuple]:
    return [(k, pow(k, -1, n)) for k in units(n)]


def _check_powers(p: GenParams, max_exp: int, checks: dict) -> None:
    n = p.dim
    t_lift, r_lift = build_generators(p)
    t_powers = [SdElement.identity(n)]
    r_powers = [SdElement.identity(n)]
    for _ in range(max_exp):
        t_powers.append(sd_mul(t_powers[-1], t_lift))
        r_powers.append(sd_mul(r_powers[-1], r_lift))

    for k in range(1, max_exp + 1):
        if "power_formula" in checks:
            checks["power_formula"].record(
                sd_pow(t_lift, k) == t_powers[k] and sd_pow(r_lift, k) == r_powers[k],
                lambda: f"{p}: sd_pow differs from repeated product at k={k}",
            )
        if "power_vectors" in checks:
            checks["power_vectors"].record(
                vector_part(t_powers[k]) == power_vector_t(p, k) and vector_part(r_powers[k]) == power_vector_r(p, k),
                lambda: f"{p}: v(T^k) or v(R^k) closed form fails at k={k}",
            )
        for side, powers in ((Side.T_SIDE, t_powers), (Side.R_SIDE, r_powers)):
            if "generator_powers" in checks:
                checks["generator_powers"].record(
                    closed_form_power_matrix(side, p.bits, n, k) == omega(powers[k]),
                    lambda: f"{p}: binomial power form of {side.value} fails at k={k}",
                )
            if "generator_powers_by_parity" in checks:
                checks["generator_powers_by_parity"].record(
                    parity_power_matrix(side, p.bits, n, k) == omega(powers[k]),
                    lambda: f"{p}: parity power form of {side.value} fails at k={k}",
                )
        for l in range(1, max_exp + 1):
            if "product_vectors" in checks:
                checks["product_vectors"].record(
                    vector_part(sd_mul(t_powers[k], r_powers[l])) == product_vector_tr(p, k, l)
                    and vector_part(sd_mul(r_powers[l], t_powers[k])) == product_vector_rt(p, k, l),
                    lambda: f"{p}: product vector forms fail at k={k}, l={l}",
                )


def _check_relations(p: GenParams, checks: dict) -> None:
    n = p.dim
    evaluator = RelationEvaluator(p)
    t, r = Symbol.T, Symbol.R

    if "order_elements" in checks:
        checks["order_elements"].record(
            sd_pow_iterative(evaluator.t_lift, n) == order_power_t(p)
            and sd_pow_iterative(evaluator.r_lift, n) == order_power_r(p),
            lambda: f"{p}: T^N or R^N closed form fails",
        )

    for k, l in coprime_factorizations(n):
        quotient = evaluator.relation_element(RelationInstance(RelationFamily.COMMUTE, k, l))
        if "commutator_vector" in checks:
            checks["commutator_vector"].record(
                vector_part(quotient) == commutator_vector(p, k, l),
                lambda: f"{p}: commutator vector fails at k={k}, l={l}",
            )
        if "commutator_matrix" in checks:
            checks["commutator_matrix"].record(
                omega(quotient) == commutator_matrix(p, k, l),
                lambda: f"{p}: commutator matrix fails at k={k}, l={l}",
            )

    base_square = evaluator.word(((t, 1), (r, 1), (t, 1)) * 2)
    for k, l in _unit_pairs(n):
        triple = evaluator.word(((t, k), (r, l), (t, k)))
        squared = evaluator.word(((t, k), (r, l), (t, k)) * 2)
        square_quotient = evaluator.relation_element(RelationInstance(RelationFamily.SQUARE, k, l))
        if "square_vectors" in checks:
            checks["square_vectors"].record(
                vector_part(triple) == square_triple_vector(p, k, l)
                and vector_part(squared) == square_vector(p, k, l)
                and vector_part(base_square) == base_square_vector(p)
                and vector_part(square_quotient) == square_quotient_vector(p, k, l),
                lambda: f"{p}: square vector forms fail at k={k}, l={l}",
            )
        if "square_matrices" in checks:
            checks["square_matrices"].record(
                omega(evaluator.word(((t, k), (r, l)))) == product_matrix_ab(p, k, l)
                and omega(triple) == triple_matrix_aba(p, k, l)
                and omega(squared) == square_matrix(p)
                and omega(base_square) == square_matrix(p),
                lambda: f"{p}: square matrix forms fail at k={k}, l={l}",
            )

        braid_quotient = evaluator.relation_element(RelationInstance(RelationFamily.BRAID, k, l))
        if "braid_vectors" in checks:
            checks["braid_vectors"].record(
                vector_part(evaluator.word(((r, l), (t, k), (r, l)))) == braid_triple_vector(p, k, l)
                and vector_part(braid_quotient) == braid_quotient_vector(p, k, l),
                lambda: f"{p}: braid vector forms fail at k={k}, l={l}",
            )
        if "braid_matrix" in checks:
            checks["braid_matrix"].record(
                omega(braid_quotient) == braid_matrix(p, k, l),
                lambda: f"{p}: braid matrix fails at k={k}, l={l}",
            )


def _check_perturbation(n: int, max_exp: int, rng: random.Random, check: LemmaCheck) -> None:
    bases = (Mat2(2 * n, 1, 1, 0, 1), Mat2(2 * n, 1, 0, -1, 1))
    for base in bases:
        for _ in range(8):
            perturbation = Mat2(2 * n, *(rng.randrange(2 * n) for _ in range(4)))
            shifted = mat_add(base, mat_scale(perturbation, n))
            for k in range(1, max_exp + 1):
                check.record(
                    perturbed_power(base, perturbation, n, k) == mat_pow(shifted, k),
                    lambda: f"(U + N G)^{k} expansion fails for U={base}, G={perturbation}",
                )


CHECK_NAMES = (
    "power_formula",
    "perturbation_expansion",
    "power_vectors",
    "product_vectors",
    "generator_powers",
    "generator_powers_by_parity",
    "binomial_parity",
    "order_elements",
    "commutator_vector",
    "commutator_matrix",
    "square_vectors",
    "square_matrices",
    "braid_vectors",
    "braid_matrix",
    "kernel_vector_test",
)

POWER_CHECKS = frozenset({
    "power_formula", "power_vectors", "product_vectors", "generator_powers", "generator_powers_by_parity",
})
RELATION_CHECKS = frozenset({
    "order_elements", "commutator_vector", "commutator_matrix",
    "square_vectors", "square_matrices", "braid_vectors", "braid_matrix",
})


def run_lemma_suite(
    dim: int,
    max_exp: Optional[int] = None,
    samples: int = 3,
    seed: int = 0,
    names: Optional[Sequence[str]] = None,
) -> List[LemmaCheck]:
    """
    Evaluate every identity against direct arithmetic.

    All 64 bit patterns are covered; for each, `samples` random vectors
    (seeded) are drawn. Exponent-indexed power identities run over
    1..max_exp (default 2N); relation identities over every admissible (k, l).
    """
    check_even_dim(dim)
    exponent_bound = 2 * dim if max_exp is None else max_exp
    if exponent_bound < 1:
        raise ValueError(f"max_exp must be >= 1, got {exponent_bound}")
    selected = tuple(names) if names is not None else CHECK_NAMES
    unknown = set(selected) - set(CHECK_NAMES)
    if unknown:
        raise ValueError(f"unknown lemma checks: {sorted(unknown)}")
    logger.info("run_lemma_suite called with dim=%d max_exp=%d", dim, exponent_bound)

    rng = random.Random(seed)
    checks = {name: LemmaCheck(name, dim) for name in selected}

    if "kernel_vector_test" in checks:
        for e in range(2 * dim + 1):
            checks["kernel_vector_test"].record(
                kernel_vector_test_holds(e, dim), lambda: f"kernel vector test fails at e={e}"
            )
    if "binomial_parity" in checks:
        for m in range(4 * dim + 1):
            checks["binomial_parity"].record(binomial_parity_holds(m), lambda: f"binomial parity fails at n={m}")
    if "perturbation_expansion" in checks:
        _check_perturbation(dim, exponent_bound, rng, checks["perturbation_expansion"])

    wants_powers = not checks.keys().isdisjoint(POWER_CHECKS)
    wants_relations = not checks.keys().isdisjoint(RELATION_CHECKS)
    if wants_powers or wants_relations:
        for p in _sampled_params(dim, samples, rng):
            if wants_powers:
                _check_powers(p, exponent_bound, checks)
            if wants_relations:
                _check_relations(p, checks)

    results = [checks[name] for name in selected]
    failed = [check.name for check in results if not check.passed]
    if failed:
        logger.warning("run_lemma_suite: failing identities at dim=%d: %s", dim, ", ".join(failed))
    logger.info("run_lemma_suite completed with %d checks", len(results))
    return results
