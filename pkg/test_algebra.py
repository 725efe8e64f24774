"""
Tests for residue matrices, the SL(2, Z_N) presentation and the
semidirect product with its kernel.
"""
import operator
from itertools import product

import pytest
from hypothesis import given, strategies as st

from algebra.modmat import (
    MAX_MODULUS,
    Mat2,
    ModulusBoundError,
    ModulusMismatchError,
    NotUnimodularError,
    Vec2,
    mat_mul,
    mat_pow,
    power_and_geometric_sum,
    reduce_mod,
    sl2_inverse,
)
from algebra.sdproduct import (
    DimensionMismatchError,
    OddDimensionError,
    SdElement,
    Side,
    closed_form_power_matrix,
    coset_equal,
    generator_lift,
    in_kernel,
    kernel_elements,
    parity_power_matrix,
    reduction_kernel,
    sd_inverse,
    sd_mul,
    sd_pow,
    sd_pow_iterative,
    sigma,
)
from algebra.slgroup import (
    RelationFamily,
    Symbol,
    coprime_factorizations,
    enumerate_relations,
    evaluate_word,
    generators,
    verify_presentation,
)

ALL_BITS = list(product((0, 1), repeat=6))


def sl2_words(modulus):
    """Random products of t and r over Z_modulus, so always determinant 1."""
    t, r = Mat2(modulus, 1, 1, 0, 1), Mat2(modulus, 1, 0, -1, 1)

    def build(letters):
        result = Mat2.identity(modulus)
        for letter in letters:
            result = mat_mul(result, t if letter else r)
        return result

    return st.lists(st.booleans(), max_size=16).map(build)


def sd_elements(dim):
    def build(args):
        bits, side, u, v = args
        return SdElement(dim, generator_lift(side, bits, dim), Vec2(dim, u, v))

    return st.tuples(
        st.sampled_from(ALL_BITS),
        st.sampled_from(list(Side)),
        st.integers(0, dim - 1),
        st.integers(0, dim - 1),
    ).map(build)


# ---------------------------------------------------------------- modmat

def test_entries_are_reduced():
    m = Mat2(12, 13, -1, 24, 7)
    assert m.rows() == ((1, 11), (0, 7))
    assert str(m) == "[[1,11],[0,7]] over Z_12"


def test_modulus_bounds():
    with pytest.raises(ModulusBoundError):
        Mat2(1, 1, 0, 0, 1)
    with pytest.raises(ModulusBoundError):
        Vec2(MAX_MODULUS + 1, 0, 0)
    Mat2(MAX_MODULUS, 1, 0, 0, 1)


def test_mixed_moduli_rejected():
    with pytest.raises(ModulusMismatchError):
        mat_mul(Mat2.identity(6), Mat2.identity(12))
    with pytest.raises(ModulusMismatchError):
        Vec2(6, 1, 2) + Vec2(12, 1, 2)


def test_inverse_needs_determinant_one():
    with pytest.raises(NotUnimodularError):
        sl2_inverse(Mat2(12, 2, 0, 0, 1))


def test_reduce_mod():
    assert reduce_mod(Mat2(12, 7, 1, 6, 1), 6) == Mat2(6, 1, 1, 0, 1)
    with pytest.raises(ModulusMismatchError):
        reduce_mod(Mat2(12, 7, 1, 6, 1), 5)


@given(sl2_words(12))
def test_inverse_is_two_sided(a):
    assert mat_mul(a, sl2_inverse(a)).is_identity()
    assert mat_mul(sl2_inverse(a), a).is_identity()


@given(sl2_words(10), sl2_words(10), sl2_words(10))
def test_multiplication_is_associative(a, b, c):
    assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))


@given(sl2_words(8), st.integers(0, 40))
def test_power_and_geometric_sum_match_iteration(a, k):
    power = Mat2.identity(8)
    total = Mat2.zero(8)
    for _ in range(k):
        total = total + power
        power = power * a
    assert power_and_geometric_sum(a, k) == (power, total)
    assert mat_pow(a, k) == power


# ---------------------------------------------------------------- slgroup

def test_generators():
    t, r = generators(6)
    assert t.rows() == ((1, 1), (0, 1))
    assert r.rows() == ((1, 0), (5, 1))
    with pytest.raises(ValueError):
        generators(1)


def test_coprime_factorizations():
    assert coprime_factorizations(6) == [(1, 6), (2, 3), (3, 2), (6, 1)]
    assert coprime_factorizations(12) == [(1, 12), (3, 4), (4, 3), (12, 1)]
    assert coprime_factorizations(8) == [(1, 8), (8, 1)]


def test_relation_counts_for_six():
    families = [instance.family for instance in enumerate_relations(6)]
    assert families.count(RelationFamily.ORDER_T) == 1
    assert families.count(RelationFamily.ORDER_R) == 1
    assert families.count(RelationFamily.COMMUTE) == 4
    assert families.count(RelationFamily.SQUARE) == 2
    assert families.count(RelationFamily.BRAID) == 2


def test_unit_pairs_are_inverse():
    for instance in enumerate_relations(12):
        if instance.family in (RelationFamily.SQUARE, RelationFamily.BRAID):
            assert (instance.k * instance.l) % 12 == 1


def test_evaluate_word_in_any_group():
    word = ((Symbol.T, 2), (Symbol.R, 3), (Symbol.T, 1))
    assert evaluate_word(word, (1, 10), operator.add, 0) == 33
    with pytest.raises(ValueError):
        evaluate_word(((Symbol.T, -1),), (1, 10), operator.add, 0)


@pytest.mark.parametrize("n", range(2, 65))
def test_presentation_holds(n):
    assert verify_presentation(n)


# ---------------------------------------------------------------- sdproduct

@pytest.mark.parametrize("n", range(2, 25, 2))
def test_kernel_is_a_normal_subgroup_of_order_eight(n):
    kernel = kernel_elements(n)
    assert len(set(kernel)) == 8
    assert SdElement.identity(n) in kernel
    for x, y in product(kernel, repeat=2):
        assert in_kernel(sd_mul(x, y))
    for bits in ALL_BITS[::7]:
        for side in Side:
            g = SdElement(n, generator_lift(side, bits, n), Vec2(n, 1, n - 1))
            for x in kernel:
                assert in_kernel(sd_mul(sd_mul(g, x), sd_inverse(g)))
                assert sigma(sd_mul(g, x)) == sigma(g)
                assert coset_equal(sd_mul(g, x), g)


def test_kernel_member_example():
    assert in_kernel(SdElement.of(4, ((5, 0), (0, 5))))
    assert in_kernel(SdElement.of(4, ((1, 4), (0, 1)), (2, 0)))
    assert not in_kernel(SdElement.of(4, ((1, 4), (0, 1))))


def test_odd_and_mixed_dimensions_rejected():
    with pytest.raises(OddDimensionError):
        kernel_elements(5)
    with pytest.raises(OddDimensionError):
        SdElement.identity(3)
    with pytest.raises(DimensionMismatchError):
        sd_mul(SdElement.identity(4), SdElement.identity(6))


@given(sd_elements(6), sd_elements(6), sd_elements(6))
def test_semidirect_product_group_axioms(p, q, s):
    identity = SdElement.identity(6)
    assert sd_mul(sd_mul(p, q), s) == sd_mul(p, sd_mul(q, s))
    assert sd_mul(p, identity) == p == sd_mul(identity, p)
    assert sd_mul(p, sd_inverse(p)) == identity


@given(sd_elements(8), st.integers(0, 50))
def test_power_closed_form_matches_iteration(p, k):
    assert sd_pow(p, k) == sd_pow_iterative(p, k)


def test_witness_lifts():
    assert generator_lift(Side.T_SIDE, (0, 0, 1, 0, 1, 0), 6) == Mat2(12, 7, 1, 6, 1)
    assert generator_lift(Side.R_SIDE, (0, 0, 1, 0, 1, 0), 6) == Mat2(12, 1, 6, 11, 7)


@pytest.mark.parametrize("n", range(2, 17, 2))
def test_every_lift_has_determinant_one(n):
    t, r = generators(n)
    for bits in ALL_BITS:
        a = generator_lift(Side.T_SIDE, bits, n)
        b = generator_lift(Side.R_SIDE, bits, n)
        assert a.det() == 1 and b.det() == 1
        assert reduce_mod(a, n) == t and reduce_mod(b, n) == r


@pytest.mark.parametrize("n", [2, 4, 6])
def test_reduction_kernel_is_complete(n):
    kernel = set(reduction_kernel(n))
    assert len(kernel) == 8
    found = set()
    for entries in product(range(2 * n), repeat=4):
        m = Mat2(2 * n, *entries)
        if m.det() == 1 and reduce_mod(m, n).is_identity():
            found.add(m)
    assert found == kernel


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_lifts_are_generators_times_reduction_kernel(n):
    t_lift, r_lift = Mat2(2 * n, 1, 1, 0, 1), Mat2(2 * n, 1, 0, -1, 1)
    kernel = reduction_kernel(n)
    for a, b, c, a1, b1, c1 in ALL_BITS:
        bits = (a, b, c, a1, b1, c1)
        assert generator_lift(Side.T_SIDE, bits, n) == mat_mul(t_lift, kernel[4 * a + 2 * b + c])
        assert generator_lift(Side.R_SIDE, bits, n) == mat_mul(r_lift, kernel[4 * a1 + 2 * b1 + c1])


@pytest.mark.parametrize("n", [2, 4, 6])
def test_power_matrix_closed_forms(n):
    for bits in ALL_BITS:
        for side in Side:
            base = generator_lift(side, bits, n)
            for k in range(1, 2 * n + 2):
                expected = mat_pow(base, k)
                assert closed_form_power_matrix(side, bits, n, k) == expected
                assert parity_power_matrix(side, bits, n, k) == expected
