"""
Tests for candidate lifts, direct condition evaluation, the closed-form
criteria, the witness search and the identity suite.
"""
from itertools import product

import pytest
from hypothesis import HealthCheck, given, settings as hyp_settings, strategies as st

from algebra.modmat import Mat2
from algebra.sdproduct import OddDimensionError, SdElement, sd_pow
from algebra.slgroup import RelationFamily, RelationInstance, coprime_factorizations
from splitting.conditions import RelationEvaluator, check_conditions_direct, passes_direct
from splitting.criteria import (
    CriterionDomainError,
    criterion_braid,
    criterion_combined_mod4_2,
    criterion_commute,
    criterion_orders,
    criterion_square,
    evaluate_criteria,
    passes_criteria,
)
from splitting.lemmas import (
    braid_matrix,
    commutator_matrix,
    epsilon,
    kernel_vector_test_holds,
    order_power_t,
    run_lemma_suite,
    square_matrix,
)
from splitting.params import GenParams, build_generators, candidate_count, iter_params
from splitting.search import (
    NO_SPLIT_NOTE,
    DimensionBoundError,
    SearchMode,
    search_witness,
    verdict,
)


def direct_families(report, family_filter):
    return all(ok for instance, ok in report.results.items() if family_filter(instance))


def assert_criteria_match_direct(p):
    """Each closed-form criterion against literal K-membership of its condition."""
    report = check_conditions_direct(p)
    criteria = report.criteria
    assert criteria["orders"] == report.condition_passed("ii"), p
    assert criteria["commute_k_even"] == direct_families(
        report, lambda i: i.family is RelationFamily.COMMUTE and i.k % 2 == 0
    ), p
    assert criteria["commute_k_odd"] == direct_families(
        report, lambda i: i.family is RelationFamily.COMMUTE and i.k % 2 == 1
    ), p
    assert criteria["square"] == report.condition_passed("iv"), p
    assert criteria["braid"] == report.condition_passed("v"), p
    if p.dim % 4 == 2:
        assert criteria["combined"] == report.passed, p
    assert passes_criteria(p) == report.passed, p


@st.composite
def params_for(draw, dims):
    n = draw(st.sampled_from(dims))
    bits = draw(st.tuples(*[st.integers(0, 1)] * 6))
    residues = draw(st.tuples(*[st.integers(0, n - 1)] * 4))
    return GenParams(n, *bits, *residues)


# ---------------------------------------------------------------- params

def test_trivial_lift():
    t_lift, r_lift = build_generators(GenParams(6))
    assert t_lift == SdElement.of(6, ((1, 1), (0, 1)))
    assert r_lift == SdElement.of(6, ((1, 0), (11, 1)))


@pytest.mark.parametrize(
    "n, t_rows, r_rows",
    [
        (6, ((7, 1), (6, 1)), ((1, 6), (11, 7))),
        (2, ((3, 1), (2, 1)), ((1, 2), (3, 3))),
    ],
)
def test_standard_witness_lifts(n, t_rows, r_rows):
    t_lift, r_lift = build_generators(GenParams.standard_witness(n))
    assert t_lift == SdElement.of(n, t_rows)
    assert r_lift == SdElement.of(n, r_rows)
    assert str(t_lift).startswith(f"({Mat2.from_rows(2 * n, t_rows)}, (0,0) over Z_{n})")


def test_params_validation():
    with pytest.raises(ValueError):
        GenParams(6, a=2)
    with pytest.raises(ValueError):
        GenParams(6, v=6)
    with pytest.raises(OddDimensionError):
        GenParams(5)


def test_enumeration_is_lexicographic():
    listed = list(iter_params(2))
    assert len(listed) == candidate_count(2) == 1024
    assert listed == sorted(listed)
    assert listed == [GenParams.from_index(2, i) for i in range(1024)]
    assert GenParams.from_index(4, 0) == GenParams(4)
    assert GenParams.from_index(4, candidate_count(4) - 1) == GenParams(4, 1, 1, 1, 1, 1, 1, 3, 3, 3, 3)


# ---------------------------------------------------------------- direct conditions

@pytest.mark.parametrize("n", [2, 6, 10, 14, 18])
def test_standard_witness_passes_every_condition(n):
    report = check_conditions_direct(GenParams.standard_witness(n))
    assert report.passed
    assert report.failing == []


def test_trivial_lift_fails_order_condition():
    report = check_conditions_direct(GenParams(6))
    assert not report.passed
    assert not report.condition_passed("ii")
    assert RelationInstance(RelationFamily.ORDER_T, 6, 0) in report.failing


def test_order_element_of_witness():
    p = GenParams.standard_witness(6)
    t_lift, _ = build_generators(p)
    expected = SdElement.of(6, ((7, 0), (0, 7)))
    assert order_power_t(p) == expected
    assert sd_pow(t_lift, 6) == expected


# ---------------------------------------------------------------- criteria

def test_criterion_examples():
    assert criterion_orders(GenParams(6, c=1, v=0, u1=1))
    assert not criterion_orders(GenParams(4, v=0, u1=1))
    assert criterion_orders(GenParams(4, v=1, u1=1))
    witness = GenParams.standard_witness(6)
    assert criterion_commute(witness)
    assert criterion_square(witness)
    assert criterion_braid(witness)
    assert criterion_combined_mod4_2(witness)
    assert not criterion_braid(GenParams(6, v=1))
    assert criterion_combined_mod4_2(GenParams(6, v=3, u1=3))
    assert not criterion_combined_mod4_2(GenParams(6, v=0, u1=3))


def test_commute_criterion_for_multiples_of_four():
    assert not criterion_commute(GenParams(4, v=0, u1=1))
    assert not criterion_commute(GenParams(4, v=1, u1=0))
    assert criterion_commute(GenParams(4, v=1, u1=1))


def test_commute_criteria_ignore_r_side_bits():
    p = GenParams(2, c1=1, v=1, u1=1)
    assert passes_direct(p)
    assert criterion_commute(p)
    assert criterion_combined_mod4_2(p)
    assert passes_criteria(p)
    for a1, c1 in ((0, 1), (1, 0), (1, 1)):
        q = GenParams(6, c=1, a1=a1, b1=1, c1=c1)
        assert criterion_commute(q) and criterion_combined_mod4_2(q)
        assert check_conditions_direct(q).passed


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10, 12])
def test_commutator_matrix_matches_direct_for_even_k(n):
    factorizations = [(k, l) for k, l in coprime_factorizations(n) if k % 2 == 0]
    assert factorizations
    for bits in product((0, 1), repeat=6):
        p = GenParams(n, *bits)
        evaluator = RelationEvaluator(p)
        for k, l in factorizations:
            direct = evaluator.relation_element(RelationInstance(RelationFamily.COMMUTE, k, l)).matrix
            assert commutator_matrix(p, k, l) == direct, (p, k, l)
            assert direct.det() == 1


def test_combined_criterion_needs_two_mod_four():
    with pytest.raises(CriterionDomainError):
        criterion_combined_mod4_2(GenParams(8))
    assert "combined" not in evaluate_criteria(GenParams(8))


@pytest.mark.parametrize("n", [2, 4])
def test_criteria_match_direct_on_every_tuple(n):
    for p in iter_params(n):
        assert_criteria_match_direct(p)


@pytest.mark.slow
def test_criteria_match_direct_on_every_tuple_dim_six():
    for p in iter_params(6):
        assert_criteria_match_direct(p)


@given(params_for([6, 8, 10, 12]))
@hyp_settings(max_examples=300, deadline=None)
def test_criteria_match_direct_on_random_tuples(p):
    assert_criteria_match_direct(p)


@pytest.mark.slow
@given(params_for([8, 10, 12]))
@hyp_settings(max_examples=10_000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_criteria_match_direct_on_many_random_tuples(p):
    assert_criteria_match_direct(p)


# ---------------------------------------------------------------- search and verdict

def test_exhaustive_search_dim_four_finds_nothing():
    result = search_witness(4, exhaustive=True)
    assert not result.splits
    assert result.witness is None
    assert result.candidates_checked == 16384
    assert result.mode is SearchMode.EXHAUSTIVE


@pytest.mark.parametrize("exhaustive", [False, True])
def test_witness_count_dim_two(exhaustive):
    result = search_witness(2, exhaustive=exhaustive, count=True)
    assert result.witness_count == 256
    assert result.witness == GenParams(2, v=1, u1=1)
    assert result.candidates_checked == 1024


def test_witness_count_dim_six():
    result = search_witness(6, count=True)
    assert result.witness_count == 64 * 36
    assert result.witness == GenParams(6, v=3, u1=3)


@pytest.mark.parametrize("n", [2, 4])
def test_pruned_and_exhaustive_counts_agree(n):
    pruned = search_witness(n, count=True)
    literal = search_witness(n, exhaustive=True, count=True)
    assert pruned.witness_count == literal.witness_count
    assert pruned.witness == literal.witness


@pytest.mark.slow
def test_pruned_and_exhaustive_counts_agree_dim_six():
    literal = search_witness(6, exhaustive=True, count=True, jobs=4)
    assert literal.witness_count == 64 * 36
    assert search_witness(6, count=True).witness_count == literal.witness_count


def test_standard_witness_is_among_passing_tuples():
    assert search_witness(6).splits
    assert passes_direct(GenParams.standard_witness(6))


@pytest.mark.parametrize("n", range(2, 13, 2))
def test_search_agrees_with_closed_form(n):
    result = search_witness(n)
    assert result.splits == (n % 4 == 2)
    assert result.splits == verdict(n).splits
    if result.splits:
        assert result.witness == GenParams(n, v=n // 2, u1=n // 2)
        assert passes_direct(result.witness)


@pytest.mark.slow
@pytest.mark.parametrize("n", range(6, 13, 2))
def test_exhaustive_search_agrees_with_closed_form(n):
    result = search_witness(n, exhaustive=True, jobs=4)
    assert result.splits == (n % 4 == 2)


def test_witness_independent_of_worker_count():
    single = search_witness(6, jobs=1)
    parallel = search_witness(6, jobs=2)
    assert single.witness == parallel.witness
    counted_single = search_witness(4, count=True, jobs=1)
    counted_parallel = search_witness(4, count=True, jobs=3)
    assert counted_single.witness_count == counted_parallel.witness_count == 0
    assert counted_single.candidates_checked == counted_parallel.candidates_checked


def test_verdict_examples():
    result = verdict(8)
    assert not result.splits
    assert result.witness is None
    assert NO_SPLIT_NOTE in result.notes

    result = verdict(2)
    assert result.splits
    assert result.mode is SearchMode.CLOSED_FORM
    t_lift, r_lift = build_generators(result.witness)
    assert t_lift == SdElement.of(2, ((3, 1), (2, 1)))
    assert r_lift == SdElement.of(2, ((1, 2), (3, 3)))


@pytest.mark.parametrize("n", range(2, 65, 2))
def test_verdict_pattern(n):
    result = verdict(n)
    assert result.splits == (n % 4 == 2)
    if result.splits:
        assert passes_direct(result.witness)


def test_bounds_and_odd_dimensions():
    with pytest.raises(OddDimensionError, match="semidirect"):
        verdict(7)
    with pytest.raises(DimensionBoundError):
        verdict(66)
    with pytest.raises(DimensionBoundError):
        search_witness(14)
    with pytest.raises(OddDimensionError):
        search_witness(5)


# ---------------------------------------------------------------- identities

def test_epsilon():
    assert epsilon(5, 5, 6) == 0
    assert epsilon(3, 3, 8) == 1
    assert epsilon(1, 1, 2) == 0


def test_identity_functions_reject_bad_exponents():
    p = GenParams(6)
    with pytest.raises(ValueError):
        braid_matrix(p, 2, 2)
    with pytest.raises(ValueError):
        commutator_matrix(p, 2, 2)


def test_square_matrix_of_witness_is_minus_identity():
    assert square_matrix(GenParams.standard_witness(6)) == Mat2(12, -1, 0, 0, -1)
    assert braid_matrix(GenParams.standard_witness(2), 1, 1).is_identity()


def test_kernel_vector_test():
    assert all(kernel_vector_test_holds(e, 6) for e in range(13))


@pytest.mark.parametrize("n", [2, 4, 6])
def test_identity_suite(n):
    checks = run_lemma_suite(n)
    assert [c.name for c in checks if not c.passed] == []
    assert all(c.cases > 0 for c in checks)


def test_identity_suite_dim_eight():
    checks = run_lemma_suite(8, max_exp=16, samples=1)
    assert all(c.passed for c in checks), [c.failures for c in checks if not c.passed]


def test_identity_suite_rejects_unknown_names():
    with pytest.raises(ValueError):
        run_lemma_suite(4, names=["no_such_identity"])


def test_identity_suite_runs_only_selected_checks(monkeypatch):
    import splitting.lemmas as lemmas

    def unexpected(*args, **kwargs):
        raise AssertionError("unselected identity family was evaluated")

    monkeypatch.setattr(lemmas, "_check_powers", unexpected)
    monkeypatch.setattr(lemmas, "_check_relations", unexpected)
    monkeypatch.setattr(lemmas, "_check_perturbation", unexpected)

    checks = run_lemma_suite(4, names=["binomial_parity"])
    assert [c.name for c in checks] == ["binomial_parity"]
    assert checks[0].cases == 4 * 4 + 1
    assert checks[0].passed


def test_identity_suite_subset_within_family():
    checks = run_lemma_suite(4, max_exp=4, samples=1, names=["commutator_matrix"])
    assert [c.name for c in checks] == ["commutator_matrix"]
    assert checks[0].passed
    assert checks[0].cases > 0
