import itertools
import random

import pytest

import oracles
from conftest import random_hypergraph
from sparsehg import (
    BadRange,
    BudgetExceeded,
    ConstraintProfile,
    FreenessConstraint,
    GcdCondition,
    berge_girth,
    berge_profile,
    canonicalize,
    check_free,
    check_profile,
    deficit_profile,
    extract_berge_cycle,
    ladder_profile,
    span_bounded_systems,
    union_span,
    validate_berge_cycle,
)


# --- single-constraint checks -------------------------------------------


def test_three_edges_in_four_vertices_violate():
    h = canonicalize([[1, 2, 3], [1, 2, 4], [1, 3, 4]], 4)
    verdict = check_free(h, FreenessConstraint(3, 6))
    assert not verdict.holds
    assert verdict.spanned == 4
    assert union_span(h, verdict.witness) == verdict.spanned


def test_disjoint_edges_hold():
    h = canonicalize([[1, 2, 3], [4, 5, 6], [7, 8, 9]], 9)
    assert check_free(h, FreenessConstraint(3, 6)).holds


def test_witness_is_lexicographically_first():
    h = canonicalize([[1, 2, 3], [1, 2, 4], [1, 2, 5], [6, 7, 8]], 8)
    verdict = check_free(h, FreenessConstraint(2, 4))
    assert not verdict.holds
    assert verdict.witness == (0, 1)


def test_classification_flags():
    h = canonicalize([[1, 2, 3], [1, 2, 3]], 3, multi=True)
    trivial = check_free(h, FreenessConstraint(2, 2))
    assert trivial.holds and "trivial" in trivial.flags
    vacuous = check_free(h, FreenessConstraint(2, 6))
    assert not vacuous.holds and "unsatisfiable" in vacuous.flags
    assert vacuous.witness == (0, 1)


def test_fewer_edges_than_e_holds():
    h = canonicalize([[1, 2, 3]], 3)
    assert check_free(h, FreenessConstraint(2, 4)).holds


def test_oracle_equivalence_simple(rng):
    for _ in range(300):
        h = random_hypergraph(rng)
        e = rng.randint(2, 4)
        v = rng.randint(3, min(12, e * 3))
        verdict = check_free(h, FreenessConstraint(e, v))
        assert verdict.holds == oracles.is_free(h.edges, e, v)
        if not verdict.holds:
            assert union_span(h, verdict.witness) <= v


def test_oracle_equivalence_multigraph(rng):
    for _ in range(100):
        h = random_hypergraph(rng, n_max=9, m_max=6, multi=True)
        e = rng.randint(2, 4)
        v = rng.randint(2, 9)
        verdict = check_free(h, FreenessConstraint(e, v))
        assert verdict.holds == oracles.is_free(h.edges, e, v)


def test_monotone_under_edge_deletion(rng):
    for _ in range(60):
        h = random_hypergraph(rng)
        c = FreenessConstraint(rng.randint(2, 3), rng.randint(4, 8))
        if not check_free(h, c).holds:
            continue
        keep = sorted(rng.sample(range(h.m), rng.randint(1, h.m)))
        assert check_free(h.subhypergraph(keep), c).holds


def test_span_bounded_systems_matches_unpruned(rng):
    for _ in range(150):
        h = random_hypergraph(rng, n_max=10, m_max=7)
        size = rng.randint(2, 4)
        max_span = rng.randint(3, 10)
        got = span_bounded_systems(h.edges, h.masks, size, max_span, simple=True)
        assert got == oracles.violations(h.edges, size, max_span)


def test_span_bounded_systems_budget():
    h = canonicalize(
        [list(e) for e in itertools.combinations(range(1, 6), 3)], 5
    )
    with pytest.raises(BudgetExceeded):
        span_bounded_systems(h.edges, h.masks, 2, 6, budget=2)


def test_simple_flag_prunes_impossible_spans():
    # 5 distinct triples always span at least 5 vertices
    h = canonicalize([list(e) for e in itertools.combinations(range(1, 6), 3)], 5)
    assert span_bounded_systems(h.edges, h.masks, 5, 4, simple=True) == []
    # but 5 repeated edges of a multigraph can sit inside 3
    dup = canonicalize([[1, 2, 3]] * 5, 3, multi=True)
    assert span_bounded_systems(dup.edges, dup.masks, 5, 4) == [(0, 1, 2, 3, 4)]


# --- profile formulas ----------------------------------------------------


def test_ladder_profile_values():
    p = ladder_profile(3, 3, 6)
    assert [(c.e, c.v) for c in p.constraints] == [(2, 4), (3, 6)]
    p = ladder_profile(4, 5, 13)
    assert [(c.e, c.v) for c in p.constraints] == [(2, 6), (3, 8), (4, 10), (5, 13)]


def test_ladder_profile_gcd_condition():
    with pytest.raises(GcdCondition):
        ladder_profile(3, 3, 5)


def test_ladder_profile_range_checks():
    with pytest.raises(BadRange):
        ladder_profile(2, 3, 6)
    with pytest.raises(BadRange):
        ladder_profile(3, 2, 6)
    with pytest.raises(BadRange):
        ladder_profile(3, 3, 3)


def test_deficit_profile_values():
    p = deficit_profile(3, 0, 4)
    assert [(c.e, c.v) for c in p.constraints] == [(1, 0), (2, 1), (3, 2), (4, 3)]
    # i with i - q - 1 < 0 is vacuous even for multigraphs and is dropped
    p = deficit_profile(3, 1, 7)
    assert [(c.e, c.v) for c in p.constraints] == [(i, i - 2) for i in range(2, 8)]


def test_berge_profile_values():
    p = berge_profile(3, 4)
    assert [(c.e, c.v) for c in p.constraints] == [(2, 4), (3, 6), (4, 8)]
    assert [(c.e, c.v) for c in berge_profile(3, 3).constraints] == [(2, 4), (3, 6)]


def test_profile_distinct_e_enforced():
    with pytest.raises(Exception):
        ConstraintProfile((FreenessConstraint(2, 4), FreenessConstraint(2, 5)))


def test_empty_profile_holds():
    h = canonicalize([[1, 2, 3]], 3)
    assert check_profile(h, ConstraintProfile(())).holds


def test_check_profile_reports_first_failing_constraint(rng):
    for _ in range(100):
        h = random_hypergraph(rng)
        profile = ladder_profile(3, 3, 6)
        verdict = check_profile(h, profile)
        expected = all(
            oracles.is_free(h.edges, c.e, c.v) for c in profile.constraints
        )
        assert verdict.holds == expected
        if not verdict.holds:
            c = verdict.constraint
            assert union_span(h, verdict.witness) <= c.v
            # smaller-e constraints all hold
            for prior in profile.constraints:
                if prior.e < c.e:
                    assert oracles.is_free(h.edges, prior.e, prior.v)


# --- Berge girth ----------------------------------------------------------


def test_explicit_three_cycle():
    h = canonicalize([[1, 2, 5], [2, 3, 6], [1, 3, 7]], 7)
    cycle = berge_girth(h, 4)
    assert cycle is not None and cycle.length == 3
    validate_berge_cycle(h, cycle)


def test_two_disjoint_edges_have_no_cycle():
    h = canonicalize([[1, 2, 3], [4, 5, 6]], 6)
    assert berge_girth(h, 4) is None


def test_two_cycle_is_shared_pair():
    h = canonicalize([[1, 2, 3], [1, 2, 4]], 4)
    cycle = berge_girth(h, 4)
    assert cycle is not None and cycle.length == 2
    validate_berge_cycle(h, cycle)


def test_berge_girth_needs_t_at_least_two():
    h = canonicalize([[1, 2, 3]], 3)
    with pytest.raises(BadRange):
        berge_girth(h, 1)


def test_girth_matches_literal_search(rng):
    for _ in range(120):
        h = random_hypergraph(rng, n_max=10, m_max=6)
        cycle = berge_girth(h, 4)
        expected = oracles.berge_girth(h.edges, 4)
        assert (None if cycle is None else cycle.length) == expected
        if cycle is not None:
            validate_berge_cycle(h, cycle)


def test_girth_profile_duality(rng):
    for _ in range(150):
        h = random_hypergraph(rng)
        free = check_profile(h, berge_profile(3, 4)).holds
        assert free == (berge_girth(h, 4) is None)


def test_extract_cycle_from_violating_system():
    h = canonicalize([[1, 2, 5], [2, 3, 6], [1, 3, 7]], 7)
    cycle = extract_berge_cycle(h, (0, 1, 2))
    assert cycle.length == 3
    validate_berge_cycle(h, cycle)
