import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aecolor.density import (
    density_at_least,
    mad_brute,
    mad_exact,
    mad_witness,
    planar_girth_bound,
    subgraph_edge_count,
)
from aecolor.graph import build_graph
from conftest import complete, complete_bipartite, cycle, path, random_graph, star


def test_mad_k4():
    assert mad_exact(complete(4)) == 3


def test_mad_cycles():
    for n in range(3, 9):
        assert mad_exact(cycle(n)) == 2


def test_mad_star():
    # K_{1,5}: the whole graph is the densest subgraph, 2*5/6
    assert mad_exact(star(5)) == Fraction(5, 3)


def test_mad_tree_below_two():
    for n in range(2, 9):
        assert mad_exact(path(n)) < 2


def test_mad_empty_graph():
    assert mad_exact(build_graph(3, [])) == 0


def test_mad_dense_subgraph_dominates():
    # a triangle with a long pendant path: mad comes from the triangle
    g = build_graph(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6)])
    value, witness = mad_witness(g)
    assert value == 2
    assert set(witness) >= {0, 1, 2}


def test_mad_k33():
    assert mad_exact(complete_bipartite(3, 3)) == 3


def test_planar_girth_bound_values():
    assert planar_girth_bound(3) == 6
    assert planar_girth_bound(4) == 4
    assert planar_girth_bound(5) == Fraction(10, 3)
    assert planar_girth_bound(6) == 3


def test_planar_girth_bound_rejects_forest():
    with pytest.raises(ValueError):
        planar_girth_bound(float("inf"))


def test_density_at_least_witness_is_valid():
    rng = random.Random(20)
    for _ in range(40):
        n = rng.randint(2, 12)
        m = rng.randint(1, n * (n - 1) // 2)
        g = random_graph(rng, n, m)
        target = Fraction(rng.randint(1, 4 * n), rng.randint(1, n))
        ok, witness = density_at_least(g, target)
        if ok:
            h = set(witness)
            assert 2 * subgraph_edge_count(g, h) >= target * len(h)
        else:
            # exhaustively confirm no subset reaches the target
            for size in range(1, n + 1):
                for subset in combinations(range(n), size):
                    assert 2 * subgraph_edge_count(g, set(subset)) < target * size


def test_mad_matches_brute_force():
    rng = random.Random(21)
    for _ in range(300):
        n = rng.randint(1, 10)
        m = rng.randint(0, n * (n - 1) // 2)
        g = random_graph(rng, n, m)
        assert mad_exact(g) == mad_brute(g)


def test_mad_monotone_under_edge_insertion():
    rng = random.Random(22)
    for _ in range(40):
        n = rng.randint(3, 10)
        all_pairs = list(combinations(range(n), 2))
        m = rng.randint(1, len(all_pairs) - 1)
        pairs = rng.sample(all_pairs, m + 1)
        smaller = build_graph(n, pairs[:-1])
        larger = build_graph(n, pairs)
        assert mad_exact(smaller) <= mad_exact(larger)


def test_mad_witness_achieves_value():
    rng = random.Random(23)
    for _ in range(40):
        n = rng.randint(2, 14)
        m = rng.randint(1, n * (n - 1) // 2)
        g = random_graph(rng, n, m)
        value, witness = mad_witness(g)
        h = set(witness)
        assert h
        assert Fraction(2 * subgraph_edge_count(g, h), len(h)) == value


def test_mad_bounds():
    rng = random.Random(24)
    for _ in range(40):
        n = rng.randint(2, 14)
        m = rng.randint(1, n * (n - 1) // 2)
        g = random_graph(rng, n, m)
        value = mad_exact(g)
        assert Fraction(2 * g.m, g.n) <= value <= g.max_degree()
        assert value.denominator <= g.n


def test_density_rejects_negative_target():
    with pytest.raises(ValueError):
        density_at_least(path(2), Fraction(-1))


def test_mad_brute_guards_large_input():
    with pytest.raises(ValueError):
        mad_brute(build_graph(23, [(0, 1)]))


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_mad_flow_equals_brute_hypothesis(data):
    n = data.draw(st.integers(min_value=1, max_value=9))
    all_pairs = list(combinations(range(n), 2))
    pairs = data.draw(
        st.lists(st.sampled_from(all_pairs), unique=True, max_size=len(all_pairs))
        if all_pairs else st.just([])
    )
    g = build_graph(n, pairs)
    assert mad_exact(g) == mad_brute(g)
