"""Executable structure theory: critical-graph lemma predicates, Fact-2
verification, and the two discharging rule sets.

The predicates are pure structural checks evaluable on any graph; whether a
graph actually satisfies the criticality hypothesis is decided separately by
the exact solver, so tests can exhibit both vacuous and violating cases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterator, Literal

import networkx as nx

from .coloring import EdgeColoring, has_bichromatic_cycle, properness_violation
from .density import mad_exact
from .graph import Graph, build_graph, delete_edge, is_2_connected, is_connected, n_k
from .solver import (
    CriticalityReport,
    SolveBudget,
    enumerate_acyclic_colorings,
    is_acyclically_k_colorable,
    is_critical,
)


@dataclass
class LemmaPredicateResult:
    lemma_id: str
    holds: bool
    applicable: bool = True
    witness: dict | None = None
    note: str = ""


def check_2connected(g: Graph, k: int | None = None) -> LemmaPredicateResult:
    """Critical graphs are 2-connected."""
    ok = is_2_connected(g)
    return LemmaPredicateResult("2-connected", ok,
                                witness=None if ok else {"graph": "not 2-connected"})


def check_2vertex_neighborhood(g: Graph, k: int) -> LemmaPredicateResult:
    """Every vertex adjacent to a 2-vertex has at least k-Delta+1 neighbors
    of degree at least k-Delta+2.  Hypothesis: k <= 2*Delta - 2."""
    delta = g.max_degree()
    if k > 2 * delta - 2:
        return LemmaPredicateResult("2-vertex-neighborhood", True, applicable=False,
                                    note=f"hypothesis k<=2*Delta-2 fails (k={k}, Delta={delta})")
    need_count = k - delta + 1
    need_deg = k - delta + 2
    for v in range(g.n):
        if n_k(g, v, 2) == 0:
            continue
        strong = sum(1 for w in g.neighbors(v) if g.degree(w) >= need_deg)
        if strong < need_count:
            return LemmaPredicateResult(
                "2-vertex-neighborhood", False,
                witness={"vertex": v, "strong_neighbors": strong,
                         "required": need_count})
    return LemmaPredicateResult("2-vertex-neighborhood", True)


def check_2vertex_count(g: Graph, k: int | None = None) -> LemmaPredicateResult:
    """At k = Delta+1: every vertex has n_2(v) <= Delta - 2."""
    delta = g.max_degree()
    for v in range(g.n):
        if n_k(g, v, 2) > delta - 2:
            return LemmaPredicateResult(
                "2-vertex-count", False,
                witness={"vertex": v, "n2": n_k(g, v, 2), "bound": delta - 2})
    return LemmaPredicateResult("2-vertex-count", True)


def check_2and3_count(g: Graph, k: int | None = None) -> LemmaPredicateResult:
    """At k = Delta+2: if n_2(v) != 0 then n_2(v)+n_3(v) <= Delta - 3."""
    delta = g.max_degree()
    for v in range(g.n):
        n2 = n_k(g, v, 2)
        if n2 == 0:
            continue
        n3 = n_k(g, v, 3)
        if n2 + n3 > delta - 3:
            return LemmaPredicateResult(
                "2-and-3-vertex-count", False,
                witness={"vertex": v, "n2": n2, "n3": n3, "bound": delta - 3})
    return LemmaPredicateResult("2-and-3-vertex-count", True)


def check_neighbor_of_2vertex(g: Graph, k: int) -> LemmaPredicateResult:
    """At k > Delta: every 2-vertex has only neighbors of degree
    at least k - Delta + 3."""
    delta = g.max_degree()
    threshold = k - delta + 3
    for v in range(g.n):
        if g.degree(v) != 2:
            continue
        for w in g.neighbors(v):
            if g.degree(w) < threshold:
                return LemmaPredicateResult(
                    "neighbor-of-2-vertex", False,
                    witness={"vertex": v, "neighbor": w,
                             "degree": g.degree(w), "threshold": threshold})
    return LemmaPredicateResult("neighbor-of-2-vertex", True)


def check_3vertex_neighbors(g: Graph, k: int) -> LemmaPredicateResult:
    """At k >= Delta+2: every 3-vertex has only neighbors of degree
    at least k - Delta + 2."""
    delta = g.max_degree()
    if k < delta + 2:
        return LemmaPredicateResult("3-vertex-neighbors", True, applicable=False,
                                    note=f"hypothesis k>=Delta+2 fails (k={k})")
    threshold = k - delta + 2
    for v in range(g.n):
        if g.degree(v) != 3:
            continue
        for w in g.neighbors(v):
            if g.degree(w) < threshold:
                return LemmaPredicateResult(
                    "3-vertex-neighbors", False,
                    witness={"vertex": v, "neighbor": w,
                             "degree": g.degree(w), "threshold": threshold})
    return LemmaPredicateResult("3-vertex-neighbors", True)


def check_3adj4(g: Graph, k: int | None = None) -> LemmaPredicateResult:
    """At k = Delta+2: a 3-vertex v with a 4-neighbor x has its other two
    neighbors y, z of degree >= 5, with one of them adjacent to at least
    three 4+-vertices and the other to at least two (three if its degree
    is exactly 5).

    The two roles are assigned symmetrically: the predicate holds if some
    assignment of (y, z) to the roles satisfies all clauses.
    """
    def strong(w: int) -> int:
        return sum(1 for x in g.neighbors(w) if g.degree(x) >= 4)

    for v in range(g.n):
        if g.degree(v) != 3:
            continue
        nbrs = sorted(g.neighbors(v))
        if not any(g.degree(x) == 4 for x in nbrs):
            continue
        x = min(w for w in nbrs if g.degree(w) == 4)
        others = [w for w in nbrs if w != x]
        y, z = others
        if g.degree(y) < 5 or g.degree(z) < 5:
            return LemmaPredicateResult(
                "3-adjacent-4", False,
                witness={"vertex": v, "four_neighbor": x,
                         "others": others,
                         "degrees": [g.degree(y), g.degree(z)]})
        ok = False
        for p, q in ((y, z), (z, y)):
            if strong(p) < 3:
                continue
            need_q = 3 if g.degree(q) == 5 else 2
            if strong(q) >= need_q:
                ok = True
                break
        if not ok:
            return LemmaPredicateResult(
                "3-adjacent-4", False,
                witness={"vertex": v, "four_neighbor": x, "others": others,
                         "strong_counts": [strong(y), strong(z)]})
    return LemmaPredicateResult("3-adjacent-4", True)


def check_tvertex_2s(g: Graph, k: int | None = None) -> LemmaPredicateResult:
    """At k = Delta+2: a t-vertex with t >= 5 has n_2(v) <= t - 4, and when
    equality holds, n_3(v) = 0."""
    for v in range(g.n):
        t = g.degree(v)
        if t < 5:
            continue
        n2 = n_k(g, v, 2)
        if n2 > t - 4:
            return LemmaPredicateResult(
                "t-vertex-2-count", False,
                witness={"vertex": v, "n2": n2, "bound": t - 4})
        if n2 == t - 4 and n_k(g, v, 3) != 0:
            return LemmaPredicateResult(
                "t-vertex-2-count", False,
                witness={"vertex": v, "n2": n2, "n3": n_k(g, v, 3),
                         "note": "equality case requires n3 = 0"})
    return LemmaPredicateResult("t-vertex-2-count", True)


def check_5vertex(g: Graph, k: int | None = None) -> LemmaPredicateResult:
    """At k = Delta+2: every 5-vertex has n_2(v) + n_3(v) <= 3."""
    for v in range(g.n):
        if g.degree(v) != 5:
            continue
        total = n_k(g, v, 2) + n_k(g, v, 3)
        if total > 3:
            return LemmaPredicateResult(
                "5-vertex", False,
                witness={"vertex": v, "n2_plus_n3": total})
    return LemmaPredicateResult("5-vertex", True)


def lemma_suite(g: Graph, k: int) -> list[LemmaPredicateResult]:
    """All predicates applicable to a graph hypothesized critical at k.

    Predicates tied to the Delta+2 setting run only when k = Delta+2; the
    Delta+1 corollary runs only at k = Delta+1.
    """
    delta = g.max_degree()
    results = [
        check_2connected(g, k),
        check_2vertex_neighborhood(g, k),
    ]
    if k > delta:
        results.append(check_neighbor_of_2vertex(g, k))
    if k == delta + 1:
        results.append(check_2vertex_count(g, k))
    if k >= delta + 2:
        results.append(check_3vertex_neighbors(g, k))
    if k == delta + 2:
        results.extend([
            check_2and3_count(g, k),
            check_3adj4(g, k),
            check_tvertex_2s(g, k),
            check_5vertex(g, k),
        ])
    return results


# --- Fact 2 ------------------------------------------------------------------

@dataclass
class Fact2Result:
    holds: bool
    t: int
    detail: str = ""


def fact2_verify(g: Graph, k: int, e: int, c: EdgeColoring) -> Fact2Result:
    """Check the degree-sum inequalities for one acyclic k-coloring of g - e.

    With uv = e deleted and F_u, F_v the colors at u and v: if the sets are
    disjoint, d(u) + d(v) >= k + 2 must hold; if they share t colors with
    matched neighbors u_i, v_i, both sums over the matched neighbors'
    degrees plus d(u) + d(v) must reach k + t + 2.
    """
    u, v = g.endpoints(e)
    gm = delete_edge(g, e)
    bad = properness_violation(gm, c)
    if bad is not None:
        raise ValueError(f"coloring is not proper at vertex {bad}")
    if has_bichromatic_cycle(gm, c) is not None:
        raise ValueError("coloring of g - e is not acyclic")

    def colors_at(x: int) -> dict[int, int]:
        out = {}
        for w in gm.neighbors(x):
            col = c.get(gm.edge_id(x, w))
            if col is not None:
                out[col] = w
        return out

    fu, fv = colors_at(u), colors_at(v)
    shared = sorted(set(fu) & set(fv))
    du, dv = g.degree(u), g.degree(v)
    if not shared:
        ok = du + dv >= k + 2
        return Fact2Result(ok, 0, f"d(u)+d(v)={du + dv} vs k+2={k + 2}")
    t = len(shared)
    sum_v = sum(g.degree(fv[i]) for i in shared)
    sum_u = sum(g.degree(fu[i]) for i in shared)
    bound = k + t + 2
    ok = sum_v + du + dv >= bound and sum_u + du + dv >= bound
    return Fact2Result(
        ok, t,
        f"sums {sum_u + du + dv}, {sum_v + du + dv} vs k+t+2={bound}")


def fact2_sweep(
    g: Graph, k: int, budget: SolveBudget = SolveBudget()
) -> tuple[bool, int]:
    """Verify Fact 2 over every acyclic k-coloring of every g - e.

    Returns (all_hold, number of colorings checked).  Intended for graphs
    already certified k-critical.
    """
    checked = 0
    for e in range(g.m):
        gm = delete_edge(g, e)
        for c in enumerate_acyclic_colorings(gm, k, budget):
            checked += 1
            if not fact2_verify(g, k, e, c).holds:
                return False, checked
    return True, checked


# --- discharging -------------------------------------------------------------

RuleSetName = Literal["mad4", "mad3"]


@dataclass
class ChargeState:
    rules: RuleSetName
    initial: dict[int, Fraction]
    final: dict[int, Fraction]
    transfers: list[tuple[str, int, int, Fraction]] = field(default_factory=list)

    @property
    def total_initial(self) -> Fraction:
        return sum(self.initial.values(), Fraction(0))

    @property
    def total_final(self) -> Fraction:
        return sum(self.final.values(), Fraction(0))

    def negative_vertices(self) -> list[int]:
        return [v for v in sorted(self.final) if self.final[v] < 0]


def discharge(g: Graph, rules: RuleSetName) -> ChargeState:
    """Apply one simultaneous discharging pass.

    mad4: initial d(v)-4; every 2-vertex takes 1 from each neighbor (R1);
    a 3-vertex adjacent to a 4-vertex takes 1/2 from each adjacent
    5+-vertex, any other 3-vertex takes 1/3 from each neighbor (R2).

    mad3: initial d(v)-3; every 2-vertex takes 1/2 from each neighbor (R).

    Rules are applied literally from the initial degrees: on non-critical
    graphs negative final charges are informative output, not an error.
    """
    if rules == "mad4":
        base = 4
    elif rules == "mad3":
        base = 3
    else:
        raise ValueError(f"unknown rule set {rules!r}")
    initial = {v: Fraction(g.degree(v) - base) for v in range(g.n)}
    final = dict(initial)
    transfers: list[tuple[str, int, int, Fraction]] = []

    def give(rule: str, giver: int, receiver: int, amount: Fraction) -> None:
        final[giver] -= amount
        final[receiver] += amount
        transfers.append((rule, giver, receiver, amount))

    if rules == "mad3":
        for v in range(g.n):
            if g.degree(v) == 2:
                for w in sorted(g.neighbors(v)):
                    give("R", w, v, Fraction(1, 2))
    else:
        for v in range(g.n):
            if g.degree(v) == 2:
                for w in sorted(g.neighbors(v)):
                    give("R1", w, v, Fraction(1))
        for v in range(g.n):
            if g.degree(v) != 3:
                continue
            if any(g.degree(w) == 4 for w in g.neighbors(v)):
                for w in sorted(g.neighbors(v)):
                    if g.degree(w) >= 5:
                        give("R2", w, v, Fraction(1, 2))
            else:
                for w in sorted(g.neighbors(v)):
                    give("R2", w, v, Fraction(1, 3))
    return ChargeState(rules, initial, final, transfers)


@dataclass
class DischargeReport:
    rules: RuleSetName
    mad: Fraction
    total_initial: Fraction
    negative_vertices: list[int]
    failing_predicates: list[LemmaPredicateResult]
    state: ChargeState


def discharging_contradiction_report(
    g: Graph, rules: RuleSetName, mad: Fraction | None = None
) -> DischargeReport:
    """Run the discharging argument on a graph meeting the mad hypothesis.

    The mad bound forces a negative total initial charge; if vertices end
    negative the graph cannot be critical, and the report cross-references
    which lemma predicates fail on it.
    """
    if mad is None:
        mad = mad_exact(g)
    bound = 4 if rules == "mad4" else 3
    if mad >= bound:
        raise ValueError(f"mad(G) = {mad} does not satisfy mad < {bound}")
    state = discharge(g, rules)
    k = g.max_degree() + (2 if rules == "mad4" else 1)
    failing = [r for r in lemma_suite(g, k) if r.applicable and not r.holds]
    return DischargeReport(
        rules, mad, state.total_initial, state.negative_vertices(), failing, state)


# --- small-graph enumeration and the critical sweep --------------------------

def connected_graphs_upto(n_max: int) -> Iterator[Graph]:
    """All connected graphs on 1..n_max vertices, one per isomorphism class.

    Backed by the networkx graph atlas (complete through 7 vertices).
    """
    if n_max > 7:
        raise ValueError("atlas enumeration is complete only up to 7 vertices")
    for ag in nx.graph_atlas_g()[1:]:
        if ag.number_of_nodes() > n_max:
            break
        if ag.number_of_nodes() >= 1 and nx.is_connected(ag):
            yield build_graph(ag.number_of_nodes(), sorted(ag.edges()))


def enumerate_connected_labeled(n: int) -> Iterator[Graph]:
    """Every labeled connected graph on exactly n vertices."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        chosen = [p for i, p in enumerate(pairs) if mask >> i & 1]
        g = build_graph(n, chosen)
        if is_connected(g):
            yield g


def _are_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.m != b.m:
        return False
    da = sorted(a.degree(v) for v in range(a.n))
    db = sorted(b.degree(v) for v in range(b.n))
    if da != db:
        return False
    edges_b = set(b.edges)
    for perm in permutations(range(a.n)):
        if all(a.degree(v) == b.degree(perm[v]) for v in range(a.n)):
            if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in edges_b
                   for u, v in a.edges):
                return True
    return False


def dedup_isomorphs(graphs: Iterator[Graph]) -> list[Graph]:
    """Degree-sequence prefilter, then brute-force isomorphism on survivors."""
    groups: dict[tuple, list[Graph]] = {}
    out: list[Graph] = []
    for g in graphs:
        profile = tuple(sorted(
            (g.degree(v), tuple(sorted(g.degree(w) for w in g.neighbors(v))))
            for v in range(g.n)
        ))
        bucket = groups.setdefault(profile, [])
        if not any(_are_isomorphic(g, h) for h in bucket):
            bucket.append(g)
            out.append(g)
    return out


@dataclass
class SweepRecord:
    graph: Graph
    k: int
    report: CriticalityReport


def critical_sweep(
    n_max: int, budget: SolveBudget = SolveBudget()
) -> list[SweepRecord]:
    """Find all k-critical graphs with k in {Delta+1, Delta+2} among
    connected graphs on at most n_max vertices."""
    found: list[SweepRecord] = []
    for g in connected_graphs_upto(n_max):
        if g.m == 0:
            continue
        delta = g.max_degree()
        low = is_acyclically_k_colorable(g, delta + 1, budget)
        if low.status == "yes":
            continue  # chi'_a <= Delta+1: not critical at Delta+1 or Delta+2
        for k in (delta + 1, delta + 2):
            report = is_critical(g, k, budget)
            if report.status != "not-critical":
                found.append(SweepRecord(g, k, report))
    return found
