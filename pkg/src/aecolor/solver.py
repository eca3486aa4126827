"""Exact acyclic chromatic index computation by backtracking.

The backtracker is the independent oracle the rest of the package is
validated against, so it favors transparent exhaustive search over clever
encodings.  Pruning is limited to properness, the incremental Fact-1 cycle
check, and two sound symmetry breaks (fixing one max-degree vertex's edge
colors, and introducing extra colors in ascending order).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator, Literal

from .coloring import EdgeColoring, has_bichromatic_cycle, is_proper
from .graph import Graph, delete_edge


@dataclass(frozen=True)
class SolveBudget:
    max_nodes: int = 200_000_000
    max_seconds: float = 600.0

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_seconds <= 0:
            raise ValueError("budget limits must be positive")


Status = Literal["yes", "no", "unknown"]


@dataclass
class SolveResult:
    status: Status
    coloring: EdgeColoring | None = None
    nodes: int = 0


@dataclass
class CriticalityReport:
    k: int
    status: Literal["critical", "not-critical", "unknown"]
    # for not-critical: either a full acyclic k-coloring of G, or an edge
    # whose deletion still needs more than k colors
    witness_coloring: EdgeColoring | None = None
    witness_edge: int | None = None

    @property
    def is_critical(self) -> bool:
        return self.status == "critical"


class _BudgetExhausted(Exception):
    pass


def deletion_edge_order(g: Graph) -> list[int]:
    """Edge deletion sequence: repeatedly take a minimum-degree vertex's
    lowest-id incident edge.  Reversing it gives the insertion order used by
    both the solver and the constructive colorer (smallest-last)."""
    deg = [g.degree(v) for v in range(g.n)]
    alive = [True] * g.m
    order: list[int] = []
    for _ in range(g.m):
        candidates = [v for v in range(g.n) if deg[v] > 0]
        v = min(candidates, key=lambda x: (deg[x], x))
        e = min(
            e for e in range(g.m)
            if alive[e] and v in g.edges[e]
        )
        alive[e] = False
        a, b = g.edges[e]
        deg[a] -= 1
        deg[b] -= 1
        order.append(e)
    return order


class _Search:
    """Backtracking over edges in smallest-last insertion order."""

    def __init__(self, g: Graph, k: int, budget: SolveBudget,
                 symmetry_break: bool = True):
        self.g = g
        self.k = k
        self.budget = budget
        self.nodes = 0
        self.deadline = time.monotonic() + budget.max_seconds
        # color -> neighbor maps, 1-based color index; 0 unused
        self.col_nbr = [[-1] * (k + 1) for _ in range(g.n)]
        self.used_mask = [0] * g.n
        self.assign = [0] * g.m
        self.order = list(reversed(deletion_edge_order(g)))
        self.fixed: dict[int, int] = {}
        self.base_colors = 0
        if symmetry_break and g.m > 0:
            v0 = min(range(g.n), key=lambda v: (-g.degree(v), v))
            for i, e in enumerate(g.incident_edges(v0), start=1):
                if i > k:
                    break
                self.fixed[e] = i
            self.base_colors = min(g.degree(v0), k)
            pos = {e: i for i, e in enumerate(self.order)}
            self.order.sort(key=lambda e: (e not in self.fixed, pos[e]))

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _BudgetExhausted
        if self.nodes % 4096 == 0 and time.monotonic() > self.deadline:
            raise _BudgetExhausted

    def _closes_cycle(self, u: int, v: int, gamma: int) -> bool:
        """Would coloring uv with gamma close a bichromatic cycle?

        By Fact 1 only pairs (gamma, mu) with mu appearing at both u and v
        can close a new cycle, and they do iff the (mu,gamma) walk from u
        ends at v via mu.
        """
        common = self.used_mask[u] & self.used_mask[v]
        while common:
            low = common & -common
            mu = low.bit_length() - 1
            common ^= low
            cur = self.col_nbr[u][mu]
            last_is_mu = True
            while True:
                if cur == v and last_is_mu:
                    return True
                want = gamma if last_is_mu else mu
                nxt = self.col_nbr[cur][want]
                if nxt == -1:
                    break
                cur = nxt
                last_is_mu = not last_is_mu
        return False

    def _set(self, e: int, color: int) -> None:
        u, v = self.g.edges[e]
        self.assign[e] = color
        bit = 1 << color
        self.used_mask[u] |= bit
        self.used_mask[v] |= bit
        self.col_nbr[u][color] = v
        self.col_nbr[v][color] = u

    def _unset(self, e: int) -> None:
        u, v = self.g.edges[e]
        color = self.assign[e]
        self.assign[e] = 0
        bit = 1 << color
        self.used_mask[u] &= ~bit
        self.used_mask[v] &= ~bit
        self.col_nbr[u][color] = -1
        self.col_nbr[v][color] = -1

    def solve(self) -> SolveResult:
        try:
            found = self._extend(0, self.base_colors)
        except _BudgetExhausted:
            return SolveResult("unknown", None, self.nodes)
        if not found:
            return SolveResult("no", None, self.nodes)
        coloring = EdgeColoring(self.k, {e: c for e, c in enumerate(self.assign) if c})
        return SolveResult("yes", coloring, self.nodes)

    def _extend(self, idx: int, max_used: int) -> bool:
        if idx == len(self.order):
            return True
        e = self.order[idx]
        u, v = self.g.edges[e]
        taken = self.used_mask[u] | self.used_mask[v]
        if e in self.fixed:
            colors = [self.fixed[e]]
        else:
            # colors above max_used are interchangeable: try only the first
            limit = min(self.k, max_used + 1)
            colors = [c for c in range(1, limit + 1) if not taken >> c & 1]
        for c in colors:
            self._tick()
            if self._closes_cycle(u, v, c):
                continue
            self._set(e, c)
            if self._extend(idx + 1, max(max_used, c)):
                return True
            self._unset(e)
        return False

    def enumerate(self) -> Iterator[dict[int, int]]:
        """Yield every total acyclic k-coloring (no symmetry breaking)."""
        if self.fixed:
            raise ValueError("enumerate requires symmetry_break=False")
        yield from self._enum(0)

    def _enum(self, idx: int) -> Iterator[dict[int, int]]:
        if idx == len(self.order):
            yield {e: c for e, c in enumerate(self.assign) if c}
            return
        e = self.order[idx]
        u, v = self.g.edges[e]
        taken = self.used_mask[u] | self.used_mask[v]
        for c in range(1, self.k + 1):
            if taken >> c & 1:
                continue
            self._tick()
            if self._closes_cycle(u, v, c):
                continue
            self._set(e, c)
            yield from self._enum(idx + 1)
            self._unset(e)


def is_acyclically_k_colorable(
    g: Graph, k: int, budget: SolveBudget = SolveBudget()
) -> SolveResult:
    """Decide whether g admits a total acyclic edge k-coloring.

    "yes" answers carry a coloring re-validated through the coloring kernel;
    "no" means the search space was exhausted; "unknown" means the budget
    ran out before a decision.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if g.m == 0:
        return SolveResult("yes", EdgeColoring(k, {}))
    if k < g.max_degree():
        return SolveResult("no", None, 0)  # below the proper-coloring bound
    result = _Search(g, k, budget).solve()
    if result.status == "yes":
        assert result.coloring is not None
        assert result.coloring.is_total(g)
        assert is_proper(g, result.coloring)
        assert has_bichromatic_cycle(g, result.coloring) is None
    return result


def enumerate_acyclic_colorings(
    g: Graph, k: int, budget: SolveBudget = SolveBudget()
) -> Iterator[EdgeColoring]:
    """All total acyclic k-colorings of g, without symmetry breaking."""
    search = _Search(g, k, budget, symmetry_break=False)
    for assignment in search.enumerate():
        yield EdgeColoring(k, assignment)


@dataclass
class ChiAResult:
    chi_a: int | None
    decided_up_to: int
    coloring: EdgeColoring | None = None
    nodes: int = 0


def chi_a_exact(g: Graph, budget: SolveBudget = SolveBudget()) -> ChiAResult:
    """Smallest k with an acyclic edge k-coloring, searched upward from the
    proper-coloring lower bound Delta(g)."""
    if g.m == 0:
        return ChiAResult(0, 0, EdgeColoring(1, {}))
    k = g.max_degree()
    total_nodes = 0
    while True:
        result = is_acyclically_k_colorable(g, k, budget)
        total_nodes += result.nodes
        if result.status == "yes":
            assert k >= g.max_degree()
            return ChiAResult(k, k, result.coloring, total_nodes)
        if result.status == "unknown":
            return ChiAResult(None, k - 1, None, total_nodes)
        k += 1


def is_critical(
    g: Graph, k: int, budget: SolveBudget = SolveBudget()
) -> CriticalityReport:
    """Is g acyclically edge k-critical?

    Critical means chi'_a(g) > k while every single-edge deletion is
    acyclically k-colorable (edge deletion suffices for "any proper
    subgraph" since colorability is monotone under subgraphs).
    """
    whole = is_acyclically_k_colorable(g, k, budget)
    if whole.status == "unknown":
        return CriticalityReport(k, "unknown")
    if whole.status == "yes":
        return CriticalityReport(k, "not-critical", witness_coloring=whole.coloring)
    for e in range(g.m):
        sub = is_acyclically_k_colorable(delete_edge(g, e), k, budget)
        if sub.status == "unknown":
            return CriticalityReport(k, "unknown")
        if sub.status == "no":
            return CriticalityReport(k, "not-critical", witness_edge=e)
    return CriticalityReport(k, "critical")
