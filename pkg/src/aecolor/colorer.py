"""Incremental acyclic edge colorer.

Edges are inserted in reverse deletion order (smallest-last) and each new
edge is colored by a cascade of moves: direct assignment filtered by the
two-color cycle check, Kempe component swaps at a blocked endpoint,
recoloring one incident edge at a low-degree neighbor, and bounded local
backtracking.  The move set is sound but not complete; an exact-solver
fallback makes the procedure total when requested.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .coloring import EdgeColoring, has_bichromatic_cycle, is_proper
from .graph import Graph
from .solver import SolveBudget, deletion_edge_order, is_acyclically_k_colorable

Move = tuple  # ("assign", e, c) | ("swap", a, b, anchor) |
              # ("reassign", e, old, new) | ("backtrack", (edges...))


@dataclass
class ColoringReport:
    outcome: Literal["success", "fallback-success", "failure"]
    k: int
    coloring: EdgeColoring | None
    colors_used: int
    move_counts: dict[str, int]
    moves_spent: int
    trace: list[Move] = field(default_factory=list)
    guarantee: str = ""


def choose_palette(g: Graph, mad: Fraction) -> tuple[int, str]:
    """Palette size from the mad-based bounds: Delta+1 below mad 3, Delta+2
    below mad 4, best-effort Delta+2 (flagged) at mad >= 4."""
    delta = g.max_degree()
    if mad < 3:
        return delta + 1, "mad<3"
    if mad < 4:
        return delta + 2, "mad<4"
    return delta + 2, "no-guarantee"


class _Colorer:
    """Mutable coloring state shared by the move cascade."""

    def __init__(self, g: Graph, k: int, move_budget: int):
        self.g = g
        self.k = k
        self.budget = move_budget
        self.spent = 0
        self.col_nbr = [[-1] * (k + 1) for _ in range(g.n)]
        self.used_mask = [0] * g.n
        self.assign: dict[int, int] = {}
        self.trace: list[Move] = []
        self.counts = {"assign": 0, "swap": 0, "reassign": 0, "backtrack": 0}

    # -- bookkeeping --------------------------------------------------------

    def _tick(self) -> bool:
        self.spent += 1
        return self.spent <= self.budget

    def _set(self, e: int, c: int) -> None:
        u, v = self.g.edges[e]
        self.assign[e] = c
        self.used_mask[u] |= 1 << c
        self.used_mask[v] |= 1 << c
        self.col_nbr[u][c] = v
        self.col_nbr[v][c] = u

    def _unset(self, e: int) -> None:
        c = self.assign.pop(e)
        u, v = self.g.edges[e]
        self.used_mask[u] &= ~(1 << c)
        self.used_mask[v] &= ~(1 << c)
        self.col_nbr[u][c] = -1
        self.col_nbr[v][c] = -1

    def load(self, c: EdgeColoring) -> None:
        for e, col in c.assignment.items():
            self._set(e, col)

    def snapshot(self) -> EdgeColoring:
        return EdgeColoring(self.k, dict(self.assign))

    def colored_degree(self, v: int) -> int:
        return self.used_mask[v].bit_count()

    # -- cycle checks -------------------------------------------------------

    def _walk_ends_at(self, u: int, v: int, mu: int, gamma: int) -> bool:
        """Does the maximal (mu,gamma) walk from u's mu-edge end at v via mu?"""
        cur = self.col_nbr[u][mu]
        if cur == -1:
            return False
        last_is_mu = True
        while True:
            if cur == u:
                return False
            want = gamma if last_is_mu else mu
            nxt = self.col_nbr[cur][want]
            if nxt == -1:
                return cur == v and last_is_mu
            cur, last_is_mu = nxt, not last_is_mu

    def blocked(self, u: int, v: int, gamma: int) -> bool:
        """Fact-1 filter: would coloring uv with gamma close a bichromatic
        cycle?  Only pairs (gamma, mu) with mu in S_uv and S_vu qualify."""
        common = self.used_mask[u] & self.used_mask[v]
        while common:
            low = common & -common
            mu = low.bit_length() - 1
            common ^= low
            if self._walk_ends_at(u, v, mu, gamma):
                return True
        return False

    def _pair_has_cycle(self, a: int, b: int) -> bool:
        """Scan the (a,b) subgraph for a cycle component."""
        seen: set[int] = set()
        for v in range(self.g.n):
            if v in seen:
                continue
            na, nb = self.col_nbr[v][a], self.col_nbr[v][b]
            if na == -1 or nb == -1:
                continue
            # walk one way until a dead end or back to v
            prev, cur = v, na
            seen.add(v)
            closed = False
            while True:
                seen.add(cur)
                prev_col = a if self.col_nbr[cur][a] == prev else b
                want = b if prev_col == a else a
                nxt = self.col_nbr[cur][want]
                if nxt == -1:
                    break
                if nxt == v:
                    closed = True
                    break
                prev, cur = cur, nxt
            if closed:
                return True
        return False

    def cycle_touching(self, colors: tuple[int, ...]) -> bool:
        """Any bichromatic cycle whose pair involves one of these colors."""
        used = set()
        for m in self.used_mask:
            rest = m
            while rest:
                low = rest & -rest
                used.add(low.bit_length() - 1)
                rest ^= low
        for a in colors:
            for b in sorted(used):
                if b == a:
                    continue
                if self._pair_has_cycle(min(a, b), max(a, b)):
                    return True
        return False

    # -- moves ---------------------------------------------------------------

    def candidates(self, u: int, v: int) -> list[int]:
        taken = self.used_mask[u] | self.used_mask[v]
        return [c for c in range(1, self.k + 1) if not taken >> c & 1]

    def try_direct(self, e: int) -> bool:
        """M1: lowest free color at both ends passing the cycle filter."""
        u, v = self.g.edges[e]
        for c in self.candidates(u, v):
            if not self._tick():
                return False
            if not self.blocked(u, v, c):
                self._set(e, c)
                self.trace.append(("assign", e, c))
                self.counts["assign"] += 1
                return True
        return False

    def _swap_component(self, a: int, b: int, anchor: int) -> list[int] | None:
        """Swap colors a/b on the maximal (a,b) component through anchor.
        Returns the edge ids touched, or None for a cycle component."""
        start_a, start_b = self.col_nbr[anchor][a], self.col_nbr[anchor][b]
        verts = [anchor]
        for first in (x for x in (start_a, start_b) if x != -1):
            prev, cur = anchor, first
            side = []
            while cur != -1:
                if cur == anchor:
                    return None  # cycle component
                side.append(cur)
                prev_col = a if self.col_nbr[cur][a] == prev else b
                want = b if prev_col == a else a
                prev, cur = cur, self.col_nbr[cur][want]
            if first == start_a:
                verts = list(reversed(side)) + verts
            else:
                verts = verts + side
        # two-phase flip: a vertex inside the path briefly carries both
        # colors, so unset everything before setting the flipped colors
        touched = [self.g.edge_id(x, y) for x, y in zip(verts, verts[1:])]
        flipped = {e: b if self.assign[e] == a else a for e in touched}
        for e in touched:
            self._unset(e)
        for e in touched:
            self._set(e, flipped[e])
        return touched

    def try_swap_then_direct(self, e: int) -> bool:
        """M2: Kempe-swap two colors at the blocked endpoint of smaller
        degree, keep the swap only if it stays acyclic and unblocks M1."""
        u, v = self.g.edges[e]
        anchor, other = sorted((u, v), key=lambda x: (self.g.degree(x), x))
        for w in (anchor, other):
            present = sorted(
                c for c in range(1, self.k + 1) if self.used_mask[w] >> c & 1
            )
            for i, a in enumerate(present):
                for b in present[i + 1:]:
                    if not self._tick():
                        return False
                    touched = self._swap_component(a, b, w)
                    if touched is None:
                        continue
                    if self.cycle_touching((a, b)):
                        self._swap_back(touched, a, b)
                        continue
                    self.trace.append(("swap", a, b, w))
                    self.counts["swap"] += 1
                    if self.try_direct(e):
                        return True
                    # keep state consistent for the next attempt
                    self._swap_back(touched, a, b)
                    self.trace.pop()
                    self.counts["swap"] -= 1
        return False

    def _swap_back(self, touched: list[int], a: int, b: int) -> None:
        flipped = {e: b if self.assign[e] == a else a for e in touched}
        for e in touched:
            self._unset(e)
        for e in touched:
            self._set(e, flipped[e])

    def try_reassign_then_direct(self, e: int) -> bool:
        """M3: recolor one incident edge at a neighbor of small colored
        degree to a free color, then retry M1."""
        u, v = self.g.edges[e]
        for a in sorted((u, v), key=lambda x: (self.g.degree(x), x)):
            for w in sorted(self.g.neighbors(a)):
                ea = self.g.edge_id(a, w)
                if ea not in self.assign or self.colored_degree(w) > 3:
                    continue
                old = self.assign[ea]
                free = ~(self.used_mask[a] | self.used_mask[w])
                for c in range(1, self.k + 1):
                    if not free >> c & 1:
                        continue
                    if not self._tick():
                        return False
                    self._unset(ea)
                    if self.blocked(a, w, c):
                        self._set(ea, old)
                        continue
                    self._set(ea, c)
                    self.trace.append(("reassign", ea, old, c))
                    self.counts["reassign"] += 1
                    if self.try_direct(e):
                        return True
                    self._unset(ea)
                    self._set(ea, old)
                    self.trace.pop()
                    self.counts["reassign"] -= 1
        return False

    def backtrack_neighborhood(self, e: int) -> list[int]:
        """M4: uncolor every colored edge incident to either endpoint."""
        u, v = self.g.edges[e]
        dropped = []
        for w in (u, v):
            for x in sorted(self.g.neighbors(w)):
                ee = self.g.edge_id(w, x)
                if ee in self.assign:
                    self._unset(ee)
                    dropped.append(ee)
        self.trace.append(("backtrack", tuple(dropped)))
        self.counts["backtrack"] += 1
        self._tick()
        return dropped


def extend_one_edge(
    g: Graph, c: EdgeColoring, uv: int, move_budget: int = 1000
) -> tuple[EdgeColoring, list[Move]] | None:
    """Color the single edge uv on top of a proper acyclic partial coloring.

    Runs the M1-M3 cascade (no backtracking at this granularity).  Returns
    the extended coloring and the committed moves, or None when stuck.
    """
    if c.get(uv) is not None:
        raise ValueError(f"edge {uv} is already colored")
    engine = _Colorer(g, c.k, move_budget)
    engine.load(c)
    if (
        engine.try_direct(uv)
        or engine.try_swap_then_direct(uv)
        or engine.try_reassign_then_direct(uv)
    ):
        return engine.snapshot(), engine.trace
    return None


def color_graph(
    g: Graph,
    k: int,
    move_budget: int | None = None,
    fallback: bool = True,
    solve_budget: SolveBudget | None = None,
) -> ColoringReport:
    """Color all edges of g with palette [1..k], acyclically.

    Processes edges in reverse smallest-last deletion order; falls back to
    the exact solver when the move cascade gets stuck and fallback is on.
    """
    if k < g.max_degree():
        raise ValueError("palette smaller than the maximum degree")
    if move_budget is None:
        move_budget = 50 * max(g.m, 1)
    engine = _Colorer(g, k, move_budget)
    # pop() walks the deletion sequence backwards, i.e. insertion order
    pending = deletion_edge_order(g)
    stuck = False
    while pending:
        e = pending.pop()
        if e in engine.assign:
            continue
        if engine.spent >= move_budget:
            stuck = True
            break
        if engine.try_direct(e):
            continue
        if engine.try_swap_then_direct(e):
            continue
        if engine.try_reassign_then_direct(e):
            continue
        dropped = engine.backtrack_neighborhood(e)
        if engine.try_direct(e):
            pending.extend(reversed(dropped))
            continue
        stuck = True
        break
    if not stuck and len(engine.assign) == g.m:
        coloring = engine.snapshot()
        _validate(g, coloring)
        return ColoringReport(
            "success", k, coloring, len(coloring.colors_used()),
            dict(engine.counts), engine.spent, engine.trace,
        )
    if fallback:
        result = is_acyclically_k_colorable(g, k, solve_budget or SolveBudget())
        if result.status == "yes":
            assert result.coloring is not None
            return ColoringReport(
                "fallback-success", k, result.coloring,
                len(result.coloring.colors_used()),
                dict(engine.counts), engine.spent, engine.trace,
            )
    return ColoringReport(
        "failure", k, engine.snapshot(), len(engine.snapshot().colors_used()),
        dict(engine.counts), engine.spent, engine.trace,
    )


def _validate(g: Graph, c: EdgeColoring) -> None:
    assert c.is_total(g)
    assert is_proper(g, c)
    assert has_bichromatic_cycle(g, c) is None


def replay_trace(g: Graph, k: int, trace: list[Move]) -> EdgeColoring:
    """Re-apply a committed move log from the empty coloring."""
    engine = _Colorer(g, k, move_budget=10**9)
    for move in trace:
        kind = move[0]
        if kind == "assign":
            engine._set(move[1], move[2])
        elif kind == "reassign":
            engine._unset(move[1])
            engine._set(move[1], move[3])
        elif kind == "swap":
            touched = engine._swap_component(move[1], move[2], move[3])
            assert touched is not None
        elif kind == "backtrack":
            for e in move[1]:
                engine._unset(e)
        else:
            raise ValueError(f"unknown move {kind!r}")
    return engine.snapshot()
