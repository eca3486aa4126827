"""Simple undirected graphs with dense integer vertex and edge ids."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import inf


class GraphError(ValueError):
    """Raised on malformed graph input (self-loops, duplicates, bad ids)."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    Vertices are 0..n-1.  Edges carry dense ids 0..m-1 in first-seen order.
    Mutating operations (delete_edge) return new Graph values.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    _adj: tuple[frozenset[int], ...] = field(repr=False)
    _edge_id: dict[tuple[int, int], int] = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def min_degree(self) -> int:
        return min((len(a) for a in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edge_id

    def edge_id(self, u: int, v: int) -> int:
        key = (min(u, v), max(u, v))
        if key not in self._edge_id:
            raise GraphError(f"no edge {u}-{v}")
        return self._edge_id[key]

    def endpoints(self, e: int) -> tuple[int, int]:
        if not 0 <= e < len(self.edges):
            raise GraphError(f"edge id {e} out of range")
        return self.edges[e]

    def incident_edges(self, v: int) -> list[int]:
        self._check_vertex(v)
        return [self.edge_id(v, w) for w in sorted(self._adj[v])]

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range [0, {self.n})")


def build_graph(n: int, pairs: list[tuple[int, int]]) -> Graph:
    """Build a simple graph, rejecting self-loops, duplicates and bad ids."""
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    adj: list[set[int]] = [set() for _ in range(n)]
    edges: list[tuple[int, int]] = []
    edge_id: dict[tuple[int, int], int] = {}
    for u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in edge_id:
            raise GraphError(f"duplicate edge ({u},{v})")
        edge_id[key] = len(edges)
        edges.append(key)
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(edges), tuple(frozenset(a) for a in adj), edge_id)


def degree_profile(g: Graph, v: int) -> tuple[int, dict[int, int]]:
    """Return (d(v), {k: number of neighbors of degree exactly k})."""
    nbrs = g.neighbors(v)
    counts: dict[int, int] = {}
    for w in nbrs:
        k = g.degree(w)
        counts[k] = counts.get(k, 0) + 1
    return len(nbrs), counts


def n_k(g: Graph, v: int, k: int) -> int:
    """Number of neighbors of v with degree exactly k."""
    return sum(1 for w in g.neighbors(v) if g.degree(w) == k)


def girth(g: Graph) -> float:
    """Length of the shortest cycle; math.inf for forests.

    BFS from every vertex; a non-tree edge at BFS levels d1, d2 closes a
    cycle of length d1 + d2 + 1 through the root.
    """
    best = inf
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for w in g.neighbors(u):
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif parent[u] != w and parent[w] != u:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    q = deque([0])
    while q:
        u = q.popleft()
        for w in g.neighbors(u):
            if w not in seen:
                seen.add(w)
                q.append(w)
    return len(seen) == g.n


def is_2_connected(g: Graph) -> bool:
    """Connected, at least 3 vertices, and no cut vertex (Tarjan lowpoints)."""
    if g.n < 3 or not is_connected(g):
        return False
    disc = [-1] * g.n
    low = [0] * g.n
    timer = 0
    # iterative DFS from vertex 0
    stack: list[tuple[int, int, iter]] = [(0, -1, iter(sorted(g.neighbors(0))))]
    disc[0] = low[0] = timer
    timer += 1
    root_children = 0
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] == -1:
                if v == 0:
                    root_children += 1
                disc[w] = low[w] = timer
                timer += 1
                stack.append((w, v, iter(sorted(g.neighbors(w)))))
                advanced = True
                break
            elif w != parent:
                low[v] = min(low[v], disc[w])
        if not advanced:
            stack.pop()
            if stack:
                pv = stack[-1][0]
                low[pv] = min(low[pv], low[v])
                if pv != 0 and low[v] >= disc[pv]:
                    return False
    return root_children <= 1


def delete_edge(g: Graph, e: int) -> Graph:
    """New graph with edge e removed.

    Surviving edges keep their relative order, so ids below e are unchanged
    and ids above shift down by one (ids stay dense).
    """
    u, v = g.endpoints(e)
    pairs = [p for i, p in enumerate(g.edges) if i != e]
    return build_graph(g.n, pairs)


# --- edge-list text format ------------------------------------------------
#
#   # comment
#   p <n> <m>
#   e <u> <v>        (0-based, m lines)

class ParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def parse_edge_list(text: str) -> Graph:
    n = None
    m = None
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError(lineno, "duplicate 'p' line")
            if len(parts) != 3:
                raise ParseError(lineno, "expected 'p <n> <m>'")
            try:
                n, m = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(lineno, "non-integer in 'p' line") from None
        elif parts[0] == "e":
            if n is None:
                raise ParseError(lineno, "'e' line before 'p' line")
            if len(parts) != 3:
                raise ParseError(lineno, "expected 'e <u> <v>'")
            try:
                pairs.append((int(parts[1]), int(parts[2])))
            except ValueError:
                raise ParseError(lineno, "non-integer vertex id") from None
        else:
            raise ParseError(lineno, f"unknown record {parts[0]!r}")
    if n is None:
        raise ParseError(0, "missing 'p' line")
    if m is not None and m != len(pairs):
        raise ParseError(0, f"'p' line promises {m} edges, found {len(pairs)}")
    try:
        return build_graph(n, pairs)
    except GraphError as exc:
        raise ParseError(0, str(exc)) from None


def format_edge_list(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def load_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as f:
        return parse_edge_list(f.read())
