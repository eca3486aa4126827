"""Edge-coloring state and two-color (Kempe) machinery.

Colors are 1-based integers from the palette {1, ..., k}; 0 means uncolored
in serialized files.  Colorings are value-semantic: operations return new
values and never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, GraphError


class ColoringError(ValueError):
    pass


@dataclass(frozen=True)
class EdgeColoring:
    """Partial assignment of palette colors to edge ids."""

    k: int
    assignment: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        for e, c in self.assignment.items():
            if not 1 <= c <= self.k:
                raise ColoringError(f"color {c} on edge {e} outside [1..{self.k}]")

    def get(self, e: int) -> int | None:
        return self.assignment.get(e)

    def with_edge(self, e: int, color: int) -> "EdgeColoring":
        new = dict(self.assignment)
        new[e] = color
        return EdgeColoring(self.k, new)

    def without_edge(self, e: int) -> "EdgeColoring":
        new = dict(self.assignment)
        new.pop(e, None)
        return EdgeColoring(self.k, new)

    def is_total(self, g: Graph) -> bool:
        return len(self.assignment) == g.m

    def colors_used(self) -> set[int]:
        return set(self.assignment.values())


@dataclass(frozen=True)
class ColorSets:
    """F_v: colors at v; C_v: palette complement; S_uv: F_v minus phi(uv)."""

    present: frozenset[int]
    free: frozenset[int]
    present_minus_edge: frozenset[int] | None = None


@dataclass(frozen=True)
class BichromaticTrace:
    """Maximal two-color component: alternating open path or even cycle."""

    colors: tuple[int, int]
    vertices: tuple[int, ...]
    is_cycle: bool


def _color_at(g: Graph, c: EdgeColoring, v: int) -> dict[int, int]:
    """Map color -> neighbor for colored edges at v (proper colorings only)."""
    out: dict[int, int] = {}
    for w in g.neighbors(v):
        col = c.get(g.edge_id(v, w))
        if col is not None:
            out[col] = w
    return out


def is_proper(g: Graph, c: EdgeColoring) -> bool:
    """True iff no vertex sees the same color on two incident edges."""
    return properness_violation(g, c) is None


def properness_violation(g: Graph, c: EdgeColoring) -> int | None:
    """Return a vertex with two same-colored incident edges, or None."""
    for v in range(g.n):
        seen: set[int] = set()
        for w in g.neighbors(v):
            col = c.get(g.edge_id(v, w))
            if col is None:
                continue
            if col in seen:
                return v
            seen.add(col)
    return None


def color_sets(g: Graph, c: EdgeColoring, v: int, uv: int | None = None) -> ColorSets:
    present = frozenset(
        col for w in g.neighbors(v)
        if (col := c.get(g.edge_id(v, w))) is not None
    )
    free = frozenset(range(1, c.k + 1)) - present
    minus = None
    if uv is not None:
        a, b = g.endpoints(uv)
        if v not in (a, b):
            raise ColoringError(f"edge {uv} not incident to vertex {v}")
        col = c.get(uv)
        if col is None:
            raise ColoringError(f"edge {uv} is uncolored")
        minus = present - {col}
    return ColorSets(present, free, minus)


def trace_bichromatic(
    g: Graph, c: EdgeColoring, alpha: int, beta: int, v: int
) -> BichromaticTrace | None:
    """The maximal (alpha,beta)-component containing v, or None.

    Requires a proper coloring (so each vertex has at most one alpha edge and
    one beta edge, and the component is a path or cycle by Fact-1 structure).
    Cycle traces start at v and head toward its lower-numbered neighbor.
    """
    if alpha == beta:
        raise ColoringError("the two trace colors must differ")
    at_v = _bichrom_nbrs(g, c, v, alpha, beta)
    if not at_v:
        return None

    def walk(start: int, first: int) -> list[int]:
        # Properness bounds each vertex to one alpha and one beta edge, so
        # the continuation color pins the next step uniquely.
        seq = [start, first]
        prev, cur = start, first
        while True:
            prev_col = c.get(g.edge_id(prev, cur))
            want = beta if prev_col == alpha else alpha
            nxt = _color_at(g, c, cur).get(want)
            if nxt is None:
                return seq
            seq.append(nxt)
            prev, cur = cur, nxt
            if cur == start:
                return seq  # closed a cycle

    if len(at_v) == 2:
        # possibly a cycle; orient toward the lower-numbered neighbor
        first = min(at_v)
        seq = walk(v, first)
        if seq[-1] == v and len(seq) > 2:
            return BichromaticTrace((alpha, beta), tuple(seq), True)
        # open path through v: extend the other way and stitch
        other = max(at_v)
        back = walk(v, other)
        full = list(reversed(back))[:-1] + seq
        return BichromaticTrace((alpha, beta), tuple(full), False)
    seq = walk(v, at_v[0])
    return BichromaticTrace((alpha, beta), tuple(seq), False)


def _bichrom_nbrs(g: Graph, c: EdgeColoring, v: int, a: int, b: int) -> list[int]:
    out = []
    for w in sorted(g.neighbors(v)):
        col = c.get(g.edge_id(v, w))
        if col == a or col == b:
            out.append(w)
    return out


def has_bichromatic_cycle(g: Graph, c: EdgeColoring) -> BichromaticTrace | None:
    """Some bichromatic cycle if one exists; None means the coloring is acyclic.

    Rejects improper colorings, naming the violating vertex.
    """
    bad = properness_violation(g, c)
    if bad is not None:
        raise ColoringError(f"coloring is not proper at vertex {bad}")
    used = sorted(c.colors_used())
    for i, a in enumerate(used):
        for b in used[i + 1:]:
            cyc = _find_cycle_two_colors(g, c, a, b)
            if cyc is not None:
                return cyc
    return None


def _find_cycle_two_colors(
    g: Graph, c: EdgeColoring, a: int, b: int
) -> BichromaticTrace | None:
    seen: set[int] = set()
    for v in range(g.n):
        if v in seen:
            continue
        nbrs = _bichrom_nbrs(g, c, v, a, b)
        if len(nbrs) < 2:
            continue
        trace = trace_bichromatic(g, c, a, b, v)
        if trace is None:
            continue
        seen.update(trace.vertices)
        if trace.is_cycle:
            return trace
    return None


def exists_critical_path(
    g: Graph, c: EdgeColoring, alpha: int, beta: int, u: int, v: int
) -> bool:
    """True iff the maximal (alpha,beta) path leaving u on an alpha edge
    terminates at v through an alpha edge.

    Walked from u, per the definition fixing the start-edge color at u.
    The path must actually end at v: if it passes through v and continues,
    there is no critical path.
    """
    if alpha == beta:
        raise ColoringError("the two path colors must differ")
    at_u = _color_at(g, c, u)
    if alpha not in at_u:
        return False
    cur = at_u[alpha]
    last_col = alpha
    while True:
        if cur == u:
            return False  # closed into a cycle, not a u..v path
        want = beta if last_col == alpha else alpha
        nxt = _color_at(g, c, cur).get(want)
        if nxt is None:
            return cur == v and last_col == alpha
        cur, last_col = nxt, want


def swap_two_colors_on_component(
    g: Graph, c: EdgeColoring, alpha: int, beta: int, v: int
) -> EdgeColoring:
    """Exchange alpha and beta on the maximal (alpha,beta) component at v.

    Rejects cycle components: swapping a cycle is a no-op that would mask
    caller bugs.
    """
    trace = trace_bichromatic(g, c, alpha, beta, v)
    if trace is None:
        return c
    if trace.is_cycle:
        raise ColoringError("refusing to swap colors on a cycle component")
    new = dict(c.assignment)
    for x, y in zip(trace.vertices, trace.vertices[1:]):
        e = g.edge_id(x, y)
        new[e] = beta if new[e] == alpha else alpha
    return EdgeColoring(c.k, new)


# --- coloring file format ---------------------------------------------------
#
#   k <K>
#   <u> <v> <color>     (color 0 = uncolored)

def parse_coloring(text: str, g: Graph) -> EdgeColoring:
    k = None
    assignment: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "k":
            if len(parts) != 2:
                raise ColoringError(f"line {lineno}: expected 'k <K>'")
            k = int(parts[1])
        else:
            if k is None:
                raise ColoringError(f"line {lineno}: edge line before 'k' header")
            if len(parts) != 3:
                raise ColoringError(f"line {lineno}: expected '<u> <v> <color>'")
            u, v, col = int(parts[0]), int(parts[1]), int(parts[2])
            try:
                e = g.edge_id(u, v)
            except GraphError:
                raise ColoringError(f"line {lineno}: edge {u}-{v} not in graph") from None
            if col == 0:
                continue
            if not 1 <= col <= k:
                raise ColoringError(f"line {lineno}: color {col} outside [1..{k}]")
            if e in assignment:
                raise ColoringError(f"line {lineno}: edge {u}-{v} colored twice")
            assignment[e] = col
    if k is None:
        raise ColoringError("missing 'k' header")
    return EdgeColoring(k, assignment)


def format_coloring(g: Graph, c: EdgeColoring) -> str:
    lines = [f"k {c.k}"]
    for e, (u, v) in enumerate(g.edges):
        lines.append(f"{u} {v} {c.get(e) or 0}")
    return "\n".join(lines) + "\n"
