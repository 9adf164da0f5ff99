"""Labeled multigraphs, two-terminal gadgets and edge substitution.

Graph text format::

    n m
    a b          # m lines, 0 <= a < b < n, parallel edges repeat
    terminals u v  # optional, marks a gadget
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb


class GraphFormatError(ValueError):
    pass


@dataclass(frozen=True, init=False)
class Multigraph:
    """Vertices ``0..n_vertices-1`` and a sorted multiset of edges ``(a, b)``, ``a < b``."""

    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n_vertices: int, edges=()):
        if n_vertices < 1:
            raise ValueError("a graph needs at least one vertex")
        canon = []
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError(f"self-loop at vertex {a} is not allowed")
            if not (0 <= a < n_vertices and 0 <= b < n_vertices):
                raise ValueError(f"edge ({a}, {b}) out of range for {n_vertices} vertices")
            canon.append((a, b) if a < b else (b, a))
        canon.sort()
        object.__setattr__(self, "n_vertices", n_vertices)
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def endpoint_lists(self) -> tuple[list[int], list[int]]:
        return [a for a, _ in self.edges], [b for _, b in self.edges]


@dataclass(frozen=True)
class Gadget:
    graph: Multigraph
    u: int
    v: int

    def __post_init__(self):
        n = self.graph.n_vertices
        if self.u == self.v:
            raise ValueError("gadget terminals must differ")
        if not (0 <= self.u < n and 0 <= self.v < n):
            raise ValueError("gadget terminal out of range")

    def terminals_adjacent(self) -> bool:
        t = (min(self.u, self.v), max(self.u, self.v))
        return t in self.graph.edges


def _components(n: int, edges) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return [find(x) for x in range(n)]


def component_count(g: Multigraph) -> int:
    return len(set(_components(g.n_vertices, g.edges)))


def is_connected(g: Multigraph) -> bool:
    return component_count(g) == 1


def is_simple(g: Multigraph) -> bool:
    return len(set(g.edges)) == len(g.edges)


def complete(n: int) -> Multigraph:
    return Multigraph(n, combinations(range(n), 2))


def gadget_hn(n: int) -> Gadget:
    """``K_n`` minus the edge ``01``; terminals 0 and 1. ``n = 2`` is two isolated vertices."""
    if n < 2:
        raise ValueError("H_n needs n >= 2")
    edges = [e for e in combinations(range(n), 2) if e != (0, 1)]
    return Gadget(Multigraph(n, edges), 0, 1)


def cycle(n: int) -> Multigraph:
    if n < 2:
        raise ValueError("cycle needs n >= 2")
    return Multigraph(n, [(i, (i + 1) % n) for i in range(n)])


def bundle_cycle(n: int, b: int) -> Multigraph:
    """``cycle(n)`` with every edge replaced by ``b`` parallel edges."""
    if n < 2 or b < 1:
        raise ValueError("bundle_cycle needs n >= 2 and b >= 1")
    return Multigraph(n, [(i, (i + 1) % n) for i in range(n) for _ in range(b)])


def path(n: int) -> Multigraph:
    return Multigraph(n, [(i, i + 1) for i in range(n - 1)])


def edge_substitute(g: Multigraph, h: Gadget, require_simple: bool = False) -> Multigraph:
    """Replace each edge ``ab`` of ``g`` by a fresh copy of ``h`` with ``u -> a``, ``v -> b``.

    Internal vertices of the copy for the j-th edge (canonical order) are
    numbered from ``n + j * (|V(h)| - 2)`` in increasing label order.
    """
    if not is_connected(h.graph):
        raise ValueError("gadget graph must be connected")
    if not is_connected(g):
        raise ValueError("host graph must be connected")
    if require_simple and h.terminals_adjacent():
        raise ValueError("adjacent terminals give parallel edges")
    inner = [x for x in range(h.graph.n_vertices) if x not in (h.u, h.v)]
    per = len(inner)
    n = g.n_vertices
    edges = []
    for j, (a, b) in enumerate(g.edges):
        label = {h.u: a, h.v: b}
        for k, x in enumerate(inner):
            label[x] = n + j * per + k
        edges.extend((label[x], label[y]) for x, y in h.graph.edges)
    return Multigraph(n + g.n_edges * per, edges)


def substituted_size(n_vertices: int, n_edges: int, h: Gadget) -> tuple[int, int]:
    """Vertex and edge counts of ``G[H]`` from the counts of ``G``."""
    return n_vertices + n_edges * (h.graph.n_vertices - 2), n_edges * h.graph.n_edges


def enumerate_connected_simple(n_max: int) -> list[Multigraph]:
    """All labeled connected simple graphs on 2..n_max vertices."""
    if n_max > 6:
        raise ValueError("enumeration is limited to n_max <= 6")
    out = []
    for n in range(2, n_max + 1):
        pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            if len(edges) < n - 1:
                continue
            g = Multigraph(n, edges)
            if is_connected(g):
                out.append(g)
    return out


def n_edges_hn(n: int) -> int:
    return comb(n, 2) - 1


# -- text format -----------------------------------------------------------


def dump_graph(g) -> str:
    """Serialize a Multigraph or Gadget to the text format (LF, trailing newline)."""
    gadget = g if isinstance(g, Gadget) else None
    graph = gadget.graph if gadget else g
    lines = [f"{graph.n_vertices} {graph.n_edges}"]
    lines += [f"{a} {b}" for a, b in graph.edges]
    if gadget:
        lines.append(f"terminals {gadget.u} {gadget.v}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str):
    """Parse the text format; returns a Gadget when a terminals line is present."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise GraphFormatError("empty graph file")

    def ints(line, k, what):
        parts = line.split(" ")
        if len(parts) != k or line != line.strip():
            raise GraphFormatError(f"malformed {what} line: {line!r}")
        try:
            return [int(x) for x in parts]
        except ValueError:
            raise GraphFormatError(f"malformed {what} line: {line!r}") from None

    n, m = ints(lines[0], 2, "header")
    if n < 1 or m < 0:
        raise GraphFormatError("header needs n >= 1 and m >= 0")
    body = lines[1:]
    terminals = None
    if len(body) == m + 1 and body[-1].startswith("terminals "):
        terminals = ints(body[-1][len("terminals "):], 2, "terminals")
        body = body[:-1]
    if len(body) != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(body)}")
    edges = []
    for line in body:
        a, b = ints(line, 2, "edge")
        if not 0 <= a < b < n:
            raise GraphFormatError(f"edge line needs 0 <= a < b < n: {line!r}")
        edges.append((a, b))
    g = Multigraph(n, edges)
    if terminals is None:
        return g
    try:
        return Gadget(g, *terminals)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None
