"""Independent reference computations for the test suite.

Nothing here touches the package's kernels: connectivity comes from networkx
and expansion from sympy.
"""

from itertools import combinations

import networkx as nx
import sympy

q = sympy.Symbol("q")


def expand_coeffs(expr):
    """Integer coefficient list (low degree first) of a sympy expression in q."""
    poly = sympy.Poly(sympy.expand(expr), q)
    return [int(c) for c in reversed(poly.all_coeffs())] if not poly.is_zero else []


def _nx_graph(n, edges):
    g = nx.MultiGraph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return g


def rel_oracle(n, edges):
    """Rel(G; q) as a sympy expression, by enumerating subsets with networkx."""
    m = len(edges)
    total = 0
    for k in range(m + 1):
        for sub in combinations(range(m), k):
            if nx.is_connected(_nx_graph(n, [edges[i] for i in sub])):
                total += (1 - q) ** k * q ** (m - k)
    return total


def split_oracle(n, edges, u, v):
    m = len(edges)
    total = 0
    for k in range(m + 1):
        for sub in combinations(range(m), k):
            g = _nx_graph(n, [edges[i] for i in sub])
            comps = list(nx.connected_components(g))
            if len(comps) == 2 and not nx.has_path(g, u, v):
                total += (1 - q) ** k * q ** (m - k)
    return total


def f_oracle(n, edges):
    """F-polynomial coefficients: i-edge deletions that keep the graph connected."""
    m = len(edges)
    out = []
    for i in range(m + 1):
        cnt = 0
        for sub in combinations(range(m), i):
            keep = [e for j, e in enumerate(edges) if j not in sub]
            if nx.is_connected(_nx_graph(n, keep)):
                cnt += 1
        out.append(cnt)
    while out and out[-1] == 0:
        out.pop()
    return out
