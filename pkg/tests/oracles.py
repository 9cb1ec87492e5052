"""Independent reference implementations used as test oracles.

Nothing here imports the algorithms under test: graphs are passed around as
(n, edge set) or via networkx, and LPs are solved by enumerating vertices.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import networkx as nx
import numpy as np
from scipy.optimize import linprog


def edge_set(g) -> set[frozenset]:
    return {frozenset(e) for e in g.edges()}


def to_nx(g) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def brute_alpha(n: int, edges: set[frozenset]) -> int:
    best = 0
    for mask in range(1 << n):
        verts = [i for i in range(n) if mask >> i & 1]
        if len(verts) <= best:
            continue
        if all(frozenset(p) not in edges for p in combinations(verts, 2)):
            best = len(verts)
    return best


def brute_cohom_exists(gn, gedges, hn, hedges) -> bool:
    """Exhaustive search over all maps; tiny graphs only."""
    non_edges = [(u, v) for u, v in combinations(range(gn), 2) if frozenset((u, v)) not in gedges]
    for f in product(range(hn), repeat=gn):
        if all(f[u] != f[v] and frozenset((f[u], f[v])) not in hedges for u, v in non_edges):
            return True
    return False


def fraction_graph_edges(p: int, q: int) -> set[frozenset]:
    out = set()
    for i, j in combinations(range(p), 2):
        d = min((i - j) % p, (j - i) % p)
        if d < q:
            out.add(frozenset((i, j)))
    return out


def strong_product_edges(n1, e1, n2, e2) -> set[frozenset]:
    out = set()
    verts = [(a, b) for a in range(n1) for b in range(n2)]
    for x, y in combinations(verts, 2):
        ok1 = x[0] == y[0] or frozenset((x[0], y[0])) in e1
        ok2 = x[1] == y[1] or frozenset((x[1], y[1])) in e2
        if ok1 and ok2:
            out.add(frozenset((x[0] * n2 + x[1], y[0] * n2 + y[1])))
    return out


# ----------------------------------------------------------------- LP oracle

def _solve_square(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    n = len(a)
    m = [row[:] + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


def vertex_enumeration(objective, matrix, rhs, senses, minimize=True):
    """Optimum over x >= 0 by trying every basis of tight constraints.

    Returns ``None`` when the polytope is empty. Callers keep the region
    bounded (box constraints) so that the optimum is attained at a vertex.
    """
    n = len(objective)
    rows = [(list(map(Fraction, r)), Fraction(b), s) for r, b, s in zip(matrix, rhs, senses)]
    bounds = [([Fraction(int(i == j)) for j in range(n)], Fraction(0), ">=") for i in range(n)]
    cons = rows + bounds

    def feasible(x):
        for r, b, s in cons:
            v = sum(c * xi for c, xi in zip(r, x))
            if (s == "<=" and v > b) or (s == ">=" and v < b) or (s == "=" and v != b):
                return False
        return True

    best = None
    for idx in combinations(range(len(cons)), n):
        x = _solve_square([cons[i][0] for i in idx], [cons[i][1] for i in idx])
        if x is None or not feasible(x):
            continue
        val = sum(Fraction(c) * xi for c, xi in zip(objective, x))
        if best is None or (val < best if minimize else val > best):
            best = val
    return best


def float_clique_cover(g) -> float:
    """Fractional clique cover number via scipy over all maximal cliques (networkx)."""
    if g.n == 0:
        return 0.0
    cliques = list(nx.find_cliques(to_nx(g)))
    a = np.zeros((g.n, len(cliques)))
    for j, c in enumerate(cliques):
        a[c, j] = 1.0
    res = linprog(np.ones(len(cliques)), A_ub=-a, b_ub=-np.ones(g.n), bounds=(0, None), method="highs")
    assert res.status == 0
    return float(res.fun)


def brute_dyadic(p: int, q: int, eps: Fraction) -> tuple[int, int]:
    """Scan n upward and every admissible q', keeping the least q' that qualifies."""
    target = Fraction(p, q)
    n = 1
    while True:
        top = 2 ** n
        hits = [qq for qq in range(1, top // 2 + 1) if target - eps <= Fraction(top, qq) <= target]
        if hits:
            # largest value below the target comes from the smallest q'
            return n, min(hits)
        n += 1


def closure(n: int, pairs) -> set[tuple[int, int]]:
    rel = {(i, i) for i in range(n)} | set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel
