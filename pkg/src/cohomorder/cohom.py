"""Cohomomorphisms: verification, backtracking search, circular maps between
fraction graphs, and bounded probes of the asymptotic relation.

A cohomomorphism ``G -> H`` sends distinct non-adjacent vertices to distinct
non-adjacent vertices, i.e. it is a homomorphism of the complements.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import BudgetExhausted
from .graphs import (
    DEFAULT_BUDGET,
    Graph,
    complement,
    empty_graph,
    fraction_graph,
    induced_subgraph,
    iter_bits,
    maximum_independent_set,
    power,
    to_graph6,
)


@dataclass(frozen=True)
class VertexMap:
    source: Graph
    target: Graph
    assignment: tuple[int, ...]

    def to_json_obj(self) -> dict:
        return {"source": to_graph6(self.source), "target": to_graph6(self.target), "map": list(self.assignment)}


def is_cohomomorphism(g: Graph, h: Graph, assignment: Sequence[int]) -> bool:
    if len(assignment) != g.n:
        return False
    if any(not 0 <= t < h.n for t in assignment):
        return False
    # group sources by image; every non-neighbour of a source mapped to t must
    # land outside the closed neighbourhood of t
    pre: dict[int, int] = {}
    for u, t in enumerate(assignment):
        pre[t] = pre.get(t, 0) | (1 << u)
    full = (1 << g.n) - 1
    for t, sources in pre.items():
        bad = 0
        for t2 in iter_bits(h.adj[t] | (1 << t)):
            bad |= pre.get(t2, 0)
        if not bad:
            continue
        for u in iter_bits(sources):
            if full & ~g.adj[u] & ~(1 << u) & bad:
                return False
    return True


def verify_cohomomorphism(m: VertexMap) -> bool:
    return is_cohomomorphism(m.source, m.target, m.assignment)


def compose(first: VertexMap, second: VertexMap) -> VertexMap:
    if first.target != second.source:
        raise ValueError("maps do not compose: target/source mismatch")
    return VertexMap(first.source, second.target, tuple(second.assignment[t] for t in first.assignment))


@lru_cache(maxsize=64)
def _cached_mis(g: Graph, budget: int) -> tuple[int, ...]:
    return tuple(maximum_independent_set(g, budget))


def _edgeless_map(g: Graph, h: Graph, budget: int) -> VertexMap | None:
    s = _cached_mis(h, budget)
    if len(s) < g.n:
        return None
    return VertexMap(g, h, tuple(s[: g.n]))


def find_cohomomorphism(g: Graph, h: Graph, budget: int = DEFAULT_BUDGET) -> VertexMap | None:
    """A verified cohomomorphism ``g -> h``, or ``None`` if none exists.

    Edgeless sources go through the independence number of ``h``. Otherwise a
    backtracking homomorphism search between the complements with forward
    checking; the next source vertex is the one with the fewest remaining
    targets (lowest index on ties), targets are tried in increasing order.
    Raises ``BudgetExhausted`` rather than answering ``None`` when the budget
    runs out.
    """
    if g.n == 0:
        return VertexMap(g, h, ())
    if g.edge_count() == 0:
        found = _edgeless_map(g, h, budget)
    else:
        found = _backtrack(g, h, budget)
    if found is not None and not verify_cohomomorphism(found):
        raise AssertionError("search produced a map that fails verification")
    return found


def _backtrack(g: Graph, h: Graph, budget: int) -> VertexMap | None:
    gc = complement(g).adj
    hc = complement(h).adj
    n = g.n
    all_t = (1 << h.n) - 1
    has_edge_t = 0
    for t in range(h.n):
        if hc[t]:
            has_edge_t |= 1 << t
    doms = [has_edge_t if gc[u] else all_t for u in range(n)]
    if any(d == 0 for d in doms):
        return None
    assign = [-1] * n
    nodes = 0

    def solve(doms: list[int], left: int) -> bool:
        nonlocal nodes
        if left == 0:
            return True
        u, best = -1, None
        for v in range(n):
            if assign[v] < 0:
                c = doms[v].bit_count()
                if best is None or c < best:
                    u, best = v, c
                    if c <= 1:
                        break
        nbrs = [v for v in iter_bits(gc[u]) if assign[v] < 0]
        for t in iter_bits(doms[u]):
            nodes += 1
            if nodes > budget:
                raise BudgetExhausted(f"cohomomorphism search exceeded {budget} nodes")
            allowed = hc[t]
            new = doms
            ok = True
            if nbrs:
                new = list(doms)
                for v in nbrs:
                    d = new[v] & allowed
                    if not d:
                        ok = False
                        break
                    new[v] = d
            if not ok:
                continue
            assign[u] = t
            if solve(new, left - 1):
                return True
            assign[u] = -1
        return False

    limit = sys.getrecursionlimit()
    if limit < n + 100:
        sys.setrecursionlimit(n + 100)
    try:
        if solve(doms, n):
            return VertexMap(g, h, tuple(assign))
        return None
    finally:
        sys.setrecursionlimit(limit)


def circular_floor_map(p: int, r: int) -> tuple[int, ...]:
    """``i -> floor(i*r/p)`` on Z_p.

    For ``p/q <= r/s`` this is a cohomomorphism ``E_{p/q} -> E_{r/s}``: a
    non-adjacent pair at distance ``d`` in ``[q, p-q]`` lands at distance
    between ``floor(d*r/p) >= s`` and ``r - floor(q*r/p) <= r - s``.
    """
    return tuple(i * r // p for i in range(p))


def circular_map(p: int, q: int, r: int, s: int, budget: int = DEFAULT_BUDGET) -> VertexMap | None:
    src = fraction_graph(p, q)
    dst = fraction_graph(r, s)
    if Fraction(p, q) > Fraction(r, s):
        return None
    cand = VertexMap(src, dst, circular_floor_map(p, r))
    if verify_cohomomorphism(cand):
        return cand
    return find_cohomomorphism(src, dst, budget)


# ----------------------------------------------------- asymptotic probes

def is_independent_in_power(base: Graph, k: int, vertices: Sequence[int]) -> bool:
    """Independence of ``vertices`` in ``base^⊠k`` without materialising the power.

    Two tuples are adjacent iff they differ and agree-or-are-adjacent in every
    coordinate.
    """
    nb = base.n
    total = nb**k
    digits = []
    seen = set()
    for x in vertices:
        if not 0 <= x < total or x in seen:
            return False
        seen.add(x)
        ds = []
        for _ in range(k):
            x, d = divmod(x, nb)
            ds.append(d)
        digits.append(ds)
    closed = [row | (1 << v) for v, row in enumerate(base.adj)]
    for i in range(len(digits)):
        a = digits[i]
        for j in range(i):
            b = digits[j]
            if all((closed[x] >> y) & 1 for x, y in zip(a, b)):
                return False
    return True


def power_root(g: Graph) -> tuple[Graph, int]:
    """Smallest ``(B, m)`` with ``g == B^⊠m`` under the mixed-radix labelling.

    In that labelling the vertices ``0..|B|-1`` induce a copy of ``B``, so each
    candidate root is checked by re-multiplying it.
    """
    for b in range(2, g.n):
        m, size = 1, b
        while size < g.n:
            size *= b
            m += 1
        if size != g.n or m < 2:
            continue
        root = induced_subgraph(g, range(b))
        if power(root, m) == g:
            return root, m
    return g, 1


@dataclass
class ProbeResult:
    k: int | None
    witness: list[int] | None = None
    method: str = ""
    undecided: list[int] = field(default_factory=list)
    # the whole verified independent set the witness was cut from, if any
    product_set: list[int] | None = None


def _power_independent_sets(base: Graph, length: int, exact_cap: int, budget: int) -> list[int]:
    # exact maximum independent sets of small powers, combined by products
    pieces: dict[int, tuple[int, ...]] = {}
    j = 1
    while j <= length and base.n**j <= exact_cap:
        pieces[j] = _cached_mis(power(base, j), budget)
        j += 1
    if not pieces:
        return []
    best: dict[int, list[int]] = {0: [0]}
    for total in range(1, length + 1):
        choice = None
        for j, s in pieces.items():
            if j <= total and total - j in best:
                size = len(s) * len(best[total - j])
                if choice is None or size > choice[0]:
                    choice = (size, j)
        if choice is None:
            continue
        j = choice[1]
        rest = best[total - j]
        scale = base.n ** (total - j)
        best[total] = sorted(a * scale + b for a in pieces[j] for b in rest)
    return best.get(length, [])


def probe_power_relation(
    h: Graph,
    g: Graph,
    n: int,
    k_max: int,
    *,
    g_base: tuple[Graph, int] | None = None,
    cap: int = 5000,
    exact_cap: int = 128,
    budget: int = DEFAULT_BUDGET,
) -> ProbeResult:
    """Smallest ``k <= k_max`` with a verified cohomomorphism ``h^⊠n -> g^⊠(n+k)``.

    ``g_base=(B, m)`` declares ``g == B^⊠m``, which lets independent sets of
    large powers be assembled from exact sets of small powers of ``B``. Values
    of ``k`` that could neither be certified nor refuted are listed in
    ``undecided``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    base, mult = g_base if g_base is not None else power_root(g)
    if g_base is not None and base.n**mult != g.n:
        raise ValueError("g_base does not match g")
    if h == g:
        return ProbeResult(0, None, "identity")
    undecided = []
    if h.edge_count() == 0:
        need = h.n**n
        for k in range(k_max + 1):
            length = mult * (n + k)
            s = _power_independent_sets(base, length, exact_cap, budget)
            if len(s) >= need:
                if not is_independent_in_power(base, length, s):
                    raise AssertionError("product independent set failed verification")
                return ProbeResult(k, s[:need], "product-independent-set", undecided, s)
            if base.n**length <= exact_cap:
                if len(_cached_mis(power(base, length), budget)) >= need:
                    raise AssertionError("exact independent set larger than product bound")
                continue
            undecided.append(k)
        return ProbeResult(None, None, "", undecided)
    for k in range(k_max + 1):
        hn_size = h.n**n
        gn_size = g.n ** (n + k)
        if hn_size > cap or gn_size > cap:
            undecided.append(k)
            continue
        m = find_cohomomorphism(power(h, n), power(g, n + k), budget)
        if m is not None:
            return ProbeResult(k, None, "search", undecided)
    return ProbeResult(None, None, "", undecided)


def power_relation_probe(h: Graph, g: Graph, n: int, k_max: int, **kwargs) -> int | None:
    return probe_power_relation(h, g, n, k_max, **kwargs).k


__all__ = [
    "VertexMap",
    "ProbeResult",
    "circular_floor_map",
    "circular_map",
    "compose",
    "empty_graph",
    "find_cohomomorphism",
    "is_cohomomorphism",
    "is_independent_in_power",
    "power_relation_probe",
    "probe_power_relation",
    "verify_cohomomorphism",
]
