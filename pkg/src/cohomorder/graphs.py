"""Finite simple graphs as per-vertex adjacency bitsets, plus the graph algebra.

Vertices are the integers ``0..n-1``. Products use a mixed-radix encoding with
the leftmost factor most significant: in ``strong_product(G, H)`` the vertex
``(g, h)`` has index ``g * |V(H)| + h``. Iterated products are left-associated,
so ``power(G, k)`` labels the tuple ``(c_1, ..., c_k)`` by its base-``|V(G)|``
numeral. Disjoint union and join place the left operand's vertices first.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExhausted

DEFAULT_BUDGET = 10**7


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def to_bits(vertices: Iterable[int]) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph. ``adj[v]`` is the neighbourhood bitset of ``v``."""

    n: int
    adj: tuple[int, ...]
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour out of range")
            if (row >> v) & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not (self.adj[u] >> v) & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def _trusted(cls, n: int, adj: Sequence[int], label: str | None = None) -> "Graph":
        # skips the O(E) validation; callers must guarantee the invariants
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", tuple(adj))
        object.__setattr__(g, "label", label)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], label: str | None = None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls._trusted(n, adj, label)

    @property
    def vertex_count(self) -> int:
        return self.n

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def with_label(self, label: str | None) -> "Graph":
        return Graph._trusted(self.n, self.adj, label)

    def __repr__(self) -> str:
        name = f" {self.label!r}" if self.label else ""
        return f"<Graph{name} n={self.n} m={self.edge_count()}>"


# ---------------------------------------------------------------- constructors

def empty_graph(n: int) -> Graph:
    return Graph._trusted(n, [0] * n, f"E_{n}")


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._trusted(n, [full & ~(1 << v) for v in range(n)], f"K_{n}")


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"C_{n}")


def fraction_graph(p: int, q: int) -> Graph:
    """The circulant ``E_{p/q}`` on Z_p: ``i ~ j`` iff their circular distance is in ``[1, q)``.

    ``(p, q)`` is kept as given, so ``E_{4/2}`` and ``E_{2/1}`` are different graphs.
    """
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive integers")
    if p < 2 * q:
        raise ValueError(f"fraction graph needs p/q >= 2, got {p}/{q}")
    adj = [0] * p
    for i in range(p):
        row = 0
        for d in range(1, q):
            row |= 1 << ((i + d) % p)
            row |= 1 << ((i - d) % p)
        adj[i] = row
    return Graph._trusted(p, adj, f"E_{p}/{q}")


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph._trusted(g.n, [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    adj = list(g.adj) + [row << g.n for row in h.adj]
    return Graph._trusted(g.n + h.n, adj)


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides."""
    g_all = (1 << g.n) - 1
    h_all = ((1 << h.n) - 1) << g.n
    adj = [row | h_all for row in g.adj] + [(row << g.n) | g_all for row in h.adj]
    return Graph._trusted(g.n + h.n, adj)


def strong_product(g: Graph, h: Graph) -> Graph:
    nh = h.n
    closed_h = [row | (1 << v) for v, row in enumerate(h.adj)]
    adj = []
    for a in range(g.n):
        outer = list(iter_bits(g.adj[a] | (1 << a)))
        for b in range(nh):
            row = 0
            nb = closed_h[b]
            for a2 in outer:
                row |= nb << (a2 * nh)
            adj.append(row & ~(1 << (a * nh + b)))
    return Graph._trusted(g.n * nh, adj)


def power(g: Graph, k: int) -> Graph:
    """``g`` strong-multiplied with itself ``k`` times (``k >= 1``)."""
    if k < 1:
        raise ValueError("power needs a positive exponent")
    out = g
    for _ in range(k - 1):
        out = strong_product(out, g)
    return out


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph on ``vertices``, relabelled ``0..k-1`` in increasing vertex order."""
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} not in graph")
    pos = {v: i for i, v in enumerate(keep)}
    adj = []
    for v in keep:
        adj.append(to_bits(pos[u] for u in iter_bits(g.adj[v]) if u in pos))
    return Graph._trusted(len(keep), adj)


def rotate(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabel vertex ``v`` as ``perm[v]``."""
    adj = [0] * g.n
    for v in range(g.n):
        adj[perm[v]] = to_bits(perm[u] for u in iter_bits(g.adj[v]))
    return Graph._trusted(g.n, adj)


# ---------------------------------------------------------- independent sets

def is_independent_set(g: Graph, vertices: Iterable[int]) -> bool:
    s = list(vertices)
    bits = to_bits(s)
    if bits.bit_count() != len(s):
        return False
    return all(0 <= v < g.n and not (g.adj[v] & bits) for v in s)


def product_independent_set(g1: Graph, s1: Iterable[int], g2: Graph, s2: Iterable[int]) -> list[int]:
    """``S1 x S2`` as vertices of ``g1 ⊠ g2``; independent whenever both factors are."""
    s2 = sorted(s2)
    return sorted(a * g2.n + b for a in s1 for b in s2)


def _greedy_independent(adj: Sequence[int], cand: int) -> int:
    chosen = 0
    while cand:
        best_v, best_d = -1, None
        for v in iter_bits(cand):
            d = (adj[v] & cand).bit_count()
            if best_d is None or d < best_d:
                best_v, best_d = v, d
        chosen |= 1 << best_v
        cand &= ~(adj[best_v] | (1 << best_v))
    return chosen


def _clique_cover_size(adj: Sequence[int], cand: int) -> int:
    # any clique cover bounds the independence number from above
    count = 0
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        clique = low
        ext = adj[v] & cand
        while ext:
            lw = ext & -ext
            clique |= lw
            ext &= adj[lw.bit_length() - 1]
        cand &= ~clique
        count += 1
    return count


def maximum_independent_set(g: Graph, budget: int = DEFAULT_BUDGET) -> list[int]:
    """An exact maximum independent set by branch and bound.

    Branches on a vertex of maximum degree in the remaining subgraph (lowest
    index on ties); bounds with a greedy clique cover. Vertices of degree <= 1
    are taken without branching. Raises ``BudgetExhausted`` after ``budget``
    search nodes.
    """
    adj = g.adj
    best = _greedy_independent(adj, (1 << g.n) - 1)
    best_size = best.bit_count()
    stack = [((1 << g.n) - 1, 0, 0)]
    nodes = 0
    while stack:
        cand, chosen, size = stack.pop()
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted(f"independence search exceeded {budget} nodes on n={g.n}")
        while cand:
            pick, pick_deg = -1, -1
            low_v = -1
            for v in iter_bits(cand):
                d = (adj[v] & cand).bit_count()
                if d <= 1:
                    low_v = v
                    break
                if d > pick_deg:
                    pick, pick_deg = v, d
            if low_v < 0:
                break
            chosen |= 1 << low_v
            size += 1
            cand &= ~(adj[low_v] | (1 << low_v))
        if not cand:
            if size > best_size:
                best, best_size = chosen, size
            continue
        if size + _clique_cover_size(adj, cand) <= best_size:
            continue
        bit = 1 << pick
        stack.append((cand & ~bit, chosen, size))
        stack.append((cand & ~(adj[pick] | bit), chosen | bit, size + 1))
    return list(iter_bits(best))


def independence_number(g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    return len(maximum_independent_set(g, budget))


# ------------------------------------------------------------------ formats

def _graph6_size(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def to_graph6(g: Graph) -> str:
    """graph6 text (no header, no trailing newline)."""
    bits = []
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            bits.append((row >> i) & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = bytes(
        63 + (bits[k] << 5 | bits[k + 1] << 4 | bits[k + 2] << 3 | bits[k + 3] << 2 | bits[k + 4] << 1 | bits[k + 5])
        for k in range(0, len(bits), 6)
    )
    return (_graph6_size(g.n) + body).decode("ascii")


def from_graph6(text: str | bytes) -> Graph:
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data or any(c < 63 or c > 126 for c in data):
        raise ValueError("invalid graph6 string")
    vals = [c - 63 for c in data]
    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) > 1 and vals[1] == 63:
        if len(vals) < 8:
            raise ValueError("truncated graph6 size field")
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    else:
        if len(vals) < 4:
            raise ValueError("truncated graph6 size field")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
    needed = (n * (n - 1) // 2 + 5) // 6
    body = vals[pos:]
    if len(body) != needed:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {needed}")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph._trusted(n, adj)


def to_json_obj(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def from_json_obj(obj: dict) -> Graph:
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed graph JSON: {exc}") from exc
    return Graph.from_edges(n, edges)


def to_json(g: Graph) -> str:
    return json.dumps(to_json_obj(g))


def from_json(text: str) -> Graph:
    return from_json_obj(json.loads(text))
