"""Exact rational LP (dense two-phase simplex, Bland's rule) and the fractional
clique covering number.

No floating point is used anywhere in this module.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExhausted
from .graphs import Graph, iter_bits
from .rational import fmt

DEFAULT_CLIQUE_BUDGET = 10**6


class LPError(ArithmeticError):
    pass


class LPInfeasible(LPError):
    pass


class LPUnbounded(LPError):
    pass


@dataclass
class LinearProgram:
    """``minimize`` (or maximize) ``objective . x`` s.t. ``matrix[i] . x  senses[i]  rhs[i]``, ``x >= 0``."""

    objective: list[Fraction]
    matrix: list[list[Fraction]]
    rhs: list[Fraction]
    senses: list[str]
    minimize: bool = True

    def __post_init__(self):
        self.objective = [Fraction(c) for c in self.objective]
        self.matrix = [[Fraction(a) for a in row] for row in self.matrix]
        self.rhs = [Fraction(b) for b in self.rhs]
        n = len(self.objective)
        if len(self.matrix) != len(self.rhs) or len(self.senses) != len(self.rhs):
            raise ValueError("constraint matrix, rhs and senses disagree in length")
        for row in self.matrix:
            if len(row) != n:
                raise ValueError("constraint row has wrong width")
        for s in self.senses:
            if s not in ("<=", ">=", "="):
                raise ValueError(f"unknown constraint sense {s!r}")


@dataclass
class LPSolution:
    value: Fraction
    x: list[Fraction]
    pivots: int = 0


def _pivot(rows: list[list[Fraction]], obj: list[Fraction], basis: list[int], r: int, c: int) -> None:
    prow = rows[r]
    piv = prow[c]
    if piv != 1:
        prow[:] = [v / piv for v in prow]
    for i, row in enumerate(rows):
        if i != r:
            f = row[c]
            if f:
                row[:] = [a - f * b for a, b in zip(row, prow)]
    f = obj[c]
    if f:
        obj[:] = [a - f * b for a, b in zip(obj, prow)]
    basis[r] = c


def _run(rows, obj, basis, allowed: Sequence[int], max_pivots: int) -> int:
    pivots = 0
    while True:
        enter = next((j for j in allowed if obj[j] < 0), None)
        if enter is None:
            return pivots
        leave, best = None, None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise LPUnbounded("objective unbounded")
        _pivot(rows, obj, basis, leave, enter)
        pivots += 1
        if pivots > max_pivots:
            raise BudgetExhausted(f"simplex exceeded {max_pivots} pivots")


def rational_simplex(lp: LinearProgram, max_pivots: int = 10**6) -> LPSolution:
    """Solve ``lp`` exactly. Raises ``LPInfeasible`` or ``LPUnbounded``."""
    n = len(lp.objective)
    sign = 1 if lp.minimize else -1
    cost = [sign * c for c in lp.objective]

    # columns: originals, then one slack/surplus per inequality, then artificials
    n_slack = sum(1 for s in lp.senses if s != "=")
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    art_cols: list[int] = []
    slack_at = n
    art_at = n + n_slack
    n_art = 0
    pending = []
    for a_row, b, sense in zip(lp.matrix, lp.rhs, lp.senses):
        a_row = list(a_row)
        if b < 0:
            a_row = [-v for v in a_row]
            b = -b
            sense = {"<=": ">=", ">=": "<=", "=": "="}[sense]
        pending.append((a_row, b, sense))
        if sense != "<=":
            n_art += 1
    width = n + n_slack + n_art
    slack_i = 0
    art_i = 0
    for a_row, b, sense in pending:
        row = a_row + [Fraction(0)] * (n_slack + n_art) + [b]
        if sense != "=":
            row[slack_at + slack_i] = Fraction(1 if sense == "<=" else -1)
            if sense == "<=":
                basis.append(slack_at + slack_i)
            slack_i += 1
        if sense != "<=":
            col = art_at + art_i
            row[col] = Fraction(1)
            basis.append(col)
            art_cols.append(col)
            art_i += 1
        rows.append(row)

    pivots = 0
    if art_cols:
        obj = [Fraction(0)] * (width + 1)
        for col in art_cols:
            obj[col] = Fraction(1)
        for i, bcol in enumerate(basis):
            if bcol in art_cols:
                obj = [a - b for a, b in zip(obj, rows[i])]
        pivots += _run(rows, obj, basis, range(width), max_pivots)
        if -obj[-1] != 0:
            raise LPInfeasible("no feasible point")
        # drive zero-level artificials out of the basis; drop redundant rows
        art_set = set(art_cols)
        i = 0
        while i < len(rows):
            if basis[i] in art_set:
                col = next((j for j in range(art_at) if rows[i][j] != 0), None)
                if col is None:
                    del rows[i]
                    del basis[i]
                    continue
                _pivot(rows, obj, basis, i, col)
            i += 1
        rows = [row[:art_at] + [row[-1]] for row in rows]
    width = art_at

    obj = cost + [Fraction(0)] * (width - n) + [Fraction(0)]
    for i, bcol in enumerate(basis):
        f = obj[bcol]
        if f:
            obj = [a - f * b for a, b in zip(obj, rows[i])]
    pivots += _run(rows, obj, basis, range(width), max_pivots)

    x = [Fraction(0)] * n
    for i, bcol in enumerate(basis):
        if bcol < n:
            x[bcol] = rows[i][-1]
    value = sum((c * v for c, v in zip(lp.objective, x)), Fraction(0))
    return LPSolution(value=value, x=x, pivots=pivots)


# ---------------------------------------------------------------- cliques

def maximal_cliques(g: Graph, budget: int = DEFAULT_CLIQUE_BUDGET) -> list[list[int]]:
    """All inclusion-maximal cliques (Bron-Kerbosch with Tomita pivoting).

    Each clique is sorted; the list is sorted lexicographically.
    """
    adj = g.adj
    out: list[list[int]] = []
    if g.n == 0:
        return out
    stack = [(0, (1 << g.n) - 1, 0)]
    while stack:
        r, p, x = stack.pop()
        if not p:
            if not x:
                out.append(list(iter_bits(r)))
                if len(out) > budget:
                    raise BudgetExhausted(f"more than {budget} maximal cliques")
            continue
        px = p | x
        pivot = max(iter_bits(px), key=lambda u: ((adj[u] & p).bit_count(), -u))
        for v in iter_bits(p & ~adj[pivot]):
            bit = 1 << v
            stack.append((r | bit, p & adj[v], x & adj[v]))
            p &= ~bit
            x |= bit
    out.sort()
    return out


@dataclass
class CoverSolution:
    """Optimal fractional clique cover: ``weights`` maps sorted clique tuples to positive weights."""

    value: Fraction
    weights: dict[tuple[int, ...], Fraction] = field(default_factory=dict)

    def check(self, g: Graph) -> bool:
        cover = [Fraction(0)] * g.n
        for clique, w in self.weights.items():
            if w < 0:
                return False
            for u in clique:
                for v in clique:
                    if u != v and not g.has_edge(u, v):
                        return False
                cover[u] += w
        return all(c >= 1 for c in cover) and sum(self.weights.values(), Fraction(0)) == self.value

    def to_json_obj(self) -> dict:
        return {
            "value": fmt(self.value),
            "cliques": [{"vertices": list(c), "weight": fmt(w)} for c, w in sorted(self.weights.items())],
        }


def fractional_clique_cover(g: Graph, budget: int = DEFAULT_CLIQUE_BUDGET) -> CoverSolution:
    # maximal cliques suffice as columns: moving weight from a clique to any
    # clique containing it keeps every vertex covered at the same cost
    if g.n == 0:
        return CoverSolution(Fraction(0), {})
    cliques = maximal_cliques(g, budget)
    matrix = [[Fraction(1 if v in c else 0) for c in cliques] for v in range(g.n)]
    lp = LinearProgram(
        objective=[Fraction(1)] * len(cliques),
        matrix=matrix,
        rhs=[Fraction(1)] * g.n,
        senses=[">="] * g.n,
    )
    sol = rational_simplex(lp)
    weights = {tuple(c): w for c, w in zip(cliques, sol.x) if w}
    return CoverSolution(sol.value, weights)


def fractional_clique_cover_number(g: Graph, budget: int = DEFAULT_CLIQUE_BUDGET) -> Fraction:
    return fractional_clique_cover(g, budget).value
