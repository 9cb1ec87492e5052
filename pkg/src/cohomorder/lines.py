"""Rational lines that encode the prefix order on binary words, and the
warm-up families (antichain lines, ordering polynomials, the three-line
counterexample).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

from .errors import InvariantViolation
from .rational import fmt, max_bits, parse_rational
from .words import Word, check_word, shortlex_key, word_leq, words_up_to

DEFAULT_INTERVAL = (Fraction(9, 4), Fraction(5, 2))
DEFAULT_SEEDS = (Fraction(4), Fraction(4), Fraction(7, 3))


@dataclass(frozen=True)
class Line:
    a: Fraction
    b: Fraction

    def __call__(self, x) -> Fraction:
        return self.a * x + self.b

    def intersection(self, other: "Line") -> Fraction | None:
        if self.a == other.a:
            return None
        return (other.b - self.b) / (self.a - other.a)

    def __str__(self) -> str:
        return f"{fmt(self.a)}*x + {fmt(self.b)}"


@dataclass(frozen=True)
class TableEntry:
    line: Line
    r: Fraction


@dataclass
class LineTable:
    interval: tuple[Fraction, Fraction]
    entries: dict[Word, TableEntry] = field(default_factory=dict)

    def __contains__(self, w: Word) -> bool:
        return w in self.entries

    def __getitem__(self, w: Word) -> TableEntry:
        return self.entries[w]

    def __len__(self) -> int:
        return len(self.entries)

    def line(self, w: Word) -> Line:
        return self.entries[w].line

    def witness(self, w: Word) -> Fraction:
        return self.entries[w].r

    def max_denominator_bits(self) -> int:
        return max_bits(
            x for e in self.entries.values() for x in (e.line.a, e.line.b, e.r)
        )

    def to_json_obj(self) -> dict:
        return {
            "interval": [fmt(self.interval[0]), fmt(self.interval[1])],
            "entries": {
                w: {"a": fmt(e.line.a), "b": fmt(e.line.b), "r": fmt(e.r)}
                for w, e in sorted(self.entries.items(), key=lambda kv: shortlex_key(kv[0]))
            },
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "LineTable":
        try:
            s, t = (parse_rational(x) for x in obj["interval"])
            entries = {
                check_word(w): TableEntry(Line(parse_rational(e["a"]), parse_rational(e["b"])), parse_rational(e["r"]))
                for w, e in obj["entries"].items()
            }
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed line table JSON: {exc}") from exc
        return cls((s, t), entries)


def _check_seeds(s, t, a, b, r):
    if not (1 <= s < t):
        raise ValueError(f"need 1 <= s < t, got s={s}, t={t}")
    if not (a > 2 and b > 2):
        raise ValueError("seed slope and intercept must exceed 2")
    if not (s < r < t and r > 1):
        raise ValueError(f"seed witness {r} must lie strictly inside ({s}, {t})")


def build_line_table(
    depth: int,
    s=DEFAULT_INTERVAL[0],
    t=DEFAULT_INTERVAL[1],
    seed_a=DEFAULT_SEEDS[0],
    seed_b=DEFAULT_SEEDS[1],
    seed_r=DEFAULT_SEEDS[2],
    max_halvings: int = 4096,
) -> LineTable:
    """Lines and witness values for every word of length <= ``depth``.

    Children are built in sibling pairs, parents in shortlex order. With
    ``mu = 1/r_u`` the children are ``a_u - (1-mu)e, b_u - 2e`` and
    ``a_u - e, b_u - e``, which cross exactly at ``r_u``. ``e`` is halved from
    1/2 until every strict inequality against the earlier lines holds, then
    the witnesses ``r_u + d`` / ``r_u - d`` are placed with ``d`` halved from
    ``(t - r_u)/2``. Hitting ``max_halvings`` means a bug, not bad luck.
    """
    s, t = Fraction(s), Fraction(t)
    seed_a, seed_b, seed_r = Fraction(seed_a), Fraction(seed_b), Fraction(seed_r)
    _check_seeds(s, t, seed_a, seed_b, seed_r)
    if depth < 0:
        raise ValueError("depth must be non-negative")
    table = LineTable((s, t), {"": TableEntry(Line(seed_a, seed_b), seed_r)})
    if depth == 0:
        return table
    for u in words_up_to(depth - 1):
        _add_children(table, u, max_halvings)
    report = verify_line_table(table)
    if report.violations:
        raise InvariantViolation(f"line table failed verification: {report.violations[:3]}")
    return table


def _add_children(table: LineTable, u: Word, max_halvings: int) -> None:
    s, t = table.interval
    ent = table.entries
    au, bu, ru = ent[u].line.a, ent[u].line.b, ent[u].r
    mu = 1 / ru
    prior = [(v, e.line, e.r) for v, e in ent.items()]
    above_at_ru = [(lv(ru), lv) for v, lv, _ in prior if not word_leq(u, v)]
    below_own = [(lv(rv), rv) for _, lv, rv in prior]

    eps = Fraction(1, 2)
    for _ in range(max_halvings):
        l0 = Line(au - (1 - mu) * eps, bu - 2 * eps)
        l1 = Line(au - eps, bu - eps)
        if (
            min(l0.a, l0.b, l1.a, l1.b) > 2
            # every earlier line stays strictly above the children at its own witness
            and all(l0(rv) < val and l1(rv) < val for val, rv in below_own)
            # at r_u the children beat every line that u does not lie below
            and all(l0(ru) > val and l1(ru) > val for val, _ in above_at_ru)
        ):
            break
        eps /= 2
    else:
        raise InvariantViolation(f"epsilon search did not terminate for word {u!r}")

    others = [lv for _, lv in above_at_ru]
    delta = (t - ru) / 2
    for _ in range(max_halvings):
        r0, r1 = ru + delta, ru - delta
        if (
            s < r1
            and r0 < t
            and l0(r0) > l1(r0)
            and l1(r1) > l0(r1)
            and all(l0(r0) > lv(r0) and l1(r1) > lv(r1) for lv in others)
        ):
            break
        delta /= 2
    else:
        raise InvariantViolation(f"witness search did not terminate for word {u!r}")

    ent[u + "0"] = TableEntry(l0, r0)
    ent[u + "1"] = TableEntry(l1, r1)


@dataclass
class LineTableReport:
    pairs_checked: int
    violations: list[tuple[str, Word, Word]]
    max_bits: int

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_line_table(table: LineTable) -> LineTableReport:
    """Check every ordered pair of entries exactly.

    ``"i"``: ``v`` strictly below ``w`` in the prefix order but its coefficients
    are not both smaller. ``"ii"``: ``v`` not below ``w`` but ``l_v(r_v) <= l_w(r_v)``.
    ``"range"``: coefficient <= 2 or witness outside ``(s, t)`` (reported as ``(w, w)``).
    """
    s, t = table.interval
    items = sorted(table.entries.items(), key=lambda kv: shortlex_key(kv[0]))
    violations: list[tuple[str, Word, Word]] = []
    for w, e in items:
        if not (e.line.a > 2 and e.line.b > 2 and s < e.r < t):
            violations.append(("range", w, w))
    for v, ev in items:
        own = ev.line(ev.r)
        for w, ew in items:
            if v == w:
                continue
            if word_leq(v, w):
                if not (ev.line.a < ew.line.a and ev.line.b < ew.line.b):
                    violations.append(("i", v, w))
            elif not own > ew.line(ev.r):
                violations.append(("ii", v, w))
    bits = table.max_denominator_bits() if items else 0
    return LineTableReport(len(items) ** 2, violations, bits)


# ------------------------------------------------------------ warm-ups

def antichain_lines(n_max: int, r: int, s: int) -> list[Line]:
    """``l_n(x) = ((2rn + sn - s)/(rn)) x + (2n+1)/n`` for ``n = 1..n_max``.

    All pass through ``(r/s, 2r/s + 3)`` and slopes increase with ``n``.
    """
    if n_max < 1 or r < 1 or s < 1:
        raise ValueError("n_max, r, s must be positive")
    return [
        Line(Fraction(2 * r * n + s * n - s, r * n), Fraction(2 * n + 1, n)) for n in range(1, n_max + 1)
    ]


def counterexample_lines() -> tuple[Line, Line, Line]:
    return Line(Fraction(6), Fraction(7)), Line(Fraction(3), Fraction(14)), Line(Fraction(0), Fraction(21))


@dataclass(frozen=True)
class RationalPolynomial:
    coefficients: tuple[Fraction, ...]  # constant term first

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __str__(self) -> str:
        return " + ".join(f"{fmt(c)}*x^{i}" for i, c in enumerate(self.coefficients))


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[Fraction]:
    """Monomial coefficients (constant first) of the interpolant through the points."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand the Newton form from the innermost term outwards
    out = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        # out = out * (x - xs[k]) + coef[k]
        shifted = [Fraction(0)] + out[:-1]
        out = [sh - xs[k] * o for sh, o in zip(shifted, out)]
        out[0] += coef[k]
    return out


def ordering_polynomials(
    n: int, points: Iterable, interval: tuple[Fraction, Fraction] | None = None
) -> list[RationalPolynomial]:
    """``n`` polynomials over Q>=2 realizing every ordering of their values.

    The k-th permutation of ``range(n)`` in lexicographic order is assigned to
    the k-th smallest point; there ``p_{sigma[0]} > p_{sigma[1]} > ...``. Each
    polynomial interpolates its ranks, then all receive the same shift
    ``C (1 + x + ... + x^{n!-1})`` with ``C`` the least integer lifting every
    coefficient to at least 2.
    """
    if n < 1:
        raise ValueError("n must be positive")
    pts = sorted(Fraction(x) for x in points)
    m = math.factorial(n)
    if len(pts) != m:
        raise ValueError(f"need exactly {m} points, got {len(pts)}")
    if len(set(pts)) != m:
        raise ValueError("points must be distinct")
    if interval is not None and not all(interval[0] < x < interval[1] for x in pts):
        raise ValueError("points must lie strictly inside the interval")
    targets = [[Fraction(0)] * m for _ in range(n)]
    for k, sigma in enumerate(permutations(range(n))):
        for rank, i in enumerate(sigma):
            targets[i][k] = Fraction(n - rank)
    raw = [interpolate(pts, ys) for ys in targets]
    shift = max(math.ceil(2 - c) for poly in raw for c in poly)
    return [RationalPolynomial(tuple(c + shift for c in poly)) for poly in raw]


def designated_orderings(n: int, points: Iterable) -> list[tuple[Fraction, tuple[int, ...]]]:
    pts = sorted(Fraction(x) for x in points)
    return list(zip(pts, permutations(range(n))))
