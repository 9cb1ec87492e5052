"""Derivation trees for the value ``p/q`` of the complementary projective rank
on dyadic fraction graphs ``E_{2^n/q}``, and dyadic approximation from below.

Rules: ``Base`` (q = 1, value p), ``Halve`` ((p, q) from (p/2, q/2), q even),
``OddSplit`` ((p, q) from (p, q-1) and (p, q+1), q odd, 2 <= q <= p/2 - 1).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .rational import fmt

BASE, HALVE, ODD_SPLIT = "Base", "Halve", "OddSplit"


@dataclass(frozen=True)
class DerivationTree:
    p: int
    q: int
    rule: str
    children: tuple["DerivationTree", ...] = ()
    value: Fraction = field(default=Fraction(0))

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()

    def leaves(self):
        return [n for n in self.nodes() if not n.children]

    def to_json_obj(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "rule": self.rule,
            "value": fmt(self.value),
            "children": [c.to_json_obj() for c in self.children],
        }

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        lines = [f"{pad}E_{{{self.p}/{self.q}}}  value {fmt(self.value)}  [{self.rule}]"]
        lines.extend(c.render(indent + 1) for c in self.children)
        return "\n".join(lines)


def _is_power_of_two(p: int) -> bool:
    return p >= 2 and p & (p - 1) == 0


def xif_derivation(p: int, q: int) -> DerivationTree:
    if not _is_power_of_two(p):
        raise ValueError(f"p must be a power of two >= 2, got {p}")
    if not 1 <= q <= p // 2:
        raise ValueError(f"need 1 <= q <= p/2, got q={q} for p={p}")
    tree = _derive(p, q)
    problems = validate_derivation(tree)
    if problems:
        raise AssertionError(f"derivation failed its own checks: {problems}")
    return tree


def _derive(p: int, q: int) -> DerivationTree:
    value = Fraction(p, q)
    if q == 1:
        return DerivationTree(p, q, BASE, (), value)
    if q % 2 == 0:
        return DerivationTree(p, q, HALVE, (_derive(p // 2, q // 2),), value)
    return DerivationTree(p, q, ODD_SPLIT, (_derive(p, q - 1), _derive(p, q + 1)), value)


def validate_derivation(tree: DerivationTree) -> list[str]:
    """Every rule side-condition, node by node; empty list means valid."""
    errs = []
    for node in tree.nodes():
        p, q = node.p, node.q
        tag = f"({p},{q})"
        if node.value != Fraction(p, q):
            errs.append(f"{tag}: claimed value {node.value} != p/q")
        if q < 1 or Fraction(p, q) < 2:
            errs.append(f"{tag}: not a fraction graph")
        kids = [(c.p, c.q) for c in node.children]
        if node.rule == BASE:
            if q != 1 or kids:
                errs.append(f"{tag}: Base needs q = 1 and no premises")
        elif node.rule == HALVE:
            if q % 2 or p % 2 or kids != [(p // 2, q // 2)]:
                errs.append(f"{tag}: Halve needs even p, q and premise (p/2, q/2)")
        elif node.rule == ODD_SPLIT:
            if q % 2 == 0 or not (2 <= q and 2 * q <= p - 2) or kids != [(p, q - 1), (p, q + 1)]:
                errs.append(f"{tag}: OddSplit needs odd q with 2 <= q <= p/2 - 1 and premises (p, q-1), (p, q+1)")
        else:
            errs.append(f"{tag}: unknown rule {node.rule!r}")
    return errs


def dyadic_approach(p: int, q: int, eps) -> tuple[int, int]:
    """Smallest ``n`` with some ``q' <= 2^(n-1)`` and ``p/q - eps <= 2^n/q' <= p/q``.

    For each ``n`` the best candidate is the least ``q' >= 2^n q / p``.
    """
    eps = Fraction(eps)
    target = Fraction(p, q)
    if q < 1 or target < 2:
        raise ValueError("need p/q >= 2")
    if eps <= 0:
        raise ValueError("eps must be positive")
    n = 1
    while True:
        top = 1 << n
        qq = -(-top * q // p)
        if 1 <= qq <= top // 2 and Fraction(top, qq) >= target - eps:
            return n, qq
        n += 1
