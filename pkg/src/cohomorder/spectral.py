"""Graph expressions over fraction-graph atoms and one generator ``g``, and
their values under the simulated family of spectral points ``f_r``.

``f_r`` sends ``E_{p/q}`` to ``p/q`` and the generator to ``r``; it is
multiplicative on ``*`` (strong product), additive on ``|`` (disjoint union)
and takes the maximum on ``+`` (join).

Text syntax: ``F(p/q)`` or ``F(n)`` atoms, ``g``, ``*``, ``|``, ``+``, ``^n``
and parentheses. ``+`` binds loosest, then ``|``, then ``*``, then ``^``;
binary operators associate to the left.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import CapExceeded
from .graphs import Graph, disjoint_union, fraction_graph, join, power, strong_product
from .lines import Line, RationalPolynomial


class ExprSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class FractionAtom:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1 or self.p < 2 * self.q:
            raise ValueError(f"fraction atom needs positive p, q with p/q >= 2, got {self.p}/{self.q}")

    @classmethod
    def of(cls, value) -> "FractionAtom":
        v = Fraction(value)
        return cls(v.numerator, v.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


@dataclass(frozen=True)
class Generator:
    pass


@dataclass(frozen=True)
class StrongProduct:
    left: "GraphExpr"
    right: "GraphExpr"


@dataclass(frozen=True)
class DisjointUnion:
    left: "GraphExpr"
    right: "GraphExpr"


@dataclass(frozen=True)
class Join:
    left: "GraphExpr"
    right: "GraphExpr"


@dataclass(frozen=True)
class Power:
    base: "GraphExpr"
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("power exponent must be positive")


GraphExpr = Union[FractionAtom, Generator, StrongProduct, DisjointUnion, Join, Power]
G = Generator()


def join_all(exprs: Iterable[GraphExpr]) -> GraphExpr:
    items = list(exprs)
    if not items:
        raise ValueError("empty join")
    out = items[0]
    for e in items[1:]:
        out = Join(out, e)
    return out


def union_all(exprs: Iterable[GraphExpr]) -> GraphExpr:
    items = list(exprs)
    if not items:
        raise ValueError("empty union")
    out = items[0]
    for e in items[1:]:
        out = DisjointUnion(out, e)
    return out


def line_expr(a, b) -> GraphExpr:
    """``E_a ⊠ g ⊔ E_b``, valued ``a*r + b`` at ``f_r``."""
    return DisjointUnion(StrongProduct(FractionAtom.of(a), G), FractionAtom.of(b))


def polynomial_expr(poly: RationalPolynomial) -> GraphExpr:
    """``sum a_i x^i  ->  ⊔_i E_{a_i} ⊠ g^i`` (coefficients must be >= 2)."""
    terms: list[GraphExpr] = []
    for i, c in enumerate(poly.coefficients):
        atom = FractionAtom.of(c)
        if i == 0:
            terms.append(atom)
        elif i == 1:
            terms.append(StrongProduct(atom, G))
        else:
            terms.append(StrongProduct(atom, Power(G, i)))
    return union_all(terms)


# ------------------------------------------------------------- evaluation

def eval_spectral(e: GraphExpr, r) -> Fraction:
    r = Fraction(r)
    if isinstance(e, FractionAtom):
        return e.value
    if isinstance(e, Generator):
        return r
    if isinstance(e, StrongProduct):
        return eval_spectral(e.left, r) * eval_spectral(e.right, r)
    if isinstance(e, DisjointUnion):
        return eval_spectral(e.left, r) + eval_spectral(e.right, r)
    if isinstance(e, Join):
        return max(eval_spectral(e.left, r), eval_spectral(e.right, r))
    if isinstance(e, Power):
        return eval_spectral(e.base, r) ** e.n
    raise TypeError(f"not a graph expression: {e!r}")


def uses_generator(e: GraphExpr) -> bool:
    if isinstance(e, Generator):
        return True
    if isinstance(e, FractionAtom):
        return False
    if isinstance(e, Power):
        return uses_generator(e.base)
    return uses_generator(e.left) or uses_generator(e.right)


def is_transitive_shape(e: GraphExpr) -> bool:
    """True for products/powers of fraction atoms, which are vertex-transitive."""
    if isinstance(e, FractionAtom):
        return True
    if isinstance(e, StrongProduct):
        return is_transitive_shape(e.left) and is_transitive_shape(e.right)
    if isinstance(e, Power):
        return is_transitive_shape(e.base)
    return False


def _atoms(e: GraphExpr) -> Iterable[FractionAtom]:
    if isinstance(e, FractionAtom):
        yield e
    elif isinstance(e, Power):
        yield from _atoms(e.base)
    elif not isinstance(e, Generator):
        yield from _atoms(e.left)
        yield from _atoms(e.right)


PENTAGON = FractionAtom(5, 2)


def model_soundness(generator: GraphExpr, exprs: Iterable[GraphExpr], interval) -> str:
    """``"sound"`` when every value ``eval_spectral(e, r)``, r in the interval, is
    taken by a genuine spectral point on the materialized graph; else ``"model-only"``.

    Spectral points fixing every fraction graph pin any fraction-atom generator
    to its own value, so letting ``g`` vary is only realizable when the other
    atoms are integers (fixed by every spectral point). For the pentagon, genuine
    points sweep ``[sqrt 5, 5/2]`` (theta-type to clique-cover interpolation).
    """
    exprs = list(exprs)
    if not any(uses_generator(e) for e in exprs):
        return "sound"
    s, t = (Fraction(x) for x in interval)
    if generator != PENTAGON or s * s < 5 or t > Fraction(5, 2):
        return "model-only"
    if all(a.q == 1 for e in exprs for a in _atoms(e)):
        return "sound"
    return "model-only"


# --------------------------------------------------------- max-of-polynomials

def _poly_norm(c: Iterable[Fraction]) -> tuple[Fraction, ...]:
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_norm(out)


def _poly_add(a, b):
    n = max(len(a), len(b))
    return _poly_norm(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


@dataclass(frozen=True)
class MaxPolyForm:
    """A value function ``r -> max_p p(r)`` over a finite, deduplicated set of polynomials."""

    polys: tuple[RationalPolynomial, ...]

    @classmethod
    def of(cls, coeff_tuples: Iterable[tuple[Fraction, ...]]) -> "MaxPolyForm":
        uniq = sorted({_poly_norm(c) for c in coeff_tuples}, key=lambda c: (len(c), c))
        if not uniq:
            raise ValueError("MaxPolyForm needs at least one polynomial")
        return cls(tuple(RationalPolynomial(c) for c in uniq))

    @classmethod
    def from_lines(cls, lines: Iterable[Line]) -> "MaxPolyForm":
        return cls.of((Fraction(l.b), Fraction(l.a)) for l in lines)

    def __call__(self, r) -> Fraction:
        r = Fraction(r)
        return max(p(r) for p in self.polys)

    def __len__(self):
        return len(self.polys)

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.polys)

    def coefficient_sets(self) -> set[tuple[Fraction, ...]]:
        return {p.coefficients for p in self.polys}


def to_max_poly(e: GraphExpr, max_terms: int = 10**5) -> MaxPolyForm:
    """Normal form: a set of polynomials in ``r`` whose pointwise max equals ``eval_spectral(e, r)``.

    Valid for ``r >= 0``: every member has non-negative values there, so
    products and sums distribute over the maximum.
    """
    return MaxPolyForm.of(_to_set(e, max_terms))


def _to_set(e, max_terms):
    if isinstance(e, FractionAtom):
        out = {(e.value,)}
    elif isinstance(e, Generator):
        out = {(Fraction(0), Fraction(1))}
    elif isinstance(e, Join):
        out = _to_set(e.left, max_terms) | _to_set(e.right, max_terms)
    elif isinstance(e, (StrongProduct, DisjointUnion)):
        left = _to_set(e.left, max_terms)
        right = _to_set(e.right, max_terms)
        if len(left) * len(right) > max_terms:
            raise CapExceeded(f"max-polynomial form would exceed {max_terms} terms")
        op = _poly_mul if isinstance(e, StrongProduct) else _poly_add
        out = {op(a, b) for a in left for b in right}
    elif isinstance(e, Power):
        base = _to_set(e.base, max_terms)
        out = {(Fraction(1),)}
        for _ in range(e.n):
            if len(out) * len(base) > max_terms:
                raise CapExceeded(f"max-polynomial form would exceed {max_terms} terms")
            out = {_poly_mul(a, b) for a in out for b in base}
    else:
        raise TypeError(f"not a graph expression: {e!r}")
    if len(out) > max_terms:
        raise CapExceeded(f"max-polynomial form would exceed {max_terms} terms")
    return out


@dataclass(frozen=True)
class EnvelopeVerdict:
    holds: bool
    counterexample: Fraction | None = None
    checked_points: tuple[Fraction, ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def envelope_leq(p: MaxPolyForm, q: MaxPolyForm, interval) -> EnvelopeVerdict:
    """Decide ``max P <= max Q`` on the closed interval, for members of degree <= 1.

    Both sides are piecewise linear, so the difference can only change sign at
    endpoints or at crossings of two member lines; those points are checked
    exactly, in increasing order, and the first failure is the counterexample.
    """
    s, t = (Fraction(x) for x in interval)
    if s > t:
        raise ValueError("empty interval")
    if p.degree > 1 or q.degree > 1:
        raise ValueError("envelope_leq handles lines only; evaluate at witness points instead")
    lines = [_as_line(m) for m in p.polys + q.polys]
    pts = {s, t}
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            x = lines[i].intersection(lines[j])
            if x is not None and s <= x <= t:
                pts.add(x)
    ordered = tuple(sorted(pts))
    for x in ordered:
        if p(x) > q(x):
            return EnvelopeVerdict(False, x, ordered)
    return EnvelopeVerdict(True, None, ordered)


def _as_line(poly: RationalPolynomial) -> Line:
    c = poly.coefficients
    return Line(c[1] if len(c) > 1 else Fraction(0), c[0])


# ---------------------------------------------------------- materialization

def vertex_count(e: GraphExpr, generator_size: int) -> int:
    if isinstance(e, FractionAtom):
        return e.p
    if isinstance(e, Generator):
        return generator_size
    if isinstance(e, StrongProduct):
        return vertex_count(e.left, generator_size) * vertex_count(e.right, generator_size)
    if isinstance(e, (DisjointUnion, Join)):
        return vertex_count(e.left, generator_size) + vertex_count(e.right, generator_size)
    if isinstance(e, Power):
        return vertex_count(e.base, generator_size) ** e.n
    raise TypeError(f"not a graph expression: {e!r}")


def materialize(e: GraphExpr, generator: Graph, cap: int = 5000) -> Graph:
    size = vertex_count(e, generator.n)
    if size > cap:
        raise CapExceeded(f"materialization needs {size} vertices, cap is {cap}")
    return _build(e, generator)


def _build(e, gen):
    if isinstance(e, FractionAtom):
        return fraction_graph(e.p, e.q)
    if isinstance(e, Generator):
        return gen
    if isinstance(e, StrongProduct):
        return strong_product(_build(e.left, gen), _build(e.right, gen))
    if isinstance(e, DisjointUnion):
        return disjoint_union(_build(e.left, gen), _build(e.right, gen))
    if isinstance(e, Join):
        return join(_build(e.left, gen), _build(e.right, gen))
    if isinstance(e, Power):
        return power(_build(e.base, gen), e.n)
    raise TypeError(f"not a graph expression: {e!r}")


# ------------------------------------------------------- parser / printer

_PREC = {Join: 1, DisjointUnion: 2, StrongProduct: 3}
_SYM = {Join: "+", DisjointUnion: "|", StrongProduct: "*"}


def to_text(e: GraphExpr) -> str:
    if isinstance(e, FractionAtom):
        return f"F({e.p}/{e.q})"
    if isinstance(e, Generator):
        return "g"
    if isinstance(e, Power):
        inner = to_text(e.base)
        if not isinstance(e.base, (FractionAtom, Generator)):
            inner = f"({inner})"
        return f"{inner}^{e.n}"
    prec = _PREC[type(e)]
    left = to_text(e.left)
    right = to_text(e.right)
    if type(e.left) in _PREC and _PREC[type(e.left)] < prec:
        left = f"({left})"
    if type(e.right) in _PREC and _PREC[type(e.right)] <= prec:
        right = f"({right})"
    return f"{left} {_SYM[type(e)]} {right}"


_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def _tokenize(text: str) -> list[str]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        tok = m.group(1) or m.group(2)
        if tok is None:
            continue
        if m.group(2) is not None and tok not in "F()/g*|+^":
            raise ExprSyntaxError(f"unexpected character {tok!r} at offset {m.start(2)}")
        toks.append(tok)
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of expression")
        if expected is not None and tok != expected:
            raise ExprSyntaxError(f"expected {expected!r}, found {tok!r}")
        self.i += 1
        return tok

    def integer(self) -> int:
        tok = self.take()
        if not tok.isdigit():
            raise ExprSyntaxError(f"expected an integer, found {tok!r}")
        return int(tok)

    def parse(self) -> GraphExpr:
        if not self.toks:
            raise ExprSyntaxError("empty expression")
        e = self.join()
        if self.peek() is not None:
            raise ExprSyntaxError(f"trailing input at {self.peek()!r}")
        return e

    def binary(self, sub, sym, node):
        e = sub()
        while self.peek() == sym:
            self.take()
            e = node(e, sub())
        return e

    def join(self):
        return self.binary(self.union, "+", Join)

    def union(self):
        return self.binary(self.product, "|", DisjointUnion)

    def product(self):
        return self.binary(self.power, "*", StrongProduct)

    def power(self):
        e = self.atom()
        while self.peek() == "^":
            self.take()
            n = self.integer()
            try:
                e = Power(e, n)
            except ValueError as exc:
                raise ExprSyntaxError(str(exc)) from exc
        return e

    def atom(self):
        tok = self.take()
        if tok == "g":
            return G
        if tok == "(":
            e = self.join()
            self.take(")")
            return e
        if tok == "F":
            self.take("(")
            p = self.integer()
            q = 1
            if self.peek() == "/":
                self.take()
                q = self.integer()
            self.take(")")
            try:
                return FractionAtom(p, q)
            except ValueError as exc:
                raise ExprSyntaxError(str(exc)) from exc
        raise ExprSyntaxError(f"unexpected token {tok!r}")


def parse_expr(text: str) -> GraphExpr:
    return _Parser(text).parse()
