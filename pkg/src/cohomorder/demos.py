"""Small self-contained constructions: the three-line counterexample to
cancellation under join, and the antichain of lines through a common point."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvariantViolation
from .lines import DEFAULT_INTERVAL, Line, antichain_lines, counterexample_lines
from .rational import fmt
from .spectral import (
    EnvelopeVerdict,
    FractionAtom,
    GraphExpr,
    Join,
    envelope_leq,
    eval_spectral,
    line_expr,
    model_soundness,
    parse_expr,
    to_max_poly,
    to_text,
)

LEFT_POINT = Fraction(9, 4)
RIGHT_POINT = Fraction(12, 5)
GENERATOR = "F(5/2)"


@dataclass
class Evaluation:
    source: str
    target: str
    r: Fraction
    lhs: Fraction
    rhs: Fraction

    @property
    def separates(self) -> bool:
        return self.lhs > self.rhs

    def to_json_obj(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "r": fmt(self.r),
            "lhs": fmt(self.lhs),
            "rhs": fmt(self.rhs),
        }


def _pairwise_witnesses(names, exprs, points) -> list[Evaluation]:
    """For each ordered pair, the first point where the source value exceeds the target's."""
    out = []
    for i, x in enumerate(names):
        for j, y in enumerate(names):
            if i == j:
                continue
            for r in points:
                ev = Evaluation(x, y, r, eval_spectral(exprs[i], r), eval_spectral(exprs[j], r))
                if ev.separates:
                    out.append(ev)
                    break
            else:
                raise InvariantViolation(f"no witness point separates {x} from {y}")
    return out


def _verdict_json(v: EnvelopeVerdict) -> dict:
    return {
        "holds": v.holds,
        "counterexample": None if v.counterexample is None else fmt(v.counterexample),
        "checked_points": [fmt(x) for x in v.checked_points],
    }


@dataclass
class CounterexampleReport:
    lines: tuple[Line, Line, Line]
    exprs: tuple[GraphExpr, GraphExpr, GraphExpr]
    intersection: Fraction
    value_at_intersection: Fraction
    witnesses: list[Evaluation]
    dominance: EnvelopeVerdict
    reverse: EnvelopeVerdict
    interval: tuple[Fraction, Fraction] = DEFAULT_INTERVAL
    generator: str = GENERATOR

    @property
    def ok(self) -> bool:
        return len(self.witnesses) == 6 and self.dominance.holds and not self.reverse.holds

    @property
    def soundness(self) -> str:
        return model_soundness(parse_expr(self.generator), self.exprs, self.interval)

    def to_json_obj(self) -> dict:
        return {
            "generator": self.generator,
            "interval": [fmt(x) for x in self.interval],
            "graphs": {f"H{i + 1}": to_text(e) for i, e in enumerate(self.exprs)},
            "lines": {f"H{i + 1}": {"a": fmt(l.a), "b": fmt(l.b)} for i, l in enumerate(self.lines)},
            "intersection": {"x": fmt(self.intersection), "value": fmt(self.value_at_intersection)},
            "incomparability": [w.to_json_obj() for w in self.witnesses],
            "dominance": {"claim": "H1+H2 <= H1+H3", **_verdict_json(self.dominance)},
            "reverse": {"claim": "H1+H3 <= H1+H2", **_verdict_json(self.reverse)},
            "spectral_model": self.soundness,
            "ok": self.ok,
        }

    def render(self) -> str:
        out = [f"generator g = {self.generator}, interval [{fmt(self.interval[0])}, {fmt(self.interval[1])}]"]
        for i, (e, l) in enumerate(zip(self.exprs, self.lines)):
            out.append(f"H{i + 1} = {to_text(e)}    f_r = {l}")
        out.append(
            f"all three lines meet at x = {fmt(self.intersection)} with value {fmt(self.value_at_intersection)}"
        )
        for w in self.witnesses:
            out.append(f"{w.source} not below {w.target}: at r = {fmt(w.r)}, {fmt(w.lhs)} > {fmt(w.rhs)}")
        verdict = "holds" if self.dominance.holds else f"fails at {fmt(self.dominance.counterexample)}"
        out.append(f"envelope(H1, H2) <= envelope(H1, H3) on the interval: {verdict}")
        if not self.reverse.holds:
            out.append(f"reverse dominance fails at r = {fmt(self.reverse.counterexample)}")
        out.append(f"spectral model: {self.soundness}")
        out.append("ok" if self.ok else "FAILED")
        return "\n".join(out)


def _line_graph(l: Line) -> GraphExpr:
    # a flat line is a bare fraction graph, with no generator factor
    return FractionAtom.of(l.b) if l.a == 0 else line_expr(l.a, l.b)


def demo_counterexample() -> CounterexampleReport:
    lines = counterexample_lines()
    exprs = tuple(_line_graph(l) for l in lines)
    l1, l2, l3 = lines
    x = l1.intersection(l2)
    if x is None or l1.intersection(l3) != x:
        raise InvariantViolation("the three lines do not share an intersection")
    witnesses = _pairwise_witnesses(["H1", "H2", "H3"], exprs, [LEFT_POINT, RIGHT_POINT])
    lhs = to_max_poly(Join(exprs[0], exprs[1]))
    rhs = to_max_poly(Join(exprs[0], exprs[2]))
    return CounterexampleReport(
        lines=lines,
        exprs=exprs,
        intersection=x,
        value_at_intersection=l1(x),
        witnesses=witnesses,
        dominance=envelope_leq(lhs, rhs, DEFAULT_INTERVAL),
        reverse=envelope_leq(rhs, lhs, DEFAULT_INTERVAL),
    )


@dataclass
class AntichainReport:
    n: int
    lines: list[Line]
    exprs: list[GraphExpr]
    common_point: tuple[Fraction, Fraction]
    witnesses: list[Evaluation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return len(self.witnesses) == self.n * (self.n - 1)

    @property
    def soundness(self) -> str:
        return model_soundness(parse_expr(GENERATOR), self.exprs, DEFAULT_INTERVAL)

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "generator": GENERATOR,
            "graphs": {f"H{i + 1}": to_text(e) for i, e in enumerate(self.exprs)},
            "lines": {f"H{i + 1}": {"a": fmt(l.a), "b": fmt(l.b)} for i, l in enumerate(self.lines)},
            "common_point": [fmt(x) for x in self.common_point],
            "incomparability": [w.to_json_obj() for w in self.witnesses],
            "spectral_model": self.soundness,
            "ok": self.ok,
        }

    def render(self) -> str:
        out = [f"H{i + 1} = {to_text(e)}    f_r = {l}" for i, (e, l) in enumerate(zip(self.exprs, self.lines))]
        x, y = self.common_point
        out.append(f"every line passes through ({fmt(x)}, {fmt(y)})")
        for w in self.witnesses:
            out.append(f"{w.source} not below {w.target}: at r = {fmt(w.r)}, {fmt(w.lhs)} > {fmt(w.rhs)}")
        out.append(f"spectral model: {self.soundness}")
        out.append("ok" if self.ok else "FAILED")
        return "\n".join(out)


def demo_antichain(n: int, cap: int = 64) -> AntichainReport:
    """``n`` pairwise model-incomparable graphs, one evaluation each side of 7/3 per pair."""
    if not 1 <= n <= cap:
        raise ValueError(f"n must lie in 1..{cap}")
    lines = antichain_lines(n, 7, 3)
    for l in lines:
        if not (l.a >= 2 and l.b >= 2):
            raise InvariantViolation(f"line {l} has a coefficient below 2")
    exprs = [line_expr(l.a, l.b) for l in lines]
    x = Fraction(7, 3)
    y = lines[0](x)
    if any(l(x) != y for l in lines):
        raise InvariantViolation("antichain lines do not share a common point")
    names = [f"H{i + 1}" for i in range(n)]
    witnesses = _pairwise_witnesses(names, exprs, [LEFT_POINT, RIGHT_POINT])
    return AntichainReport(n, lines, exprs, (x, y), witnesses)
