"""Finite preorder -> word antichains -> line table -> graph expressions ->
per-pair certificates, plus re-verification from the serialized report.

Positive certificates are compositional: each summand ``G_a`` of the source
join is sent into the summand ``G_b`` of the target with ``a <=_W b`` by the
circular floor maps on the two fraction atoms (tensored with the identity on
the generator). They are checked on materialized graphs when those fit the
cap. Negative certificates are a single exact inequality between line values
at the witness value of the witness word.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .cohom import circular_floor_map, find_cohomomorphism, is_cohomomorphism
from .errors import CapExceeded, InvariantViolation
from .graphs import DEFAULT_BUDGET, Graph, empty_graph
from .lines import DEFAULT_INTERVAL, DEFAULT_SEEDS, LineTable, build_line_table, verify_line_table
from .rational import fmt, parse_rational
from .spectral import (
    FractionAtom,
    GraphExpr,
    eval_spectral,
    model_soundness,
    join_all,
    line_expr,
    materialize,
    parse_expr,
    to_text,
    uses_generator,
    vertex_count,
)
from .words import (
    AntichainFamily,
    FinitePreorder,
    Word,
    encode_finite_preorder,
    family_leq,
    shortlex_key,
    witness_word,
    word_leq,
)

REPORT_FORMAT = "cohomorder/embedding-report"
REPORT_VERSION = 1


@dataclass
class PipelineConfig:
    """Knobs for ``embed_preorder``.

    ``word_width=None`` codes elements with the fewest bits that distinguish
    them; an integer forces that width.
    """

    interval: tuple[Fraction, Fraction] = DEFAULT_INTERVAL
    seeds: tuple[Fraction, Fraction, Fraction] = DEFAULT_SEEDS
    generator: str = "F(5/2)"
    element_cap: int = 8
    depth_cap: int = 10
    materialize_cap: int = 5000
    budget: int = DEFAULT_BUDGET
    word_width: int | None = None
    confirm_negative: bool = False
    confirm_cap: int = 40

    def __post_init__(self):
        self.interval = tuple(Fraction(x) for x in self.interval)
        self.seeds = tuple(Fraction(x) for x in self.seeds)
        s, t = self.interval
        a, b, r = self.seeds
        if not (1 <= s < t):
            raise ValueError("interval needs 1 <= s < t")
        if not (a > 2 and b > 2 and s < r < t):
            raise ValueError("seeds need a, b > 2 and s < r < t")
        for name in ("element_cap", "depth_cap", "materialize_cap", "budget", "confirm_cap"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        gen = parse_expr(self.generator)
        if uses_generator(gen):
            raise ValueError("the generator expression cannot mention g")

    def generator_graph(self) -> Graph:
        return materialize(parse_expr(self.generator), empty_graph(0), cap=self.materialize_cap)

    def to_json_obj(self) -> dict:
        return {
            "interval": [fmt(x) for x in self.interval],
            "seeds": [fmt(x) for x in self.seeds],
            "generator": self.generator,
            "element_cap": self.element_cap,
            "depth_cap": self.depth_cap,
            "materialize_cap": self.materialize_cap,
            "budget": self.budget,
            "word_width": self.word_width,
            "confirm_negative": self.confirm_negative,
            "confirm_cap": self.confirm_cap,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "PipelineConfig":
        kw = dict(obj)
        kw["interval"] = tuple(parse_rational(x) for x in obj["interval"])
        kw["seeds"] = tuple(parse_rational(x) for x in obj["seeds"])
        return cls(**kw)


# ---------------------------------------------------------------- graphs

def build_word_graph(w: Word, table: LineTable) -> GraphExpr:
    if w not in table:
        raise KeyError(f"word {w!r} missing from the line table")
    line = table.line(w)
    return line_expr(line.a, line.b)


def build_family_graph(family: AntichainFamily, table: LineTable) -> GraphExpr:
    words = sorted(family, key=shortlex_key)
    if not words:
        raise ValueError("empty family has no graph")
    return join_all(build_word_graph(w, table) for w in words)


def family_vertex_count(family: AntichainFamily, table: LineTable, generator_size: int) -> int:
    return sum(vertex_count(build_word_graph(w, table), generator_size) for w in family)


# ---------------------------------------------------------- certificates

@dataclass
class SummandMap:
    word: Word
    target_word: Word
    slope_from: Fraction
    slope_to: Fraction
    intercept_from: Fraction
    intercept_to: Fraction

    def to_json_obj(self) -> dict:
        return {
            "word": self.word,
            "target_word": self.target_word,
            "slope_map": {"from": fmt(self.slope_from), "to": fmt(self.slope_to)},
            "intercept_map": {"from": fmt(self.intercept_from), "to": fmt(self.intercept_to)},
        }


@dataclass
class Certificate:
    source: str
    target: str
    kind: str  # "positive" | "negative"
    summands: list[SummandMap] = field(default_factory=list)
    materialized_map: list[int] | None = None
    witness_word: Word | None = None
    witness_value: Fraction | None = None
    lhs: Fraction | None = None
    rhs: Fraction | None = None
    confirmed_by_search: bool = False

    @property
    def positive(self) -> bool:
        return self.kind == "positive"

    def to_json_obj(self) -> dict:
        out = {"source": self.source, "target": self.target, "kind": self.kind}
        if self.positive:
            out["summands"] = [s.to_json_obj() for s in self.summands]
            out["materialized_map"] = self.materialized_map
        else:
            out["witness_word"] = self.witness_word
            out["witness_value"] = fmt(self.witness_value)
            out["lhs"] = fmt(self.lhs)
            out["rhs"] = fmt(self.rhs)
            out["confirmed_by_search"] = self.confirmed_by_search
        return out


@dataclass
class EmbeddingReport:
    preorder: FinitePreorder
    families: dict[str, AntichainFamily]
    table: LineTable
    word_exprs: dict[Word, GraphExpr]
    family_exprs: dict[str, GraphExpr]
    certificates: list[Certificate]
    config: PipelineConfig

    def counts(self) -> tuple[int, int]:
        pos = sum(1 for c in self.certificates if c.positive)
        return pos, len(self.certificates) - pos

    def certificate(self, x: str, y: str) -> Certificate:
        for c in self.certificates:
            if c.source == x and c.target == y:
                return c
        raise KeyError((x, y))

    def to_json_obj(self) -> dict:
        pos, neg = self.counts()
        return {
            "format": REPORT_FORMAT,
            "version": REPORT_VERSION,
            "config": self.config.to_json_obj(),
            "preorder": self.preorder.to_json_obj(),
            "families": {x: list(f.words) for x, f in self.families.items()},
            "line_table": self.table.to_json_obj(),
            "word_graphs": {w: to_text(e) for w, e in self.word_exprs.items()},
            "family_graphs": {x: to_text(e) for x, e in self.family_exprs.items()},
            "certificates": [c.to_json_obj() for c in self.certificates],
            "summary": {
                "elements": len(self.preorder),
                "positive": pos,
                "negative": neg,
                "table_words": len(self.table),
                "max_bits": self.table.max_denominator_bits(),
                "spectral_model": model_soundness(
                    parse_expr(self.config.generator), self.family_exprs.values(), self.config.interval
                ),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2) + "\n"


def _summand_layout(family: AntichainFamily, table: LineTable, ng: int) -> dict[Word, int]:
    offsets, off = {}, 0
    for w in sorted(family, key=shortlex_key):
        offsets[w] = off
        line = table.line(w)
        off += FractionAtom.of(line.a).p * ng + FractionAtom.of(line.b).p
    return offsets


def _positive_summands(src: AntichainFamily, dst: AntichainFamily, table: LineTable) -> list[SummandMap]:
    """Send each source word to the shortlex-least target word above it."""
    dst_words = sorted(dst, key=shortlex_key)
    summands = []
    for a in sorted(src, key=shortlex_key):
        b = next((w for w in dst_words if word_leq(a, w)), None)
        if b is None:
            raise InvariantViolation(f"word {a!r} lies below no target word")
        la, lb = table.line(a), table.line(b)
        summands.append(SummandMap(a, b, la.a, lb.a, la.b, lb.b))
    return summands


def positive_assignment(
    summands: list[SummandMap], dst: AntichainFamily, table: LineTable, ng: int
) -> list[int]:
    """Explicit vertex map between the materialized joins: ``(i, c) -> (floor map(i), c)``
    on the product part and the floor map on the intercept part, shifted to the
    target summand's block.
    """
    dst_off = _summand_layout(dst, table, ng)
    out = []
    for sm in summands:
        sa, sb = FractionAtom.of(sm.slope_from), FractionAtom.of(sm.slope_to)
        ia, ib = FractionAtom.of(sm.intercept_from), FractionAtom.of(sm.intercept_to)
        out.extend(_summand_assignment(sa.p, sb.p, ia.p, ib.p, ng, dst_off[sm.target_word]))
    return out


def _summand_assignment(slope_p, slope_r, icpt_p, icpt_r, ng, base):
    phi = circular_floor_map(slope_p, slope_r)
    psi = circular_floor_map(icpt_p, icpt_r)
    out = [base + phi[i] * ng + c for i in range(slope_p) for c in range(ng)]
    out.extend(base + slope_r * ng + psi[j] for j in range(icpt_p))
    return out


def embed_families(
    families: Mapping[str, AntichainFamily],
    cfg: PipelineConfig | None = None,
    preorder: FinitePreorder | None = None,
) -> EmbeddingReport:
    """Certify every ordered pair of named antichain families.

    If ``preorder`` is given, certificate polarity must match it exactly;
    otherwise the preorder is the family order itself.
    """
    cfg = cfg or PipelineConfig()
    names = list(families)
    if preorder is None:
        pairs = [(x, y) for x in names for y in names if family_leq(families[x], families[y])]
        preorder = FinitePreorder.from_relation(names, pairs)
    if len(names) > cfg.element_cap:
        raise CapExceeded(f"{len(names)} elements exceeds the element cap {cfg.element_cap}")
    if any(len(f) == 0 for f in families.values()):
        raise ValueError("every family needs at least one word")
    depth = max((len(w) for f in families.values() for w in f), default=0)
    if depth > cfg.depth_cap:
        raise CapExceeded(f"word length {depth} exceeds the depth cap {cfg.depth_cap}")
    s, t = cfg.interval
    table = build_line_table(depth, s, t, *cfg.seeds)
    gen = cfg.generator_graph()
    ng = gen.n

    used = sorted({w for f in families.values() for w in f}, key=shortlex_key)
    word_exprs = {w: build_word_graph(w, table) for w in used}
    family_exprs = {x: build_family_graph(families[x], table) for x in names}
    sizes = {x: family_vertex_count(families[x], table, ng) for x in names}

    certs = []
    for i, x in enumerate(names):
        for j, y in enumerate(names):
            if i == j:
                continue
            expected = preorder.le(i, j)
            a_fam, b_fam = families[x], families[y]
            if family_leq(a_fam, b_fam):
                summands = _positive_summands(a_fam, b_fam, table)
                mapped = None
                if sizes[x] <= cfg.materialize_cap and sizes[y] <= cfg.materialize_cap:
                    assignment = positive_assignment(summands, b_fam, table, ng)
                    g_src = materialize(family_exprs[x], gen, cfg.materialize_cap)
                    g_dst = materialize(family_exprs[y], gen, cfg.materialize_cap)
                    if not is_cohomomorphism(g_src, g_dst, assignment):
                        raise InvariantViolation(f"composed map {x} -> {y} failed verification")
                    mapped = assignment
                cert = Certificate(x, y, "positive", summands=summands, materialized_map=mapped)
            else:
                w = witness_word(a_fam, b_fam)
                r = table.witness(w)
                lhs = table.line(w)(r)
                rhs = max(table.line(b)(r) for b in b_fam)
                if not lhs > rhs:
                    raise InvariantViolation(f"witness inequality fails for ({x}, {y}) at word {w!r}")
                cert = Certificate(x, y, "negative", witness_word=w, witness_value=r, lhs=lhs, rhs=rhs)
                if cfg.confirm_negative and sizes[x] <= cfg.confirm_cap and sizes[y] <= cfg.confirm_cap:
                    g_src = materialize(family_exprs[x], gen, cfg.materialize_cap)
                    g_dst = materialize(family_exprs[y], gen, cfg.materialize_cap)
                    if find_cohomomorphism(g_src, g_dst, cfg.budget) is not None:
                        raise InvariantViolation(f"search found a map {x} -> {y} despite the witness")
                    cert.confirmed_by_search = True
            if cert.positive != expected:
                raise InvariantViolation(f"certificate polarity for ({x}, {y}) disagrees with the input")
            certs.append(cert)
    return EmbeddingReport(preorder, dict(families), table, word_exprs, family_exprs, certs, cfg)


def embed_preorder(p: FinitePreorder, cfg: PipelineConfig | None = None) -> EmbeddingReport:
    cfg = cfg or PipelineConfig()
    if len(p) > cfg.element_cap:
        raise CapExceeded(f"{len(p)} elements exceeds the element cap {cfg.element_cap}")
    width = cfg.word_width
    if width is None:
        width = max(1, (len(p) - 1).bit_length())
    families = encode_finite_preorder(p, width)
    return embed_families(families, cfg, preorder=p)


# ------------------------------------------------------------ verification

@dataclass
class VerifyResult:
    failures: list[dict] = field(default_factory=list)
    checked: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, where, message: str) -> None:
        self.failures.append({"where": where, "message": message})

    def to_json_obj(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "failures": self.failures}


def verify_report(report: EmbeddingReport | Mapping) -> VerifyResult:
    """Re-check a report using only its serialized content."""
    obj = report.to_json_obj() if isinstance(report, EmbeddingReport) else report
    res = VerifyResult()
    try:
        _verify(obj, res)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        res.fail("report", f"malformed report: {type(exc).__name__}: {exc}")
    return res


def _verify(obj: Mapping, res: VerifyResult) -> None:
    if obj.get("format") != REPORT_FORMAT:
        res.fail("report", f"unknown format {obj.get('format')!r}")
        return
    cfg = PipelineConfig.from_json_obj(obj["config"])
    preorder = FinitePreorder.from_json_obj(obj["preorder"])
    table = LineTable.from_json_obj(obj["line_table"])
    families = {x: AntichainFamily(ws) for x, ws in obj["families"].items()}
    if list(families) != list(preorder.elements):
        res.fail("families", "family names do not match the preorder elements")
        return
    if tuple(table.interval) != tuple(cfg.interval):
        res.fail("line_table", "table interval differs from the configured interval")
    seed = table.entries.get("")
    if seed is None or (seed.line.a, seed.line.b, seed.r) != tuple(cfg.seeds):
        res.fail("line_table", "root entry differs from the configured seeds")

    tbl_report = verify_line_table(table)
    res.checked["line_table_pairs"] = tbl_report.pairs_checked
    for kind, v, w in tbl_report.violations:
        res.fail(["line_table", v, w], f"property {kind} violated")

    for w, text in obj["word_graphs"].items():
        if w not in table or to_text(build_word_graph(w, table)) != text:
            res.fail(["word_graph", w], "expression does not match the line table")
    for x, text in obj["family_graphs"].items():
        if x not in families or to_text(build_family_graph(families[x], table)) != text:
            res.fail(["family_graph", x], "expression does not match the family")

    gen = cfg.generator_graph()
    names = list(preorder.elements)
    seen = set()
    n_pos = n_neg = n_mat = 0
    for c in obj["certificates"]:
        x, y = c["source"], c["target"]
        where = [x, y]
        if x not in families or y not in families or x == y or (x, y) in seen:
            res.fail(where, "certificate for an unknown, diagonal or repeated pair")
            continue
        seen.add((x, y))
        expected = preorder.le(x, y)
        if c["kind"] == "positive":
            n_pos += 1
            if not expected:
                res.fail(where, "positive certificate for a pair outside the relation")
            msg = _check_positive(c, families[x], families[y], table)
            if msg:
                res.fail(where, msg)
                continue
            mapping = c.get("materialized_map")
            if mapping is not None:
                try:
                    g_src = materialize(build_family_graph(families[x], table), gen, cfg.materialize_cap)
                    g_dst = materialize(build_family_graph(families[y], table), gen, cfg.materialize_cap)
                except CapExceeded:
                    res.fail(where, "materialized map recorded for graphs beyond the cap")
                    continue
                if not is_cohomomorphism(g_src, g_dst, mapping):
                    res.fail(where, "materialized map is not a cohomomorphism")
                else:
                    n_mat += 1
        elif c["kind"] == "negative":
            n_neg += 1
            if expected:
                res.fail(where, "negative certificate for a related pair")
            msg = _check_negative(c, families[x], families[y], table)
            if msg:
                res.fail(where, msg)
        else:
            res.fail(where, f"unknown certificate kind {c['kind']!r}")
    missing = [(x, y) for x in names for y in names if x != y and (x, y) not in seen]
    for x, y in missing:
        res.fail([x, y], "no certificate for this pair")
    res.checked.update({"positive": n_pos, "negative": n_neg, "materialized_maps": n_mat})


def _check_positive(c, src: AntichainFamily, dst: AntichainFamily, table: LineTable) -> str | None:
    covered = set()
    for sm in c["summands"]:
        a, b = sm["word"], sm["target_word"]
        if a not in src or b not in dst:
            return f"summand {a!r} -> {b!r} names words outside the families"
        if not word_leq(a, b):
            return f"summand {a!r} -> {b!r} is not a prefix step"
        la, lb = table.line(a), table.line(b)
        want = {"from": fmt(la.a), "to": fmt(lb.a)}, {"from": fmt(la.b), "to": fmt(lb.b)}
        if (sm["slope_map"], sm["intercept_map"]) != want:
            return f"summand {a!r} -> {b!r} records the wrong fraction graphs"
        # the floor map E_{p/q} -> E_{r/s} is a cohomomorphism exactly when p/q <= r/s
        if not (la.a <= lb.a and la.b <= lb.b):
            return f"summand {a!r} -> {b!r} has no circular map (fraction order violated)"
        covered.add(a)
    if covered != set(src.words):
        return "some source word has no summand map"
    return None


def _check_negative(c, src: AntichainFamily, dst: AntichainFamily, table: LineTable) -> str | None:
    w = c["witness_word"]
    if w not in src:
        return f"witness word {w!r} is not in the source family"
    if any(word_leq(w, b) for b in dst):
        return f"witness word {w!r} lies below a target word"
    r = parse_rational(c["witness_value"])
    if w not in table or r != table.witness(w):
        return "witness value differs from the table"
    lhs, rhs = parse_rational(c["lhs"]), parse_rational(c["rhs"])
    if lhs != table.line(w)(r):
        return "lhs is not the witness line at the witness value"
    if rhs != max(table.line(b)(r) for b in dst):
        return "rhs is not the target envelope at the witness value"
    if not lhs > rhs:
        return "witness inequality is not strict"
    return None


def model_monotonicity(report: EmbeddingReport, max_vertices: int = 200, points: int = 50) -> list[tuple[str, str, Fraction]]:
    """Positive pairs whose materializations fit ``max_vertices`` must satisfy
    ``f_r(source) <= f_r(target)`` on an even grid of the interval; returns the failures.
    """
    s, t = report.config.interval
    gen = report.config.generator_graph()
    grid = [s + (t - s) * k / (points - 1) for k in range(points)]
    bad = []
    for c in report.certificates:
        if not c.positive:
            continue
        sx = family_vertex_count(report.families[c.source], report.table, gen.n)
        sy = family_vertex_count(report.families[c.target], report.table, gen.n)
        if sx > max_vertices or sy > max_vertices:
            continue
        ex, ey = report.family_exprs[c.source], report.family_exprs[c.target]
        for r in grid:
            if eval_spectral(ex, r) > eval_spectral(ey, r):
                bad.append((c.source, c.target, r))
    return bad
