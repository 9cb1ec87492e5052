"""The ten acceptance criteria, each at its stated tolerance and time limit.

A one-line PASS/FAIL summary per criterion is printed at the end of the run.
"""
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import permutations

import pytest

from cohomorder.cohom import find_cohomomorphism, is_independent_in_power, probe_power_relation, verify_cohomomorphism
from cohomorder.demos import demo_counterexample
from cohomorder.derivation import dyadic_approach, validate_derivation, xif_derivation
from cohomorder.graphs import cycle_graph, empty_graph, fraction_graph, independence_number, power
from cohomorder.lines import build_line_table, designated_orderings, ordering_polynomials, verify_line_table
from cohomorder.lp import fractional_clique_cover_number
from cohomorder.pipeline import (
    PipelineConfig,
    embed_families,
    embed_preorder,
    family_vertex_count,
    model_monotonicity,
    verify_report,
)
from cohomorder.spectral import DisjointUnion, FractionAtom, G, Join, Power, StrongProduct, eval_spectral
from cohomorder.words import AntichainFamily, FinitePreorder, inclusion_order

F = Fraction
S, T = F(9, 4), F(5, 2)


@pytest.fixture
def criterion(record_property):
    @contextmanager
    def run(num: int, limit: float):
        record_property("criterion", num)
        record_property("limit", limit)
        t0 = time.perf_counter()
        yield
        elapsed = time.perf_counter() - t0
        record_property("elapsed", elapsed)
        assert elapsed < limit, f"criterion {num} took {elapsed:.1f}s, limit {limit}s"

    return run


def fraction_pairs(max_p):
    return [(p, q) for p in range(2, max_p + 1) for q in range(1, p // 2 + 1)]


def test_c01_fraction_graph_normalization(criterion):
    with criterion(1, 10):
        for p, q in fraction_pairs(12):
            assert fractional_clique_cover_number(fraction_graph(p, q)) == F(p, q), (p, q)


def test_c02_shannon_anchor(criterion):
    with criterion(2, 60):
        c5 = cycle_graph(5)
        assert independence_number(power(c5, 2)) == 5
        assert independence_number(power(c5, 3)) == 10


def test_c03_fraction_graph_order(criterion):
    with criterion(3, 300):
        pairs = fraction_pairs(9)
        for p, q in pairs:
            for r, s in pairs:
                m = find_cohomomorphism(fraction_graph(p, q), fraction_graph(r, s))
                assert (m is not None) == (F(p, q) <= F(r, s)), (p, q, r, s)
                assert m is None or verify_cohomomorphism(m)


def test_c04_asymptotic_gap(criterion):
    with criterion(4, 60):
        c5 = cycle_graph(5)
        c53 = power(c5, 3)
        e11 = empty_graph(11)
        assert find_cohomomorphism(e11, c53) is None
        res = probe_power_relation(e11, c53, 2, 0)
        assert res.k == 0
        assert len(res.product_set) == 125 and is_independent_in_power(c5, 6, res.product_set)
        assert len(res.witness) == 121 and set(res.witness) <= set(res.product_set)


def test_c05_line_table_invariants(criterion):
    with criterion(5, 30):
        table = build_line_table(5)
        rep = verify_line_table(table)
        assert rep.pairs_checked == 3969
        assert rep.violations == []


def test_c06_main_pipeline(criterion):
    with criterion(6, 120):
        order = inclusion_order(3)
        rep = embed_preorder(order)
        assert rep.counts() == (19, 37)
        for c in rep.certificates:
            i, j = order.elements.index(c.source), order.elements.index(c.target)
            assert c.positive == order.le(i, j)
        assert verify_report(rep.to_json_obj()).ok


def test_c07_counterexample(criterion):
    with criterion(7, 1):
        rep = demo_counterexample()
        assert rep.intersection == F(7, 3)
        assert len(rep.witnesses) == 6 and all(w.lhs > w.rhs for w in rep.witnesses)
        assert rep.dominance.holds and not rep.reverse.holds
        assert rep.ok


def test_c08_ordering_polynomials(criterion):
    with criterion(8, 1):
        points = [S + (T - S) * F(k, 7) for k in range(1, 7)]
        polys = ordering_polynomials(3, points, (S, T))
        assert all(c >= 2 for p in polys for c in p.coefficients)
        realized = set()
        for x, sigma in designated_orderings(3, points):
            vals = [p(x) for p in polys]
            assert all(vals[a] > vals[b] for a, b in zip(sigma, sigma[1:]))
            realized.add(tuple(sigma))
        assert realized == set(permutations(range(3)))


def test_c09_derivation_engine(criterion):
    with criterion(9, 5):
        for n in range(1, 7):
            for q in range(1, 2 ** (n - 1) + 1):
                assert validate_derivation(xif_derivation(2**n, q)) == []
        rng = random.Random(2024)
        for _ in range(50):
            q = rng.randint(1, 12)
            p = rng.randint(2 * q, 8 * q)
            eps = F(1, rng.randint(1, 500))
            n, qq = dyadic_approach(p, q, eps)
            assert 1 <= qq <= 2 ** (n - 1)
            assert F(p, q) - eps <= F(2**n, qq) <= F(p, q)
            # minimality: no smaller n admits an integer denominator in range
            for m in range(1, n):
                assert not any(F(p, q) - eps <= F(2**m, d) <= F(p, q) for d in range(1, 2 ** (m - 1) + 1))


def random_expr(rng, leaves):
    if leaves <= 1:
        if rng.random() < 0.3:
            return G
        q = rng.randint(1, 4)
        return FractionAtom(2 * q + rng.randint(0, 6), q)
    k = rng.randint(1, leaves - 1)
    op = rng.choice([StrongProduct, DisjointUnion, Join, Power])
    if op is Power:
        return Power(random_expr(rng, leaves - 1), rng.randint(1, 3))
    return op(random_expr(rng, k), random_expr(rng, leaves - k))


def test_c10_spectral_axioms(criterion):
    with criterion(10, 120):
        rng = random.Random(10)
        for _ in range(200):
            a, b = random_expr(rng, rng.randint(1, 6)), random_expr(rng, rng.randint(1, 6))
            r = S + (T - S) * F(rng.randint(0, 97), 97)
            ea, eb = eval_spectral(a, r), eval_spectral(b, r)
            assert eval_spectral(StrongProduct(a, b), r) == ea * eb
            assert eval_spectral(DisjointUnion(a, b), r) == ea + eb
            assert eval_spectral(Join(a, b), r) == max(ea, eb)

        reports = [
            embed_preorder(FinitePreorder.from_relation(["a", "b"], [("a", "b")])),
            embed_preorder(inclusion_order(3)),
            embed_families({"x": AntichainFamily([""]), "y": AntichainFamily([""])}),
            embed_families({"x": AntichainFamily(["0"]), "y": AntichainFamily([""]), "z": AntichainFamily(["1"])}),
        ]
        checked = 0
        for rep in reports:
            assert model_monotonicity(rep, max_vertices=200, points=50) == []
            ng = PipelineConfig().generator_graph().n
            for c in rep.certificates:
                sizes = [family_vertex_count(rep.families[x], rep.table, ng) for x in (c.source, c.target)]
                checked += c.positive and max(sizes) <= 200
        assert checked >= 4
