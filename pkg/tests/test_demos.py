from fractions import Fraction

import pytest

from cohomorder.demos import demo_antichain, demo_counterexample
from cohomorder.graphs import cycle_graph
from cohomorder.lp import fractional_clique_cover_number
from cohomorder.spectral import eval_spectral, materialize, parse_expr

F = Fraction


@pytest.fixture(scope="module")
def counter():
    return demo_counterexample()


def test_counterexample_expressions(counter):
    assert counter.exprs == (
        parse_expr("F(6/1) * g | F(7/1)"),
        parse_expr("F(3/1) * g | F(14/1)"),
        parse_expr("F(21/1)"),
    )


def test_counterexample_intersection(counter):
    assert counter.intersection == F(7, 3)
    assert counter.value_at_intersection == 21


def test_counterexample_witnesses(counter):
    assert counter.ok
    got = {(w.source, w.target): (w.r, w.lhs, w.rhs) for w in counter.witnesses}
    assert len(got) == 6
    # H1 above H3 right of 7/3: 6*12/5 + 7 = 107/5 > 21
    assert got["H1", "H3"] == (F(12, 5), F(107, 5), F(21))
    assert got["H1", "H2"] == (F(12, 5), F(107, 5), F(106, 5))
    assert got["H3", "H1"][0] == F(9, 4)
    for w in counter.witnesses:
        assert w.lhs > w.rhs


def test_counterexample_dominance(counter):
    assert counter.dominance.holds
    assert not counter.reverse.holds and counter.reverse.counterexample == F(9, 4)
    assert counter.soundness == "sound"


def test_counterexample_values_match_clique_cover_at_right_end(counter):
    # at r = 5/2 the model agrees with the fractional clique cover of the materialized graph
    c5 = cycle_graph(5)
    for e in counter.exprs:
        assert fractional_clique_cover_number(materialize(e, c5)) == eval_spectral(e, F(5, 2))


def test_counterexample_json_and_render(counter):
    obj = counter.to_json_obj()
    assert obj["ok"] is True and obj["spectral_model"] == "sound"
    text = counter.render()
    assert "7/3" in text and "." not in text.replace("...", "")


def test_antichain_two():
    rep = demo_antichain(2)
    assert rep.ok and len(rep.witnesses) == 2
    assert {w.r for w in rep.witnesses} == {F(9, 4), F(12, 5)}
    assert rep.soundness == "model-only"


@pytest.mark.parametrize("n", range(1, 11))
def test_antichain_lines_share_point(n):
    rep = demo_antichain(n)
    assert rep.ok
    assert rep.common_point == (F(7, 3), F(23, 3))
    for l, e in zip(rep.lines, rep.exprs):
        assert l.a >= 2 and l.b >= 2
        assert eval_spectral(e, F(7, 3)) == F(23, 3)


def test_antichain_cap():
    with pytest.raises(ValueError):
        demo_antichain(0)
    with pytest.raises(ValueError):
        demo_antichain(65)
