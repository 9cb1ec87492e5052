import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings

from cohomorder.errors import CapExceeded
from cohomorder.lines import build_line_table
from cohomorder.pipeline import (
    PipelineConfig,
    build_family_graph,
    build_word_graph,
    embed_families,
    embed_preorder,
    model_monotonicity,
    verify_report,
)
from cohomorder.spectral import eval_spectral, parse_expr
from cohomorder.words import AntichainFamily, FinitePreorder, inclusion_order
from conftest import preorders, rationals

F = Fraction
FIXTURES = Path(__file__).parent / "fixtures"


def load(name):
    return FinitePreorder.from_json((FIXTURES / name).read_text())


@pytest.fixture(scope="module")
def chain3():
    return embed_preorder(load("chain3.json"))


@pytest.fixture(scope="module")
def chain2():
    # small enough that every positive map is materialized and checked
    return embed_preorder(FinitePreorder.from_relation(["a", "b"], [("a", "b")]))


def test_word_graph_examples():
    assert build_word_graph("", build_line_table(0)) == parse_expr("F(4/1) * g | F(4/1)")
    t1 = build_line_table(1)
    assert build_word_graph("0", t1) == parse_expr("F(26/7) * g | F(3/1)")
    with pytest.raises(KeyError):
        build_word_graph("00", t1)


def test_family_graph_meets_at_parent_witness():
    t1 = build_line_table(1)
    e = build_family_graph(AntichainFamily(["1", "0"]), t1)
    assert e == parse_expr("F(26/7) * g | F(3/1) + F(7/2) * g | F(7/2)")
    r = F(7, 3)
    assert eval_spectral(e, r) == t1.line("0")(r) == t1.line("1")(r)
    assert build_family_graph(AntichainFamily(["0"]), t1) == build_word_graph("0", t1)


@given(rationals(F(9, 4), F(5, 2), 30))
def test_word_graph_value_is_line(r):
    t = build_line_table(2)
    for w in t.entries:
        assert eval_spectral(build_word_graph(w, t), r) == t.line(w)(r)


def test_chain(chain3):
    assert chain3.counts() == (3, 3)
    for x, y in [("a", "b"), ("b", "c"), ("a", "c")]:
        assert chain3.certificate(x, y).positive
        assert not chain3.certificate(y, x).positive
    assert verify_report(chain3).ok


def test_antichain_and_singleton():
    assert embed_preorder(load("antichain2.json")).counts() == (0, 2)
    rep = embed_preorder(load("singleton.json"))
    assert rep.counts() == (0, 0) and verify_report(rep).ok


def test_preorder_with_equivalent_elements():
    rep = embed_preorder(load("cycle_preorder.json"))
    assert rep.certificate("p", "q").positive and rep.certificate("q", "p").positive
    assert rep.certificate("s", "q").positive and not rep.certificate("q", "s").positive
    assert verify_report(rep).ok


def test_negative_certificate_arithmetic(chain3):
    c = chain3.certificate("c", "a")
    t = chain3.table
    assert c.lhs == t.line(c.witness_word)(c.witness_value) > c.rhs
    assert c.rhs == max(t.line(b)(c.witness_value) for b in chain3.families["a"])


def test_positive_maps_materialized(chain2, chain3):
    c = chain2.certificate("a", "b")
    assert c.positive and len(c.materialized_map) == 133
    # chain3 words are longer, so its graphs pass the materialization cap
    assert all(c.materialized_map is None for c in chain3.certificates if c.positive)


def test_cube_counts():
    rep = embed_preorder(inclusion_order(3))
    assert rep.counts() == (19, 37)
    assert verify_report(rep).ok


def test_tampered_rhs_flags_that_pair(chain3):
    obj = json.loads(chain3.to_json())
    for c in obj["certificates"]:
        if c["source"] == "b" and c["target"] == "a":
            lhs = F(c["lhs"])
            c["rhs"] = str(lhs + 1)
    res = verify_report(obj)
    assert not res.ok
    assert [f["where"] for f in res.failures] == [["b", "a"]]


def test_tampered_map_detected(chain2):
    obj = json.loads(chain2.to_json())
    c = next(c for c in obj["certificates"] if c["kind"] == "positive")
    m = c["materialized_map"]
    m[0] = m[1]
    res = verify_report(obj)
    assert [f["where"] for f in res.failures] == [["a", "b"]]


def test_missing_certificate_detected(chain3):
    obj = json.loads(chain3.to_json())
    obj["certificates"].pop()
    assert not verify_report(obj).ok


def test_json_round_trip_and_determinism(chain3):
    text = chain3.to_json()
    again = embed_preorder(load("chain3.json")).to_json()
    assert text == again
    direct = verify_report(chain3).to_json_obj()
    via_json = verify_report(json.loads(text)).to_json_obj()
    assert json.dumps(direct, sort_keys=True) == json.dumps(via_json, sort_keys=True)
    assert "." not in json.dumps(json.loads(text)["certificates"]).replace("->", "")


def test_spectral_label(chain3):
    assert json.loads(chain3.to_json())["summary"]["spectral_model"] == "model-only"


def test_model_monotone_on_positive_pairs(chain2):
    assert model_monotonicity(chain2) == []


def test_caps():
    with pytest.raises(CapExceeded):
        embed_preorder(inclusion_order(4))
    with pytest.raises(CapExceeded):
        embed_preorder(load("chain3.json"), PipelineConfig(depth_cap=1, word_width=3))
    with pytest.raises(ValueError):
        PipelineConfig(seeds=(2, 4, F(7, 3)))
    with pytest.raises(ValueError):
        PipelineConfig(generator="g")
    with pytest.raises(ValueError):
        embed_families({"x": AntichainFamily([])})


def test_config_round_trip():
    cfg = PipelineConfig(interval=(F(2), F(3)), seeds=(5, 6, F(5, 2)), word_width=4)
    assert PipelineConfig.from_json_obj(json.loads(json.dumps(cfg.to_json_obj()))) == cfg


@settings(max_examples=25)
@given(preorders(max_n=5))
def test_random_preorders_embed_soundly(p):
    rep = embed_preorder(p, PipelineConfig(materialize_cap=400))
    n = len(p)
    assert len(rep.certificates) == n * (n - 1)
    for c in rep.certificates:
        i, j = p.elements.index(c.source), p.elements.index(c.target)
        assert c.positive == p.le(i, j)
    assert verify_report(json.loads(rep.to_json())).ok
