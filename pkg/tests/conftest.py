from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cohomorder.graphs import Graph
from cohomorder.spectral import DisjointUnion, FractionAtom, G, Join, Power, StrongProduct
from cohomorder.words import FinitePreorder

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def fraction_params(draw, max_p=12):
    p = draw(st.integers(2, max_p))
    q = draw(st.integers(1, p // 2))
    return p, q


def rationals(lo=Fraction(9, 4), hi=Fraction(5, 2), max_den=60):
    return st.builds(
        lambda num, den: lo + (hi - lo) * Fraction(num % (den + 1), den),
        st.integers(0, 10**6),
        st.integers(1, max_den),
    )


def atoms():
    return st.builds(
        lambda q, extra: FractionAtom(2 * q + extra, q), st.integers(1, 4), st.integers(0, 6)
    )


def expressions(max_leaves=6):
    leaves = st.one_of(atoms(), st.just(G))
    return st.recursive(
        leaves,
        lambda kids: st.one_of(
            st.builds(StrongProduct, kids, kids),
            st.builds(DisjointUnion, kids, kids),
            st.builds(Join, kids, kids),
            st.builds(Power, kids, st.integers(1, 2)),
        ),
        max_leaves=max_leaves,
    )


@st.composite
def preorders(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    names = [f"e{i}" for i in range(n)]
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    return FinitePreorder.from_relation(names, [(names[a], names[b]) for a, b in pairs])


@pytest.fixture
def c5():
    from cohomorder.graphs import cycle_graph

    return cycle_graph(5)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if rep.when == "call" and "criterion" in props:
                lines.append((props["criterion"], outcome.upper()[:4], props.get("elapsed"), props.get("limit")))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for num, verdict, elapsed, limit in sorted(lines):
        timing = f"{elapsed:.2f}s of {limit}s" if elapsed is not None else "no timing recorded"
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  ({timing})")
