"""Where the simulated spectral values can be trusted, with the pentagon as generator.

At r = 5/2 every model value equals the fractional clique cover of the
materialized graph, which the first table confirms. Below 5/2 the generator is
valued r while a pentagon atom keeps 5/2, even though the identity map sends
one onto the other. The second table shows that inversion, which is why
expressions with non-integer atoms get the "model-only" label.
"""
from fractions import Fraction

from cohomorder.cohom import find_cohomomorphism
from cohomorder.graphs import cycle_graph
from cohomorder.lp import fractional_clique_cover_number
from cohomorder.rational import fmt
from cohomorder.spectral import PENTAGON, G, eval_spectral, materialize, model_soundness, parse_expr

INTERVAL = (Fraction(9, 4), Fraction(5, 2))
CASES = [
    "F(6/1) * g | F(7/1)",
    "F(3/1) * g | F(14/1)",
    "F(21/1)",
    "g^2",
    "F(7/2) * g | F(7/2)",
    "F(26/7) * g | F(3/1)",
]


def main():
    c5 = cycle_graph(5)
    top = INTERVAL[1]
    print(f"{'expression':<26} {'model':>8} {'cover':>8}  label")
    for text in CASES:
        e = parse_expr(text)
        cover = fractional_clique_cover_number(materialize(e, c5))
        label = model_soundness(PENTAGON, [e], INTERVAL)
        print(f"{text:<26} {fmt(eval_spectral(e, top)):>8} {fmt(cover):>8}  {label}")

    print()
    has_map = find_cohomomorphism(materialize(PENTAGON, c5), materialize(G, c5)) is not None
    print(f"F(5/2) -> g has a cohomomorphism: {has_map}")
    for r in (INTERVAL[0], Fraction(12, 5), top):
        a, b = eval_spectral(PENTAGON, r), eval_spectral(G, r)
        print(f"r = {fmt(r):>5}: F(5/2) -> {fmt(a)}, g -> {fmt(r)}{'   (model inverts the map)' if a > b else ''}")


if __name__ == "__main__":
    main()
