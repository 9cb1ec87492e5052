"""How big the rationals in the line table get as the depth grows.

Prints, per depth: number of words, largest numerator/denominator bit length,
seconds to build, and seconds to verify all ordered pairs.
"""
import argparse
import time

from cohomorder.lines import build_line_table, verify_line_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-depth", type=int, default=7)
    ap.add_argument("--verify-up-to", type=int, default=6, help="skip the quadratic check beyond this depth")
    args = ap.parse_args()
    print(f"{'depth':>5} {'words':>6} {'bits':>6} {'build s':>8} {'verify s':>9}")
    for depth in range(args.max_depth + 1):
        t0 = time.perf_counter()
        table = build_line_table(depth)
        built = time.perf_counter() - t0
        checked = "-"
        if depth <= args.verify_up_to:
            t0 = time.perf_counter()
            rep = verify_line_table(table)
            assert rep.ok, rep.violations[:3]
            checked = f"{time.perf_counter() - t0:.2f}"
        print(f"{depth:>5} {len(table):>6} {table.max_denominator_bits():>6} {built:>8.2f} {checked:>9}")


if __name__ == "__main__":
    main()
