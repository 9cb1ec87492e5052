"""Embed the inclusion order on subsets of {1..k}, verify the report and
summarize it. Writes the report JSON when --out is given."""
import argparse
import time
from pathlib import Path

from cohomorder.pipeline import PipelineConfig, embed_preorder, model_monotonicity, verify_report
from cohomorder.words import inclusion_order


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-k", type=int, default=3, help="ground set size (2^k elements, at most 8 by default cap)")
    ap.add_argument("--cap", type=int, default=5000, help="materialization cap")
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    order = inclusion_order(args.k)
    cfg = PipelineConfig(materialize_cap=args.cap, element_cap=max(8, len(order)))
    t0 = time.perf_counter()
    report = embed_preorder(order, cfg)
    built = time.perf_counter() - t0
    t0 = time.perf_counter()
    res = verify_report(report.to_json_obj())
    checked = time.perf_counter() - t0

    pos, neg = report.counts()
    summary = report.to_json_obj()["summary"]
    print(f"{len(order)} elements: {pos} positive / {neg} negative certificates")
    print(f"line table: {summary['table_words']} words, largest rational {summary['max_bits']} bits")
    print(f"spectral model: {summary['spectral_model']}")
    print(f"built in {built:.2f}s, verified in {checked:.2f}s: {'ok' if res.ok else res.failures}")
    bad = model_monotonicity(report)
    print(f"model monotonicity on small positive pairs: {'ok' if not bad else bad[:3]}")
    if args.out:
        args.out.write_text(report.to_json())
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
