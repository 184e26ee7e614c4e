"""Finite-depth separation evidence: exact overlaps versus healthy exponential decay.

Run: python3 demos/02_separation.py
"""
from pathlib import Path

from selfaffine import IFS1D, compose_1d, hochman_report, load_ifs, project

# Offsets 0, 1/4, 1/2 with ratio 1/2: f2(f1(x)) = f1(f3(x)), a complete overlap.
three = IFS1D.from_pairs([("1/2", 0), ("1/2", "1/4"), ("1/2", "1/2")])
rep = hochman_report(three, 6)
u, v = rep.overlap_witness
print(f"overlap at n={len(u)}: {u} and {v} both give {compose_1d(u, three)}")

# The carpet's projections: y tiles [0,1] with no overlap, x has rational offsets
# and similarity dimension > 1, so equal compositions must eventually appear.
carpet = load_ifs(Path(__file__).parent / "data" / "criterion_system.json").ifs
for axis in "yx":
    rep = hochman_report(project(carpet, axis), 8)
    print(f"\n{axis}-projection: verdict {rep.verdict}")
    for rec in rep.per_level:
        rate = "-" if rec.rate is None else f"{rec.rate:.4f}"
        print(f"  n={rec.n}: min gap {rec.delta_min}, rate {rate}")
    if rep.overlap_witness:
        print(f"  witness: {rep.overlap_witness}")
print(f"\nnote: {rep.note}")
