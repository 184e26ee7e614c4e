"""Dimension formulas for a three-map carpet with an overlapping x-projection.

Run: python3 demos/01_dimensions.py
"""
import math
from pathlib import Path

from selfaffine import (WeightVector, affinity_dimension, load_ifs, lyapunov_dimension,
                        natural_weights, pressure, theorem_b_dimension)

doc = load_ifs(Path(__file__).parent / "data" / "criterion_system.json")
ifs = doc.ifs
print(f"{len(ifs)} maps, alphas={[str(a) for a in ifs.alphas]}, betas={[str(b) for b in ifs.betas]}")

# The pressure is piecewise in t and decreasing; its root at 1 is the affinity dimension.
for t in (0.0, 0.5, 1.0, 1.5, 2.0):
    print(f"  P({t}) = {pressure(ifs, t):.6f}")
t0 = affinity_dimension(ifs)
print(f"affinity dimension t0 = {t0:.12f}")

# Three maps, contractions 1/2 and 1/3: the y-projection tiles [0,1] exactly
# (similarity dimension 1) and the x-projection has similarity dimension log3/log2 > 1,
# so the attractor dimension is the root of 3 * (1/2) * (1/3)^(d-1) = 1.
report = theorem_b_dimension(ifs)
print(f"case {report.case_tag}: dim = {report.value:.12f}"
      f" (closed form {1 + math.log(1.5) / math.log(3):.12f})")
print(f"  needs the separation condition on: {report.hypotheses['hochman_required']}")

w = natural_weights(ifs)
print(f"natural weights: {[round(p, 6) for p in w]}")
measure = lyapunov_dimension(WeightVector.uniform(len(ifs)), ifs)
print(f"Lyapunov dimension of the uniform measure: {measure.value:.12f} (case {measure.case_tag})")
