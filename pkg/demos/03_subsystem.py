"""Approximating the carpet from inside by strongly separated homogeneous subsystems.

Run: python3 demos/03_subsystem.py
"""
from pathlib import Path

from selfaffine import approximate_subsystem, homogeneous_subsystem, load_ifs, theorem_b_dimension
from selfaffine.subsystem import typical_root

ifs = load_ifs(Path(__file__).parent / "data" / "criterion_system.json").ifs
target = theorem_b_dimension(ifs).value
print(f"target dimension {target:.6f}")

# Typical words of length k: each letter appears round(k/3) times. Their
# composites share one contraction pair, so the pressure root is explicit.
for k in range(4, 17, 2):
    print(f"  k={k:2d}: root of typical subsystem {typical_root(ifs, k):.6f}")

system = homogeneous_subsystem(ifs, 6)
print(f"\nk=6: {len(system)} maps with ratios ({system.common_alpha}, {system.common_beta})")

result = approximate_subsystem(ifs, 0.35, 12)
print(f"thinned to {len(result.system)} disjoint maps along {result.axis_used}: "
      f"dimension {result.achieved_dimension:.6f}, certified={result.ssc_certified}, "
      f"within epsilon: {result.achieved}")
