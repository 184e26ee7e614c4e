"""Box-counting estimates from exact cylinder covers, with their known failure mode.

Run: python3 demos/04_box_counting.py  (about 15 s)
"""
import math
from fractions import Fraction
from pathlib import Path

from selfaffine import DiagonalIFS, CoverSpec, estimate_box_dimension, estimate_cover_dimension, load_ifs
from selfaffine.estimator import cover, occupancy_grid, write_pgm

corner = DiagonalIFS.from_coefficients(["1/4"] * 4, ["1/4"] * 4, [0, "3/4", 0, "3/4"],
                                       [0, 0, "3/4", "3/4"], maps_unit_square_into_itself=True)
cantor = DiagonalIFS.from_coefficients(["1/3"] * 4, ["1/3"] * 4, [0, "2/3", 0, "2/3"],
                                       [0, 0, "2/3", "2/3"], maps_unit_square_into_itself=True)
carpet = load_ifs(Path(__file__).parent / "data" / "criterion_system.json").ifs

print(f"unit square: {estimate_cover_dimension(CoverSpec.unit_square(), 10).slope:.4f} (2)")
print(f"product Cantor: {estimate_box_dimension(cantor, 10).slope:.4f} "
      f"({math.log(4) / math.log(3):.4f})")

# Dyadic grids see the 1/4 system in steps: counts double only every other scale,
# so a short regression is biased low even though the dimension is exactly 1.
series = estimate_box_dimension(corner, 10)
print(f"four-corner: counts {list(series.counts)}, slope {series.slope:.4f} (1)")

series = estimate_box_dimension(carpet, 10)
print(f"carpet: slope {series.slope:.4f} vs formula {1 + math.log(1.5) / math.log(3):.4f}")

out = Path("carpet.pgm")
write_pgm(occupancy_grid(cover(carpet, 1 / 512), Fraction(1, 256)), out)
print(f"wrote {out} (256-cell grid, occupied cells black)")
