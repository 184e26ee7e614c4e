import math
import random
from fractions import Fraction as F

import numpy as np
import pytest

from selfaffine.estimator import (CoverSpec, box_count, cover, cover_to_depth,
                                  estimate_box_dimension, estimate_cover_dimension, fit_series,
                                  occupancy_grid, write_pgm)
from selfaffine.ifs import BudgetExceededError, DiagonalIFS, cylinder_rect

from conftest import crit_system, diagonal_segment, four_corner, product_cantor

POINT = DiagonalIFS.from_coefficients(["1/2"], ["1/2"], maps_unit_square_into_itself=True)


def test_cover_of_single_map():
    c = cover(POINT, 0.25)
    assert c.words == ((1, 1, 1),)
    assert c.rectangles == [((F(0), F(1, 8)), (F(0), F(1, 8)))]
    assert c.max_diameter() <= 0.25


def test_cover_at_exact_diameter_boundary():
    c = cover(DiagonalIFS.from_coefficients(["1/2"] * 2, ["1/2"] * 2, [0, "1/2"], [0, "1/2"],
                                            maps_unit_square_into_itself=True), math.sqrt(2) / 4)
    assert c.words == ((1, 1), (1, 2), (2, 1), (2, 2))


def test_cover_needs_invariant_square():
    loose = DiagonalIFS.from_coefficients(["1/2"], ["1/2"])
    with pytest.raises(ValueError):
        cover(loose, 0.1)
    with pytest.raises(ValueError):
        cover(POINT, 0)


def test_cover_budget_returns_unusable_partial():
    with pytest.raises(BudgetExceededError) as info:
        cover(product_cantor(), 1e-3, cap=100)
    partial = info.value.partial
    assert not partial.usable and len(partial) == 101
    with pytest.raises(ValueError):
        box_count(partial, F(1, 8))


@pytest.mark.parametrize("ifs", [crit_system(), four_corner(), product_cantor(),
                                 DiagonalIFS.from_coefficients(
                                     ["1/2", "-1/3"], ["1/4", "2/3"], [0, 1], ["3/4", 0],
                                     maps_unit_square_into_itself=True)],
                         ids=["crit", "corner", "cantor", "mixed"])
def test_cover_is_complete_and_prefix_free(ifs):
    c = cover(ifs, 0.05)
    m = len(ifs)
    words = c.words
    assert math.fsum(m ** -len(w) for w in words) == pytest.approx(1.0, abs=1e-12)
    as_set = set(words)
    assert not any(w[:cut] in as_set for w in words for cut in range(len(w)))
    for w, rect in zip(words, c.rectangles):
        assert rect == cylinder_rect(w, ifs)
        (x0, x1), (y0, y1) = cylinder_rect(w[:-1], ifs)
        assert x0 <= rect[0][0] and rect[0][1] <= x1 and y0 <= rect[1][0] and rect[1][1] <= y1
    assert c.max_diameter() <= 0.05 * (1 + 1e-12)


def test_cover_to_depth_lists_every_word():
    c = cover_to_depth(four_corner(), 2)
    assert len(c) == 16 and c.words[0] == (1, 1) and c.words[-1] == (4, 4)


def test_box_count_examples():
    assert box_count(CoverSpec.unit_square(), F(1, 2)) == 4
    assert box_count(CoverSpec.unit_square(), F(1, 8)) == 64
    seg = diagonal_segment()
    assert box_count(cover(seg, 2.0**-6), F(1, 32)) == 32
    assert box_count(cover(POINT, 2.0**-8), F(1, 64)) == 1


def test_box_count_refuses_coarse_covers():
    with pytest.raises(ValueError, match="delta/2"):
        box_count(cover(product_cantor(), 0.3), F(1, 16))
    with pytest.raises(ValueError):
        box_count(CoverSpec.unit_square(), 0)


def four_corner_count(e):
    # with n = ceil(e/2), every level-n cylinder (side 4^-n <= delta) sits in
    # exactly one delta-cell and distinct cylinders use distinct cells
    return 4 ** ((e + 1) // 2)


def test_four_corner_counts_are_exact():
    ifs = four_corner()
    for e in range(3, 11):
        delta = F(1, 2**e)
        assert box_count(cover(ifs, float(delta) / 2), delta) == four_corner_count(e)


def test_counts_grow_monotonically():
    ifs = crit_system()
    counts = [box_count(cover(ifs, 2.0**-e / 2), F(1, 2**e)) for e in range(3, 9)]
    assert all(a <= b <= 4 * a for a, b in zip(counts, counts[1:]))


def test_grid_orientation_and_pgm(tmp_path):
    rect = CoverSpec.from_rectangles([((0, "1/4"), ("3/4", 1))], exact=True)
    grid = occupancy_grid(rect, F(1, 4))
    assert grid.shape == (5, 5)
    assert grid[0, 3] and grid.sum() == 1
    path = tmp_path / "g.pgm"
    write_pgm(grid, path)
    lines = path.read_text().splitlines()
    assert lines[:3] == ["P2", "5 5", "255"]
    # y points up: row for j=3 is the second image row
    assert lines[4].split()[0] == "0"
    assert lines[3].split()[0] == "255"


def test_fit_series_and_csv():
    series = fit_series(range(3, 9), [2 ** (2 * e) for e in range(3, 9)])
    assert series.slope == pytest.approx(2.0) and series.r_squared == pytest.approx(1.0)
    assert series.fit_from == 2
    rows = series.to_csv().splitlines()
    assert rows[0] == "delta,count,ln_inv_delta,ln_count"
    delta, count, x, y = rows[1].split(",")
    assert (float(delta), int(count)) == (0.125, 64)
    assert float(y) == pytest.approx(math.log(64))
    with pytest.raises(ValueError):
        fit_series([3, 4, 5], [1, 2, 3])


def test_unit_square_slope():
    assert estimate_cover_dimension(CoverSpec.unit_square(), 10).slope == pytest.approx(2.0)


def test_diagonal_and_cantor_slopes():
    assert estimate_box_dimension(diagonal_segment(), 10).slope == pytest.approx(1.0, abs=1e-9)
    cantor = estimate_box_dimension(product_cantor(), 10).slope
    assert cantor == pytest.approx(math.log(4) / math.log(3), abs=0.05)


def test_exponent_range_is_checked():
    with pytest.raises(ValueError):
        estimate_box_dimension(diagonal_segment(), 2)
    with pytest.raises(ValueError):
        estimate_box_dimension(diagonal_segment(), 12)


def test_random_box_counts_are_bounded_by_cover_size():
    rng = random.Random(3)
    for _ in range(10):
        m = rng.randint(1, 4)
        alphas = [F(1, rng.randint(2, 5)) for _ in range(m)]
        betas = [F(1, rng.randint(2, 5)) for _ in range(m)]
        txs = [F(rng.randint(0, 8), 8) * (1 - a) for a in alphas]
        tys = [F(rng.randint(0, 8), 8) * (1 - b) for b in betas]
        ifs = DiagonalIFS.from_coefficients(alphas, betas, txs, tys,
                                            maps_unit_square_into_itself=True)
        delta = F(1, 16)
        c = cover(ifs, float(delta) / 2)
        grid = occupancy_grid(c, delta)
        assert 1 <= grid.sum() <= 4 * len(c)
        assert not np.any(grid[-1, :]) or any(r[0][1] == 1 for r in c.rectangles)
