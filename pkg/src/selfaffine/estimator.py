"""Box-counting estimates of attractor dimension from exact cylinder covers.

Instead of sampling points, the attractor is covered by the cylinder
rectangles ``S_w([0,1]^2)`` of a complete prefix-free set of words, refined
until every rectangle is small. A grid cell is counted when it meets some
rectangle. Cylinder geometry is exact: each leaf is kept as integer
numerators over ``Q**depth``, where ``Q`` is a common denominator of the
system's x (resp. y) coefficients, so cell indices come from integer
floor divisions.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .ifs import DEFAULT_MAP_CAP, BudgetExceededError, DiagonalIFS, Rect, Word

DEFAULT_MAX_EXPONENT = 11
MIN_EXPONENT = 3
DROPPED_COARSE_SCALES = 2
# relative slack on diameter comparisons (targets such as sqrt(2)/4 are floats)
_DIAMETER_SLACK = 1e-12


@dataclass(frozen=True)
class _Leaf:
    word: Word
    depth: int
    x: tuple[int, int]   # numerators over qx**depth, ordered
    y: tuple[int, int]   # numerators over qy**depth, ordered


@dataclass(frozen=True)
class CoverSpec:
    """Rectangles whose union contains the attractor.

    ``exact`` marks covers whose union *is* the set being measured (such as
    the unit square itself); those can be box-counted at any scale.
    ``usable`` is false for a cover cut short by the leaf cap.
    """

    leaves: tuple[_Leaf, ...]
    qx: int
    qy: int
    target_diameter: float | None = None
    depth: int | None = None
    exact: bool = False
    usable: bool = True

    def __len__(self):
        return len(self.leaves)

    @property
    def words(self) -> tuple[Word, ...]:
        return tuple(leaf.word for leaf in self.leaves)

    @property
    def rectangles(self) -> list[Rect]:
        out = []
        for leaf in self.leaves:
            dx, dy = self.qx**leaf.depth, self.qy**leaf.depth
            out.append(((Fraction(leaf.x[0], dx), Fraction(leaf.x[1], dx)),
                        (Fraction(leaf.y[0], dy), Fraction(leaf.y[1], dy))))
        return out

    def max_diameter(self) -> float:
        best = 0.0
        for leaf in self.leaves:
            w = (leaf.x[1] - leaf.x[0]) / self.qx**leaf.depth
            h = (leaf.y[1] - leaf.y[0]) / self.qy**leaf.depth
            best = max(best, math.hypot(w, h))
        return best

    @classmethod
    def from_rectangles(cls, rects, exact: bool = False) -> "CoverSpec":
        """Wrap explicit rational rectangles ``((x0, x1), (y0, y1))`` as a depth-0 cover."""
        rects = [tuple((Fraction(a), Fraction(b)) for a, b in r) for r in rects]
        qx = math.lcm(*(q.denominator for (x, _) in rects for q in x))
        qy = math.lcm(*(q.denominator for (_, y) in rects for q in y))
        leaves = []
        for (x0, x1), (y0, y1) in rects:
            # depth 1 so that numerators are over qx**1, qy**1
            leaves.append(_Leaf((), 1, (int(x0 * qx), int(x1 * qx)), (int(y0 * qy), int(y1 * qy))))
        return cls(tuple(leaves), qx, qy, exact=exact)

    @classmethod
    def unit_square(cls) -> "CoverSpec":
        return cls.from_rectangles([((0, 1), (0, 1))], exact=True)


def _integer_maps(ifs: DiagonalIFS):
    qx = math.lcm(*(q.denominator for s in ifs.maps for q in (s.alpha, s.tx)))
    qy = math.lcm(*(q.denominator for s in ifs.maps for q in (s.beta, s.ty)))
    maps = [(int(s.alpha * qx), int(s.tx * qx), int(s.beta * qy), int(s.ty * qy),
             abs(float(s.alpha)), abs(float(s.beta))) for s in ifs.maps]
    return qx, qy, maps


def _build_cover(ifs: DiagonalIFS, stop, cap: int, target=None, depth=None) -> CoverSpec:
    """Depth-first expansion from the empty word until ``stop(n, width, height)``."""
    if not ifs.maps_unit_square_into_itself:
        raise ValueError("covering needs maps_unit_square_into_itself; "
                         "without it the cylinders need not contain the attractor")
    qx, qy, maps = _integer_maps(ifs)
    leaves: list[_Leaf] = []
    # composite x-map: x -> (ax * x + bx) / qx**n, likewise for y
    stack = [((), 0, 1, 0, 1, 0, 1.0, 1.0)]
    while stack:
        word, n, ax, bx, ay, by, w, h = stack.pop()
        if stop(n, w, h):
            x = (bx, bx + ax) if ax > 0 else (bx + ax, bx)
            y = (by, by + ay) if ay > 0 else (by + ay, by)
            leaves.append(_Leaf(word, n, x, y))
            if len(leaves) > cap:
                partial = CoverSpec(tuple(leaves), qx, qy, target, depth, usable=False)
                raise BudgetExceededError(f"cover needs more than {cap} rectangles", partial)
            continue
        # push in reverse so leaves come out in lexicographic word order
        for letter in range(len(maps), 0, -1):
            a, t, b, u, fa, fb = maps[letter - 1]
            stack.append((word + (letter,), n + 1,
                          ax * a, ax * t + bx * qx,
                          ay * b, ay * u + by * qy,
                          w * fa, h * fb))
    return CoverSpec(tuple(leaves), qx, qy, target, depth)


def cover(ifs: DiagonalIFS, target_diameter: float, cap: int = DEFAULT_MAP_CAP) -> CoverSpec:
    """Adaptive cylinder cover: expand each word while its rectangle's diameter exceeds the target."""
    if not target_diameter > 0:
        raise ValueError("target_diameter must be positive")
    limit = target_diameter * (1 + _DIAMETER_SLACK)
    return _build_cover(ifs, lambda n, w, h: math.hypot(w, h) <= limit, cap,
                        target=target_diameter)


def cover_to_depth(ifs: DiagonalIFS, n: int, cap: int = DEFAULT_MAP_CAP) -> CoverSpec:
    """All ``m**n`` cylinders of word length ``n``."""
    if n < 0:
        raise ValueError("depth must be non-negative")
    return _build_cover(ifs, lambda k, w, h: k >= n, cap, depth=n)


def _cell_range(lo: int, hi: int, den: int, dnum: int, dden: int) -> tuple[int, int]:
    # cells [i d, (i+1) d) meeting [lo, hi]/den, where d = dnum/dden; a right edge
    # lying exactly on a grid line does not claim the cell that starts there
    first = (lo * dden) // (den * dnum)
    last = -((-hi * dden) // (den * dnum)) - 1
    return first, max(first, last)


def occupancy_grid(cover_spec: CoverSpec, delta) -> np.ndarray:
    """Boolean grid ``G[i, j]``: cell ``[i d,(i+1) d) x [j d,(j+1) d)`` meets the cover.

    ``i`` indexes x and ``j`` indexes y.
    """
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if not cover_spec.usable:
        raise ValueError("cover was cut short by the budget and is unusable")
    if not cover_spec.exact and cover_spec.max_diameter() > float(delta) / 2 * (1 + _DIAMETER_SLACK):
        raise ValueError(f"cover diameter {cover_spec.max_diameter():.3g} exceeds delta/2; "
                         "refine the cover before counting at this scale")
    dnum, dden = delta.numerator, delta.denominator
    size = math.ceil(1 / delta) + 1
    grid = np.zeros((size, size), dtype=bool)
    qx, qy = cover_spec.qx, cover_spec.qy
    denoms: dict[int, tuple[int, int]] = {}
    small_i, small_j = [], []
    for leaf in cover_spec.leaves:
        dx, dy = denoms.setdefault(leaf.depth, (qx**leaf.depth, qy**leaf.depth))
        i0, i1 = _cell_range(leaf.x[0], leaf.x[1], dx, dnum, dden)
        j0, j1 = _cell_range(leaf.y[0], leaf.y[1], dy, dnum, dden)
        if not (0 <= i0 and i1 < size and 0 <= j0 and j1 < size):
            raise ValueError("cover rectangle leaves the unit square")
        if i1 - i0 <= 1 and j1 - j0 <= 1:
            small_i.extend((i0, i0, i1, i1))
            small_j.extend((j0, j1, j0, j1))
        else:
            grid[i0:i1 + 1, j0:j1 + 1] = True
    if small_i:
        grid[np.asarray(small_i), np.asarray(small_j)] = True
    return grid


def box_count(cover_spec: CoverSpec, delta) -> int:
    """Number of ``delta``-grid cells meeting the cover.

    Refuses (``ValueError``) when a cover rectangle is wider than ``delta/2``
    unless the cover is exact, since large cylinders overcount.
    """
    return int(occupancy_grid(cover_spec, delta).sum())


@dataclass(frozen=True)
class BoxCountSeries:
    exponents: tuple[int, ...]
    scales: tuple[float, ...]
    counts: tuple[int, ...]
    slope: float
    intercept: float
    r_squared: float
    residuals: tuple[float, ...]
    fit_from: int = DROPPED_COARSE_SCALES

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("delta,count,ln_inv_delta,ln_count\n")
        for d, c in zip(self.scales, self.counts):
            buf.write(f"{d!r},{c},{math.log(1 / d)!r},{math.log(c)!r}\n")
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {"exponents": list(self.exponents), "scales": list(self.scales),
                "counts": list(self.counts), "slope": self.slope, "intercept": self.intercept,
                "r_squared": self.r_squared, "residuals": list(self.residuals),
                "fit_from": self.fit_from}


def fit_series(exponents, counts, drop: int = DROPPED_COARSE_SCALES) -> BoxCountSeries:
    """Least-squares slope of ``ln N`` against ``ln(1/delta)`` for ``delta = 2**-e``."""
    exponents = tuple(exponents)
    counts = tuple(int(c) for c in counts)
    x = np.array([e * math.log(2) for e in exponents[drop:]])
    y = np.log(np.array(counts[drop:], dtype=float))
    if len(x) < 2:
        raise ValueError("need at least two scales after dropping the coarse ones")
    slope, intercept = np.polyfit(x, y, 1)
    fitted = slope * x + intercept
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1 - ss_res / ss_tot
    return BoxCountSeries(exponents, tuple(2.0**-e for e in exponents), counts,
                          float(slope), float(intercept), r2,
                          tuple(float(r) for r in y - fitted), drop)


def _check_exponent(e: int, max_exponent: int) -> None:
    if not MIN_EXPONENT <= e <= max_exponent:
        raise ValueError(f"delta_min_exponent must lie in [{MIN_EXPONENT}, {max_exponent}]")


def estimate_box_dimension(ifs: DiagonalIFS, delta_min_exponent: int,
                           cap: int = DEFAULT_MAP_CAP,
                           max_exponent: int = DEFAULT_MAX_EXPONENT) -> BoxCountSeries:
    """Box-counting slope over ``delta = 2**-3 .. 2**-delta_min_exponent``.

    Each scale gets its own adaptive cover with diameters at most ``delta/2``;
    the two coarsest scales are left out of the fit.
    """
    _check_exponent(delta_min_exponent, max_exponent)
    exponents = range(MIN_EXPONENT, delta_min_exponent + 1)
    counts = []
    for e in exponents:
        delta = Fraction(1, 2**e)
        counts.append(box_count(cover(ifs, float(delta) / 2, cap), delta))
    return fit_series(exponents, counts)


def estimate_cover_dimension(cover_spec: CoverSpec, delta_min_exponent: int,
                             max_exponent: int = DEFAULT_MAX_EXPONENT) -> BoxCountSeries:
    """Box-counting slope of a fixed exact cover (e.g. the unit square)."""
    _check_exponent(delta_min_exponent, max_exponent)
    exponents = range(MIN_EXPONENT, delta_min_exponent + 1)
    counts = [box_count(cover_spec, Fraction(1, 2**e)) for e in exponents]
    return fit_series(exponents, counts)


def write_pgm(grid: np.ndarray, path: str | Path) -> None:
    """Write an occupancy grid as a plain (P2) graymap, occupied cells black, y up."""
    nx, ny = grid.shape
    lines = ["P2", f"{nx} {ny}", "255"]
    for j in range(ny - 1, -1, -1):
        lines.append(" ".join("0" if grid[i, j] else "255" for i in range(nx)))
    Path(path).write_text("\n".join(lines) + "\n")
