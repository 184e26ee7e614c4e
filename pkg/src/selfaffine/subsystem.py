"""Homogeneous subsystems of iterates and strong-separation thinning.

Pipeline: round ``k * p`` to an occurrence vector, take every length-``k``
word with exactly those letter counts, compose them (all composites share
one ratio pair), then greedily drop maps until the unit-square images are
pairwise disjoint.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .dimensions import (WeightVector, bisect_decreasing, log_abs, natural_weights,
                         theorem_b_dimension)
from .ifs import (DEFAULT_MAP_CAP, BudgetExceededError, DiagonalIFS, Interval, Word,
                  check_budget, format_rational)


def typical_counts(w: WeightVector, k: int) -> tuple[int, ...]:
    """Largest-remainder rounding of ``k * p`` (ties to the smaller index).

    The result sums to ``k`` and every entry is within 1 of ``k * p_i``.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    scaled = [k * p for p in w]
    counts = [math.floor(x) for x in scaled]
    remainder = k - sum(counts)
    order = sorted(range(len(counts)), key=lambda i: (-(scaled[i] - counts[i]), i))
    for i in order[:remainder]:
        counts[i] += 1
    return tuple(counts)


def multinomial(counts: Sequence[int]) -> int:
    out, total = 1, 0
    for c in counts:
        total += c
        out *= math.comb(total, c)
    return out


def _arrangements(counts: list[int], prefix: list[int], out: list[Word]) -> None:
    if not any(counts):
        out.append(tuple(prefix))
        return
    for letter, c in enumerate(counts, start=1):
        if c:
            counts[letter - 1] -= 1
            prefix.append(letter)
            _arrangements(counts, prefix, out)
            prefix.pop()
            counts[letter - 1] += 1


@dataclass(frozen=True)
class TypicalWordSet:
    k: int
    counts: tuple[int, ...]
    words: tuple[Word, ...]
    cardinality: int


def typical_words(w: WeightVector, k: int, cap: int = DEFAULT_MAP_CAP) -> TypicalWordSet:
    """All length-``k`` words whose letter counts equal ``typical_counts(w, k)``."""
    counts = typical_counts(w, k)
    card = multinomial(counts)
    check_budget(card, cap, "typical words")
    out: list[Word] = []
    _arrangements(list(counts), [], out)
    return TypicalWordSet(k, counts, tuple(out), card)


def homogeneous_root(count: int, common_alpha, common_beta) -> float:
    """Pressure root of a homogeneous system of ``count`` maps.

    The axes are ordered so that the larger contraction plays the role of
    ``a``; the root is the smaller of the two branch roots of
    ``min{N a^t, N a b^(t-1)} = 1``, clamped at 0.
    """
    if count < 1:
        raise ValueError("a system needs at least one map")
    la, lb = log_abs(common_alpha), log_abs(common_beta)
    if la < lb:
        la, lb = lb, la
    log_n = math.log(count)
    t1 = log_n / -la
    t2 = 1 + (log_n + la) / -lb
    return max(0.0, min(t1, t2))


def homogeneous_root_bisect(count: int, common_alpha, common_beta) -> float:
    """Same root as :func:`homogeneous_root`, by bisection on the min of both branches."""
    la, lb = log_abs(common_alpha), log_abs(common_beta)
    if la < lb:
        la, lb = lb, la
    log_n = math.log(count)

    def f(t):
        return min(math.exp(log_n + t * la), math.exp(log_n + la + (t - 1) * lb))

    if f(0.0) <= 1.0:
        return 0.0
    hi = 1.0
    while f(hi) > 1.0:
        hi *= 2.0
    return bisect_decreasing(f, 0.0, hi)


def typical_root(ifs: DiagonalIFS, k: int, weights: WeightVector | None = None) -> float:
    """Pressure root of the typical-word subsystem at depth ``k``, without enumerating it."""
    w = weights if weights is not None else natural_weights(ifs)
    counts = typical_counts(w, k)
    alpha = math.prod((s.alpha ** c for s, c in zip(ifs.maps, counts)), start=Fraction(1))
    beta = math.prod((s.beta ** c for s, c in zip(ifs.maps, counts)), start=Fraction(1))
    return homogeneous_root(multinomial(counts), alpha, beta)


@dataclass(frozen=True)
class HomogeneousSystem:
    """Maps ``(x, y) -> (common_alpha x + u, common_beta y + v)``, one per source word."""

    common_alpha: Fraction
    common_beta: Fraction
    translations: tuple[tuple[Fraction, Fraction], ...]
    source_words: tuple[Word, ...]
    k: int
    root: float

    def __len__(self):
        return len(self.translations)

    def to_ifs(self) -> DiagonalIFS:
        return DiagonalIFS.from_coefficients(
            [self.common_alpha] * len(self), [self.common_beta] * len(self),
            [u for u, _ in self.translations], [v for _, v in self.translations])

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "common_alpha": format_rational(self.common_alpha),
            "common_beta": format_rational(self.common_beta),
            "translations": [[format_rational(u), format_rational(v)]
                             for u, v in self.translations],
            "source_words": [list(w) for w in self.source_words],
            "root": self.root,
        }


def homogeneous_subsystem(ifs: DiagonalIFS, k: int, weights: WeightVector | None = None,
                          cap: int = DEFAULT_MAP_CAP) -> HomogeneousSystem:
    """Compose every typical word of length ``k`` into a homogeneous system.

    ``weights`` defaults to :func:`natural_weights`. Raises
    ``BudgetExceededError`` if there are more than ``cap`` typical words.
    """
    w = weights if weights is not None else natural_weights(ifs)
    if len(w) != len(ifs):
        raise ValueError(f"{len(w)} weights for {len(ifs)} maps")
    counts = list(typical_counts(w, k))
    check_budget(multinomial(counts), cap, "typical words")
    alpha = math.prod((s.alpha ** c for s, c in zip(ifs.maps, counts)), start=Fraction(1))
    beta = math.prod((s.beta ** c for s, c in zip(ifs.maps, counts)), start=Fraction(1))
    words: list[Word] = []
    translations = []
    one, zero = Fraction(1), Fraction(0)

    def walk(prefix, ax, ay, ux, uy):
        if len(prefix) == k:
            if ax != alpha or ay != beta:
                raise ArithmeticError(f"word {tuple(prefix)} is not homogeneous with the others")
            words.append(tuple(prefix))
            translations.append((ux, uy))
            return
        for letter, s in enumerate(ifs.maps, start=1):
            if counts[letter - 1]:
                counts[letter - 1] -= 1
                prefix.append(letter)
                # prefix o S_letter
                walk(prefix, ax * s.alpha, ay * s.beta, ax * s.tx + ux, ay * s.ty + uy)
                prefix.pop()
                counts[letter - 1] += 1

    walk([], one, one, zero, zero)
    return HomogeneousSystem(alpha, beta, tuple(translations), tuple(words), k,
                             homogeneous_root(len(translations), alpha, beta))


# --- strong separation -------------------------------------------------------

def _image(ratio: Fraction, offset: Fraction) -> Interval:
    end = offset + ratio
    return (offset, end) if ratio > 0 else (end, offset)


def _sweep(intervals: list[tuple[int, int]]) -> list[int]:
    """Greedy left-to-right selection of pairwise strictly separated intervals."""
    order = sorted(range(len(intervals)), key=lambda j: (intervals[j], j))
    kept: list[int] = []
    last_end = None
    for j in order:
        lo, hi = intervals[j]
        if last_end is None or lo > last_end:
            kept.append(j)
            last_end = hi
    return sorted(kept)


def _as_integers(intervals: Sequence[Interval]) -> list[tuple[int, int]]:
    """Rescale exact intervals by a common denominator; order relations are preserved."""
    denom = math.lcm(*(q.denominator for iv in intervals for q in iv)) if intervals else 1
    return [(int(a * denom), int(b * denom)) for a, b in intervals]


def rectangles_pairwise_disjoint(rects: Sequence[tuple[Interval, Interval]],
                                 sweep_axis: int = 0) -> bool:
    """Exact check that closed rectangles are pairwise disjoint.

    Sweeps along ``sweep_axis`` (0 = x, 1 = y) in order of left edge; each
    rectangle is compared with every earlier one whose image on that axis
    still reaches it, i.e. with every rectangle it is not already separated
    from along the sweep axis.
    """
    a = _as_integers([r[sweep_axis] for r in rects])
    b = _as_integers([r[1 - sweep_axis] for r in rects])
    order = sorted(range(len(rects)), key=lambda j: a[j])
    active: list[int] = []
    for j in order:
        lo = a[j][0]
        active = [i for i in active if a[i][1] >= lo]
        bj = b[j]
        for i in active:
            bi = b[i]
            if not (bi[1] < bj[0] or bj[1] < bi[0]):
                return False
        active.append(j)
    return True


@dataclass(frozen=True)
class SubsystemResult:
    system: HomogeneousSystem
    ssc_certified: bool
    achieved_dimension: float
    target_dimension: float
    epsilon: float | None = None
    iterate_depth_total: int = 0
    achieved: bool = True
    axis_used: str = "x"
    notes: tuple[str, ...] = field(default=())

    def rectangles(self):
        a, b = self.system.common_alpha, self.system.common_beta
        return [(_image(a, u), _image(b, v)) for u, v in self.system.translations]

    def to_dict(self) -> dict:
        return {
            "system": self.system.to_dict(),
            "ssc_certified": self.ssc_certified,
            "achieved_dimension": self.achieved_dimension,
            "target_dimension": self.target_dimension,
            "epsilon": self.epsilon,
            "iterate_depth_total": self.iterate_depth_total,
            "achieved": self.achieved,
            "axis_used": self.axis_used,
            "notes": list(self.notes),
        }


def ssc_thin(system: HomogeneousSystem, target_dimension: float | None = None,
             epsilon: float | None = None) -> SubsystemResult:
    """Keep a subset of maps whose unit-square images are pairwise disjoint.

    Sweeps the x-images greedily; if that keeps fewer than half of the
    distinct x-images, the y-images are swept too and the larger selection
    wins (x on ties). Touching images count as intersecting. The result is
    re-verified pairwise before ``ssc_certified`` is set.
    """
    a, b = system.common_alpha, system.common_beta
    x_int = _as_integers([_image(a, u) for u, _ in system.translations])
    y_int = _as_integers([_image(b, v) for _, v in system.translations])
    kept, axis = _sweep(x_int), "x"
    if len(kept) < len(set(x_int)) / 2:
        kept_y = _sweep(y_int)
        if len(kept_y) > len(kept):
            kept, axis = kept_y, "y"
    thinned = HomogeneousSystem(
        a, b,
        tuple(system.translations[j] for j in kept),
        tuple(system.source_words[j] for j in kept),
        system.k,
        homogeneous_root(len(kept), a, b),
    )
    kept_rects = [(_image(a, u), _image(b, v)) for u, v in thinned.translations]
    certified = rectangles_pairwise_disjoint(kept_rects, sweep_axis=0 if axis == "x" else 1)
    target = system.root if target_dimension is None else target_dimension
    return SubsystemResult(thinned, certified, thinned.root, target, epsilon, system.k,
                           axis_used=axis)


def _whole_system_if_homogeneous(ifs: DiagonalIFS) -> HomogeneousSystem | None:
    a, b = ifs.maps[0].alpha, ifs.maps[0].beta
    if any(s.alpha != a or s.beta != b for s in ifs.maps):
        return None
    return HomogeneousSystem(a, b, tuple((s.tx, s.ty) for s in ifs.maps),
                             tuple((i,) for i in range(1, len(ifs) + 1)), 1,
                             homogeneous_root(len(ifs), a, b))


def approximate_subsystem(ifs: DiagonalIFS, epsilon: float, k_max: int,
                          weights: WeightVector | None = None,
                          cap: int = DEFAULT_MAP_CAP) -> SubsystemResult:
    """Search iterate depths for a strongly separated homogeneous subsystem.

    The target is the attractor dimension from :func:`theorem_b_dimension`.
    Depth 1 is tried with the whole system when it is already homogeneous;
    depths ``2..k_max`` use typical-word subsystems. Returns the first result
    within ``epsilon`` of the target, otherwise the best one found with
    ``achieved=False`` (also when the word cap stops the search early).
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    target = theorem_b_dimension(ifs).value
    w = weights if weights is not None else natural_weights(ifs)
    best: SubsystemResult | None = None

    def finish(result: SubsystemResult, achieved: bool, notes=()) -> SubsystemResult:
        return SubsystemResult(result.system, result.ssc_certified, result.achieved_dimension,
                               target, epsilon, result.iterate_depth_total, achieved,
                               result.axis_used, tuple(notes))

    candidates = []
    whole = _whole_system_if_homogeneous(ifs)
    if whole is not None:
        candidates.append(1)
    candidates.extend(range(2, k_max + 1))

    for k in candidates:
        try:
            system = whole if k == 1 else homogeneous_subsystem(ifs, k, w, cap)
        except BudgetExceededError as exc:
            if best is None:
                raise
            return finish(best, False, (f"stopped at k={k}: {exc}",))
        result = ssc_thin(system, target, epsilon)
        if not result.ssc_certified:
            continue
        if best is None or result.achieved_dimension > best.achieved_dimension:
            best = result
        if result.achieved_dimension >= target - epsilon:
            return finish(result, True)
    if best is None:
        raise ArithmeticError("no certified subsystem found")
    return finish(best, False, (f"target - epsilon not reached up to k={k_max}",))
