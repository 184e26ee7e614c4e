"""Entropy, Lyapunov exponents, pressure roots and the dimension formulas.

All logarithms are natural. Root finding is plain bisection on monotone
functions with absolute tolerance ``TOL`` and at most ``MAX_ITER`` halvings.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .ifs import DiagonalIFS, to_rational

TOL = 1e-12
MAX_ITER = 200
# slack when comparing a computed ratio/dimension against the threshold 1
BOUNDARY_SLACK = 1e-10

CASE_TAGS = ("A1", "A2", "B1", "B2", "out_of_theorem_scope")


def log_abs(q) -> float:
    """``ln|q|`` for a Fraction or number, safe for tiny exact rationals."""
    q = to_rational(q)
    return math.log(abs(q.numerator)) - math.log(q.denominator)


def bisect_decreasing(f: Callable[[float], float], lo: float, hi: float,
                      target: float = 1.0, tol: float = TOL,
                      max_iter: int = MAX_ITER) -> float:
    """Solve ``f(t) = target`` for a decreasing ``f`` bracketed by ``[lo, hi]``.

    Requires ``f(lo) >= target >= f(hi)``.
    """
    flo, fhi = f(lo), f(hi)
    if flo < target or fhi > target:
        raise ValueError(f"root not bracketed: f({lo})={flo}, f({hi})={fhi}")
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if f(mid) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _grow_bracket(f: Callable[[float], float], start: float = 1.0,
                  target: float = 1.0) -> float:
    hi = start
    while f(hi) > target:
        hi *= 2.0
        if hi > 1e6:
            raise ArithmeticError("no bracket found for a decreasing function")
    return hi


@dataclass(frozen=True)
class WeightVector:
    """Positive probability vector ``(p_1, ..., p_m)``."""

    probabilities: tuple[float, ...]

    def __post_init__(self):
        probs = tuple(float(to_rational(p)) if not isinstance(p, float) else p
                      for p in self.probabilities)
        if not probs:
            raise ValueError("empty weight vector")
        if any(not p > 0 for p in probs):
            raise ValueError("weights must be strictly positive")
        if abs(math.fsum(probs) - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {math.fsum(probs)!r}, not 1")
        object.__setattr__(self, "probabilities", probs)

    @classmethod
    def uniform(cls, m: int) -> "WeightVector":
        return cls((1.0 / m,) * m)

    def __len__(self):
        return len(self.probabilities)

    def __iter__(self):
        return iter(self.probabilities)


@dataclass(frozen=True)
class SpectralSummary:
    entropy: float
    chi_x: float
    chi_y: float


@dataclass(frozen=True)
class DimensionReport:
    """Value of a dimension formula together with the conditions it rests on.

    ``hypotheses`` lists the Hochman-condition checks the formula needs (by
    original axis name) and whether the case inequalities hold. The formulas
    do not run those checks; see :mod:`selfaffine.separation`.
    """

    value: float
    case_tag: str
    hypotheses: dict = field(default_factory=dict)
    s_x: float = float("nan")
    s_y: float = float("nan")
    t0: float = float("nan")

    def to_dict(self) -> dict:
        return {"case": self.case_tag, "value": self.value, "s_x": self.s_x,
                "s_y": self.s_y, "t0": self.t0, "hypotheses": dict(self.hypotheses)}


def entropy(w: WeightVector) -> float:
    """Shannon entropy ``-sum p ln p`` in nats."""
    return -math.fsum(p * math.log(p) for p in w)


def lyapunov_exponents(w: WeightVector, ifs: DiagonalIFS) -> SpectralSummary:
    if len(w) != len(ifs):
        raise ValueError(f"{len(w)} weights for {len(ifs)} maps")
    chi_x = -math.fsum(p * log_abs(s.alpha) for p, s in zip(w, ifs.maps))
    chi_y = -math.fsum(p * log_abs(s.beta) for p, s in zip(w, ifs.maps))
    return SpectralSummary(entropy(w), chi_x, chi_y)


def similarity_dimension(ratios: Sequence) -> float:
    """Unique ``s >= 0`` with ``sum |r_i|^s = 1``."""
    if len(ratios) == 0:
        raise ValueError("similarity dimension of an empty system")
    logs = [log_abs(r) for r in ratios]
    if any(lr >= 0 for lr in logs):
        raise ValueError("ratios must satisfy 0 < |r| < 1")
    if len(logs) == 1:
        return 0.0

    def f(s):
        return math.fsum(math.exp(s * lr) for lr in logs)

    return bisect_decreasing(f, 0.0, _grow_bracket(f))


# --- pressure ----------------------------------------------------------------

def _abs_logs(ifs: DiagonalIFS) -> tuple[list[float], list[float]]:
    return [log_abs(a) for a in ifs.alphas], [log_abs(b) for b in ifs.betas]


def _branch_sums(la: list[float], lb: list[float], t: float, branch: int) -> tuple[float, ...]:
    """Sums of one branch of the piecewise pressure, before taking the max."""
    if branch == 0:
        return (math.fsum(math.exp(t * a) for a in la),
                math.fsum(math.exp(t * b) for b in lb))
    if branch == 1:
        return (math.fsum(math.exp(a + (t - 1) * b) for a, b in zip(la, lb)),
                math.fsum(math.exp(b + (t - 1) * a) for a, b in zip(la, lb)))
    return (math.fsum(math.exp(0.5 * t * (a + b)) for a, b in zip(la, lb)),)


def pressure_branch(ifs: DiagonalIFS, t: float, branch: int) -> float:
    """Evaluate branch 0 (``t<1``), 1 (``1<=t<2``) or 2 (``t>=2``) at any ``t``.

    Useful for checking that neighbouring branches agree at ``t = 1, 2``.
    """
    la, lb = _abs_logs(ifs)
    return max(_branch_sums(la, lb, t, branch))


def _pressure_from_logs(la, lb, t):
    if t < 0:
        raise ValueError("pressure is defined for t >= 0")
    branch = 0 if t < 1 else 1 if t < 2 else 2
    return max(_branch_sums(la, lb, t, branch))


def pressure(ifs: DiagonalIFS, t: float) -> float:
    """Piecewise pressure of a diagonal system.

    ``max{sum|a|^t, sum|b|^t}`` for ``t < 1``,
    ``max{sum|a||b|^(t-1), sum|b||a|^(t-1)}`` for ``1 <= t < 2`` and
    ``sum (|a||b|)^(t/2)`` for ``t >= 2``.
    """
    la, lb = _abs_logs(ifs)
    return _pressure_from_logs(la, lb, t)


def affinity_dimension(ifs: DiagonalIFS) -> float:
    """Root ``t0`` of ``pressure(ifs, t0) = 1``; 0 for a single map."""
    if len(ifs) == 1:
        return 0.0
    la, lb = _abs_logs(ifs)

    def f(t):
        return _pressure_from_logs(la, lb, t)

    return bisect_decreasing(f, 0.0, _grow_bracket(f))


def _ordered_by_similarity(ifs: DiagonalIFS) -> tuple[DiagonalIFS, bool, float, float]:
    """Swap axes if needed so that the x-axis has the larger similarity dimension."""
    s_x = similarity_dimension(ifs.alphas)
    s_y = similarity_dimension(ifs.betas)
    if s_x < s_y:
        return ifs.swapped(), True, s_x, s_y
    return ifs, False, s_x, s_y


def _axis_names(swapped: bool) -> tuple[str, str]:
    return ("y", "x") if swapped else ("x", "y")


def theorem_b_dimension(ifs: DiagonalIFS) -> DimensionReport:
    """Dimension of the attractor under the Hochman condition on the axes.

    With the axes ordered so that ``s_beta <= s_alpha``: ``s_alpha`` if
    ``s_alpha <= 1`` (case ``B1``); otherwise, if ``s_beta <= 1``, the root
    ``d`` of ``sum |a_i||b_i|^(d-1) = 1`` (case ``B2``). When both similarity
    dimensions exceed 1 no formula applies and the affinity dimension is
    returned tagged ``out_of_theorem_scope``.
    """
    ordered, swapped, s_x, s_y = _ordered_by_similarity(ifs)
    s_hi, s_lo = max(s_x, s_y), min(s_x, s_y)
    t0 = affinity_dimension(ifs)
    strong, weak = _axis_names(swapped)
    hyp = {"axes_swapped": swapped, "hochman_checked": False}

    if s_hi <= 1 + BOUNDARY_SLACK:
        hyp.update(hochman_required=[strong], inequalities_hold=True,
                   condition=f"s_{strong} <= 1")
        return DimensionReport(s_hi, "B1", hyp, s_x, s_y, t0)
    if s_lo <= 1 + BOUNDARY_SLACK:
        la, lb = _abs_logs(ordered)

        def f(d):
            return math.fsum(math.exp(a + (d - 1) * b) for a, b in zip(la, lb))

        d = bisect_decreasing(f, 1.0, 2.0)
        hyp.update(hochman_required=[strong, weak], inequalities_hold=True,
                   condition=f"s_{weak} <= 1 < s_{strong}")
        return DimensionReport(d, "B2", hyp, s_x, s_y, t0)
    hyp.update(hochman_required=[strong, weak], inequalities_hold=False,
               condition="both similarity dimensions exceed 1")
    return DimensionReport(t0, "out_of_theorem_scope", hyp, s_x, s_y, t0)


def natural_weights(ifs: DiagonalIFS) -> WeightVector:
    """Bernoulli weights whose measure realises the attractor's dimension.

    With the axes ordered so that ``s_beta <= s_alpha`` and ``t`` the
    affinity dimension: ``p_i = |a_i|^t`` if ``s_alpha <= 1``, else
    ``p_i = |a_i||b_i|^(t-1)``. When both similarity dimensions exceed 1 the
    weights come from whichever pressure branch attains the maximum at ``t``.
    """
    if len(ifs) == 1:
        return WeightVector((1.0,))
    ordered, _, s_x, s_y = _ordered_by_similarity(ifs)
    t = affinity_dimension(ifs)
    la, lb = _abs_logs(ordered)
    if max(s_x, s_y) <= 1 + BOUNDARY_SLACK:
        raw = [math.exp(t * a) for a in la]
    elif min(s_x, s_y) <= 1 + BOUNDARY_SLACK or t < 2:
        first = [math.exp(a + (t - 1) * b) for a, b in zip(la, lb)]
        second = [math.exp(b + (t - 1) * a) for a, b in zip(la, lb)]
        raw = first if math.fsum(first) >= math.fsum(second) else second
    else:
        raw = [math.exp(0.5 * t * (a + b)) for a, b in zip(la, lb)]
    total = math.fsum(raw)
    if abs(total - 1.0) > 1e-10:
        raise ArithmeticError(f"natural weights sum to {total!r}")
    return WeightVector(tuple(p / total for p in raw))


def lyapunov_dimension(w: WeightVector, ifs: DiagonalIFS) -> DimensionReport:
    """Dimension of the Bernoulli self-affine measure with weights ``w``.

    Axes are ordered so that ``chi_alpha <= chi_beta``. Returns
    ``h/chi_alpha`` (case ``A1``) when that is at most 1, and
    ``1 + (h - chi_alpha)/chi_beta`` (case ``A2``) when ``h/chi_beta <= 1``.
    Otherwise the latter expression capped at 2 is reported as
    ``out_of_theorem_scope``.
    """
    summary = lyapunov_exponents(w, ifs)
    h = summary.entropy
    swapped = summary.chi_x > summary.chi_y
    chi_a, chi_b = (summary.chi_y, summary.chi_x) if swapped else (summary.chi_x, summary.chi_y)
    strong, weak = _axis_names(swapped)
    s_x = similarity_dimension(ifs.alphas)
    s_y = similarity_dimension(ifs.betas)
    t0 = affinity_dimension(ifs)
    hyp = {"axes_swapped": swapped, "hochman_checked": False,
           "entropy": h, "chi_x": summary.chi_x, "chi_y": summary.chi_y}

    if h / chi_a <= 1 + BOUNDARY_SLACK:
        hyp.update(hochman_required=[strong], inequalities_hold=True,
                   condition=f"h/chi_{strong} <= 1")
        return DimensionReport(h / chi_a, "A1", hyp, s_x, s_y, t0)
    value = 1 + (h - chi_a) / chi_b
    if h / chi_b <= 1 + BOUNDARY_SLACK:
        hyp.update(hochman_required=[strong, weak], inequalities_hold=True,
                   condition=f"h/chi_{weak} <= 1 < h/chi_{strong}")
        return DimensionReport(value, "A2", hyp, s_x, s_y, t0)
    hyp.update(hochman_required=[strong, weak], inequalities_hold=False,
               condition=f"h/chi_{weak} > 1")
    return DimensionReport(min(2.0, value), "out_of_theorem_scope", hyp, s_x, s_y, t0)
