"""Finite-depth evidence for the Hochman separation condition.

For words of length ``n`` the separation of two distinct words is infinite
when their composite derivatives differ and ``|f_u(0) - f_v(0)|`` when they
agree. The condition asks for ``min separation > eps**n`` for *every* ``n``,
which no finite computation can confirm. What can be done exactly:

* find a complete overlap (two distinct words inducing the same map), which
  refutes the condition, or
* report the exact minimum separation up to some depth, which is evidence
  only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .ifs import (DEFAULT_MAP_CAP, IFS1D, BudgetExceededError, Word, check_budget,
                  format_rational)

INFINITY = math.inf
DEFAULT_N_MAX = 10
DEFAULT_RATE_FLOOR = 1e-12

VERDICTS = ("overlap_found", "no_overlap_up_to_n", "separation_healthy")

EVIDENCE_NOTE = (
    "A verdict other than overlap_found is bounded-depth evidence, not a proof, "
    "that the Hochman condition holds: the condition quantifies over every word length."
)


def _level(ifs: IFS1D, n: int, cap: int) -> list[tuple[Fraction, Fraction, Word]]:
    """``(ratio, offset, word)`` for every word of length ``n``, lexicographic."""
    m = len(ifs)
    check_budget(m**n, cap, "words")
    level = [(Fraction(1), Fraction(0), ())]
    for _ in range(n):
        # prepend letters: f_i o f_w has ratio r_i r_w and offset t_i + r_i f_w(0)
        level = [(f.ratio * r, f.offset + f.ratio * t, (i,) + w)
                 for i, f in enumerate(ifs.maps, start=1) for r, t, w in level]
    return level


def _min_gap(level) -> tuple[Fraction | float, tuple[Word, Word] | None]:
    classes: dict[Fraction, list[tuple[Fraction, Word]]] = {}
    for r, t, w in level:
        classes.setdefault(r, []).append((t, w))
    best: Fraction | float = INFINITY
    witness = None
    for members in classes.values():
        if len(members) < 2:
            continue
        members.sort()
        for (t0, w0), (t1, w1) in zip(members, members[1:]):
            gap = t1 - t0
            pair = (w0, w1) if w0 < w1 else (w1, w0)
            if gap < best or (gap == best and pair < witness):
                best, witness = gap, pair
    return best, witness


def min_separation(ifs: IFS1D, n: int, cap: int = DEFAULT_MAP_CAP):
    """Exact minimum separation over distinct words of length ``n``.

    Words are grouped by exact composite derivative (sign included); within a
    group the offsets are sorted and only neighbouring gaps are examined.

    Returns
    -------
    delta : Fraction or float
        The minimum, or ``math.inf`` when all derivative classes are singletons.
    witness : tuple of two words or None
        A pair attaining the minimum, the lexicographically smallest such pair
        (each pair listed in increasing word order).
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    return _min_gap(_level(ifs, n, cap))


def has_exact_overlap(ifs: IFS1D, n_max: int, cap: int = DEFAULT_MAP_CAP):
    """First pair of distinct equal-length words inducing the same similarity.

    Searches ``n = 1..n_max`` and returns the smallest ``n`` witness, or ``None``.
    """
    for n in range(1, n_max + 1):
        delta, witness = min_separation(ifs, n, cap)
        if delta == 0:
            return witness
    return None


@dataclass(frozen=True)
class LevelRecord:
    n: int
    delta_min: Fraction | float
    rate: float | None
    witness: tuple[Word, Word] | None

    def to_dict(self) -> dict:
        finite = self.delta_min != INFINITY
        return {
            "n": self.n,
            "delta_min": format_rational(self.delta_min) if finite else "INFINITY",
            "rate": self.rate,
            "witness": [list(w) for w in self.witness] if self.witness else None,
        }


@dataclass(frozen=True)
class SeparationReport:
    per_level: tuple[LevelRecord, ...]
    overlap_witness: tuple[Word, Word] | None
    verdict: str
    rate_floor: float = DEFAULT_RATE_FLOOR
    complete: bool = True
    note: str = field(default=EVIDENCE_NOTE)

    @property
    def min_rate(self) -> float | None:
        rates = [rec.rate for rec in self.per_level if rec.rate is not None]
        return min(rates) if rates else None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "levels": [rec.to_dict() for rec in self.per_level],
            "overlap_witness": ([list(w) for w in self.overlap_witness]
                                if self.overlap_witness else None),
            "min_rate": self.min_rate,
            "rate_floor": self.rate_floor,
            "complete": self.complete,
            "note": self.note,
        }


def _rate(delta: Fraction, n: int) -> float:
    if delta == 0:
        return 0.0
    # logs of the integer parts stay finite even when float(delta) underflows
    return math.exp((math.log(delta.numerator) - math.log(delta.denominator)) / n)


def _verdict(levels, overlap, floor) -> str:
    if overlap is not None:
        return "overlap_found"
    rates = [rec.rate for rec in levels if rec.rate is not None]
    if not rates or min(rates) >= floor:
        return "separation_healthy"
    return "no_overlap_up_to_n"


def hochman_report(ifs: IFS1D, n_max: int = DEFAULT_N_MAX,
                   rate_floor: float = DEFAULT_RATE_FLOOR,
                   cap: int = DEFAULT_MAP_CAP) -> SeparationReport:
    """Minimum separations and their ``n``-th roots for ``n = 1..n_max``.

    Stops at the first level with a complete overlap, since every deeper level
    then has one too. If the word cap is hit, ``BudgetExceededError.partial``
    holds the report for the levels completed so far.
    """
    if n_max < 1:
        raise ValueError("n_max must be a positive integer")
    levels: list[LevelRecord] = []
    overlap = None
    for n in range(1, n_max + 1):
        try:
            delta, witness = min_separation(ifs, n, cap)
        except BudgetExceededError as exc:
            partial = SeparationReport(tuple(levels), None, _verdict(levels, None, rate_floor),
                                       rate_floor, complete=False)
            raise BudgetExceededError(str(exc), partial) from exc
        rate = None if delta == INFINITY else _rate(delta, n)
        levels.append(LevelRecord(n, delta, rate, witness))
        if delta == 0:
            overlap = witness
            break
    return SeparationReport(tuple(levels), overlap, _verdict(levels, overlap, rate_floor),
                            rate_floor)
