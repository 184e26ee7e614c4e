"""Exact diagonal affine iterated function systems on the plane.

Every coefficient is a :class:`fractions.Fraction`, so composite maps, cylinder
rectangles and offset differences are computed without rounding. Words are
tuples of 1-based letters and compose outermost-first: the word ``(i1, i2, i3)``
denotes ``f_i1 o f_i2 o f_i3``.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from pathlib import Path
from typing import Iterable, Sequence

DEFAULT_MAP_CAP = 10**6

Word = tuple[int, ...]
Interval = tuple[Fraction, Fraction]
Rect = tuple[Interval, Interval]


class InvalidWordError(ValueError):
    """A word contains a letter outside ``1..m``."""


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured word/map cap.

    ``partial`` carries whatever result was completed before the cap was hit
    (or ``None``).
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class IFSFormatError(ValueError):
    """An IFS document could not be parsed."""


def to_rational(value) -> Fraction:
    """Convert ``value`` to an exact Fraction.

    Strings may be decimals (``"0.23"`` is 23/100 exactly) or fractions
    (``"2/3"``). Floats are read through their shortest ``repr`` so that a
    JSON ``0.1`` means 1/10, not the nearest binary double.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def format_rational(q: Fraction) -> str:
    """Render ``q`` as ``"p/q"`` (always with a denominator)."""
    return f"{q.numerator}/{q.denominator}"


def _check_ratio(r: Fraction, name: str) -> None:
    if not (0 < abs(r) < 1):
        raise ValueError(f"{name} must satisfy 0 < |{name}| < 1, got {r}")


@dataclass(frozen=True)
class Similarity1D:
    """The similarity ``x -> ratio * x + offset`` of the real line."""

    ratio: Fraction
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "ratio", to_rational(self.ratio))
        object.__setattr__(self, "offset", to_rational(self.offset))
        _check_ratio(self.ratio, "ratio")

    def __call__(self, x):
        return self.ratio * x + self.offset


@dataclass(frozen=True)
class IFS1D:
    maps: tuple[Similarity1D, ...]

    def __post_init__(self):
        maps = tuple(self.maps)
        if not maps:
            raise ValueError("an IFS needs at least one map")
        object.__setattr__(self, "maps", maps)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple]) -> "IFS1D":
        """Build from ``(ratio, offset)`` pairs."""
        return cls(tuple(Similarity1D(to_rational(r), to_rational(t)) for r, t in pairs))

    def __len__(self):
        return len(self.maps)

    @property
    def ratios(self) -> tuple[Fraction, ...]:
        return tuple(f.ratio for f in self.maps)

    @property
    def offsets(self) -> tuple[Fraction, ...]:
        return tuple(f.offset for f in self.maps)


@dataclass(frozen=True)
class DiagonalMap:
    """The planar map ``(x, y) -> (alpha * x + tx, beta * y + ty)``."""

    alpha: Fraction
    beta: Fraction
    tx: Fraction = Fraction(0)
    ty: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("alpha", "beta", "tx", "ty"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        _check_ratio(self.alpha, "alpha")
        _check_ratio(self.beta, "beta")

    def __call__(self, x, y):
        return self.alpha * x + self.tx, self.beta * y + self.ty

    def compose(self, inner: "DiagonalMap") -> "DiagonalMap":
        """Return ``self o inner``."""
        return DiagonalMap(
            self.alpha * inner.alpha,
            self.beta * inner.beta,
            self.alpha * inner.tx + self.tx,
            self.beta * inner.ty + self.ty,
        )

    def swapped(self) -> "DiagonalMap":
        return DiagonalMap(self.beta, self.alpha, self.ty, self.tx)

    def image_of_unit_square(self) -> Rect:
        return (
            _ordered(self.tx, self.alpha + self.tx),
            _ordered(self.ty, self.beta + self.ty),
        )


def _ordered(a: Fraction, b: Fraction) -> Interval:
    return (a, b) if a <= b else (b, a)


def _inside_unit(interval: Interval) -> bool:
    return 0 <= interval[0] and interval[1] <= 1


@dataclass(frozen=True)
class DiagonalIFS:
    """A finite family of diagonal contractions of the plane.

    Parameters
    ----------
    maps : sequence of DiagonalMap
        At least one map.
    maps_unit_square_into_itself : bool, optional
        Assert that every map sends ``[0,1]^2`` into itself. The claim is
        verified on construction; covering-based estimators require it.
    """

    maps: tuple[DiagonalMap, ...]
    maps_unit_square_into_itself: bool = False

    def __post_init__(self):
        maps = tuple(self.maps)
        if not maps:
            raise ValueError("an IFS needs at least one map")
        object.__setattr__(self, "maps", maps)
        if self.maps_unit_square_into_itself and not self.unit_square_invariant():
            raise ValueError("some map does not send [0,1]^2 into itself")

    @classmethod
    def from_coefficients(cls, alphas, betas, txs=None, tys=None, *,
                          maps_unit_square_into_itself=False) -> "DiagonalIFS":
        m = len(alphas)
        txs = txs if txs is not None else [0] * m
        tys = tys if tys is not None else [0] * m
        if not (len(betas) == len(txs) == len(tys) == m):
            raise ValueError("coefficient lists differ in length")
        maps = tuple(DiagonalMap(to_rational(a), to_rational(b), to_rational(u), to_rational(v))
                     for a, b, u, v in zip(alphas, betas, txs, tys))
        return cls(maps, maps_unit_square_into_itself)

    def __len__(self):
        return len(self.maps)

    @property
    def alphas(self) -> tuple[Fraction, ...]:
        return tuple(s.alpha for s in self.maps)

    @property
    def betas(self) -> tuple[Fraction, ...]:
        return tuple(s.beta for s in self.maps)

    def unit_square_invariant(self) -> bool:
        """True when every ``S_i([0,1]^2)`` lies inside ``[0,1]^2``."""
        return all(_inside_unit(ix) and _inside_unit(iy)
                   for ix, iy in (s.image_of_unit_square() for s in self.maps))

    def swapped(self) -> "DiagonalIFS":
        """Exchange the roles of the x and y coordinates in every map."""
        return DiagonalIFS(tuple(s.swapped() for s in self.maps),
                           self.maps_unit_square_into_itself)

    def compose_word(self, word: Sequence[int]) -> DiagonalMap | None:
        """Composite map of ``word``; ``None`` stands for the identity (empty word)."""
        _validate_word(word, len(self.maps))
        out = None
        for letter in reversed(word):
            s = self.maps[letter - 1]
            out = s if out is None else s.compose(out)
        return out


def _validate_word(word: Sequence[int], m: int) -> None:
    for letter in word:
        if not isinstance(letter, int) or not 1 <= letter <= m:
            raise InvalidWordError(f"letter {letter!r} not in 1..{m}")


def compose_1d(word: Sequence[int], ifs: IFS1D) -> tuple[Fraction, Fraction]:
    """Return ``(ratio, offset)`` of the composite similarity of ``word``.

    ``offset`` is the image of 0. The empty word gives the identity ``(1, 0)``.

    >>> ifs = IFS1D.from_pairs([("1/2", 0), ("1/2", "1/4")])
    >>> compose_1d((1, 2), ifs)
    (Fraction(1, 4), Fraction(1, 8))
    """
    _validate_word(word, len(ifs))
    ratio, offset = Fraction(1), Fraction(0)
    for letter in word:
        f = ifs.maps[letter - 1]
        offset = offset + ratio * f.offset
        ratio = ratio * f.ratio
    return ratio, offset


def cylinder_rect(word: Sequence[int], ifs: DiagonalIFS) -> Rect:
    """Exact rectangle ``S_word([0,1]^2)`` as ``((x0, x1), (y0, y1))``."""
    s = ifs.compose_word(word)
    if s is None:
        return (Fraction(0), Fraction(1)), (Fraction(0), Fraction(1))
    return s.image_of_unit_square()


def project(ifs: DiagonalIFS, axis: str) -> IFS1D:
    """Projected similarity system on the ``"x"`` or ``"y"`` axis."""
    if axis == "x":
        return IFS1D(tuple(Similarity1D(s.alpha, s.tx) for s in ifs.maps))
    if axis == "y":
        return IFS1D(tuple(Similarity1D(s.beta, s.ty) for s in ifs.maps))
    raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")


def words(m: int, n: int):
    """All words of length ``n`` over ``1..m`` in lexicographic order."""
    return itertools.product(range(1, m + 1), repeat=n)


def check_budget(count: int, cap: int, what: str = "maps") -> None:
    if count > cap:
        raise BudgetExceededError(f"{count} {what} exceeds the cap of {cap}")


def iterate(ifs: DiagonalIFS, k: int, cap: int = DEFAULT_MAP_CAP) -> DiagonalIFS:
    """The ``k``-th iterate: all length-``k`` compositions, lexicographic order."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    m = len(ifs)
    check_budget(m**k, cap)
    level = list(ifs.maps)
    for _ in range(k - 1):
        # prepend one letter to every existing composite; keeps lexicographic order
        level = [s.compose(t) for s in ifs.maps for t in level]
    return DiagonalIFS(tuple(level), ifs.maps_unit_square_into_itself)


def iterate_1d(ifs: IFS1D, k: int, cap: int = DEFAULT_MAP_CAP) -> IFS1D:
    if k < 1:
        raise ValueError("k must be a positive integer")
    check_budget(len(ifs) ** k, cap)
    level = list(ifs.maps)
    for _ in range(k - 1):
        level = [Similarity1D(f.ratio * g.ratio, f.ratio * g.offset + f.offset)
                 for f in ifs.maps for g in level]
    return IFS1D(tuple(level))


# --- document format -------------------------------------------------------

@dataclass(frozen=True)
class IFSDocument:
    """A parsed IFS input document: the system plus optional weights."""

    ifs: DiagonalIFS
    weights: tuple[Fraction, ...] | None = None
    source: str | None = field(default=None, compare=False)


def _line_of(text: str, needle: str) -> int:
    for lineno, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return lineno
    return 1


def parse_ifs_document(text: str, source: str = "<string>") -> IFSDocument:
    """Parse the JSON IFS format.

    ``{"maps": [{"alpha": .., "beta": .., "tx": .., "ty": ..}, ...], "weights": [..]}``
    with numbers given as exact decimal strings or ``"p/q"`` fractions.
    ``maps_unit_square_into_itself`` is set automatically when it holds.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IFSFormatError(f"{source}:{exc.lineno}: invalid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict) or "maps" not in doc:
        raise IFSFormatError(f"{source}:1: expected an object with a 'maps' list")
    raw_maps = doc["maps"]
    if not isinstance(raw_maps, list) or not raw_maps:
        raise IFSFormatError(f"{source}:{_line_of(text, 'maps')}: 'maps' must be a non-empty list")

    maps = []
    for index, entry in enumerate(raw_maps):
        if not isinstance(entry, dict):
            raise IFSFormatError(f"{source}:{_line_of(text, 'maps')}: map {index + 1} must be an object")
        try:
            coeffs = {key: to_rational(entry.get(key, 0)) for key in ("alpha", "beta", "tx", "ty")}
            if "alpha" not in entry or "beta" not in entry:
                raise ValueError("alpha and beta are required")
            maps.append(DiagonalMap(**coeffs))
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            line = _map_entry_line(text, index)
            raise IFSFormatError(f"{source}:{line}: map {index + 1}: {exc}") from exc

    weights = None
    if doc.get("weights") is not None:
        try:
            weights = tuple(to_rational(w) for w in doc["weights"])
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise IFSFormatError(f"{source}:{_line_of(text, 'weights')}: weights: {exc}") from exc
        if len(weights) != len(maps):
            raise IFSFormatError(f"{source}:{_line_of(text, 'weights')}: "
                                 f"{len(weights)} weights for {len(maps)} maps")

    ifs = DiagonalIFS(tuple(maps))
    if ifs.unit_square_invariant():
        ifs = DiagonalIFS(ifs.maps, True)
    return IFSDocument(ifs, weights, source)


def _map_entry_line(text: str, index: int) -> int:
    """Line of the ``index``-th (0-based) ``"alpha"`` key, a proxy for the map's position."""
    hits = [m.start() for m in re.finditer(r'"alpha"', text)]
    if index < len(hits):
        return text.count("\n", 0, hits[index]) + 1
    return _line_of(text, "maps")


def load_ifs(path: str | Path) -> IFSDocument:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise IFSFormatError(f"{path}:0: cannot read file: {exc.strerror}") from exc
    return parse_ifs_document(text, str(path))


def ifs_to_document(ifs: DiagonalIFS, weights=None) -> dict:
    doc = {"maps": [{"alpha": format_rational(s.alpha), "beta": format_rational(s.beta),
                     "tx": format_rational(s.tx), "ty": format_rational(s.ty)} for s in ifs.maps]}
    if weights is not None:
        doc["weights"] = [format_rational(to_rational(w)) for w in weights]
    return doc
