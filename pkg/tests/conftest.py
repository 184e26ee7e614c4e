import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from selfaffine.ifs import IFS1D, DiagonalIFS


def crit_system(flag=True):
    """Three maps, ratios (1/2, 1/3), x-offsets 0, 23/100, 1/2 and a y-tiling."""
    return DiagonalIFS.from_coefficients(
        ["1/2"] * 3, ["1/3"] * 3, [0, "23/100", "1/2"], [0, "1/3", "2/3"],
        maps_unit_square_into_itself=flag)


def diagonal_segment():
    return DiagonalIFS.from_coefficients(["1/2"] * 2, ["1/2"] * 2, [0, "1/2"], [0, "1/2"],
                                         maps_unit_square_into_itself=True)


def four_corner():
    return DiagonalIFS.from_coefficients(["1/4"] * 4, ["1/4"] * 4, [0, "3/4", 0, "3/4"],
                                         [0, 0, "3/4", "3/4"], maps_unit_square_into_itself=True)


def product_cantor():
    return DiagonalIFS.from_coefficients(["1/3"] * 4, ["1/3"] * 4, [0, "2/3", 0, "2/3"],
                                         [0, 0, "2/3", "2/3"], maps_unit_square_into_itself=True)


@pytest.fixture
def crit():
    return crit_system()


def random_ratio(rng: random.Random, signed=False, max_den=9) -> Fraction:
    q = rng.randint(2, max_den)
    r = Fraction(rng.randint(1, q - 1), q)
    return -r if signed and rng.random() < 0.3 else r


def random_system(rng: random.Random, m_max=5, signed=True) -> DiagonalIFS:
    m = rng.randint(1, m_max)
    return DiagonalIFS.from_coefficients(
        [random_ratio(rng, signed) for _ in range(m)],
        [random_ratio(rng, signed) for _ in range(m)],
        [Fraction(rng.randint(0, 20), 20) for _ in range(m)],
        [Fraction(rng.randint(0, 20), 20) for _ in range(m)])


# hypothesis strategies -------------------------------------------------------

def ratios(signed=True):
    base = st.builds(lambda q, p: Fraction(p % (q - 1) + 1, q),
                     st.integers(2, 12), st.integers(0, 100))
    if not signed:
        return base
    return st.tuples(base, st.booleans()).map(lambda t: -t[0] if t[1] else t[0])


offsets = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 16))


@st.composite
def diagonal_systems(draw, m_max=5, signed=True):
    m = draw(st.integers(1, m_max))
    return DiagonalIFS.from_coefficients(
        draw(st.lists(ratios(signed), min_size=m, max_size=m)),
        draw(st.lists(ratios(signed), min_size=m, max_size=m)),
        draw(st.lists(offsets, min_size=m, max_size=m)),
        draw(st.lists(offsets, min_size=m, max_size=m)))


@st.composite
def systems_1d(draw, m_max=3, signed=True):
    m = draw(st.integers(1, m_max))
    return IFS1D.from_pairs(zip(draw(st.lists(ratios(signed), min_size=m, max_size=m)),
                                draw(st.lists(offsets, min_size=m, max_size=m))))


# acceptance summary ----------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def report_criterion(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
