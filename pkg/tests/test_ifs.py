from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from selfaffine.ifs import (IFS1D, BudgetExceededError, DiagonalIFS, DiagonalMap,
                            IFSFormatError, InvalidWordError, compose_1d, cylinder_rect,
                            iterate, iterate_1d, parse_ifs_document, project, to_rational)

from conftest import diagonal_systems, systems_1d

HALF_QUARTER = IFS1D.from_pairs([("1/2", 0), ("1/2", "1/4")])


def test_to_rational_reads_decimals_exactly():
    assert to_rational("0.23") == F(23, 100)
    assert to_rational("2/3") == F(2, 3)
    assert to_rational(0.1) == F(1, 10)
    with pytest.raises(TypeError):
        to_rational(True)


def test_maps_must_contract():
    with pytest.raises(ValueError):
        DiagonalMap(1, F(1, 2))
    with pytest.raises(ValueError):
        DiagonalMap(F(1, 2), 0)
    with pytest.raises(ValueError):
        DiagonalIFS(())


@pytest.mark.parametrize("word, expected", [
    ((), (F(1), F(0))),
    ((1, 2), (F(1, 4), F(1, 8))),
    ((2, 1), (F(1, 4), F(1, 4))),
])
def test_compose_1d_examples(word, expected):
    assert compose_1d(word, HALF_QUARTER) == expected


def test_compose_1d_rejects_bad_letters():
    with pytest.raises(InvalidWordError):
        compose_1d((1, 3), HALF_QUARTER)
    with pytest.raises(InvalidWordError):
        compose_1d((0,), HALF_QUARTER)


@given(systems_1d(), st.data())
def test_composition_is_a_homomorphism(ifs, data):
    letters = st.integers(1, len(ifs))
    u = tuple(data.draw(st.lists(letters, max_size=5)))
    v = tuple(data.draw(st.lists(letters, max_size=5)))
    ru, tu = compose_1d(u, ifs)
    rv, tv = compose_1d(v, ifs)
    assert compose_1d(u + v, ifs) == (ru * rv, tu + ru * tv)


def test_cylinder_rect_examples():
    unit = ((F(0), F(1)), (F(0), F(1)))
    single = DiagonalIFS.from_coefficients(["1/2"], ["1/3"])
    assert cylinder_rect((), single) == unit
    assert cylinder_rect((1,), single) == ((F(0), F(1, 2)), (F(0), F(1, 3)))
    flipped = DiagonalIFS.from_coefficients(["-1/2"], ["1/3"], [1], [0])
    assert cylinder_rect((1,), flipped) == ((F(1, 2), F(1)), (F(0), F(1, 3)))


@given(diagonal_systems(), st.data())
def test_cylinder_sides_are_products_of_ratios(ifs, data):
    word = tuple(data.draw(st.lists(st.integers(1, len(ifs)), max_size=6)))
    (x0, x1), (y0, y1) = cylinder_rect(word, ifs)
    wx, wy = F(1), F(1)
    for letter in word:
        wx *= abs(ifs.maps[letter - 1].alpha)
        wy *= abs(ifs.maps[letter - 1].beta)
    assert (x1 - x0, y1 - y0) == (wx, wy)


def test_nested_cylinders_when_square_is_invariant():
    ifs = DiagonalIFS.from_coefficients(["1/2", "-1/3"], ["1/4", "1/2"], [0, 1], ["1/2", 0],
                                        maps_unit_square_into_itself=True)
    word = (1, 2, 2, 1, 2)
    for cut in range(len(word)):
        (a0, a1), (b0, b1) = cylinder_rect(word[:cut], ifs)
        (c0, c1), (d0, d1) = cylinder_rect(word, ifs)
        assert a0 <= c0 and c1 <= a1 and b0 <= d0 and d1 <= b1


def test_unit_square_flag_is_verified():
    with pytest.raises(ValueError):
        DiagonalIFS.from_coefficients(["1/2"], ["1/2"], ["3/4"], [0],
                                      maps_unit_square_into_itself=True)


def test_project_extracts_fields():
    ifs = DiagonalIFS.from_coefficients(["1/2", "1/2"], ["1/3", "1/5"], [0, "1/2"], ["1/7", 0])
    assert project(ifs, "x") == IFS1D.from_pairs([("1/2", 0), ("1/2", "1/2")])
    assert project(ifs, "y") == IFS1D.from_pairs([("1/3", "1/7"), ("1/5", 0)])
    one = DiagonalIFS.from_coefficients(["1/2"], ["1/3"])
    assert len(project(one, "x")) == 1
    with pytest.raises(ValueError):
        project(ifs, "z")


def test_iterate_examples():
    ifs = DiagonalIFS.from_coefficients(["1/2", "1/3"], ["1/5", "1/2"], ["1/4", 0], [0, "1/2"])
    assert iterate(ifs, 1) == ifs
    second = iterate(ifs, 2)
    px = project(ifs, "x")
    expected = [compose_1d(w, px) for w in [(1, 1), (1, 2), (2, 1), (2, 2)]]
    assert [(s.alpha, s.tx) for s in second.maps] == expected
    three = DiagonalIFS.from_coefficients(["1/2"] * 3, ["1/2"] * 3)
    with pytest.raises(BudgetExceededError):
        iterate(three, 13)


@settings(max_examples=30)
@given(diagonal_systems(m_max=3), st.integers(1, 3))
def test_projection_commutes_with_iteration(ifs, k):
    for axis in "xy":
        assert project(iterate(ifs, k), axis) == iterate_1d(project(ifs, axis), k)


def test_document_parsing_and_diagnostics():
    doc = parse_ifs_document('{"maps": [{"alpha": "0.5", "beta": "1/3", "tx": "0.23", "ty": 0}],'
                             ' "weights": ["1"]}')
    assert doc.ifs.maps[0].tx == F(23, 100)
    assert doc.ifs.maps_unit_square_into_itself
    assert doc.weights == (F(1),)
    bad = '{"maps": [\n  {"alpha": "1/2", "beta": "1/3"},\n  {"alpha": "3/2", "beta": "1/3"}\n]}'
    with pytest.raises(IFSFormatError, match=r"<string>:3: map 2"):
        parse_ifs_document(bad)
    with pytest.raises(IFSFormatError, match=r":2: invalid JSON"):
        parse_ifs_document('{"maps":\n [}')
    with pytest.raises(IFSFormatError, match="weights"):
        parse_ifs_document('{"maps": [{"alpha": "1/2", "beta": "1/2"}], "weights": ["1/2", "1/2"]}')
