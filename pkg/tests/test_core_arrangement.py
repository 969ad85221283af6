from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from boxsplines.arrangement import (
    alcove_of,
    first_crossing,
    generic_direction,
    is_generic,
    is_regular,
    limit_point,
    walls,
)
from boxsplines.core import (
    DirectionList,
    LatticeFunction,
    Representation,
    center_representation,
    parse_rational,
    positive_functional,
    tangent_cone_contains,
    validate,
    zonotope_contains,
)
from boxsplines.errors import (
    DimensionMismatch,
    EmptyList,
    NotGeneric,
    NotRegular,
    NotSalient,
    NotSpanning,
    PointOutsideZonotope,
)

A2 = [[1, 0], [0, 1], [1, 1]]


def test_validate_metadata():
    phi = validate([[1], [2]])
    assert phi.spans and phi.salient and phi.N == 2
    assert not validate([[1], [-1]]).salient
    assert not validate([[1, 0], [2, 0]]).spans
    with pytest.raises(EmptyList):
        validate([])
    with pytest.raises(DimensionMismatch):
        validate([[1, 0], [1]])
    with pytest.raises(TypeError):
        validate([[1.5]])


def test_json_round_trip():
    phi = validate(A2)
    assert DirectionList.from_json(phi.to_json()) == phi


def test_parse_rational_rejects_floats():
    assert parse_rational("3/4") == F(3, 4)
    with pytest.raises(TypeError):
        parse_rational(0.5)


def test_unimodularity():
    assert validate(A2).is_unimodular
    assert not validate([[1], [2]]).is_unimodular


def test_zonotope_membership():
    phi = validate(A2)
    assert zonotope_contains(phi, (F(2), F(2)))
    assert zonotope_contains(phi, (F(1, 2), F(3, 2)))
    assert not zonotope_contains(phi, (F(2), F(0)))
    assert not zonotope_contains(phi, (F(-1, 10), F(0)))


def test_tangent_cone():
    phi = validate([[1], [2]])
    assert tangent_cone_contains(phi, (F(0),), (F(1),))
    assert not tangent_cone_contains(phi, (F(0),), (F(-1),))
    assert tangent_cone_contains(phi, center_representation(phi), (F(-1),))
    with pytest.raises(PointOutsideZonotope):
        tangent_cone_contains(phi, (F(4),), (F(1),))


def test_positive_functional():
    phi = validate(A2)
    ell = positive_functional(phi)
    assert all(sum(a * b for a, b in zip(ell, v)) >= 1 for v in phi)
    with pytest.raises(NotSalient):
        positive_functional(validate([[1], [-1]]))


def test_lattice_function_shift_and_add():
    f = LatticeFunction({(0,): 1, (2,): F(1, 2)})
    g = f.shift(3)
    assert g(3) == 1 and g(5) == F(1, 2) and g(0) == 0
    assert (f + f)(2) == 1


def test_walls():
    assert walls(validate([[1], [2]])) == ((1,),)
    assert walls(validate(A2)) == ((0, 1), (1, -1), (1, 0))
    with pytest.raises(NotSpanning):
        walls(validate([[1, 1], [2, 2]]))


def test_regular_and_generic():
    phi = validate(A2)
    assert is_regular(phi, (F(1, 3), F(1, 2)))
    assert not is_regular(phi, (F(1, 2), F(1, 2)))  # x - y = 0
    assert is_generic(phi, (F(2), F(1)))
    assert not is_generic(phi, (F(1), F(1)))


def test_alcoves_and_limits():
    phi = validate(A2)
    a = alcove_of(phi, (F(1, 3), F(1, 2)))
    assert a.contains((F(1, 4), F(1, 2)))
    assert not a.contains((F(1, 2), F(1, 3)))
    assert a.translate((1, 1)) == alcove_of(phi, (F(4, 3), F(3, 2)))
    with pytest.raises(NotRegular):
        alcove_of(phi, (F(1), F(1, 3)))
    v, eps = (F(0), F(0)), (F(2), F(1))
    t = first_crossing(phi, v, eps)
    assert t == F(1, 2)
    p = limit_point(phi, v, eps)
    assert is_regular(phi, p)
    with pytest.raises(NotGeneric):
        first_crossing(phi, v, (F(1), F(1)))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_generic_direction_in_cone(seed):
    phi = validate([[1, 0], [0, 1], [1, 1], [1, 2]])
    eps = generic_direction(phi, seed=seed, cone=(0, 0))
    assert is_generic(phi, eps)
    assert tangent_cone_contains(phi, (0, 0), eps)


def test_representation_pairing():
    phi = validate([[1], [2]])
    r = Representation.of(phi, [F(1, 2), F(1, 2)])
    assert r.point == (F(3, 2),)
    assert r.pairing((2j, 4j)) == 3j
