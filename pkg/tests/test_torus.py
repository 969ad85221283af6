import math
from fractions import Fraction as F
from itertools import product

import pytest

from boxsplines.core import det, validate
from boxsplines.cyclo import Cyclo
from boxsplines.errors import NotSpanning
from boxsplines.torus import TorusPoint, character, phi_s, vertex_set

FIXTURES = [
    [[1], [2]],
    [[2], [3]],
    [[1], [-1]],
    [[1, 0], [0, 1], [1, 1]],
    [[1, 0], [0, 1], [1, 1], [1, 2]],
    [[2, 0], [0, 2], [1, 1]],
    [[1, 1], [1, -1], [1, 0]],
]


def brute_vertex_set(phi):
    """Scan the grid (1/M) Z^d mod 1, M the lcm of all basis determinants."""
    M = 1
    for basis in phi.bases:
        M = math.lcm(M, int(abs(det([phi[k] for k in basis]))))
    out = set()
    for ks in product(range(M), repeat=phi.dim):
        s = TorusPoint(tuple(F(k, M) for k in ks))
        if phi_s(phi, s).spans:
            out.add(s)
    return out


@pytest.mark.parametrize("vectors", FIXTURES)
def test_vertex_set_against_brute_force(vectors):
    phi = validate(vectors)
    got = vertex_set(phi)
    assert set(got) == brute_vertex_set(phi)
    assert list(got) == sorted(got)
    assert TorusPoint.identity(phi.dim) in got
    assert {s.inverse() for s in got} == set(got)


def test_vertex_set_examples():
    assert [s.angle for s in vertex_set(validate([[1], [2]]))] == [(F(0),), (F(1, 2),)]
    assert len(vertex_set(validate([[1, 0], [0, 1], [1, 1]]))) == 1
    with pytest.raises(NotSpanning):
        vertex_set(validate([[1, 1], [2, 2]]))


@pytest.mark.parametrize("vectors", FIXTURES)
def test_singleton_iff_unimodular(vectors):
    phi = validate(vectors)
    assert (len(vertex_set(phi)) == 1) == phi.is_unimodular


def test_phi_s():
    phi = validate([[1], [2]])
    assert phi_s(phi, TorusPoint.of([F(1, 2)])).vectors == ((2,),)
    assert phi_s(phi, TorusPoint.of([0])).vectors == ((1,), (2,))


def test_torus_point_basics():
    s = TorusPoint.of([F(5, 4), F(-1, 6)])
    assert s.angle == (F(1, 4), F(5, 6))
    assert s.order == 12
    assert s.inverse().angle == (F(3, 4), F(1, 6))
    assert TorusPoint.identity(2).is_identity
    assert str(TorusPoint.of([F(1, 2)])) == "(1/2)"


def test_character_exact():
    s = TorusPoint.of([F(1, 2), F(1, 4)])
    assert character(s, (1, 0)) == -1
    assert character(s, (0, 1)) == Cyclo.gaussian(0, 1)
    assert character(s, (2, 4)) == 1
    assert character(s, (1, 1)) * character(s, (-1, -1)) == 1
