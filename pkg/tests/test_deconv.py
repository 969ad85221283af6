import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from boxsplines.arrangement import alcove_of
from boxsplines.core import LatticeFunction, Representation, validate
from boxsplines.deconv import (
    covers,
    deconvolve,
    deconvolve_translated,
    dm_components,
    dm_quasipolynomial,
    p_s,
    reconstruct_from_alcove,
    semidiscrete,
)
from boxsplines.errors import (
    DirectionOutsideCone,
    LatticePointNotCovered,
    NotGeneric,
    NotRegular,
    PointOutsideZonotope,
)
from boxsplines.torus import TorusPoint

A2 = [[1, 0], [0, 1], [1, 1]]


def b_single(a, v):
    """b([a])(v) for an integer a > 0."""
    return F(1, a) if 0 < v < a else F(0)


def random_f(dim, rng, size=4, radius=3):
    pts = {tuple(rng.randint(-radius, radius) for _ in range(dim)) for _ in range(size)}
    return LatticeFunction({p: F(rng.randint(-9, 9), rng.randint(1, 5)) for p in pts})


def test_semidiscrete_two_point():
    phi = validate([[1], [2]])
    f = LatticeFunction({(0,): 1, (1,): 2})
    # b(1/2) + 2 b(-1/2) with b = b([1, 2])
    assert semidiscrete(phi, [0, 0], f, [F(1, 2)]) == F(1, 4)
    assert semidiscrete(phi, [0, 0], f, [F(3, 2)]) == F(1, 2) + 2 * F(1, 4)
    with pytest.raises(NotRegular):
        semidiscrete(phi, [0, 0], f, [1])


def test_semidiscrete_partition_of_unity():
    phi = validate(A2 + [[1, 2]])
    ones = LatticeFunction({(i, j): 1 for i in range(-6, 6) for j in range(-6, 6)})
    assert semidiscrete(phi, [0] * 4, ones, [F(1, 3), F(1, 5)]) == 1


def test_p_s_against_kernel_oracle():
    # b([1, 2], s = 1/2) = (s delta_1 - 1) * b([2]) with s^1 = -1
    phi = validate([[1], [2]])
    s = TorusPoint.of([F(1, 2)])
    rng = random.Random(3)
    for _ in range(10):
        f = random_f(1, rng)
        v = F(rng.randint(-30, 30), 7) + F(1, 101)
        want = sum(
            (-1) ** abs(xi[0]) * c * (-b_single(2, v - xi[0] - 1) - b_single(2, v - xi[0]))
            for xi, c in f.items()
        )
        assert p_s(phi, s, [0, 0], f, [v]) == want
    assert p_s(phi, s, [0, 0], LatticeFunction({(0,): 1}), [F(1, 2)]) == F(-1, 2)


def test_p_s_identity_is_semidiscrete():
    phi = validate([[1], [2]])
    f = LatticeFunction({(0,): 1, (2,): F(-1, 3)})
    v = [F(5, 3)]
    assert p_s(phi, TorusPoint.of([0]), [0, 0], f, v) == semidiscrete(phi, [0, 0], f, v)


@pytest.mark.parametrize("vectors", [[[1], [2]], [[1], [1], [2]], [[2], [3]], A2, A2 + [[1, 2]]])
def test_deconvolve_recovers_exactly(vectors):
    phi = validate(vectors)
    rng = random.Random(len(vectors))
    eps = (F(1, 1),) if phi.dim == 1 else (F(3, 1), F(2, 1))
    for _ in range(3):
        f = random_f(phi.dim, rng)
        for lam in list(f.support)[:2] + [(0,) * phi.dim]:
            assert deconvolve(phi, [0] * phi.N, f, lam, eps) == f(lam)


def test_deconvolve_parametric():
    phi = validate([[1], [1], [2]])
    y = [0.04, -0.03, 0.05]
    f = LatticeFunction({(0,): 1, (1,): F(1, 2), (3,): -2})
    for lam in [(0,), (1,), (2,), (3,)]:
        assert abs(deconvolve(phi, y, f, lam, (F(1),)) - float(f(lam))) < 1e-8


def test_deconvolve_direction_checks():
    phi = validate(A2)
    f = LatticeFunction({(0, 0): 1})
    with pytest.raises(NotGeneric):
        deconvolve(phi, [0, 0, 0], f, (0, 0), (F(1), F(1)))
    # a generic direction outside the cone does not recover f
    phi = validate([[1], [2]])
    assert deconvolve(phi, [0, 0], LatticeFunction({(0,): 1}), (0,), (F(-1),)) != 1


@settings(max_examples=15, deadline=None)
@given(st.dictionaries(st.integers(-3, 3), st.integers(-5, 5), min_size=1, max_size=4), st.integers(-3, 3))
def test_deconvolve_linear_and_exact(data, lam):
    phi = validate([[1], [2], [3]])
    f = LatticeFunction({(k,): v for k, v in data.items()})
    assert deconvolve(phi, [0, 0, 0], f, (lam,), (F(1),)) == f((lam,))


def test_translated_matches_untranslated_at_zero():
    phi = validate([[1], [2]])
    f = LatticeFunction({(0,): 3, (1,): -1})
    r0 = Representation.of(phi, [0, 0])
    for lam in [(0,), (1,), (2,)]:
        assert deconvolve_translated(phi, [0, 0], r0, f, lam, (F(1),)) == deconvolve(phi, [0, 0], f, lam, (F(1),))


def test_translated_interior_point():
    phi = validate([[1], [1], [2]])
    f = LatticeFunction({(0,): 2, (2,): F(1, 3)})
    r = Representation.of(phi, [F(1, 2), F(1, 3), F(1, 7)])
    for eps in [(F(1),), (F(-1),)]:
        for lam in [(0,), (1,), (2,)]:
            assert deconvolve_translated(phi, [0, 0, 0], r, f, lam, eps) == f(lam)


def test_translated_errors():
    phi = validate([[1], [2]])
    f = LatticeFunction({(0,): 1})
    with pytest.raises(PointOutsideZonotope):
        deconvolve_translated(phi, [0, 0], (F(4),), f, (0,), (F(1),))
    with pytest.raises(DirectionOutsideCone):
        deconvolve_translated(phi, [0, 0], (F(0),), f, (0,), (F(-1),))


def test_reconstruct_from_alcove():
    phi = validate(A2 + [[1, 2]])
    c = alcove_of(phi, (F(6, 5), F(13, 10)))
    f = LatticeFunction({(0, 0): 1, (1, 0): F(-2, 3), (1, 1): 4})
    for lam in [(0, 0), (1, 0), (1, 1), (0, 1)]:
        assert covers(phi, c, lam)
        assert reconstruct_from_alcove(phi, [0] * 4, c, f, lam) == f(lam)
    assert not covers(phi, c, (5, 5))
    with pytest.raises(LatticePointNotCovered):
        reconstruct_from_alcove(phi, [0] * 4, c, f, (5, 5))


def test_dm_quasipolynomial_unimodular():
    # b([1, 1]) = v on (0, 1); Todd = 1 + d at order 1, so Q(nu) = nu + 1
    phi = validate([[1], [1]])
    c = alcove_of(phi, (F(1, 2),))
    (m,) = dm_components(phi, c).values()
    assert [m((F(k),)) for k in range(3)] == [1, 2, 3]


@pytest.mark.parametrize("vectors", [[[1], [2], [3]], A2 + [[1, 2]]])
def test_dm_quasipolynomial_is_delta_on_cover(vectors):
    phi = validate(vectors)
    w = (F(5, 2) + F(1, 13),) if phi.dim == 1 else (F(6, 5), F(13, 10))
    c = alcove_of(phi, w)
    checked = 0
    for nu in ([(k,) for k in range(-6, 4)] if phi.dim == 1 else [(i, j) for i in range(-3, 3) for j in range(-4, 3)]):
        if covers(phi, c, nu):
            assert dm_quasipolynomial(phi, c, nu) == (1 if not any(nu) else 0)
            checked += 1
    assert checked >= 3
