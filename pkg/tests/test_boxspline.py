import cmath
import math
from fractions import Fraction as F
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from boxsplines import boxspline
from boxsplines.arrangement import alcove_of, is_regular
from boxsplines.core import Representation, validate
from boxsplines.errors import NotRegular, NotRegularShifted

A2 = [[1, 0], [0, 1], [1, 1]]


def truncated_power_1d(alphas, v):
    """b(Phi)(v) for positive integers Phi via the truncated-power formula."""
    n = len(alphas)
    total = F(0)
    for size in range(n + 1):
        for sub in combinations(alphas, size):
            x = v - sum(sub)
            if x > 0:
                total += (-1) ** size * x ** (n - 1)
    return total / (math.factorial(n - 1) * math.prod(alphas))


def courant(x, y):
    """The three-direction hat: peak 1 at (1, 1), zero on the hexagon boundary."""
    a, b = x - 1, y - 1
    return max(0, 1 - max(abs(a), abs(b), abs(a - b)))


def test_known_values():
    assert boxspline.eval_exact(validate([[1], [2]]), [F(1, 2)]) == F(1, 4)
    assert boxspline.eval_exact(validate([[1], [2]]), [F(3, 2)]) == F(1, 2)
    assert boxspline.eval_exact(validate([[1], [2]]), [F(5, 2)]) == F(1, 4)
    assert boxspline.eval_exact(validate(A2), [F(1, 2), F(1, 3)]) == courant(F(1, 2), F(1, 3))


@pytest.mark.parametrize("alphas", [[1, 1], [1, 2], [1, 1, 1], [1, 2, 3], [2, 3, 3, 1]])
def test_1d_against_truncated_powers(alphas):
    phi = validate([[a] for a in alphas])
    for k in range(1, 8 * sum(alphas)):
        v = F(2 * k - 1, 16) + F(1, 97)
        if is_regular(phi, (v,)):
            assert boxspline.eval_exact(phi, [v]) == truncated_power_1d(alphas, v)


@settings(max_examples=40, deadline=None)
@given(st.fractions(0, 2, max_denominator=60), st.fractions(0, 2, max_denominator=60))
def test_courant_element(x, y):
    phi = validate(A2)
    if is_regular(phi, (x, y)):
        assert boxspline.eval_exact(phi, [x, y]) == courant(x, y)


def test_zwart_powell_against_quadrature():
    # b([A2, (1,-1)])(v) = int_0^1 courant(v - t (1,-1)) dt
    phi = validate(A2 + [[1, -1]])
    ts = np.linspace(0, 1, 40001)
    for v in [(F(3, 5), F(2, 7)), (F(3, 2), F(1, 3)), (F(11, 10), F(-1, 5))]:
        vals = [courant(float(v[0]) - t, float(v[1]) + t) for t in ts]
        oracle = np.trapezoid(vals, ts) if hasattr(np, "trapezoid") else np.trapz(vals, ts)
        assert abs(float(boxspline.eval_exact(phi, v)) - oracle) < 1e-6


@settings(max_examples=20, deadline=None)
@given(st.fractions(0, 1, max_denominator=40), st.fractions(0, 1, max_denominator=40))
def test_partition_of_unity(x, y):
    phi = validate([[1, 0], [0, 1], [1, 1], [1, 2]])
    total = F(0)
    for i in range(-4, 2):
        for j in range(-5, 2):
            w = (x - i, y - j)
            if not is_regular(phi, w):
                return
            total += boxspline.eval_exact(phi, w)
    assert total == 1


def test_symmetry_about_center():
    phi = validate([[1, 0], [0, 1], [1, 1], [1, 2]])
    top = (F(3), F(4))
    for v in [(F(1, 3), F(1, 2)), (F(5, 4), F(7, 3)), (F(2, 5), F(9, 7))]:
        mirror = tuple(a - b for a, b in zip(top, v))
        assert boxspline.eval_exact(phi, v) == boxspline.eval_exact(phi, mirror)


def test_parametric_two_ones_closed_form():
    phi = validate([[1], [1]])
    y1, y2 = 0.3, -0.2
    for v in [0.25, 0.5, 1.3, 1.75]:
        a, b = max(0.0, v - 1), min(1.0, v)
        w = y1 - y2
        oracle = cmath.exp(1j * y2 * v) * (cmath.exp(1j * w * b) - cmath.exp(1j * w * a)) / (1j * w)
        assert abs(boxspline.eval(phi, [y1, y2], [F(v).limit_denominator()]) - oracle) < 1e-12


@pytest.mark.parametrize("phi", [[[1], [2], [3]], A2 + [[1, 2]]])
def test_parametric_character_twist(phi):
    # y_k = theta . alpha_k gives b(Phi, y)(v) = exp(i theta . v) b(Phi)(v)
    phi = validate(phi)
    theta = [0.07, -0.04][: phi.dim]
    y = [sum(t * a for t, a in zip(theta, al)) for al in phi]
    pts = [(F(3, 4),), (F(7, 3),)] if phi.dim == 1 else [(F(1, 3), F(1, 2)), (F(5, 4), F(7, 3))]
    for v in pts:
        twist = cmath.exp(1j * sum(t * float(a) for t, a in zip(theta, v)))
        assert abs(boxspline.eval(phi, y, v) - twist * float(boxspline.eval_exact(phi, v))) < 1e-12


def test_eval_translated_definition():
    phi = validate([[1], [2]])
    r = Representation.of(phi, [F(1, 2), F(1, 4)])
    y = [0.05, 0.02]
    v = (F(1, 3),)
    expected = cmath.exp(-1j * r.pairing(y)) * boxspline.eval(phi, y, (v[0] + r.point[0],))
    assert abs(boxspline.eval_translated(phi, y, r, v) - expected) < 1e-15
    with pytest.raises(NotRegularShifted):
        boxspline.eval_translated(phi, y, r, (F(0),))


def test_wall_points_rejected():
    with pytest.raises(NotRegular):
        boxspline.eval_exact(validate([[1], [2]]), [1])
    with pytest.raises(NotRegular):
        boxspline.eval(validate(A2), [0.1, 0.1, 0.1], [F(1, 2), F(1, 2)])


def test_local_polynomial_matches_evaluation():
    phi = validate(A2 + [[1, 2]])
    a = alcove_of(phi, (F(6, 5), F(13, 10)))
    piece = boxspline.local_polynomial(phi, a)
    assert piece.is_exact and piece.poly.degree <= phi.N - phi.dim
    center, h = boxspline.interior_box(a)
    for t in [F(-1, 2), F(0), F(1, 3)]:
        p = (center[0] + t * h, center[1] - t * h / 2)
        assert piece.poly(p) == boxspline.eval_exact(phi, p)


def test_local_exppoly_matches_evaluation():
    phi = validate([[1], [2], [3]])
    y = [0.03, -0.05, 0.02]
    a = alcove_of(phi, (F(5, 2),))
    piece = boxspline.local_exppoly(phi, y, a)
    for v in [F(21, 10), F(5, 2), F(29, 10)]:
        assert abs(piece.sampler((v,)) - boxspline.eval(phi, y, (v,))) < 1e-10


def test_frequencies_count():
    # one theta per distinct ratio y_k / alpha_k
    assert len(boxspline.frequencies(validate([[1], [2]]), [0.1, 0.2])) == 1
    assert len(boxspline.frequencies(validate([[1], [2]]), [0.1, 0.3])) == 2
