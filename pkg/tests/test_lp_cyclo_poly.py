import cmath
from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from boxsplines.cyclo import Cyclo, as_exact, cyclotomic_poly, exact_equal
from boxsplines.lp import feasible_point, solve_lp
from boxsplines.poly import ExpPoly, Poly


def test_lp_simple_maximum():
    # max x + y  s.t. x + 2y <= 4, 3x + y <= 6
    res = solve_lp([1, 1], [([1, 2], "<=", 4), ([3, 1], "<=", 6)], 2)
    assert res.status == "optimal"
    assert res.value == F(14, 5)
    assert res.x == (F(8, 5), F(6, 5))


def test_lp_infeasible_and_unbounded():
    assert not solve_lp([0], [([1], ">=", 2), ([1], "<=", 1)], 1).feasible
    assert solve_lp([1], [([1], ">=", 0)], 1).status == "unbounded"


def test_lp_free_variables():
    res = solve_lp([-1], [([1], ">=", -3)], 1, free=[0])
    assert res.value == 3 and res.x == (F(-3),)
    pt = feasible_point([([1, 1], "==", 1), ([1, -1], "==", 3)], 2, free=[0, 1])
    assert pt == (F(2), F(-1))


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_roots_of_unity_exact():
    z = Cyclo.root(12)
    assert z**12 == 1
    assert z**6 == -1
    w = Cyclo.root(3) - 1
    assert w * w.inverse() == 1
    assert Cyclo.gaussian(1, 2) * Cyclo.gaussian(3, -1) == Cyclo.gaussian(5, 5)


def test_as_gaussian():
    assert Cyclo.root(8) ** 2 == Cyclo.gaussian(0, 1)
    assert (Cyclo.root(8) ** 2).as_gaussian() == (0, 1)
    assert Cyclo.root(3).as_gaussian() is None
    # zeta_3 + zeta_3^2 = -1
    assert (Cyclo.root(3) + Cyclo.root(3, 2)).as_gaussian() == (-1, 0)


@given(st.fractions(min_value=-3, max_value=3, max_denominator=50), st.integers(-30, 30))
def test_from_angle_matches_complex(angle, k):
    z = Cyclo.from_angle(angle)
    assert abs(complex(z**abs(k)) - cmath.exp(2j * cmath.pi * float(angle) * abs(k))) < 1e-9


def test_as_exact():
    assert as_exact(3) == F(3)
    assert exact_equal(as_exact((F(1, 2), 0)), F(1, 2))
    assert exact_equal(as_exact((1, 2)), Cyclo.gaussian(1, 2))


def test_poly_algebra_and_calculus():
    x = Poly(2, {(1, 0): F(1)})
    y = Poly(2, {(0, 1): F(1)})
    p = (x + y) * (x - y)  # x^2 - y^2
    assert p.degree == 2
    assert p((F(3), F(1))) == 8
    assert p.derivative((1, 0)) == x.scale(2)
    assert p.derivative((1, 1)).is_zero()
    q = p.translate((F(1), F(0)))  # (x+1)^2 - y^2
    assert q((F(0), F(0))) == 1


def test_interpolate_tensor_recovers_polynomial():
    target = Poly(2, {(0, 0): F(1), (1, 0): F(2), (1, 1): F(-3, 2)})
    axes = [(F(0), F(1)), (F(0), F(1), F(2))]
    from itertools import product

    vals = {p: target(p) for p in product(*axes)}
    assert Poly.interpolate_tensor(axes, vals) == target


@settings(max_examples=20, deadline=None)
@given(st.floats(-0.2, 0.2), st.floats(-0.2, 0.2))
def test_exppoly_fit_exact_ansatz(t1, t2):
    # f(x) = (1 + x) e^{i t1 x} + 2 e^{i t2 x} lies in the ansatz when t1 != t2
    if abs(t1 - t2) < 0.05:
        t2 = t1 + 0.1
    f = lambda x: (1 + x) * cmath.exp(1j * t1 * x) + 2 * cmath.exp(1j * t2 * x)
    pts = [(F(k, 7),) for k in range(1, 14)]
    fit = ExpPoly.fit(pts, [f(float(p[0])) for p in pts], [(t1,), (t2,)], 1, (F(1),), 1.0)
    assert fit.error < 1e-9
    assert abs(fit((F(5, 2),)) - f(2.5)) < 1e-8
