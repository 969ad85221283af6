"""Sparse multivariate polynomials with exact (or complex) coefficients.

A polynomial is a dict ``{exponent tuple: coefficient}``; zero coefficients
are never stored. Coefficients may be Fractions, :class:`Cyclo` elements or
complex numbers, and operations mix them through ordinary arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb, factorial

import cmath

import numpy as np

from .core import solve

__all__ = ["Poly", "ExpPoly"]


def _is_zero(c) -> bool:
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c == 0


class Poly:
    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict | None = None):
        self.dim = dim
        self.terms = {e: c for e, c in (terms or {}).items() if not _is_zero(c)}

    @classmethod
    def zero(cls, dim: int) -> "Poly":
        return cls(dim)

    @classmethod
    def constant(cls, dim: int, c) -> "Poly":
        return cls(dim, {(0,) * dim: c})

    # algebra --------------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return Poly(self.dim, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scale(-1)

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return Poly(self.dim, out)

    def scale(self, c) -> "Poly":
        return Poly(self.dim, {e: c * v for e, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    # calculus ---------------------------------------------------------------
    def __call__(self, point):
        total = 0
        for e, c in self.terms.items():
            m = c
            for x, k in zip(point, e):
                if k:
                    m = m * x**k
            total = total + m
        return total if self.terms else Fraction(0)

    def derivative(self, orders) -> "Poly":
        """Partial derivative ``prod_j (d/dx_j)^orders[j]``."""
        out = {}
        for e, c in self.terms.items():
            if any(k < o for k, o in zip(e, orders)):
                continue
            f = 1
            for k, o in zip(e, orders):
                f *= factorial(k) // factorial(k - o)
            out[tuple(k - o for k, o in zip(e, orders))] = c * f
        return Poly(self.dim, out)

    def translate(self, a) -> "Poly":
        """``q(x) = p(x + a)``."""
        out: dict = {}
        for e, c in self.terms.items():
            ranges = [range(k + 1) for k in e]
            for sub in product(*ranges):
                f = 1
                for k, j, aj in zip(e, sub, a):
                    f *= comb(k, j) * _num(aj) ** (k - j)
                if f:
                    out[sub] = out[sub] + c * f if sub in out else c * f
        return Poly(self.dim, out)

    # interpolation -----------------------------------------------------------
    @classmethod
    def interpolate_tensor(cls, axes, values) -> "Poly":
        """Exact tensor-product interpolation.

        ``axes[j]`` are the distinct nodes along coordinate ``j`` and
        ``values`` maps each grid point (tuple) to its value; the result has
        degree ``< len(axes[j])`` in each variable.
        """
        dim = len(axes)
        exps = list(product(*[range(len(ax)) for ax in axes]))
        pts = list(product(*axes))
        mat = [[_monomial(p, e) for e in exps] for p in pts]
        coeffs = solve(mat, [values[p] for p in pts])
        return cls(dim, dict(zip(exps, coeffs)))

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"x{j}^{k}" if k > 1 else f"x{j}" for j, k in enumerate(e) if k)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "Poly(" + " + ".join(parts) + ")"


def _num(x):
    return x if isinstance(x, complex) else Fraction(x)


def _monomial(p, e):
    out = Fraction(1)
    for x, k in zip(p, e):
        out *= Fraction(x) ** k
    return out


class ExpPoly:
    """``sum_theta exp(i theta . (v - c)) p_theta(v - c)`` with complex coefficients.

    This is the shape of every local piece of a box spline (or multispline)
    with parameters: one frequency ``theta`` per basis of the list, with
    polynomial factors of degree at most ``N - d``.
    """

    def __init__(self, center, parts: dict, error: float = 0.0):
        self.center = tuple(float(x) for x in center)
        self.parts = parts  # theta tuple -> Poly in local coordinates
        self.error = error

    @property
    def dim(self) -> int:
        return len(self.center)

    def local(self, v) -> tuple:
        return tuple(float(a) - c for a, c in zip(v, self.center))

    def __call__(self, v) -> complex:
        x = self.local(v)
        total = 0j
        for theta, p in self.parts.items():
            phase = cmath.exp(1j * sum(t * xi for t, xi in zip(theta, x)))
            total += phase * complex(p(x))
        return total

    @classmethod
    def fit(cls, points, values, thetas, degree: int, center, scale: float, checks=()):
        """Least-squares fit in the span of ``exp(i theta . x) x^a``, ``|a| <= degree``.

        ``checks`` are extra ``(point, value)`` pairs used only for the
        reported error.
        """
        dim = len(center)
        exps = [e for e in product(range(degree + 1), repeat=dim) if sum(e) <= degree]
        c = np.array([float(x) for x in center])
        pts = np.array([[float(x) for x in p] for p in points]) - c

        def design(P):
            cols = []
            for th in thetas:
                ph = np.exp(1j * (P @ np.array(th, dtype=complex)))
                for e in exps:
                    cols.append(ph * np.prod((P / scale) ** np.array(e), axis=1))
            return np.array(cols).T

        A = design(pts)
        b = np.array(values, dtype=complex)
        sol, *_ = np.linalg.lstsq(A, b, rcond=None)
        parts = {}
        k = 0
        for th in thetas:
            terms = {}
            for e in exps:
                terms[e] = complex(sol[k]) / scale ** sum(e)
                k += 1
            parts[tuple(complex(t) for t in th)] = Poly(dim, terms)
        out = cls(center, parts)
        resid = np.abs(A @ sol - b)
        err = float(resid.max()) if len(resid) else 0.0
        for p, v in checks:
            err = max(err, abs(out(p) - v))
        out.error = err
        return out
