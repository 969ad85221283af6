"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Roots of unity ``s^alpha`` and Gaussian-rational data both live here, so the
exact deconvolution path can sum over torus vertices and still return an
exact value. Elements are stored in the power basis ``1, z, ..., z^(phi(n)-1)``
reduced modulo the n-th cyclotomic polynomial, which makes the representation
canonical for a fixed ``n``.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, pi

__all__ = ["Cyclo", "cyclotomic_poly", "as_exact", "to_complex", "is_exact", "exact_equal"]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    # integer polynomials, coefficients low -> high, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num[: len(den) - 1])
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _polydiv_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _units(n: int) -> tuple[int, ...]:
    return tuple(j for j in range(1, n + 1) if gcd(j, n) == 1)


def _reduce(coeffs: list[Fraction], n: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, deg - 1, -1):
        t = c[i]
        if t:
            c[i] = Fraction(0)
            for j in range(deg):
                if phi[j]:
                    c[i - deg + j] -= t * phi[j]
    c = c[:deg] + [Fraction(0)] * (deg - len(c))
    return tuple(c)


class Cyclo:
    """An element of Q(zeta_n), ``zeta_n = exp(2 pi i / n)``."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs):
        self.n = n
        self.c = _reduce([Fraction(v) for v in coeffs], n)

    @classmethod
    def _raw(cls, n: int, c: tuple) -> "Cyclo":
        obj = cls.__new__(cls)
        obj.n = n
        obj.c = c
        return obj

    # construction -----------------------------------------------------
    @classmethod
    def rational(cls, q, n: int = 1) -> "Cyclo":
        deg = len(cyclotomic_poly(n)) - 1
        return cls._raw(n, (Fraction(q),) + (Fraction(0),) * (deg - 1))

    @classmethod
    def root(cls, n: int, k: int = 1) -> "Cyclo":
        """``zeta_n ** k``."""
        k %= n
        coeffs = [Fraction(0)] * (k + 1)
        coeffs[k] = Fraction(1)
        return cls(n, coeffs)

    @classmethod
    def from_angle(cls, angle: Fraction) -> "Cyclo":
        """``exp(2 pi i angle)`` for a rational ``angle``."""
        angle = Fraction(angle) % 1
        return cls.root(angle.denominator, angle.numerator)

    @classmethod
    def gaussian(cls, re, im=0) -> "Cyclo":
        return cls(4, [Fraction(re), Fraction(im)])

    # field structure ----------------------------------------------------
    def lift(self, m: int) -> "Cyclo":
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot lift Q(zeta_{self.n}) into Q(zeta_{m})")
        step = m // self.n
        coeffs = [Fraction(0)] * (step * len(self.c))
        for k, v in enumerate(self.c):
            coeffs[k * step] = v
        return Cyclo(m, coeffs)

    def _common(self, other):
        if isinstance(other, Cyclo):
            m = _lcm(self.n, other.n)
            return self.lift(m), other.lift(m)
        if isinstance(other, (int, Fraction)):
            return self, Cyclo.rational(other, self.n)
        return NotImplemented, NotImplemented

    def __add__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return Cyclo._raw(a.n, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo._raw(self.n, tuple(-x for x in self.c))

    def __sub__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return Cyclo._raw(a.n, tuple(x - y for x, y in zip(a.c, b.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclo._raw(self.n, tuple(x * other for x in self.c))
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        if len(a.c) == 1:
            return Cyclo._raw(a.n, (a.c[0] * b.c[0],))
        prod = [Fraction(0)] * (2 * len(a.c) - 1)
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        prod[i + j] += x * y
        return Cyclo._raw(a.n, _reduce(prod, a.n))

    __rmul__ = __mul__

    def galois(self, j: int) -> "Cyclo":
        """Image under ``zeta -> zeta**j`` (``j`` coprime to ``n``)."""
        coeffs = [Fraction(0)] * self.n
        for k, v in enumerate(self.c):
            coeffs[(k * j) % self.n] += v
        return Cyclo(self.n, coeffs)

    def conjugate(self) -> "Cyclo":
        return self.galois(-1 % self.n) if self.n > 2 else self

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        others = Cyclo.rational(1, self.n)
        for j in _units(self.n):
            if j % self.n != 1 % self.n:
                others = others * self.galois(j)
        norm = self * others
        if any(norm.c[1:]):
            raise ArithmeticError("field norm is not rational")
        return others * (1 / norm.c[0])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclo.rational(1, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.c)

    def __eq__(self, other):
        if isinstance(other, complex):
            return False
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return a.c == b.c

    __hash__ = None

    def __complex__(self):
        z = cmath.exp(2j * pi / self.n)
        return complex(sum(float(v) * z**k for k, v in enumerate(self.c)))

    def as_gaussian(self) -> tuple[Fraction, Fraction] | None:
        """Return ``(re, im)`` if the element lies in Q(i), else ``None``."""
        x = self.lift(_lcm(self.n, 4))
        i = Cyclo.root(4).lift(x.n)
        re2 = x + x.conjugate()
        im2 = (x - x.conjugate()) * (-i)
        if any(re2.c[1:]) or any(im2.c[1:]):
            return None
        re, im = re2.c[0] / 2, im2.c[0] / 2
        if not x == i * im + re:
            return None
        return re, im

    def __repr__(self):
        g = self.as_gaussian()
        if g is not None:
            re, im = g
            return f"Cyclo({re}{'+' if im >= 0 else '-'}{abs(im)}i)"
        return f"Cyclo(n={self.n}, {list(map(str, self.c))})"


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Cyclo))


def as_exact(x):
    """Coerce ints, Fractions, ``(re, im)`` pairs or Cyclo into an exact scalar."""
    if isinstance(x, Cyclo):
        return x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, tuple) and len(x) == 2:
        re, im = Fraction(x[0]), Fraction(x[1])
        return Cyclo.gaussian(re, im) if im else re
    raise TypeError(f"not an exact scalar: {x!r}")


def to_complex(x) -> complex:
    return complex(x) if not isinstance(x, Fraction) else complex(float(x))


def exact_equal(a, b) -> bool:
    """Exact equality between Fraction/Cyclo scalars."""
    if isinstance(a, Cyclo):
        return a == b
    if isinstance(b, Cyclo):
        return b == a
    return Fraction(a) == Fraction(b)
