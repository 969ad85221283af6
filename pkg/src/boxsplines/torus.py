"""Points of the torus T = U / 2 pi Z^d and the vertex set.

A torus point ``s`` is stored as an angle vector ``u`` in [0,1)^d with
``s^lam = exp(2 pi i u . lam)``; characters are exact roots of unity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd

from .core import DirectionList, as_vector, dot, format_rational, require_spanning
from .cyclo import Cyclo

__all__ = ["TorusPoint", "phi_s", "phi_s_indices", "vertex_set", "character"]


@dataclass(frozen=True, order=True)
class TorusPoint:
    angle: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "angle", tuple(Fraction(a) % 1 for a in self.angle))

    @classmethod
    def identity(cls, dim: int) -> "TorusPoint":
        return cls((Fraction(0),) * dim)

    @classmethod
    def of(cls, angle) -> "TorusPoint":
        return cls(as_vector(angle))

    @property
    def order(self) -> int:
        n = 1
        for a in self.angle:
            n = n * a.denominator // gcd(n, a.denominator)
        return n

    @property
    def is_identity(self) -> bool:
        return not any(self.angle)

    def inverse(self) -> "TorusPoint":
        return TorusPoint(tuple(-a for a in self.angle))

    def exponent(self, lam) -> Fraction:
        """``u . lam mod 1``, so that ``s^lam = exp(2 pi i * exponent)``."""
        if self.is_identity:
            return Fraction(0)
        return dot(self.angle, lam) % 1

    def __str__(self):
        return "(" + ", ".join(format_rational(a) for a in self.angle) + ")"


def character(s: TorusPoint, lam) -> Cyclo:
    """Exact ``s^lam``."""
    lam = (lam,) if isinstance(lam, int) else tuple(lam)
    return Cyclo.from_angle(s.exponent(lam))


def phi_s_indices(phi: DirectionList, s: TorusPoint) -> tuple[int, ...]:
    return tuple(k for k, a in enumerate(phi) if s.exponent(a) == 0)


def phi_s(phi: DirectionList, s: TorusPoint) -> DirectionList:
    """The sublist ``{alpha in Phi : s^alpha = 1}``."""
    return phi.sublist(phi_s_indices(phi, s))


def _basis_solutions(rows) -> list[tuple[Fraction, ...]]:
    """All ``u`` in [0,1)^d with ``rows @ u`` integral (``rows`` square, nonsingular)."""
    from sympy import Matrix
    from sympy.matrices.normalforms import smith_normal_decomp

    m = Matrix(rows)
    D, _, t = smith_normal_decomp(m)  # D = s * m * t
    d = m.shape[0]
    diag = [abs(int(D[i, i])) for i in range(d)]
    out = []
    for ms in product(*[range(k) for k in diag]):
        w = [Fraction(mi, di) for mi, di in zip(ms, diag)]
        u = tuple(sum((int(t[i, j]) * w[j] for j in range(d)), Fraction(0)) % 1 for i in range(d))
        out.append(u)
    return out


@lru_cache(maxsize=None)
def vertex_set(phi: DirectionList) -> tuple[TorusPoint, ...]:
    """Torus points ``s`` for which ``Phi(s)`` still spans, sorted."""
    require_spanning(phi)
    found = set()
    for basis in phi.bases:
        rows = [list(phi[k]) for k in basis]
        for u in _basis_solutions(rows):
            s = TorusPoint(u)
            if s not in found and phi_s(phi, s).spans:
                found.add(s)
    return tuple(sorted(found))
