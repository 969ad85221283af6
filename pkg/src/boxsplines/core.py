"""Direction lists, exact rational linear algebra and zonotope geometry.

The lattice is always Z^d. Points of V are tuples of :class:`Fraction`
(``RationalVector``); nothing in this module touches floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .cyclo import as_exact, is_exact
from .errors import (
    DimensionMismatch,
    EmptyList,
    NotSalient,
    NotSpanning,
    PointOutsideZonotope,
)
from .lp import solve_lp

RationalVector = tuple  # tuple[Fraction, ...]

__all__ = [
    "RationalVector",
    "DirectionList",
    "ParameterList",
    "Representation",
    "LatticeFunction",
    "validate",
    "as_vector",
    "parse_rational",
    "format_rational",
    "rank",
    "det",
    "solve",
    "dot",
    "zonotope_contains",
    "tangent_cone_contains",
    "center_representation",
    "any_representation",
    "zonotope_bbox",
    "positive_functional",
]


# --------------------------------------------------------------------------
# rationals and vectors

def parse_rational(x) -> Fraction:
    """Parse ``"p/q"`` strings, ints and Fractions. Floats are rejected."""
    if isinstance(x, float):
        raise TypeError("floating-point input is not allowed on the exact path")
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def as_vector(v) -> RationalVector:
    if isinstance(v, (int, Fraction, str)):
        return (parse_rational(v),)
    return tuple(parse_rational(x) for x in v)


def dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return len(_rref([list(v) for v in vectors])[1])


def det(matrix: Sequence[Sequence]) -> Fraction:
    m = [list(map(Fraction, r)) for r in matrix]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return out


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...]:
    """Solve a square nonsingular system exactly."""
    n = len(matrix)
    aug = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    red, piv = _rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular system")
    return tuple(red[i][n] for i in range(n))


def nullspace_vector(vectors: Sequence[Sequence], dim: int) -> tuple[int, ...]:
    """A primitive integer normal to ``d-1`` independent vectors, sign-normalized."""
    red, piv = _rref([list(v) for v in vectors])
    free = next(c for c in range(dim) if c not in piv)
    sol = [Fraction(0)] * dim
    sol[free] = Fraction(1)
    for r, c in enumerate(piv):
        sol[c] = -red[r][free]
    den = 1
    for x in sol:
        den = den * x.denominator // _gcd(den, x.denominator)
    ints = [int(x * den) for x in sol]
    g = 0
    for x in ints:
        g = _gcd(g, abs(x))
    ints = [x // g for x in ints]
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# --------------------------------------------------------------------------
# domain types

@dataclass(frozen=True)
class DirectionList:
    """The list Phi of integer directions in Z^d (repetitions allowed)."""

    dim: int
    vectors: tuple[tuple[int, ...], ...]
    spans: bool = field(default=False, compare=False)
    salient: bool = field(default=False, compare=False)

    @property
    def N(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, k):
        return self.vectors[k]

    def sublist(self, indices: Iterable[int]) -> "DirectionList":
        return validate([self.vectors[k] for k in indices], self.dim, allow_empty=True)

    def to_json(self) -> str:
        return json.dumps({"dim": self.dim, "vectors": [list(v) for v in self.vectors]})

    @classmethod
    def from_json(cls, text) -> "DirectionList":
        data = json.loads(text) if isinstance(text, str) else text
        return validate(data["vectors"], data.get("dim"))

    @cached_property
    def bases(self) -> tuple[tuple[int, ...], ...]:
        """Index tuples of all d-subsets that form a basis of V."""
        return tuple(
            idx for idx in combinations(range(self.N), self.dim)
            if det([self.vectors[k] for k in idx]) != 0
        )

    @cached_property
    def is_unimodular(self) -> bool:
        return all(abs(det([self.vectors[k] for k in b])) == 1 for b in self.bases)


def validate(vectors, dim: int | None = None, *, allow_empty: bool = False) -> DirectionList:
    """Build a :class:`DirectionList`, computing ``spans`` and ``salient`` exactly."""
    vecs = []
    for v in vectors:
        if isinstance(v, int):
            v = [v]
        vv = []
        for x in v:
            if isinstance(x, bool) or int(x) != x:
                raise TypeError(f"direction entries must be integers, got {x!r}")
            vv.append(int(x))
        vecs.append(tuple(vv))
    if not vecs and not allow_empty:
        raise EmptyList("direction list is empty")
    if dim is None:
        if not vecs:
            raise EmptyList("cannot infer dimension of an empty list")
        dim = len(vecs[0])
    if any(len(v) != dim for v in vecs):
        raise DimensionMismatch(f"all directions must have length {dim}")
    spans = rank(vecs) == dim if vecs else False
    salient = _is_salient(vecs, dim)
    return DirectionList(dim, tuple(vecs), spans, salient)


def _is_salient(vecs, dim) -> bool:
    if not vecs:
        return True
    if any(not any(v) for v in vecs):
        return False
    # 0 in conv(Phi)  <=>  sum l_k a_k = 0, sum l_k = 1, l >= 0 feasible
    n = len(vecs)
    cons = [([v[j] for v in vecs], "==", 0) for j in range(dim)]
    cons.append(([1] * n, "==", 1))
    return not solve_lp([0] * n, cons, n).feasible


@dataclass(frozen=True)
class ParameterList:
    values: tuple[complex, ...]

    @classmethod
    def zeros(cls, n: int) -> "ParameterList":
        return cls((0j,) * n)

    @classmethod
    def of(cls, phi: DirectionList, values=None) -> "ParameterList":
        if values is None:
            return cls.zeros(phi.N)
        if isinstance(values, ParameterList):
            values = values.values
        vals = tuple(complex(v) for v in values)
        if len(vals) != phi.N:
            raise DimensionMismatch(f"expected {phi.N} parameters, got {len(vals)}")
        return cls(vals)

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, k):
        return self.values[k]


@dataclass(frozen=True)
class Representation:
    """Coefficients ``r_k`` with ``point = sum r_k alpha_k``."""

    entries: tuple[Fraction, ...]
    point: RationalVector

    @classmethod
    def of(cls, phi: DirectionList, entries) -> "Representation":
        ent = as_vector(entries)
        if len(ent) != phi.N:
            raise DimensionMismatch(f"expected {phi.N} entries, got {len(ent)}")
        pt = tuple(
            sum((ent[k] * phi[k][j] for k in range(phi.N)), Fraction(0)) for j in range(phi.dim)
        )
        return cls(ent, pt)

    def pairing(self, y: ParameterList) -> complex:
        """``<r, y> = sum r_k y_k``."""
        return sum((float(r) * yk for r, yk in zip(self.entries, y)), 0j)


class LatticeFunction:
    """Finitely supported function Z^d -> C.

    Values are exact (Fraction / :class:`Cyclo`) when every value supplied is
    exact, complex otherwise.
    """

    def __init__(self, values: dict | None = None, dim: int | None = None):
        self.values: dict[tuple[int, ...], object] = {}
        for k, v in (values or {}).items():
            key = (int(k),) if isinstance(k, int) else tuple(int(x) for x in k)
            if dim is None:
                dim = len(key)
            if len(key) != dim:
                raise DimensionMismatch("inconsistent lattice point dimension")
            if isinstance(v, (complex, float)):
                val = complex(v)
            else:
                val = as_exact(v)
            if val != 0:
                self.values[key] = val
        self.dim = dim

    @classmethod
    def delta(cls, point, value=1) -> "LatticeFunction":
        p = (point,) if isinstance(point, int) else tuple(point)
        return cls({p: value}, len(p))

    @property
    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.values)

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in self.values.values())

    def __call__(self, point):
        p = (point,) if isinstance(point, int) else tuple(point)
        return self.values.get(p, Fraction(0))

    def shift(self, kappa) -> "LatticeFunction":
        """``(shift f)(x) = f(x - kappa)``."""
        kap = (kappa,) if isinstance(kappa, int) else tuple(kappa)
        return LatticeFunction(
            {tuple(a + b for a, b in zip(p, kap)): v for p, v in self.values.items()}, self.dim
        )

    def __add__(self, other: "LatticeFunction") -> "LatticeFunction":
        out = dict(self.values)
        for p, v in other.values.items():
            out[p] = out[p] + v if p in out else v
        return LatticeFunction(out, self.dim or other.dim)

    def scale(self, c) -> "LatticeFunction":
        return LatticeFunction({p: c * v for p, v in self.values.items()}, self.dim)

    def items(self):
        return self.values.items()

    def __repr__(self):
        return f"LatticeFunction({self.values!r})"


# --------------------------------------------------------------------------
# zonotope geometry

def _zonotope_constraints(phi: DirectionList, r: RationalVector, extra_col=None):
    n = phi.N + (1 if extra_col is not None else 0)
    cons = []
    for j in range(phi.dim):
        row = [phi[k][j] for k in range(phi.N)]
        if extra_col is not None:
            row.append(-extra_col[j])
        cons.append((row, "==", r[j]))
    for k in range(n):
        row = [0] * n
        row[k] = 1
        cons.append((row, "<=", 1))
    return cons, n


def zonotope_contains(phi: DirectionList, r) -> bool:
    """Is ``r`` in Z(Phi) = {sum t_k alpha_k, 0 <= t_k <= 1}?"""
    r = as_vector(r)
    cons, n = _zonotope_constraints(phi, r)
    return solve_lp([0] * n, cons, n).feasible


def _point(phi, r):
    if isinstance(r, Representation):
        return r.point
    return as_vector(r)


def tangent_cone_contains(phi: DirectionList, r, eps) -> bool:
    """Is ``eps`` in the tangent cone of Z(Phi) at ``r``?

    Decided as: max ``tau`` s.t. ``r + tau*eps`` in Z(Phi), ``0 <= tau <= 1``,
    is strictly positive.
    """
    pt = _point(phi, r)
    eps = as_vector(eps)
    if not zonotope_contains(phi, pt):
        raise PointOutsideZonotope(f"{pt} is not in the zonotope")
    cons, n = _zonotope_constraints(phi, pt, extra_col=eps)
    obj = [0] * phi.N + [1]
    res = solve_lp(obj, cons, n)
    return res.status == "optimal" and res.value > 0


def center_representation(phi: DirectionList) -> Representation:
    return Representation.of(phi, [Fraction(1, 2)] * phi.N)


def any_representation(phi: DirectionList, r) -> Representation:
    """Some ``[r_1..r_N]`` in [0,1]^N with ``sum r_k alpha_k = r`` (an LP vertex)."""
    r = as_vector(r)
    cons, n = _zonotope_constraints(phi, r)
    res = solve_lp([0] * n, cons, n)
    if not res.feasible:
        raise PointOutsideZonotope(f"{r} is not in the zonotope")
    return Representation.of(phi, res.x)


def zonotope_bbox(phi: DirectionList) -> tuple[RationalVector, RationalVector]:
    lo = tuple(Fraction(sum(min(0, v[j]) for v in phi)) for j in range(phi.dim))
    hi = tuple(Fraction(sum(max(0, v[j]) for v in phi)) for j in range(phi.dim))
    return lo, hi


def positive_functional(phi: DirectionList) -> RationalVector:
    """A linear form ``l`` with ``l(alpha_k) >= 1`` for every direction."""
    if not phi.salient:
        raise NotSalient("directions do not generate a salient cone")
    d = phi.dim
    cons = [(list(v), ">=", 1) for v in phi]
    res = solve_lp([0] * d, cons, d, free=range(d))
    return res.x


def require_spanning(phi: DirectionList) -> None:
    if not phi.spans:
        raise NotSpanning(f"directions {list(phi.vectors)} do not span R^{phi.dim}")
