"""Box splines with parameters: point evaluation and local pieces.

``b(Phi, y)(v)`` is computed by peeling one direction at a time,

    b(Phi, y)(v) = int_0^1 exp(i t y_N) b(Phi', y')(v - t alpha_N) dt,

splitting ``[0, 1]`` where the segment meets an affine wall of ``Phi'`` so
that the integrand is analytic (polynomial when ``y = 0``) on every piece.
The exact path integrates each polynomial piece with exact open
Newton-Cotes weights; the numeric path uses Gauss-Legendre nodes. Both keep
the sample points themselves rational so that wall membership stays exact.
"""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable

import numpy as np

from .arrangement import Alcove, alcove_of, is_regular, walls
from .core import (
    DirectionList,
    ParameterList,
    Representation,
    as_vector,
    det,
    dot,
    require_spanning,
    solve,
    zonotope_bbox,
)
from .errors import InternalCheckFailed, NotRegular, NotRegularShifted, NumericDivergence
from .poly import ExpPoly, Poly

__all__ = [
    "PiecewiseLocalPiece",
    "eval",
    "eval_exact",
    "eval_translated",
    "local_polynomial",
    "local_sampler",
    "interior_box",
    "frequencies",
    "fit_exppoly",
    "local_exppoly",
]


@dataclass(frozen=True)
class PiecewiseLocalPiece:
    """The analytic function coinciding with a spline-type function on one alcove.

    ``kind`` is ``"exact"`` (``poly`` holds the polynomial) or ``"numeric"``
    (``sampler`` evaluates the piece at rational points of ``region``).
    ``region`` is the open set where the piece is known to agree with the
    function; for box-spline pieces it is the alcove itself.
    """

    alcove: Alcove | None
    kind: str
    poly: Poly | None = None
    sampler: Callable | None = None
    region: object = None

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"


# ---------------------------------------------------------------------------
# peeling helpers

@lru_cache(maxsize=None)
def _peel_index(phi: DirectionList) -> int:
    """Last direction whose removal keeps the list spanning (``-1`` for a basis)."""
    if phi.N == phi.dim:
        return -1
    for k in range(phi.N - 1, -1, -1):
        if phi.sublist([j for j in range(phi.N) if j != k]).spans:
            return k
    raise AssertionError("spanning list with N > d always has a removable direction")


@lru_cache(maxsize=None)
def _rest(phi: DirectionList, k: int) -> DirectionList:
    return phi.sublist([j for j in range(phi.N) if j != k])


def _breakpoints(sub: DirectionList, v, alpha) -> list[Fraction]:
    """Sorted ``t`` in (0,1) where ``v - t alpha`` meets an affine wall of ``sub``."""
    ts = {Fraction(0), Fraction(1)}
    for n in walls(sub):
        a, b = dot(n, v), dot(n, alpha)
        if b == 0:
            continue
        lo, hi = sorted((a - b, a))
        m = int(lo // 1) + 1
        while m < hi:
            t = (a - m) / b
            if 0 < t < 1:
                ts.add(t)
            m += 1
    return sorted(ts)


def _outside_bbox(phi: DirectionList, v) -> bool:
    lo, hi = _bbox(phi)
    return any(x <= a or x >= b for x, a, b in zip(v, lo, hi))


@lru_cache(maxsize=None)
def _bbox(phi):
    return zonotope_bbox(phi)


@lru_cache(maxsize=None)
def _newton_cotes(deg: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Open Newton-Cotes rule on [0,1], exact for degree ``deg``."""
    nodes = tuple(Fraction(j + 1, deg + 2) for j in range(deg + 1))
    mat = [[x**k for x in nodes] for k in range(deg + 1)]
    weights = solve(mat, [Fraction(1, k + 1) for k in range(deg + 1)])
    return nodes, weights


@lru_cache(maxsize=None)
def _gauss(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return tuple(Fraction(float(t)) for t in x), tuple(float(c) for c in w)


# ---------------------------------------------------------------------------
# exact path

@lru_cache(maxsize=200_000)
def _b_exact(phi: DirectionList, v: tuple) -> Fraction:
    if phi.N == phi.dim:
        t = solve([[phi[k][j] for k in range(phi.N)] for j in range(phi.dim)], v)
        if all(0 < x < 1 for x in t):
            return 1 / abs(det(phi.vectors))
        return Fraction(0)
    if _outside_bbox(phi, v):
        return Fraction(0)
    k = _peel_index(phi)
    sub, alpha = _rest(phi, k), phi[k]
    deg = sub.N - sub.dim
    nodes, weights = _newton_cotes(deg)
    total = Fraction(0)
    ts = _breakpoints(sub, v, alpha)
    for a, b in zip(ts, ts[1:]):
        mid = (a + b) / 2
        if _outside_bbox(sub, tuple(x - mid * y for x, y in zip(v, alpha))):
            continue
        piece = Fraction(0)
        for x, w in zip(nodes, weights):
            t = a + (b - a) * x
            piece += w * _b_exact(sub, tuple(p - t * q for p, q in zip(v, alpha)))
        total += (b - a) * piece
    return total


def eval_exact(phi: DirectionList, v) -> Fraction:
    """Exact value of ``b(Phi)`` at a regular rational point."""
    require_spanning(phi)
    v = as_vector(v)
    if not is_regular(phi, v):
        raise NotRegular(f"{v} lies on an affine wall of {list(phi.vectors)}")
    return _b_exact(phi, v)


# ---------------------------------------------------------------------------
# numeric path

def quadrature_order(phi: DirectionList) -> int:
    return max(16, phi.N + 2)


def _b_numeric(phi: DirectionList, y: tuple, v: tuple, order: int) -> complex:
    if phi.N == phi.dim:
        t = solve([[phi[k][j] for k in range(phi.N)] for j in range(phi.dim)], v)
        if all(0 < x < 1 for x in t):
            phase = sum(float(x) * yk for x, yk in zip(t, y))
            return cmath.exp(1j * phase) / float(abs(det(phi.vectors)))
        return 0j
    if _outside_bbox(phi, v):
        return 0j
    k = _peel_index(phi)
    sub, alpha, yk = _rest(phi, k), phi[k], y[k]
    ysub = y[:k] + y[k + 1:]
    nodes, weights = _gauss(order)
    total = 0j
    ts = _breakpoints(sub, v, alpha)
    for a, b in zip(ts, ts[1:]):
        mid = (a + b) / 2
        if _outside_bbox(sub, tuple(x - mid * y_ for x, y_ in zip(v, alpha))):
            continue
        half = (b - a) / 2
        piece = 0j
        for x, w in zip(nodes, weights):
            t = mid + half * x
            val = _b_numeric(sub, ysub, tuple(p - t * q for p, q in zip(v, alpha)), order)
            piece += w * cmath.exp(1j * float(t) * yk) * val
        total += float(half) * piece
    return total


def eval(phi: DirectionList, y, v) -> complex:
    """``b(Phi, y)(v)`` as a complex double (y may be any complex list)."""
    require_spanning(phi)
    v = as_vector(v)
    y = ParameterList.of(phi, y)
    if not is_regular(phi, v):
        raise NotRegular(f"{v} lies on an affine wall of {list(phi.vectors)}")
    if y.is_zero:
        return complex(float(_b_exact(phi, v)))
    return _b_numeric(phi, tuple(y.values), v, quadrature_order(phi))


def eval_translated(phi: DirectionList, y, rrep: Representation, v) -> complex:
    """``B_r(Phi, y)(v) = exp(-i <r, y>) b(Phi, y)(v + r)``."""
    v = as_vector(v)
    y = ParameterList.of(phi, y)
    shifted = tuple(a + b for a, b in zip(v, rrep.point))
    if not is_regular(phi, shifted):
        raise NotRegularShifted(f"{v} + r lies on an affine wall")
    return cmath.exp(-1j * rrep.pairing(y)) * eval(phi, y, shifted)


# ---------------------------------------------------------------------------
# local pieces

def interior_box(alcove: Alcove) -> tuple[tuple, Fraction]:
    """Center and half-width of an axis box strictly inside the alcove."""
    w = alcove.witness
    h = None
    for n, k in zip(alcove.normals, alcove.signs):
        a = dot(n, w)
        gap = min(a - k, k + 1 - a) / sum(abs(c) for c in n)
        h = gap if h is None else min(h, gap)
    return w, h / 2


_POLY_CACHE: dict = {}


def _local_poly_cached(phi: DirectionList, signs: tuple, witness: tuple) -> Poly:
    key = (phi, signs)
    if key not in _POLY_CACHE:
        _POLY_CACHE[key] = _local_poly(phi, Alcove(walls(phi), signs, witness))
    return _POLY_CACHE[key]


def _local_poly(phi: DirectionList, alcove: Alcove) -> Poly:
    signs = alcove.signs
    d, deg = phi.dim, phi.N - phi.dim
    center, h = interior_box(alcove)
    # affine walls contain the zonotope's facets, so an alcove is inside Z(Phi)
    # or disjoint from it
    if _outside_bbox(phi, center):
        return Poly.zero(d)
    if deg == 0:
        axes = [(c,) for c in center]
    else:
        axes = [tuple(c + h * Fraction(2 * i - deg, deg) for i in range(deg + 1)) for c in center]
    values = {p: _b_exact(phi, p) for p in product(*axes)}
    full = Poly.interpolate_tensor(axes, values)
    poly = Poly(d, {e: c for e, c in full.terms.items() if sum(e) <= deg})
    if poly != full:
        raise InternalCheckFailed("local piece exceeds the degree bound N - d")
    rng = random.Random(hash((phi.vectors, signs)) & 0xFFFF)
    for _ in range(5):
        p = tuple(c + h * Fraction(rng.randint(-999, 999), 1000) for c in center)
        if poly(p) != _b_exact(phi, p):
            raise InternalCheckFailed(f"local polynomial disagrees with b(Phi) at {p}")
    return poly


def local_polynomial(phi: DirectionList, alcove: Alcove) -> PiecewiseLocalPiece:
    """Exact polynomial piece of ``b(Phi)`` on ``alcove`` (degree <= N - d)."""
    require_spanning(phi)
    if alcove.normals != walls(phi):
        alcove = alcove_of(phi, alcove.witness)
    poly = _local_poly_cached(phi, alcove.signs, alcove.witness)
    return PiecewiseLocalPiece(alcove, "exact", poly=poly, region=alcove)


def local_sampler(phi: DirectionList, y, alcove: Alcove) -> PiecewiseLocalPiece:
    """Numeric piece of ``b(Phi, y)`` on ``alcove``, exposed as a point sampler."""
    require_spanning(phi)
    y = ParameterList.of(phi, y)
    yt = tuple(y.values)
    order = quadrature_order(phi)

    def sampler(v):
        v = as_vector(v)
        if not alcove.contains(v):
            raise NotRegular(f"{v} is not inside the alcove")
        return _b_numeric(phi, yt, v, order)

    return PiecewiseLocalPiece(alcove, "numeric", sampler=sampler, region=alcove)


# ---------------------------------------------------------------------------
# numeric pieces as exponential polynomials

FIT_TOLERANCE = 1e-10


def frequencies(phi: DirectionList, y) -> tuple[tuple[complex, ...], ...]:
    """Distinct ``theta`` with ``theta . alpha_k = y_k`` on some basis of ``Phi``."""
    y = ParameterList.of(phi, y)
    out: list[tuple[complex, ...]] = []
    for basis in phi.bases:
        m = np.array([[float(x) for x in phi[k]] for k in basis])
        th = np.linalg.solve(m.astype(complex), np.array([y[k] for k in basis]))
        if not any(max(abs(a - b) for a, b in zip(th, t)) < 1e-12 for t in out):
            out.append(tuple(complex(a) for a in th))
    return tuple(out)


def _grid(center, h, n):
    xs = np.polynomial.chebyshev.chebpts1(n)
    axis = [Fraction(float(x)).limit_denominator(10**6) for x in xs]
    return [tuple(c + h * t for c, t in zip(center, p)) for p in product(axis, repeat=len(center))]


def fit_exppoly(func, thetas, degree: int, center, h: Fraction, accept=None) -> ExpPoly:
    """Fit ``func`` on the box ``center +- h`` by an exponential polynomial.

    ``accept`` filters sample points (e.g. regularity); rejected points are
    skipped. Raises :class:`NumericDivergence` if the fit residual is too big.
    """
    dim = len(center)
    nmono = len([e for e in product(range(degree + 1), repeat=dim) if sum(e) <= degree])
    unknowns = max(1, len(thetas)) * nmono
    n = 2
    while n**dim < 2 * unknowns + 4:
        n += 1
    pts = [p for p in _grid(center, h * Fraction(9, 10), n) if accept is None or accept(p)]
    vals = [func(p) for p in pts]
    rng = random.Random(len(pts))
    checks = []
    for _ in range(3):
        p = tuple(c + h * Fraction(rng.randint(-899, 899), 1000) for c in center)
        if accept is None or accept(p):
            checks.append((p, func(p)))
    scale = max(abs(v) for v in vals + [c[1] for c in checks] + [1.0])
    fit = ExpPoly.fit(pts, vals, thetas, degree, center, float(h), checks)
    if fit.error > FIT_TOLERANCE * scale:
        raise NumericDivergence(f"exponential-polynomial fit residual {fit.error:.3g}")
    return fit


_EXP_CACHE: dict = {}


def local_exppoly(phi: DirectionList, y, alcove: Alcove) -> PiecewiseLocalPiece:
    """Numeric piece of ``b(Phi, y)`` on ``alcove`` as a fitted exponential polynomial."""
    require_spanning(phi)
    if alcove.normals != walls(phi):
        alcove = alcove_of(phi, alcove.witness)
    y = ParameterList.of(phi, y)
    key = (phi, y, alcove.signs)
    if key not in _EXP_CACHE:
        center, h = interior_box(alcove)
        if _outside_bbox(phi, center):
            fit = ExpPoly(center, {})
        else:
            yt, order = tuple(y.values), quadrature_order(phi)
            fit = fit_exppoly(
                lambda v: _b_numeric(phi, yt, v, order),
                frequencies(phi, y), phi.N - phi.dim, center, h,
            )
        _EXP_CACHE[key] = fit
    return PiecewiseLocalPiece(alcove, "numeric", sampler=_EXP_CACHE[key], region=alcove)
