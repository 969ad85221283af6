"""Partition functions with parameters and the multispline T(Phi, y).

    P(Phi, nu)          = #{p in Z_{>=0}^N : sum p_k alpha_k = nu}
    Trace(nu)           = sum_{p in P(Phi, nu)} exp(i p . y)
    T(Phi, y)(v)        = sum_{p >= 0} exp(i p . y) b(Phi, y)(v - sum p_k alpha_k)

On a chamber ``tau`` the multispline is an exponential polynomial (a
polynomial of degree <= N - d when ``y = 0``) and the trace is recovered by

    Trace(nu) = sum_s s^-nu (Todd(s) (-1)^{|out(s)|} T^tau(Phi(s), y0))(nu)

for ``nu`` in ``tau - Z(Phi)``, where ``out(s)`` are the directions with
``s^alpha != 1``.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from . import boxspline
from .arrangement import is_regular, walls
from .boxspline import PiecewiseLocalPiece, fit_exppoly, frequencies
from .core import DirectionList, ParameterList, as_vector, dot, positive_functional, require_spanning
from .errors import InternalCheckFailed, NotRegular, NotSalient, NuNotCovered, OnConeBoundary
from .lp import solve_lp
from .poly import Poly
from .series import _simplify, apply_operator, todd_operator, truncation_order
from .torus import character, phi_s_indices, vertex_set

__all__ = [
    "Chamber",
    "partitions",
    "partition_count",
    "partition_trace",
    "multispline_eval",
    "chamber_of",
    "chamber_covers",
    "chamber_piece",
    "partition_via_todd",
]


def _require_salient(phi: DirectionList):
    if not phi.salient:
        raise NotSalient(f"{list(phi.vectors)} does not generate a salient cone")


def _lattice(nu, dim):
    nu = (nu,) if isinstance(nu, int) else tuple(nu)
    if len(nu) != dim:
        raise ValueError(f"expected a vector of length {dim}")
    return tuple(int(x) for x in nu)


def _lp_bounds(phi: DirectionList, nu) -> list[int]:
    """``floor(max p_k)`` over the real solutions of ``sum p alpha = nu, p >= 0``."""
    cons = [([phi[k][j] for k in range(phi.N)], "==", nu[j]) for j in range(phi.dim)]
    out = []
    for k in range(phi.N):
        obj = [0] * phi.N
        obj[k] = 1
        res = solve_lp(obj, cons, phi.N)
        if not res.feasible:
            return []
        out.append(math.floor(res.value))
    return out


def partitions(phi: DirectionList, nu):
    """Yield every ``p >= 0`` with ``sum p_k alpha_k = nu``."""
    _require_salient(phi)
    nu = _lattice(nu, phi.dim)
    bounds = _lp_bounds(phi, nu)
    if not bounds:
        return
    ell = positive_functional(phi)
    weights = [dot(ell, a) for a in phi]

    def rec(k, rest, acc):
        if k == phi.N:
            if not any(rest):
                yield tuple(acc)
            return
        budget = dot(ell, rest)
        if budget < 0:
            return
        top = min(bounds[k], math.floor(budget / weights[k]))
        for pk in range(top + 1):
            nxt = tuple(r - pk * a for r, a in zip(rest, phi[k]))
            yield from rec(k + 1, nxt, acc + [pk])

    yield from rec(0, nu, [])


def partition_count(phi: DirectionList, nu) -> int:
    return sum(1 for _ in partitions(phi, nu))


def partition_trace(phi: DirectionList, y, nu):
    """``sum_p exp(i p . y)``; an exact integer when ``y = 0``."""
    y = ParameterList.of(phi, y)
    if y.is_zero:
        return partition_count(phi, nu)
    return sum((cmath.exp(1j * sum(pk * yk for pk, yk in zip(p, y))) for p in partitions(phi, nu)), 0j)


# ---------------------------------------------------------------------------
# multispline

def _shifts(phi: DirectionList, v):
    """``p >= 0`` with ``v - sum p alpha`` inside the bounding box of Z(Phi)."""
    ell = positive_functional(phi)
    weights = [dot(ell, a) for a in phi]
    lo, hi = boxspline._bbox(phi)
    zmin = sum(min(0, w) for w in weights)  # min of ell over Z(Phi)

    def rec(k, rest, acc):
        if k == phi.N:
            if all(a < x < b for x, a, b in zip(rest, lo, hi)):
                yield tuple(acc), rest
            return
        pk = 0
        while True:
            nxt = tuple(r - pk * a for r, a in zip(rest, phi[k]))
            if dot(ell, nxt) <= zmin:
                break
            yield from rec(k + 1, nxt, acc + [pk])
            pk += 1

    yield from rec(0, v, [])


def multispline_eval(phi: DirectionList, y, v):
    """``T(Phi, y)(v)``, exact for ``y = 0``."""
    _require_salient(phi)
    require_spanning(phi)
    y = ParameterList.of(phi, y)
    v = as_vector(v)
    if not is_regular(phi, v):
        raise NotRegular(f"{v} lies on an affine wall")
    if y.is_zero:
        return sum((boxspline._b_exact(phi, w) for _, w in _shifts(phi, v)), Fraction(0))
    yt, order = tuple(y.values), boxspline.quadrature_order(phi)
    total = 0j
    for p, w in _shifts(phi, v):
        total += cmath.exp(1j * sum(a * b for a, b in zip(p, yt))) * boxspline._b_numeric(phi, yt, w, order)
    return total


# ---------------------------------------------------------------------------
# chambers

@dataclass(frozen=True)
class Chamber:
    """Sign vector of ``n . v`` over all wall normals; the witness is any point inside."""

    normals: tuple[tuple[int, ...], ...]
    signs: tuple[int, ...]
    witness: tuple = field(compare=False)

    def contains(self, v) -> bool:
        v = as_vector(v)
        return all(sg * dot(n, v) > 0 for n, sg in zip(self.normals, self.signs))

    def contains_closure(self, v) -> bool:
        v = as_vector(v)
        return all(sg * dot(n, v) >= 0 for n, sg in zip(self.normals, self.signs))


def chamber_of(phi: DirectionList, v) -> Chamber:
    require_spanning(phi)
    v = as_vector(v)
    normals = walls(phi)
    signs = []
    for n in normals:
        x = dot(n, v)
        if x == 0:
            raise OnConeBoundary(f"{v} lies on the wall with normal {n}")
        signs.append(1 if x > 0 else -1)
    return Chamber(normals, tuple(signs), v)


def chamber_covers(phi: DirectionList, tau: Chamber, nu) -> bool:
    """Is ``nu`` in ``tau - Z(Phi)``?  (LP: max delta with nu + sum t alpha deep in tau.)"""
    nu = as_vector(nu)
    n = phi.N + 1
    cons = []
    for k in range(phi.N):
        row = [0] * n
        row[k] = 1
        cons.append((row, "<=", 1))
    for normal, sg in zip(tau.normals, tau.signs):
        coeffs = [sg * dot(normal, a) for a in phi]
        cons.append((coeffs + [-1], ">=", -sg * dot(normal, nu)))
    row = [0] * n
    row[-1] = 1
    cons.append((row, "<=", 1))
    res = solve_lp([0] * phi.N + [1], cons, n)
    return res.status == "optimal" and res.value > 0


def _deep_box(tau: Chamber, radius: int):
    """Center and half-width of an axis box well inside the open cone ``tau``."""
    d = len(tau.witness)
    n = d + 1
    cons = []
    for normal, sg in zip(tau.normals, tau.signs):
        l1 = sum(abs(a) for a in normal)
        cons.append(([sg * a for a in normal] + [-l1], ">=", 0))
    for j in range(d):
        row = [0] * n
        row[j] = 1
        cons.append((row, "<=", 1))
        cons.append((row, ">=", -1))
    res = solve_lp([0] * d + [1], cons, n, free=range(d))
    x, delta = res.x[:d], res.x[d]
    return tuple(radius * a for a in x), radius * delta / 2


def _regular_center(phi, center, h, deg):
    offsets = [Fraction(1, 1009), Fraction(2, 1013), Fraction(3, 1019)]
    for trial in range(200):
        c = tuple(a + trial * offsets[j % 3] * h / 7 for j, a in enumerate(center))
        axes = [tuple(a + h * Fraction(2 * i - deg, max(deg, 1)) / 2 for i in range(deg + 1)) for a in c]
        if all(is_regular(phi, p) for p in product(*axes)):
            return c, axes
    raise InternalCheckFailed("could not place a regular interpolation grid")


_T_CACHE: dict = {}


def chamber_piece(phi: DirectionList, y, tau: Chamber, radius: int = 6) -> PiecewiseLocalPiece:
    """Local piece ``T^tau(Phi, y)``: exact polynomial for ``y = 0``, fitted otherwise."""
    _require_salient(phi)
    require_spanning(phi)
    y = ParameterList.of(phi, y)
    key = (phi, y, tau, radius)
    if key in _T_CACHE:
        return _T_CACHE[key]
    d, deg = phi.dim, phi.N - phi.dim
    center, h = _deep_box(tau, radius)
    if y.is_zero:
        c, axes = _regular_center(phi, center, h, deg)
        values = {p: multispline_eval(phi, y, p) for p in product(*axes)}
        full = Poly.interpolate_tensor(axes, values)
        poly = Poly(d, {e: v for e, v in full.terms.items() if sum(e) <= deg})
        if poly != full:
            raise InternalCheckFailed("multispline piece exceeds the degree bound N - d")
        rng = random.Random(17)
        for _ in range(3):
            p = tuple(a + h * Fraction(rng.randint(-499, 499), 1000) for a in c)
            if is_regular(phi, p) and poly(p) != multispline_eval(phi, y, p):
                raise InternalCheckFailed(f"multispline piece disagrees at {p}")
        piece = PiecewiseLocalPiece(None, "exact", poly=poly, region=tau)
    else:
        fit = fit_exppoly(
            lambda v: multispline_eval(phi, y, v), frequencies(phi, y), deg, center, h,
            accept=lambda p: is_regular(phi, p),
        )
        piece = PiecewiseLocalPiece(None, "numeric", sampler=fit, region=tau)
    _T_CACHE[key] = piece
    return piece


def partition_via_todd(phi: DirectionList, y, nu, tau: Chamber):
    """The trace at ``nu`` from the Todd operators and the chamber pieces."""
    _require_salient(phi)
    require_spanning(phi)
    y = ParameterList.of(phi, y)
    nu = _lattice(nu, phi.dim)
    if not chamber_covers(phi, tau, nu):
        raise NuNotCovered(f"{nu} is not in tau - Z(Phi)")
    exact = y.is_zero
    total = Fraction(0) if exact else 0j
    for s in vertex_set(phi):
        inside = phi_s_indices(phi, s)
        sub = phi.sublist(inside)
        y0 = ParameterList(tuple(y[k] for k in inside))
        sign = (-1) ** (phi.N - len(inside))
        op = _operator(phi, s, y)
        val = apply_operator(op, chamber_piece(sub, y0, tau), nu, extend=True)
        ch = character(s, tuple(-a for a in nu))
        if exact:
            total = total + ch * (sign * val)
        else:
            total += complex(ch) * sign * complex(val)
    return _simplify(total) if exact else total


@lru_cache(maxsize=None)
def _operator(phi, s, y):
    return todd_operator(phi, s, y, truncation_order(phi, y))
