"""Semi-discrete convolution with box splines and its inversion.

For a vertex ``s`` the kernel

    b(Phi, s, y) = prod_{s^a != 1} (s^a e^{i y_a} delta_a - 1) * b(Phi(s), y0)

is a signed sum of translates of the box spline of the sublist ``Phi(s)``.
Its convolution with ``s^xi f(xi)`` is ``P(s, y, f)``; the deconvolution
formula sums ``s^-lam (Todd(s) P(s, y, f))`` over the vertex set, reading
``P`` on the alcove touched from ``lam`` along ``eps``.

Everything is linear in ``f``, so the per-``s`` value at ``lam`` is computed
as ``sum_xi s^xi f(xi) K_s(lam - xi)`` where ``K_s(mu)`` is the operator
applied to the relevant piece of ``b(Phi, s, y)`` at ``mu``; ``K_s`` is
cached per direction ``eps``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from . import boxspline
from .arrangement import alcove_of, is_generic, is_regular, limit_point, Alcove
from .core import (
    DirectionList,
    LatticeFunction,
    ParameterList,
    Representation,
    as_vector,
    require_spanning,
    tangent_cone_contains,
    zonotope_bbox,
    zonotope_contains,
)
from .cyclo import Cyclo, is_exact, to_complex
from .errors import (
    DirectionOutsideCone,
    LatticePointNotCovered,
    NotGeneric,
    NotRegular,
    NotSpanningSub,
    PointOutsideZonotope,
)
from .lp import solve_lp
from .poly import Poly
from .series import _simplify, apply_operator, todd_operator, truncation_order
from .torus import TorusPoint, character, phi_s_indices, vertex_set

__all__ = [
    "semidiscrete",
    "p_s",
    "deconvolve",
    "deconvolve_translated",
    "reconstruct_from_alcove",
    "dm_quasipolynomial",
    "dm_components",
    "covers",
]


def _finish(total, exact: bool):
    if exact:
        return _simplify(total)
    return to_complex(total)


def _is_exact_input(y: ParameterList, f: LatticeFunction) -> bool:
    return y.is_zero and f.exact


# ---------------------------------------------------------------------------

def semidiscrete(phi: DirectionList, y, f: LatticeFunction, v):
    """``sum_lam f(lam) b(Phi, y)(v - lam)``."""
    require_spanning(phi)
    y = ParameterList.of(phi, y)
    v = as_vector(v)
    if not is_regular(phi, v):
        raise NotRegular(f"{v} lies on an affine wall")
    exact = _is_exact_input(y, f)
    lo, hi = zonotope_bbox(phi)
    total = Fraction(0) if exact else 0j
    for lam, val in f.items():
        w = tuple(a - b for a, b in zip(v, lam))
        if any(x <= a or x >= b for x, a, b in zip(w, lo, hi)):
            continue
        if exact:
            total = total + val * boxspline._b_exact(phi, w)
        else:
            total += to_complex(val) * boxspline.eval(phi, y, w)
    return _finish(total, exact)


@lru_cache(maxsize=None)
def _kernel_terms(phi: DirectionList, s: TorusPoint, y: ParameterList):
    """``(coefficient, shift)`` pairs expanding ``b(Phi, s, y)`` over ``b(Phi(s), y0)``."""
    inside = phi_s_indices(phi, s)
    out_idx = [k for k in range(phi.N) if k not in inside]
    exact = y.is_zero
    terms = []
    for size in range(len(out_idx) + 1):
        for K in combinations(out_idx, size):
            coef = Fraction((-1) ** (len(out_idx) - size))
            for k in K:
                ch = character(s, phi[k])
                coef = coef * (ch if exact else complex(ch) * _cexp(y[k]))
            shift = tuple(sum(phi[k][j] for k in K) for j in range(phi.dim))
            terms.append((_simplify(coef) if exact else complex(coef), shift))
    return terms


def _cexp(x):
    import cmath

    return cmath.exp(1j * x)


def _sub(phi: DirectionList, s: TorusPoint, y: ParameterList):
    inside = phi_s_indices(phi, s)
    sub = phi.sublist(inside)
    if not sub.spans:
        raise NotSpanningSub(f"Phi(s) does not span for s = {s}")
    return sub, ParameterList(tuple(y[k] for k in inside))


def p_s(phi: DirectionList, s: TorusPoint, y, f: LatticeFunction, v):
    """``P(s, y, f)(v) = sum_xi s^xi f(xi) b(Phi, s, y)(v - xi)``."""
    require_spanning(phi)
    y = ParameterList.of(phi, y)
    v = as_vector(v)
    sub, y0 = _sub(phi, s, y)
    exact = _is_exact_input(y, f)
    total = Fraction(0) if exact else 0j
    for xi, val in f.items():
        sx = character(s, xi)
        for coef, shift in _kernel_terms(phi, s, y):
            w = tuple(a - b - c for a, b, c in zip(v, xi, shift))
            if not is_regular(sub, w):
                raise NotRegular(f"{w} lies on an affine wall of Phi(s)")
            if exact:
                b = boxspline._b_exact(sub, w)
                if b:
                    total = total + sx * val * coef * b
            else:
                total += complex(sx) * to_complex(val) * coef * boxspline.eval(sub, y0, w)
    return _finish(total, exact)


# ---------------------------------------------------------------------------
# kernels

def _piece(sub: DirectionList, y0: ParameterList, witness):
    alcove = alcove_of(sub, witness)
    if y0.is_zero:
        return boxspline.local_polynomial(sub, alcove)
    return boxspline.local_exppoly(sub, y0, alcove)


@lru_cache(maxsize=None)
def _operator(phi: DirectionList, s: TorusPoint, y: ParameterList):
    return todd_operator(phi, s, y, truncation_order(phi, y))


_KERNEL_CACHE: dict = {}


def _kernel(phi, s, y, tag, at, witness_of, extend):
    """``(Todd(s) b(Phi, s, y)^piece)(at)`` with the piece taken around ``witness_of(at)``.

    ``tag`` names the rule choosing the piece (direction, shift or alcove).
    """
    key = (phi, s, y, tag, at)
    if key in _KERNEL_CACHE:
        return _KERNEL_CACHE[key]
    witness = witness_of(at)
    sub, y0 = _sub(phi, s, y)
    op = _operator(phi, s, y)
    total = Fraction(0) if y.is_zero else 0j
    for coef, shift in _kernel_terms(phi, s, y):
        w = tuple(a - b for a, b in zip(witness, shift))
        if boxspline._outside_bbox(sub, w):
            continue
        piece = _piece(sub, y0, w)
        val = apply_operator(op, piece, tuple(a - b for a, b in zip(at, shift)), extend=extend)
        if val:
            total = total + coef * val
    total = _simplify(total) if y.is_zero else complex(total)
    _KERNEL_CACHE[key] = total
    return total


@lru_cache(maxsize=None)
def _integer_points(phi: DirectionList, offset: tuple):
    """Integer ``mu`` with ``mu + offset`` in the closed zonotope."""
    lo, hi = zonotope_bbox(phi)
    ranges = [range(math.floor(a - o), math.ceil(b - o) + 1) for a, b, o in zip(lo, hi, offset)]
    return tuple(
        mu for mu in product(*ranges)
        if zonotope_contains(phi, tuple(m + o for m, o in zip(mu, offset)))
    )


@lru_cache(maxsize=None)
def _root(angle: Fraction):
    return _simplify(Cyclo.from_angle(angle))


def _char(s: TorusPoint, lam):
    """``s^lam``, reduced to a Fraction when it is +-1."""
    return _root(s.exponent(lam))


def _evaluate(phi, y, f, lam, mus, tag, witness_of, extend):
    """``sum_s s^-lam sum_mu s^(lam-mu) f(lam-mu) K_s(mu)``."""
    exact = _is_exact_input(y, f)
    total = Fraction(0) if exact else 0j
    for s in vertex_set(phi):
        part = Fraction(0) if exact else 0j
        for mu in mus:
            xi = tuple(a - b for a, b in zip(lam, mu))
            val = f(xi)
            if not val:
                continue
            k = _kernel(phi, s, y, tag, mu, witness_of, extend)
            if not k:
                continue
            if exact:
                part = part + _char(s, xi) * val * k
            else:
                part += complex(_char(s, xi)) * to_complex(val) * k
        if exact:
            total = total + _char(s, tuple(-a for a in lam)) * part
        else:
            total += complex(_char(s, tuple(-a for a in lam))) * part
    return _finish(total, exact)


def _lattice_vector(lam, dim):
    lam = (lam,) if isinstance(lam, int) else tuple(lam)
    if len(lam) != dim or any(int(x) != x for x in lam):
        raise ValueError(f"expected an integer vector of length {dim}")
    return tuple(int(x) for x in lam)


def deconvolve(phi: DirectionList, y, f: LatticeFunction, lam, eps):
    """Recover ``f(lam)`` from ``P(f, y)`` by the Todd-operator formula.

    The result equals ``f(lam)`` when ``eps`` is generic in Cone(Phi); other
    generic directions are accepted and simply evaluate the formula.
    """
    require_spanning(phi)
    y = ParameterList.of(phi, y)
    lam = _lattice_vector(lam, phi.dim)
    eps = as_vector(eps)
    if not is_generic(phi, eps):
        raise NotGeneric(f"{eps} lies on a wall")
    mus = _integer_points(phi, (0,) * phi.dim)
    return _evaluate(
        phi, y, f, lam, mus, ("eps", eps), lambda mu: limit_point(phi, mu, eps), False
    )


def deconvolve_translated(phi: DirectionList, y, rrep, f: LatticeFunction, lam, eps):
    """Deconvolution against the translated box spline ``B_r(Phi, y)``.

    The operator ``exp(-d_r + i<r, y>) Todd(s)`` applied to the piece of
    ``P(s, r, y, f) = e^{-i<r,y>} P(s, y, f)(. + r)`` near ``lam`` amounts to
    the analytic continuation, back to ``lam``, of ``Todd(s) P(s, y, f)`` on the
    alcove touched from ``lam + r`` along ``eps``; the phases cancel.
    """
    require_spanning(phi)
    y = ParameterList.of(phi, y)
    lam = _lattice_vector(lam, phi.dim)
    r = rrep.point if isinstance(rrep, Representation) else as_vector(rrep)
    eps = as_vector(eps)
    if not zonotope_contains(phi, r):
        raise PointOutsideZonotope(f"r = {r} is not in the zonotope")
    if not tangent_cone_contains(phi, r, eps):
        raise DirectionOutsideCone(f"{eps} is not in the tangent cone at r = {r}")
    if not is_generic(phi, eps):
        raise NotGeneric(f"{eps} lies on a wall")
    mus = _integer_points(phi, r)
    return _evaluate(
        phi, y, f, lam, mus, ("r", r, eps),
        lambda mu: limit_point(phi, tuple(a + b for a, b in zip(mu, r)), eps), True,
    )


# ---------------------------------------------------------------------------
# alcoves

def covers(phi: DirectionList, c: Alcove, lam) -> bool:
    """Does ``c`` meet ``lam + Z(Phi)`` in a set with nonempty interior?"""
    lam = as_vector(lam)
    n = phi.N + 1  # t_1..t_N, delta
    cons = []
    for k in range(phi.N):
        row = [0] * n
        row[k] = 1
        cons.append((row, "<=", 1))
    for normal, m in zip(c.normals, c.signs):
        coeffs = [sum(a * b for a, b in zip(normal, phi[k])) for k in range(phi.N)]
        base = sum(a * b for a, b in zip(normal, lam))
        cons.append((coeffs + [-1], ">=", m - base))
        cons.append((coeffs + [1], "<=", m + 1 - base))
    row = [0] * n
    row[-1] = 1
    cons.append((row, "<=", 1))
    res = solve_lp([0] * phi.N + [1], cons, n)
    return res.status == "optimal" and res.value > 0


def _alcove_mus(phi, c: Alcove, lam):
    # xi contributes when c - xi meets Z(Phi), i.e. mu = lam - xi with c + (mu - lam) in Z
    w = c.witness
    offset = tuple(a - b for a, b in zip(w, lam))
    lo, hi = zonotope_bbox(phi)
    ranges = [range(math.floor(a - o), math.ceil(b - o) + 1) for a, b, o in zip(lo, hi, offset)]
    return [mu for mu in product(*ranges)
            if not boxspline._outside_bbox(phi, tuple(m + o for m, o in zip(mu, offset)))]


def reconstruct_from_alcove(phi: DirectionList, y, c: Alcove, f: LatticeFunction, lam):
    """``f(lam)`` from the analytic continuation of the piece of ``P(f)`` on ``c``."""
    require_spanning(phi)
    y = ParameterList.of(phi, y)
    lam = _lattice_vector(lam, phi.dim)
    c = alcove_of(phi, c.witness)
    if not covers(phi, c, lam):
        raise LatticePointNotCovered(f"{lam} is not in (c - Z(Phi))")
    return _reconstruct(phi, y, c, f, lam)


def _reconstruct(phi, y, c, f, lam):
    mus = _alcove_mus(phi, c, lam)
    offset = tuple(a - b for a, b in zip(c.witness, lam))
    return _evaluate(
        phi, y, f, lam, mus, ("alcove", c, lam),
        lambda mu: tuple(m + o for m, o in zip(mu, offset)), True,
    )


def dm_components(phi: DirectionList, c: Alcove) -> dict:
    """``{s: m_s(c)}``: ``Todd(s)`` applied symbolically to the piece of ``P(s, 0, delta_0)`` on ``c``."""
    require_spanning(phi)
    c = alcove_of(phi, c.witness)
    y = ParameterList.zeros(phi.N)
    out = {}
    for s in vertex_set(phi):
        sub, y0 = _sub(phi, s, y)
        Q = _operator(phi, s, y).cartesian()
        total = Poly.zero(phi.dim)
        for coef, shift in _kernel_terms(phi, s, y):
            w = tuple(a - b for a, b in zip(c.witness, shift))
            if boxspline._outside_bbox(sub, w):
                continue
            p = _piece(sub, y0, w).poly.translate(tuple(-b for b in shift))
            applied = Poly.zero(phi.dim)
            for a, q in Q.terms.items():
                if sum(a) <= p.degree:
                    applied = applied + p.derivative(a).scale(q)
            total = total + applied.scale(coef)
        out[s] = total
    return out


def dm_quasipolynomial(phi: DirectionList, c: Alcove, nu):
    """``Q(c)(nu) = sum_s s^-nu m_s(c)(nu)`` (exact)."""
    nu = _lattice_vector(nu, phi.dim)
    total = Fraction(0)
    for s, m in dm_components(phi, c).items():
        val = m(nu)
        if val:
            total = total + character(s, tuple(-a for a in nu)) * val
    return _simplify(total)
