"""Bernoulli numbers, the beta(l, u) coefficients and Todd-type operators.

Operators are polynomials in directional derivatives ``d_alpha``. They are
built from the univariate series

    z / (e^z - 1)        = sum b(a) z^a / a!
    1 / (e^z u - 1)      = sum beta(l, u) z^l / l!

with ``z = -d_alpha + i y_alpha``, truncated at total order ``L`` in ``z``
(the bookkeeping variable ``q``), after which ``q = 1``.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .core import DirectionList, ParameterList, Representation, as_vector, require_spanning
from .cyclo import Cyclo, is_exact, to_complex
from .errors import (
    NumericDivergence,
    ParameterTooLarge,
    PointOutsideAlcove,
    ResonantParameter,
    TruncationNotConverged,
)
from .poly import ExpPoly, Poly
from .torus import TorusPoint, character, phi_s_indices

__all__ = [
    "Y_MAX",
    "L_MAX",
    "RESONANCE_GUARD",
    "OperatorPoly",
    "bernoulli",
    "beta_coeffs",
    "todd_operator",
    "apply_operator",
    "truncation_order",
    "fractional_fourier_check",
]

Y_MAX = 0.1
L_MAX = 50
RESONANCE_GUARD = 1e-12
TRUNCATION_TOLERANCE = 1e-12
APPLY_TOLERANCE = 1e-8

_bern: list[Fraction] = [Fraction(1)]
_bern_lock = threading.Lock()


def bernoulli(L: int) -> tuple[Fraction, ...]:
    """``b(0..L)`` with ``z/(e^z - 1) = sum b(a) z^a / a!`` (so ``b(1) = -1/2``)."""
    if L < 0:
        raise ValueError("L must be >= 0")
    with _bern_lock:
        while len(_bern) <= L:
            n = len(_bern)
            # sum_{k<=n} C(n+1, k) b(k) = 0
            s = sum((comb(n + 1, k) * _bern[k] for k in range(n)), Fraction(0))
            _bern.append(-s / (n + 1))
        return tuple(_bern[: L + 1])


def beta_coeffs(u, L: int):
    """``beta(0..L, u)`` with ``1/(e^z u - 1) = sum beta(l, u) z^l / l!``.

    ``u`` may be an exact :class:`Cyclo` (exact output) or a complex number.
    """
    if is_exact(u):
        if not isinstance(u, Cyclo):
            u = Fraction(u)
        if u == 1:
            raise ResonantParameter("u = 1 is a pole")
        one = 1
    else:
        u = complex(u)
        if abs(u - 1) < RESONANCE_GUARD:
            raise ResonantParameter(f"|u - 1| = {abs(u - 1):.3g} is below the resonance guard")
        one = 1.0
    inv = 1 / (u - one) if not isinstance(u, Cyclo) else (u - 1).inverse()
    c = [inv]
    ratio = -u * inv
    for n in range(1, L + 1):
        acc = 0
        for m in range(1, n + 1):
            acc = acc + c[n - m] * Fraction(1, factorial(m))
        c.append(ratio * acc)
    return tuple(cl * factorial(l) for l, cl in enumerate(c))


# ---------------------------------------------------------------------------
# operators

@dataclass
class OperatorPoly:
    """``sum_m c_m prod_k d_{symbols[k]}^{m_k}``, every term of total order <= ``order``."""

    symbols: tuple[tuple, ...]
    terms: dict
    order: int

    @property
    def dim(self) -> int:
        return len(self.symbols[0])

    @property
    def exact(self) -> bool:
        return all(is_exact(c) for c in self.terms.values())

    def constant(self):
        return self.terms.get((0,) * len(self.symbols), Fraction(0))

    def linear(self, k: int):
        e = tuple(int(j == k) for j in range(len(self.symbols)))
        return self.terms.get(e, Fraction(0))

    def cartesian(self) -> Poly:
        """The operator as a polynomial in the coordinate derivatives ``d_1..d_d``."""
        if not hasattr(self, "_cart"):
            d = self.dim
            lin = [Poly(d, {tuple(int(i == j) for i in range(d)): Fraction(a)
                            for j, a in enumerate(sym) if a}) for sym in self.symbols]
            powers = [[Poly.constant(d, Fraction(1))] for _ in self.symbols]
            out = Poly.zero(d)
            for m, c in self.terms.items():
                term = Poly.constant(d, c)
                for k, mk in enumerate(m):
                    while len(powers[k]) <= mk:
                        powers[k].append(powers[k][-1] * lin[k])
                    if mk:
                        term = term * powers[k][mk]
                out = out + term
            self._cart = out
        return self._cart


def _factor_series(kind: str, u, L: int):
    """Coefficients of ``z^j`` (not ``z^j/j!``) of one factor, ``j <= L``."""
    if kind == "todd":
        return [b * Fraction(1, factorial(j)) for j, b in enumerate(bernoulli(L))]
    if kind == "shift":
        return [Fraction(1, factorial(j)) for j in range(L + 1)]
    return [b * Fraction(1, factorial(j)) for j, b in enumerate(beta_coeffs(u, L))]


def _expand(coeffs, w, L: int, exact: bool):
    """``sum_j a_j (-D + w)^j`` as ``{(q order j, D power i): coefficient}``."""
    out = {}
    for j, a in enumerate(coeffs[: L + 1]):
        if exact:
            out[(j, j)] = a * (-1) ** j
            continue
        for i in range(j + 1):
            c = complex(a) * comb(j, i) * (-1) ** i * w ** (j - i)
            if c != 0:
                out[(j, i)] = c
    return out


def todd_operator(
    phi: DirectionList, s: TorusPoint, y=None, L: int | None = None, r: Representation | None = None
) -> OperatorPoly:
    """Truncated ``Todd(Phi, [q], s, y)(d)`` at ``q = 1``.

    With ``r`` the operator is multiplied by ``exp(q(-d_r + i<r, y>))`` and an
    extra symbol ``r`` is appended. For ``y = 0`` coefficients are exact
    (rational or cyclotomic); otherwise complex.
    """
    require_spanning(phi)
    y = ParameterList.of(phi, y)
    if any(abs(v) > Y_MAX for v in y):
        raise ParameterTooLarge(f"|y_k| must be <= {Y_MAX}")
    if L is None:
        L = truncation_order(phi, y)
    exact = y.is_zero
    inside = set(phi_s_indices(phi, s))
    factors = []
    for k in range(phi.N):
        if k in inside:
            coeffs = _factor_series("todd", None, L)
        else:
            u = character(s, phi[k])
            if not exact:
                u = complex(u)
            coeffs = _factor_series("beta", u, L)
        factors.append(_expand(coeffs, 1j * y[k], L, exact))
    symbols = list(phi.vectors)
    if r is not None:
        factors.append(_expand(_factor_series("shift", None, L), 1j * r.pairing(y), L, exact))
        symbols.append(r.point)
    # combine factor by factor, tracking the q order
    state = {(0, ()): Fraction(1)}
    for fac in factors:
        nxt: dict = {}
        for (q, m), c in state.items():
            for (j, i), a in fac.items():
                if q + j > L:
                    continue
                key = (q + j, m + (i,))
                val = c * a
                nxt[key] = nxt[key] + val if key in nxt else val
        state = nxt
    terms: dict = {}
    for (_, m), c in state.items():
        terms[m] = terms[m] + c if m in terms else c
    terms = {m: _simplify(c) for m, c in terms.items()}
    terms = {m: c for m, c in terms.items() if c != 0}
    return OperatorPoly(tuple(tuple(v) for v in symbols), terms, L)


def _simplify(c):
    if isinstance(c, Cyclo):
        g = c.as_gaussian()
        if g is not None and g[1] == 0:
            return g[0]
    return c


# ---------------------------------------------------------------------------
# truncation

def _majorant(phi, s, y, L):
    """Coefficients of ``prod_k sum_j |a_j| x^j`` up to ``x^L``."""
    inside = set(phi_s_indices(phi, s))
    prod = np.zeros(L + 1)
    prod[0] = 1.0
    for k in range(phi.N):
        if k in inside:
            a = [abs(float(c)) for c in _factor_series("todd", None, L)]
        else:
            u = complex(character(s, phi[k]))
            a = [abs(complex(c)) for c in _factor_series("beta", u, L)]
        prod = np.convolve(prod, a)[: L + 1]
    return prod


def truncation_order(phi: DirectionList, y=None, s: TorusPoint | None = None) -> int:
    """``N - d`` for ``y = 0``; otherwise the smallest adequate ``L <= L_MAX``.

    For ``y != 0`` the pieces are exponential polynomials with frequencies
    ``theta`` (``theta . alpha_k = y_k`` on a basis), so ``z_k`` acts with size
    at most ``W = max_k |y_k| + |theta . alpha_k|`` besides at most ``N - d``
    genuine derivatives. The order-``l`` tail is bounded by
    ``m_l * l^(N-d) * W^(l-(N-d))`` with ``m_l`` the majorant coefficient.
    """
    require_spanning(phi)
    y = ParameterList.of(phi, y)
    D = phi.N - phi.dim
    if y.is_zero:
        return D
    if any(abs(v) > Y_MAX for v in y):
        raise ParameterTooLarge(f"|y_k| must be <= {Y_MAX}")
    from .boxspline import frequencies

    W = 0.0
    for th in frequencies(phi, y):
        for k, a in enumerate(phi):
            W = max(W, abs(y[k] - sum(t * x for t, x in zip(th, a))))
    W = max(W, 1e-300)
    from .torus import vertex_set

    points = [s] if s is not None else list(vertex_set(phi))
    best = D
    for pt in points:
        m = _majorant(phi, pt, y, L_MAX + 1)
        for L in range(D, L_MAX + 1):
            l = L + 1
            tail = m[l] * l**D * W ** max(l - D, 0)
            if tail < TRUNCATION_TOLERANCE:
                best = max(best, L)
                break
        else:
            raise TruncationNotConverged(f"no L <= {L_MAX} meets the tail bound")
    return best


# ---------------------------------------------------------------------------
# application

def apply_operator(op: OperatorPoly, piece, at, *, extend: bool = False):
    """``(op(d) g)(at)`` for the local piece ``g``.

    ``at`` must lie in the closure of ``piece.region`` unless ``extend`` asks
    for the analytic continuation of the piece. The exact path differentiates
    the polynomial symbolically. The numeric path works on an exponential
    polynomial ``e^{i theta x} p(x)``, on which ``Q(d)`` acts as
    ``sum_a (d^a Q)(i theta)/a! d^a p``.
    """
    at = as_vector(at)
    region = piece.region
    if not extend and region is not None and not region.contains_closure(at):
        raise PointOutsideAlcove(f"{at} is not in the closure of the piece's region")
    Q = op.cartesian()
    if piece.kind == "exact":
        total = Fraction(0)
        p = piece.poly
        if p.is_zero():
            return total
        for a, c in Q.terms.items():
            if sum(a) > p.degree:
                continue
            val = p.derivative(a)(at)
            if val:
                total = total + c * val
        return _simplify(total)
    fit: ExpPoly = piece.sampler
    if fit.error > APPLY_TOLERANCE:
        raise NumericDivergence(f"piece error estimate {fit.error:.3g} exceeds {APPLY_TOLERANCE}")
    Qc = Poly(Q.dim, {a: to_complex(c) for a, c in Q.terms.items()})
    x = fit.local(at)
    total = 0j
    for theta, p in fit.parts.items():
        if p.is_zero():
            continue
        shifted = Qc.translate(tuple(1j * t for t in theta))
        acc = 0j
        for a, c in shifted.terms.items():
            if sum(a) > p.degree:
                continue
            acc += c * complex(p.derivative(a)(x))
        total += cmath.exp(1j * sum(t * xi for t, xi in zip(theta, x))) * acc
    return total


# ---------------------------------------------------------------------------

def fractional_fourier_check(x: float, v: float, M: int) -> tuple[complex, complex]:
    """Symmetric partial sum of ``sum_n (e^{ix}-1)/(i(x-2 pi n)) e^{2 i pi n v}`` and ``e^{i{v}x}``."""
    n = np.arange(-M, M + 1)
    terms = (cmath.exp(1j * x) - 1) / (1j * (x - 2 * math.pi * n)) * np.exp(2j * math.pi * n * v)
    frac = v - math.floor(v)
    return complex(terms.sum()), cmath.exp(1j * frac * x)
