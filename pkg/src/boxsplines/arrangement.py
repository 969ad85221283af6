"""Walls, affine walls, alcoves and exact one-sided limits.

A wall is a hyperplane spanned by d-1 independent directions; it is stored
by its primitive integer normal ``n`` (first nonzero coordinate positive).
Because ``n`` is primitive, ``{n . lam : lam in Z^d} = Z`` and the affine
walls parallel to it are exactly ``{n . v = m}``, ``m`` integer. An alcove
is therefore pinned down by the slab indices ``floor(n . v)``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .core import (
    DirectionList,
    Representation,
    as_vector,
    dot,
    nullspace_vector,
    rank,
    require_spanning,
    tangent_cone_contains,
)
from .errors import NotGeneric, NotRegular, SearchExhausted

__all__ = [
    "Alcove",
    "walls",
    "is_regular",
    "is_generic",
    "alcove_of",
    "first_crossing",
    "limit_point",
    "generic_direction",
    "GENERIC_SEARCH_BUDGET",
]

GENERIC_SEARCH_BUDGET = 2000


@lru_cache(maxsize=None)
def _walls(phi: DirectionList) -> tuple[tuple[int, ...], ...]:
    d = phi.dim
    if d == 1:
        return ((1,),)
    normals = set()
    for sub in combinations(set(phi.vectors), d - 1):
        if rank(sub) == d - 1:
            normals.add(nullspace_vector(sub, d))
    return tuple(sorted(normals))


def walls(phi: DirectionList) -> tuple[tuple[int, ...], ...]:
    """Primitive normals of all walls, in a fixed sorted order."""
    require_spanning(phi)
    return _walls(phi)


def is_regular(phi: DirectionList, v) -> bool:
    v = as_vector(v)
    return all(dot(n, v).denominator != 1 for n in walls(phi))


def is_generic(phi: DirectionList, eps) -> bool:
    return _is_generic(phi, as_vector(eps))


@lru_cache(maxsize=4096)
def _is_generic(phi: DirectionList, eps: tuple) -> bool:
    return all(dot(n, eps) != 0 for n in walls(phi))


@dataclass(frozen=True)
class Alcove:
    """An alcove, identified by its slab indices ``floor(n . v)`` per wall."""

    normals: tuple[tuple[int, ...], ...]
    signs: tuple[int, ...]
    witness: tuple = field(compare=False)

    def contains(self, v) -> bool:
        v = as_vector(v)
        return all(k < dot(n, v) < k + 1 for n, k in zip(self.normals, self.signs))

    def contains_closure(self, v) -> bool:
        v = as_vector(v)
        return all(k <= dot(n, v) <= k + 1 for n, k in zip(self.normals, self.signs))

    def translate(self, lam) -> "Alcove":
        lam = as_vector(lam)
        shifts = [int(dot(n, lam)) for n in self.normals]
        return Alcove(
            self.normals,
            tuple(k + s for k, s in zip(self.signs, shifts)),
            tuple(a + b for a, b in zip(self.witness, lam)),
        )


def alcove_of(phi: DirectionList, v) -> Alcove:
    v = as_vector(v)
    if not is_regular(phi, v):
        raise NotRegular(f"{v} lies on an affine wall")
    normals = walls(phi)
    return Alcove(normals, tuple(math.floor(dot(n, v)) for n in normals), v)


def first_crossing(phi: DirectionList, v, eps) -> Fraction:
    """Smallest ``t > 0`` with ``v + t*eps`` on an affine wall."""
    v, eps = as_vector(v), as_vector(eps)
    if not is_generic(phi, eps):
        raise NotGeneric(f"{eps} lies on a wall")
    best = None
    for n in walls(phi):
        a, b = dot(n, v), dot(n, eps)
        if b > 0:
            t = (math.floor(a) + 1 - a) / b
        else:
            t = (a - (math.ceil(a) - 1)) / (-b)
        if best is None or t < best:
            best = t
    return best


def limit_point(phi: DirectionList, v, eps) -> tuple:
    """``v + (t*/2) eps``: a regular point of the alcove reached from ``v`` along ``eps``."""
    v, eps = as_vector(v), as_vector(eps)
    t = first_crossing(phi, v, eps) / 2
    return tuple(a + t * b for a, b in zip(v, eps))


def generic_direction(phi: DirectionList, seed: int = 0, cone=None) -> tuple:
    """Deterministic search for a generic direction, optionally inside a tangent cone.

    ``cone`` is a :class:`Representation` (or point) ``r`` of the zonotope; the
    result then lies in the tangent cone of Z(Phi) at ``r``.
    """
    require_spanning(phi)
    rng = random.Random(seed)
    d = phi.dim
    for attempt in range(GENERIC_SEARCH_BUDGET):
        den = rng.randint(1, 7)
        if cone is not None and attempt % 2 == 0:
            # positive combinations of the directions land in Cone(Phi) often
            w = [Fraction(rng.randint(1, 9), den) for _ in range(phi.N)]
            eps = tuple(sum((w[k] * phi[k][j] for k in range(phi.N)), Fraction(0)) for j in range(d))
        else:
            eps = tuple(Fraction(rng.randint(-9, 9), den) for _ in range(d))
        if not any(eps) or not is_generic(phi, eps):
            continue
        if cone is not None:
            anchor = cone.point if isinstance(cone, Representation) else as_vector(cone)
            if not tangent_cone_contains(phi, anchor, eps):
                continue
        return eps
    raise SearchExhausted(f"no generic direction found within {GENERIC_SEARCH_BUDGET} draws")
