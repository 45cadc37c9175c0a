"""Lipschitz functions on a finite pointed metric space.

Two flavors share one value container: ``lip0`` functions vanish at the base
point and pair with free vectors; ``lip`` functions are unconstrained and act
as weights.  Everything is an immutable value object and the Lipschitz
constant is computed once at construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import BaseNotInSubset, EmptySubset, PreconditionViolation, SpaceMismatch
from .scalars import Scalar, one, pow2, zero
from .space import PointedMetricSpace

LIP0 = "lip0"
LIP = "lip"


@dataclass(frozen=True)
class LipschitzFunction:
    space: PointedMetricSpace
    values: tuple[Scalar, ...]
    kind: str = LIP0

    def __post_init__(self):
        if len(self.values) != self.space.n:
            raise ValueError("one value per point required")
        if self.kind not in (LIP0, LIP):
            raise ValueError(f"unknown function kind {self.kind!r}")
        if self.kind == LIP0 and self.values[self.space.base] != zero(self.space.mode):
            raise PreconditionViolation("lip0 functions must vanish at the base point")

    @cached_property
    def lip_const(self) -> Scalar:
        best = zero(self.space.mode)
        v = self.values
        for i in range(self.space.n):
            for j in range(i + 1, self.space.n):
                num = abs(v[i] - v[j])
                if num:
                    ratio = num / self.space.d(i, j)
                    if ratio > best:
                        best = ratio
        return best

    @cached_property
    def sup_norm(self) -> Scalar:
        return max(abs(v) for v in self.values)

    def value_at(self, point) -> Scalar:
        return self.values[self.space.index(point)]


@dataclass(frozen=True)
class WeightFunction(LipschitzFunction):
    """Lip-flavor function used for weighting, with support bookkeeping."""

    kind: str = LIP

    @cached_property
    def support(self) -> tuple[int, ...]:
        z = zero(self.space.mode)
        return tuple(i for i, v in enumerate(self.values) if v != z)

    @cached_property
    def rad_support(self) -> Scalar:
        if not self.support:
            return zero(self.space.mode)
        return max(self.space.rho(i) for i in self.support)


def lip0_function(space: PointedMetricSpace, values: Iterable) -> LipschitzFunction:
    return LipschitzFunction(space, tuple(values), LIP0)


def lip_function(space: PointedMetricSpace, values: Iterable) -> LipschitzFunction:
    return LipschitzFunction(space, tuple(values), LIP)


def weight_function(space: PointedMetricSpace, values: Iterable) -> WeightFunction:
    return WeightFunction(space, tuple(values), LIP)


def lip_constant(f: LipschitzFunction) -> Scalar:
    return f.lip_const


def rho(space: PointedMetricSpace) -> LipschitzFunction:
    """The distance-to-base function; 1-Lipschitz with equality when n >= 2."""
    return LipschitzFunction(space, space.rho_values, LIP0)


def mcshane_extend(space: PointedMetricSpace,
                   values_on_subset: Mapping) -> LipschitzFunction:
    """Extend a partial function to the whole space via the clamped
    inf-convolution.

    The extension F(x) = clamp(min_y f(y) + L*d(x,y), [min f, max f]) agrees
    with f on the subset, keeps the same Lipschitz constant L, and preserves
    sup and inf.  The subset must contain the base point with value 0.
    """
    if not values_on_subset:
        raise EmptySubset("cannot extend from an empty subset")
    sub = {space.index(p): v for p, v in values_on_subset.items()}
    if space.base not in sub:
        raise BaseNotInSubset("the subset must contain the base point")
    if sub[space.base] != zero(space.mode):
        raise PreconditionViolation("the base point value must be 0")

    points = sorted(sub)
    lo = min(sub.values())
    hi = max(sub.values())
    lip = zero(space.mode)
    for a in range(len(points)):
        for b in range(a + 1, len(points)):
            i, j = points[a], points[b]
            num = abs(sub[i] - sub[j])
            if num:
                ratio = num / space.d(i, j)
                if ratio > lip:
                    lip = ratio

    out = []
    for x in range(space.n):
        if x in sub:
            out.append(sub[x])
            continue
        val = min(sub[y] + lip * space.d(x, y) for y in points)
        if val > hi:
            val = hi
        if val < lo:
            val = lo
        out.append(val)
    return LipschitzFunction(space, tuple(out), LIP0)


def _combine(f: LipschitzFunction, g: LipschitzFunction, op) -> LipschitzFunction:
    if f.space != g.space:
        raise SpaceMismatch("functions live on different spaces")
    kind = LIP0 if f.kind == LIP0 and g.kind == LIP0 else LIP
    return LipschitzFunction(f.space, tuple(op(a, b) for a, b in zip(f.values, g.values)),
                             kind)


def meet(f: LipschitzFunction, g: LipschitzFunction) -> LipschitzFunction:
    return _combine(f, g, min)


def join(f: LipschitzFunction, g: LipschitzFunction) -> LipschitzFunction:
    return _combine(f, g, max)


def add(f: LipschitzFunction, g: LipschitzFunction) -> LipschitzFunction:
    return _combine(f, g, lambda a, b: a + b)


def subtract(f: LipschitzFunction, g: LipschitzFunction) -> LipschitzFunction:
    return _combine(f, g, lambda a, b: a - b)


def scale(f: LipschitzFunction, c) -> LipschitzFunction:
    return LipschitzFunction(f.space, tuple(v * c for v in f.values), f.kind)


def abs_fn(f: LipschitzFunction) -> LipschitzFunction:
    return LipschitzFunction(f.space, tuple(abs(v) for v in f.values), f.kind)


def pos_part(f: LipschitzFunction) -> LipschitzFunction:
    z = zero(f.space.mode)
    return LipschitzFunction(f.space, tuple(max(v, z) for v in f.values), f.kind)


def neg_part(f: LipschitzFunction) -> LipschitzFunction:
    z = zero(f.space.mode)
    return LipschitzFunction(f.space, tuple(max(-v, z) for v in f.values), f.kind)


def multiply(f: LipschitzFunction, h: WeightFunction) -> LipschitzFunction:
    """Pointwise product f*h; the realization of the weighting operator on
    functions.  Requires the weight factor to be a WeightFunction."""
    if not isinstance(h, WeightFunction):
        raise TypeError("multiply expects a WeightFunction as second factor")
    if f.space != h.space:
        raise SpaceMismatch("functions live on different spaces")
    return LipschitzFunction(f.space, tuple(a * b for a, b in zip(f.values, h.values)),
                             f.kind)


def weight_product(h1: WeightFunction, h2: WeightFunction) -> WeightFunction:
    if h1.space != h2.space:
        raise SpaceMismatch("weights live on different spaces")
    return WeightFunction(h1.space, tuple(a * b for a, b in zip(h1.values, h2.values)),
                          LIP)


def constant_weight(space: PointedMetricSpace, value=None) -> WeightFunction:
    v = one(space.mode) if value is None else value
    return WeightFunction(space, tuple(v for _ in range(space.n)), LIP)


def bump(space: PointedMetricSpace, point, height=None) -> LipschitzFunction:
    """Function equal to ``height`` at one non-base point and 0 elsewhere.

    Finite metric spaces are topologically discrete, so this is supported on
    the singleton and Lipschitz with constant height/min-distance.
    """
    i = space.index(point)
    if i == space.base:
        raise PreconditionViolation("a bump at the base point is identically zero")
    h = one(space.mode) if height is None else height
    vals = [zero(space.mode)] * space.n
    vals[i] = h
    return LipschitzFunction(space, tuple(vals), LIP0)


def _inner_cutoff(space: PointedMetricSpace, n: int) -> tuple[Scalar, ...]:
    lo = pow2(n, space.mode)
    hi = pow2(n + 1, space.mode)
    out = []
    for x in range(space.n):
        r = space.rho(x)
        if r <= lo:
            out.append(one(space.mode))
        elif r >= hi:
            out.append(zero(space.mode))
        else:
            out.append(2 - r / lo)
    return tuple(out)


def weight_h(space: PointedMetricSpace, n: int) -> WeightFunction:
    """Inner dyadic cutoff: 1 inside radius 2**n, 0 outside 2**(n+1),
    linear in the distance to the base in between."""
    return WeightFunction(space, _inner_cutoff(space, n), LIP)


def weight_g(space: PointedMetricSpace, n: int) -> WeightFunction:
    """Outer dyadic cutoff, the complement 1 - H_n."""
    o = one(space.mode)
    return WeightFunction(space, tuple(o - v for v in _inner_cutoff(space, n)), LIP)


def weight_lambda(space: PointedMetricSpace, n: int) -> WeightFunction:
    """Dyadic annulus weight G_{n-1} * H_n around radius 2**n."""
    g = weight_g(space, n - 1)
    h = weight_h(space, n)
    return WeightFunction(space, tuple(a * b for a, b in zip(g.values, h.values)), LIP)


def weight_pi(space: PointedMetricSpace, n: int) -> WeightFunction:
    """Symmetric band weight G_{-(n+1)} * H_n, defined for n >= 0."""
    if n < 0:
        raise PreconditionViolation("the band weight index must be a natural number")
    g = weight_g(space, -(n + 1))
    h = weight_h(space, n)
    return WeightFunction(space, tuple(a * b for a, b in zip(g.values, h.values)), LIP)
