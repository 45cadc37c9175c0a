"""Seeded random instance generators.

The PRNG is Python's Mersenne Twister (MT19937) via ``random.Random``; the
default seed is 42 everywhere.  Three space shapes are produced: rational
points on a line, symmetric matrices with entries in [1, 2] (triangle holds
automatically), and rational points in the plane with the taxicab metric.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .functions import LipschitzFunction, WeightFunction, lip0_function, weight_function
from .scalars import EXACT, one, zero
from .space import PointedMetricSpace, validate
from .vectors import FreeVector, canonicalize

DEFAULT_SEED = 42


def rng_from_seed(seed: int = DEFAULT_SEED) -> random.Random:
    return random.Random(seed)


def subrng(rng_or_seed, tag: str) -> random.Random:
    """Independent stream for a named check, stable across runs."""
    seed = rng_or_seed if isinstance(rng_or_seed, int) else rng_or_seed.randrange(2 ** 63)
    return random.Random((seed, tag).__repr__())


def random_space(rng: random.Random, n_points: int | None = None,
                 mode: str = EXACT) -> PointedMetricSpace:
    n = n_points if n_points is not None else rng.randrange(3, 9)
    shape = rng.randrange(3)
    labels = [f"p{i}" for i in range(n)]
    if shape == 0:
        coords: set[Fraction] = set()
        while len(coords) < n:
            coords.add(Fraction(rng.randrange(0, 16 * n), rng.choice((1, 2, 4, 8))))
        pts = sorted(coords)[:n]
        dist = [[abs(a - b) for b in pts] for a in pts]
    elif shape == 1:
        dist = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                dist[i][j] = dist[j][i] = 1 + Fraction(rng.randrange(0, 25), 24)
    else:
        seen: set[tuple[Fraction, Fraction]] = set()
        while len(seen) < n:
            seen.add((Fraction(rng.randrange(0, 8 * n), 4),
                      Fraction(rng.randrange(0, 8 * n), 4)))
        pts2 = sorted(seen)[:n]
        dist = [[abs(p[0] - q[0]) + abs(p[1] - q[1]) for q in pts2] for p in pts2]
    space = validate(labels, dist, rng.randrange(n))
    return space if mode == EXACT else space.to_float()


def random_vector(rng: random.Random, space: PointedMetricSpace,
                  nonzero: bool = False) -> FreeVector:
    while True:
        items = []
        for i in space.non_base:
            if rng.random() < 0.75:
                num = rng.randrange(-24, 25)
                if num:
                    items.append((i, _scalar(space, Fraction(num, rng.randrange(1, 7)))))
        m = canonicalize(space, items)
        if not (nonzero and m.is_zero):
            return m


def random_positive_vector(rng: random.Random, space: PointedMetricSpace,
                           nonzero: bool = False) -> FreeVector:
    while True:
        items = []
        for i in space.non_base:
            if rng.random() < 0.75:
                num = rng.randrange(1, 25)
                items.append((i, _scalar(space, Fraction(num, rng.randrange(1, 7)))))
        m = canonicalize(space, items)
        if not (nonzero and m.is_zero):
            return m


def random_lip0(rng: random.Random, space: PointedMetricSpace,
                normalized: bool = False) -> LipschitzFunction:
    z = zero(space.mode)
    values = [z] * space.n
    for i in space.non_base:
        values[i] = _scalar(space, Fraction(rng.randrange(-48, 49), rng.randrange(1, 9)))
    f = lip0_function(space, values)
    if normalized and f.lip_const > one(space.mode):
        f = lip0_function(space, tuple(v / f.lip_const for v in values))
    return f


def random_weight(rng: random.Random, space: PointedMetricSpace) -> WeightFunction:
    values = [_scalar(space, Fraction(rng.randrange(0, 13), 12)) for _ in range(space.n)]
    return weight_function(space, values)


def random_majorant(rng: random.Random, m: FreeVector) -> FreeVector:
    """A positive vector dominating m, built without the Jordan split."""
    space = m.space
    z = zero(space.mode)
    items = []
    for i in space.non_base:
        c = m.coeffs.get(i, z)
        extra = z
        if rng.random() < 0.5:
            extra = _scalar(space, Fraction(rng.randrange(0, 13), rng.randrange(1, 5)))
        items.append((i, max(c, z) + extra))
    return canonicalize(space, items)


def random_molecule_family(rng: random.Random, space: PointedMetricSpace,
                           count: int) -> tuple[list[tuple[int, int]], list]:
    pairs = []
    coeffs = []
    for _ in range(count):
        x = rng.choice(space.non_base)
        while True:
            y = rng.randrange(space.n)
            if y != x:
                break
        pairs.append((x, y))
        coeffs.append(_scalar(space, Fraction(rng.randrange(0, 25), rng.randrange(1, 7))))
    return pairs, coeffs


def _scalar(space: PointedMetricSpace, x: Fraction):
    return x if space.mode == EXACT else float(x)
