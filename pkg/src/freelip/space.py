"""Finite pointed metric spaces: validation, derived quantities, discreteness.

A space is an ordered list of labelled points, a symmetric distance matrix
and a distinguished base point.  Validation checks the metric axioms in a
fixed order and reports the first violation together with its witnesses, so
diagnostics are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    AsymmetricDistance,
    BadBaseIndex,
    DuplicateLabel,
    EmptySet,
    NegativeDistance,
    NonSquareMatrix,
    NonzeroSelfDistance,
    PreconditionViolation,
    TriangleViolation,
    UnknownPoint,
    ZeroDistanceDistinctPoints,
)
from .scalars import EXACT, Scalar, check_mode, parse_scalar, zero


@dataclass(frozen=True)
class PointedMetricSpace:
    """Validated finite metric space with a distinguished base point.

    Immutable after construction; safe to share across workers.  Use
    :func:`validate` to build one from raw data.
    """

    labels: tuple[str, ...]
    dist: tuple[tuple[Scalar, ...], ...]
    base: int
    mode: str = EXACT

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def rho_values(self) -> tuple[Scalar, ...]:
        """Distance of every point to the base point."""
        return tuple(self.dist[i][self.base] for i in range(self.n))

    @cached_property
    def non_base(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if i != self.base)

    def d(self, i: int, j: int) -> Scalar:
        return self.dist[i][j]

    def rho(self, i: int) -> Scalar:
        return self.rho_values[i]

    def index(self, point) -> int:
        """Resolve a label or integer index to an index, or raise UnknownPoint."""
        if isinstance(point, str):
            try:
                return self.label_index[point]
            except KeyError:
                raise UnknownPoint(f"no point labelled {point!r}") from None
        i = int(point)
        if not 0 <= i < self.n:
            raise UnknownPoint(f"point index {i} out of range for {self.n} points")
        return i

    def indices_of(self, points: Iterable) -> tuple[int, ...]:
        return tuple(self.index(p) for p in points)

    def to_float(self) -> "PointedMetricSpace":
        """Float-mode twin of this space (exact distances rounded to binary64)."""
        if self.mode == "float":
            return self
        dist = tuple(tuple(float(x) for x in row) for row in self.dist)
        return PointedMetricSpace(self.labels, dist, self.base, "float")


def validate(labels: Sequence[str], matrix: Sequence[Sequence], base: int,
             mode: str = EXACT) -> PointedMetricSpace:
    """Check the metric axioms and return a validated space.

    Raises the error for the first violated axiom, with witnessing labels:
    DuplicateLabel, BadBaseIndex, NonSquareMatrix, NegativeDistance,
    NonzeroSelfDistance, AsymmetricDistance, ZeroDistanceDistinctPoints,
    TriangleViolation(i, j, k) meaning d(i,k) > d(i,j) + d(j,k).
    """
    check_mode(mode)
    labels = tuple(str(lab) for lab in labels)
    n = len(labels)
    seen: dict[str, int] = {}
    for i, lab in enumerate(labels):
        if lab in seen:
            raise DuplicateLabel(f"label {lab!r} appears at positions {seen[lab]} and {i}",
                                 (lab,))
        seen[lab] = i
    if not isinstance(base, int) or not 0 <= base < n:
        raise BadBaseIndex(f"base index {base!r} not in [0, {n})", (base,))
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise NonSquareMatrix(f"distance matrix must be {n}x{n}", (n,))

    dist = [[parse_scalar(matrix[i][j], mode) for j in range(n)] for i in range(n)]
    z = zero(mode)
    for i in range(n):
        if dist[i][i] != z:
            raise NonzeroSelfDistance(f"d({labels[i]},{labels[i]}) must be 0",
                                      (labels[i],))
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i][j] < z or dist[j][i] < z:
                raise NegativeDistance(f"d({labels[i]},{labels[j]}) is negative",
                                       (labels[i], labels[j]))
            if dist[i][j] != dist[j][i]:
                raise AsymmetricDistance(
                    f"d({labels[i]},{labels[j]}) != d({labels[j]},{labels[i]})",
                    (labels[i], labels[j]))
            if dist[i][j] == z:
                raise ZeroDistanceDistinctPoints(
                    f"distinct points {labels[i]}, {labels[j]} at distance 0",
                    (labels[i], labels[j]))
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            for k in range(n):
                if k == i or k == j:
                    continue
                if dist[i][k] > dist[i][j] + dist[j][k]:
                    raise TriangleViolation(
                        f"d({labels[i]},{labels[k]}) > "
                        f"d({labels[i]},{labels[j]}) + d({labels[j]},{labels[k]})",
                        (labels[i], labels[j], labels[k]))
    frozen = tuple(tuple(row) for row in dist)
    return PointedMetricSpace(labels, frozen, base, mode)


def radius(space: PointedMetricSpace, points: Iterable) -> Scalar:
    """sup of d(a, base) over a nonempty subset."""
    idx = space.indices_of(points)
    if not idx:
        raise EmptySet("radius of the empty set is undefined")
    return max(space.rho(i) for i in idx)


def diameter(space: PointedMetricSpace, points: Iterable) -> Scalar:
    """sup of d(a, b) over a nonempty subset (0 for singletons)."""
    idx = space.indices_of(points)
    if not idx:
        raise EmptySet("diameter of the empty set is undefined")
    best = zero(space.mode)
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            v = space.d(idx[a], idx[b])
            if v > best:
                best = v
    return best


def dist_to_set(space: PointedMetricSpace, x, points: Iterable) -> Scalar:
    """inf of d(x, a) over the subset; +inf for the empty set."""
    xi = space.index(x)
    idx = space.indices_of(points)
    if not idx:
        return math.inf
    return min(space.d(xi, i) for i in idx)


@dataclass(frozen=True)
class RadialReport:
    """Largest alpha with d(x,y) >= alpha*d(x,0) for all distinct x, y.

    On a finite space alpha is always positive; the report exists so that
    sequences of growing nets can be compared.  ``vacuous`` flags spaces
    where only base-paired constraints exist (at most one non-base point),
    in which case alpha caps at 1.
    """

    alpha: Scalar
    witness: tuple[str, str] | None
    vacuous: bool
    is_radially_discrete: bool


def radial_alpha(space: PointedMetricSpace) -> RadialReport:
    """Scan ordered pairs (x, y), x != base, for the minimal d(x,y)/d(x,0)."""
    if space.n < 2:
        raise PreconditionViolation("radial constant needs at least two points")
    best: Scalar | None = None
    witness: tuple[str, str] | None = None
    constrained = False
    for x in space.non_base:
        rx = space.rho(x)
        for y in range(space.n):
            if y == x:
                continue
            if y != space.base:
                constrained = True
            ratio = space.d(x, y) / rx
            if best is None or ratio < best:
                best = ratio
                witness = (space.labels[x], space.labels[y])
    assert best is not None
    return RadialReport(alpha=best, witness=witness, vacuous=not constrained,
                        is_radially_discrete=best > zero(space.mode))


def uniform_separation(space: PointedMetricSpace) -> Scalar:
    """Minimal pairwise distance (the uniform separation constant)."""
    if space.n < 2:
        raise PreconditionViolation("uniform separation needs at least two points")
    return min(space.d(i, j)
               for i in range(space.n) for j in range(i + 1, space.n))


def is_uniformly_discrete(space: PointedMetricSpace) -> bool:
    """True on every finite space; exists for net-sequence bookkeeping."""
    return uniform_separation(space) > zero(space.mode)


def is_radially_uniformly_discrete(space: PointedMetricSpace) -> bool:
    return is_uniformly_discrete(space) and radial_alpha(space).is_radially_discrete


def attach_base_point(labels: Sequence[str], matrix: Sequence[Sequence], r,
                      new_label: str = "0", mode: str = EXACT) -> PointedMetricSpace:
    """Attach a fresh base point at distance r from every original point.

    Needs r >= diam/2 for the triangle inequality; validation raises
    TriangleViolation otherwise.  With r = 1 and diameter <= 2 this realizes
    the identification of free Lipschitz functions over the augmented space.
    """
    check_mode(mode)
    rv = parse_scalar(r, mode)
    if rv <= zero(mode):
        raise PreconditionViolation("base attachment distance must be positive")
    labels = [str(lab) for lab in labels]
    n = len(labels)
    rows = [[parse_scalar(matrix[i][j], mode) for j in range(n)] for i in range(n)]
    z = zero(mode)
    out = [[z] + [rv] * n]
    for i in range(n):
        out.append([rv] + rows[i])
    return validate([new_label] + labels, out, 0, mode)
