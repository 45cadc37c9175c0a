"""Finitely supported elements of the free space in canonical form.

A vector is a sparse map from non-base point indices to nonzero coefficients;
this is the unique representing measure of the functional, so two vectors are
equal exactly when their canonical maps agree.  The base point never carries
a coefficient (its evaluation functional is null).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import PreconditionViolation, SpaceMismatch
from .functions import LIP0, LipschitzFunction
from .scalars import Scalar, parse_scalar, zero
from .space import PointedMetricSpace


class FreeVector:
    """Canonical finitely supported element: nonzero coefficients off-base."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: PointedMetricSpace, coeffs: Mapping[int, Scalar]):
        self.space = space
        self.coeffs = dict(coeffs)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FreeVector) and self.space == other.space
                and self.coeffs == other.coeffs)

    def __repr__(self) -> str:
        body = ", ".join(f"{self.space.labels[i]}: {c}"
                         for i, c in sorted(self.coeffs.items()))
        return f"FreeVector({{{body}}})"

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, point) -> Scalar:
        return self.coeffs.get(self.space.index(point), zero(self.space.mode))


def canonicalize(space: PointedMetricSpace, items: Iterable[tuple]) -> FreeVector:
    """Merge duplicates, drop the base point and zero coefficients."""
    z = zero(space.mode)
    acc: dict[int, Scalar] = {}
    for point, coeff in items:
        i = space.index(point)
        c = parse_scalar(coeff, space.mode)
        if i == space.base:
            continue
        acc[i] = acc.get(i, z) + c
    return FreeVector(space, {i: c for i, c in acc.items() if c != z})


def delta(space: PointedMetricSpace, point, weight=1) -> FreeVector:
    return canonicalize(space, [(point, weight)])


def zero_vector(space: PointedMetricSpace) -> FreeVector:
    return FreeVector(space, {})


def pair(m: FreeVector, f: LipschitzFunction) -> Scalar:
    """Duality pairing sum of coefficient * f(point); f must vanish at base."""
    if m.space != f.space:
        raise SpaceMismatch("vector and function live on different spaces")
    if f.kind != LIP0:
        raise PreconditionViolation("pairing requires a base-vanishing function")
    total = zero(m.space.mode)
    for i, c in m.coeffs.items():
        total += c * f.values[i]
    return total


def norm1(m: FreeVector) -> Scalar:
    """Total variation mass of the representing measure."""
    total = zero(m.space.mode)
    for c in m.coeffs.values():
        total += abs(c)
    return total


def support_indices(m: FreeVector) -> tuple[int, ...]:
    return tuple(sorted(m.coeffs))


def support(m: FreeVector) -> tuple[str, ...]:
    """Support as point labels in space order; empty exactly for the zero vector."""
    return tuple(m.space.labels[i] for i in support_indices(m))


def add(m1: FreeVector, m2: FreeVector) -> FreeVector:
    if m1.space != m2.space:
        raise SpaceMismatch("vectors live on different spaces")
    acc = dict(m1.coeffs)
    z = zero(m1.space.mode)
    for i, c in m2.coeffs.items():
        acc[i] = acc.get(i, z) + c
    return FreeVector(m1.space, {i: c for i, c in acc.items() if c != z})


def scale(m: FreeVector, c) -> FreeVector:
    z = zero(m.space.mode)
    cv = parse_scalar(c, m.space.mode)
    if cv == z:
        return zero_vector(m.space)
    return FreeVector(m.space, {i: v * cv for i, v in m.coeffs.items()})


def negate(m: FreeVector) -> FreeVector:
    return FreeVector(m.space, {i: -v for i, v in m.coeffs.items()})


def subtract(m1: FreeVector, m2: FreeVector) -> FreeVector:
    return add(m1, negate(m2))


@dataclass(frozen=True)
class Molecule:
    """weight * (delta(x) - delta(y)) / d(x, y) with distinct endpoints."""

    x: int
    y: int
    weight: Scalar

    def to_vector(self, space: PointedMetricSpace) -> FreeVector:
        w = self.weight / space.d(self.x, self.y)
        return canonicalize(space, [(self.x, w), (self.y, -w)])


@dataclass(frozen=True)
class MoleculeDecomposition:
    molecules: tuple[Molecule, ...]
    residual_point: int | None
    residual_coeff: Scalar

    def reassemble(self, space: PointedMetricSpace) -> FreeVector:
        total = zero_vector(space)
        for mol in self.molecules:
            total = add(total, mol.to_vector(space))
        if self.residual_point is not None:
            total = add(total, delta(space, self.residual_point, self.residual_coeff))
        return total


def molecule_decompose(m: FreeVector) -> MoleculeDecomposition:
    """Greedy chain decomposition into molecules plus one residual atom.

    Largest positive and largest negative coefficients are paired first and
    the smaller magnitude is transported; single-signed leftovers become
    molecules against the base point, except for the last one which stays as
    the residual multiple of a single atom.  Reassembly is exact; the
    decomposition itself is not unique.
    """
    space = m.space
    z = zero(space.mode)
    pos = [(i, c) for i, c in m.coeffs.items() if c > z]
    neg = [(i, -c) for i, c in m.coeffs.items() if c < z]
    molecules: list[Molecule] = []

    while pos and neg:
        pos.sort(key=lambda t: (-t[1], t[0]))
        neg.sort(key=lambda t: (-t[1], t[0]))
        (i, p), (j, q) = pos[0], neg[0]
        w = min(p, q)
        molecules.append(Molecule(i, j, w * space.d(i, j)))
        pos[0] = (i, p - w)
        neg[0] = (j, q - w)
        pos = [(a, b) for a, b in pos if b != z]
        neg = [(a, b) for a, b in neg if b != z]

    residual_point: int | None = None
    residual_coeff: Scalar = z
    leftovers = sorted(pos, key=lambda t: (-t[1], t[0]))
    sign = 1
    if neg:
        leftovers = sorted(neg, key=lambda t: (-t[1], t[0]))
        sign = -1
    if leftovers:
        for i, c in leftovers[:-1]:
            if sign > 0:
                molecules.append(Molecule(i, space.base, c * space.rho(i)))
            else:
                molecules.append(Molecule(space.base, i, c * space.rho(i)))
        i, c = leftovers[-1]
        residual_point = i
        residual_coeff = c if sign > 0 else -c

    return MoleculeDecomposition(tuple(molecules), residual_point, residual_coeff)
