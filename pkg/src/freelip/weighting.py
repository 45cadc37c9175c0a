"""Weighting operators, their adjoints, exact operator norms, and the dyadic
decompositions they induce.

An operator multiplies base-vanishing functions by a fixed weight; its
adjoint scales free-vector coefficients pointwise by the weight.  The exact
operator norm is a maximum of free norms over molecules because the unit
ball of the free space is the closed convex hull of molecules, so the
supremum of a convex function over the ball is attained at one of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import SpaceMismatch
from .functions import (
    LipschitzFunction,
    WeightFunction,
    multiply,
    weight_g,
    weight_h,
    weight_lambda,
    weight_pi,
)
from .scalars import Scalar, dyadic_floor, one, pow2, zero
from .solver import kr_norm
from .space import PointedMetricSpace
from .vectors import FreeVector, add as vec_add, canonicalize, support_indices, zero_vector


@dataclass(frozen=True)
class WeightOperator:
    """Multiplication operator by a fixed weight function."""

    weight: WeightFunction

    @property
    def space(self) -> PointedMetricSpace:
        return self.weight.space

    @cached_property
    def norm_bound(self) -> Scalar:
        """sup-norm plus support radius times Lipschitz constant; always
        dominates the exact operator norm."""
        return self.weight.sup_norm + self.weight.rad_support * self.weight.lip_const


def apply_to_function(op: WeightOperator, f: LipschitzFunction) -> LipschitzFunction:
    """The operator action f -> f*h; vanishes at base whenever f does."""
    return multiply(f, op.weight)


def adjoint_apply(op: WeightOperator, m: FreeVector) -> FreeVector:
    """Adjoint action on free vectors: coefficients scale by the weight.

    Satisfies the exact adjointness pairing identity, and the support of the
    result is contained in supp(m) intersected with supp(h).
    """
    if m.space != op.space:
        raise SpaceMismatch("vector and operator live on different spaces")
    h = op.weight.values
    return canonicalize(m.space, [(i, c * h[i]) for i, c in m.coeffs.items()])


def operator_norm(op: WeightOperator) -> Scalar:
    """Exact operator norm as a maximum of free norms over molecules."""
    space = op.space
    if space.n < 2:
        return zero(space.mode)
    best = zero(space.mode)
    o = one(space.mode)
    for x in range(space.n):
        for y in range(x + 1, space.n):
            w = o / space.d(x, y)
            mol = canonicalize(space, [(x, w), (y, -w)])
            image = adjoint_apply(op, mol)
            value, _ = kr_norm(image)
            if value > best:
                best = value
    return best


def kalton_parts(m: FreeVector) -> dict[int, FreeVector]:
    """Split m along the dyadic annulus weights; finitely many parts.

    A point at distance r from the base meets at most the two annuli with
    indices around log2(r), so candidate indices come from each support
    point's dyadic bracket.  The parts sum back to m exactly because the
    annulus weights sum to one off the base point.
    """
    space = m.space
    if m.is_zero:
        return {}
    candidates: set[int] = set()
    for i in m.coeffs:
        k = dyadic_floor(space.rho(i), space.mode)
        candidates.add(k)
        candidates.add(k + 1)
    parts: dict[int, FreeVector] = {}
    for n in sorted(candidates):
        lam = weight_lambda(space, n).values
        part = canonicalize(space, [(i, c * lam[i]) for i, c in m.coeffs.items()])
        if not part.is_zero:
            parts[n] = part
    return parts


@dataclass(frozen=True)
class SeparationClassReport:
    """Finite-space evaluation of the six separation-class predicates.

    On a finite space every functional is strongly bounded and avoids the
    base point strongly; the concentrated predicates hold only for zero.
    The decomposition into base-point part, band part and far part is
    computed through the stabilized weights and the band part is the whole
    vector, with the norm splitting additively across the three parts.
    """

    strongly_bounded: bool
    strongly_bounded_witness: int | None
    avoids_infinity: bool
    concentrated_at_infinity: bool
    concentrated_at_zero: bool
    avoids_zero: bool
    avoids_zero_strongly: bool
    avoids_zero_witness: int | None
    part_at_zero: FreeVector
    band_part: FreeVector
    part_at_infinity: FreeVector
    norm_total: Scalar
    norm_parts: tuple[Scalar, Scalar, Scalar]
    norm_additivity_holds: bool
    kalton_norms: dict[int, Scalar]
    kalton_total: Scalar
    kalton_reconstruction_exact: bool
    kalton_bound_holds: bool
    kalton_measured_ratio: Scalar | None


def _adjoint_by_weight(m: FreeVector, w: WeightFunction) -> FreeVector:
    return adjoint_apply(WeightOperator(w), m)


def class_report(m: FreeVector) -> SeparationClassReport:
    """Evaluate the separation classes of m through the weight family."""
    space = m.space
    mode = space.mode
    z = zero(mode)

    if m.is_zero:
        zv = zero_vector(space)
        return SeparationClassReport(
            strongly_bounded=True, strongly_bounded_witness=0,
            avoids_infinity=True,
            concentrated_at_infinity=True, concentrated_at_zero=True,
            avoids_zero=True, avoids_zero_strongly=True, avoids_zero_witness=0,
            part_at_zero=zv, band_part=zv, part_at_infinity=zv,
            norm_total=z, norm_parts=(z, z, z), norm_additivity_holds=True,
            kalton_norms={}, kalton_total=z, kalton_reconstruction_exact=True,
            kalton_bound_holds=True, kalton_measured_ratio=None)

    supp = support_indices(m)
    max_rho = max(space.rho(i) for i in supp)
    min_rho = min(space.rho(i) for i in supp)

    sb_witness = 0
    while pow2(sb_witness, mode) < max_rho:
        sb_witness += 1
    az_witness = 0
    while pow2(1 - az_witness, mode) > min_rho:
        az_witness += 1

    def h_part(n: int) -> FreeVector:
        return _adjoint_by_weight(m, weight_h(space, n))

    def g_part(n: int) -> FreeVector:
        return _adjoint_by_weight(m, weight_g(space, n))

    strongly_bounded = h_part(sb_witness) == m
    avoids_zero_strongly = g_part(-az_witness) == m
    concentrated_at_infinity = all(h_part(n).is_zero for n in range(sb_witness + 1))
    concentrated_at_zero = all(g_part(-n).is_zero for n in range(az_witness + 1))

    part_zero = _adjoint_by_weight(m, weight_h(space, -az_witness))
    part_inf = g_part(sb_witness)
    band_n = max(sb_witness, az_witness)
    band = _adjoint_by_weight(m, weight_pi(space, band_n))

    norm_total, _ = kr_norm(m)
    n0, _ = kr_norm(part_zero)
    ns, _ = kr_norm(band)
    ni, _ = kr_norm(part_inf)
    additivity = (norm_total == n0 + ns + ni) if mode == "exact" else (
        abs(norm_total - (n0 + ns + ni)) <= 1e-9 * max(1.0, abs(norm_total)))

    parts = kalton_parts(m)
    knorms = {n: kr_norm(p)[0] for n, p in parts.items()}
    ktotal = z
    for v in knorms.values():
        ktotal += v
    recon = zero_vector(space)
    for p in parts.values():
        recon = vec_add(recon, p)
    reconstruction = recon == m if mode == "exact" else _close_vectors(recon, m)
    bound_holds = ktotal <= 45 * norm_total if mode == "exact" else (
        ktotal <= 45 * norm_total + 1e-9)
    ratio = (ktotal / norm_total) if norm_total != z else None

    return SeparationClassReport(
        strongly_bounded=strongly_bounded, strongly_bounded_witness=sb_witness,
        avoids_infinity=strongly_bounded,
        concentrated_at_infinity=concentrated_at_infinity,
        concentrated_at_zero=concentrated_at_zero,
        avoids_zero=avoids_zero_strongly, avoids_zero_strongly=avoids_zero_strongly,
        avoids_zero_witness=az_witness,
        part_at_zero=part_zero, band_part=band, part_at_infinity=part_inf,
        norm_total=norm_total, norm_parts=(n0, ns, ni),
        norm_additivity_holds=additivity,
        kalton_norms=knorms, kalton_total=ktotal,
        kalton_reconstruction_exact=reconstruction,
        kalton_bound_holds=bound_holds, kalton_measured_ratio=ratio)


def _close_vectors(a: FreeVector, b: FreeVector, tol: float = 1e-9) -> bool:
    keys = set(a.coeffs) | set(b.coeffs)
    return all(abs(a.coeffs.get(k, 0.0) - b.coeffs.get(k, 0.0)) <= tol for k in keys)
