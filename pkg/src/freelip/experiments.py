"""Finite-net generators and divergence experiments.

Each generator embeds its points in the rational line, so the triangle
inequality is automatic and exact arithmetic is cheap.  The experiments
show, at desk scale, how mass and norm decouple on refining nets: the
inward net carries bounded norm but linearly growing representing mass, and
the accumulating-pairs net carries bounded norm while the positive parts of
its elements grow linearly.  Nothing here claims anything about infinite
spaces; the tables demonstrate divergence rates only.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionViolation
from .functions import LipschitzFunction, lip0_function, mcshane_extend
from .order import check_majorant, is_positive, minimum_majorant
from .scalars import EXACT, Scalar, one, zero
from .solver import kr_norm
from .space import PointedMetricSpace, RadialReport, attach_base_point, radial_alpha, \
    uniform_separation, validate
from .vectors import FreeVector, canonicalize, norm1, pair

EXACT_NET_CAP = 14  # rational denominators grow like 4**N beyond this


def _line_space(labels, coords, mode: str) -> PointedMetricSpace:
    dist = [[abs(a - b) for b in coords] for a in coords]
    if mode != EXACT:
        dist = [[float(x) for x in row] for row in dist]
    return validate(labels, dist, 0, mode)


def _check_net_size(n: int, mode: str) -> None:
    if n < 1:
        raise PreconditionViolation("net size must be at least 1")
    if mode == EXACT and n > EXACT_NET_CAP:
        raise PreconditionViolation(
            f"exact-mode nets are capped at {EXACT_NET_CAP} steps")


@dataclass(frozen=True)
class AmbrosioInstance:
    """Inward geometric net with the all-ones vector on it.

    The vector is positive, so its norm is the pairing with the distance-to-
    base function and stays below 1/2, while the representing measure's mass
    equals the number of net points.  The cutoff family pairs with the
    vector to the step index, which lower-bounds the mass of any
    representing measure.
    """

    space: PointedMetricSpace
    vector: FreeVector
    cutoffs: tuple[LipschitzFunction, ...]


def gen_ambrosio(n: int, mode: str = EXACT) -> AmbrosioInstance:
    _check_net_size(n, mode)
    coords = [Fraction(0)] + [Fraction(1, 2 ** (k + 1)) for k in range(1, n + 1)]
    labels = ["0"] + [f"x{k}" for k in range(1, n + 1)]
    space = _line_space(labels, coords, mode)
    vector = canonicalize(space, [(f"x{k}", 1) for k in range(1, n + 1)])

    cutoffs = []
    z = zero(mode)
    o = one(mode)
    for k in range(1, n + 1):
        values = [z] + [o if j <= k else z for j in range(1, n + 1)]
        cutoffs.append(lip0_function(space, values))
    return AmbrosioInstance(space, vector, tuple(cutoffs))


@dataclass(frozen=True)
class WeaverInstance:
    """Accumulating pairs net around a cluster point away from the base.

    The vector is an alternating sum over the pairs, so its norm is at most
    the summed pair gaps (below 1/9), while its positive part pairs with the
    plateau function to exactly the number of pairs.
    """

    space: PointedMetricSpace
    vector: FreeVector
    plateau: LipschitzFunction
    test_functions: tuple[LipschitzFunction, ...]


def gen_weaver(n: int, mode: str = EXACT) -> WeaverInstance:
    _check_net_size(n, mode)
    pts: list[tuple[str, Fraction]] = [("0", Fraction(0)), ("c", Fraction(1))]
    for k in range(1, n + 1):
        xk = 1 + Fraction(1, 4 ** k)
        pts.append((f"x{k}", xk))
        pts.append((f"y{k}", xk + Fraction(1, 4 ** (k + 1))))
    labels = [p[0] for p in pts]
    coords = [p[1] for p in pts]
    space = _line_space(labels, coords, mode)
    vector = canonicalize(space, [(f"x{k}", 1) for k in range(1, n + 1)]
                          + [(f"y{k}", -1) for k in range(1, n + 1)])

    plateau = mcshane_extend(space, {"0": zero(mode), "c": one(mode)})

    z = zero(mode)
    o = one(mode)
    tests = []
    for t in range(1, n + 1):
        values = {lab: z for lab in labels}
        for k in range(1, t + 1):
            values[f"x{k}"] = o
        tests.append(lip0_function(space, tuple(values[lab] for lab in labels)))
    return WeaverInstance(space, vector, plateau, tuple(tests))


@dataclass(frozen=True)
class GalleryEntry:
    """Named space with hand-derived discreteness classification."""

    name: str
    space: PointedMetricSpace
    alpha: Scalar
    theta: Scalar
    alpha_witness: tuple[str, str] | None = None

    def radial(self) -> RadialReport:
        return radial_alpha(self.space)


def gen_gallery(mode: str = EXACT) -> tuple[GalleryEntry, ...]:
    """Fixed gallery spanning the discreteness regimes.

    Natural-number prefixes keep the separation constant at 1 while the
    radial constant decays like 1/K; inward geometric nets do the opposite;
    bounded uniformly discrete spaces bound the radial constant below by
    separation/diameter.
    """
    entries: list[GalleryEntry] = []

    def F(p, q=1):
        return Fraction(p, q)

    three = validate(["0", "a", "b"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]], 0)
    entries.append(GalleryEntry("three_point", three, F(1, 2), F(1), ("b", "a")))

    for k in (5, 8):
        labels = [str(i) for i in range(k + 1)]
        coords = [Fraction(i) for i in range(k + 1)]
        sp = _line_space(labels, coords, EXACT)
        entries.append(GalleryEntry(f"nat_prefix_{k}", sp, F(1, k), F(1),
                                    (str(k), str(k - 1))))

    for k in (5, 8):
        labels = ["0"] + [f"h{i}" for i in range(1, k + 1)]
        coords = [Fraction(0)] + [Fraction(1, 2 ** i) for i in range(1, k + 1)]
        sp = _line_space(labels, coords, EXACT)
        entries.append(GalleryEntry(f"inward_net_{k}", sp, F(1, 2), F(1, 2 ** k)))

    size = 6
    dist = [[0 if i == j else (1 if abs(i - j) == 1 else 2) for j in range(size)]
            for i in range(size)]
    bounded = validate([f"u{i}" for i in range(size)], dist, 0)
    entries.append(GalleryEntry("bounded_uniform", bounded, F(1, 2), F(1)))

    mzero = attach_base_point(["p", "q"], [[0, 2], [2, 0]], 1)
    entries.append(GalleryEntry("attached_base", mzero, F(1), F(1)))

    box = validate(["z", "p", "q", "r"],
                   [[0, 1, F(3, 2), 2],
                    [1, 0, F(5, 4), F(7, 4)],
                    [F(3, 2), F(5, 4), 0, 1],
                    [2, F(7, 4), 1, 0]], 0)
    entries.append(GalleryEntry("rational_box", box, F(1, 2), F(1), ("r", "q")))

    if mode != EXACT:
        entries = [GalleryEntry(e.name, e.space.to_float(), float(e.alpha),
                                float(e.theta), e.alpha_witness) for e in entries]
    return tuple(entries)


@dataclass(frozen=True)
class RadialBoundReport:
    """Majorant construction from a positive molecule family.

    m is the weighted sum of molecules; m_prime moves each molecule's mass
    to its first endpoint.  On a space with radial constant alpha this
    majorant has norm at most the coefficient sum divided by alpha.
    """

    m: FreeVector
    m_prime: FreeVector
    alpha: Scalar
    coefficient_sum: Scalar
    norm_m_prime: Scalar
    m_prime_positive: bool
    majorant_holds: bool
    bound_holds: bool


def thm6_majorant_bound(space: PointedMetricSpace, molecules, coefficients
                        ) -> RadialBoundReport:
    if len(molecules) != len(coefficients):
        raise PreconditionViolation("one coefficient per molecule required")
    z = zero(space.mode)
    items_m = []
    items_p = []
    total = z
    for (x, y), a in zip(molecules, coefficients):
        xi, yi = space.index(x), space.index(y)
        if xi == yi:
            raise PreconditionViolation("molecule endpoints must be distinct")
        if a < z:
            raise PreconditionViolation("coefficients must be nonnegative")
        w = a / space.d(xi, yi)
        items_m.extend([(xi, w), (yi, -w)])
        items_p.append((xi, w))
        total += a
    m = canonicalize(space, items_m)
    m_prime = canonicalize(space, items_p)

    alpha = radial_alpha(space).alpha
    norm_p, _ = kr_norm(m_prime)
    positive = is_positive(m_prime, "lp")
    majorant = check_majorant(m, m_prime).is_majorant
    bound = total / alpha
    if space.mode == EXACT:
        bound_holds = norm_p <= bound
    else:
        bound_holds = norm_p <= bound + 1e-9 * max(1.0, abs(bound))
    return RadialBoundReport(m, m_prime, alpha, total, norm_p, positive,
                             majorant, bound_holds)


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    norm: Scalar
    diagnostic: Scalar
    wall_time_s: float
    mode: str


def run_ambrosio(max_n: int, mode: str = EXACT) -> list[ExperimentRow]:
    """Rows (N, norm, representing mass, wall time, mode) for N = 1..max_n."""
    rows = []
    for n in range(1, max_n + 1):
        t0 = time.perf_counter()
        inst = gen_ambrosio(n, mode)
        value, _ = kr_norm(inst.vector)
        mass = norm1(inst.vector)
        rows.append(ExperimentRow(n, value, mass, time.perf_counter() - t0, mode))
    return rows


def run_weaver(max_n: int, mode: str = EXACT) -> list[ExperimentRow]:
    """Rows (N, norm, pairing of the positive part with the plateau, wall
    time, mode) for N = 1..max_n."""
    rows = []
    for n in range(1, max_n + 1):
        t0 = time.perf_counter()
        inst = gen_weaver(n, mode)
        value, _ = kr_norm(inst.vector)
        plus = minimum_majorant(inst.vector).m_plus
        diag = pair(plus, inst.plateau)
        rows.append(ExperimentRow(n, value, diag, time.perf_counter() - t0, mode))
    return rows
