"""Order structure of the free space over a finite pointed metric space.

Positivity is decidable by two independent routes: nonnegativity of the
canonical coefficients, or minimizing the pairing over nonnegative
base-vanishing 1-Lipschitz functions and testing the minimum against zero.
The coefficient split gives the minimum majorant (the Jordan positive part
of the representing measure) and the variation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import SpaceMismatch
from .functions import LipschitzFunction
from .scalars import EXACT, Scalar, zero
from .simplex import simplex_max
from .solver import positivity_minimum
from .vectors import FreeVector, subtract, support

_FLOAT_TOL = 1e-9

POSITIVITY_ROUTES = ("coefficients", "lp")


def is_positive(m: FreeVector, route: str = "coefficients") -> bool:
    """Positivity of the functional, by the requested route."""
    if route == "coefficients":
        return all(c > 0 for c in m.coeffs.values())
    if route == "lp":
        value, _ = positivity_minimum(m)
        if m.space.mode == EXACT:
            return value == 0
        return value >= -_FLOAT_TOL * max(1.0, sum(abs(c) for c in m.coeffs.values()))
    raise ValueError(f"unknown positivity route {route!r}")


@dataclass(frozen=True)
class MajorantPair:
    """Jordan split m = m_plus - m_minus with disjoint supports."""

    m_plus: FreeVector
    m_minus: FreeVector


def minimum_majorant(m: FreeVector) -> MajorantPair:
    """Least positive vector dominating m, with the complementary part.

    Every positive vector dominating m also dominates m_plus, because
    positivity is coefficientwise nonnegativity on finite spaces.
    """
    z = zero(m.space.mode)
    plus = {i: c for i, c in m.coeffs.items() if c > z}
    minus = {i: -c for i, c in m.coeffs.items() if c < z}
    return MajorantPair(FreeVector(m.space, plus), FreeVector(m.space, minus))


def variation(m: FreeVector) -> FreeVector:
    """The functional analogue of total variation: coefficientwise modulus."""
    return FreeVector(m.space, {i: abs(c) for i, c in m.coeffs.items()})


@dataclass(frozen=True)
class SupportIdentityReport:
    supp_m: tuple[str, ...]
    supp_plus: tuple[str, ...]
    supp_minus: tuple[str, ...]
    supp_variation: tuple[str, ...]
    holds: bool


def support_identities(m: FreeVector) -> SupportIdentityReport:
    """supp|m| = supp(m+) union supp(m-) = supp(m), reported with the sets."""
    pairm = minimum_majorant(m)
    s_m = support(m)
    s_p = support(pairm.m_plus)
    s_n = support(pairm.m_minus)
    s_v = support(variation(m))
    union = tuple(sorted(set(s_p) | set(s_n), key=m.space.label_index.__getitem__))
    return SupportIdentityReport(s_m, s_p, s_n, s_v,
                                 holds=(s_v == union == s_m))


@dataclass(frozen=True)
class MajorantCheck:
    is_majorant: bool
    psi_positive: bool
    difference_positive: bool
    certificate: LipschitzFunction | None


def check_majorant(m: FreeVector, psi: FreeVector) -> MajorantCheck:
    """Decide psi >= m with psi positive, via the LP route.

    When the check fails, the certificate is a nonnegative base-vanishing
    function whose pairing violates the failed inequality.
    """
    if m.space != psi.space:
        raise SpaceMismatch("vectors live on different spaces")
    psi_ok = is_positive(psi, "lp")
    certificate = None
    if not psi_ok:
        _, certificate = positivity_minimum(psi)
    diff = subtract(psi, m)
    diff_ok = is_positive(diff, "lp")
    if psi_ok and not diff_ok:
        _, certificate = positivity_minimum(diff)
    return MajorantCheck(is_majorant=psi_ok and diff_ok, psi_positive=psi_ok,
                         difference_positive=diff_ok, certificate=certificate)


def modulus_dominates(m: FreeVector, psi: FreeVector) -> tuple[bool, LipschitzFunction | None]:
    """Whether |<f, m>| <= <|f|, psi> holds for every base-vanishing f.

    Searched as an exact LP: write f = p - q and g = p + q with p, q >= 0,
    so -g <= f <= g and any violating f yields (p, q) pinning g = |f|.
    Maximizing <f, m> - <g, psi> over 1-Lipschitz f, g decides the property;
    the optimum is zero exactly when psi dominates the modulus.  A positive
    optimum returns the violating f.  Exact mode only, intended for small
    instances.
    """
    space = m.space
    if space != psi.space:
        raise SpaceMismatch("vectors live on different spaces")
    if space.mode != EXACT:
        raise ValueError("the modulus-domination search is exact-mode only")
    if not all(c > 0 for c in psi.coeffs.values()):
        return False, None

    nb = space.non_base
    k = len(nb)
    var_p = {i: t for t, i in enumerate(nb)}
    var_q = {i: k + t for t, i in enumerate(nb)}
    base = space.base
    d = space.dist

    rows: list[tuple[dict[int, Fraction], Fraction]] = []
    for i in nb:
        for j in nb:
            if i == j:
                continue
            # f = p - q is 1-Lipschitz
            rows.append(({var_p[i]: Fraction(1), var_q[i]: Fraction(-1),
                          var_p[j]: Fraction(-1), var_q[j]: Fraction(1)}, d[i][j]))
            # g = p + q is 1-Lipschitz
            rows.append(({var_p[i]: Fraction(1), var_q[i]: Fraction(1),
                          var_p[j]: Fraction(-1), var_q[j]: Fraction(-1)}, d[i][j]))
    for i in nb:
        rows.append(({var_p[i]: Fraction(1), var_q[i]: Fraction(-1)}, d[i][base]))
        rows.append(({var_p[i]: Fraction(-1), var_q[i]: Fraction(1)}, d[i][base]))
        rows.append(({var_p[i]: Fraction(1), var_q[i]: Fraction(1)}, d[i][base]))

    a = {i: Fraction(c) for i, c in m.coeffs.items()}
    w = {i: Fraction(c) for i, c in psi.coeffs.items()}
    objective = [Fraction(0)] * (2 * k)
    for i in nb:
        ai = a.get(i, Fraction(0))
        wi = w.get(i, Fraction(0))
        objective[var_p[i]] = ai - wi
        objective[var_q[i]] = -ai - wi

    value, solution = simplex_max(objective, rows, 2 * k)
    if value == 0:
        return True, None
    f_values = [Fraction(0)] * space.n
    for i in nb:
        f_values[i] = solution[var_p[i]] - solution[var_q[i]]
    return False, LipschitzFunction(space, tuple(f_values), "lip0")
