"""Invariant suite shared by the CLI ``verify`` command and the acceptance
tests.

Every check is registered with a stable identifier, the module it guards and
a one-line statement of the property, so the manifest documents exactly what
ran.  Checks draw their randomness from per-check streams derived from the
suite seed, which makes reports reproducible byte for byte.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import order, weighting
from .errors import NumericalInstability
from .functions import (
    abs_fn,
    add as fn_add,
    join,
    lip0_function,
    lip_function,
    mcshane_extend,
    meet,
    multiply,
    neg_part,
    pos_part,
    rho,
    weight_g,
    weight_h,
    weight_lambda,
    weight_pi,
    weight_product,
)
from .scalars import EXACT, dyadic_floor, pow2, zero
from .serialize import space_from_obj, space_to_obj
from .solver import kr_norm, oracle_norm, dual_optimal_function
from .space import attach_base_point, radial_alpha, radius, uniform_separation, validate
from .experiments import gen_ambrosio, gen_gallery, gen_weaver, run_ambrosio, run_weaver, \
    thm6_majorant_bound
from .vectors import (
    FreeVector,
    add as vec_add,
    canonicalize,
    delta,
    molecule_decompose,
    negate,
    norm1,
    pair,
    scale as vec_scale,
    subtract,
    support,
    support_indices,
)
from .sampling import (
    DEFAULT_SEED,
    random_lip0,
    random_majorant,
    random_molecule_family,
    random_positive_vector,
    random_space,
    random_vector,
    random_weight,
)


@dataclass(frozen=True)
class Profile:
    name: str
    corpus_spaces: int
    vectors_per_space: int
    positive_norm_trials: int
    positive_additivity_pairs: int
    random_weights: int
    kalton_vectors: int
    positivity_per_space: int
    jordan_trials: int
    radial_families_per_space: int
    norming_trials: int
    net_cap: int
    pairing_functions: int
    generic_trials: int
    modulus_instances: int


FULL = Profile("all", corpus_spaces=200, vectors_per_space=5,
               positive_norm_trials=200, positive_additivity_pairs=100,
               random_weights=100, kalton_vectors=200, positivity_per_space=500,
               jordan_trials=100, radial_families_per_space=100,
               norming_trials=100, net_cap=14, pairing_functions=1000,
               generic_trials=100, modulus_instances=25)

QUICK = Profile("quick", corpus_spaces=20, vectors_per_space=3,
                positive_norm_trials=25, positive_additivity_pairs=15,
                random_weights=15, kalton_vectors=30, positivity_per_space=40,
                jordan_trials=20, radial_families_per_space=5,
                norming_trials=20, net_cap=7, pairing_functions=100,
                generic_trials=20, modulus_instances=8)

PROFILES = {p.name: p for p in (FULL, QUICK)}


@dataclass(frozen=True)
class Check:
    check_id: str
    module: str
    statement: str
    fn: object


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    module: str
    statement: str
    passed: bool
    detail: str
    elapsed: float


CHECKS: list[Check] = []


def _register(check_id: str, module: str, statement: str):
    def deco(fn):
        CHECKS.append(Check(check_id, module, statement, fn))
        return fn
    return deco


class Context:
    """Per-run state: profile, seed, and memoized shared corpora."""

    def __init__(self, profile: Profile, seed: int = DEFAULT_SEED):
        self.profile = profile
        self.seed = seed
        self._corpus = None
        self._gallery = None

    def rng(self, tag: str) -> random.Random:
        return random.Random(f"{self.seed}:{tag}")

    @property
    def gallery(self):
        if self._gallery is None:
            self._gallery = gen_gallery()
        return self._gallery

    @property
    def corpus(self):
        """Random spaces of 3 to 8 points with several vectors each."""
        if self._corpus is None:
            rng = self.rng("corpus")
            out = []
            for _ in range(self.profile.corpus_spaces):
                space = random_space(rng, rng.randrange(3, 9))
                vectors = [random_vector(rng, space)
                           for _ in range(self.profile.vectors_per_space)]
                out.append((space, vectors))
            self._corpus = out
        return self._corpus


# ----------------------------------------------------------------- metric


@_register("metric.roundtrip", "metric_core",
           "serializing and re-validating a space is the identity")
def _metric_roundtrip(ctx: Context):
    rng = ctx.rng("metric.roundtrip")
    spaces = [e.space for e in ctx.gallery]
    spaces += [random_space(rng) for _ in range(ctx.profile.generic_trials // 4)]
    for s in spaces:
        back = space_from_obj(space_to_obj(s), s.mode)
        if back != s:
            return False, f"round trip changed the space with labels {s.labels}"
    return True, f"{len(spaces)} spaces round-tripped"


@_register("metric.radial-inequality", "metric_core",
           "alpha * d(x, base) <= d(x, y) for every pair of distinct points")
def _metric_radial(ctx: Context):
    for entry in ctx.gallery:
        s = entry.space
        alpha = radial_alpha(s).alpha
        for x in s.non_base:
            for y in range(s.n):
                if y != x and alpha * s.rho(x) > s.d(x, y):
                    return False, f"violated at {s.labels[x]}, {s.labels[y]} in {entry.name}"
    return True, f"quantified over {len(ctx.gallery)} gallery spaces"


@_register("metric.attach-base-validates", "metric_core",
           "attaching a base point yields a space passing full validation")
def _metric_attach(ctx: Context):
    rng = ctx.rng("metric.attach")
    count = 0
    for _ in range(ctx.profile.generic_trials // 4):
        n = rng.randrange(1, 6)
        dist = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                dist[i][j] = dist[j][i] = 1 + Fraction(rng.randrange(0, 25), 24)
        r = 1 + Fraction(rng.randrange(0, 9), 8)
        attach_base_point([f"q{i}" for i in range(n)], dist, r)
        count += 1
    return True, f"{count} attachments validated"


@_register("metric.attached-lip-norm", "metric_core",
           "after attaching a unit-distance base, the Lipschitz norm of the "
           "extension is max of the original constant and the sup norm")
def _metric_attach_norm(ctx: Context):
    rng = ctx.rng("metric.attach-norm")
    for _ in range(ctx.profile.generic_trials // 4):
        n = rng.randrange(2, 6)
        dist = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                dist[i][j] = dist[j][i] = 1 + Fraction(rng.randrange(0, 25), 24)
        labels = [f"q{i}" for i in range(n)]
        original = validate(labels, dist, 0)
        attached = attach_base_point(labels, dist, 1)
        values = [Fraction(rng.randrange(-12, 13), rng.randrange(1, 5))
                  for _ in range(n)]
        f = lip_function(original, values)
        g = lip0_function(attached, [Fraction(0)] + values)
        if g.lip_const != max(f.lip_const, f.sup_norm):
            return False, f"norm identity failed on {labels}"
    return True, "extension norm identity held on all random instances"


# --------------------------------------------------------------- functions


@_register("functions.lattice-lip-bound", "lip_fn",
           "join and meet do not increase the larger Lipschitz constant")
def _fn_lattice(ctx: Context):
    rng = ctx.rng("fn.lattice")
    for _ in range(ctx.profile.generic_trials):
        s = random_space(rng)
        f, g = random_lip0(rng, s), random_lip0(rng, s)
        cap = max(f.lip_const, g.lip_const)
        if join(f, g).lip_const > cap or meet(f, g).lip_const > cap:
            return False, "lattice operation increased the Lipschitz constant"
        if fn_add(pos_part(f), neg_part(f)).values != abs_fn(f).values:
            return False, "positive plus negative part is not the modulus"
        if meet(pos_part(f), neg_part(f)).values != tuple(
                zero(s.mode) for _ in range(s.n)):
            return False, "positive and negative parts are not disjoint"
    return True, f"{ctx.profile.generic_trials} random pairs checked"


@_register("functions.mcshane-postconditions", "lip_fn",
           "extension agrees on the subset and preserves the Lipschitz "
           "constant, supremum and infimum exactly")
def _fn_mcshane(ctx: Context):
    rng = ctx.rng("fn.mcshane")
    for _ in range(ctx.profile.generic_trials):
        s = random_space(rng)
        subset = [s.base] + [i for i in s.non_base if rng.random() < 0.6]
        partial = {s.base: Fraction(0)}
        for i in subset[1:]:
            partial[i] = Fraction(rng.randrange(-24, 25), rng.randrange(1, 7))
        f = mcshane_extend(s, partial)
        on_sub = lip0_function(s, [partial.get(i, f.values[i]) for i in range(s.n)])
        lip_on_subset = zero(s.mode)
        pts = sorted(partial)
        for a in range(len(pts)):
            for b in range(a + 1, len(pts)):
                num = abs(partial[pts[a]] - partial[pts[b]])
                if num:
                    r = num / s.d(pts[a], pts[b])
                    lip_on_subset = max(lip_on_subset, r)
        if any(f.values[i] != partial[i] for i in partial):
            return False, "extension changed subset values"
        if f.lip_const != lip_on_subset:
            return False, "extension changed the Lipschitz constant"
        if max(f.values) != max(partial.values()) or min(f.values) != min(partial.values()):
            return False, "extension changed sup or inf"
        del on_sub
    return True, f"{ctx.profile.generic_trials} random extensions exact"


@_register("functions.weight-family", "lip_fn",
           "dyadic cutoffs take values in [0,1], obey their slope and "
           "support bounds, and the band weight is the annulus sum")
def _fn_weights(ctx: Context):
    for entry in ctx.gallery:
        s = entry.space
        lo = dyadic_floor(min(s.rho(i) for i in s.non_base), s.mode) - 2
        hi = dyadic_floor(max(s.rho(i) for i in s.non_base), s.mode) + 2
        for n in range(lo, hi + 1):
            h = weight_h(s, n)
            g = weight_g(s, n)
            if any(v < 0 or v > 1 for v in h.values):
                return False, f"cutoff out of range in {entry.name}"
            if h.lip_const > pow2(-n, s.mode):
                return False, f"cutoff slope too large in {entry.name}"
            if h.support and h.rad_support > pow2(n + 1, s.mode):
                return False, f"cutoff support too wide in {entry.name}"
            if any(a + b != 1 for a, b in zip(h.values, g.values)):
                return False, f"complement identity failed in {entry.name}"
        for n in range(0, max(abs(lo), abs(hi)) + 1):
            pi_n = weight_pi(s, n)
            acc = [zero(s.mode)] * s.n
            for k in range(-n, n + 1):
                lam = weight_lambda(s, k)
                acc = [a + v for a, v in zip(acc, lam.values)]
            if tuple(acc) != pi_n.values:
                return False, f"band weight is not the annulus sum in {entry.name}"
    return True, "weight family identities held on every gallery space"


@_register("functions.weight-semigroup", "lip_fn",
           "products of cutoffs at distinct indices collapse to the extreme one")
def _fn_semigroup(ctx: Context):
    # For equal indices the identity would force H_n**2 = H_n, which fails
    # wherever the cutoff takes a fractional ramp value.
    for entry in ctx.gallery[:3]:
        s = entry.space
        for a in range(-3, 4):
            for b in range(-3, 4):
                if a == b:
                    continue
                if weight_product(weight_h(s, a), weight_h(s, b)).values != \
                        weight_h(s, min(a, b)).values:
                    return False, f"inner cutoff product failed in {entry.name}"
                if weight_product(weight_g(s, a), weight_g(s, b)).values != \
                        weight_g(s, max(a, b)).values:
                    return False, f"outer cutoff product failed in {entry.name}"
        for a in range(0, 4):
            for b in range(0, 4):
                if a == b:
                    continue
                if weight_product(weight_pi(s, a), weight_pi(s, b)).values != \
                        weight_pi(s, min(a, b)).values:
                    return False, f"band product failed in {entry.name}"
    return True, "semigroup identities held pointwise at distinct indices"


@_register("functions.rho-dominates", "lip_fn",
           "the distance-to-base function dominates the unit ball pointwise")
def _fn_rho(ctx: Context):
    rng = ctx.rng("fn.rho")
    for _ in range(ctx.profile.generic_trials):
        s = random_space(rng)
        f = random_lip0(rng, s, normalized=True)
        r = rho(s)
        if any(fv > rv for fv, rv in zip(f.values, r.values)):
            return False, "a unit-ball function exceeded the distance to base"
    return True, f"{ctx.profile.generic_trials} normalized functions dominated"


# ----------------------------------------------------------------- vectors


@_register("vectors.pairing-consistency", "free_vec",
           "raw inputs with one canonical form pair identically")
def _vec_consistency(ctx: Context):
    rng = ctx.rng("vec.consistency")
    s = random_space(rng, 6)
    m = random_vector(rng, s, nonzero=True)
    raw1 = [(i, c) for i, c in m.coeffs.items()]
    raw2 = []
    for i, c in m.coeffs.items():
        split = Fraction(rng.randrange(1, 5), 7)
        raw2.extend([(i, c - split), (i, split)])
    raw2.append((s.base, Fraction(5)))
    rng.shuffle(raw2)
    m1, m2 = canonicalize(s, raw1), canonicalize(s, raw2)
    if m1 != m2:
        return False, "canonical forms differ"
    for _ in range(ctx.profile.pairing_functions):
        f = random_lip0(rng, s)
        if pair(m1, f) != pair(m2, f):
            return False, "equal canonical forms paired differently"
    return True, f"{ctx.profile.pairing_functions} pairings agreed"


@_register("vectors.separation", "free_vec",
           "distinct canonical forms are separated by a bump function")
def _vec_separation(ctx: Context):
    from .functions import bump

    rng = ctx.rng("vec.separation")
    for _ in range(ctx.profile.generic_trials):
        s = random_space(rng)
        m1 = random_vector(rng, s)
        m2 = random_vector(rng, s)
        if m1 == m2:
            continue
        diff = subtract(m1, m2)
        x = support_indices(diff)[0]
        f = bump(s, x)
        if pair(m1, f) == pair(m2, f):
            return False, "bump failed to separate distinct vectors"
    return True, "bumps separated all distinct pairs"


@_register("vectors.support-characterization", "free_vec",
           "pairings depend only on values on the support, and every "
           "support point is detected by a bump")
def _vec_support(ctx: Context):
    from .functions import bump

    rng = ctx.rng("vec.support")
    for _ in range(ctx.profile.generic_trials):
        s = random_space(rng)
        m = random_vector(rng, s, nonzero=True)
        supp = set(support_indices(m))
        f = random_lip0(rng, s)
        g_values = list(random_lip0(rng, s).values)
        for i in supp:
            g_values[i] = f.values[i]
        g = lip0_function(s, g_values)
        if pair(m, f) != pair(m, g):
            return False, "pairing depended on values off the support"
        for x in supp:
            if pair(m, bump(s, x)) == 0:
                return False, "a support point went undetected"
    return True, "support characterizations held"


@_register("vectors.molecule-reassembly", "free_vec",
           "the greedy molecule decomposition reassembles exactly")
def _vec_molecules(ctx: Context):
    rng = ctx.rng("vec.molecules")
    for _ in range(ctx.profile.generic_trials):
        s = random_space(rng)
        m = random_vector(rng, s)
        if molecule_decompose(m).reassemble(s) != m:
            return False, "reassembly changed the vector"
    return True, f"{ctx.profile.generic_trials} reassemblies exact"


@_register("vectors.pairing-norm-bound", "free_vec",
           "pairings are bounded by the free norm times the Lipschitz constant")
def _vec_norm_bound(ctx: Context):
    rng = ctx.rng("vec.norm-bound")
    for _ in range(ctx.profile.generic_trials // 2):
        s = random_space(rng)
        m = random_vector(rng, s)
        value, _ = kr_norm(m)
        f = random_lip0(rng, s)
        if abs(pair(m, f)) > value * f.lip_const:
            return False, "pairing exceeded norm times Lipschitz constant"
    return True, "pairing bound held"


# ------------------------------------------------------------------ solver


@_register("solver.zero-gap", "kr_solver",
           "exact solves certify a zero duality gap with complementary slackness")
def _solver_gap(ctx: Context):
    checked = 0
    for space, vectors in ctx.corpus[: max(10, len(ctx.corpus) // 5)]:
        for m in vectors:
            value, plan = kr_norm(m)
            if plan.gap != 0:
                return False, "nonzero gap in exact mode"
            f = plan.potentials
            if pair(m, f) != value or f.lip_const > 1:
                return False, "dual potentials fail to norm the vector"
            for (a, b), fl in plan.flow.items():
                if f.values[a] - f.values[b] != space.d(a, b):
                    return False, "complementary slackness violated"
            checked += 1
    return True, f"{checked} instances certified"


@_register("solver.norm-axioms", "kr_solver",
           "the computed norm is definite, homogeneous and subadditive")
def _solver_axioms(ctx: Context):
    rng = ctx.rng("solver.axioms")
    for _ in range(ctx.profile.generic_trials // 2):
        s = random_space(rng)
        m1, m2 = random_vector(rng, s), random_vector(rng, s)
        n1, _ = kr_norm(m1)
        n2, _ = kr_norm(m2)
        if (n1 < 0) or (n1 == 0) != m1.is_zero:
            return False, "definiteness failed"
        c = Fraction(rng.randrange(-12, 13), rng.randrange(1, 5))
        if kr_norm(vec_scale(m1, c))[0] != abs(c) * n1:
            return False, "homogeneity failed"
        if kr_norm(vec_add(m1, m2))[0] > n1 + n2:
            return False, "triangle inequality failed"
    return True, "norm axioms held on random triples"


@_register("solver.norm-upper-bound", "kr_solver",
           "the norm is at most the mass times the support radius")
def _solver_bound(ctx: Context):
    rng = ctx.rng("solver.bound")
    for _ in range(ctx.profile.generic_trials // 2):
        s = random_space(rng)
        m = random_vector(rng, s, nonzero=True)
        value, _ = kr_norm(m)
        if value > norm1(m) * radius(s, support(m)):
            return False, "mass-radius bound failed"
    return True, "mass-radius bound held"


# --------------------------------------------------------------- weighting


@_register("weighting.adjointness", "weighting",
           "the adjoint pairing identity holds exactly for random data")
def _w_adjoint(ctx: Context):
    rng = ctx.rng("w.adjoint")
    for _ in range(ctx.profile.generic_trials):
        s = random_space(rng)
        m, f, h = random_vector(rng, s), random_lip0(rng, s), random_weight(rng, s)
        op = weighting.WeightOperator(h)
        lhs = pair(weighting.adjoint_apply(op, m), f)
        rhs = pair(m, weighting.apply_to_function(op, f))
        if lhs != rhs:
            return False, "adjoint identity failed"
        image = weighting.adjoint_apply(op, m)
        if not set(support_indices(image)) <= (set(support_indices(m)) & set(h.support)):
            return False, "adjoint enlarged the support"
    return True, f"{ctx.profile.generic_trials} random triples exact"


@_register("weighting.adjoint-semigroup", "weighting",
           "composing cutoff adjoints at distinct indices collapses to the "
           "extreme one")
def _w_semigroup(ctx: Context):
    rng = ctx.rng("w.semigroup")
    for _ in range(ctx.profile.generic_trials // 2):
        s = random_space(rng)
        m = random_vector(rng, s)
        a = rng.randrange(-3, 4)
        b = rng.randrange(-3, 4)
        if a == b:
            b += 1
        ha, hb = weighting.WeightOperator(weight_h(s, a)), weighting.WeightOperator(weight_h(s, b))
        hmin = weighting.WeightOperator(weight_h(s, min(a, b)))
        if weighting.adjoint_apply(hb, weighting.adjoint_apply(ha, m)) != \
                weighting.adjoint_apply(hmin, m):
            return False, "cutoff adjoints did not collapse"
    return True, "adjoint semigroup identities held at distinct indices"


@_register("weighting.class-report", "weighting",
           "separation classes on a finite space collapse as expected and "
           "the three-part decomposition is exact with additive norms")
def _w_classes(ctx: Context):
    rng = ctx.rng("w.classes")
    for _ in range(ctx.profile.generic_trials // 3):
        entry = rng.choice(ctx.gallery)
        m = random_vector(rng, entry.space)
        rep = weighting.class_report(m)
        if not (rep.strongly_bounded and rep.avoids_infinity
                and rep.avoids_zero_strongly and rep.avoids_zero):
            return False, f"finite-space classes failed on {entry.name}"
        if rep.concentrated_at_infinity != m.is_zero or \
                rep.concentrated_at_zero != m.is_zero:
            return False, f"concentration must characterize zero on {entry.name}"
        if not (rep.part_at_zero.is_zero and rep.part_at_infinity.is_zero
                and rep.band_part == m):
            return False, f"decomposition not (0, m, 0) on {entry.name}"
        if not rep.norm_additivity_holds or not rep.kalton_reconstruction_exact:
            return False, f"norm additivity or reconstruction failed on {entry.name}"
    return True, "class reports matched the finite-space collapse"


# ------------------------------------------------------------------- order


@_register("order.modulus-inequality", "order",
           "the variation dominates pairings against the modulus")
def _o_modulus(ctx: Context):
    rng = ctx.rng("o.modulus")
    for _ in range(ctx.profile.generic_trials):
        s = random_space(rng)
        m = random_vector(rng, s)
        var = order.variation(m)
        f = random_lip0(rng, s)
        if abs(pair(m, f)) > pair(var, abs_fn(f)):
            return False, "modulus inequality failed"
    return True, f"{ctx.profile.generic_trials} random pairs held"


@_register("order.variation-minimality", "order",
           "no smaller positive vector dominates pairings against the modulus")
def _o_var_min(ctx: Context):
    rng = ctx.rng("o.var-min")
    for _ in range(ctx.profile.modulus_instances):
        s = random_space(rng, rng.randrange(3, 6))
        m = random_vector(rng, s, nonzero=True)
        var = order.variation(m)
        ok, _ = order.modulus_dominates(m, var)
        if not ok:
            return False, "the variation itself failed to dominate"
        i = sorted(var.coeffs)[0]
        shrunk = dict(var.coeffs)
        shrunk[i] = shrunk[i] * Fraction(9, 10)
        ok2, witness = order.modulus_dominates(m, FreeVector(s, shrunk))
        if ok2 or witness is None:
            return False, "a strictly smaller candidate was not refuted"
        if abs(pair(m, witness)) <= pair(FreeVector(s, shrunk), abs_fn(witness)):
            return False, "the refutation witness does not violate"
    return True, f"{ctx.profile.modulus_instances} minimality refutations found"


@_register("order.majorant-norm-additivity", "order",
           "the Jordan parts' norms add up to the variation's norm")
def _o_additivity(ctx: Context):
    rng = ctx.rng("o.additivity")
    for _ in range(ctx.profile.generic_trials // 2):
        s = random_space(rng)
        m = random_vector(rng, s)
        parts = order.minimum_majorant(m)
        lhs = kr_norm(parts.m_plus)[0] + kr_norm(parts.m_minus)[0]
        if lhs != kr_norm(order.variation(m))[0]:
            return False, "norm additivity failed"
    return True, "norm additivity held"


@_register("order.majorant-certificates", "order",
           "rejected majorants come with a nonnegative violating function")
def _o_certificates(ctx: Context):
    rng = ctx.rng("o.certificates")
    found = 0
    for _ in range(ctx.profile.generic_trials):
        s = random_space(rng)
        m = random_vector(rng, s, nonzero=True)
        psi = random_vector(rng, s)
        res = order.check_majorant(m, psi)
        if res.is_majorant:
            continue
        cert = res.certificate
        if cert is None or any(v < 0 for v in cert.values):
            return False, "missing or negative certificate"
        if not res.psi_positive:
            if pair(psi, cert) >= 0:
                return False, "certificate does not violate positivity"
        elif pair(m, cert) <= pair(psi, cert):
            return False, "certificate does not violate domination"
        found += 1
    return True, f"{found} rejections certified"


# ------------------------------------------------------------- experiments


@_register("experiments.gallery-classification", "experiments",
           "gallery spaces match their hand-derived radial and separation constants")
def _e_gallery(ctx: Context):
    for entry in ctx.gallery:
        rep = radial_alpha(entry.space)
        if rep.alpha != entry.alpha or uniform_separation(entry.space) != entry.theta:
            return False, f"classification mismatch on {entry.name}"
        if entry.alpha_witness is not None and rep.witness != entry.alpha_witness:
            return False, f"witness mismatch on {entry.name}"
    return True, f"{len(ctx.gallery)} gallery spaces classified"


# -------------------------------------------------------------- acceptance


@_register("acceptance.duality-gap", "kr_solver",
           "network simplex equals the dense dual-polytope oracle exactly "
           "on the random corpus")
def _a_duality(ctx: Context):
    instances = 0
    for space, vectors in ctx.corpus:
        for m in vectors:
            value, _ = kr_norm(m)
            if value != oracle_norm(m):
                return False, f"solver disagreed with the oracle on {space.labels}"
            instances += 1
    return True, f"{instances} instances matched exactly"


@_register("acceptance.molecule-isometry", "kr_solver",
           "the norm of a normalized two-point difference equals the distance")
def _a_molecule(ctx: Context):
    pairs = 0
    for entry in ctx.gallery:
        s = entry.space
        for x in range(s.n):
            for y in range(x + 1, s.n):
                m = canonicalize(s, [(x, 1), (y, -1)])
                if kr_norm(m)[0] != s.d(x, y):
                    return False, f"molecule norm failed in {entry.name}"
                pairs += 1
    return True, f"{pairs} pairs exact across the gallery"


@_register("acceptance.positive-norm-identity", "kr_solver",
           "positive vectors have norm equal to the pairing with the "
           "distance-to-base function, and norms add on positive pairs")
def _a_positive(ctx: Context):
    rng = ctx.rng("a.positive")
    for _ in range(ctx.profile.positive_norm_trials):
        s = random_space(rng)
        m = random_positive_vector(rng, s)
        if kr_norm(m)[0] != pair(m, rho(s)):
            return False, "positive norm identity failed"
    for _ in range(ctx.profile.positive_additivity_pairs):
        s = random_space(rng)
        m1 = random_positive_vector(rng, s)
        m2 = random_positive_vector(rng, s)
        if kr_norm(vec_add(m1, m2))[0] != kr_norm(m1)[0] + kr_norm(m2)[0]:
            return False, "positive additivity failed"
    return True, (f"{ctx.profile.positive_norm_trials} identities and "
                  f"{ctx.profile.positive_additivity_pairs} additive pairs exact")


@_register("acceptance.weighting-constants", "weighting",
           "exact operator norms respect the family constants 3, 4, 5, 12 "
           "and the sup-plus-radius-times-slope bound")
def _a_weighting(ctx: Context):
    for entry in ctx.gallery:
        s = entry.space
        lo = dyadic_floor(min(s.rho(i) for i in s.non_base), s.mode) - 1
        hi = dyadic_floor(max(s.rho(i) for i in s.non_base), s.mode) + 1
        for n in range(lo, hi + 1):
            for build, cap in ((weight_h, 3), (weight_g, 4), (weight_lambda, 5)):
                op = weighting.WeightOperator(build(s, n))
                value = weighting.operator_norm(op)
                if value > cap or value > op.norm_bound:
                    return False, f"constant exceeded for index {n} in {entry.name}"
        for n in range(0, max(abs(lo), abs(hi)) + 1):
            op = weighting.WeightOperator(weight_pi(s, n))
            value = weighting.operator_norm(op)
            if value > 12 or value > op.norm_bound:
                return False, f"band constant exceeded for index {n} in {entry.name}"
    rng = ctx.rng("a.weighting")
    for _ in range(ctx.profile.random_weights):
        s = random_space(rng, rng.randrange(3, 7))
        op = weighting.WeightOperator(random_weight(rng, s))
        if weighting.operator_norm(op) > op.norm_bound:
            return False, "general operator bound failed on a random weight"
    return True, (f"constants held on {len(ctx.gallery)} spaces and the bound "
                  f"on {ctx.profile.random_weights} random weights")


@_register("acceptance.kalton-suite", "weighting",
           "annulus parts reconstruct the vector exactly and their norms "
           "sum to at most 45 times the norm")
def _a_kalton(ctx: Context):
    rng = ctx.rng("a.kalton")
    worst = Fraction(0)
    for _ in range(ctx.profile.kalton_vectors):
        entry = rng.choice(ctx.gallery)
        m = random_vector(rng, entry.space, nonzero=True)
        parts = weighting.kalton_parts(m)
        recon = canonicalize(entry.space, [])
        total = Fraction(0)
        for p in parts.values():
            recon = vec_add(recon, p)
            total += kr_norm(p)[0]
        if recon != m:
            return False, f"reconstruction failed on {entry.name}"
        value = kr_norm(m)[0]
        if total > 45 * value:
            return False, f"summed part norms exceeded 45x on {entry.name}"
        worst = max(worst, total / value)
    return True, (f"{ctx.profile.kalton_vectors} vectors reconstructed; "
                  f"measured worst ratio {worst} (bound 45)")


@_register("acceptance.positivity-equivalence", "order",
           "the coefficient route and the LP route agree on positivity")
def _a_positivity(ctx: Context):
    rng = ctx.rng("a.positivity")
    per_space = ctx.profile.positivity_per_space
    for entry in ctx.gallery:
        for _ in range(per_space):
            if rng.random() < 0.25:
                m = random_positive_vector(rng, entry.space)
            else:
                m = random_vector(rng, entry.space)
            if order.is_positive(m, "coefficients") != order.is_positive(m, "lp"):
                return False, f"routes disagreed on {entry.name}"
    return True, f"{per_space} vectors per gallery space agreed"


@_register("acceptance.jordan-minimality", "order",
           "independent random majorants dominate the minimum majorant, and "
           "the support identities hold")
def _a_jordan(ctx: Context):
    rng = ctx.rng("a.jordan")
    for _ in range(ctx.profile.jordan_trials):
        s = random_space(rng)
        m = random_vector(rng, s)
        psi = random_majorant(rng, m)
        if not order.check_majorant(m, psi).is_majorant:
            return False, "constructed majorant rejected"
        diff = subtract(psi, order.minimum_majorant(m).m_plus)
        if not (diff.is_zero or order.is_positive(diff, "lp")):
            return False, "a majorant failed to dominate the minimum majorant"
        if not order.support_identities(m).holds:
            return False, "support identities failed"
    return True, f"{ctx.profile.jordan_trials} majorants dominated the minimum"


@_register("acceptance.ambrosio-divergence", "experiments",
           "the inward net keeps norm below 1/2 while mass grows linearly")
def _a_ambrosio(ctx: Context):
    rows = run_ambrosio(ctx.profile.net_cap)
    for row in rows:
        if not (row.norm < Fraction(1, 2) and row.diagnostic == row.n
                and row.diagnostic / row.norm >= 2 * row.n):
            return False, f"divergence pattern failed at step {row.n}"
    return True, f"steps 1..{ctx.profile.net_cap}: norm < 1/2, mass/norm >= 2N"


@_register("acceptance.weaver-divergence", "experiments",
           "the accumulating-pairs net keeps norm below 1/9 while the "
           "positive part pairs to the step count")
def _a_weaver(ctx: Context):
    rows = run_weaver(ctx.profile.net_cap)
    for row in rows:
        if not (row.diagnostic == row.n and row.norm <= Fraction(1, 9)):
            return False, f"divergence pattern failed at step {row.n}"
    inst = gen_weaver(min(ctx.profile.net_cap, 8))
    plus = order.minimum_majorant(inst.vector).m_plus
    if kr_norm(plus)[0] != pair(plus, rho(inst.space)):
        return False, "the positive part norm identity failed"
    return True, f"steps 1..{ctx.profile.net_cap}: pairing = N, norm <= 1/9"


@_register("acceptance.radial-bound", "experiments",
           "positive molecule families admit majorants with norm at most "
           "the coefficient sum over the radial constant")
def _a_radial(ctx: Context):
    rng = ctx.rng("a.radial")
    per_space = ctx.profile.radial_families_per_space
    for entry in ctx.gallery:
        for _ in range(per_space):
            pairs, coeffs = random_molecule_family(rng, entry.space,
                                                   rng.randrange(1, 5))
            rep = thm6_majorant_bound(entry.space, pairs, coeffs)
            if not (rep.m_prime_positive and rep.majorant_holds and rep.bound_holds):
                return False, f"radial bound failed on {entry.name}"
    return True, f"{per_space} families per gallery space within the bound"


@_register("acceptance.norming-agreement", "kr_solver",
           "for positive vectors the canonical norming function equals the "
           "distance to base on the support")
def _a_norming(ctx: Context):
    rng = ctx.rng("a.norming")
    for _ in range(ctx.profile.norming_trials):
        s = random_space(rng)
        m = random_positive_vector(rng, s, nonzero=True)
        f = dual_optimal_function(m)
        for i in support_indices(m):
            if f.values[i] != s.rho(i):
                return False, "norming function differed from rho on the support"
    return True, f"{ctx.profile.norming_trials} positive vectors normed by rho"


@_register("acceptance.float-soundness", "kr_solver",
           "float solves stay within 1e-9 relative error of exact solves, "
           "and a 50-point instance solves in under a second")
def _a_float(ctx: Context):
    worst = 0.0
    for space, vectors in ctx.corpus:
        fspace = space.to_float()
        for m in vectors:
            exact_value, _ = kr_norm(m)
            fm = canonicalize(fspace, [(i, float(c)) for i, c in m.coeffs.items()])
            try:
                float_value, _ = kr_norm(fm)
            except NumericalInstability:
                return False, "float solve declared instability"
            ref = float(exact_value)
            err = abs(float_value - ref) / ref if ref else abs(float_value)
            worst = max(worst, err)
            if err > 1e-9:
                return False, f"relative error {err:.2e} above 1e-9"

    rng = ctx.rng("a.float50")
    big = random_space(rng, 50).to_float()
    m50 = canonicalize(big, [(i, float(Fraction(rng.randrange(-24, 25) or 1, 5)))
                             for i in big.non_base])
    t0 = time.perf_counter()
    kr_norm(m50)
    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        return False, f"50-point solve took {elapsed:.2f}s"
    return True, f"worst relative error {worst:.2e}; 50-point solve {elapsed*1000:.0f}ms"


# ------------------------------------------------------------------ runner


def manifest() -> list[dict]:
    return [{"id": c.check_id, "module": c.module, "statement": c.statement}
            for c in CHECKS]


def run_check(check_id: str, profile: str = "all",
              seed: int = DEFAULT_SEED, ctx: Context | None = None) -> CheckResult:
    by_id = {c.check_id: c for c in CHECKS}
    check = by_id[check_id]
    if ctx is None:
        ctx = Context(PROFILES[profile], seed)
    t0 = time.perf_counter()
    try:
        passed, detail = check.fn(ctx)
    except Exception as exc:  # a crashing check is a failing check
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - t0
    return CheckResult(check.check_id, check.module, check.statement,
                       passed, detail, elapsed)


def run_suite(profile: str = "all", seed: int = DEFAULT_SEED,
              only: list[str] | None = None) -> list[CheckResult]:
    ctx = Context(PROFILES[profile], seed)
    results = []
    for check in CHECKS:
        if only and check.check_id not in only:
            continue
        results.append(run_check(check.check_id, profile, seed, ctx))
    return results
