import random
from fractions import Fraction as F

import pytest

from freelip.functions import (
    constant_weight,
    lip0_function,
    rho,
    weight_g,
    weight_h,
    weight_lambda,
    weight_pi,
)
from freelip.solver import kr_norm
from freelip.space import validate
from freelip.vectors import add, canonicalize, delta, pair, support_indices, zero_vector
from freelip.weighting import (
    WeightOperator,
    adjoint_apply,
    apply_to_function,
    class_report,
    kalton_parts,
    operator_norm,
)
from freelip.sampling import random_lip0, random_space, random_vector, random_weight


@pytest.fixture
def three():
    return validate(["0", "a", "b"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]], 0)


def test_constant_weight_acts_as_identity(three):
    op = WeightOperator(constant_weight(three))
    f = lip0_function(three, [0, F(1, 2), -1])
    assert apply_to_function(op, f).values == f.values
    m = canonicalize(three, [("a", 2), ("b", -1)])
    assert adjoint_apply(op, m) == m
    assert operator_norm(op) == 1


def test_wide_inner_cutoff_is_identity(three):
    op = WeightOperator(weight_h(three, 5))
    f = rho(three)
    assert apply_to_function(op, f).values == f.values


def test_adjoint_scales_coefficients(three):
    m = canonicalize(three, [("a", 1), ("b", 1)])
    # With index 0 the ramp hits rho(b) = 2 exactly, so b drops out.
    assert adjoint_apply(WeightOperator(weight_h(three, 0)), m) == delta(three, "a")


def test_zero_weight_removes_support(three):
    h = weight_h(three, -2)
    op = WeightOperator(h)
    m = canonicalize(three, [("a", 1), ("b", -1)])
    image = adjoint_apply(op, m)
    assert image.is_zero


def test_adjointness_identity():
    rng = random.Random(33)
    for _ in range(60):
        s = random_space(rng)
        m, f, h = random_vector(rng, s), random_lip0(rng, s), random_weight(rng, s)
        op = WeightOperator(h)
        assert pair(adjoint_apply(op, m), f) == pair(m, apply_to_function(op, f))
        image = adjoint_apply(op, m)
        assert set(support_indices(image)) <= \
            set(support_indices(m)) & set(h.support)


def test_operator_norm_constants(three):
    for n in range(-2, 3):
        assert operator_norm(WeightOperator(weight_h(three, n))) <= 3
        assert operator_norm(WeightOperator(weight_g(three, n))) <= 4
        assert operator_norm(WeightOperator(weight_lambda(three, n))) <= 5
    for n in range(0, 3):
        assert operator_norm(WeightOperator(weight_pi(three, n))) <= 12


def test_operator_norm_within_cached_bound():
    rng = random.Random(35)
    for _ in range(15):
        s = random_space(rng, rng.randrange(3, 6))
        op = WeightOperator(random_weight(rng, s))
        assert operator_norm(op) <= op.norm_bound


def test_kalton_single_part_at_dyadic_radius(three):
    parts = kalton_parts(delta(three, "b"))  # rho = 2 = 2**1
    assert list(parts) == [1]
    assert parts[1] == delta(three, "b")
    parts = kalton_parts(delta(three, "a"))  # rho = 1 = 2**0
    assert list(parts) == [0]


def test_kalton_empty_for_zero_vector(three):
    assert kalton_parts(zero_vector(three)) == {}


def test_kalton_reconstruction_and_bound():
    rng = random.Random(37)
    for _ in range(30):
        s = random_space(rng)
        m = random_vector(rng, s, nonzero=True)
        parts = kalton_parts(m)
        recon = zero_vector(s)
        total = F(0)
        for p in parts.values():
            recon = add(recon, p)
            total += kr_norm(p)[0]
        assert recon == m
        assert total <= 45 * kr_norm(m)[0]


def test_adjoint_semigroup_distinct_indices():
    rng = random.Random(39)
    for _ in range(30):
        s = random_space(rng)
        m = random_vector(rng, s)
        a = rng.randrange(-3, 4)
        b = (a + rng.randrange(1, 4))
        composed = adjoint_apply(WeightOperator(weight_h(s, b)),
                                 adjoint_apply(WeightOperator(weight_h(s, a)), m))
        assert composed == adjoint_apply(WeightOperator(weight_h(s, min(a, b))), m)


def test_class_report_atom(three):
    rep = class_report(delta(three, "a"))
    assert rep.strongly_bounded and rep.avoids_infinity
    assert rep.avoids_zero_strongly and rep.avoids_zero
    assert not rep.concentrated_at_infinity and not rep.concentrated_at_zero
    assert rep.part_at_zero.is_zero and rep.part_at_infinity.is_zero
    assert rep.band_part == delta(three, "a")
    assert rep.norm_additivity_holds
    # d(a, 0) = 1 needs the outer cutoff to be 1 at radius 1: 2**(1-n) <= 1.
    assert rep.avoids_zero_witness == 1


def test_class_report_zero_vector(three):
    rep = class_report(zero_vector(three))
    assert rep.concentrated_at_infinity and rep.concentrated_at_zero
    assert rep.strongly_bounded and rep.avoids_zero_strongly


def test_class_report_general_vector(three):
    m = canonicalize(three, [("a", -3), ("b", F(7, 5))])
    rep = class_report(m)
    assert rep.band_part == m
    assert rep.kalton_reconstruction_exact
    assert rep.kalton_bound_holds
    total = F(0)
    for v in rep.kalton_norms.values():
        total += v
    assert total == rep.kalton_total
