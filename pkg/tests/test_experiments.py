import random
from fractions import Fraction as F

import pytest

from freelip.errors import PreconditionViolation
from freelip.experiments import (
    gen_ambrosio,
    gen_gallery,
    gen_weaver,
    run_ambrosio,
    run_weaver,
    thm6_majorant_bound,
)
from freelip.order import minimum_majorant
from freelip.solver import kr_norm
from freelip.space import radial_alpha, uniform_separation
from freelip.vectors import norm1, pair
from freelip.sampling import random_molecule_family


def test_ambrosio_frozen_values():
    inst = gen_ambrosio(3)
    assert kr_norm(inst.vector)[0] == F(7, 16)
    assert norm1(inst.vector) == 3
    assert kr_norm(gen_ambrosio(1).vector)[0] == F(1, 4)


def test_ambrosio_cutoffs_count_points():
    inst = gen_ambrosio(6)
    for k, f in enumerate(inst.cutoffs, start=1):
        assert pair(inst.vector, f) == k


def test_ambrosio_divergence_rows():
    for row in run_ambrosio(10):
        assert row.norm < F(1, 2)
        assert row.diagnostic == row.n
        assert row.diagnostic / row.norm >= 2 * row.n


def test_weaver_frozen_values():
    inst = gen_weaver(1)
    assert kr_norm(inst.vector)[0] == F(1, 16)


def test_weaver_pairing_and_norm_bound():
    inst = gen_weaver(6)
    plus = minimum_majorant(inst.vector).m_plus
    assert pair(plus, inst.plateau) == 6
    assert kr_norm(inst.vector)[0] <= F(1, 9)
    assert inst.plateau.lip_const <= 1
    for t, f in enumerate(inst.test_functions, start=1):
        assert pair(inst.vector, f) == t
        assert all(fv <= hv for fv, hv in zip(f.values, inst.plateau.values))


def test_weaver_divergence_rows():
    for row in run_weaver(8):
        assert row.diagnostic == row.n
        assert row.norm <= F(1, 9)


def test_exact_mode_caps_net_size():
    with pytest.raises(PreconditionViolation):
        gen_ambrosio(15)
    with pytest.raises(PreconditionViolation):
        gen_weaver(15)
    with pytest.raises(PreconditionViolation):
        gen_ambrosio(0)
    gen_ambrosio(15, mode="float")  # float mode is not capped


def test_gallery_classifications_match():
    for entry in gen_gallery():
        rep = radial_alpha(entry.space)
        assert rep.alpha == entry.alpha, entry.name
        assert uniform_separation(entry.space) == entry.theta, entry.name
        if entry.alpha_witness is not None:
            assert rep.witness == entry.alpha_witness, entry.name


def test_gallery_contains_the_advertised_regimes():
    names = {e.name for e in gen_gallery()}
    assert {"three_point", "nat_prefix_5", "inward_net_8", "bounded_uniform",
            "attached_base", "rational_box"} <= names


def test_thm6_single_molecule_bound():
    three = gen_gallery()[0].space
    rep = thm6_majorant_bound(three, [("b", "a")], [F(1)])
    assert rep.alpha == F(1, 2)
    assert rep.norm_m_prime == 2
    assert rep.m_prime_positive and rep.majorant_holds and rep.bound_holds


def test_thm6_zero_coefficients():
    three = gen_gallery()[0].space
    rep = thm6_majorant_bound(three, [("a", "b")], [F(0)])
    assert rep.m.is_zero and rep.m_prime.is_zero
    assert rep.norm_m_prime == 0 and rep.bound_holds


def test_thm6_rejects_negative_coefficients():
    three = gen_gallery()[0].space
    with pytest.raises(PreconditionViolation):
        thm6_majorant_bound(three, [("a", "b")], [F(-1)])


def test_thm6_random_families_across_gallery():
    rng = random.Random(59)
    for entry in gen_gallery():
        for _ in range(5):
            pairs, coeffs = random_molecule_family(rng, entry.space,
                                                   rng.randrange(1, 5))
            rep = thm6_majorant_bound(entry.space, pairs, coeffs)
            assert rep.m_prime_positive and rep.majorant_holds and rep.bound_holds
