import random
from fractions import Fraction as F

import pytest

from freelip.functions import abs_fn, rho
from freelip.order import (
    check_majorant,
    is_positive,
    minimum_majorant,
    modulus_dominates,
    support_identities,
    variation,
)
from freelip.solver import kr_norm
from freelip.space import validate
from freelip.vectors import FreeVector, canonicalize, delta, pair, subtract, zero_vector
from freelip.sampling import (
    random_lip0,
    random_majorant,
    random_positive_vector,
    random_space,
    random_vector,
)


@pytest.fixture
def three():
    return validate(["0", "a", "b"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]], 0)


@pytest.mark.parametrize("route", ["coefficients", "lp"])
def test_positivity_examples(three, route):
    assert is_positive(canonicalize(three, [("a", 1), ("b", 1)]), route)
    assert not is_positive(canonicalize(three, [("a", 1), ("b", -1)]), route)
    assert is_positive(zero_vector(three), route)


def test_positivity_routes_agree():
    rng = random.Random(41)
    for _ in range(100):
        s = random_space(rng)
        m = random_positive_vector(rng, s) if rng.random() < 0.3 else \
            random_vector(rng, s)
        assert is_positive(m, "coefficients") == is_positive(m, "lp")


def test_minimum_majorant_splits_coefficients(three):
    m = canonicalize(three, [("a", 2), ("b", -1)])
    parts = minimum_majorant(m)
    assert parts.m_plus == canonicalize(three, [("a", 2)])
    assert parts.m_minus == canonicalize(three, [("b", 1)])
    assert subtract(parts.m_plus, parts.m_minus) == m
    assert not (set(parts.m_plus.coeffs) & set(parts.m_minus.coeffs))

    positive = canonicalize(three, [("a", 1), ("b", 2)])
    parts = minimum_majorant(positive)
    assert parts.m_plus == positive and parts.m_minus.is_zero


def test_random_majorants_dominate_the_minimum():
    rng = random.Random(43)
    for _ in range(60):
        s = random_space(rng)
        m = random_vector(rng, s)
        psi = random_majorant(rng, m)
        assert check_majorant(m, psi).is_majorant
        diff = subtract(psi, minimum_majorant(m).m_plus)
        assert diff.is_zero or is_positive(diff, "lp")


def test_variation_examples(three):
    m = canonicalize(three, [("a", 2), ("b", -1)])
    assert variation(m) == canonicalize(three, [("a", 2), ("b", 1)])
    positive = canonicalize(three, [("a", 1)])
    assert variation(positive) == positive


def test_variation_norm_is_rho_pairing():
    rng = random.Random(45)
    for _ in range(30):
        s = random_space(rng)
        m = random_vector(rng, s)
        var = variation(m)
        assert kr_norm(var)[0] == pair(var, rho(s))


def test_majorant_norm_additivity():
    rng = random.Random(47)
    for _ in range(30):
        s = random_space(rng)
        m = random_vector(rng, s)
        parts = minimum_majorant(m)
        assert kr_norm(parts.m_plus)[0] + kr_norm(parts.m_minus)[0] == \
            kr_norm(variation(m))[0]


def test_modulus_inequality():
    rng = random.Random(49)
    for _ in range(60):
        s = random_space(rng)
        m = random_vector(rng, s)
        f = random_lip0(rng, s)
        assert abs(pair(m, f)) <= pair(variation(m), abs_fn(f))


def test_variation_is_minimal_for_the_modulus_property():
    rng = random.Random(51)
    for _ in range(12):
        s = random_space(rng, rng.randrange(3, 6))
        m = random_vector(rng, s, nonzero=True)
        var = variation(m)
        ok, _ = modulus_dominates(m, var)
        assert ok
        i = sorted(var.coeffs)[0]
        shrunk = dict(var.coeffs)
        shrunk[i] *= F(4, 5)
        candidate = FreeVector(s, shrunk)
        ok, witness = modulus_dominates(m, candidate)
        assert not ok
        assert abs(pair(m, witness)) > pair(candidate, abs_fn(witness))


def test_support_identities(three):
    rep = support_identities(canonicalize(three, [("a", 2), ("b", -1)]))
    assert rep.holds
    assert rep.supp_m == rep.supp_variation == ("a", "b")

    rep = support_identities(zero_vector(three))
    assert rep.holds and rep.supp_m == ()

    rng = random.Random(53)
    for _ in range(40):
        s = random_space(rng)
        assert support_identities(random_vector(rng, s)).holds


def test_check_majorant_accepts_and_rejects(three):
    m = canonicalize(three, [("a", 2), ("b", -1)])
    parts = minimum_majorant(m)
    assert check_majorant(m, parts.m_plus).is_majorant
    assert check_majorant(parts.m_plus, parts.m_plus).is_majorant

    res = check_majorant(canonicalize(three, [("a", 1), ("b", -1)]),
                         zero_vector(three))
    assert not res.is_majorant
    assert res.psi_positive and not res.difference_positive
    cert = res.certificate
    assert cert is not None
    assert all(v >= 0 for v in cert.values)
    assert pair(canonicalize(three, [("a", 1), ("b", -1)]), cert) > 0


def test_rejected_candidates_carry_violating_certificates():
    rng = random.Random(55)
    seen = 0
    for _ in range(60):
        s = random_space(rng)
        m = random_vector(rng, s, nonzero=True)
        psi = random_vector(rng, s)
        res = check_majorant(m, psi)
        if res.is_majorant:
            continue
        seen += 1
        cert = res.certificate
        assert cert is not None and all(v >= 0 for v in cert.values)
        if not res.psi_positive:
            assert pair(psi, cert) < 0
        else:
            assert pair(m, cert) > pair(psi, cert)
    assert seen > 10


def test_norming_function_of_positive_vector_is_rho_on_support():
    from freelip.solver import dual_optimal_function
    from freelip.vectors import support_indices

    rng = random.Random(57)
    for _ in range(30):
        s = random_space(rng)
        m = random_positive_vector(rng, s, nonzero=True)
        f = dual_optimal_function(m)
        for i in support_indices(m):
            assert f.values[i] == s.rho(i)
