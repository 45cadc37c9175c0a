import random
from fractions import Fraction as F

import pytest

from freelip.errors import PreconditionViolation, UnknownPoint
from freelip.functions import bump, lip0_function, rho
from freelip.solver import kr_norm
from freelip.space import validate
from freelip.vectors import (
    add,
    canonicalize,
    delta,
    molecule_decompose,
    negate,
    norm1,
    pair,
    scale,
    subtract,
    support,
    support_indices,
    zero_vector,
)
from freelip.sampling import random_lip0, random_space, random_vector


@pytest.fixture
def three():
    return validate(["0", "a", "b"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]], 0)


def test_canonicalize_merges_and_drops(three):
    m = canonicalize(three, [("a", 1), ("a", 2), ("0", 5)])
    assert m.coeffs == {1: F(3)}
    assert canonicalize(three, [("a", 1), ("a", -1)]).is_zero
    assert canonicalize(three, [("b", F(1, 2))]).coeffs == {2: F(1, 2)}


def test_canonicalize_rejects_unknown_points(three):
    with pytest.raises(UnknownPoint):
        canonicalize(three, [("zz", 1)])


def test_pairing_examples(three):
    assert pair(delta(three, "a"), rho(three)) == 1
    assert pair(zero_vector(three), rho(three)) == 0
    m = canonicalize(three, [("a", 2), ("b", -1)])
    assert pair(m, lip0_function(three, [0, 1, 0])) == 2


def test_pairing_requires_base_vanishing_flavor(three):
    from freelip.functions import lip_function

    with pytest.raises(PreconditionViolation):
        pair(delta(three, "a"), lip_function(three, [1, 1, 1]))


def test_norm1(three):
    assert norm1(canonicalize(three, [("a", 3), ("b", -1)])) == 4
    assert norm1(zero_vector(three)) == 0


def test_support(three):
    assert support(delta(three, "a")) == ("a",)
    assert support(canonicalize(three, [("a", 1), ("b", -1)])) == ("a", "b")
    assert support(zero_vector(three)) == ()


def test_support_detection_by_bumps(three):
    rng = random.Random(4)
    for _ in range(40):
        s = random_space(rng)
        m = random_vector(rng, s, nonzero=True)
        for i in support_indices(m):
            assert pair(m, bump(s, i)) != 0


def test_pairing_depends_only_on_support_values():
    rng = random.Random(6)
    for _ in range(40):
        s = random_space(rng)
        m = random_vector(rng, s, nonzero=True)
        f = random_lip0(rng, s)
        g_values = list(random_lip0(rng, s).values)
        for i in support_indices(m):
            g_values[i] = f.values[i]
        assert pair(m, f) == pair(m, lip0_function(s, g_values))


def test_arithmetic_linearity(three):
    rng = random.Random(8)
    assert add(delta(three, "a"), canonicalize(three, [("a", -1)])).is_zero
    assert scale(canonicalize(three, [("a", 2)]), F(1, 2)) == delta(three, "a")
    for _ in range(30):
        s = random_space(rng)
        m1, m2 = random_vector(rng, s), random_vector(rng, s)
        f = random_lip0(rng, s)
        assert pair(add(m1, m2), f) == pair(m1, f) + pair(m2, f)
        assert pair(negate(m1), f) == -pair(m1, f)


def test_uniqueness_same_canonical_pairs_identically(three):
    rng = random.Random(10)
    m = canonicalize(three, [("a", F(3, 2)), ("b", -2)])
    raw = [("a", F(1, 2)), ("b", -1), ("a", 1), ("b", -1), ("0", 7)]
    m2 = canonicalize(three, raw)
    assert m == m2
    for _ in range(200):
        f = random_lip0(rng, three)
        assert pair(m, f) == pair(m2, f)


def test_distinct_vectors_are_separated():
    rng = random.Random(12)
    for _ in range(40):
        s = random_space(rng)
        m1, m2 = random_vector(rng, s), random_vector(rng, s)
        if m1 == m2:
            continue
        diff = subtract(m1, m2)
        x = support_indices(diff)[0]
        assert pair(m1, bump(s, x)) != pair(m2, bump(s, x))


def test_molecule_decomposition_single_molecule(three):
    decomp = molecule_decompose(canonicalize(three, [("a", 1), ("b", -1)]))
    assert len(decomp.molecules) == 1
    mol = decomp.molecules[0]
    assert mol.weight == three.d(mol.x, mol.y)
    assert decomp.residual_point is None


def test_molecule_decomposition_atom_residual(three):
    decomp = molecule_decompose(delta(three, "a"))
    assert decomp.molecules == ()
    assert decomp.residual_point == three.index("a")
    assert decomp.residual_coeff == 1


def test_molecule_decomposition_reassembles(three):
    rng = random.Random(14)
    m = canonicalize(three, [("a", 2), ("b", -1)])
    assert molecule_decompose(m).reassemble(three) == m
    for _ in range(50):
        s = random_space(rng)
        m = random_vector(rng, s)
        assert molecule_decompose(m).reassemble(s) == m


def test_pairing_bounded_by_norm_times_lip():
    rng = random.Random(16)
    for _ in range(25):
        s = random_space(rng)
        m = random_vector(rng, s)
        f = random_lip0(rng, s)
        value, _ = kr_norm(m)
        assert abs(pair(m, f)) <= value * f.lip_const
