import math
import random
from fractions import Fraction as F

import pytest

from freelip.errors import (
    BadBaseIndex,
    DuplicateLabel,
    EmptySet,
    TriangleViolation,
    UnknownPoint,
    ZeroDistanceDistinctPoints,
)
from freelip.serialize import space_from_obj, space_to_obj
from freelip.space import (
    attach_base_point,
    diameter,
    dist_to_set,
    is_radially_uniformly_discrete,
    is_uniformly_discrete,
    radial_alpha,
    radius,
    uniform_separation,
    validate,
)
from freelip.sampling import random_space


@pytest.fixture
def three():
    return validate(["0", "a", "b"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]], 0)


def test_validate_accepts_the_three_point_space(three):
    assert three.labels == ("0", "a", "b")
    assert three.d(1, 2) == 1


def test_validate_reports_triangle_violation_with_witnesses():
    with pytest.raises(TriangleViolation) as err:
        validate(["0", "a", "b"], [[0, 1, 2], [1, 0, 4], [2, 4, 0]], 0)
    assert err.value.witness == ("a", "0", "b")


def test_validate_rejects_zero_distance_between_distinct_points():
    with pytest.raises(ZeroDistanceDistinctPoints) as err:
        validate(["0", "a", "b"], [[0, 1, 2], [1, 0, 0], [2, 0, 0]], 0)
    assert err.value.witness == ("a", "b")


def test_validate_rejects_duplicate_labels_and_bad_base():
    with pytest.raises(DuplicateLabel):
        validate(["0", "a", "a"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]], 0)
    with pytest.raises(BadBaseIndex):
        validate(["0", "a"], [[0, 1], [1, 0]], 2)


def test_radius_diameter_dist_to_set(three):
    assert radius(three, ["a", "b"]) == 2
    assert diameter(three, ["a", "b"]) == 1
    assert radius(three, ["0"]) == 0
    assert dist_to_set(three, "b", ["0", "a"]) == 1
    assert dist_to_set(three, "b", []) == math.inf
    with pytest.raises(EmptySet):
        radius(three, [])


def test_unknown_point_is_reported(three):
    with pytest.raises(UnknownPoint):
        radius(three, ["missing"])


def test_radial_alpha_three_point(three):
    rep = radial_alpha(three)
    assert rep.alpha == F(1, 2)
    assert rep.witness == ("b", "a")
    assert not rep.vacuous
    assert rep.is_radially_discrete


def test_radial_alpha_two_point_space_is_vacuous():
    two = validate(["0", "x"], [[0, 1], [1, 0]], 0)
    rep = radial_alpha(two)
    assert rep.alpha == 1
    assert rep.vacuous


@pytest.mark.parametrize("k", [2, 4, 8])
def test_inward_net_has_alpha_one_half_and_shrinking_separation(k):
    labels = ["0"] + [f"h{i}" for i in range(1, k + 1)]
    coords = [F(0)] + [F(1, 2 ** i) for i in range(1, k + 1)]
    dist = [[abs(a - b) for b in coords] for a in coords]
    space = validate(labels, dist, 0)
    assert radial_alpha(space).alpha == F(1, 2)
    assert uniform_separation(space) == F(1, 2 ** k)


@pytest.mark.parametrize("k", [3, 5, 9])
def test_integer_prefix_has_unit_separation_and_decaying_alpha(k):
    labels = [str(i) for i in range(k + 1)]
    dist = [[abs(i - j) for j in range(k + 1)] for i in range(k + 1)]
    space = validate(labels, dist, 0)
    assert uniform_separation(space) == 1
    rep = radial_alpha(space)
    assert rep.alpha == F(1, k)
    assert rep.witness == (str(k), str(k - 1))


def test_finite_spaces_are_always_discrete(three):
    assert is_uniformly_discrete(three)
    assert is_radially_uniformly_discrete(three)


def test_radial_inequality_quantified():
    rng = random.Random(5)
    for _ in range(30):
        s = random_space(rng)
        alpha = radial_alpha(s).alpha
        for x in s.non_base:
            for y in range(s.n):
                if y != x:
                    assert alpha * s.rho(x) <= s.d(x, y)


def test_attach_base_point():
    space = attach_base_point(["p", "q"], [[0, 2], [2, 0]], 1)
    assert space.labels == ("0", "p", "q")
    assert space.rho_values == (F(0), F(1), F(1))

    with pytest.raises(TriangleViolation):
        attach_base_point(["p", "q"], [[0, 2], [2, 0]], F(1, 2))

    single = attach_base_point(["p"], [[0]], F(3, 4))
    assert single.n == 2


def test_serialization_roundtrip():
    rng = random.Random(9)
    for _ in range(20):
        s = random_space(rng)
        assert space_from_obj(space_to_obj(s), s.mode) == s


def test_serialization_parses_decimal_strings_exactly():
    obj = {"points": ["0", "x"], "base": "0", "dist": [["0", "1.1"], ["1.1", "0"]]}
    s = space_from_obj(obj)
    assert s.d(0, 1) == F(11, 10)


def test_float_twin_has_float_entries(three):
    f = three.to_float()
    assert f.mode == "float"
    assert isinstance(f.d(1, 2), float)
