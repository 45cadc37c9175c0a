import itertools
import random
from fractions import Fraction as F

import pytest

from freelip.errors import TooLarge, ZeroVector
from freelip.functions import rho
from freelip.solver import (
    TransportInstance,
    dual_optimal_function,
    kr_norm,
    oracle_norm,
    positivity_minimum,
)
from freelip.space import validate
from freelip.vectors import add, canonicalize, delta, norm1, pair, scale, support, \
    zero_vector
from freelip.sampling import random_positive_vector, random_space, random_vector


@pytest.fixture
def three():
    return validate(["0", "a", "b"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]], 0)


def tree_enumeration_norm(m):
    """Third oracle: minimum cost over all spanning-tree basic solutions.

    Every basic solution of the balanced flow problem is a tree solution and
    the optimum is attained at one, so for tiny spaces the norm is the
    minimum over all labelled trees (enumerated through Pruefer sequences)
    of the cost of the unique tree flow.
    """
    s = m.space
    n = s.n
    supply = list(TransportInstance.from_vector(m).supply)
    if n == 2:
        return abs(supply[0]) * s.d(0, 1)

    best = None
    for seq in itertools.product(range(n), repeat=n - 2):
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        edges = []
        leaves = sorted(i for i in range(n) if degree[i] == 1)
        for x in seq:
            leaf = leaves.pop(0)
            edges.append((leaf, x))
            degree[x] -= 1
            if degree[x] == 1:
                import bisect

                bisect.insort(leaves, x)
        edges.append((leaves[0], leaves[1]))

        adj = {i: [] for i in range(n)}
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        net = list(supply)
        deg = {i: len(adj[i]) for i in range(n)}
        cost = F(0)
        stack = [i for i in range(n) if deg[i] == 1]
        removed = set()
        while len(removed) < n - 1:
            leaf = stack.pop()
            parent = next(x for x in adj[leaf] if x not in removed)
            cost += abs(net[leaf]) * s.d(leaf, parent)
            net[parent] += net[leaf]
            removed.add(leaf)
            deg[parent] -= 1
            if deg[parent] == 1 and len(removed) < n - 1:
                stack.append(parent)
        if best is None or cost < best:
            best = cost
    return best


def test_norm_of_atoms(three):
    assert kr_norm(delta(three, "a"))[0] == 1
    assert kr_norm(delta(three, "b"))[0] == 2


def test_norm_of_molecule_is_distance(three):
    m = canonicalize(three, [("a", 1), ("b", -1)])
    assert kr_norm(m)[0] == 1


def test_mixed_sign_example_with_dual(three):
    m = canonicalize(three, [("a", 2), ("b", -1)])
    value, plan = kr_norm(m)
    assert value == 2
    assert plan.potentials.values == (F(0), F(1), F(0))
    assert plan.gap == 0


def test_positive_norm_is_rho_pairing(three):
    m = canonicalize(three, [("a", 1), ("b", 1)])
    value, plan = kr_norm(m)
    assert value == 3 == pair(m, rho(three))
    assert plan.potentials.values == three.rho_values


def test_norm_of_zero_vector(three):
    value, plan = kr_norm(zero_vector(three))
    assert value == 0
    assert plan.flow == {}
    assert oracle_norm(zero_vector(three)) == 0


def test_dual_optimal_function(three):
    f = dual_optimal_function(canonicalize(three, [("a", 1), ("b", -1)]))
    assert f.values[1] - f.values[2] == three.d(1, 2)
    with pytest.raises(ZeroVector):
        dual_optimal_function(zero_vector(three))
    two = validate(["0", "a"], [[0, 1], [1, 0]], 0)
    assert dual_optimal_function(delta(two, "a")).values == two.rho_values


def test_oracle_rejects_large_spaces():
    labels = [str(i) for i in range(9)]
    dist = [[abs(i - j) for j in range(9)] for i in range(9)]
    big = validate(labels, dist, 0)
    with pytest.raises(TooLarge):
        oracle_norm(delta(big, "3"))


def test_oracle_agrees_with_solver():
    rng = random.Random(21)
    for _ in range(60):
        s = random_space(rng)
        m = random_vector(rng, s)
        assert kr_norm(m)[0] == oracle_norm(m)


def test_tree_enumeration_oracle_agrees():
    rng = random.Random(23)
    for _ in range(25):
        s = random_space(rng, rng.randrange(3, 6))
        m = random_vector(rng, s)
        value, _ = kr_norm(m)
        assert value == tree_enumeration_norm(m) == oracle_norm(m)


def test_plan_invariants():
    rng = random.Random(25)
    for _ in range(30):
        s = random_space(rng)
        m = random_vector(rng, s)
        value, plan = kr_norm(m)
        assert plan.gap == 0
        assert tuple(plan.divergence()) == TransportInstance.from_vector(m).supply
        f = plan.potentials
        assert f.lip_const <= 1
        assert pair(m, f) == value
        for (a, b), fl in plan.flow.items():
            assert fl > 0
            assert f.values[a] - f.values[b] == s.d(a, b)


def test_norm_axioms():
    rng = random.Random(27)
    for _ in range(30):
        s = random_space(rng)
        m1, m2 = random_vector(rng, s), random_vector(rng, s)
        n1, n2 = kr_norm(m1)[0], kr_norm(m2)[0]
        assert n1 >= 0
        assert (n1 == 0) == m1.is_zero
        c = F(rng.randrange(-9, 10), rng.randrange(1, 4))
        assert kr_norm(scale(m1, c))[0] == abs(c) * n1
        assert kr_norm(add(m1, m2))[0] <= n1 + n2


def test_molecule_isometry_all_pairs(three):
    for x in range(3):
        for y in range(x + 1, 3):
            m = canonicalize(three, [(x, 1), (y, -1)])
            assert kr_norm(m)[0] == three.d(x, y)


def test_norm_mass_radius_bound():
    rng = random.Random(29)
    from freelip.space import radius

    for _ in range(25):
        s = random_space(rng)
        m = random_vector(rng, s, nonzero=True)
        assert kr_norm(m)[0] <= norm1(m) * radius(s, support(m))


def test_positivity_minimum_matches_dense_lp(three):
    m = canonicalize(three, [("a", 1), ("b", -1)])
    value, cert = positivity_minimum(m)
    assert value == -1
    assert pair(m, cert) == value
    assert all(v >= 0 for v in cert.values)
    assert cert.lip_const <= 1


def test_float_mode_matches_exact():
    rng = random.Random(31)
    for _ in range(40):
        s = random_space(rng)
        m = random_vector(rng, s)
        exact_value, _ = kr_norm(m)
        fs = s.to_float()
        fm = canonicalize(fs, [(i, float(c)) for i, c in m.coeffs.items()])
        float_value, plan = kr_norm(fm)
        ref = float(exact_value)
        if ref:
            assert abs(float_value - ref) / ref <= 1e-9
        else:
            assert abs(float_value) <= 1e-12
        assert plan.gap <= 1e-9
