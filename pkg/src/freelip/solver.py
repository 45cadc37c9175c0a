"""Free-space norm as a base-pointed transportation problem.

The norm of a finitely supported element is the optimal value of a min-cost
flow on the complete digraph over the space's points: every non-base point
carries its coefficient as net supply and the base point absorbs the total
imbalance, which is admissible because the dual functions vanish there.  The
primal runs a spanning-tree (network) simplex started from the all-to-base
tree.  Exact mode pivots with Bland's least-index rule; float mode keeps
strongly feasible trees (every degenerate tree arc points toward the root)
and enters on the most negative reduced cost.

The optimal tree's potentials form a norming function.  They are
canonicalized to the lexicographically smallest optimal basic solution by
minimizing one coordinate at a time over the complementary-slackness face,
which is a pure difference-constraint system, so each minimum is a
shortest-path distance in the constraint graph.

``oracle_norm`` is the structurally independent verifier: a dense tableau
simplex over the dual polytope of base-vanishing 1-Lipschitz functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NumericalInstability, TooLarge, ZeroVector
from .functions import LIP0, LipschitzFunction
from .scalars import EXACT, FLOAT, Scalar, zero
from .simplex import simplex_max
from .space import PointedMetricSpace
from .vectors import FreeVector

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class TransportInstance:
    """Net supplies summing to zero over the points of a space."""

    space: PointedMetricSpace
    supply: tuple[Scalar, ...]

    def __post_init__(self):
        total = zero(self.space.mode)
        scale = zero(self.space.mode)
        for s in self.supply:
            total += s
            scale += abs(s)
        if self.space.mode == EXACT:
            if total != 0:
                raise ValueError("supplies must sum to zero")
        elif abs(total) > 1e-12 * max(1.0, scale):
            raise ValueError("supplies must sum to zero within rounding")

    @classmethod
    def from_vector(cls, m: FreeVector) -> "TransportInstance":
        space = m.space
        z = zero(space.mode)
        supply = [z] * space.n
        total = z
        for i, c in m.coeffs.items():
            supply[i] = c
            total += c
        supply[space.base] = -total
        return cls(space, tuple(supply))


@dataclass(frozen=True)
class TransportPlan:
    """Optimal flow with certifying dual potentials.

    In exact mode the duality gap is identically zero and complementary
    slackness holds exactly: positive flow on (i, j) forces
    f*(i) - f*(j) = d(i, j).
    """

    space: PointedMetricSpace
    flow: dict[tuple[int, int], Scalar]
    cost: Scalar
    potentials: LipschitzFunction
    gap: Scalar
    mode: str

    def divergence(self) -> list[Scalar]:
        out = [zero(self.space.mode) for _ in range(self.space.n)]
        for (a, b), f in self.flow.items():
            out[a] += f
            out[b] -= f
        return out

    def flow_by_labels(self) -> list[dict]:
        labels = self.space.labels
        return [{"from": labels[a], "to": labels[b], "amount": f}
                for (a, b), f in sorted(self.flow.items())]


class _PivotLimit(Exception):
    pass


class _NetworkSimplex:
    """Spanning-tree simplex on the complete digraph with given arc costs."""

    def __init__(self, n: int, root: int, supply, cost, mode: str,
                 reverse_scan: bool = False):
        self.n = n
        self.root = root
        self.supply = list(supply)
        self.cost = cost
        self.mode = mode
        self.reverse_scan = reverse_scan
        self.zero = zero(mode)
        scale = max((abs(c) for row in cost for c in row), default=1)
        self.eps = 0.0 if mode == EXACT else 1e-12 * max(1.0, float(scale))

        self.parent = [-1] * n
        self.dir = [0] * n       # +1: arc node->parent, -1: arc parent->node
        self.flow = [self.zero] * n
        self.depth = [0] * n
        edges = []
        for i in range(n):
            if i == self.root:
                continue
            b = self.supply[i]
            if b >= self.zero:
                edges.append((i, self.root, b))
            else:
                edges.append((self.root, i, -b))
        self._rebuild(edges)

    def _rebuild(self, edges):
        adj: dict[int, list[tuple[int, int, int, Scalar]]] = {i: [] for i in range(self.n)}
        for a, b, f in edges:
            adj[a].append((b, a, b, f))
            adj[b].append((a, a, b, f))
        seen = [False] * self.n
        seen[self.root] = True
        self.depth[self.root] = 0
        stack = [self.root]
        while stack:
            p = stack.pop()
            for x, a, b, f in adj[p]:
                if seen[x]:
                    continue
                seen[x] = True
                self.parent[x] = p
                self.depth[x] = self.depth[p] + 1
                self.dir[x] = 1 if (a, b) == (x, p) else -1
                self.flow[x] = f
                stack.append(x)
        assert all(seen), "tree rebuild left the graph disconnected"

    def _edges(self):
        for x in range(self.n):
            if x == self.root:
                continue
            p = self.parent[x]
            if self.dir[x] == 1:
                yield (x, p, self.flow[x])
            else:
                yield (p, x, self.flow[x])

    def potentials(self) -> list[Scalar]:
        children: list[list[int]] = [[] for _ in range(self.n)]
        for x in range(self.n):
            if x != self.root:
                children[self.parent[x]].append(x)
        pi = [self.zero] * self.n
        stack = [self.root]
        while stack:
            p = stack.pop()
            for x in children[p]:
                if self.dir[x] == 1:
                    pi[x] = pi[p] + self.cost[x][p]
                else:
                    pi[x] = pi[p] - self.cost[p][x]
                stack.append(x)
        return pi

    def _entering(self, pi):
        n = self.n
        order = range(n - 1, -1, -1) if self.reverse_scan else range(n)
        if self.mode == EXACT:
            for u in order:
                cu, pu = self.cost[u], pi[u]
                for v in order:
                    if v != u and cu[v] - pu + pi[v] < self.zero:
                        return (u, v)
            return None
        best = None
        best_rc = -self.eps
        for u in order:
            cu, pu = self.cost[u], pi[u]
            for v in order:
                if v == u:
                    continue
                rc = cu[v] - pu + pi[v]
                if rc < best_rc:
                    best_rc = rc
                    best = (u, v)
        return best

    def _arc_index(self, x: int) -> int:
        p = self.parent[x]
        return x * self.n + p if self.dir[x] == 1 else p * self.n + x

    def _pivot(self, u: int, v: int) -> None:
        iu, iv = u, v
        u_side: list[int] = []
        v_side: list[int] = []
        while iu != iv:
            if self.depth[iu] >= self.depth[iv]:
                u_side.append(iu)
                iu = self.parent[iu]
            else:
                v_side.append(iv)
                iv = self.parent[iv]

        # Pushing t along the entering arc u->v circulates v -> apex -> u.
        # v-side edges are traversed upward, u-side edges downward.
        forward = {x: (self.dir[x] == 1) for x in v_side}
        forward.update({x: (self.dir[x] == -1) for x in u_side})

        backward = [x for x in forward if not forward[x]]
        assert backward, "all-forward cycle would mean an unbounded program"
        t = min(self.flow[x] for x in backward)
        blocking = [x for x in backward if self.flow[x] == t]

        if self.mode == EXACT:
            leave = min(blocking, key=self._arc_index)
        else:
            ordered = list(reversed(u_side)) + v_side
            pos = {x: k for k, x in enumerate(ordered)}
            leave = max(blocking, key=lambda x: pos[x])

        edges = []
        for x in range(self.n):
            if x == self.root or x == leave:
                continue
            f = self.flow[x]
            if x in forward:
                f = f + t if forward[x] else f - t
            p = self.parent[x]
            edges.append((x, p, f) if self.dir[x] == 1 else (p, x, f))
        edges.append((u, v, t))
        self._rebuild(edges)

    def solve(self):
        limit = 1000 + 50 * self.n * self.n
        pivots = 0
        while True:
            pi = self.potentials()
            arc = self._entering(pi)
            if arc is None:
                break
            pivots += 1
            if pivots > limit:
                if self.mode == EXACT:
                    raise ArithmeticError("network simplex exceeded its pivot budget")
                raise _PivotLimit
            self._pivot(*arc)

        cost_total = self.zero
        flow: dict[tuple[int, int], Scalar] = {}
        for a, b, f in self._edges():
            if f != self.zero:
                flow[(a, b)] = flow.get((a, b), self.zero) + f
                cost_total += f * self.cost[a][b]
        dual = self.zero
        for i in range(self.n):
            dual += self.supply[i] * pi[i]
        min_rc = self.zero
        for u in range(self.n):
            for v in range(self.n):
                if v == u:
                    continue
                rc = self.cost[u][v] - pi[u] + pi[v]
                if rc < min_rc:
                    min_rc = rc
        return cost_total, flow, pi, dual, min_rc


def _solve_flow(space: PointedMetricSpace, supply, cost, tolerance: float):
    """Run the simplex with the mode's pivot rule; retry once in float mode."""
    mode = space.mode
    if mode == EXACT:
        solver = _NetworkSimplex(space.n, space.base, supply, cost, mode)
        cost_total, flow, pi, dual, min_rc = solver.solve()
        assert cost_total == dual and min_rc == 0
        return cost_total, flow, pi, zero(mode)

    for attempt, reverse in enumerate((False, True)):
        solver = _NetworkSimplex(space.n, space.base, supply, cost, mode,
                                 reverse_scan=reverse)
        try:
            cost_total, flow, pi, dual, min_rc = solver.solve()
        except _PivotLimit:
            continue
        gap = abs(cost_total - dual) / max(1.0, abs(cost_total))
        scale = max(1.0, max((abs(c) for row in cost for c in row), default=1.0))
        if gap <= tolerance and min_rc >= -tolerance * scale:
            return cost_total, flow, pi, gap
    raise NumericalInstability(
        "duality gap above tolerance after a perturbed re-solve")


def _lex_min_potentials(space: PointedMetricSpace, cost, flow, mode: str):
    """Lexicographically smallest dual optimum over the optimal face.

    Complementary slackness with one optimal flow cuts the dual polytope down
    to its optimal face, a difference-constraint system.  The minimum of a
    single coordinate over such a system is minus the shortest-path distance
    from the base in the constraint graph; pinning coordinates in point order
    yields the lex-min vertex, which is an optimal basic solution.
    """
    n = space.n
    root = space.base
    scale = max((abs(c) for row in cost for c in row), default=1)
    edges: list[tuple[int, int, Scalar]] = []
    for i in range(n):
        for j in range(n):
            if i != j:
                edges.append((i, j, cost[i][j]))
    if mode == EXACT:
        support = flow
    else:
        flow_eps = 1e-12 * max(1.0, max((abs(f) for f in flow.values()), default=1.0))
        support = {k: f for k, f in flow.items() if f > flow_eps}
    for (i, j) in support:
        edges.append((j, i, -cost[i][j]))

    inf = None
    dist: list[Scalar | None] = [inf] * n
    dist[root] = zero(mode)
    improve_eps = 0.0 if mode == EXACT else 1e-13 * max(1.0, float(scale))

    def relax_to_fixpoint():
        for _ in range(n + 1):
            changed = False
            for a, b, w in edges:
                da = dist[a]
                if da is None:
                    continue
                cand = da + w
                if dist[b] is None or cand < dist[b] - improve_eps:
                    dist[b] = cand
                    changed = True
            if not changed:
                return

    relax_to_fixpoint()
    values: list[Scalar] = [zero(mode)] * n
    for k in range(n):
        if k == root:
            continue
        assert dist[k] is not None
        v = -dist[k]
        values[k] = v
        edges.append((k, root, v))
        edges.append((root, k, -v))
        relax_to_fixpoint()
    return values


def kr_norm(m: FreeVector, tolerance: float = DEFAULT_TOLERANCE
            ) -> tuple[Scalar, TransportPlan]:
    """Free-space norm of m with a primal flow and dual norming function.

    Exact mode certifies a zero duality gap; float mode certifies a relative
    gap within ``tolerance`` or raises NumericalInstability after one
    re-solve from a perturbed pivot order.
    """
    space = m.space
    instance = TransportInstance.from_vector(m)
    cost = space.dist
    cost_total, flow, _, gap = _solve_flow(space, instance.supply, cost, tolerance)
    potentials = _lex_min_potentials(space, cost, flow, space.mode)
    fstar = LipschitzFunction(space, tuple(potentials), LIP0)
    plan = TransportPlan(space, flow, cost_total, fstar, gap, space.mode)
    return cost_total, plan


def dual_optimal_function(m: FreeVector) -> LipschitzFunction:
    """A norming function: 1-Lipschitz, vanishing at base, pairing to the norm."""
    if m.is_zero:
        raise ZeroVector("the zero vector has no norming function")
    _, plan = kr_norm(m)
    return plan.potentials


def oracle_norm(m: FreeVector) -> Scalar:
    """Independent free-norm computation for spaces of at most 8 points.

    Maximizes the pairing over the dual polytope of base-vanishing
    1-Lipschitz functions with a dense tableau simplex in exact rational
    arithmetic.  Shares no code path with the network simplex.
    """
    space = m.space
    n = space.n
    if n > 8:
        raise TooLarge("the dense oracle is limited to 8 points")

    def exact(x) -> Fraction:
        return x if isinstance(x, Fraction) else Fraction(x)

    nb = space.non_base
    var = {i: k for k, i in enumerate(nb)}
    d = [[exact(space.d(i, j)) for j in range(n)] for i in range(n)]
    base = space.base

    rows: list[tuple[dict[int, Fraction], Fraction]] = []
    for i in nb:
        for j in nb:
            if i == j:
                continue
            rhs = d[i][j] + d[i][base] - d[j][base]
            rows.append(({var[i]: Fraction(1), var[j]: Fraction(-1)}, rhs))
    for i in nb:
        rows.append(({var[i]: Fraction(1)}, 2 * d[i][base]))

    coeffs = {i: exact(c) for i, c in m.coeffs.items()}
    objective = [coeffs.get(i, Fraction(0)) for i in nb]
    value, _ = simplex_max(objective, rows, len(nb))
    shift = sum((coeffs.get(i, Fraction(0)) * d[i][base] for i in nb), Fraction(0))
    result = value - shift
    return result if space.mode == EXACT else float(result)


def positivity_minimum(m: FreeVector, tolerance: float = DEFAULT_TOLERANCE
                       ) -> tuple[Scalar, LipschitzFunction]:
    """Minimum of the pairing over nonnegative base-vanishing 1-Lipschitz f.

    Dualizes to the same transportation problem with negated supplies and
    zero-cost arcs out of the base (those encode f >= 0), so the flow engine
    solves it.  Returns the minimum and the minimizing function; the vector
    is positive exactly when the minimum is zero.
    """
    space = m.space
    z = zero(space.mode)
    supply = [z] * space.n
    total = z
    for i, c in m.coeffs.items():
        supply[i] = -c
        total -= c
    supply[space.base] = -total

    cost = [list(row) for row in space.dist]
    for j in range(space.n):
        if j != space.base:
            cost[space.base][j] = z
    cost = tuple(tuple(row) for row in cost)

    cost_total, flow, pi, _ = _solve_flow(space, supply, cost, tolerance)
    if space.mode == FLOAT:
        pi = [max(0.0, v) for v in pi]
    values = list(pi)
    values[space.base] = z
    certificate = LipschitzFunction(space, tuple(values), LIP0)
    return -cost_total, certificate
