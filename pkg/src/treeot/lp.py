"""Independent exact oracle for transport distances on small finite graphs.

Solves the primal transportation linear program with an exact simplex over
rationals (costs stay integers, so dual values and reduced costs are integers
too), and provides the dual-side checks: 1-Lipschitz feasibility, duality-gap
certificates, and complementary slackness.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import DuplicateEdge, InfeasiblePotential, MassMismatch, NotConnected, TooLarge
from .tree import Measure, Potential, Tree

#: Supports larger than this are refused; the exact simplex is for desk-scale
#: verification, not production-scale solving.
MAX_SUPPORT = 40


@dataclass(frozen=True)
class FiniteGraph:
    """Connected simple graph with precomputed hop distances."""

    labels: tuple[Hashable, ...]
    index: dict
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]
    distances: tuple[tuple[int, ...], ...]

    @property
    def num_vertices(self) -> int:
        return len(self.labels)

    def distance(self, u: int, v: int) -> int:
        return self.distances[u][v]

    @classmethod
    def build(cls, vertices: Sequence[Hashable], edges: Iterable[tuple]) -> "FiniteGraph":
        labels = tuple(vertices)
        index: dict = {}
        for pos, label in enumerate(labels):
            if label in index:
                raise ValueError(f"duplicate vertex id {label!r}")
            index[label] = pos
        seen: set[tuple[int, int]] = set()
        dense: list[tuple[int, int]] = []
        for a, b in edges:
            if a not in index or b not in index:
                raise ValueError(f"edge ({a!r}, {b!r}) references an unknown vertex")
            u, v = index[a], index[b]
            if u == v:
                raise ValueError(f"self-loop at vertex {a!r}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DuplicateEdge(f"edge ({a!r}, {b!r}) appears more than once")
            seen.add(key)
            dense.append(key)
        neighbor_lists: list[list[int]] = [[] for _ in labels]
        for u, v in dense:
            neighbor_lists[u].append(v)
            neighbor_lists[v].append(u)
        adjacency = tuple(tuple(sorted(ns)) for ns in neighbor_lists)
        distances = all_pairs_distances(adjacency)
        return cls(labels=labels, index=index, edges=tuple(dense),
                   adjacency=adjacency, distances=distances)

    @classmethod
    def from_tree(cls, tree: Tree) -> "FiniteGraph":
        return cls.build(tree.labels, [(tree.labels[u], tree.labels[v]) for u, v in tree.edges])


def all_pairs_distances(adjacency: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Hop-count distance matrix via one BFS per vertex."""
    n = len(adjacency)
    rows: list[tuple[int, ...]] = []
    for src in range(n):
        dist = [-1] * n
        dist[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for w in adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if any(d < 0 for d in dist):
            raise NotConnected(f"vertex {src} cannot reach the whole graph")
        rows.append(tuple(dist))
    return tuple(rows)


@dataclass(frozen=True)
class TransportPlan:
    """Nonnegative mass moved between vertex pairs."""

    entries: Mapping[tuple[int, int], Fraction]

    def __post_init__(self) -> None:
        cleaned = {}
        for (u, v), raw in self.entries.items():
            x = Fraction(raw)
            if x < 0:
                raise ValueError(f"negative plan entry at ({u}, {v})")
            if x:
                cleaned[(int(u), int(v))] = x
        object.__setattr__(self, "entries", cleaned)

    def cost(self, graph: FiniteGraph) -> Fraction:
        return sum((graph.distance(u, v) * x for (u, v), x in self.entries.items()), Fraction(0))

    def marginals(self) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
        rows: dict[int, Fraction] = {}
        cols: dict[int, Fraction] = {}
        for (u, v), x in self.entries.items():
            rows[u] = rows.get(u, Fraction(0)) + x
            cols[v] = cols.get(v, Fraction(0)) + x
        return rows, cols

    def satisfies_marginals(self, mu: Measure, nu: Measure) -> bool:
        rows, cols = self.marginals()
        return rows == dict(mu.masses) and cols == dict(nu.masses)


def w1_lp(graph: FiniteGraph, mu: Measure, nu: Measure) -> tuple[Fraction, TransportPlan]:
    """Exact optimum of the transportation LP plus one optimal plan."""
    if mu.total() != nu.total():
        raise MassMismatch(f"total masses differ: {mu.total()} vs {nu.total()}")
    sources = mu.support()
    sinks = nu.support()
    if len(sources) > MAX_SUPPORT or len(sinks) > MAX_SUPPORT:
        raise TooLarge(f"supports of size {len(sources)}x{len(sinks)} exceed the "
                       f"{MAX_SUPPORT}-point oracle cap")
    for v in (*sources, *sinks):
        if not 0 <= v < graph.num_vertices:
            raise ValueError(f"measure references vertex {v} outside the graph")
    if not sources:
        return Fraction(0), TransportPlan({})

    costs = [[graph.distance(u, v) for v in sinks] for u in sources]
    supply = [mu.value(u) for u in sources]
    demand = [nu.value(v) for v in sinks]
    value, cells = _transportation_simplex(costs, supply, demand)
    plan = TransportPlan({(sources[i], sinks[j]): x for (i, j), x in cells.items() if x})
    return value, plan


def _transportation_simplex(
    costs: list[list[int]], supply: list[Fraction], demand: list[Fraction]
) -> tuple[Fraction, dict[tuple[int, int], Fraction]]:
    """Primal simplex on the transportation polytope, exact over rationals.

    The basis is always a spanning tree of the bipartite supply/demand graph.
    Bland's rule (lexicographically smallest entering cell with negative
    reduced cost, smallest leaving cell among ties) rules out cycling.
    """
    m, n = len(supply), len(demand)

    # Northwest-corner start: a staircase spanning tree with m+n-1 cells.
    alloc: dict[tuple[int, int], Fraction] = {}
    basis: set[tuple[int, int]] = set()
    ra = list(supply)
    cb = list(demand)
    i = j = 0
    while True:
        x = min(ra[i], cb[j])
        alloc[(i, j)] = x
        basis.add((i, j))
        ra[i] -= x
        cb[j] -= x
        if i == m - 1 and j == n - 1:
            break
        if ra[i] == 0 and i < m - 1:
            i += 1
        else:
            j += 1

    max_pivots = 50 * (m + n + 1) ** 2
    for _ in range(max_pivots):
        u, v = _duals(costs, basis, m, n)
        entering = None
        for ii in range(m):
            row_cost = costs[ii]
            ui = u[ii]
            for jj in range(n):
                if (ii, jj) not in basis and row_cost[jj] - ui - v[jj] < 0:
                    entering = (ii, jj)
                    break
            if entering:
                break
        if entering is None:
            value = sum((costs[ii][jj] * x for (ii, jj), x in alloc.items()), Fraction(0))
            return value, alloc

        path = _basis_path(basis, entering)
        minus = path[0::2]  # cells whose allocation decreases
        plus = path[1::2]
        theta = min(alloc[c] for c in minus)
        leaving = min(c for c in minus if alloc[c] == theta)
        for c in minus:
            alloc[c] -= theta
        for c in plus:
            alloc[c] += theta
        alloc[entering] = theta
        basis.add(entering)
        basis.discard(leaving)
        del alloc[leaving]
    raise RuntimeError("transportation simplex failed to terminate")


def _duals(costs, basis, m, n):
    """Dual prices from the basis tree, rooted at supply node 0."""
    u: list = [None] * m
    v: list = [None] * n
    row_cells: list[list[int]] = [[] for _ in range(m)]
    col_cells: list[list[int]] = [[] for _ in range(n)]
    for (i, j) in basis:
        row_cells[i].append(j)
        col_cells[j].append(i)
    u[0] = 0
    queue = deque([("r", 0)])
    while queue:
        side, k = queue.popleft()
        if side == "r":
            for j in row_cells[k]:
                if v[j] is None:
                    v[j] = costs[k][j] - u[k]
                    queue.append(("c", j))
        else:
            for i in col_cells[k]:
                if u[i] is None:
                    u[i] = costs[i][k] - v[k]
                    queue.append(("r", i))
    return u, v


def _basis_path(basis, entering):
    """Cells along the unique basis-tree path closing the entering cell's cycle.

    Returned in order from the entering cell's row end to its column end, so
    cells at even positions lose allocation when the entering cell gains.
    """
    i0, j0 = entering
    row_cells: dict[int, list[int]] = {}
    col_cells: dict[int, list[int]] = {}
    for (i, j) in basis:
        row_cells.setdefault(i, []).append(j)
        col_cells.setdefault(j, []).append(i)
    start = ("r", i0)
    goal = ("c", j0)
    parents: dict[tuple[str, int], tuple[tuple[str, int], tuple[int, int]]] = {start: (start, (-1, -1))}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == goal:
            break
        side, k = node
        if side == "r":
            steps = ((("c", j), (k, j)) for j in row_cells.get(k, ()))
        else:
            steps = ((("r", i), (i, k)) for i in col_cells.get(k, ()))
        for nxt, cell in steps:
            if nxt not in parents:
                parents[nxt] = (node, cell)
                queue.append(nxt)
    cells = []
    node = goal
    while node != start:
        node, cell = parents[node]
        cells.append(cell)
    cells.reverse()
    return cells


def dual_feasible(graph: FiniteGraph, phi: Potential) -> bool:
    """True iff ``phi`` changes by at most 1 along every edge."""
    return all(abs(phi.value(u) - phi.value(v)) <= 1 for u, v in graph.edges)


@dataclass(frozen=True)
class DualityReport:
    primal: Fraction
    dual: Fraction
    optimal_certificate: bool
    plan: TransportPlan

    def as_dict(self) -> dict:
        return {
            "primal": str(self.primal),
            "dual": str(self.dual),
            "certificate": self.optimal_certificate,
        }


def verify_duality(graph: FiniteGraph, mu: Measure, nu: Measure, phi: Potential) -> DualityReport:
    """Compare the LP optimum against the value of a feasible potential.

    The certificate flag is True exactly when ``phi`` attains the optimum,
    i.e. when it is an optimal dual solution.
    """
    if not dual_feasible(graph, phi):
        raise InfeasiblePotential("potential jumps by more than 1 across an edge")
    primal, plan = w1_lp(graph, mu, nu)
    dual = sum(((mu.value(v) - nu.value(v)) * phi.value(v)
                for v in set(mu.support()) | set(nu.support())), Fraction(0))
    return DualityReport(primal=primal, dual=dual,
                         optimal_certificate=(primal == dual), plan=plan)


def check_complementary_slackness(graph: FiniteGraph, plan: TransportPlan, phi: Potential) -> bool:
    """Every positive plan entry must descend the potential at full distance."""
    return all(phi.value(u) - phi.value(v) == graph.distance(u, v)
               for (u, v), x in plan.entries.items() if x > 0)
