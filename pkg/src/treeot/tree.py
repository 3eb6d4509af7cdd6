"""Exact 1-Wasserstein distance on finite trees.

Costs are hop counts and every mass, charge, flow value, and potential value
is a :class:`fractions.Fraction`, so all identities in this module hold
exactly. The backbone facts: on a tree there is exactly one flow whose
divergence matches a given zero-sum assignment (the value across an edge is
the net charge on one side), the cost of that flow is the transport distance,
and pairing the assignment with any potential adapted to the flow yields the
same number.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import DuplicateEdge, HasCycle, MassMismatch, NotConnected

RationalLike = Fraction | int | str


def _frac(value: RationalLike) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True)
class Tree:
    """Finite connected acyclic graph over dense vertex indices ``0..n-1``.

    ``labels`` preserves the caller's vertex identifiers; all other structures
    (and all measures/flows/potentials) use the dense indices.
    """

    labels: tuple[Hashable, ...]
    index: dict
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def num_vertices(self) -> int:
        return len(self.labels)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def bfs_distances(self, source: int) -> list[int]:
        """Hop distances from ``source`` to every vertex."""
        dist = [-1] * self.num_vertices
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist


def validate_tree(vertices: Sequence[Hashable], edges: Iterable[tuple]) -> Tree:
    """Check tree axioms and normalize vertex ids to dense indices.

    Raises :class:`DuplicateEdge`, :class:`HasCycle`, or :class:`NotConnected`
    when the input is not a simple connected acyclic graph.
    """
    labels = tuple(vertices)
    if not labels:
        raise ValueError("a tree needs at least one vertex")
    index: dict = {}
    for pos, label in enumerate(labels):
        if label in index:
            raise ValueError(f"duplicate vertex id {label!r}")
        index[label] = pos

    seen: set[tuple[int, int]] = set()
    dense_edges: list[tuple[int, int]] = []
    for a, b in edges:
        if a not in index or b not in index:
            raise ValueError(f"edge ({a!r}, {b!r}) references an unknown vertex")
        u, v = index[a], index[b]
        if u == v:
            raise HasCycle(f"self-loop at vertex {a!r}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"edge ({a!r}, {b!r}) appears more than once")
        seen.add(key)
        dense_edges.append(key)

    n = len(labels)
    if len(dense_edges) > n - 1:
        raise HasCycle(f"{len(dense_edges)} edges on {n} vertices force a cycle")
    if len(dense_edges) < n - 1:
        raise NotConnected(f"{len(dense_edges)} edges cannot connect {n} vertices")

    neighbor_lists: list[list[int]] = [[] for _ in range(n)]
    for u, v in dense_edges:
        neighbor_lists[u].append(v)
        neighbor_lists[v].append(u)
    adjacency = tuple(tuple(sorted(ns)) for ns in neighbor_lists)

    # |E| = |V| - 1, so connectivity also rules out cycles.
    reached = 1
    marked = [False] * n
    marked[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in adjacency[u]:
            if not marked[w]:
                marked[w] = True
                reached += 1
                queue.append(w)
    if reached != n:
        raise NotConnected(f"only {reached} of {n} vertices reachable from vertex 0")

    return Tree(labels=labels, index=index, edges=tuple(dense_edges), adjacency=adjacency)


@dataclass(frozen=True)
class Measure:
    """Finitely supported nonnegative mass function on dense vertex indices."""

    masses: Mapping[int, Fraction]

    def __post_init__(self) -> None:
        cleaned: dict[int, Fraction] = {}
        for v, raw in self.masses.items():
            m = _frac(raw)
            if m < 0:
                raise ValueError(f"negative mass {m} at vertex {v}")
            if m:
                cleaned[int(v)] = m
        object.__setattr__(self, "masses", cleaned)

    def total(self) -> Fraction:
        return sum(self.masses.values(), Fraction(0))

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.masses))

    def value(self, v: int) -> Fraction:
        return self.masses.get(v, Fraction(0))

    def scaled(self, c: RationalLike) -> "Measure":
        c = _frac(c)
        return Measure({v: c * m for v, m in self.masses.items()})


@dataclass(frozen=True)
class Assignment:
    """Signed charges summing to zero (a mass surplus/deficit pattern)."""

    charges: Mapping[int, Fraction]

    def __post_init__(self) -> None:
        cleaned = {int(v): _frac(c) for v, c in self.charges.items() if _frac(c)}
        if sum(cleaned.values(), Fraction(0)) != 0:
            raise ValueError("assignment charges must sum to zero")
        object.__setattr__(self, "charges", cleaned)

    def value(self, v: int) -> Fraction:
        return self.charges.get(v, Fraction(0))

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.charges))


@dataclass(frozen=True)
class Flow:
    """Antisymmetric edge function, stored once per edge on (lo, hi) pairs."""

    values: Mapping[tuple[int, int], Fraction]

    def __post_init__(self) -> None:
        cleaned = {}
        for (u, v), raw in self.values.items():
            x = _frac(raw)
            if u >= v:
                raise ValueError(f"flow keys must be (lo, hi) pairs, got ({u}, {v})")
            if x:
                cleaned[(u, v)] = x
        object.__setattr__(self, "values", cleaned)

    def signed(self, u: int, v: int) -> Fraction:
        """Flow from u to v; antisymmetric, zero on edges it does not mention."""
        if u < v:
            return self.values.get((u, v), Fraction(0))
        return -self.values.get((v, u), Fraction(0))

    def magnitude(self, edge: tuple[int, int]) -> Fraction:
        u, v = edge
        return abs(self.signed(u, v))


@dataclass(frozen=True)
class Potential:
    """Vertex function; feasible when it changes by at most 1 along any edge."""

    values: tuple[Fraction, ...]

    def value(self, v: int) -> Fraction:
        return self.values[v]

    def __getitem__(self, v: int) -> Fraction:
        return self.values[v]

    def is_edge_lipschitz(self, tree: Tree) -> bool:
        return all(abs(self.values[u] - self.values[v]) <= 1 for u, v in tree.edges)


def assignment_from(mu: Measure, nu: Measure) -> Assignment:
    """Difference of two measures with equal totals."""
    if mu.total() != nu.total():
        raise MassMismatch(f"total masses differ: {mu.total()} vs {nu.total()}")
    charges: dict[int, Fraction] = dict(mu.masses)
    for v, m in nu.masses.items():
        charges[v] = charges.get(v, Fraction(0)) - m
    return Assignment(charges)


def _bfs_order(tree: Tree, root: int = 0) -> tuple[list[int], list[int]]:
    """Vertices in BFS order from ``root`` plus the parent of each vertex."""
    parent = [-2] * tree.num_vertices
    parent[root] = -1
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in tree.adjacency[u]:
            if parent[w] == -2:
                parent[w] = u
                order.append(w)
                queue.append(w)
    return order, parent


def unique_flow(tree: Tree, rho: Assignment) -> Flow:
    """The one flow whose divergence equals ``rho``.

    Across each edge the flow carries the net charge of the side cut off by
    removing that edge; a single post-order sweep accumulates those subtree
    sums in O(n) exact operations.
    """
    n = tree.num_vertices
    for v in rho.support():
        if not 0 <= v < n:
            raise ValueError(f"assignment references vertex {v} outside the tree")
    order, parent = _bfs_order(tree, root=0)
    subtree = [rho.value(v) for v in range(n)]
    values: dict[tuple[int, int], Fraction] = {}
    for v in reversed(order):
        p = parent[v]
        if p < 0:
            continue
        # Flow from v's side into p carries the whole subtree charge.
        if v < p:
            values[(v, p)] = subtree[v]
        else:
            values[(p, v)] = -subtree[v]
        subtree[p] += subtree[v]
    return Flow(values)


def divergence(tree: Tree, flow: Flow) -> tuple[Fraction, ...]:
    """Net outflow at every vertex."""
    div = [Fraction(0)] * tree.num_vertices
    for (u, v), x in flow.values.items():
        div[u] += x
        div[v] -= x
    return tuple(div)


def flow_cost(flow: Flow) -> Fraction:
    """Total size of the flow: the sum of |flow| over all edges."""
    return sum((abs(x) for x in flow.values.values()), Fraction(0))


def good_potential(tree: Tree, flow: Flow, root: int = 0) -> Potential:
    """Potential adapted to ``flow``: drops by 1 along each flow-carrying edge
    (in the flow direction) and stays constant across flowless edges.

    The result is pinned to 0 at ``root``; any other choice differs by a
    constant and pairs identically with zero-sum assignments.
    """
    order, parent = _bfs_order(tree, root=root)
    values: list[Fraction | None] = [None] * tree.num_vertices
    values[root] = Fraction(0)
    for v in order:
        p = parent[v]
        if p < 0:
            continue
        s = flow.signed(p, v)
        if s > 0:
            values[v] = values[p] - 1
        elif s < 0:
            values[v] = values[p] + 1
        else:
            values[v] = values[p]
    return Potential(tuple(values))  # type: ignore[arg-type]


def potential_value(rho: Assignment, phi: Potential) -> Fraction:
    """Pairing sum(phi(v) * rho(v)); equals the flow cost for adapted phi."""
    return sum((phi.value(v) * c for v, c in rho.charges.items()), Fraction(0))


def w1_tree(tree: Tree, mu: Measure, nu: Measure) -> Fraction:
    """Exact transport distance between equal-mass measures on a tree."""
    rho = assignment_from(mu, nu)
    return flow_cost(unique_flow(tree, rho))
