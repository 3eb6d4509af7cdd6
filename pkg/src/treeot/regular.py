"""Radially symmetric measures on the infinite (q+1)-regular tree.

Two centers X and Y at distance d are fixed. Every vertex is located by the
index i of its nearest path vertex between X and Y and its height h above it,
so that dist(X, v) = i + h and dist(Y, v) = d - i + h. A measure whose mass
depends only on the distance to its center is described by a profile
s(0), s(1), ..., and the transport distance between the X- and Y-centered
copies has two closed evaluations: a potential-weighted sum over vertex
classes and a flow-magnitude sum over edge classes. Both are implemented
here, along with finite truncations of the tree large enough to reproduce
the infinite-tree answer exactly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from .errors import InvalidParams, TruncationTooSmall
from .tree import Flow, Measure, Potential, Tree, validate_tree

RationalLike = Fraction | int | str


def _frac(value: RationalLike) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True)
class PairGeometry:
    """Branching number q >= 2 and center separation d >= 1."""

    q: int
    d: int

    def __post_init__(self) -> None:
        if self.q == 1:
            raise InvalidParams(
                "q = 1 is the two-sided line, where the transport distance between "
                "the two copies of any radial profile equals dist(X, Y) for every "
                "time step; nothing to compute (see asymptotics.line_w1)")
        if self.q < 2:
            raise InvalidParams(f"branching number q must be >= 2, got {self.q}")
        if self.d < 1:
            raise InvalidParams(f"center distance d must be >= 1, got {self.d}")

    @property
    def delta(self) -> int:
        """floor(d / 2)."""
        return self.d // 2

    @property
    def delta_prime(self) -> int:
        """ceil(d / 2)."""
        return (self.d + 1) // 2

    @property
    def half_d(self) -> Fraction:
        return Fraction(self.d, 2)


@dataclass(frozen=True)
class BasepointCoord:
    """Path index i of the nearest X-Y path vertex and height h above it."""

    i: int
    h: int


@dataclass(frozen=True)
class RadialProfile:
    """Nonnegative masses by distance from the center; finite support."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        vals = tuple(_frac(x) for x in self.values)
        if any(x < 0 for x in vals):
            raise ValueError("profile entries must be nonnegative")
        if not any(vals):
            raise ValueError("profile must carry some mass")
        object.__setattr__(self, "values", vals)

    @property
    def support_radius(self) -> int:
        last = 0
        for ell, x in enumerate(self.values):
            if x:
                last = ell
        return last

    def value(self, ell: int) -> Fraction:
        if 0 <= ell < len(self.values):
            return self.values[ell]
        return Fraction(0)


def sphere_size(q: int, radius: int) -> int:
    """Number of vertices at exact distance ``radius`` from a vertex."""
    if radius == 0:
        return 1
    return (q + 1) * q ** (radius - 1)


def ball_size(q: int, radius: int) -> int:
    """Number of vertices within distance ``radius`` of a vertex."""
    return (q ** (radius + 1) + q ** radius - 2) // (q - 1)


def point_mass_profile() -> RadialProfile:
    return RadialProfile((Fraction(1),))


def sphere_profile(q: int, radius: int) -> RadialProfile:
    """Uniform distribution on the radius-``radius`` sphere."""
    if radius == 0:
        return point_mass_profile()
    values = [Fraction(0)] * (radius + 1)
    values[radius] = Fraction(1, sphere_size(q, radius))
    return RadialProfile(tuple(values))


def ball_profile(q: int, radius: int) -> RadialProfile:
    """Uniform distribution on the radius-``radius`` ball."""
    mass = Fraction(1, ball_size(q, radius))
    return RadialProfile((mass,) * (radius + 1))


def profile_total_mass(q: int, profile: RadialProfile) -> Fraction:
    """Total mass of a radial measure: sum of s(l) times the sphere size."""
    return sum((profile.value(ell) * sphere_size(q, ell)
                for ell in range(profile.support_radius + 1)), Fraction(0))


@dataclass(frozen=True)
class TruncatedRegularTree:
    """Finite piece of the regular tree holding centers X and Y.

    Every vertex within ``radius`` of X or Y is present with full degree
    q + 1 unless it sits on the truncation boundary.
    """

    geometry: PairGeometry
    radius: int
    tree: Tree
    x: int
    y: int
    path: tuple[int, ...]
    coords: tuple[BasepointCoord, ...]

    def coord(self, v: int) -> BasepointCoord:
        return self.coords[v]


def build_truncated_tree(q: int, d: int, radius: int) -> TruncatedRegularTree:
    """Truncation of the regular tree containing balls of ``radius`` around X and Y."""
    geometry = PairGeometry(q, d)
    if radius < 0:
        raise InvalidParams(f"truncation radius must be >= 0, got {radius}")

    edges: list[tuple[int, int]] = [(i, i + 1) for i in range(d)]
    coords: list[BasepointCoord] = [BasepointCoord(i, 0) for i in range(d + 1)]
    queue: deque[int] = deque()

    def want_child(i: int, child_h: int) -> bool:
        return min(i + child_h, d - i + child_h) <= radius

    next_id = d + 1
    for i in range(d + 1):
        missing = q if i in (0, d) else q - 1
        if not want_child(i, 1):
            continue
        for _ in range(missing):
            coords.append(BasepointCoord(i, 1))
            edges.append((i, next_id))
            queue.append(next_id)
            next_id += 1
    while queue:
        v = queue.popleft()
        c = coords[v]
        if not want_child(c.i, c.h + 1):
            continue
        for _ in range(q):
            coords.append(BasepointCoord(c.i, c.h + 1))
            edges.append((v, next_id))
            queue.append(next_id)
            next_id += 1

    tree = validate_tree(range(next_id), edges)
    return TruncatedRegularTree(geometry=geometry, radius=radius, tree=tree,
                                x=0, y=d, path=tuple(range(d + 1)),
                                coords=tuple(coords))


def basepoint_coord(truncation: TruncatedRegularTree, v: int) -> BasepointCoord:
    """Coordinates of a vertex relative to the X-Y path."""
    return truncation.coords[v]


def radial_measure(truncation: TruncatedRegularTree, center: int, profile: RadialProfile) -> Measure:
    """Measure assigning mass s(dist(center, v)) to every vertex v.

    Raises :class:`TruncationTooSmall` when the truncation clips any sphere
    inside the profile's support.
    """
    q = truncation.geometry.q
    dist = truncation.tree.bfs_distances(center)
    top = profile.support_radius
    counts = [0] * (top + 1)
    masses: dict[int, Fraction] = {}
    for v, ell in enumerate(dist):
        if ell <= top:
            counts[ell] += 1
            mass = profile.value(ell)
            if mass:
                masses[v] = mass
    for ell in range(top + 1):
        if counts[ell] != sphere_size(q, ell):
            raise TruncationTooSmall(
                f"distance-{ell} sphere around vertex {center} has {counts[ell]} "
                f"vertices, expected {sphere_size(q, ell)}; enlarge the truncation")
    return Measure(masses)


def radial_potential(coord: BasepointCoord, geometry: PairGeometry) -> Fraction:
    """Closed-form potential adapted to the X-to-Y flow of any radial profile.

    Equals d/2 - i + h on the X half (i <= d/2) and d/2 - i - h on the Y half.
    """
    base = geometry.half_d - coord.i
    if 2 * coord.i <= geometry.d:
        return base + coord.h
    return base - coord.h


def radial_potential_field(truncation: TruncatedRegularTree) -> Potential:
    """The closed-form potential evaluated at every vertex of a truncation."""
    geom = truncation.geometry
    return Potential(tuple(radial_potential(c, geom) for c in truncation.coords))


def w1_radial_formula(profile: RadialProfile, geometry: PairGeometry) -> Fraction:
    """Transport distance between the X- and Y-centered copies of a profile,
    as the potential-weighted sum over vertex classes.

    Three blocks: vertices hanging above X or Y, path vertices strictly
    between them, and vertices hanging above interior path vertices.
    """
    q, d = geometry.q, geometry.d
    s = profile.value
    top = profile.support_radius
    half_d = geometry.half_d

    s1 = 2 * sum((q ** h * (s(h) - s(h + d)) * (half_d + h)
                  for h in range(top + 1)), Fraction(0))
    s2 = 2 * sum(((s(i) - s(d - i)) * (half_d - i)
                  for i in range(1, geometry.delta + 1)), Fraction(0))
    s3 = 2 * sum(((q - 1) * q ** (h - 1) * (s(i + h) - s(d - i + h)) * (half_d - i + h)
                  for i in range(1, geometry.delta + 1)
                  for h in range(1, top + 1)), Fraction(0))
    return s1 + s2 + s3


def w1_radial_flow_formula(profile: RadialProfile, geometry: PairGeometry) -> Fraction:
    """Same distance as :func:`w1_radial_formula`, summed edge class by edge
    class over flow magnitudes instead of vertex class by vertex class.

    Edge classes: edges above X or Y, edges above interior path vertices, and
    the d path edges themselves. All inner sums terminate at the profile's
    support radius because every further term vanishes.
    """
    q, d = geometry.q, geometry.d
    s = profile.value
    top = profile.support_radius

    e1 = 2 * sum((q ** (h + i) * (s(h + i) - s(d + h + i))
                  for h in range(top + 1)
                  for i in range(1, top - h + 1)), Fraction(0))

    e2 = 2 * sum(((q - 1) * q ** (h + i - 1) * (s(b + h + i) - s(d - b + h + i))
                  for b in range(1, (d - 1) // 2 + 1)
                  for h in range(top + 1)
                  for i in range(1, top - b - h + 1)), Fraction(0))

    e3 = Fraction(0)
    for a in range(d):
        e3 += sum((q ** h * (s(h) - s(d + h)) for h in range(top + 1)), Fraction(0))
        e3 += sum((s(i) - s(d - i) for i in range(1, a + 1)), Fraction(0))
        e3 += sum(((q - 1) * q ** (h - 1) * (s(i + h) - s(d - i + h))
                   for i in range(1, a + 1)
                   for h in range(1, top + 1)), Fraction(0))
    return e1 + e2 + e3


def flow_direction_check(truncation: TruncatedRegularTree, flow: Flow) -> bool:
    """Verify the sign pattern of the flow between two radial copies.

    Off the X-Y path the flow points toward the path on the X half, vanishes
    at the midpoint classes, and points away from the path on the Y half; on
    the path it travels strictly from X to Y.
    """
    d = truncation.geometry.d
    coords = truncation.coords
    for u, v in truncation.tree.edges:
        cu, cv = coords[u], coords[v]
        if cu.h == 0 and cv.h == 0:
            lo = min(cu.i, cv.i)
            if flow.signed(truncation.path[lo], truncation.path[lo + 1]) <= 0:
                return False
            continue
        child, parent = (u, v) if cu.h > cv.h else (v, u)
        toward_path = flow.signed(child, parent)
        i2 = 2 * coords[child].i
        if i2 < d and toward_path < 0:
            return False
        if i2 == d and toward_path != 0:
            return False
        if i2 > d and toward_path > 0:
            return False
    return True
