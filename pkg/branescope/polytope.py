"""
Lattice polytopes in the character lattice M.

A polytope is kept in both representations: its vertices and its facets
(inward primitive normal v_F, offset c_F) with <m, v_F> >= -c_F inside.
Facets are always recomputed from the vertices.
"""
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from sympy import Poly, interpolate, symbols

from branescope.exceptions import BranescopeError, DegeneratePolytope, NonReflexive, UnsupportedDimension
from branescope.logger import get_logger
from branescope.zlinalg import dot, integer_kernel_basis, rank_rational

logger = get_logger(__name__)

MAX_DIM = 4

CharacterPoint = Tuple[int, ...]


@dataclass(frozen=True)
class Facet:
    """Facet {m : <m, normal> = -offset} of a lattice polytope."""

    normal: Tuple[int, ...]
    offset: int

    def value(self, m: Sequence[int]) -> int:
        """Lattice distance of m from the facet hyperplane, >= 0 inside."""
        return dot(m, self.normal) + self.offset


@dataclass(frozen=True)
class LatticePolytope:
    dim: int
    vertices: Tuple[CharacterPoint, ...]
    facets: Tuple[Facet, ...]
    name: str = field(default="", compare=False)

    def contains(self, m: Sequence[int]) -> bool:
        return all(f.value(m) >= 0 for f in self.facets)

    def facet_vertices(self, index: int) -> List[CharacterPoint]:
        facet = self.facets[index]
        return [v for v in self.vertices if facet.value(v) == 0]

    def vertex_facets(self, vertex: Sequence[int]) -> List[int]:
        """Indices of the facets through a vertex."""
        return [i for i, f in enumerate(self.facets) if f.value(vertex) == 0]

    @property
    def normals(self) -> np.ndarray:
        return np.array([f.normal for f in self.facets], dtype=np.int64)

    @property
    def offsets(self) -> np.ndarray:
        return np.array([f.offset for f in self.facets], dtype=np.int64)


def _check_points(vs: Iterable[Sequence[int]]) -> List[CharacterPoint]:
    points = []
    for v in vs:
        point = tuple(int(x) for x in v)
        if any(point[i] != v[i] for i in range(len(point))):
            raise DegeneratePolytope(f"Vertex {list(v)} is not a lattice point")
        if point not in points:
            points.append(point)

    if not points:
        raise DegeneratePolytope("Polytope needs at least one vertex")

    n = len(points[0])
    if any(len(p) != n for p in points):
        raise DegeneratePolytope("Vertices have different dimensions")
    if n == 0:
        raise DegeneratePolytope("Polytope dimension must be positive")
    if n > MAX_DIM:
        raise UnsupportedDimension(f"Dimension {n} exceeds the supported maximum {MAX_DIM}")

    return points


def _supporting_hyperplanes(points: List[CharacterPoint], n: int) -> List[Facet]:
    facets = set()

    for subset in combinations(points, n):
        base = subset[0]
        diffs = [[a - b for a, b in zip(q, base)] for q in subset[1:]]
        kernel = integer_kernel_basis(diffs, n)
        if len(kernel) != 1:
            continue

        normal = kernel[0]
        offset = -dot(base, normal)
        values = [dot(p, normal) + offset for p in points]

        if all(x >= 0 for x in values):
            facets.add(Facet(normal, offset))
        elif all(x <= 0 for x in values):
            facets.add(Facet(tuple(-x for x in normal), -offset))

    return sorted(facets, key=lambda f: f.normal, reverse=True)


def from_vertices(vs: Iterable[Sequence[int]], name: str = "") -> LatticePolytope:
    """
    Convex hull of lattice points.

    Args:
        vs: Integer points; redundant points are dropped
        name: Optional label carried into reports

    Returns:
        LatticePolytope with facets in descending lexicographic order of
        their normals and vertices in order of first appearance
    """
    points = _check_points(vs)
    n = len(points[0])

    base = points[0]
    affine_rank = rank_rational([[a - b for a, b in zip(p, base)] for p in points[1:]] or [[0] * n])
    if affine_rank < n:
        raise DegeneratePolytope(f"Points span an affine space of dimension {affine_rank} < {n}")

    facets = _supporting_hyperplanes(points, n)

    vertices = []
    for p in points:
        tight = [f.normal for f in facets if f.value(p) == 0]
        if tight and rank_rational(tight) == n:
            vertices.append(p)

    logger.debug("hull of %d points: %d vertices, %d facets", len(points), len(vertices), len(facets))
    return LatticePolytope(n, tuple(vertices), tuple(facets), name)


def is_reflexive(p: LatticePolytope) -> bool:
    """
    Check that the origin is interior and every facet sits at lattice distance 1.

    Args:
        p: LatticePolytope

    Returns:
        True iff c_F == 1 for every facet
    """
    if any(f.offset <= 0 for f in p.facets):
        return False
    return all(f.offset == 1 for f in p.facets)


def polar_dual(p: LatticePolytope) -> LatticePolytope:
    """
    Polar dual conv{v_F} of a reflexive polytope.

    Vertices of the dual come in the facet order of p.
    """
    if not is_reflexive(p):
        raise NonReflexive(f"Polytope {p.name or list(p.vertices)} is not reflexive")
    name = f"{p.name}_dual" if p.name else ""
    return from_vertices([f.normal for f in p.facets], name)


def dilate(p: LatticePolytope, k: int) -> LatticePolytope:
    """Scale p by a positive integer k."""
    if k < 1:
        raise DegeneratePolytope(f"Dilation factor must be positive, got {k}")
    if k == 1:
        return p

    vertices = tuple(tuple(k * x for x in v) for v in p.vertices)
    facets = tuple(Facet(f.normal, k * f.offset) for f in p.facets)
    name = f"{k}{p.name}" if p.name else ""
    return LatticePolytope(p.dim, vertices, facets, name)


def _scan_box(p: LatticePolytope, strict: bool = False) -> List[CharacterPoint]:
    lows = [min(v[i] for v in p.vertices) for i in range(p.dim)]
    highs = [max(v[i] for v in p.vertices) for i in range(p.dim)]

    extent = max(max(abs(x) for x in lows + highs), 1) * max(abs(x) for f in p.facets for x in f.normal) * p.dim
    if extent + max(abs(f.offset) for f in p.facets) >= 2**62:
        raise BranescopeError("Polytope is too large for 64-bit lattice-point scanning")

    grid = np.array(
        list(product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs)))),
        dtype=np.int64,
    )
    values = grid @ p.normals.T + p.offsets
    mask = (values > 0).all(axis=1) if strict else (values >= 0).all(axis=1)

    return [tuple(int(x) for x in row) for row in grid[mask]]


def lattice_points(p: LatticePolytope) -> List[CharacterPoint]:
    """
    All lattice points of p in lexicographic order.

    Args:
        p: LatticePolytope

    Returns:
        list of integer tuples
    """
    return _scan_box(p)


def interior_points(p: LatticePolytope) -> List[CharacterPoint]:
    return _scan_box(p, strict=True)


def ehrhart_counts(p: LatticePolytope, k_max: int) -> List[int]:
    """Lattice-point counts of kp for k = 0..k_max (k = 0 counts the origin)."""
    return [1] + [len(lattice_points(dilate(p, k))) for k in range(1, k_max + 1)]


def ehrhart_check(p: LatticePolytope) -> bool:
    """
    Check that the counts for k = 0..n+2 come from a polynomial of degree n.

    The (n+1)-st finite differences must vanish.
    """
    counts = np.array(ehrhart_counts(p, p.dim + 2), dtype=np.int64)
    return bool(not np.diff(counts, n=p.dim + 1).any())


def ehrhart_polynomial(p: LatticePolytope) -> Poly:
    """Ehrhart polynomial interpolated through k = 0..n; leading coefficient is the volume."""
    k = symbols("k")
    counts = ehrhart_counts(p, p.dim)
    return Poly(interpolate(list(enumerate(counts)), k), k)


def same_vertex_set(p: LatticePolytope, q: LatticePolytope) -> bool:
    return set(p.vertices) == set(q.vertices)
