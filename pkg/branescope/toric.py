"""
The toric variety of a lattice polytope.

The normal fan has one ray per facet (the inward facet normal, in facet
order) and one maximal cone per vertex, made of the normals of the facets
through that vertex. Torus-invariant divisors are integer vectors indexed by
ray order.
"""
from dataclasses import dataclass
from itertools import combinations, product
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix, Rational

from branescope.exceptions import (
    DegeneratePolytope,
    NonReflexive,
    NonSimplicialFan,
    NotCartier,
    NotInTorus,
    UnsupportedDimension,
    UsageError,
)
from branescope.logger import get_logger
from branescope.polytope import (
    CharacterPoint,
    LatticePolytope,
    dilate,
    is_reflexive,
    lattice_points,
)
from branescope.zlinalg import dot, primitive_vector, rank_rational, solve_rational

logger = get_logger(__name__)


@dataclass(frozen=True)
class NormalFan:
    """
    Complete fan dual to a polytope.

    Attributes:
        dim: Lattice dimension n
        rays: Primitive ray generators u_rho, one per facet
        cones: Sorted ray indices of each maximal cone, one per vertex
        vertices: Polytope vertex of each maximal cone
        offsets: Facet offsets c_F, in ray order
    """

    dim: int
    rays: Tuple[Tuple[int, ...], ...]
    cones: Tuple[Tuple[int, ...], ...]
    vertices: Tuple[CharacterPoint, ...]
    offsets: Tuple[int, ...]

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def vertex_of_cone(self, index: int) -> CharacterPoint:
        return self.vertices[index]

    def cone_of_vertex(self, vertex: Sequence[int]) -> int:
        return self.vertices.index(tuple(vertex))


@dataclass(frozen=True)
class TorusDivisor:
    """The divisor sum(a_rho D_rho), coefficients in ray order."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "TorusDivisor") -> "TorusDivisor":
        _check_same_length(self, other)
        return TorusDivisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TorusDivisor") -> "TorusDivisor":
        _check_same_length(self, other)
        return TorusDivisor(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "TorusDivisor":
        return TorusDivisor(tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> "TorusDivisor":
        return TorusDivisor(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @classmethod
    def parse(cls, text: str, fan: Optional[NormalFan] = None) -> "TorusDivisor":
        """
        Parse a comma-separated coefficient list such as "1,0,-1".

        Args:
            text: Coefficients in ray order
            fan: If given, the coefficient count must match its rays

        Returns:
            TorusDivisor
        """
        try:
            coeffs = tuple(int(x) for x in text.replace(" ", "").split(","))
        except ValueError:
            raise UsageError(f"Invalid divisor '{text}': expected comma-separated integers")

        if fan is not None and len(coeffs) != fan.n_rays:
            raise UsageError(
                f"Divisor '{text}' has {len(coeffs)} coefficients, the fan has {fan.n_rays} rays"
            )
        return cls(coeffs)


def _check_same_length(a: TorusDivisor, b: TorusDivisor):
    if len(a) != len(b):
        raise ValueError("divisors live on different fans")


@dataclass(frozen=True)
class CartierData:
    """Local characters m_sigma with <m_sigma, u_rho> = -a_rho on the rays of sigma."""

    divisor: TorusDivisor
    characters: Tuple[Tuple, ...]

    def character(self, cone: int):
        return self.characters[cone]


@dataclass(frozen=True)
class EmbeddingData:
    """Monomials of (n-1)P, the coordinates of the map to P^(N-1)."""

    dim: int
    monomials: Tuple[CharacterPoint, ...]

    @property
    def size(self) -> int:
        return len(self.monomials)

    @property
    def target_dim(self) -> int:
        return self.size - 1


def normal_fan(p: LatticePolytope) -> NormalFan:
    """
    Normal fan of a full-dimensional polytope with the origin in its interior.

    Args:
        p: LatticePolytope

    Returns:
        NormalFan with rays in facet order and cones in vertex order
    """
    if any(f.offset <= 0 for f in p.facets):
        raise DegeneratePolytope("The origin is not an interior point of the polytope")

    cones = tuple(tuple(p.vertex_facets(v)) for v in p.vertices)
    fan = NormalFan(
        dim=p.dim,
        rays=tuple(f.normal for f in p.facets),
        cones=cones,
        vertices=tuple(p.vertices),
        offsets=tuple(f.offset for f in p.facets),
    )
    logger.debug("normal fan: %d rays, %d maximal cones", fan.n_rays, len(cones))
    return fan


def is_simplicial(f: NormalFan) -> bool:
    """True iff every maximal cone is spanned by exactly n independent rays."""
    for cone in f.cones:
        if len(cone) != f.dim:
            return False
        if rank_rational([f.rays[i] for i in cone]) != f.dim:
            return False
    return True


def _require_simplicial(f: NormalFan):
    if not is_simplicial(f):
        raise NonSimplicialFan("The fan has a maximal cone that is not simplicial")


def contains(f: NormalFan, cone: int, u: Sequence) -> bool:
    """
    Cone membership.

    u lies in the cone of vertex v iff v minimises <., u> over the vertices.
    """
    v = f.vertices[cone]
    return all(dot(w, u) >= dot(v, u) for w in f.vertices)


def is_complete(f: NormalFan, samples: int = 200, seed: int = 0) -> bool:
    """Check that random rational vectors each lie in some maximal cone."""
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        nums = rng.integers(-50, 51, size=f.dim)
        den = int(rng.integers(1, 20))
        u = [Rational(int(x), den) for x in nums]
        if not any(contains(f, i, u) for i in range(len(f.cones))):
            return False
    return True


def canonical_divisor(f: NormalFan) -> TorusDivisor:
    """K_X = -sum D_rho."""
    return TorusDivisor((-1,) * f.n_rays)


def anticanonical_divisor(f: NormalFan) -> TorusDivisor:
    return TorusDivisor((1,) * f.n_rays)


def polytope_divisor(f: NormalFan) -> TorusDivisor:
    """D_P = sum c_F D_F."""
    return TorusDivisor(f.offsets)


def _check_divisor(f: NormalFan, d: TorusDivisor):
    if len(d) != f.n_rays:
        raise UsageError(f"Divisor has {len(d)} coefficients, the fan has {f.n_rays} rays")


def rational_cartier_data(f: NormalFan, d: TorusDivisor) -> Tuple[Tuple[Rational, ...], ...]:
    """
    Q-Cartier data of d: per cone the rational m_sigma.

    Args:
        f: Simplicial fan
        d: TorusDivisor

    Returns:
        tuple of rational vectors, one per maximal cone
    """
    _check_divisor(f, d)
    _require_simplicial(f)

    characters = []
    for cone in f.cones:
        a = [f.rays[i] for i in cone]
        b = [-d.coeffs[i] for i in cone]
        characters.append(solve_rational(a, b))
    return tuple(characters)


def cartier_data(f: NormalFan, d: TorusDivisor) -> CartierData:
    """
    Integral Cartier data of d.

    Args:
        f: Simplicial fan
        d: TorusDivisor

    Returns:
        CartierData with one integer character per cone
    """
    characters = []
    for index, m in enumerate(rational_cartier_data(f, d)):
        if any(x.q != 1 for x in m):
            raise NotCartier(
                f"Divisor {list(d.coeffs)} is not Cartier on the cone of vertex {list(f.vertices[index])}"
            )
        characters.append(tuple(int(x) for x in m))
    return CartierData(d, tuple(characters))


def _convexity_gaps(f: NormalFan, d: TorusDivisor) -> List[Tuple[int, int, Rational]]:
    """(cone, ray, <m_sigma, u_rho> + a_rho) for every ray outside each cone."""
    gaps = []
    for index, m in enumerate(rational_cartier_data(f, d)):
        for rho, u in enumerate(f.rays):
            if rho not in f.cones[index]:
                gaps.append((index, rho, dot(m, u) + d.coeffs[rho]))
    return gaps


def is_nef(f: NormalFan, d: TorusDivisor) -> bool:
    """Support function convex: <m_sigma, u_rho> >= -a_rho everywhere."""
    return all(gap >= 0 for _, _, gap in _convexity_gaps(f, d))


def is_ample(f: NormalFan, d: TorusDivisor) -> bool:
    """Support function strictly convex."""
    return all(gap > 0 for _, _, gap in _convexity_gaps(f, d))


def divisor_polytope_points(f: NormalFan, d: TorusDivisor) -> List[CharacterPoint]:
    """
    Lattice points of P_d, the characters of the global sections of O(d).

    Args:
        f: NormalFan
        d: TorusDivisor

    Returns:
        list of integer points in lexicographic order
    """
    _check_divisor(f, d)
    n = f.dim
    corners = []
    for subset in combinations(range(f.n_rays), n):
        m = solve_rational([f.rays[i] for i in subset], [-d.coeffs[i] for i in subset])
        if m is not None and all(dot(m, u) + d.coeffs[rho] >= 0 for rho, u in enumerate(f.rays)):
            corners.append(m)

    if not corners:
        return []

    lows = [int(np.floor(float(min(c[i] for c in corners)))) for i in range(n)]
    highs = [int(np.ceil(float(max(c[i] for c in corners)))) for i in range(n)]
    points = []
    for m in product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs))):
        if all(dot(m, u) + d.coeffs[rho] >= 0 for rho, u in enumerate(f.rays)):
            points.append(m)
    return points


def _dual_cone_generators(f: NormalFan, cone: int) -> Tuple[List[Tuple[int, ...]], List[Tuple[int, ...]]]:
    """
    Ray generators of the dual cone and the nonzero lattice points of their
    half-open fundamental parallelepiped; together they generate the dual
    cone's lattice semigroup.
    """
    n = f.dim
    u = Matrix([list(f.rays[i]) for i in f.cones[cone]])
    inverse = u.inv()

    rays = [primitive_vector(list(inverse[:, j])) for j in range(n)]
    w = Matrix([list(r) for r in rays]).T
    w_inverse = w.inv()

    corners = [[sum(rays[j][i] for j in subset) for i in range(n)]
               for k in range(n + 1) for subset in combinations(range(n), k)]
    lows = [min(c[i] for c in corners) for i in range(n)]
    highs = [max(c[i] for c in corners) for i in range(n)]

    box = []
    for x in product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs))):
        if not any(x):
            continue
        lam = w_inverse * Matrix(x)
        if all(0 <= c < 1 for c in lam):
            box.append(tuple(x))

    return rays, box


def is_very_ample(f: NormalFan, d: TorusDivisor) -> bool:
    """
    Very ampleness of a Cartier divisor.

    d must be ample, and at each vertex m_sigma of P_d the differences
    (P_d & M) - m_sigma must generate the lattice semigroup of the dual cone.
    Generation is certified degree by degree, the degree being the sum of the
    pairings with the rays of the cone, up to the largest degree of a dual
    cone generator.

    Args:
        f: Simplicial fan
        d: Cartier divisor

    Returns:
        True iff d is very ample
    """
    data = cartier_data(f, d)
    if not is_ample(f, d):
        return False

    points = divisor_polytope_points(f, d)

    for index, vertex in enumerate(data.characters):
        cone_rays = [f.rays[i] for i in f.cones[index]]

        def degree(x):
            return sum(dot(x, u) for u in cone_rays)

        rays, box = _dual_cone_generators(f, index)
        targets = rays + box
        bound = max(degree(t) for t in targets)

        steps = {tuple(a - b for a, b in zip(m, vertex)) for m in points}
        steps = [s for s in steps if any(s) and degree(s) <= bound]

        reached = {(0,) * f.dim}
        frontier = list(reached)
        while frontier:
            grown = []
            for x in frontier:
                for s in steps:
                    y = tuple(a + b for a, b in zip(x, s))
                    if y not in reached and degree(y) <= bound:
                        reached.add(y)
                        grown.append(y)
            frontier = grown

        missing = [t for t in targets if t not in reached]
        if missing:
            logger.debug("cone %d: semigroup misses %s", index, missing)
            return False

    return True


def embedding(p: LatticePolytope) -> EmbeddingData:
    """
    The monomial embedding given by the lattice points of (n-1)P.

    Args:
        p: Reflexive polytope of dimension >= 2

    Returns:
        EmbeddingData; N coordinates give a map to P^(N-1)
    """
    if not is_reflexive(p):
        raise NonReflexive("The embedding is defined for reflexive polytopes only")
    if p.dim < 2:
        raise UnsupportedDimension("The embedding needs dimension at least 2")

    monomials = lattice_points(dilate(p, p.dim - 1))
    return EmbeddingData(p.dim, tuple(monomials))


def evaluate_embedding(e: EmbeddingData, z: Sequence) -> Tuple[Rational, ...]:
    """
    Homogeneous coordinates (chi_m(z)) of a torus point.

    Args:
        e: EmbeddingData
        z: Nonzero rational coordinates

    Returns:
        tuple of Rationals, one per monomial
    """
    z = [Rational(x) for x in z]
    if len(z) != e.dim:
        raise NotInTorus(f"Torus points have {e.dim} coordinates, got {len(z)}")
    if any(x == 0 for x in z):
        raise NotInTorus(f"Point {[str(x) for x in z]} has a zero coordinate")

    coordinates = []
    for m in e.monomials:
        value = Rational(1)
        for x, a in zip(z, m):
            value *= x**a
        coordinates.append(value)
    return tuple(coordinates)


def projectively_equal(a: Sequence, b: Sequence) -> bool:
    """Equality of homogeneous coordinate vectors up to a common scalar."""
    if len(a) != len(b):
        return False
    pivot = next((i for i, x in enumerate(a) if x != 0), None)
    if pivot is None or b[pivot] == 0:
        return False
    return all(x * b[pivot] == y * a[pivot] for x, y in zip(a, b))
