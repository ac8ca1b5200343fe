"""
Cohomology of torus-invariant line bundles on simplicial toric varieties.

H^i(X, O(D)) splits into graded pieces indexed by characters m. The piece
at m is the reduced cohomology H~^(i-1) of the full subcomplex of the fan on
the rays rho with <m, u_rho> < -a_rho. Simplices are ray-index tuples in
lexicographic order, so every matrix built here is reproducible.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from branescope.exceptions import BranescopeError, NotASubcomplex
from branescope.logger import get_logger, log_error
from branescope.toric import NormalFan, TorusDivisor, rational_cartier_data
from branescope.zlinalg import int_matrix, integer_kernel_basis, rank_mod_p, rank_rational

logger = get_logger(__name__)

Simplex = Tuple[int, ...]
Character = Tuple[int, ...]


@dataclass(frozen=True)
class SupportComplex:
    """
    Simplicial complex on ray indices.

    faces[k] holds the k-simplices (k+1 vertices) in lexicographic order.
    The empty complex has no faces but still has the empty simplex.
    """

    faces: Tuple[Tuple[Simplex, ...], ...] = ()

    @classmethod
    def from_maximal_faces(cls, maximal: Sequence[Sequence[int]]) -> "SupportComplex":
        closure = set()
        for face in maximal:
            face = tuple(sorted(face))
            for k in range(1, len(face) + 1):
                closure.update(combinations(face, k))

        top = max((len(s) for s in closure), default=0)
        faces = tuple(
            tuple(sorted(s for s in closure if len(s) == k + 1)) for k in range(top)
        )
        return cls(faces)

    @classmethod
    def full_subcomplex(cls, fan: NormalFan, support: FrozenSet[int]) -> "SupportComplex":
        """Faces of the fan (subsets of cone ray sets) using only rays in support."""
        return _full_subcomplex(fan, frozenset(support))

    @property
    def dim(self) -> int:
        return len(self.faces) - 1

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(s[0] for s in self.faces[0]) if self.faces else ()

    def simplices(self, k: int) -> Tuple[Simplex, ...]:
        if k == -1:
            return ((),)
        if 0 <= k < len(self.faces):
            return self.faces[k]
        return ()

    def __contains__(self, simplex) -> bool:
        simplex = tuple(simplex)
        return simplex in self.simplices(len(simplex) - 1)

    def is_subcomplex_of(self, other: "SupportComplex") -> bool:
        return all(s in other for faces in self.faces for s in faces)


@lru_cache(maxsize=4096)
def _full_subcomplex(fan: NormalFan, support: FrozenSet[int]) -> SupportComplex:
    return SupportComplex.from_maximal_faces(
        [[i for i in cone if i in support] for cone in fan.cones]
    )


def _index(simplices: Sequence[Simplex]) -> Dict[Simplex, int]:
    return {s: i for i, s in enumerate(simplices)}


def coboundary_matrix(c: SupportComplex, k: int) -> List[List[int]]:
    """
    Matrix of the coboundary C^k -> C^(k+1) of the augmented cochain complex.

    Rows are (k+1)-simplices, columns k-simplices. Removing the j-th vertex
    carries the sign (-1)^j; in degree -1 the map is the augmentation.
    """
    rows = c.simplices(k + 1)
    cols = _index(c.simplices(k))
    matrix = [[0] * len(cols) for _ in rows]

    for r, simplex in enumerate(rows):
        if k == -1:
            matrix[r][0] = 1
            continue
        for j in range(len(simplex)):
            face = simplex[:j] + simplex[j + 1:]
            matrix[r][cols[face]] = -1 if j % 2 else 1

    return matrix


def _rank(matrix: List[List[int]]) -> int:
    if not matrix or not matrix[0]:
        return 0
    return rank_rational(matrix)


@lru_cache(maxsize=4096)
def reduced_cohomology_dims(c: SupportComplex, top: Optional[int] = None) -> Tuple[int, ...]:
    """
    Ranks of reduced simplicial cohomology over the rationals.

    Args:
        c: SupportComplex
        top: Highest degree to report (default: dimension of c)

    Returns:
        tuple of ranks for degrees -1..top
    """
    top = c.dim if top is None else top
    ranks = {k: _rank(coboundary_matrix(c, k)) for k in range(-1, top + 1)}
    ranks[-2] = 0

    return tuple(
        len(c.simplices(k)) - ranks[k] - ranks[k - 1] for k in range(-1, top + 1)
    )


def cocycle_basis(c: SupportComplex, k: int) -> List[Tuple[int, ...]]:
    """Integer basis of the k-cocycles (kernel of the coboundary out of C^k)."""
    size = len(c.simplices(k))
    if size == 0:
        return []
    return integer_kernel_basis(coboundary_matrix(c, k), size)


def restriction_matrix(src: SupportComplex, dst: SupportComplex, k: int) -> List[List[int]]:
    """Restriction C^k(dst) -> C^k(src): rows src simplices, columns dst simplices."""
    cols = _index(dst.simplices(k))
    rows = src.simplices(k)
    matrix = [[0] * len(cols) for _ in rows]
    for r, simplex in enumerate(rows):
        matrix[r][cols[simplex]] = 1
    return matrix


def inclusion_map(src: SupportComplex, dst: SupportComplex) -> Dict[int, List[List[int]]]:
    """
    Cochain maps induced by the inclusion src -> dst.

    Args:
        src: Subcomplex
        dst: Ambient complex

    Returns:
        dict degree -> restriction matrix, degrees -1..dim(dst)
    """
    if not src.is_subcomplex_of(dst):
        raise NotASubcomplex("Source complex is not contained in the target complex")
    return {k: restriction_matrix(src, dst, k) for k in range(-1, dst.dim + 1)}


def induced_cohomology_rank(src: SupportComplex, dst: SupportComplex, k: int) -> int:
    """
    Rank of H~^k(dst) -> H~^k(src) induced by the inclusion src -> dst.

    Computed as rank[R.Z | B] - rank[B] with Z the cocycles of dst and B the
    coboundaries of src.
    """
    restriction = inclusion_map(src, dst).get(k, [])
    cocycles = cocycle_basis(dst, k)
    size = len(src.simplices(k))
    if not cocycles or size == 0:
        return 0

    image = int_matrix(restriction, len(dst.simplices(k))) * int_matrix(cocycles).transpose()
    boundaries = coboundary_matrix(src, k - 1)

    combined = [list(a) + list(b) for a, b in zip(image.to_Matrix().tolist(), boundaries)]
    return _rank(combined) - _rank(boundaries)


@dataclass
class GradedCohomology:
    """
    Graded pieces of H^*(X, O(d)).

    Attributes:
        fan: NormalFan
        divisor: TorusDivisor
        pieces: support set -> (character count, dims h^0..h^n)
        characters: support set -> characters, kept for supports with
            cohomology in degrees 1..n-1
        box: (lows, highs) of the scanned character region
    """

    fan: NormalFan
    divisor: TorusDivisor
    pieces: Dict[FrozenSet[int], Tuple[int, Tuple[int, ...]]]
    characters: Dict[FrozenSet[int], Tuple[Character, ...]] = field(default_factory=dict)
    box: Tuple[Tuple[int, ...], Tuple[int, ...]] = ((), ())

    @property
    def totals(self) -> Tuple[int, ...]:
        n = self.fan.dim
        totals = [0] * (n + 1)
        for count, dims in self.pieces.values():
            for i in range(n + 1):
                totals[i] += count * dims[i]
        return tuple(totals)

    def graded_piece(self, m: Sequence[int]) -> Tuple[int, ...]:
        """(h^0_m, ..., h^n_m) for one character."""
        return support_dims(self.fan, support_set(self.fan, self.divisor, m))

    def characters_in_degree(self, i: int) -> List[Tuple[Character, FrozenSet[int]]]:
        """Characters with a nonzero degree-i piece, i in 1..n-1, sorted."""
        found = []
        for support, chars in self.characters.items():
            if self.pieces[support][1][i]:
                found.extend((m, support) for m in chars)
        return sorted(found)


def support_set(f: NormalFan, d: TorusDivisor, m: Sequence[int]) -> FrozenSet[int]:
    """V(d, m) = rays with <m, u_rho> < -a_rho."""
    return frozenset(
        rho for rho, u in enumerate(f.rays)
        if sum(a * b for a, b in zip(m, u)) < -d.coeffs[rho]
    )


@lru_cache(maxsize=4096)
def support_dims(f: NormalFan, support: FrozenSet[int]) -> Tuple[int, ...]:
    """Graded piece dims h^i = H~^(i-1), i = 0..n, of the full subcomplex on support."""
    return reduced_cohomology_dims(SupportComplex.full_subcomplex(f, support), f.dim - 1)


def _search_box(f: NormalFan, d: TorusDivisor) -> Tuple[List[int], List[int]]:
    characters = rational_cartier_data(f, d)
    lows = [int(min(m[i] for m in characters).floor()) - 1 for i in range(f.dim)]
    highs = [int(max(m[i] for m in characters).ceiling()) + 1 for i in range(f.dim)]
    return lows, highs


def _scan(f: NormalFan, d: TorusDivisor, lows, highs):
    """Group every character of the box by its support mask."""
    n = f.dim
    rays = np.array(f.rays, dtype=np.int64)
    bounds = -np.array(d.coeffs, dtype=np.int64)
    weights = np.int64(1) << np.arange(f.n_rays, dtype=np.int64)

    extent = max(max(abs(x) for x in lows + highs), 1) * int(np.abs(rays).max()) * n
    if extent >= 2**62:
        raise BranescopeError("Character region is too large for 64-bit scanning")

    counts: Dict[int, int] = {}
    shell_masks = set()
    kept: Dict[int, List[np.ndarray]] = {}

    tail = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in zip(lows[1:], highs[1:])]
    rest = (
        np.stack(np.meshgrid(*tail, indexing="ij"), axis=-1).reshape(-1, n - 1)
        if n > 1 else np.zeros((1, 0), dtype=np.int64)
    )
    rest_values = rest @ rays[:, 1:].T
    rest_on_shell = (
        ((rest == np.array(lows[1:])) | (rest == np.array(highs[1:]))).any(axis=1)
        if n > 1 else np.zeros(1, dtype=bool)
    )

    for x0 in range(lows[0], highs[0] + 1):
        values = rest_values + x0 * rays[:, 0]
        masks = ((values < bounds) * weights).sum(axis=1)

        on_shell = rest_on_shell | (x0 in (lows[0], highs[0]))
        shell_masks.update(np.unique(masks[on_shell]).tolist())

        unique, per_mask = np.unique(masks, return_counts=True)
        for mask, count in zip(unique.tolist(), per_mask.tolist()):
            counts[mask] = counts.get(mask, 0) + count

            # Only intermediate-degree pieces need their characters
            if any(support_dims(f, _mask_support(mask, f.n_rays))[1:n]):
                chosen = rest[masks == mask]
                kept.setdefault(mask, []).append(
                    np.hstack([np.full((len(chosen), 1), x0, dtype=np.int64), chosen])
                )

    return counts, shell_masks, kept


def _mask_support(mask: int, r: int) -> FrozenSet[int]:
    return frozenset(i for i in range(r) if mask >> i & 1)


@lru_cache(maxsize=32)
def divisor_cohomology(f: NormalFan, d: TorusDivisor, growth_limit: int = 8) -> GradedCohomology:
    """
    Graded cohomology of O_X(d).

    Scans the bounding box of the Q-Cartier data widened by one. If a
    character on the outer shell of the box contributes, the box is widened
    and the scan repeated, at most growth_limit times.

    Args:
        f: Simplicial complete fan
        d: TorusDivisor
        growth_limit: Maximal number of box enlargements

    Returns:
        GradedCohomology
    """
    lows, highs = _search_box(f, d)
    n = f.dim

    for attempt in range(growth_limit + 1):
        counts, shell_masks, kept = _scan(f, d, lows, highs)
        leaking = [
            mask for mask in shell_masks
            if any(support_dims(f, _mask_support(mask, f.n_rays)))
        ]
        if not leaking:
            break

        logger.warning(
            "divisor %s: character box %s..%s leaks at its boundary, growing",
            list(d.coeffs), lows, highs,
        )
        margin = 2 ** attempt
        lows = [x - margin for x in lows]
        highs = [x + margin for x in highs]
    else:
        log_error(
            title="Character search region did not stabilise",
            message=f"divisor {list(d.coeffs)}, last box {lows}..{highs}",
        )
        raise BranescopeError(f"Character search region for divisor {list(d.coeffs)} did not stabilise")

    pieces = {}
    characters = {}
    for mask, count in counts.items():
        support = _mask_support(mask, f.n_rays)
        dims = support_dims(f, support)
        if not any(dims):
            continue
        pieces[support] = (count, dims)
        if mask in kept:
            chars = np.vstack(kept[mask])
            characters[support] = tuple(tuple(int(x) for x in row) for row in chars)

    result = GradedCohomology(f, d, pieces, characters, (tuple(lows), tuple(highs)))
    logger.debug("h(O(%s)) = %s", list(d.coeffs), result.totals)
    return result


def cohomology_dims(f: NormalFan, d: TorusDivisor, growth_limit: int = 8) -> Tuple[int, ...]:
    """(h^0, ..., h^n) of O_X(d)."""
    return divisor_cohomology(f, d, growth_limit).totals


def euler_characteristic(g: GradedCohomology) -> int:
    return sum((-1) ** i * h for i, h in enumerate(g.totals))


@dataclass
class GradedMap:
    """
    A map H^i(source) -> H^i(target) assembled from monomial blocks.

    A block (m_s, m_t, c) is c times the map induced by the inclusion
    V(target, m_t) -> V(source, m_s).
    """

    fan: NormalFan
    degree: int
    source: Dict[Character, FrozenSet[int]]
    target: Dict[Character, FrozenSet[int]]
    blocks: List[Tuple[Character, Character, int]]

    def matrix_rank(self, prime: int) -> int:
        """
        Rank of the induced map on cohomology over GF(prime).

        Rows are the target cochains of degree i-1, columns the source
        cocycles; the target coboundaries are appended to quotient them out.
        """
        k = self.degree - 1
        if not self.source or not self.target or not self.blocks:
            return 0

        col_offset, cocycles, col = {}, {}, 0
        for m in sorted(self.source):
            complex_ = SupportComplex.full_subcomplex(self.fan, self.source[m])
            cocycles[m] = (complex_, cocycle_basis(complex_, k))
            col_offset[m] = col
            col += len(cocycles[m][1])

        row_offset, targets, row = {}, {}, 0
        for m in sorted(self.target):
            complex_ = SupportComplex.full_subcomplex(self.fan, self.target[m])
            targets[m] = complex_
            row_offset[m] = row
            row += len(complex_.simplices(k))

        entries: Dict[int, Dict[int, int]] = {}

        def add(r, c, value):
            value %= prime
            if value:
                entries.setdefault(r, {})
                entries[r][c] = (entries[r].get(c, 0) + value) % prime

        for m_s, m_t, coeff in self.blocks:
            source_complex, basis = cocycles[m_s]
            index = _index(source_complex.simplices(k))
            for r, simplex in enumerate(targets[m_t].simplices(k)):
                position = index[simplex]
                for j, z in enumerate(basis):
                    if z[position]:
                        add(row_offset[m_t] + r, col_offset[m_s] + j, coeff * z[position])

        boundary_entries: Dict[int, Dict[int, int]] = {}
        boundary_col = 0
        for m in sorted(self.target):
            delta = coboundary_matrix(targets[m], k - 1)
            width = len(targets[m].simplices(k - 1))
            for r, line in enumerate(delta):
                for c, value in enumerate(line):
                    if value:
                        boundary_entries.setdefault(row_offset[m] + r, {})[boundary_col + c] = value % prime
            boundary_col += width

        combined = {r: dict(line) for r, line in entries.items()}
        for r, line in boundary_entries.items():
            for c, value in line.items():
                combined.setdefault(r, {})[col + c] = value

        return (
            rank_mod_p(combined, prime, (row, col + boundary_col))
            - rank_mod_p(boundary_entries, prime, (row, boundary_col))
        )


def multiplication_map(
    source: GradedCohomology,
    target: GradedCohomology,
    degree: int,
    section: Mapping[Character, int],
) -> GradedMap:
    """
    Multiplication by a section sum(c_m' chi^m') from H^i(source) to H^i(target).

    Args:
        source: Cohomology of O(D - Y)
        target: Cohomology of O(D)
        degree: Intermediate degree i, 1 <= i <= n-1
        section: Monomial exponents m' -> coefficients

    Returns:
        GradedMap with one block per (m_s, m_s + m') hitting a nonzero piece
    """
    source_chars = dict(source.characters_in_degree(degree))
    target_chars = dict(target.characters_in_degree(degree))

    blocks = []
    for m_s in sorted(source_chars):
        for m_prime, coeff in sorted(section.items()):
            m_t = tuple(a + b for a, b in zip(m_s, m_prime))
            if m_t in target_chars:
                blocks.append((m_s, m_t, coeff))

    return GradedMap(target.fan, degree, source_chars, target_chars, blocks)
