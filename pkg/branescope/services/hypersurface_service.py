"""
Hypersurface service: generic anticanonical hypersurfaces and the
cohomology of line bundles restricted to them.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from branescope.exceptions import GenericityFailure, NonReflexive
from branescope.logger import get_logger
from branescope.polytope import CharacterPoint, LatticePolytope, is_reflexive, lattice_points
from branescope.settings import BranescopeSettings, get_settings
from branescope.sheafcoh import divisor_cohomology, multiplication_map
from branescope.toric import (
    NormalFan,
    TorusDivisor,
    anticanonical_divisor,
    cartier_data,
    normal_fan,
)

logger = get_logger(__name__)


def derive_seed(seed: int, index: int) -> int:
    """Independent 64-bit seed number `index` derived from a base seed."""
    if index == 0:
        return seed
    state = np.random.SeedSequence([seed, index]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def generic_section(p: LatticePolytope, seed: int, prime: int) -> Tuple[Tuple[CharacterPoint, int], ...]:
    """
    Coefficients of a generic anticanonical section sum(c_m chi^m), m in P & M.

    Coefficients are uniform in [1, prime - 1], so every monomial (the
    vertex monomials included) is present.
    """
    points = lattice_points(p)
    rng = np.random.default_rng(seed)
    coefficients = rng.integers(1, prime, size=len(points), dtype=np.int64)
    return tuple((m, int(c)) for m, c in zip(points, coefficients))


@dataclass(frozen=True)
class HypersurfaceModel:
    """
    A generic member Y of |-K_X| on the toric variety of a reflexive polytope.

    Attributes:
        polytope: Reflexive polytope
        fan: Its normal fan
        seed: Seed of the section coefficients
        prime: Field size of the coefficients
        section: (m, c_m) over the lattice points of the polytope
    """

    polytope: LatticePolytope
    fan: NormalFan
    seed: int
    prime: int
    section: Tuple[Tuple[CharacterPoint, int], ...]

    @property
    def dim(self) -> int:
        """Dimension n of the ambient variety; Y has dimension n - 1."""
        return self.fan.dim

    @property
    def hypersurface_divisor(self) -> TorusDivisor:
        return anticanonical_divisor(self.fan)

    @property
    def brane_divisor(self) -> TorusDivisor:
        """(n-1)(-K_X), whose restriction to Y is the brane L."""
        return (self.dim - 1) * anticanonical_divisor(self.fan)

    def with_seed(self, seed: int) -> "HypersurfaceModel":
        return HypersurfaceModel(
            self.polytope, self.fan, seed, self.prime,
            generic_section(self.polytope, seed, self.prime),
        )


class HypersurfaceService:
    """
    Line-bundle cohomology on a generic anticanonical hypersurface.

    For 0 -> O_X(E - Y) -> O_X(E) -> O_Y(E) -> 0, with the first map
    multiplication by the section f:

        h^i(O_Y(E)) = dim coker(mu_i) + dim ker(mu_(i+1))

    mu_0 is injective and mu_n surjective; the intermediate ranks are
    computed over GF(p) and certified by agreement of two seeds. Each
    derived seed that disagrees with every earlier one counts as a
    disagreement; disagreement number genericity_retries aborts.
    """

    def __init__(self, settings: Optional[BranescopeSettings] = None):
        self.settings = settings or get_settings()
        self._cache: Dict[Tuple[HypersurfaceModel, TorusDivisor], Tuple[int, ...]] = {}

    def create_model(self, p: LatticePolytope, seed: Optional[int] = None) -> HypersurfaceModel:
        """
        Build the model of a generic anticanonical hypersurface.

        Args:
            p: Reflexive polytope with a simplicial normal fan
            seed: Section seed (default from settings)

        Returns:
            HypersurfaceModel
        """
        if not is_reflexive(p):
            raise NonReflexive("The anticanonical hypersurface needs a reflexive polytope")

        fan = normal_fan(p)
        seed = self.settings.seed if seed is None else seed
        prime = self.settings.prime
        return HypersurfaceModel(p, fan, seed, prime, generic_section(p, seed, prime))

    def multiplication_ranks(self, h: HypersurfaceModel, e: TorusDivisor) -> List[int]:
        """
        Ranks of mu_i: H^i(O_X(E - Y)) -> H^i(O_X(E)), i = 0..n.

        Args:
            h: HypersurfaceModel (its section decides the intermediate ranks)
            e: Cartier divisor E

        Returns:
            list of n + 1 ranks
        """
        growth = self.settings.region_growth_limit
        n = h.dim
        target = divisor_cohomology(h.fan, e, growth)
        source = divisor_cohomology(h.fan, e - h.hypersurface_divisor, growth)
        h_target, h_source = target.totals, source.totals
        section = dict(h.section)

        ranks = []
        for i in range(n + 1):
            if h_target[i] == 0 or h_source[i] == 0:
                ranks.append(0)
            elif i == 0:
                ranks.append(h_source[0])
            elif i == n:
                ranks.append(h_target[n])
            else:
                graded_map = multiplication_map(source, target, i, section)
                ranks.append(graded_map.matrix_rank(h.prime))
        return ranks

    def cohomology(self, h: HypersurfaceModel, e: TorusDivisor) -> Tuple[int, ...]:
        """
        Certified (h^0, ..., h^(n-1)) of O_Y(E).

        Args:
            h: HypersurfaceModel
            e: Cartier divisor E on X

        Returns:
            tuple of n dimensions
        """
        key = (h, e)
        if key in self._cache:
            return self._cache[key]

        cartier_data(h.fan, e)

        growth = self.settings.region_growth_limit
        n = h.dim
        h_target = divisor_cohomology(h.fan, e, growth).totals
        h_source = divisor_cohomology(h.fan, e - h.hypersurface_divisor, growth).totals

        seen = [self.multiplication_ranks(h, e)]
        ranks = None
        for attempt in range(1, self.settings.genericity_retries + 1):
            candidate = self.multiplication_ranks(h.with_seed(derive_seed(h.seed, attempt)), e)
            if candidate in seen:
                ranks = candidate
                break
            logger.warning(
                "divisor %s: ranks %s disagree with earlier seeds %s, retrying",
                list(e.coeffs), candidate, seen,
            )
            seen.append(candidate)

        if ranks is None:
            raise GenericityFailure(
                f"Multiplication ranks for divisor {list(e.coeffs)} never agreed across seeds: {seen}"
            )

        dims = tuple(
            (h_target[i] - ranks[i]) + (h_source[i + 1] - ranks[i + 1]) for i in range(n)
        )
        logger.debug("h(O_Y(%s)) = %s", list(e.coeffs), dims)
        self._cache[key] = dims
        return dims


def get_hypersurface_service(settings: Optional[BranescopeSettings] = None) -> HypersurfaceService:
    """
    Get a HypersurfaceService instance.

    Args:
        settings: Optional settings; defaults are read from the environment

    Returns:
        HypersurfaceService
    """
    return HypersurfaceService(settings)
