"""
Torus-fixed points and localization of the equivariant first Chern class.

Classes in H*(BT, Q) = Q[t_1, ..., t_n] are recorded by their degree-one
part, a LinearForm. Fixed points are the maximal cones of the fan, labelled
by the polytope vertex they are dual to.
"""
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from branescope.exceptions import UsageError
from branescope.logger import get_logger
from branescope.toric import (
    NormalFan,
    TorusDivisor,
    anticanonical_divisor,
    cartier_data,
    polytope_divisor,
)

logger = get_logger(__name__)

STANDARD = "standard"
PAPER = "paper"


@dataclass(frozen=True)
class LinearForm:
    """sum c_i t_i."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def zero(cls, n: int) -> "LinearForm":
        return cls((0,) * n)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        if len(self) != len(other):
            raise ValueError("linear forms in different numbers of variables")
        return LinearForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "LinearForm":
        return LinearForm(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def __mul__(self, k: int) -> "LinearForm":
        return LinearForm(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        text = ""
        for i, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if text else "")
            magnitude = "" if abs(c) == 1 else str(abs(c))
            text += f"{sign}{magnitude}t{i}"
        return text or "0"


@dataclass(frozen=True)
class LocalizationResult:
    """
    One LinearForm per fixed point considered, in fixed-point order.

    Attributes:
        mode: "standard" (Cartier data) or "paper" (constant tuple)
        entries: (vertex, form) pairs
    """

    mode: str
    entries: Tuple[Tuple[Tuple[int, ...], LinearForm], ...]

    @property
    def fixed_points(self) -> List[Tuple[int, ...]]:
        return [v for v, _ in self.entries]

    @property
    def forms(self) -> List[LinearForm]:
        return [form for _, form in self.entries]

    def form_at(self, vertex: Sequence[int]) -> LinearForm:
        for v, form in self.entries:
            if v == tuple(vertex):
                return form
        raise UsageError(f"{list(vertex)} is not a fixed point of this result")

    def as_list(self) -> List[dict]:
        return [{"fixed_point": list(v), "form": list(form.coeffs)} for v, form in self.entries]


def fixed_points(f: NormalFan) -> List[Tuple[int, ...]]:
    """One fixed point per maximal cone, labelled by its vertex."""
    return list(f.vertices)


def fixed_points_on_hypersurface(f: NormalFan) -> List[Tuple[int, ...]]:
    """
    Fixed points on the invariant anticanonical member sum D_rho.

    Every fixed point is the intersection of the divisors of its cone, so
    all of them lie on the toric boundary.
    """
    boundary = set(i for i, a in enumerate(anticanonical_divisor(f).coeffs) if a)
    return [v for v, cone in zip(f.vertices, f.cones) if boundary.intersection(cone)]


def xi_star(m: Sequence[int]) -> LinearForm:
    """Pull-back of t along the classifying map of the character m: sum m_i t_i."""
    return LinearForm(tuple(m))


def localize_standard(f: NormalFan, d: TorusDivisor) -> LocalizationResult:
    """
    Localize c_1^T(O(d)) with the Cartier-data linearization.

    At the fixed point of cone sigma the fiber carries the character
    m_sigma, so the localized class is xi_star(m_sigma).

    Args:
        f: Simplicial fan
        d: Cartier divisor

    Returns:
        LocalizationResult in standard mode
    """
    data = cartier_data(f, d)
    entries = tuple(
        (vertex, xi_star(data.character(index))) for index, vertex in enumerate(f.vertices)
    )
    return LocalizationResult(STANDARD, entries)


def localize_paper_mode(f: NormalFan, n: int, restrict_to_y: bool = False) -> LocalizationResult:
    """
    Constant localization tuple of c_1^T(L'), every entry -(n-1)(t_1 + ... + t_n).

    Args:
        f: Fan whose fixed points index the tuple
        n: Dimension entering the coefficient n - 1
        restrict_to_y: Keep only the fixed points on the hypersurface

    Returns:
        LocalizationResult in paper mode
    """
    if n < 1:
        raise UsageError(f"Dimension must be positive, got {n}")

    form = -(n - 1) * xi_star((1,) * f.dim)
    points = fixed_points_on_hypersurface(f) if restrict_to_y else fixed_points(f)
    return LocalizationResult(PAPER, tuple((v, form) for v in points))


def project(result: LocalizationResult, ids: Iterable[Sequence[int]]) -> LocalizationResult:
    """Restriction to a subset of fixed points, keeping the original order."""
    wanted = set(tuple(v) for v in ids)
    unknown = wanted.difference(result.fixed_points)
    if unknown:
        raise UsageError(f"Not fixed points of this result: {sorted(unknown)}")
    return LocalizationResult(result.mode, tuple((v, form) for v, form in result.entries if v in wanted))


def is_subsequence(short: LocalizationResult, long: LocalizationResult) -> bool:
    """True iff short's entries appear in long in the same order."""
    remaining = iter(long.entries)
    return all(entry in remaining for entry in short.entries)


def compare_modes(f: NormalFan, n: int) -> dict:
    """
    Standard localization of (n-1) D_P against the paper-mode tuple.

    Args:
        f: Simplicial fan
        n: Dimension

    Returns:
        dict with per-fixed-point differences and whether they all agree,
        which would make the two lifts differ by one global character
    """
    standard = localize_standard(f, (n - 1) * polytope_divisor(f))
    paper = localize_paper_mode(f, n)

    differences = [
        (vertex, a - b) for (vertex, a), (_, b) in zip(standard.entries, paper.entries)
    ]
    forms = [d for _, d in differences]
    uniform = all(d == forms[0] for d in forms)
    logger.debug("compare_modes: uniform shift %s", uniform)

    return {
        "dim": n,
        "standard": standard.as_list(),
        "paper": paper.as_list(),
        "differences": [{"fixed_point": list(v), "form": list(d.coeffs)} for v, d in differences],
        "uniform_shift": uniform,
    }
