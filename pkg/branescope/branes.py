"""
Line-bundle branes on a generic anticanonical hypersurface Y.

A brane is a finite direct sum of shifted line bundles O_Y(E)[s]. Strings
of ghost number k between two branes are Ext^k, computed for line bundles
as Ext^k(O_Y(A), O_Y(B)) = h^k(O_Y(B - A)) and extended additively.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from branescope.exceptions import BranescopeError, ScanExhausted, UsageError
from branescope.logger import get_logger
from branescope.services.hypersurface_service import (
    HypersurfaceModel,
    HypersurfaceService,
    get_hypersurface_service,
)
from branescope.sheafcoh import divisor_cohomology, euler_characteristic
from branescope.toric import TorusDivisor

logger = get_logger(__name__)

__all__ = [
    "HypersurfaceModel",
    "BraneDescriptor",
    "ExtTable",
    "SpanningReport",
    "RectangleTable",
    "ClauseCheck",
    "TriangleReport",
    "hypersurface_cohomology",
    "ext_table",
    "serre_dual_check",
    "spanning_scan",
    "rectangle_table",
    "triangle_clauses",
    "decay_clauses",
    "homological_dimension_check",
    "euler_check",
]


@dataclass(frozen=True)
class BraneDescriptor:
    """Direct sum of shifted line bundles: ((E, s), ...) means sum O_Y(E)[s]."""

    summands: Tuple[Tuple[TorusDivisor, int], ...] = ()

    @classmethod
    def line(cls, e: TorusDivisor, shift: int = 0) -> "BraneDescriptor":
        return cls(((e, shift),))

    @classmethod
    def power(cls, h: HypersurfaceModel, i: int, shift: int = 0) -> "BraneDescriptor":
        """L^i[shift]."""
        return cls.line(i * h.brane_divisor, shift)

    @classmethod
    def zero(cls) -> "BraneDescriptor":
        return cls(())

    @classmethod
    def parse(cls, text: str, h: HypersurfaceModel) -> "BraneDescriptor":
        """
        Parse "a1,...,ar[s] + b1,...,br + i".

        Each summand is a ray-coefficient list or a bare integer i for
        L^i, optionally followed by a shift [s]. "zero" is the zero brane.

        Args:
            text: Brane string
            h: HypersurfaceModel fixing the rays and L

        Returns:
            BraneDescriptor
        """
        text = text.replace(" ", "")
        if text in ("", "zero", "0brane"):
            return cls.zero()

        summands = []
        for part in text.split("+"):
            shift = 0
            if part.endswith("]"):
                if "[" not in part:
                    raise UsageError(f"Invalid brane summand '{part}'")
                part, _, shift_text = part[:-1].partition("[")
                try:
                    shift = int(shift_text)
                except ValueError:
                    raise UsageError(f"Invalid shift in brane summand '{part}[{shift_text}]'")

            if "," in part:
                e = TorusDivisor.parse(part, h.fan)
            else:
                try:
                    e = int(part) * h.brane_divisor
                except ValueError:
                    raise UsageError(f"Invalid brane summand '{part}'")
            summands.append((e, shift))

        return cls(tuple(summands))

    def __add__(self, other: "BraneDescriptor") -> "BraneDescriptor":
        return BraneDescriptor(self.summands + other.summands)

    def shifted(self, s: int) -> "BraneDescriptor":
        return BraneDescriptor(tuple((e, t + s) for e, t in self.summands))

    @property
    def is_zero(self) -> bool:
        return not self.summands

    @property
    def is_line_bundle(self) -> bool:
        return len(self.summands) == 1

    def __str__(self) -> str:
        if self.is_zero:
            return "zero"
        parts = []
        for e, s in self.summands:
            text = ",".join(str(a) for a in e.coeffs)
            parts.append(f"{text}[{s}]" if s else text)
        return "+".join(parts)


@dataclass
class ExtTable:
    """
    dim Ext^k(a, b) by ghost number, with the reverse table Ext^k(b, a)
    kept for the Serre duality check.
    """

    a: str
    b: str
    dim: int
    dims: Dict[int, int]
    dual_dims: Dict[int, int]

    def nonzero(self) -> List[int]:
        return sorted(k for k, d in self.dims.items() if d)

    def outside_window(self) -> List[int]:
        """Ghost numbers outside [0, n-1] with a nonzero entry."""
        return [k for k in self.nonzero() if not 0 <= k <= self.dim - 1]

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "dims": {k: self.dims[k] for k in sorted(self.dims)}}


def hypersurface_cohomology(
    h: HypersurfaceModel, e: TorusDivisor, service: Optional[HypersurfaceService] = None
) -> Tuple[int, ...]:
    """
    (h^0, ..., h^(n-1)) of O_Y(E), certified across two seeds.

    Args:
        h: HypersurfaceModel
        e: Cartier divisor on X
        service: Optional HypersurfaceService (carries settings and a cache)

    Returns:
        tuple of n dimensions
    """
    service = service or get_hypersurface_service()
    return service.cohomology(h, e)


def _ext_dims(h, a: BraneDescriptor, b: BraneDescriptor, service) -> Dict[int, int]:
    n = h.dim
    dims: Dict[int, int] = {k: 0 for k in range(n)}

    # Ext^k(A[s], B[t]) = Ext^(k + t - s)(A, B)
    for e_a, s in a.summands:
        for e_b, t in b.summands:
            values = hypersurface_cohomology(h, e_b - e_a, service)
            for q, value in enumerate(values):
                k = q - t + s
                dims[k] = dims.get(k, 0) + value
    return dims


def ext_table(
    h: HypersurfaceModel,
    a: BraneDescriptor,
    b: BraneDescriptor,
    service: Optional[HypersurfaceService] = None,
) -> ExtTable:
    """
    Table of dim Ext^k(a, b).

    Args:
        h: HypersurfaceModel
        a: Source brane
        b: Target brane
        service: Optional HypersurfaceService

    Returns:
        ExtTable covering [0, n-1] and every shifted ghost number
    """
    service = service or get_hypersurface_service()
    return ExtTable(
        a=str(a),
        b=str(b),
        dim=h.dim,
        dims=_ext_dims(h, a, b, service),
        dual_dims=_ext_dims(h, b, a, service),
    )


def serre_dual_check(t: ExtTable) -> bool:
    """True iff dim Ext^k(a, b) = dim Ext^(n-1-k)(b, a) for every k."""
    top = t.dim - 1
    ks = set(t.dims) | {top - k for k in t.dual_dims}
    return all(t.dims.get(k, 0) == t.dual_dims.get(top - k, 0) for k in ks)


@dataclass
class SpanningReport:
    """
    Outcome of a spanning-class scan over i in [-depth, 0].

    Forward mode samples Ext^r(L^i, F); reverse mode samples Ext^l(F, L^i).
    ghost and threshold are (r, i0) forward and (l, n0) in reverse.
    """

    brane: str
    reverse: bool
    ghost: int
    threshold: int
    depth: int
    window: int
    samples: Dict[int, Dict[int, int]]
    serre_consistent: bool = True

    def as_dict(self) -> dict:
        keys = ("l", "n0") if self.reverse else ("r", "i0")
        return {
            "brane": self.brane,
            keys[0]: self.ghost,
            keys[1]: self.threshold,
            "depth": self.depth,
            "window": self.window,
            "samples": {
                i: {k: self.samples[i][k] for k in sorted(self.samples[i])}
                for i in sorted(self.samples)
            },
            "serre_consistent": self.serre_consistent,
        }


def _stable_ghost(samples: Dict[int, Dict[int, int]], depth: int, window: int) -> Optional[Tuple[int, int]]:
    """
    Pick (ghost, threshold): for each ghost number, the threshold is the end
    of the run of nonzero samples starting at -depth. The largest threshold
    wins, ties go to the smallest ghost number. Runs shorter than window do
    not count.

    Samples are anchored at 0 because i0 is unknown before the scan, so the
    range certified nonzero is [-depth, i0] rather than [i0 - depth, i0];
    the two agree when i0 = 0 and the first is shorter by -i0 otherwise.
    """
    ghosts = sorted({k for dims in samples.values() for k in dims})
    best = None
    for k in ghosts:
        end = None
        for i in range(-depth, 1):
            if samples[i].get(k, 0) == 0:
                break
            end = i
        if end is None or end + depth + 1 < window:
            continue
        if best is None or end > best[1]:
            best = (k, end)
    return best


def spanning_scan(
    h: HypersurfaceModel,
    f: BraneDescriptor,
    depth: int = 20,
    window: int = 10,
    reverse: bool = False,
    service: Optional[HypersurfaceService] = None,
) -> SpanningReport:
    """
    Find a ghost number whose strings against L^i survive for all i <= threshold.

    Forward mode looks for r and i0 with Ext^r(L^i, F) != 0 for every
    sampled i <= i0. Reverse mode looks for l and n0 with Ext^l(F, L^i) != 0
    for i <= n0, computed directly and compared with the Serre-dual
    forward values.

    Args:
        h: HypersurfaceModel
        f: Nonzero brane
        depth: Samples i = -depth..0
        window: Minimal number of consecutive nonzero samples
        reverse: Scan Ext(F, L^i) instead of Ext(L^i, F)
        service: Optional HypersurfaceService

    Returns:
        SpanningReport
    """
    if not depth >= window >= 3:
        raise UsageError(f"Spanning scan needs depth >= window >= 3, got depth={depth}, window={window}")
    if f.is_zero:
        raise UsageError("Spanning scan needs a nonzero brane")

    service = service or get_hypersurface_service()
    samples = {}
    consistent = True

    for i in range(-depth, 1):
        power = BraneDescriptor.power(h, i)
        if reverse:
            table = ext_table(h, f, power, service)
            # Ext^l(F, L^i) against Ext^(n-1-l)(L^i, F)
            consistent = consistent and serre_dual_check(table)
        else:
            table = ext_table(h, power, f, service)
        samples[i] = {k: d for k, d in table.dims.items()}

    found = _stable_ghost(samples, depth, window)
    if found is None:
        raise ScanExhausted(
            f"No ghost number with {window} consecutive nonzero samples for brane {f} within depth {depth}"
        )

    ghost, threshold = found
    logger.debug("spanning scan of %s: ghost %d, threshold %d", f, ghost, threshold)
    return SpanningReport(
        brane=str(f),
        reverse=reverse,
        ghost=ghost,
        threshold=threshold,
        depth=depth,
        window=window,
        samples=samples,
        serre_consistent=consistent,
    )


@dataclass
class RectangleTable:
    """
    Vertex-operator dimensions h^q(Y, Ext-sheaf^p(L^b, F)).

    For a line-bundle brane F[s] the Ext sheaves are concentrated in
    p = -s, so the window is [r, s] = [-s, -s].
    """

    brane: str
    b: int
    r: int
    s: int
    dim: int
    entries: List[Tuple[int, int, int]]
    threshold: int

    @property
    def nonzero(self) -> List[Tuple[int, int, int]]:
        return [e for e in self.entries if e[2]]

    @property
    def confined(self) -> bool:
        return all(self.r <= p <= self.s and 0 <= q <= self.dim - 1 for p, q, _ in self.nonzero)

    @property
    def vertex_nonzero(self) -> bool:
        return bool(self.nonzero)

    @property
    def vertex_claim_holds(self) -> bool:
        """At least one entry is nonzero whenever b <= i0."""
        return self.b > self.threshold or self.vertex_nonzero

    def as_dict(self) -> dict:
        return {
            "brane": self.brane,
            "b": self.b,
            "window": [self.r, self.s],
            "entries": [list(e) for e in self.nonzero],
            "confined": self.confined,
            "vertex_nonzero": self.vertex_nonzero,
            "i0": self.threshold,
            "vertex_claim_holds": self.vertex_claim_holds,
        }


def rectangle_table(
    h: HypersurfaceModel,
    f: BraneDescriptor,
    b: int,
    threshold: Optional[int] = None,
    service: Optional[HypersurfaceService] = None,
) -> RectangleTable:
    """
    Vertex-operator table of a line-bundle brane against L^b.

    Args:
        h: HypersurfaceModel
        f: Line-bundle brane O_Y(E)[s]
        b: Power of L
        threshold: i0 of f for the nonvanishing check at b <= i0; found with a
            forward spanning scan at the configured depth and window when omitted
        service: Optional HypersurfaceService

    Returns:
        RectangleTable
    """
    if not f.is_line_bundle:
        raise UsageError("Rectangle tables are defined for line-bundle branes")

    service = service or get_hypersurface_service()
    if threshold is None:
        settings = service.settings
        threshold = spanning_scan(h, f, settings.spanning_depth, settings.spanning_window, False, service).threshold

    e, shift = f.summands[0]
    p = -shift
    values = hypersurface_cohomology(h, e - b * h.brane_divisor, service)
    table = RectangleTable(
        brane=str(f),
        b=b,
        r=p,
        s=p,
        dim=h.dim,
        entries=[(p, q, value) for q, value in enumerate(values)],
        threshold=threshold,
    )

    if not table.confined:
        raise BranescopeError(f"Vertex-operator entries of {f} escape the rectangle: {table.nonzero}")
    return table


@dataclass
class ClauseCheck:
    """One clause of a triangle statement checked on a split instance."""

    clause: int
    statement: str
    ghost_numbers: List[int]
    status: str
    values: Dict[int, Tuple[int, int]] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "clause": self.clause,
            "statement": self.statement,
            "j": self.ghost_numbers,
            "status": self.status,
            "values": {j: list(v) for j, v in sorted(self.values.items())},
        }


@dataclass
class TriangleReport:
    """
    S = {r : Ext^r(F, L^a) != 0}, its extremes k1, k2, and the clause checks.

    kind is "extension" for L^a -> G -> H and "decay" for F -> G -> J.
    """

    kind: str
    brane: str
    a: int
    other: str
    support: List[int]
    clauses: List[ClauseCheck]

    @property
    def k1(self) -> int:
        return min(self.support)

    @property
    def k2(self) -> int:
        return max(self.support)

    @property
    def violations(self) -> List[ClauseCheck]:
        return [c for c in self.clauses if c.status == "violated"]

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "brane": self.brane,
            "a": self.a,
            "other": self.other,
            "S": self.support,
            "k1": self.k1,
            "k2": self.k2,
            "clauses": [c.as_dict() for c in self.clauses],
        }


VERIFIED = "verified"
VACUOUS = "vacuous"
UNDECIDABLE = "undecidable"
VIOLATED = "violated"


def _ghost_range(*tables: ExtTable) -> List[int]:
    ks = {k for t in tables for k in t.dims}
    return list(range(min(ks) - 2, max(ks) + 3))


def _equality_clause(clause, statement, js, left, right) -> ClauseCheck:
    values = {j: (left.dims.get(j, 0), right.dims.get(j, 0)) for j in js}
    if not js:
        status = VACUOUS
    elif all(x == y for x, y in values.values()):
        status = VERIFIED
    else:
        status = VIOLATED
    return ClauseCheck(clause, statement, js, status, values)


def _inequality_clause(clause, statement, js, left, right, difference) -> ClauseCheck:
    """
    Dimensions on the split instance differ exactly where difference is
    nonzero; elsewhere dimensions alone cannot settle non-isomorphism.
    """
    values = {j: (left.dims.get(j, 0), right.dims.get(j, 0)) for j in js}
    statuses = []
    for j in js:
        x, y = values[j]
        if difference.dims.get(j, 0):
            statuses.append(VERIFIED if x != y else VIOLATED)
        else:
            statuses.append(UNDECIDABLE)

    if VIOLATED in statuses:
        status = VIOLATED
    elif UNDECIDABLE in statuses:
        status = UNDECIDABLE
    else:
        status = VERIFIED
    return ClauseCheck(clause, statement, js, status, values)


def _bound_clause(clause, statement, j, left, right, at_most: bool) -> ClauseCheck:
    x, y = left.dims.get(j, 0), right.dims.get(j, 0)
    holds = x <= y if at_most else x >= y
    return ClauseCheck(clause, statement, [j], VERIFIED if holds else VIOLATED, {j: (x, y)})


def _support(h, f, a, service) -> Tuple[ExtTable, List[int]]:
    table = ext_table(h, f, BraneDescriptor.power(h, a), service)
    support = table.nonzero()
    if not support:
        raise BranescopeError(f"Ext(F, L^{a}) vanishes for brane {f}; choose another a")
    return table, support


def triangle_clauses(
    h: HypersurfaceModel,
    f: BraneDescriptor,
    a: int,
    other: BraneDescriptor,
    service: Optional[HypersurfaceService] = None,
) -> TriangleReport:
    """
    Check the extension statement for L^a -> G -> H on the split triangle
    G = L^a + H.

    Clause 1: Ext^j(F, G) = Ext^j(F, H) for j < k1 - 1 or j > k2.
    Clause 2: they differ for j in {k1, k2 - 1}.
    Clause 3: at j = k1 - 1 the map is injective (dim G <= dim H).
    Clause 4: at j = k2 the map is surjective (dim G >= dim H).

    Args:
        h: HypersurfaceModel
        f: Probe brane F
        a: Power of L
        other: The brane H
        service: Optional HypersurfaceService

    Returns:
        TriangleReport
    """
    service = service or get_hypersurface_service()
    line_table, support = _support(h, f, a, service)
    k1, k2 = min(support), max(support)

    g = BraneDescriptor.power(h, a) + other
    g_table = ext_table(h, f, g, service)
    h_table = ext_table(h, f, other, service)
    js = _ghost_range(line_table, g_table, h_table)

    clauses = [
        _equality_clause(
            1, "Ext^j(F,G) = Ext^j(F,H) for j < k1-1 or j > k2",
            [j for j in js if j < k1 - 1 or j > k2], g_table, h_table,
        ),
        _inequality_clause(
            2, "Ext^j(F,G) != Ext^j(F,H) for j in {k1, k2-1}",
            sorted({k1, k2 - 1}), g_table, h_table, line_table,
        ),
        _bound_clause(3, "Ext^j(F,G) -> Ext^j(F,H) injective at j = k1-1", k1 - 1, g_table, h_table, True),
        _bound_clause(4, "Ext^j(F,G) -> Ext^j(F,H) surjective at j = k2", k2, g_table, h_table, False),
    ]

    return TriangleReport("extension", str(f), a, str(other), support, clauses)


def decay_clauses(
    h: HypersurfaceModel,
    f: BraneDescriptor,
    a: int,
    other: BraneDescriptor,
    service: Optional[HypersurfaceService] = None,
) -> TriangleReport:
    """
    Check the decay statement for F -> G -> J on the split triangle G = F + J.

    Clause 1: Ext^j(J, L^a) = Ext^j(G, L^a) for j < k1 or j > k2 + 1.
    Clause 2: they differ for j in {k1 + 1, k2}.
    Clause 3: at j = k1 the map Ext^j(J, L^a) -> Ext^j(G, L^a) is injective.
    Clause 4: at j = k2 + 1 it is surjective.

    Args:
        h: HypersurfaceModel
        f: Decay product F
        a: Power of L
        other: The brane J
        service: Optional HypersurfaceService

    Returns:
        TriangleReport
    """
    service = service or get_hypersurface_service()
    line_table, support = _support(h, f, a, service)
    k1, k2 = min(support), max(support)

    power = BraneDescriptor.power(h, a)
    j_table = ext_table(h, other, power, service)
    g_table = ext_table(h, f + other, power, service)
    js = _ghost_range(line_table, g_table, j_table)

    clauses = [
        _equality_clause(
            1, "Ext^j(J,L^a) = Ext^j(G,L^a) for j < k1 or j > k2+1",
            [j for j in js if j < k1 or j > k2 + 1], j_table, g_table,
        ),
        _inequality_clause(
            2, "Ext^j(J,L^a) != Ext^j(G,L^a) for j in {k1+1, k2}",
            sorted({k1 + 1, k2}), j_table, g_table, line_table,
        ),
        _bound_clause(3, "Ext^j(J,L^a) -> Ext^j(G,L^a) injective at j = k1", k1, j_table, g_table, True),
        _bound_clause(4, "Ext^j(J,L^a) -> Ext^j(G,L^a) surjective at j = k2+1", k2 + 1, j_table, g_table, False),
    ]

    return TriangleReport("decay", str(f), a, str(other), support, clauses)


def homological_dimension_check(
    h: HypersurfaceModel,
    divisors: Optional[List[TorusDivisor]] = None,
    service: Optional[HypersurfaceService] = None,
) -> dict:
    """
    Homological dimension n - 1 of Y.

    Ext^(n-1)(O_Y, omega_Y) = Ext^(n-1)(O_Y, O_Y) must be nonzero, and no
    Ext between line bundles may live above n - 1.

    Args:
        h: HypersurfaceModel
        divisors: Line bundles to pair up (default: O_Y, L, L^-1 and O_Y(D_rho))
        service: Optional HypersurfaceService

    Returns:
        dict with the top Ext dimension and the pairs checked
    """
    service = service or get_hypersurface_service()
    n = h.dim
    zero = TorusDivisor((0,) * h.fan.n_rays)

    if divisors is None:
        divisors = [zero, h.brane_divisor, -h.brane_divisor]
        divisors += [
            TorusDivisor(tuple(int(i == rho) for i in range(h.fan.n_rays)))
            for rho in range(h.fan.n_rays)
        ]

    structure = BraneDescriptor.line(zero)
    top = ext_table(h, structure, structure, service).dims[n - 1]

    escaped = []
    for d_a in divisors:
        for d_b in divisors:
            table = ext_table(h, BraneDescriptor.line(d_a), BraneDescriptor.line(d_b), service)
            if table.outside_window():
                escaped.append([list(d_a.coeffs), list(d_b.coeffs)])

    return {
        "dimension": n - 1,
        "top_ext": top,
        "pairs_checked": len(divisors) ** 2,
        "escaped": escaped,
        "holds": top != 0 and not escaped,
    }


def euler_check(
    h: HypersurfaceModel, e: TorusDivisor, service: Optional[HypersurfaceService] = None
) -> bool:
    """sum (-1)^k dim Ext^k(O_Y, O_Y(E)) = chi(O_X(E)) - chi(O_X(E - Y))."""
    service = service or get_hypersurface_service()
    growth = service.settings.region_growth_limit
    values = hypersurface_cohomology(h, e, service)
    left = sum((-1) ** k * d for k, d in enumerate(values))
    right = euler_characteristic(divisor_cohomology(h.fan, e, growth)) - euler_characteristic(
        divisor_cohomology(h.fan, e - h.hypersurface_divisor, growth)
    )
    return left == right
