"""
Chern connection and Fubini-Study curvature of O(1) on P^N, and the
Yang-Mills value of its restriction to a hypersurface.

On the chart V_k = {z_k != 0} with inhomogeneous coordinates v, the metric
h = (1 + |v|^2)^-1 gives the connection form alpha = h^-1 dh (type (1,0))
and curvature F = d alpha = sum F_ij dv_i ^ dvbar_j.
"""
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import pi
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import Polynomial
from sympy import Matrix, Mul, Poly, Rational, symbols

from branescope.exceptions import BranescopeError, DocumentError, NumericalInstability, UsageError
from branescope.logger import get_logger

logger = get_logger(__name__)

DIFFERENCE_STEP = 1e-6
YM_PER_VOLUME = 4 * pi**2


@dataclass(frozen=True)
class AffinePoint:
    """A point of P^N in the chart V_k; v has N complex entries."""

    chart: int
    v: Tuple[complex, ...]

    def __post_init__(self):
        values = tuple(complex(x) for x in self.v)
        if not all(np.isfinite(x.real) and np.isfinite(x.imag) for x in values):
            raise BranescopeError(f"Affine coordinates must be finite: {values}")
        if not 0 <= self.chart <= len(values):
            raise UsageError(f"Chart {self.chart} does not exist on P^{len(values)}")
        object.__setattr__(self, "v", values)

    @property
    def ambient_dim(self) -> int:
        return len(self.v)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.v, dtype=complex)

    def homogeneous(self) -> np.ndarray:
        """Homogeneous coordinates with z_chart = 1."""
        return np.insert(self.array, self.chart, 1.0)


@dataclass(frozen=True)
class ConnectionSample:
    point: AffinePoint
    coefficients: np.ndarray


@dataclass(frozen=True)
class CurvatureSample:
    """Coefficients F_ij of dv_i ^ dvbar_j."""

    point: AffinePoint
    matrix: np.ndarray

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return bool(np.allclose(self.matrix, self.matrix.conj().T, atol=tol))


def affine_point_from_homogeneous(z: Sequence[complex]) -> AffinePoint:
    """Chart of the largest coordinate, for the best conditioned v."""
    z = np.asarray(z, dtype=complex)
    if not np.any(z):
        raise BranescopeError("The zero vector is not a point of projective space")
    k = int(np.argmax(np.abs(z)))
    return AffinePoint(k, tuple(np.delete(z / z[k], k)))


def change_chart(p: AffinePoint, chart: int) -> AffinePoint:
    z = p.homogeneous()
    if not 0 <= chart < len(z):
        raise UsageError(f"Chart {chart} does not exist on P^{p.ambient_dim}")
    if abs(z[chart]) == 0:
        raise BranescopeError(f"Point lies outside chart {chart}")
    return AffinePoint(chart, tuple(np.delete(z / z[chart], chart)))


def _chart_jacobian(p: AffinePoint, chart: int) -> np.ndarray:
    """
    J[a, b] = d v_a / d w_b, v the coordinates of p's chart and w those
    of the target chart, evaluated at p.
    """
    z = change_chart(p, chart).homogeneous()
    k, l = p.chart, chart
    rows = [a for a in range(len(z)) if a != k]
    cols = [b for b in range(len(z)) if b != l]

    jacobian = np.zeros((len(rows), len(cols)), dtype=complex)
    for i, a in enumerate(rows):
        for j, b in enumerate(cols):
            # v_a = z_a / z_k with z_l = 1 fixed
            jacobian[i, j] = (a == b) / z[k] - (k == b) * z[a] / z[k] ** 2
    return jacobian


def connection_form_at(p: AffinePoint) -> ConnectionSample:
    """alpha_i = -vbar_i / (1 + |v|^2)."""
    v = p.array
    return ConnectionSample(p, -v.conj() / (1 + np.vdot(v, v).real))


def curvature_form_at(p: AffinePoint) -> CurvatureSample:
    """F_ij = (delta_ij (1 + |v|^2) - vbar_i v_j) / (1 + |v|^2)^2."""
    v = p.array
    s = 1 + np.vdot(v, v).real
    matrix = (np.eye(len(v)) * s - np.outer(v.conj(), v)) / s**2
    return CurvatureSample(p, matrix)


def transform_connection(sample: ConnectionSample, chart: int) -> ConnectionSample:
    """
    Connection form in another chart.

    h changes by |g|^2 with g = z_chart / z_k = 1 / w_k, so alpha picks up
    d log g = -dw_k / w_k on top of the pulled-back coefficients.
    """
    target = change_chart(sample.point, chart)
    jacobian = _chart_jacobian(sample.point, chart)
    coefficients = jacobian.T @ sample.coefficients

    k = sample.point.chart
    index = k if k < chart else k - 1
    coefficients[index] -= 1 / target.v[index]
    return ConnectionSample(target, coefficients)


def transform_curvature(sample: CurvatureSample, chart: int) -> CurvatureSample:
    """F in another chart: J^T F conj(J)."""
    target = change_chart(sample.point, chart)
    jacobian = _chart_jacobian(sample.point, chart)
    return CurvatureSample(target, jacobian.T @ sample.matrix @ jacobian.conj())


def _wirtinger(function, p: AffinePoint, index: int, conjugate: bool, step: float) -> np.ndarray:
    """Central-difference d/dv_index (or d/dvbar_index) of an array-valued function."""
    v = p.array

    def at(delta):
        w = v.copy()
        w[index] += delta
        return function(AffinePoint(p.chart, tuple(w)))

    dx = (at(step) - at(-step)) / (2 * step)
    dy = (at(1j * step) - at(-1j * step)) / (2 * step)
    return (dx + 1j * dy) / 2 if conjugate else (dx - 1j * dy) / 2


def curvature_by_differentiation(p: AffinePoint, step: float = DIFFERENCE_STEP) -> CurvatureSample:
    """F_ij = -d alpha_i / d vbar_j by finite differences of the connection."""
    n = p.ambient_dim
    matrix = np.zeros((n, n), dtype=complex)
    for j in range(n):
        column = _wirtinger(lambda q: connection_form_at(q).coefficients, p, j, True, step)
        matrix[:, j] = -column
    return CurvatureSample(p, matrix)


def closedness_defect(p: AffinePoint, step: float = DIFFERENCE_STEP) -> float:
    """
    Largest component of dF at p.

    dF = 0 means d_k F_ij = d_i F_kj and dbar_k F_ij = dbar_j F_ik.
    """
    n = p.ambient_dim
    holomorphic = [_wirtinger(lambda q: curvature_form_at(q).matrix, p, k, False, step) for k in range(n)]
    antiholomorphic = [_wirtinger(lambda q: curvature_form_at(q).matrix, p, k, True, step) for k in range(n)]

    defect = 0.0
    for k in range(n):
        for i in range(n):
            for j in range(n):
                defect = max(
                    defect,
                    abs(holomorphic[k][i, j] - holomorphic[i][k, j]),
                    abs(antiholomorphic[k][i, j] - antiholomorphic[j][i, k]),
                )
    return defect


@dataclass(frozen=True)
class HypersurfaceEquation:
    """
    Homogeneous polynomial sum c * x^exps in n_vars variables.

    Attributes:
        n_vars: N + 1 for a hypersurface of P^N
        degree: Total degree d
        terms: (exponents, rational coefficient) with nonzero coefficients
    """

    n_vars: int
    degree: int
    terms: Tuple[Tuple[Tuple[int, ...], Rational], ...]

    @classmethod
    def from_terms(cls, n_vars: int, terms: Sequence[Tuple[Sequence[int], Tuple[int, int]]]) -> "HypersurfaceEquation":
        """
        Build from (exponents, (numerator, denominator)) pairs.

        Like terms are merged; the result must be homogeneous and nonzero.
        """
        merged: Dict[Tuple[int, ...], Rational] = {}
        for exps, (num, den) in terms:
            exps = tuple(int(e) for e in exps)
            if len(exps) != n_vars or any(e < 0 for e in exps):
                raise DocumentError(f"Bad exponent vector {list(exps)} for {n_vars} variables")
            if den == 0:
                raise DocumentError("Coefficient with zero denominator")
            merged[exps] = merged.get(exps, Rational(0)) + Rational(num, den)

        kept = tuple(sorted(((e, c) for e, c in merged.items() if c != 0), reverse=True))
        if not kept:
            raise DocumentError("The polynomial is zero")

        degrees = {sum(e) for e, _ in kept}
        if len(degrees) != 1:
            raise DocumentError(f"The polynomial is not homogeneous: degrees {sorted(degrees)}")

        return cls(n_vars, degrees.pop(), kept)

    @property
    def ambient_dim(self) -> int:
        return self.n_vars - 1

    def variables(self):
        return symbols(f"x0:{self.n_vars}")

    def as_poly(self) -> Poly:
        xs = self.variables()
        expression = sum(c * Mul(*[x**e for x, e in zip(xs, exps)]) for exps, c in self.terms)
        return Poly(expression, *xs)

    def transformed(self, a: Sequence[Sequence]) -> "HypersurfaceEquation":
        """
        The polynomial F(A x) for an invertible rational matrix A.

        Args:
            a: n_vars x n_vars rational matrix

        Returns:
            HypersurfaceEquation
        """
        matrix = Matrix(a)
        if matrix.shape != (self.n_vars, self.n_vars) or matrix.det() == 0:
            raise UsageError("The change of coordinates must be an invertible square matrix")

        xs = self.variables()
        images = matrix * Matrix(xs)
        expression = self.as_poly().as_expr().subs(dict(zip(xs, images)), simultaneous=True)
        poly = Poly(expression.expand(), *xs)

        terms = []
        for exps, c in poly.terms():
            c = Rational(c)
            terms.append((exps, (int(c.p), int(c.q))))
        return HypersurfaceEquation.from_terms(self.n_vars, terms)

    def restrict_to_line(self, a: np.ndarray, b: np.ndarray) -> Polynomial:
        """F(a + t b) as a polynomial in t."""
        result = Polynomial([0j])
        for exps, c in self.terms:
            term = Polynomial([complex(Fraction(int(c.p), int(c.q)))])
            for ai, bi, e in zip(a, b, exps):
                if e:
                    term = term * Polynomial([ai, bi]) ** e
            result = result + term
        return result


@dataclass
class ProbeResult:
    """
    Root counts of F on random lines.

    The count includes multiplicity, so a non-reduced equation still reports
    its full degree; `reduced` is False when the modal line sees repeated roots.
    """

    degree: int
    trials: int
    agreement: float
    reduced: bool
    counts: Dict[int, int]

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "trials": self.trials,
            "agreement": self.agreement,
            "reduced": self.reduced,
            "counts": {k: self.counts[k] for k in sorted(self.counts)},
        }


def _cluster_count(roots: np.ndarray, tolerance: float) -> int:
    """Number of distinct roots, merging roots closer than tolerance (relative)."""
    centers: List[complex] = []
    for r in sorted(roots, key=lambda x: (x.real, x.imag)):
        scale = max(1.0, abs(r))
        if not any(abs(r - c) <= tolerance * scale for c in centers):
            centers.append(r)
    return len(centers)


def degree_probe(
    eq: HypersurfaceEquation,
    trials: int = 200,
    seed: int = 0,
    tolerance: float = 1e-7,
    instability_fraction: float = 0.05,
) -> ProbeResult:
    """
    Estimate deg(Y) by counting roots of F on random complex lines.

    Args:
        eq: HypersurfaceEquation
        trials: Number of random lines
        seed: RNG seed
        tolerance: Relative distance under which roots are merged
        instability_fraction: Largest tolerated share of disagreeing trials

    Returns:
        ProbeResult with the modal root count
    """
    if trials < 1:
        raise UsageError("degree_probe needs at least one trial")

    rng = np.random.default_rng(seed)
    counts: Counter = Counter()
    distinct: Counter = Counter()

    for _ in range(trials):
        a = rng.standard_normal(eq.n_vars) + 1j * rng.standard_normal(eq.n_vars)
        b = rng.standard_normal(eq.n_vars) + 1j * rng.standard_normal(eq.n_vars)
        restricted = eq.restrict_to_line(a, b)

        coefficients = restricted.coef
        scale = np.max(np.abs(coefficients))
        # Vanishing leading coefficients are roots at infinity
        restricted = restricted.trim(tol=1e-12 * scale)

        roots = restricted.roots()
        counts[len(roots)] += 1
        distinct[(len(roots), _cluster_count(roots, tolerance))] += 1

    degree, hits = counts.most_common(1)[0]
    agreement = hits / trials
    if 1 - agreement > instability_fraction:
        raise NumericalInstability(
            f"Root counts disagree on {trials - hits} of {trials} lines: {dict(counts)}"
        )

    modal_distinct = max(
        ((d, c) for (total, d), c in distinct.items() if total == degree), key=lambda x: x[1]
    )[0]
    return ProbeResult(
        degree=degree,
        trials=trials,
        agreement=agreement,
        reduced=modal_distinct == degree,
        counts=dict(counts),
    )


def ym_value(
    eq: HypersurfaceEquation,
    ambient_dim: Optional[int] = None,
    trials: int = 200,
    seed: int = 0,
    tolerance: float = 1e-7,
    instability_fraction: float = 0.05,
) -> dict:
    """
    YM(nabla^0) = 4 pi^2 vol(Y), with vol(Y) = deg(Y) when [omega_FS]
    integrates to 1 on a line.

    Curves in P^2 are cross-checked against degree_probe; higher
    dimensions return the formula value only.

    Args:
        eq: HypersurfaceEquation of Y in P^N
        ambient_dim: N, must match the equation when given
        trials: Probe trials
        seed: Probe seed
        tolerance: Root clustering tolerance
        instability_fraction: Probe disagreement threshold

    Returns:
        dict with value, volume, status and the ambient value 4 pi^2
    """
    if ambient_dim is not None and ambient_dim != eq.ambient_dim:
        raise UsageError(f"Equation has {eq.n_vars} variables, not a hypersurface of P^{ambient_dim}")

    report = {
        "ambient_dim": eq.ambient_dim,
        "degree": eq.degree,
        "volume": eq.degree,
        "value": YM_PER_VOLUME * eq.degree,
        "ambient_value": YM_PER_VOLUME,
    }

    if eq.ambient_dim != 2:
        report["status"] = "formula-only"
        return report

    probe = degree_probe(eq, trials, seed, tolerance, instability_fraction)
    if probe.degree != eq.degree:
        raise NumericalInstability(
            f"Probe found degree {probe.degree} for an equation of degree {eq.degree}"
        )
    logger.debug("ym_value: probe agreement %.3f", probe.agreement)

    report["status"] = "verified"
    report["probe"] = probe.as_dict()
    return report
