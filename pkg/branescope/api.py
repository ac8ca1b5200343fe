"""
Public entry points for branescope.

Each function returns a report dict; the CLI dispatches to them through
hooks.commands and tasks reuse them for batch verification.
"""
from typing import List, Optional

from branescope import branes, equivariant, gauge, toric
from branescope.exceptions import UsageError
from branescope.polytope import (
    dilate,
    ehrhart_check,
    interior_points,
    is_reflexive,
    lattice_points,
    polar_dual,
    same_vertex_set,
)
from branescope.services.document_service import get_document_service
from branescope.services.hypersurface_service import get_hypersurface_service
from branescope.settings import BranescopeSettings, get_settings
from branescope.sheafcoh import divisor_cohomology, euler_characteristic


def _settings(settings: Optional[BranescopeSettings]) -> BranescopeSettings:
    return settings or get_settings()


def _model(source: str, settings: BranescopeSettings):
    polytope = get_document_service().load_polytope(source)
    service = get_hypersurface_service(settings)
    return service.create_model(polytope), service


def _parse_ints(text: str, what: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",")]
    except ValueError:
        raise UsageError(f"Invalid {what} '{text}': expected comma-separated integers")


def _parse_point(text: str) -> List[complex]:
    try:
        return [complex(x) for x in text.replace(" ", "").split(",")]
    except ValueError:
        raise UsageError(f"Invalid point '{text}': expected comma-separated complex numbers")


def check_polytope(source: str, dilation: Optional[int] = None) -> dict:
    """
    Reflexivity report of a polytope.

    Args:
        source: Polytope document (path or fixture name)
        dilation: Optional dilation factor applied first

    Returns:
        dict with facets, reflexivity and, for reflexive input, the dual vertices
    """
    p = get_document_service().load_polytope(source)
    if dilation:
        p = dilate(p, dilation)

    report = {
        "name": p.name,
        "dim": p.dim,
        "vertices": [list(v) for v in p.vertices],
        "facets": [{"normal": list(f.normal), "offset": f.offset} for f in p.facets],
        "reflexive": is_reflexive(p),
        "ehrhart_check": ehrhart_check(p),
    }
    if report["reflexive"]:
        report["dual_vertices"] = [list(v) for v in polar_dual(p).vertices]
    return report


def dual_polytope(source: str) -> dict:
    """Polar dual of a reflexive polytope and the involution check."""
    p = get_document_service().load_polytope(source)
    dual = polar_dual(p)
    return {
        "name": dual.name,
        "vertices": [list(v) for v in dual.vertices],
        "involution": same_vertex_set(polar_dual(dual), p),
    }


def polytope_points(source: str, dilation: Optional[int] = None) -> dict:
    p = get_document_service().load_polytope(source)
    if dilation:
        p = dilate(p, dilation)
    points = lattice_points(p)
    return {
        "count": len(points),
        "points": [list(m) for m in points],
        "interior": [list(m) for m in interior_points(p)],
    }


def toric_fan(source: str) -> dict:
    p = get_document_service().load_polytope(source)
    f = toric.normal_fan(p)
    return {
        "dim": f.dim,
        "rays": [list(u) for u in f.rays],
        "cones": [
            {"vertex": list(v), "rays": list(cone)} for v, cone in zip(f.vertices, f.cones)
        ],
        "simplicial": toric.is_simplicial(f),
        "complete": toric.is_complete(f),
    }


def divisor_cohomology_report(
    source: str, divisor: str, settings: Optional[BranescopeSettings] = None
) -> dict:
    """
    h^i(X, O(d)) with the positivity of d.

    Args:
        source: Polytope document
        divisor: Coefficients in ray order, e.g. "1,0,0"
        settings: Optional settings

    Returns:
        dict with dims, Euler characteristic and nef / ample flags
    """
    settings = _settings(settings)
    f = toric.normal_fan(get_document_service().load_polytope(source))
    d = toric.TorusDivisor.parse(divisor, f)
    g = divisor_cohomology(f, d, settings.region_growth_limit)
    return {
        "divisor": list(d.coeffs),
        "h": list(g.totals),
        "euler": euler_characteristic(g),
        "nef": toric.is_nef(f, d),
        "ample": toric.is_ample(f, d),
    }


def hypersurface_report(
    source: str, divisor: str, settings: Optional[BranescopeSettings] = None
) -> dict:
    """h^i(Y, O_Y(E)) on the generic anticanonical hypersurface."""
    settings = _settings(settings)
    h, service = _model(source, settings)
    e = toric.TorusDivisor.parse(divisor, h.fan)
    return {
        "divisor": list(e.coeffs),
        "seed": h.seed,
        "h": list(branes.hypersurface_cohomology(h, e, service)),
        "euler_check": branes.euler_check(h, e, service),
    }


def ext_report(source: str, a: str, b: str, settings: Optional[BranescopeSettings] = None) -> dict:
    """
    dim Ext^k(A, B) between two branes.

    Args:
        source: Polytope document
        a: Source brane, e.g. "0,0,0" or "1" for L
        b: Target brane
        settings: Optional settings

    Returns:
        ext_table report
    """
    settings = _settings(settings)
    h, service = _model(source, settings)
    table = branes.ext_table(
        h, branes.BraneDescriptor.parse(a, h), branes.BraneDescriptor.parse(b, h), service
    )
    report = table.as_dict()
    report["kind"] = "ext_table"
    report["serre_dual"] = branes.serre_dual_check(table)
    return report


def spanning_report(
    source: str,
    brane: str,
    depth: Optional[int] = None,
    window: Optional[int] = None,
    reverse: bool = False,
    settings: Optional[BranescopeSettings] = None,
) -> dict:
    settings = _settings(settings)
    h, service = _model(source, settings)
    result = branes.spanning_scan(
        h,
        branes.BraneDescriptor.parse(brane, h),
        depth or settings.spanning_depth,
        window or settings.spanning_window,
        reverse,
        service,
    )
    return result.as_dict()


def rectangle_report(
    source: str,
    brane: str,
    b: int,
    i0: Optional[int] = None,
    settings: Optional[BranescopeSettings] = None,
) -> dict:
    """Vertex-operator table of a line-bundle brane against L^b."""
    settings = _settings(settings)
    h, service = _model(source, settings)
    table = branes.rectangle_table(h, branes.BraneDescriptor.parse(brane, h), b, i0, service)
    report = table.as_dict()
    report["kind"] = "rectangle_table"
    return report


def triangle_report(
    source: str,
    brane: str,
    a: int,
    other: str,
    decay: bool = False,
    settings: Optional[BranescopeSettings] = None,
) -> dict:
    """
    Clause checks of the extension statement (or, with decay, the decay statement).

    Args:
        source: Polytope document
        brane: Probe brane F
        a: Power of L
        other: H for extensions, J for decays
        decay: Check F -> G -> J instead of L^a -> G -> H
        settings: Optional settings

    Returns:
        TriangleReport as a dict
    """
    settings = _settings(settings)
    h, service = _model(source, settings)
    check = branes.decay_clauses if decay else branes.triangle_clauses
    result = check(
        h, branes.BraneDescriptor.parse(brane, h), a, branes.BraneDescriptor.parse(other, h), service
    )
    return result.as_dict()


def homological_dimension_report(source: str, settings: Optional[BranescopeSettings] = None) -> dict:
    settings = _settings(settings)
    h, service = _model(source, settings)
    return branes.homological_dimension_check(h, service=service)


def localize_report(
    source: str,
    divisor: Optional[str] = None,
    paper_mode: bool = False,
    restrict_y: bool = False,
) -> dict:
    """
    Localization of c_1^T at the torus-fixed points.

    Standard mode localizes O(divisor) (default: L); paper mode returns
    the constant tuple.
    """
    p = get_document_service().load_polytope(source)
    f = toric.normal_fan(p)

    if paper_mode:
        result = equivariant.localize_paper_mode(f, f.dim, restrict_y)
    else:
        d = (
            toric.TorusDivisor.parse(divisor, f)
            if divisor
            else (f.dim - 1) * toric.anticanonical_divisor(f)
        )
        result = equivariant.localize_standard(f, d)
        if restrict_y:
            result = equivariant.project(result, equivariant.fixed_points_on_hypersurface(f))

    return {"mode": result.mode, "localization": result.as_list()}


def xi_report(m: str) -> dict:
    form = equivariant.xi_star(_parse_ints(m, "character"))
    return {"character": list(form.coeffs), "form": list(form.coeffs), "text": str(form)}


def compare_report(source: str) -> dict:
    f = toric.normal_fan(get_document_service().load_polytope(source))
    return equivariant.compare_modes(f, f.dim)


def ym_report(poly: str, trials: Optional[int] = None, settings: Optional[BranescopeSettings] = None) -> dict:
    """Yang-Mills value of the Fubini-Study connection restricted to the hypersurface of poly."""
    settings = _settings(settings)
    eq = get_document_service().load_polynomial(poly)
    return gauge.ym_value(
        eq,
        trials=trials or settings.probe_trials,
        seed=settings.seed,
        tolerance=settings.root_cluster_tolerance,
        instability_fraction=settings.instability_fraction,
    )


def probe_report(poly: str, trials: Optional[int] = None, settings: Optional[BranescopeSettings] = None) -> dict:
    settings = _settings(settings)
    eq = get_document_service().load_polynomial(poly)
    probe = gauge.degree_probe(
        eq,
        trials or settings.probe_trials,
        settings.seed,
        settings.root_cluster_tolerance,
        settings.instability_fraction,
    )
    return probe.as_dict()


def connection_report(point: str) -> dict:
    """Connection form at a point given by homogeneous coordinates, e.g. "1,0.5+1j,2"."""
    p = gauge.affine_point_from_homogeneous(_parse_point(point))
    sample = gauge.connection_form_at(p)
    return {"chart": p.chart, "v": list(p.v), "alpha": sample.coefficients}


def curvature_report(point: str) -> dict:
    p = gauge.affine_point_from_homogeneous(_parse_point(point))
    sample = gauge.curvature_form_at(p)
    return {
        "chart": p.chart,
        "v": list(p.v),
        "F": sample.matrix,
        "hermitian": sample.is_hermitian(),
        "closedness_defect": gauge.closedness_defect(p),
    }
