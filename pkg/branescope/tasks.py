"""
Batch verification of the claims on one polytope.
"""
from importlib import import_module
from typing import Optional

import numpy as np

from branescope import hooks
from branescope.branes import (
    BraneDescriptor,
    decay_clauses,
    euler_check,
    ext_table,
    rectangle_table,
    serre_dual_check,
    spanning_scan,
    triangle_clauses,
)
from branescope.equivariant import (
    fixed_points,
    fixed_points_on_hypersurface,
    is_subsequence,
    localize_paper_mode,
    localize_standard,
    project,
)
from branescope.exceptions import BranescopeError
from branescope.logger import get_logger, log_error
from branescope.polytope import ehrhart_check, is_reflexive, polar_dual, same_vertex_set
from branescope.services.document_service import get_document_service
from branescope.services.hypersurface_service import get_hypersurface_service
from branescope.settings import BranescopeSettings, get_settings
from branescope.sheafcoh import cohomology_dims
from branescope.toric import TorusDivisor, canonical_divisor, cartier_data

logger = get_logger(__name__)

RANDOM_DIVISORS = 10
RECTANGLE_POWERS = range(-2, 3)


def _resolve(path: str):
    module, _, name = path.rpartition(".")
    return getattr(import_module(module), name)


def _random_cartier_divisors(f, count: int, seed: int, bound: int = 2):
    """Seeded random Cartier divisors with coefficients in [-bound, bound]."""
    rng = np.random.default_rng(seed)
    found = []
    for _ in range(50 * count):
        d = TorusDivisor(tuple(int(a) for a in rng.integers(-bound, bound + 1, size=f.n_rays)))
        try:
            cartier_data(f, d)
        except BranescopeError:
            continue
        found.append(d)
        if len(found) == count:
            break
    return found


def check_reflexivity(context: dict) -> dict:
    p = context["polytope"]
    dual = polar_dual(p)
    return {
        "holds": is_reflexive(p) and same_vertex_set(polar_dual(dual), p) and ehrhart_check(p),
        "dual_vertices": [list(v) for v in dual.vertices],
    }


def check_toric_cohomology(context: dict) -> dict:
    """Serre duality h^i(D) = h^(n-i)(K - D) on random divisors."""
    h = context["model"]
    f = h.fan
    growth = context["settings"].region_growth_limit
    k = canonical_divisor(f)

    failures = []
    divisors = _random_cartier_divisors(f, RANDOM_DIVISORS, context["settings"].seed)
    for d in divisors:
        left = cohomology_dims(f, d, growth)
        right = cohomology_dims(f, k - d, growth)
        if left != tuple(reversed(right)):
            failures.append(list(d.coeffs))

    return {"holds": not failures, "divisors": len(divisors), "failures": failures}


def check_hypersurface(context: dict) -> dict:
    h, service = context["model"], context["service"]
    zero = TorusDivisor((0,) * h.fan.n_rays)
    structure = BraneDescriptor.line(zero)
    line = BraneDescriptor.power(h, 1)

    tables = [ext_table(h, a, b, service) for a in (structure, line) for b in (structure, line)]
    divisors = [zero, h.hypersurface_divisor, -h.hypersurface_divisor]
    return {
        "holds": all(serre_dual_check(t) and not t.outside_window() for t in tables)
        and all(euler_check(h, e, service) for e in divisors),
        "structure_sheaf": list(service.cohomology(h, zero)),
    }


def check_spanning(context: dict) -> dict:
    h, service, settings = context["model"], context["service"], context["settings"]
    structure = BraneDescriptor.line(TorusDivisor((0,) * h.fan.n_rays))
    forward = spanning_scan(h, structure, settings.spanning_depth, settings.spanning_window, False, service)
    reverse = spanning_scan(h, structure, settings.spanning_depth, settings.spanning_window, True, service)
    context["threshold"] = forward.threshold
    return {
        "holds": reverse.serre_consistent,
        "r": forward.ghost,
        "i0": forward.threshold,
        "l": reverse.ghost,
        "n0": reverse.threshold,
    }


def check_rectangle(context: dict) -> dict:
    h, service = context["model"], context["service"]
    structure = BraneDescriptor.line(TorusDivisor((0,) * h.fan.n_rays))
    threshold = context.get("threshold")

    tables = [rectangle_table(h, structure, b, threshold, service) for b in RECTANGLE_POWERS]
    return {
        "holds": all(t.confined and t.vertex_claim_holds for t in tables),
        "tables": len(tables),
    }


def check_triangles(context: dict) -> dict:
    h, service = context["model"], context["service"]
    structure = BraneDescriptor.line(TorusDivisor((0,) * h.fan.n_rays))
    others = [
        BraneDescriptor.line(h.hypersurface_divisor),
        BraneDescriptor.power(h, -1),
        BraneDescriptor.zero(),
    ]

    reports = [triangle_clauses(h, structure, 0, other, service) for other in others]
    reports += [decay_clauses(h, structure, 0, other, service) for other in others if not other.is_zero]
    violations = [
        {"kind": r.kind, "other": r.other, "clause": c.clause} for r in reports for c in r.violations
    ]
    return {"holds": not violations, "instances": len(reports), "violations": violations}


def check_equivariant(context: dict) -> dict:
    f = context["model"].fan
    n = f.dim
    paper = localize_paper_mode(f, n)
    restricted = localize_paper_mode(f, n, restrict_to_y=True)
    constant = all(form.coeffs == (-(n - 1),) * n for form in paper.forms)

    divisors = _random_cartier_divisors(f, 4, context["settings"].seed + 1)
    additive = all(
        localize_standard(f, a + b).forms
        == [x + y for x, y in zip(localize_standard(f, a).forms, localize_standard(f, b).forms)]
        for a in divisors
        for b in divisors
    )
    projected = project(paper, fixed_points_on_hypersurface(f))

    return {
        "holds": constant
        and additive
        and len(paper.entries) == len(fixed_points(f))
        and is_subsequence(restricted, paper)
        and projected == restricted,
        "fixed_points": len(paper.entries),
    }


def verify_claims(source: str, settings: Optional[BranescopeSettings] = None) -> dict:
    """
    Run every check in hooks.verification_tasks on one polytope.

    A check that raises is reported with status "error" and the rest
    still run.

    Args:
        source: Polytope document (path or fixture name)
        settings: Optional settings

    Returns:
        dict with per-claim status and an overall status
    """
    settings = settings or get_settings()
    polytope = get_document_service().load_polytope(source)
    service = get_hypersurface_service(settings)
    context = {
        "polytope": polytope,
        "settings": settings,
        "service": service,
        "model": service.create_model(polytope),
    }

    results = []
    for path in hooks.verification_tasks:
        claim = path.rpartition(".")[2].replace("check_", "")
        try:
            details = _resolve(path)(context)
            status = "pass" if details.pop("holds") else "fail"
        except BranescopeError as e:
            log_error(title=f"Claim check failed: {claim}", message=str(e))
            details, status = {"error": str(e)}, "error"

        logger.info("claim %s: %s", claim, status)
        results.append({"claim": claim, "status": status, "details": details})

    return {
        "polytope": polytope.name,
        "seed": settings.seed,
        "claims": results,
        "status": "pass" if all(r["status"] == "pass" for r in results) else "fail",
    }
