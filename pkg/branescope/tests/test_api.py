import pytest

from branescope import api
from branescope.exceptions import UsageError
from branescope.settings import BranescopeSettings


@pytest.fixture(scope="module")
def settings():
    return BranescopeSettings(spanning_depth=10, spanning_window=5)


def test_polytope_reports():
    check = api.check_polytope("square")
    assert check["reflexive"]
    assert len(check["facets"]) == 4
    assert check["ehrhart_check"] is True
    assert "ehrhart_polynomial" not in check
    assert not api.check_polytope("square", dilation=2)["reflexive"]

    dual = api.dual_polytope("square")
    assert dual["involution"]
    assert sorted(map(tuple, dual["vertices"])) == [(-1, 0), (0, -1), (0, 1), (1, 0)]

    points = api.polytope_points("p2")
    assert points["count"] == 10
    assert points["interior"] == [[0, 0]]


def test_fan_and_divisor_reports():
    fan = api.toric_fan("p2")
    assert fan["rays"] == [[1, 0], [0, 1], [-1, -1]]
    assert fan["cones"][0] == {"vertex": [-1, -1], "rays": [0, 1]}
    assert fan["simplicial"] and fan["complete"]

    report = api.divisor_cohomology_report("p2", "-3,0,0")
    assert report["h"] == [0, 0, 1]
    assert report["euler"] == 1
    assert not report["nef"]


def test_hypersurface_reports(settings):
    report = api.hypersurface_report("p2", "1,1,1", settings)
    assert report["h"] == [9, 0]
    assert report["euler_check"]

    ext = api.ext_report("p2", "1", "0,0,0", settings)
    assert ext["dims"] == {0: 0, 1: 9}
    assert ext["serre_dual"]

    homdim = api.homological_dimension_report("p2", settings)
    assert homdim["holds"]


def test_scan_reports(settings):
    reverse = api.spanning_report("p2", "0,0,0", reverse=True, settings=settings)
    assert (reverse["l"], reverse["n0"]) == (1, 0)

    rectangle = api.rectangle_report("p2", "0,0,0", b=0, i0=0, settings=settings)
    assert rectangle["entries"] == [[0, 0, 1], [0, 1, 1]]
    assert rectangle["vertex_claim_holds"]

    derived = api.rectangle_report("p2", "0,0,0", 0, settings=settings)
    assert derived["i0"] == 0
    assert derived["vertex_claim_holds"] is True

    decay = api.triangle_report("p2", "0,0,0", 0, "-1", decay=True, settings=settings)
    assert decay["kind"] == "decay"
    assert "violated" not in {c["status"] for c in decay["clauses"]}


def test_equivariant_reports():
    default = api.localize_report("p2")
    assert default["mode"] == "standard"
    assert [e["form"] for e in default["localization"]] == [[-1, -1], [2, -1], [-1, 2]]

    restricted = api.localize_report("p2", "1,0,0", restrict_y=True)
    assert len(restricted["localization"]) == 3

    assert api.compare_report("p3")["uniform_shift"] is False

    with pytest.raises(UsageError):
        api.xi_report("1,a")


def test_gauge_reports(settings):
    connection = api.connection_report("2,1,0")
    assert connection["chart"] == 0
    assert connection["v"] == [0.5, 0]

    probe = api.probe_report("fermat_cubic", trials=20, settings=settings)
    assert probe["degree"] == 3

    with pytest.raises(UsageError):
        api.curvature_report("1,x,0")
