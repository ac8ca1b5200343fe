import pytest

from branescope import hooks, tasks
from branescope.exceptions import BranescopeError
from branescope.settings import BranescopeSettings
from branescope.toric import cartier_data


@pytest.fixture(scope="module")
def p2_verification():
    return tasks.verify_claims("p2", BranescopeSettings())


def test_every_claim_passes_on_p2(p2_verification):
    assert p2_verification["polytope"] == "p2"
    assert p2_verification["status"] == "pass"
    assert [c["claim"] for c in p2_verification["claims"]] == [
        path.rpartition(".")[2].replace("check_", "") for path in hooks.verification_tasks
    ]


def test_spanning_details(p2_verification):
    spanning = next(c for c in p2_verification["claims"] if c["claim"] == "spanning")
    assert spanning["details"] == {"r": 0, "i0": 0, "l": 1, "n0": 0}


def test_square_passes():
    result = tasks.verify_claims("square", BranescopeSettings(spanning_depth=10, spanning_window=5))
    assert result["status"] == "pass"


def test_failing_check_is_reported(monkeypatch):
    def broken(context):
        raise BranescopeError("boom")

    monkeypatch.setattr(tasks, "check_triangles", broken)
    result = tasks.verify_claims("p2", BranescopeSettings(spanning_depth=10, spanning_window=5))
    assert result["status"] == "fail"

    triangles = next(c for c in result["claims"] if c["claim"] == "triangles")
    assert triangles == {"claim": "triangles", "status": "error", "details": {"error": "boom"}}


def test_random_divisors_are_cartier(p2_fan):
    divisors = tasks._random_cartier_divisors(p2_fan, 5, seed=3)
    assert len(divisors) == 5
    for d in divisors:
        cartier_data(p2_fan, d)
        assert all(-2 <= a <= 2 for a in d.coeffs)
