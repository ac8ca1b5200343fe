import pytest

from branescope.equivariant import (
    LinearForm,
    compare_modes,
    fixed_points,
    fixed_points_on_hypersurface,
    is_subsequence,
    localize_paper_mode,
    localize_standard,
    project,
    xi_star,
)
from branescope.exceptions import UsageError
from branescope.toric import TorusDivisor, anticanonical_divisor


def test_linear_form_text():
    assert str(LinearForm((-1, 1))) == "-t1+t2"
    assert str(xi_star((1, -2))) == "t1-2t2"
    assert str(LinearForm.zero(3)) == "0"
    assert (2 * LinearForm((1, 0)) - LinearForm((0, 1))).coeffs == (2, -1)


def test_fixed_points_follow_vertices(p2_fan, p3_fan):
    assert fixed_points(p2_fan) == [(-1, -1), (2, -1), (-1, 2)]
    assert len(fixed_points(p3_fan)) == 4
    assert fixed_points_on_hypersurface(p2_fan) == fixed_points(p2_fan)


def test_standard_localization(p2_fan):
    result = localize_standard(p2_fan, TorusDivisor((1, 0, 0)))
    assert result.mode == "standard"
    assert [f.coeffs for f in result.forms] == [(-1, 0), (0, 0), (-1, 1)]
    assert result.form_at((2, -1)).is_zero()

    with pytest.raises(UsageError):
        result.form_at((0, 0))


def test_anticanonical_localizes_to_vertices(p2_fan, square_fan):
    for f in (p2_fan, square_fan):
        result = localize_standard(f, anticanonical_divisor(f))
        assert [form.coeffs for form in result.forms] == fixed_points(f)


def test_standard_localization_is_additive(square_fan):
    a = TorusDivisor((1, 0, 2, -1))
    b = TorusDivisor((0, -3, 1, 1))
    left = localize_standard(square_fan, a + b).forms
    right = [x + y for x, y in zip(localize_standard(square_fan, a).forms, localize_standard(square_fan, b).forms)]
    assert left == right


def test_paper_mode(p2_fan, p3_fan):
    result = localize_paper_mode(p2_fan, 2)
    assert result.mode == "paper"
    assert [f.coeffs for f in result.forms] == [(-1, -1)] * 3

    k3 = localize_paper_mode(p3_fan, 3)
    assert [f.coeffs for f in k3.forms] == [(-2, -2, -2)] * 4
    assert k3.as_list()[0] == {"fixed_point": [-1, -1, -1], "form": [-2, -2, -2]}

    with pytest.raises(UsageError):
        localize_paper_mode(p2_fan, 0)


def test_restriction_to_hypersurface(p2_fan):
    full = localize_paper_mode(p2_fan, 2)
    restricted = localize_paper_mode(p2_fan, 2, restrict_to_y=True)
    assert is_subsequence(restricted, full)
    assert project(full, fixed_points_on_hypersurface(p2_fan)) == restricted


def test_projection(p2_fan):
    full = localize_standard(p2_fan, TorusDivisor((1, 0, 0)))
    projected = project(full, [(-1, 2), (-1, -1)])
    assert projected.fixed_points == [(-1, -1), (-1, 2)]
    assert is_subsequence(projected, full)
    assert not is_subsequence(full, projected)

    with pytest.raises(UsageError):
        project(full, [(5, 5)])


def test_compare_modes(p2_fan):
    report = compare_modes(p2_fan, 2)
    assert [d["form"] for d in report["differences"]] == [[0, 0], [3, 0], [0, 3]]
    assert not report["uniform_shift"]
