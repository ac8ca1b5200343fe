from math import comb

import numpy as np
import pytest

from branescope.exceptions import NotASubcomplex
from branescope.sheafcoh import (
    SupportComplex,
    cohomology_dims,
    divisor_cohomology,
    euler_characteristic,
    inclusion_map,
    induced_cohomology_rank,
    reduced_cohomology_dims,
    support_set,
)
from branescope.toric import TorusDivisor, canonical_divisor, divisor_polytope_points, is_nef


def test_reduced_cohomology_of_small_complexes():
    assert reduced_cohomology_dims(SupportComplex()) == (1,)
    assert reduced_cohomology_dims(SupportComplex.from_maximal_faces([[0]])) == (0, 0)
    assert reduced_cohomology_dims(SupportComplex.from_maximal_faces([[0], [1]])) == (0, 1)


def test_reduced_cohomology_of_a_circle():
    circle = SupportComplex.from_maximal_faces([[0, 1], [1, 2], [0, 2]])
    assert reduced_cohomology_dims(circle) == (0, 0, 1)
    assert reduced_cohomology_dims(circle, top=2) == (0, 0, 1, 0)


def test_inclusion_map_identity():
    path = SupportComplex.from_maximal_faces([[0, 1], [1, 2]])
    maps = inclusion_map(path, path)
    for k, matrix in maps.items():
        size = len(path.simplices(k))
        assert matrix == [[int(i == j) for j in range(size)] for i in range(size)]


def test_inclusion_of_points_into_a_path():
    points = SupportComplex.from_maximal_faces([[0], [2]])
    path = SupportComplex.from_maximal_faces([[0, 1], [1, 2]])
    assert reduced_cohomology_dims(points)[1] == 1
    assert induced_cohomology_rank(points, path, 0) == 0


def test_inclusion_into_a_circle():
    empty = SupportComplex()
    circle = SupportComplex.from_maximal_faces([[0, 1], [1, 2], [0, 2]])
    maps = inclusion_map(empty, circle)
    assert all(matrix == [] for k, matrix in maps.items() if k >= 0)
    assert induced_cohomology_rank(circle, circle, 1) == 1


def test_not_a_subcomplex():
    edge = SupportComplex.from_maximal_faces([[0, 1]])
    points = SupportComplex.from_maximal_faces([[0], [1]])
    with pytest.raises(NotASubcomplex):
        inclusion_map(edge, points)


def test_full_subcomplex_of_p2_fan(p2_fan):
    boundary = SupportComplex.full_subcomplex(p2_fan, frozenset({0, 1, 2}))
    assert reduced_cohomology_dims(boundary) == (0, 0, 1)
    assert support_set(p2_fan, TorusDivisor((-1, -1, -1)), (0, 0)) == frozenset({0, 1, 2})


def test_p2_cohomology(p2_fan):
    assert cohomology_dims(p2_fan, TorusDivisor((1, 1, 1))) == (10, 0, 0)
    assert cohomology_dims(p2_fan, TorusDivisor((-1, -1, -1))) == (0, 0, 1)
    assert cohomology_dims(p2_fan, TorusDivisor((0, 0, 0))) == (1, 0, 0)


@pytest.mark.parametrize("d", range(0, 7))
def test_p2_sections(p2_fan, d):
    assert cohomology_dims(p2_fan, TorusDivisor((d, 0, 0))) == (comb(d + 2, 2), 0, 0)


@pytest.mark.parametrize("d", range(-8, -2))
def test_p2_top_cohomology(p2_fan, d):
    assert cohomology_dims(p2_fan, TorusDivisor((0, d, 0))) == (0, 0, comb(-d - 1, 2))


def test_square_intermediate_cohomology(square_fan):
    # O(-2, 0) on P^1 x P^1
    g = divisor_cohomology(square_fan, TorusDivisor((-2, 0, 0, 0)))
    assert g.totals == (0, 1, 0)
    assert [m for m, _ in g.characters_in_degree(1)] == [(1, 0)]
    assert euler_characteristic(g) == -1


def test_p3_cohomology(p3_fan):
    assert cohomology_dims(p3_fan, TorusDivisor((1, 0, 0, 0))) == (4, 0, 0, 0)
    assert cohomology_dims(p3_fan, TorusDivisor((-1, -1, -1, -1))) == (0, 0, 0, 1)


@pytest.mark.parametrize("name", ["p2_fan", "square_fan", "p3_fan"])
def test_serre_duality_on_random_divisors(request, name):
    f = request.getfixturevalue(name)
    k = canonical_divisor(f)
    rng = np.random.default_rng(11)
    for _ in range(50):
        d = TorusDivisor(tuple(int(a) for a in rng.integers(-3, 4, size=f.n_rays)))
        assert cohomology_dims(f, d) == tuple(reversed(cohomology_dims(f, k - d)))


@pytest.mark.parametrize("name", ["p2_fan", "square_fan", "p3_fan"])
def test_nef_sections_are_polytope_points(request, name):
    f = request.getfixturevalue(name)
    rng = np.random.default_rng(19)
    checked = 0
    for _ in range(40):
        d = TorusDivisor(tuple(int(a) for a in rng.integers(-1, 3, size=f.n_rays)))
        if not is_nef(f, d):
            continue
        dims = cohomology_dims(f, d)
        assert dims[0] == len(divisor_polytope_points(f, d))
        assert not any(dims[1:])
        checked += 1
    assert checked >= 10


def test_graded_piece(p2_fan):
    g = divisor_cohomology(p2_fan, TorusDivisor((-1, -1, -1)))
    assert g.graded_piece((0, 0)) == (0, 0, 1)
    assert g.graded_piece((5, 5)) == (0, 0, 0)
