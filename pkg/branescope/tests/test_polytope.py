import pytest

from branescope.exceptions import BranescopeError, DegeneratePolytope, NonReflexive, UnsupportedDimension
from branescope.polytope import (
    dilate,
    ehrhart_check,
    ehrhart_counts,
    ehrhart_polynomial,
    from_vertices,
    interior_points,
    is_reflexive,
    lattice_points,
    polar_dual,
    same_vertex_set,
)


def test_square_facets(square):
    assert len(square.facets) == 4
    assert all(f.offset == 1 for f in square.facets)
    assert [f.normal for f in square.facets] == [(1, 0), (0, 1), (0, -1), (-1, 0)]


def test_p2_facet_order(p2):
    assert [f.normal for f in p2.facets] == [(1, 0), (0, 1), (-1, -1)]
    assert [f.offset for f in p2.facets] == [1, 1, 1]
    assert p2.vertices == ((-1, -1), (2, -1), (-1, 2))


def test_redundant_points_are_dropped():
    p = from_vertices([(0, 0), (1, 0), (0, 1), (1, 1), (-1, -1), (1, -1), (-1, 1)])
    assert set(p.vertices) == {(-1, -1), (1, -1), (1, 1), (-1, 1)}


def test_degenerate_input():
    with pytest.raises(DegeneratePolytope):
        from_vertices([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(DegeneratePolytope):
        from_vertices([])


def test_dimension_limit():
    with pytest.raises(UnsupportedDimension):
        from_vertices([(0,) * 5])


def test_reflexivity(square, p2, p3):
    assert is_reflexive(square)
    assert is_reflexive(p2)
    assert is_reflexive(p3)
    assert not is_reflexive(from_vertices([(2, 0), (-2, 0), (0, 1), (0, -1)]))


def test_polar_dual(square, p2):
    diamond = polar_dual(square)
    assert set(diamond.vertices) == {(1, 0), (0, 1), (0, -1), (-1, 0)}
    assert set(polar_dual(p2).vertices) == {(1, 0), (0, 1), (-1, -1)}
    assert same_vertex_set(polar_dual(diamond), square)


def test_polar_dual_is_an_involution(p2, p3):
    for p in (p2, p3):
        assert same_vertex_set(polar_dual(polar_dual(p)), p)


def test_polar_dual_needs_reflexive():
    with pytest.raises(NonReflexive):
        polar_dual(from_vertices([(2, 0), (-2, 0), (0, 1), (0, -1)]))


def test_dilate(square, p2):
    assert dilate(square, 1) == square
    doubled = dilate(p2, 2)
    assert doubled.vertices == ((-2, -2), (4, -2), (-2, 4))
    assert [f.offset for f in doubled.facets] == [2, 2, 2]
    with pytest.raises(DegeneratePolytope):
        dilate(p2, 0)


def test_lattice_points(square, p2, p3):
    assert len(lattice_points(p2)) == 10
    assert len(lattice_points(square)) == 9
    assert len(lattice_points(p3)) == 35
    assert interior_points(p2) == [(0, 0)]


def test_lattice_points_refuse_huge_polytopes():
    huge = from_vertices([(0, 0), (2**61, 0), (0, 2**61)])
    with pytest.raises(BranescopeError):
        lattice_points(huge)
    with pytest.raises(BranescopeError):
        interior_points(huge)


def test_ehrhart(p2, square):
    assert ehrhart_counts(p2, 3) == [1, 10, 28, 55]
    assert ehrhart_check(p2)
    assert ehrhart_check(square)
    assert ehrhart_polynomial(square).LC() == 4
