import random

import pytest
from sympy import Rational

from branescope.exceptions import NonReflexive, NonSimplicialFan, NotCartier, NotInTorus, UsageError
from branescope.polytope import from_vertices
from branescope.toric import (
    TorusDivisor,
    anticanonical_divisor,
    canonical_divisor,
    cartier_data,
    contains,
    divisor_polytope_points,
    embedding,
    evaluate_embedding,
    is_ample,
    is_complete,
    is_nef,
    is_simplicial,
    is_very_ample,
    normal_fan,
    polytope_divisor,
    projectively_equal,
    rational_cartier_data,
)


def test_p2_fan(p2_fan):
    assert p2_fan.rays == ((1, 0), (0, 1), (-1, -1))
    assert p2_fan.cones == ((0, 1), (1, 2), (0, 2))
    assert is_simplicial(p2_fan)
    assert is_complete(p2_fan)


def test_square_and_p3_fans(square_fan, p3_fan):
    assert set(square_fan.rays) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert len(square_fan.cones) == 4
    assert p3_fan.n_rays == 4 and len(p3_fan.cones) == 4
    assert is_simplicial(square_fan) and is_simplicial(p3_fan)


def test_octahedron_fan_is_not_simplicial(octahedron):
    f = normal_fan(octahedron)
    assert f.n_rays == 8
    assert not is_simplicial(f)
    with pytest.raises(NonSimplicialFan):
        cartier_data(f, anticanonical_divisor(f))


def test_cone_membership(p2_fan):
    assert contains(p2_fan, 0, (1, 1))
    assert not contains(p2_fan, 0, (-1, -2))


def test_canonical_divisor(p2_fan, square_fan):
    assert canonical_divisor(p2_fan) == TorusDivisor((-1, -1, -1))
    assert canonical_divisor(square_fan) == TorusDivisor((-1, -1, -1, -1))
    assert -canonical_divisor(p2_fan) == anticanonical_divisor(p2_fan)


def test_divisor_arithmetic():
    d = TorusDivisor((1, 0, -1))
    assert d + d == 2 * d == TorusDivisor((2, 0, -2))
    assert (d - d).is_zero()
    with pytest.raises(ValueError):
        d + TorusDivisor((1, 1))


def test_divisor_parse(p2_fan):
    assert TorusDivisor.parse("1, 0,-1", p2_fan) == TorusDivisor((1, 0, -1))
    with pytest.raises(UsageError):
        TorusDivisor.parse("1,0", p2_fan)
    with pytest.raises(UsageError):
        TorusDivisor.parse("a,b,c")


def test_cartier_data(p2_fan):
    assert cartier_data(p2_fan, polytope_divisor(p2_fan)).characters == ((-1, -1), (2, -1), (-1, 2))
    assert cartier_data(p2_fan, TorusDivisor((1, 0, 0))).characters == ((-1, 0), (0, 0), (-1, 1))
    assert cartier_data(p2_fan, TorusDivisor((0, 0, 0))).characters == ((0, 0),) * 3


def test_not_cartier():
    # P(1,1,2): the cone of the singular point has index 2
    f = normal_fan(from_vertices([(-1, -1), (3, -1), (-1, 1)]))
    characters = rational_cartier_data(f, TorusDivisor((1,) + (0,) * (f.n_rays - 1)))
    assert any(x.q != 1 for m in characters for x in m)
    with pytest.raises(NotCartier):
        cartier_data(f, TorusDivisor((1,) + (0,) * (f.n_rays - 1)))


def test_positivity(p2_fan, square_fan):
    assert is_ample(p2_fan, TorusDivisor((1, 0, 0)))
    assert is_nef(p2_fan, TorusDivisor((0, 0, 0)))
    assert not is_ample(p2_fan, TorusDivisor((0, 0, 0)))
    # O(1, 0) on P^1 x P^1 is nef, not ample
    assert is_nef(square_fan, TorusDivisor((1, 0, 0, 0)))
    assert not is_ample(square_fan, TorusDivisor((1, 0, 0, 0)))


def test_very_ample(p2_fan, p3_fan):
    assert is_very_ample(p2_fan, TorusDivisor((1, 1, 1)))
    assert is_very_ample(p3_fan, TorusDivisor((2, 2, 2, 2)))
    assert not is_very_ample(p2_fan, TorusDivisor((0, 0, 0)))


def test_divisor_polytope_points(p2_fan):
    assert len(divisor_polytope_points(p2_fan, TorusDivisor((1, 1, 1)))) == 10
    assert divisor_polytope_points(p2_fan, TorusDivisor((0, 0, 0))) == [(0, 0)]
    assert divisor_polytope_points(p2_fan, TorusDivisor((-1, 0, 0))) == []


def test_embedding_sizes(p2, square, p3):
    assert embedding(p2).size == 10 and embedding(p2).target_dim == 9
    assert embedding(square).size == 9
    assert embedding(p3).size == 165
    with pytest.raises(NonReflexive):
        embedding(from_vertices([(2, 0), (-2, 0), (0, 1), (0, -1)]))


def test_evaluate_embedding(p2):
    e = embedding(p2)
    assert set(evaluate_embedding(e, (1, 1))) == {1}

    point = evaluate_embedding(e, (2, 1))
    assert list(point) == [Rational(2) ** m[0] for m in e.monomials]
    assert projectively_equal(point, [3 * x for x in point])

    with pytest.raises(NotInTorus):
        evaluate_embedding(e, (0, 1))


@pytest.mark.parametrize("name", ["p2", "square", "p3"])
def test_embedding_separates_torus_points(request, name):
    e = embedding(request.getfixturevalue(name))
    rng = random.Random(5)
    values = [Rational(a, b) for a in range(-4, 5) if a for b in (1, 2, 3)]

    for _ in range(20):
        z = [rng.choice(values) for _ in range(e.dim)]
        w = list(z)
        w[rng.randrange(e.dim)] *= rng.choice([Rational(-1), Rational(2), Rational(1, 3)])

        image = evaluate_embedding(e, z)
        assert not projectively_equal(image, evaluate_embedding(e, [2 * x for x in z]))
        assert not projectively_equal(image, evaluate_embedding(e, w))
        assert projectively_equal(image, [5 * x for x in image])
