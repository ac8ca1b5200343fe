import random

from sympy import Matrix, Rational

from branescope.zlinalg import (
    int_matrix,
    kernel_basis,
    primitive_vector,
    rank_mod_p,
    rank_rational,
    smith_normal_form,
    solve_rational,
)


def _unimodular(m):
    rows, cols = m.shape
    return rows == cols and (rows == 0 or abs(int(m.det())) == 1)


def _random_matrix(rng, rows, cols, rank):
    """Integer rows x cols matrix of rank at most `rank`."""
    left = [[rng.randint(-4, 4) for _ in range(rank)] for _ in range(rows)]
    right = [[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rank)]
    return [[sum(left[i][k] * right[k][j] for k in range(rank)) for j in range(cols)] for i in range(rows)]


def _transpose(m):
    return [list(col) for col in zip(*m)]


def test_smith_normal_form_of_identity():
    u, d, v = smith_normal_form([[1, 0], [0, 1]])
    assert d == int_matrix([[1, 0], [0, 1]])
    assert _unimodular(u) and _unimodular(v)


def test_smith_normal_form_transforms():
    m = [[2, 4], [6, 8]]
    u, d, v = smith_normal_form(m)

    assert [int(d[i, i].element) for i in range(2)] == [2, 4]
    assert u * int_matrix(m) * v == d
    assert _unimodular(u) and _unimodular(v)


def test_smith_normal_form_of_zero_matrix():
    _, d, _ = smith_normal_form([[0, 0, 0]])
    assert d == int_matrix([[0, 0, 0]])


def test_rank_rational():
    assert rank_rational([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank_rational([[1, 2], [2, 4]]) == 1
    assert rank_rational([[Rational(1, 2), 1], [1, 2]]) == 1
    assert rank_rational([]) == 0


def test_rank_of_random_matrices_matches_determinant():
    rng = random.Random(7)
    for _ in range(10):
        m = [[rng.randint(-9, 9) for _ in range(5)] for _ in range(5)]
        expected = 5 if Matrix(m).det() != 0 else Matrix(m).rank()
        assert rank_rational(m) == expected


def test_rank_complements_left_kernel():
    rng = random.Random(11)
    for _ in range(25):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = _random_matrix(rng, rows, cols, rng.randint(1, min(rows, cols)))

        assert rank_rational(m) == rows - len(kernel_basis(_transpose(m), rows))


def test_rank_is_invariant_under_permutations():
    rng = random.Random(13)
    for _ in range(25):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = _random_matrix(rng, rows, cols, rng.randint(1, min(rows, cols)))
        row_order = rng.sample(range(rows), rows)
        col_order = rng.sample(range(cols), cols)
        permuted = [[m[i][j] for j in col_order] for i in row_order]

        assert rank_rational(permuted) == rank_rational(m)
        assert rank_mod_p(permuted, 101) == rank_mod_p(m, 101)


def test_rank_mod_p_sees_characteristic():
    assert rank_mod_p([[2, 0], [0, 3]], 3) == 1
    assert rank_mod_p([[2, 0], [0, 3]], 5) == 2
    assert rank_mod_p([], 7) == 0


def test_rank_mod_p_of_sparse_rows():
    assert rank_mod_p({0: {0: 2}, 1: {1: 3}}, 3, (2, 2)) == 1
    assert rank_mod_p({0: {0: 1, 2: 1}, 2: {0: 2, 2: 2}}, 7, (3, 3)) == 1
    assert rank_mod_p({0: {1: 7}}, 7, (1, 2)) == 0
    assert rank_mod_p({}, 7, (0, 4)) == 0


def test_sparse_and_dense_ranks_agree():
    rng = random.Random(17)
    for _ in range(10):
        m = _random_matrix(rng, 5, 6, rng.randint(1, 5))
        sparse = {i: {j: v for j, v in enumerate(row) if v} for i, row in enumerate(m)}

        assert rank_mod_p(sparse, 101, (5, 6)) == rank_mod_p(m, 101)


def test_kernel_basis():
    assert kernel_basis([[1, 0], [0, 1]]) == []

    (vector,) = kernel_basis([[1, 1]])
    assert vector[0] == -vector[1] != 0

    basis = kernel_basis([[1, 2, 3]])
    assert len(basis) == 2
    for v in basis:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0


def test_primitive_vector():
    assert primitive_vector([2, 4, -6]) == (1, 2, -3)
    assert primitive_vector([Rational(1, 2), Rational(1, 3)]) == (3, 2)


def test_solve_rational():
    assert solve_rational([[2, 0], [0, 4]], [1, 1]) == (Rational(1, 2), Rational(1, 4))
    assert solve_rational([[1, 2], [2, 4]], [1, 1]) is None
