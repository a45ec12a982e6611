import random
from fractions import Fraction as F

import pytest

from instanton.linalg import (Matrix, char_poly, generalized_eigenspace_dim,
                              is_nilpotent_on, kernel_basis, rank, restrict,
                              rref, solve, subspace_intersection)


def test_identity_rank_and_kernel():
    m = Matrix.identity(3)
    assert rank(m) == 3
    assert kernel_basis(m).rows == 0


def test_rank_one_kernel():
    m = Matrix([[1, 2], [2, 4]])
    assert rank(m) == 1
    ker = kernel_basis(m)
    assert ker.rows == 1
    v = ker.row(0)
    # spanned by (-2, 1)
    assert v[0] * 1 == -2 * v[1]
    assert m.apply(v) == [0, 0]


def test_rank_nullity_on_random(rand=None):
    rng = random.Random(7)
    m = Matrix([[F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(20)]
                for _ in range(20)])
    assert rank(m) + kernel_basis(m).rows == 20


def test_rref_transform_and_strategies():
    rng = random.Random(11)
    m = Matrix([[F(rng.randint(-9, 9)) for _ in range(8)] for _ in range(6)])
    r1, p1, t1 = rref(m, strategy="first")
    r2, p2, t2 = rref(m, strategy="min_bits")
    assert r1 == r2 and p1 == p2  # RREF is canonical, pivot strategy irrelevant
    assert t1 * m == r1
    assert rank(Matrix(t1.data)) == 6  # transform invertible


def test_generalized_eigenspace_jordan_block():
    j = Matrix([[2, 1], [0, 2]])
    assert generalized_eigenspace_dim(j, 2) == 2
    assert kernel_basis(j - Matrix.identity(2).scale(2)).rows == 1


def test_nilpotent_detection():
    n = Matrix([[0, 1, 2], [0, 0, 3], [0, 0, 0]])
    basis = Matrix.identity(3)
    assert is_nilpotent_on(n, basis)
    assert not is_nilpotent_on(Matrix.identity(3), basis)


def test_diagonal_eigen_dims():
    d = Matrix([[1, 0], [0, -3]])
    assert generalized_eigenspace_dim(d, 1) == 1
    assert generalized_eigenspace_dim(d, -3) == 1
    assert generalized_eigenspace_dim(d, 5) == 0


def test_restrict_and_invariance_error():
    m = Matrix([[1, 1, 0], [0, 1, 0], [0, 0, 2]])
    inv = Matrix([[1, 0, 0], [0, 1, 0]])
    r = restrict(m, inv)
    assert r == Matrix([[1, 1], [0, 1]])
    with pytest.raises(ValueError):
        restrict(Matrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]]), Matrix([[1, 0, 0]]))


def test_solve_and_inconsistency():
    m = Matrix([[1, 2], [3, 4]])
    x = solve(m, [5, 11])
    assert m.apply(x) == [5, 11]
    assert solve(Matrix([[1, 1], [1, 1]]), [0, 1]) is None


def test_subspace_intersection():
    a = Matrix([[1, 0, 0], [0, 1, 0]])
    b = Matrix([[0, 1, 0], [0, 0, 1]])
    inter = subspace_intersection(a, b)
    assert inter.rows == 1
    v = inter.row(0)
    assert v[0] == 0 and v[2] == 0 and v[1] != 0


def test_char_poly_diagonal():
    d = Matrix([[1, 0], [0, -3]])
    # det(xI - M) = (x-1)(x+3) = x^2 + 2x - 3
    assert char_poly(d) == [F(-3), F(2), F(1)]


def test_kernel_powers_stabilize():
    j = Matrix([[2, 1, 0], [0, 2, 0], [0, 0, 5]])
    dims = []
    shifted = j - Matrix.identity(3).scale(2)
    prev = 0
    for k in range(1, 4):
        d = kernel_basis(shifted.power(k)).rows
        assert d >= prev
        prev = d
        dims.append(d)
    assert dims == [1, 2, 2]
