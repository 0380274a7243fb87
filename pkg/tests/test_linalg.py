from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermrank import linalg
from hermrank.scalar import I, ONE, ZERO, Scalar

from oracles import gaussian_rank
from strategies import gaussian_scalars


def matrices(max_rows: int = 5, max_cols: int = 5):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda k: st.lists(st.lists(gaussian_scalars, min_size=k, max_size=k),
                               min_size=m, max_size=m)))


def test_inverse_of_singular_matrix_raises():
    with pytest.raises(ValueError):
        linalg.inverse([[1, 2], [2, 4]])


def test_det_small():
    assert linalg.det([[1, 2], [3, 4]]) == -2
    assert linalg.det([[0, 1], [1, 0]]) == -1
    assert linalg.det([[I, 0], [0, I]]) == -1


def test_positive_definite():
    assert linalg.is_positive_definite([[2, I], [-I, 2]])
    assert not linalg.is_positive_definite([[1, 2], [2, 1]])
    assert not linalg.is_positive_definite([[0, 0], [0, 1]])


def test_permutation_moves_basis_vectors():
    P = linalg.permutation(3, [2, 0, 1])
    assert linalg.matvec(P, [ONE, ZERO, ZERO]) == [ZERO, ZERO, ONE]


@settings(max_examples=100)
@given(matrices())
def test_rank_matches_oracle(M):
    assert linalg.rank(M) == gaussian_rank(M)


@settings(max_examples=100)
@given(matrices())
def test_nullspace_dimension_and_membership(M):
    N = linalg.nullspace(M)
    assert len(N) == len(M[0]) - linalg.rank(M)
    for v in N:
        assert not any(linalg.matvec(linalg.as_matrix(M), v))


@settings(max_examples=80)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(gaussian_scalars, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse_and_det(M):
    if linalg.is_invertible(M):
        Mi = linalg.inverse(M)
        assert linalg.matmul(linalg.as_matrix(M), Mi) == linalg.identity(len(M))
        assert linalg.det(M) * linalg.det(Mi) == 1
    else:
        assert linalg.det(M) == 0


@settings(max_examples=80)
@given(matrices(4, 4))
def test_bilinear_normal_form(G):
    S, T, rho = linalg.bilinear_normal_form(G)
    p, q = len(G), len(G[0])
    D = linalg.matmul(linalg.matmul(linalg.transpose(S), linalg.as_matrix(G)), T)
    want = [[ONE if i == j and i < rho else ZERO for j in range(q)] for i in range(p)]
    assert D == want
    assert rho == gaussian_rank(G)
    assert linalg.is_invertible(S) and linalg.is_invertible(T)


def test_hyperplane_basis():
    ell = [Scalar(1), Scalar(0), I]
    B = linalg.hyperplane_basis(ell)
    assert len(B) == 2
    assert all(sum((a * b for a, b in zip(ell, v)), ZERO) == 0 for v in B)
