import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from terracini.qlinalg import Matrix


def minor_rank(m: Matrix) -> int:
    """Independent rank oracle: largest k with a nonzero k x k minor."""
    best = 0
    for k in range(1, min(m.rows, m.cols) + 1):
        found = False
        for rows in itertools.combinations(range(m.rows), k):
            for cols in itertools.combinations(range(m.cols), k):
                sub = Matrix([[m.entry(i, j) for j in cols] for i in rows])
                if sub.det() != 0:
                    found = True
                    break
            if found:
                break
        if found:
            best = k
    return best


def test_identity_rank():
    assert Matrix.identity(3).rank() == 3


def test_proportional_rows():
    assert Matrix([[1, 2], [2, 4]]).rank() == 1


def test_stacked_jet_rows_rank_four():
    m = Matrix([[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 1, 1], [0, 1, 2, 3]])
    assert minor_rank(m) == 4
    assert m.rank() == 4


def test_rref_shape_and_pivots():
    m = Matrix([[0, 2, 4], [1, 1, 1]])
    reduced, rank, pivots = m.rref()
    assert rank == 2
    assert pivots == (0, 1)
    assert reduced.row(0)[0] == 1 and reduced.row(1)[1] == 1


def test_kernel_empty_for_identity():
    assert Matrix.identity(2).kernel_basis() == ()


def test_kernel_single_relation():
    basis = Matrix([[1, 1]]).kernel_basis()
    assert len(basis) == 1
    v = basis[0]
    assert v[0] == -v[1] and v != (0, 0)


def test_det_examples():
    assert Matrix([[1, 2], [3, 4]]).det() == -2
    assert Matrix([[0, 1], [1, 0]]).det() == -1
    assert Matrix.identity(4).det() == 1


def test_float_entries_rejected():
    with pytest.raises(TypeError):
        Matrix([[0.5]])


small_entries = st.integers(min_value=-6, max_value=6)


@st.composite
def small_matrices(draw):
    rows = draw(st.integers(min_value=1, max_value=4))
    cols = draw(st.integers(min_value=1, max_value=4))
    data = [[draw(small_entries) for _ in range(cols)] for _ in range(rows)]
    return Matrix(data)


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rank_equals_transpose_rank(m):
    assert m.rank() == m.transpose().rank()


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rank_matches_minor_oracle(m):
    assert m.rank() == minor_rank(m)


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_kernel_vectors_are_exact(m):
    basis = m.kernel_basis()
    assert len(basis) == m.cols - m.rank()
    for v in basis:
        assert all(entry == 0 for entry in m.mul_vector(v))
