from itertools import product

import numpy as np
import pytest

from src.tools.gf2linalg import (
    BitMatrix,
    RowSpace,
    in_row_space,
    left_kernel_dim,
    mul_mod2,
    rank,
    right_kernel_basis,
)


def test_rank_identity_and_zero():
    assert rank(BitMatrix.identity(3)) == 3
    assert rank(BitMatrix.zeros(4, 7)) == 0


def test_rank_wider_than_one_word():
    dense = np.zeros((3, 130), dtype=np.uint8)
    dense[0, 0] = dense[1, 64] = dense[2, 129] = 1
    dense[2, 0] = 1
    assert rank(BitMatrix.from_dense(dense)) == 3


def test_rank_leaves_input_untouched():
    m = BitMatrix.from_dense([[1, 1, 0], [1, 1, 0], [0, 1, 1]])
    before = m.to_dense().copy()
    assert rank(m) == 2
    assert np.array_equal(m.to_dense(), before)


def test_right_kernel_identity_is_empty():
    assert right_kernel_basis(BitMatrix.identity(2)) == []


def test_right_kernel_repetition_check():
    basis = right_kernel_basis(BitMatrix.from_dense([[1, 1]]))
    assert len(basis) == 1
    assert basis[0].tolist() == [1, 1]


def test_right_kernel_random_matrix():
    rng = np.random.default_rng(7)
    m = BitMatrix.from_dense(rng.integers(0, 2, size=(10, 20)))
    basis = right_kernel_basis(m)
    assert len(basis) == 20 - rank(m)
    for x in basis:
        assert mul_mod2(m, BitMatrix.from_dense(x).transpose()).is_zero()


def test_left_kernel_dim():
    assert left_kernel_dim(BitMatrix.identity(3)) == 0
    assert left_kernel_dim(BitMatrix.from_dense([[1, 0, 1], [1, 0, 1]])) == 1


def test_in_row_space():
    m = BitMatrix.from_dense([[1, 1, 0, 0]])
    assert in_row_space(m, [0, 0, 0, 0])
    assert in_row_space(m, [1, 1, 0, 0])
    assert not in_row_space(m, [0, 0, 1, 1])
    assert in_row_space(BitMatrix.identity(4), [1, 0, 1, 1])


def test_in_row_space_length_mismatch():
    with pytest.raises(ValueError):
        in_row_space(BitMatrix.identity(3), [1, 0])


def test_mul_mod2():
    m = BitMatrix.from_dense([[1, 0, 1], [0, 1, 1]])
    assert mul_mod2(BitMatrix.identity(2), m) == m
    assert mul_mod2(m, BitMatrix.zeros(3, 2)).is_zero()
    ones = BitMatrix.from_dense([[1, 1]])
    product = mul_mod2(ones, ones.transpose())
    assert (product.rows, product.cols) == (1, 1)
    assert product.is_zero()


def test_mul_mod2_dimension_mismatch():
    with pytest.raises(ValueError):
        mul_mod2(BitMatrix.identity(2), BitMatrix.identity(3))


def test_transpose_twice_and_bounds():
    rng = np.random.default_rng(3)
    m = BitMatrix.from_dense(rng.integers(0, 2, size=(5, 70)))
    assert m.transpose().transpose() == m
    assert m.get(4, 69) in (0, 1)
    with pytest.raises(IndexError):
        m.get(5, 0)
    with pytest.raises(IndexError):
        m.get(0, 70)


def test_from_supports_cancels_repeats():
    m = BitMatrix.from_supports([[0, 2, 2], [1]], 3)
    assert m.to_dense().tolist() == [[1, 0, 0], [0, 1, 0]]
    assert m.row_supports() == [[0], [1]]
    assert m.row_ints() == [1, 2]
    assert m.column_ints() == [1, 2, 0]


def test_row_space_membership():
    space = RowSpace([0b0011, 0b0110])
    assert space.rank == 2
    assert 0b0101 in space
    assert 0 in space
    assert 0b1000 not in space
    assert not space.add(0b0101)
    assert space.add(0b1000)
    assert space.rank == 3


def test_case_word_check_matrix_ranks(case_code_12x6):
    assert rank(case_code_12x6.hx) == 16
    assert rank(case_code_12x6.hz) == 16
    assert left_kernel_dim(case_code_12x6.hx) == 2
    assert left_kernel_dim(case_code_12x6.hz) == 2


def test_rank_equals_transpose_rank():
    rng = np.random.default_rng(21)
    for _ in range(60):
        rows, cols = (int(v) for v in rng.integers(1, 65, size=2))
        density = rng.uniform(0.05, 0.6)
        m = BitMatrix.from_dense((rng.random((rows, cols)) < density).astype(np.uint8))
        r = rank(m)
        assert r == rank(m.transpose())
        assert r == RowSpace.of(m).rank
        assert r <= min(rows, cols)


def test_in_row_space_matches_span_enumeration():
    rng = np.random.default_rng(22)
    for _ in range(25):
        rows, cols = int(rng.integers(1, 7)), int(rng.integers(1, 9))
        m = BitMatrix.from_dense(rng.integers(0, 2, size=(rows, cols)))
        dense = m.to_dense()
        span = set()
        for take in product((0, 1), repeat=rows):
            combo = np.array(take, dtype=np.int64) @ dense.astype(np.int64) % 2
            span.add(tuple(int(b) for b in combo))
        assert len(span) == 2 ** rank(m)
        space = RowSpace.of(m)
        for bits in product((0, 1), repeat=cols):
            assert in_row_space(m, bits) == (bits in span)
            assert (sum(b << i for i, b in enumerate(bits)) in space) == (bits in span)
