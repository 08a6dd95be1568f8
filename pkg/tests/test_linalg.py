import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import laplace_det, leibniz_det, matmul
from quadnorm import _kernels
from quadnorm.errors import DimensionMismatch, NotSquare
from quadnorm.fixtures import default_family
from quadnorm.linalg import (
    Matrix,
    adjugate,
    berkowitz,
    det,
    det_batch_modular,
    identity,
    mat_add,
    mat_mul,
    zeros,
)
from quadnorm.rings import Integers, Modular, Polynomial

Z = Integers()
F5 = Modular(5)


def rand_matrix(rng, R, n, m=None):
    m = n if m is None else m
    return Matrix.from_payloads(R, [[R.random(rng) for _ in range(m)] for _ in range(n)])


def test_identity_and_zero_products():
    rng = random.Random(0)
    M = rand_matrix(rng, F5, 3)
    assert identity(F5, 3) @ M == M
    assert (zeros(F5, 3) @ M).is_zero()


def test_two_by_two_product_mod_5():
    a = Matrix.from_rows(F5, [[1, 2], [3, 4]])
    b = Matrix.from_rows(F5, [[0, 1], [1, 0]])
    # hand multiplication: swaps the columns
    assert (a @ b) == Matrix.from_rows(F5, [[2, 1], [4, 3]])


def test_dimension_errors():
    a = Matrix.from_rows(F5, [[1, 2, 3]])
    with pytest.raises(DimensionMismatch):
        mat_mul(a, a)
    with pytest.raises(DimensionMismatch):
        mat_add(a, a.transpose())
    with pytest.raises(NotSquare):
        det(a)


def test_det_identity_and_diagonal():
    for n in range(6):
        assert det(identity(Z, n)) == 1
    S, T = Z(7), Z(-3)
    assert det(Matrix.from_rows(Z, [[S, 0], [0, T]])) == S * T


def test_det_3x3_mod_7_frozen():
    R = Modular(7)
    rows = [[3, 6, 2], [5, 1, 4], [1, 6, 6]]
    # frozen from the cofactor-expansion oracle (Leibniz agrees)
    assert laplace_det(rows, 7) == 2
    assert det(Matrix.from_rows(R, rows)) == R(2)


def test_det_random_3x3_mod_7_vs_laplace():
    rng = random.Random(7)
    R = Modular(7)
    for _ in range(100):
        rows = [[rng.randrange(7) for _ in range(3)] for _ in range(3)]
        assert det(Matrix.from_rows(R, rows)).value == laplace_det(rows, 7)


def test_det_laplace_sample_over_z3():
    """Fixed pseudorandom sample of 500 matrices of size <= 4 over Z/3."""
    rng = random.Random("laplace-z3")
    R = Modular(3)
    for _ in range(500):
        n = rng.randint(1, 4)
        rows = [[rng.randrange(3) for _ in range(n)] for _ in range(n)]
        assert det(Matrix.from_rows(R, rows)).value == laplace_det(rows, 3)


def test_big_integer_determinant():
    rng = random.Random(11)
    rows = [[rng.randint(-10**12, 10**12) for _ in range(6)] for _ in range(6)]
    assert det(Matrix.from_rows(Z, rows)).value == leibniz_det(rows)


def test_berkowitz_char_poly():
    rows = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    c = berkowitz(Matrix.from_rows(Z, rows))
    # det(xI - A) = x^3 - 9x^2 + 24x - 18
    assert c == [1, -9, 24, -18]


def test_adjugate_identity():
    rng = random.Random(5)
    for R in [Z, Modular(12), Modular(9)]:
        for n in range(1, 5):
            M = rand_matrix(rng, R, n)
            d = det(M)
            assert adjugate(M) @ M == Matrix.from_payloads(
                R, [[d.value if i == j else R.zero for j in range(n)] for i in range(n)]
            )


def test_det_over_polynomials():
    P = Polynomial(Z, ("x",))
    x = P.variable("x")
    M = Matrix.from_rows(P, [[x, 1], [1, x]])
    assert det(M) == x * x - 1


@pytest.mark.parametrize("R", default_family(), ids=str)
def test_det_multiplicative_and_transpose(R):
    rng = random.Random(str(R))
    for _ in range(200):
        n = rng.randint(1, 4)
        a, b = rand_matrix(rng, R, n), rand_matrix(rng, R, n)
        assert det(a @ b) == det(a) * det(b)
        assert det(a.transpose()) == det(a)


@given(st.lists(st.integers(-50, 50), min_size=16, max_size=16))
def test_det_matches_leibniz_4x4(vals):
    rows = [vals[4 * i: 4 * i + 4] for i in range(4)]
    assert det(Matrix.from_rows(Z, rows)).value == leibniz_det(rows)


@given(st.integers(1, 6), st.integers(0, 2**32))
def test_matmul_matches_oracle(n, seed):
    rng = random.Random(seed)
    a = [[rng.randrange(9) for _ in range(n)] for _ in range(n)]
    b = [[rng.randrange(9) for _ in range(n)] for _ in range(n)]
    R = Modular(9)
    got = Matrix.from_rows(R, a) @ Matrix.from_rows(R, b)
    assert [list(r) for r in got.entries] == matmul(a, b, 9)


# -- batched kernel


@pytest.mark.parametrize("use_numba", ["1", "0"])
def test_batched_kernel_matches_generic(monkeypatch, use_numba):
    monkeypatch.setenv("QUADNORM_NUMBA", use_numba)
    rng = random.Random(2)
    for m in [1, 2, 9, 12, 97, 2**31 - 1]:
        R = Modular(m)
        for n in range(0, 6):
            mats = [rand_matrix(rng, R, n) for _ in range(40)]
            if n == 0:
                continue
            got = det_batch_modular(mats)
            assert got == [det(M) for M in mats]


def test_kernels_agree_on_large_batch():
    rng = np.random.default_rng(0)
    mats = rng.integers(0, 2**31 - 1, size=(500, 5, 5), dtype=np.int64)
    a = _kernels._det_mod_batch_numpy(mats, 2**31 - 1)
    if _kernels._det_mod_batch_numba is not None:
        assert np.array_equal(a, _kernels._det_mod_batch_numba(mats, 2**31 - 1))
    for k in range(20):
        rows = [[int(v) for v in r] for r in mats[k]]
        assert int(a[k]) == leibniz_det(rows, 2**31 - 1)


def test_kernel_rejects_bad_input():
    with pytest.raises(ValueError):
        _kernels.det_mod_batch(np.zeros((1, 2, 2), dtype=np.int64), 2**31)
    with pytest.raises(ValueError):
        _kernels.det_mod_batch(np.zeros((1, 2, 3), dtype=np.int64), 5)
    with pytest.raises(TypeError):
        det_batch_modular([identity(Z, 2)])
