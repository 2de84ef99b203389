import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from specset.errors import DimensionError, NotHermitianError, SingularMatrixError
from specset.linalg import (adjoint, hermitian_extreme_eig, lu_solve_batched, mat_mul,
                            operator_norm, power_operator_norm, solve_linear)

from conftest import random_complex

T = np.array([[1, 1], [0, 0]], dtype=complex)
J = np.array([[0, 1], [-1, 0]], dtype=complex)


def test_mat_mul_examples():
    assert np.array_equal(mat_mul(np.eye(2), T), T)
    assert np.array_equal(mat_mul(T, T), T)
    assert np.array_equal(mat_mul(J, J), -np.eye(2))
    # T^n = T for all n >= 1
    P = T
    for _ in range(5):
        P = mat_mul(P, T)
    assert np.array_equal(P, T)


def test_mat_mul_dimension_mismatch():
    with pytest.raises(DimensionError):
        mat_mul(np.ones((2, 3)), np.ones((2, 3)))


def test_adjoint_examples(rng):
    assert np.array_equal(adjoint([[1j, 0], [0, 0]]), [[-1j, 0], [0, 0]])
    assert np.array_equal(adjoint(T), [[1, 0], [1, 0]])
    A = random_complex(rng, 3, 5)
    assert np.array_equal(adjoint(adjoint(A)), A)


def _cofactor_inverse_2x2(A):
    (a, b), (c, d) = A
    det = a * d - b * c
    return np.array([[d, -b], [-c, a]]) / det


def test_solve_linear_examples():
    assert np.allclose(solve_linear(np.eye(2), T), T, atol=0)
    A = 2 * np.eye(2) - T
    expected = _cofactor_inverse_2x2(A)
    assert np.allclose(expected, [[1, 0.5], [0, 0.5]])
    assert np.allclose(solve_linear(A, np.eye(2)), expected, rtol=0, atol=1e-15)


def test_solve_linear_singular():
    with pytest.raises(SingularMatrixError):
        solve_linear([[1, 1], [1, 1]], np.eye(2))


def test_solve_linear_residual(rng):
    for n in range(1, 9):
        for _ in range(10):
            A = random_complex(rng, n, n) + 3 * np.eye(n)
            B = random_complex(rng, n, 2)
            X = solve_linear(A, B)
            res = operator_norm(A @ X - B) / (1 + operator_norm(A) * operator_norm(X))
            assert res <= 1e-10


def test_batched_solve_matches_single(rng):
    A = random_complex(rng, 7, 4, 4)
    B = random_complex(rng, 7, 4, 3)
    X = lu_solve_batched(A, B)
    for k in range(7):
        assert np.allclose(X[k], np.linalg.solve(A[k], B[k]), atol=1e-12)


def test_batched_solve_reports_singular_index():
    A = np.stack([np.eye(2), np.zeros((2, 2)), np.eye(2)]).astype(complex)
    with pytest.raises(SingularMatrixError) as info:
        lu_solve_batched(A, np.broadcast_to(np.eye(2), A.shape))
    assert info.value.index == 1


def test_operator_norm_examples():
    assert operator_norm([[1, 2], [0, -1]]) == pytest.approx(1 + math.sqrt(2), rel=1e-14)
    assert operator_norm(J) == pytest.approx(1.0, rel=1e-14)
    for n in (1, 3, 8):
        assert operator_norm(np.eye(n)) == pytest.approx(1.0, rel=1e-14)
    assert operator_norm(np.zeros((3, 3))) == 0.0


def test_power_norm_agrees(rng):
    assert power_operator_norm([[1, 2], [0, -1]]) == pytest.approx(1 + math.sqrt(2), rel=1e-12)
    for _ in range(20):
        A = random_complex(rng, 5, 5)
        assert power_operator_norm(A) == pytest.approx(operator_norm(A), rel=1e-7)


def test_power_norm_deterministic(rng):
    A = random_complex(rng, 6, 6)
    assert power_operator_norm(A) == power_operator_norm(A.copy())
    assert operator_norm(A) == operator_norm(A.copy())


def test_norm_invariances(rng):
    for _ in range(100):
        n = int(rng.integers(1, 9))
        A = random_complex(rng, n, n)
        assert abs(operator_norm(A) - operator_norm(A.conj().T)) <= 1e-10
    for _ in range(20):
        m = int(rng.integers(1, 5))
        U = np.kron(np.eye(m), J)
        A = random_complex(rng, 2 * m, 2 * m)
        assert abs(operator_norm(U @ A) - operator_norm(A)) <= 1e-10


def test_hermitian_extreme_examples():
    lam, x = hermitian_extreme_eig(np.diag([0.0, 1.0]))
    assert lam == pytest.approx(1.0)
    assert np.allclose(x, [0, 1])
    lam, x = hermitian_extreme_eig([[0, 1], [1, 0]])
    assert lam == pytest.approx(1.0)
    assert np.allclose(x, np.array([1, 1]) / math.sqrt(2))


def test_hermitian_extreme_charpoly_oracle():
    H = 0.5 * (T + T.conj().T)
    # eigenvalues of [[1, 1/2], [1/2, 0]]: roots of x^2 - x - 1/4
    tr, det = 1.0, -0.25
    top = (tr + math.sqrt(tr * tr - 4 * det)) / 2
    assert top == pytest.approx((1 + math.sqrt(2)) / 2, rel=1e-15)
    lam, x = hermitian_extreme_eig(H)
    assert lam == pytest.approx(top, rel=1e-14)
    assert np.linalg.norm(H @ x - lam * x) <= 1e-10


def test_hermitian_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_extreme_eig(T)


def test_hermitian_phase_convention(rng):
    A = random_complex(rng, 5, 5)
    lam, x = hermitian_extreme_eig(A + A.conj().T)
    k = int(np.argmax(np.abs(x)))
    assert x[k].imag == pytest.approx(0, abs=1e-15) and x[k].real > 0
    assert np.linalg.norm(x) == pytest.approx(1.0)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_rayleigh_below_top_eigenvalue(n, seed):
    r = np.random.default_rng(seed)
    A = random_complex(r, n, n)
    H = A + A.conj().T
    lam, _ = hermitian_extreme_eig(H)
    x = random_complex(r, n)
    x /= np.linalg.norm(x)
    assert lam >= np.real(np.vdot(x, H @ x)) - 1e-10
