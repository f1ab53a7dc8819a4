import numpy as np
import pytest

from quasiexp.linalg import (
    NotHermitianError,
    hermitian_eigen,
    is_psd,
    kron,
    matrix_from_json,
    matrix_to_json,
    max_eigenvalue,
    min_eigenvalue,
    partial_trace,
    trace_product,
)
from quasiexp.quantum import correlated_bell_matrix, example_witness, maximally_entangled_state

W = example_witness().matrix


def random_hermitian(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (a + a.conj().T) / 2


def test_kron_identity_and_basis():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    e1, e2 = np.array([1, 0]), np.array([0, 1])
    assert np.array_equal(kron(e1, e2).ravel(), [0, 1, 0, 0])


def test_kron_diagonal():
    out = kron(np.diag([1, 2]), np.diag([3, 4]))
    assert np.array_equal(out, np.diag([3, 4, 6, 8]))


def test_kron_matches_numpy_on_rectangular(rng):
    a = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    b = rng.standard_normal((4, 1))
    assert np.allclose(kron(a, b), np.kron(a, b), atol=0)


def test_mixed_product_property(rng):
    for _ in range(20):
        a, c = rng.standard_normal((3, 2)), rng.standard_normal((2, 4))
        b, d = rng.standard_normal((2, 3)), rng.standard_normal((3, 2))
        lhs = kron(a, b) @ kron(c, d)
        assert np.max(np.abs(lhs - kron(a @ c, b @ d))) <= 1e-10


def test_witness_spectrum():
    assert np.allclose(hermitian_eigen(W).values, [-0.75, 1.25, 1.25, 3.25], atol=1e-9)
    assert min_eigenvalue(W) == pytest.approx(-0.75, abs=1e-12)


@pytest.mark.parametrize("n", [1, 3, 7])
def test_identity_spectrum(n):
    assert np.allclose(hermitian_eigen(np.eye(n)).values, 1.0)


def test_diagonal_sorted():
    assert np.allclose(hermitian_eigen(np.diag([2.0, -1.0, 0.0])).values, [-1, 0, 2])


def test_scaled_identity_min_eigenvalue():
    assert min_eigenvalue(3.5 * np.eye(5)) == pytest.approx(3.5)


def test_rank_one_projector_spectrum(rng):
    x = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    x /= np.linalg.norm(x)
    vals = hermitian_eigen(np.outer(x, x.conj())).values
    assert np.allclose(vals[:-1], 0.0, atol=1e-12)
    assert vals[-1] == pytest.approx(1.0)


def test_non_hermitian_rejected():
    with pytest.raises(NotHermitianError):
        hermitian_eigen(np.array([[0, 1], [0, 0]]))
    with pytest.raises(NotHermitianError):
        hermitian_eigen(np.ones((2, 3)))


def test_tiny_asymmetry_symmetrized_and_reported():
    a = np.array([[1.0, 2.0 + 4e-13], [2.0, -1.0]])
    dec = hermitian_eigen(a)
    assert dec.asymmetry == pytest.approx(2e-13, rel=1e-3)


@pytest.mark.parametrize("n", [2, 5, 9, 12])
def test_reconstruction_and_unitarity(rng, n):
    for _ in range(5):
        a = random_hermitian(rng, n)
        vals, vecs, _ = hermitian_eigen(a)
        assert np.all(np.diff(vals) >= 0)
        assert np.max(np.abs(a - vecs @ np.diag(vals) @ vecs.conj().T)) <= 1e-9
        assert np.max(np.abs(vecs.conj().T @ vecs - np.eye(n))) <= 1e-10
        # LAPACK as an outside reference
        assert np.allclose(vals, np.linalg.eigvalsh(a), atol=1e-10)


def test_quadratic_form_between_extreme_eigenvalues(rng):
    a = random_hermitian(rng, 6)
    lo, hi = min_eigenvalue(a), max_eigenvalue(a)
    for _ in range(100):
        x = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        x /= np.linalg.norm(x)
        q = np.vdot(x, a @ x).real
        assert lo - 1e-12 <= q <= hi + 1e-12


def test_is_psd():
    assert is_psd(maximally_entangled_state(), 1e-10)
    assert not is_psd(W, 1e-10)
    assert is_psd(np.zeros((3, 3)))


def test_trace_product_examples():
    rho_e = maximally_entangled_state()
    assert trace_product(W, rho_e) == pytest.approx(-0.75, abs=1e-12)
    assert trace_product(np.eye(4), rho_e) == pytest.approx(1.0)
    assert trace_product(W, np.eye(4) / 4) == pytest.approx(1.25)


def test_trace_product_dimension_mismatch():
    with pytest.raises(ValueError):
        trace_product(np.eye(2), np.eye(3))


def test_partial_trace_examples(rng):
    rho = np.array([[0.7, 0.1j], [-0.1j, 0.3]])
    sigma = np.diag([0.2, 0.5, 0.3])
    assert np.allclose(partial_trace(kron(rho, sigma), (2, 3), "A"), rho)
    assert np.allclose(partial_trace(kron(rho, sigma), (2, 3), "B"), sigma)
    assert np.allclose(partial_trace(correlated_bell_matrix(), (2, 2), "A"), np.eye(2) / 2)
    assert np.allclose(partial_trace(np.eye(4) / 4, (2, 2), "B"), np.eye(2) / 2)


def test_partial_trace_preserves_trace(rng):
    m = random_hermitian(rng, 6)
    for keep in "AB":
        assert abs(np.trace(partial_trace(m, (2, 3), keep)) - np.trace(m)) <= 1e-12


def test_partial_trace_bad_dims():
    with pytest.raises(ValueError):
        partial_trace(np.eye(4), (3, 2))


def test_matrix_json_round_trip(rng):
    m = random_hermitian(rng, 3)
    doc = matrix_to_json(m)
    assert doc["dim"] == 3
    assert np.array_equal(matrix_from_json(doc), m)
    with pytest.raises(ValueError):
        matrix_from_json({"dim": 2, "re": [[1.0]]})
