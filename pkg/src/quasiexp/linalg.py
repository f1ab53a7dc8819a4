"""Dense complex linear algebra for Hermitian operators.

Matrices are plain numpy arrays. The eigensolver is a cyclic complex Jacobi
method, which is exact enough at the sizes used here (a few hundred at most)
and has no dependence on LAPACK.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import NamedTuple

import numpy as np

HERMITIAN_TOL = 1e-12


class NotHermitianError(ValueError):
    """Raised when a matrix that must be Hermitian is not."""


class ConvergenceError(RuntimeError):
    pass


class EigenDecomposition(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray
    # max |A - A^H| / 2 removed by symmetrization before decomposing
    asymmetry: float = 0.0


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {m.shape}")
    return m


def hermitian_deviation(a) -> float:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        return float("inf")
    return float(np.max(np.abs(m - m.conj().T), initial=0.0))


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    return hermitian_deviation(a) <= tol


def check_hermitian(a, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return `a` as a complex array, raising if it is not Hermitian."""
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise NotHermitianError(f"matrix is not square: shape {m.shape}")
    dev = hermitian_deviation(m)
    if dev > tol:
        raise NotHermitianError(f"matrix deviates from its adjoint by {dev:.3e} > {tol:.1e}")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product of two matrices (vectors are treated as columns)."""
    a = as_matrix(a)
    b = as_matrix(b)
    ra, ca = a.shape
    rb, cb = b.shape
    out = a[:, None, :, None] * b[None, :, None, :]
    return out.reshape(ra * rb, ca * cb)


def _jacobi_pair(h: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Annihilate h[p, q] in place with one unitary rotation."""
    apq = h[p, q]
    mag = abs(apq)
    phase = apq / mag
    app = h[p, p].real
    aqq = h[q, q].real
    theta = (aqq - app) / (2.0 * mag)
    t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    # J = diag(1, conj(phase)) @ [[c, s], [-s, c]]
    j = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
    idx = [p, q]
    h[:, idx] = h[:, idx] @ j
    h[idx, :] = j.conj().T @ h[idx, :]
    v[:, idx] = v[:, idx] @ j
    h[p, q] = 0.0
    h[q, p] = 0.0
    h[p, p] = h[p, p].real
    h[q, q] = h[q, q].real


def hermitian_eigen(h, tol: float = HERMITIAN_TOL, max_sweeps: int = 100) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    The input is symmetrized as ``(A + A^H) / 2`` first; the removed
    asymmetry is reported on the result. Sweeps stop once the off-diagonal
    Frobenius norm falls below ``1e-12`` times the Frobenius norm of ``A``.

    Returns
    -------
    EigenDecomposition
        Ascending real eigenvalues and a unitary matrix whose columns are
        the matching eigenvectors.
    """
    m = check_hermitian(h, tol)
    n = m.shape[0]
    asym = hermitian_deviation(m) / 2.0
    a = (m + m.conj().T) / 2.0
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    threshold = 1e-12 * scale
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= threshold or n < 2:
            break
        # skip entries far below the stopping level
        skip = 1e-18 * scale
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > skip:
                    _jacobi_pair(a, v, p, q)
    else:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(values[order], v[:, order], asym)


def eigenvalues(h) -> np.ndarray:
    return hermitian_eigen(h).values


def min_eigenvalue(h) -> float:
    return float(hermitian_eigen(h).values[0])


def max_eigenvalue(h) -> float:
    return float(hermitian_eigen(h).values[-1])


def is_psd(h, tol: float = 0.0) -> bool:
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return min_eigenvalue(h) >= -tol


def trace_product(g, m) -> float:
    """Real part of Tr(G M) for Hermitian G and M of equal size."""
    g = as_matrix(g)
    m = as_matrix(m)
    if g.shape != m.shape or g.shape[0] != g.shape[1]:
        raise ValueError(f"dimension mismatch: {g.shape} vs {m.shape}")
    # Tr(GM) = sum_ij G_ij M_ji
    t = np.sum(g * m.T)
    if abs(t.imag) > HERMITIAN_TOL * max(1.0, abs(t.real)):
        raise NotHermitianError(f"Tr(GM) has imaginary part {t.imag:.3e}")
    return float(t.real)


def partial_trace(m, dims: tuple[int, int], keep: str = "A") -> np.ndarray:
    """Reduce a bipartite operator on C^dA (x) C^dB to the kept factor."""
    m = as_matrix(m)
    da, db = dims
    if m.shape != (da * db, da * db):
        raise ValueError(f"matrix of shape {m.shape} does not factor as {da}x{db}")
    t = m.reshape(da, db, da, db)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def matrix_to_json(m) -> dict:
    m = as_matrix(m)
    return {"dim": m.shape[0], "re": m.real.tolist(), "im": m.imag.tolist()}


def matrix_from_json(data: dict) -> np.ndarray:
    """Build a square matrix from ``{"dim": n, "re": [[...]], "im": [[...]]}``."""
    try:
        n = int(data["dim"])
        re = np.asarray(data["re"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix JSON: {exc}") from exc
    im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
    if re.shape != (n, n) or im.shape != (n, n):
        raise ValueError(f"matrix JSON declares dim {n} but has shapes {re.shape}, {im.shape}")
    return re + 1j * im


def load_matrix(path: str | Path) -> tuple[np.ndarray, dict]:
    """Read a matrix JSON file; also returns the raw document for extra keys."""
    data = json.loads(Path(path).read_text())
    return matrix_from_json(data), data
