"""Density matrices as quasi-moment matrices, and the bosonic witness hierarchy.

Bipartite spaces are ordered ``x (x) y`` (row-major Kronecker order), so the
basis vector ``|i j>`` sits at index ``i * n_y + j``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .linalg import (
    as_matrix,
    check_hermitian,
    eigenvalues,
    kron,
    min_eigenvalue,
    partial_trace,
    trace_product,
)
from .simplex import MultiIndex, enumerate_multiindices, multinomial

PSD_TOL = 1e-10
TRACE_TOL = 1e-10
PROB_TOL = 1e-12


class DensityMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit trace."""

    matrix: np.ndarray

    def __post_init__(self):
        m = check_hermitian(self.matrix)
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise DensityMatrixError(f"trace is {tr!r}, expected 1")
        lo = min_eigenvalue(m)
        if lo < -PSD_TOL:
            raise DensityMatrixError(f"not PSD: least eigenvalue {lo:.3e}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class PureStateEnsemble:
    weights: np.ndarray
    states: np.ndarray  # one unit vector per row

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        x = np.atleast_2d(np.asarray(self.states, dtype=complex))
        if x.shape[0] != w.size:
            raise ValueError(f"{w.size} weights for {x.shape[0]} states")
        if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("ensemble weights must be nonnegative and sum to 1")
        norms = np.sum(np.abs(x) ** 2, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-12):
            raise ValueError(f"states are not unit vectors: x^H x = {norms}")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "states", x)

    @classmethod
    def single(cls, state) -> PureStateEnsemble:
        return cls(np.ones(1), np.asarray(state, dtype=complex)[None, :])


@dataclass(frozen=True)
class Witness:
    dims: tuple[int, int]
    matrix: np.ndarray

    def __post_init__(self):
        m = check_hermitian(self.matrix)
        nx, ny = self.dims
        if m.shape[0] != nx * ny:
            raise ValueError(f"witness of size {m.shape[0]} does not match dims {self.dims}")
        object.__setattr__(self, "dims", (int(nx), int(ny)))
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class SymmetricIsometry:
    n: int
    m: int
    occupations: list[MultiIndex]
    matrix: np.ndarray

    @property
    def compressed_dim(self) -> int:
        return len(self.occupations)


# ---------------------------------------------------------------- states ---


def basis_vector(n: int, i: int) -> np.ndarray:
    e = np.zeros(n, dtype=complex)
    e[i] = 1.0
    return e


def bell_basis() -> list[np.ndarray]:
    """Phi+, Phi-, Psi+, Psi- in the ``|00>, |01>, |10>, |11>`` ordering."""
    s = 1 / np.sqrt(2)
    return [np.array(v, dtype=complex) * s for v in
            ([1, 0, 0, 1], [1, 0, 0, -1], [0, 1, 1, 0], [0, 1, -1, 0])]


def maximally_entangled_state() -> np.ndarray:
    """Projector onto ``(|00> + |11>) / sqrt(2)``."""
    v = bell_basis()[0]
    return np.outer(v, v.conj())


def correlated_bell_matrix() -> np.ndarray:
    """The rank-one matrix ``1/2 [[0,0,0,0],[0,1,1,0],[0,1,1,0],[0,0,0,0]]``."""
    m = np.zeros((4, 4), dtype=complex)
    m[1:3, 1:3] = 0.5
    return m


def singlet_projector() -> np.ndarray:
    v = bell_basis()[3]
    return np.outer(v, v.conj())


def example_witness() -> Witness:
    """Two-qubit witness whose spectrum is {-0.75, 1.25, 1.25, 3.25}."""
    w = np.array([
        [0.25, 0.0, 0.0, -1.0],
        [0.0, 2.25, -1.0, 0.0],
        [0.0, -1.0, 2.25, 0.0],
        [-1.0, 0.0, 0.0, 0.25],
    ])
    return Witness((2, 2), w)


def random_unit_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return z / np.linalg.norm(z)


def random_density_matrix(rng: np.random.Generator, n: int, rank: int | None = None) -> np.ndarray:
    g = rng.standard_normal((n, rank or n)) + 1j * rng.standard_normal((n, rank or n))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


# ---------------------------------------------------- one-particle side ---


def moment_matrix(ensemble: PureStateEnsemble) -> DensityMatrix:
    """``sum_i w_i x_i x_i^H``: the second moments of a random unit vector."""
    x = ensemble.states
    m = np.einsum("a,ai,aj->ij", ensemble.weights, x, x.conj())
    return DensityMatrix(m)


def expectation(g, m: DensityMatrix | np.ndarray) -> float:
    """Quasi-expectation ``Tr(G M)`` of the observable `g`."""
    g = check_hermitian(g)
    mat = m.matrix if isinstance(m, DensityMatrix) else as_matrix(m)
    return trace_product(g, mat)


def gleason_probabilities(m: DensityMatrix | np.ndarray, basis: Sequence[np.ndarray]) -> np.ndarray:
    """Outcome probabilities ``z_i^H M z_i`` for an orthonormal basis."""
    mat = m.matrix if isinstance(m, DensityMatrix) else check_hermitian(m)
    z = np.column_stack([np.asarray(v, dtype=complex) for v in basis])
    n = mat.shape[0]
    if z.shape != (n, n):
        raise ValueError(f"need {n} basis vectors of length {n}, got shape {z.shape}")
    gram = z.conj().T @ z
    err = np.max(np.abs(gram - np.eye(n)))
    if err > 1e-10:
        raise ValueError(f"basis is not orthonormal (Gram error {err:.2e})")
    p = np.einsum("ia,ij,ja->a", z.conj(), mat, z).real
    if np.any(p < -PROB_TOL):
        raise DensityMatrixError(f"negative outcome probability {p.min():.3e}")
    return p


def product_observable(f, h) -> np.ndarray:
    return kron(check_hermitian(f), check_hermitian(h))


class SchmidtDiagnosis(NamedTuple):
    pure: bool
    product: bool
    purity: float
    reduced_purity: float


def schmidt_diagnosis(m: DensityMatrix | np.ndarray, dims: tuple[int, int]) -> SchmidtDiagnosis:
    """Decide whether `m` is a pure state and, if so, a product state.

    A pure bipartite state is a product exactly when its reduced state is
    pure. Mixed states are never reported as product here.
    """
    mat = m.matrix if isinstance(m, DensityMatrix) else check_hermitian(m)
    purity = trace_product(mat, mat)
    reduced = partial_trace(mat, dims, keep="A")
    reduced_purity = trace_product(reduced, reduced)
    pure = abs(purity - 1.0) <= 1e-9
    product = pure and abs(reduced_purity - 1.0) <= 1e-9
    return SchmidtDiagnosis(pure, product, purity, reduced_purity)


# ------------------------------------------------------ many identical ---


def permutation_operator(n: int, perm: Sequence[int]) -> np.ndarray:
    """Unitary sending ``|i_1 ... i_m>`` to the factors reordered by `perm`."""
    m = len(perm)
    eye = np.eye(n**m).reshape((n,) * m + (n**m,))
    return np.transpose(eye, list(perm) + [m]).reshape(n**m, n**m)


def _parity(perm: Sequence[int]) -> int:
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def symmetrizer(n: int, m: int, sign: int = +1) -> np.ndarray:
    """Projector onto the symmetric (+1) or antisymmetric (-1) part of (C^n)^(x)m."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out = np.zeros((n**m, n**m), dtype=complex)
    for perm in itertools.permutations(range(m)):
        coef = _parity(perm) if sign == -1 else 1
        out += coef * permutation_operator(n, perm)
    return out / math.factorial(m)


def bose_constraint_check(m: DensityMatrix | np.ndarray, n: int, particles: int) -> bool:
    mat = m.matrix if isinstance(m, DensityMatrix) else as_matrix(m)
    if mat.shape != (n**particles, n**particles):
        raise ValueError(f"matrix of shape {mat.shape} is not on ({n})^{particles}")
    p = symmetrizer(n, particles, +1)
    return bool(np.max(np.abs(mat - p @ mat @ p)) <= 1e-9)


def symmetric_isometry(n: int, m: int) -> SymmetricIsometry:
    """Orthonormal basis of the symmetric subspace labelled by occupation numbers.

    The column for occupation ``o`` spreads ``1/sqrt(multinomial(o))`` over
    every ordered sequence of single-particle labels with those counts.
    """
    occ = enumerate_multiindices(n, m)
    col = {o: j for j, o in enumerate(occ)}
    v = np.zeros((n**m, len(occ)))
    for flat, seq in enumerate(itertools.product(range(n), repeat=m)):
        o = tuple(seq.count(i) for i in range(n))
        v[flat, col[o]] = 1.0 / math.sqrt(multinomial(o))
    return SymmetricIsometry(n, m, occ, v.astype(complex))


class SymmetryReport(NamedTuple):
    trials: int
    embed_bose_residual: float      # ||M - Pi M Pi|| for M = V C V^H
    embed_density_error: float      # worst PSD/trace violation of V C V^H
    compress_density_error: float   # worst PSD/trace violation of V^H M V
    roundtrip_residual: float       # ||V (V^H M V) V^H - M||

    @property
    def max_residual(self) -> float:
        return max(self[1:])


def _density_error(m: np.ndarray) -> float:
    return max(abs(np.trace(m).real - 1.0), max(0.0, -min_eigenvalue(m)))


def power_symmetry_equivalence(trials: int, n: int, m: int, seed: int = 0) -> SymmetryReport:
    """Check numerically that bosonic states and compressed states correspond.

    Random compressed states ``C`` are embedded as ``V C V^H`` and checked to
    be symmetric density matrices; random states projected onto the
    symmetric subspace are compressed and re-embedded unchanged.
    """
    rng = np.random.default_rng(seed)
    iso = symmetric_isometry(n, m)
    v = iso.matrix
    proj = symmetrizer(n, m, +1)
    res = np.zeros(4)
    for _ in range(trials):
        c = random_density_matrix(rng, iso.compressed_dim)
        big = v @ c @ v.conj().T
        res[0] = max(res[0], np.max(np.abs(big - proj @ big @ proj)))
        res[1] = max(res[1], _density_error(big))

        rho = random_density_matrix(rng, n**m)
        sym = proj @ rho @ proj
        sym /= np.trace(sym).real
        small = v.conj().T @ sym @ v
        res[2] = max(res[2], _density_error(small))
        res[3] = max(res[3], np.max(np.abs(v @ small @ v.conj().T - sym)))
    return SymmetryReport(trials, *map(float, res))


# -------------------------------------------------------- hierarchy ---


def witness_polynomial(w: Witness, x, y) -> float:
    """``(x (x) y)^H W (x (x) y)`` for unit vectors `x`, `y`."""
    x = np.asarray(x, dtype=complex).ravel()
    y = np.asarray(y, dtype=complex).ravel()
    for name, v in (("x", x), ("y", y)):
        if abs(np.vdot(v, v).real - 1.0) > 1e-10:
            raise ValueError(f"{name} is not a unit vector")
    z = np.kron(x, y)
    val = np.vdot(z, w.matrix @ z)
    if abs(val.imag) > 1e-12:
        raise ValueError(f"witness polynomial has imaginary part {val.imag:.3e}")
    return float(val.real)


def extended_witness(w: Witness, r: int) -> np.ndarray:
    """``I_{n_x^r} (x) W`` on (C^{n_x})^(x)(r+1) (x) C^{n_y}, W on the last x-factor."""
    nx, _ = w.dims
    return kron(np.eye(nx**r), w.matrix)


def compressed_witness_bruteforce(w: Witness, r: int) -> np.ndarray:
    """``(V (x) I)^H (I (x) W) (V (x) I)`` assembled from the full tensor space."""
    _, ny = w.dims
    v = kron(symmetric_isometry(w.dims[0], r + 1).matrix, np.eye(ny))
    return v.conj().T @ extended_witness(w, r) @ v


def compressed_witness(w: Witness, r: int) -> np.ndarray:
    """The degree-`r` extension of `w` restricted to bosonic x-copies.

    Built directly in the occupation-number basis: with ``m = r + 1`` copies,
    the single-copy operator ``|j><k|`` averaged over copies acts as
    ``a_j^+ a_k / m``. Rows and columns are ordered (occupation, y-index).
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    nx, ny = w.dims
    m = r + 1
    occ = enumerate_multiindices(nx, m)
    pos = {o: i for i, o in enumerate(occ)}
    w4 = w.matrix.reshape(nx, ny, nx, ny)
    out = np.zeros((len(occ) * ny, len(occ) * ny), dtype=complex)
    for o in occ:
        col = pos[o] * ny
        for k in range(nx):
            if o[k] == 0:
                continue
            lowered = list(o)
            lowered[k] -= 1
            for j in range(nx):
                raised = list(lowered)
                raised[j] += 1
                amp = math.sqrt(o[k] * raised[j]) / m
                row = pos[tuple(raised)] * ny
                out[row:row + ny, col:col + ny] += amp * w4[j, :, k, :]
    return out


def hierarchy_value(w: Witness, r: int) -> float:
    """Least quasi-expectation of the witness over power-symmetric states at level `r`.

    Equals the least eigenvalue of the compressed operator, because the
    admissible states are exactly the density matrices supported on the
    symmetric subspace.
    """
    return min_eigenvalue(compressed_witness(w, r))


def compressed_dim(w: Witness, r: int) -> int:
    nx, ny = w.dims
    return math.comb(nx + r, r + 1) * ny


def hierarchy_sweep(w: Witness, r_max: int, r_min: int = 0) -> list[tuple[int, float, int]]:
    if r_min < 0 or r_max < r_min:
        raise ValueError(f"bad level range {r_min}..{r_max}")
    return [(r, hierarchy_value(w, r), compressed_dim(w, r)) for r in range(r_min, r_max + 1)]


def product_state_minimum(w: Witness, samples: int = 10_000, seed: int = 0) -> float:
    """Smallest witness polynomial value found over random product states.

    An upper bound on the infimum over product states.
    """
    rng = np.random.default_rng(seed)
    nx, ny = w.dims
    x = rng.standard_normal((samples, nx)) + 1j * rng.standard_normal((samples, nx))
    y = rng.standard_normal((samples, ny)) + 1j * rng.standard_normal((samples, ny))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    y /= np.linalg.norm(y, axis=1, keepdims=True)
    z = (x[:, :, None] * y[:, None, :]).reshape(samples, nx * ny)
    vals = np.einsum("si,ij,sj->s", z.conj(), w.matrix, z).real
    return float(vals.min())


def spectrum(w: Witness) -> np.ndarray:
    return eigenvalues(w.matrix)

