"""Independent brute-force references used to freeze expected values."""
import itertools

import numpy as np


def vertex_enumeration(c, a, b, tol=1e-9):
    """Maximize c @ x over {A x = b, x >= 0} by trying every basis.

    Returns the optimum, or None when no basic feasible solution exists.
    Only valid for bounded feasible regions.
    """
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    m, n = a.shape
    rank = np.linalg.matrix_rank(a)
    best = None
    for cols in itertools.combinations(range(n), rank):
        sub = a[:, cols]
        if np.linalg.matrix_rank(sub) < rank:
            continue
        xb, *_ = np.linalg.lstsq(sub, b, rcond=None)
        if np.max(np.abs(sub @ xb - b)) > tol or np.any(xb < -tol):
            continue
        val = float(np.dot(np.asarray(c)[list(cols)], xb))
        best = val if best is None else max(best, val)
    return best


def random_bounded_lp(rng, n_max=8, m_max=5):
    """Random equality LP with a bounding row sum(x) + s = U (s is the last column)."""
    n = int(rng.integers(2, n_max))  # structural columns; slack makes n + 1 <= n_max
    m = int(rng.integers(1, m_max))
    a = rng.integers(-3, 4, size=(m, n)).astype(float)
    if rng.random() < 0.75:
        x0 = rng.integers(0, 3, size=n).astype(float)
        b = a @ x0
    else:
        b = rng.integers(-4, 5, size=m).astype(float)
    bound = np.hstack([np.ones(n), [1.0]])
    a = np.vstack([np.hstack([a, np.zeros((m, 1))]), bound])
    b = np.append(b, 12.0)
    c = np.append(rng.integers(-4, 5, size=n).astype(float), 0.0)
    return c, a, b


def brute_min_product_state(w, nx, ny, samples, rng):
    x = rng.standard_normal((samples, nx)) + 1j * rng.standard_normal((samples, nx))
    y = rng.standard_normal((samples, ny)) + 1j * rng.standard_normal((samples, ny))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    y /= np.linalg.norm(y, axis=1, keepdims=True)
    vals = [np.vdot(np.kron(xi, yi), w @ np.kron(xi, yi)).real for xi, yi in zip(x, y)]
    return np.array(vals)
