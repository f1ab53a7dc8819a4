"""Finitely exchangeable dice: mixtures, signed representations, lower previsions.

Outcome tables are numpy arrays of shape ``(k,) * r`` indexed by 0-based
faces; the JSON form uses 1-based keys such as ``"1,2"``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, NamedTuple

import numpy as np

from . import lp
from .simplex import (
    MultiIndex,
    SimplexPolynomial,
    enumerate_multiindices,
    homogenize,
    multinomial,
    poly_degree,
)

PROB_TOL = 1e-12


class ExchangeabilityError(ValueError):
    pass


class InfeasibleAtResolution(RuntimeError):
    """No measure on the chosen grid reproduces the probabilities."""


@dataclass(frozen=True)
class ExchangeableProbability:
    k: int
    r: int
    table: np.ndarray

    def __getitem__(self, outcome) -> float:
        return float(self.table[tuple(outcome)])


@dataclass(frozen=True)
class SignedMeasure:
    """Finitely many atoms on the simplex with real weights summing to one."""

    weights: np.ndarray
    points: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        if pts.shape[0] != w.size:
            raise ValueError(f"{w.size} weights for {pts.shape[0]} atoms")
        if abs(w.sum() - 1.0) > 1e-9:
            raise ValueError(f"total weight is {w.sum()!r}, expected 1")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "points", pts)

    @classmethod
    def dirac(cls, point) -> SignedMeasure:
        return cls(np.ones(1), np.asarray(point, dtype=float)[None, :])

    @property
    def k(self) -> int:
        return self.points.shape[1]

    @property
    def total_variation(self) -> float:
        return float(np.abs(self.weights).sum())


class QuasiMomentVector(NamedTuple):
    """Values of a linear functional on the degree-`r` monomials ``theta**n``."""

    k: int
    r: int
    values: dict[MultiIndex, float]

    def value(self, n: MultiIndex) -> float:
        return self.values.get(tuple(n), 0.0)

    def apply(self, p: SimplexPolynomial | Mapping[MultiIndex, float]) -> float:
        """Value of the functional on `p` after lifting it to degree `r`."""
        h = homogenize(p, self.k, self.r)
        return float(sum(c * self.value(n) for n, c in h.coeffs.items()))

    def normalization(self) -> float:
        """The functional applied to the constant 1 = (theta_1 + ... + theta_k)**r."""
        return float(sum(multinomial(n) * v for n, v in self.values.items()))

    def is_normalized(self, tol: float = 1e-9) -> bool:
        return abs(self.normalization() - 1.0) <= tol

    def is_feasible(self, tol: float = 1e-9) -> bool:
        # nonnegative on every monomial <=> nonnegative on the whole cone
        return all(v >= -tol for v in self.values.values())


class LowerPrevision(NamedTuple):
    value: float
    dual: QuasiMomentVector


class SignedTable(NamedTuple):
    table: np.ndarray
    valid: bool
    reason: str


def uniform_table(k: int, r: int) -> np.ndarray:
    return np.full((k,) * r, 1.0 / k**r)


def pair_exclusion_table(k: int = 6) -> np.ndarray:
    """Two rolls that never agree: ``P(i, j) = 1/(k(k-1))`` off the diagonal."""
    t = np.full((k, k), 1.0 / (k * (k - 1)))
    np.fill_diagonal(t, 0.0)
    return t


def check_exchangeable(table, tol: float = PROB_TOL) -> ExchangeableProbability:
    """Validate a joint table over ``r`` rolls of a ``k``-faced die.

    Raises ExchangeabilityError naming the first outcome whose permutation
    has a different probability, or when the table is not a distribution.
    """
    t = np.asarray(table, dtype=float)
    if t.ndim == 0 or len(set(t.shape)) != 1:
        raise ExchangeabilityError(f"table must have shape (k,)*r, got {t.shape}")
    k, r = t.shape[0], t.ndim
    if np.any(t < -tol):
        idx = tuple(int(i) for i in np.argwhere(t < -tol)[0])
        raise ExchangeabilityError(f"negative probability at {_label(idx)}")
    if abs(t.sum() - 1.0) > tol:
        raise ExchangeabilityError(f"probabilities sum to {t.sum()!r}, not 1")
    for perm in itertools.permutations(range(r)):
        moved = np.transpose(t, perm)
        bad = np.argwhere(np.abs(moved - t) > tol)
        if bad.size:
            idx = tuple(int(i) for i in bad[0])
            other = tuple(idx[p] for p in perm)
            raise ExchangeabilityError(
                f"P{_label(idx)} = {t[idx]!r} but P{_label(other)} = {t[other]!r}")
    return ExchangeableProbability(k, r, t)


def _label(idx) -> str:
    return "(" + ",".join(str(i + 1) for i in idx) + ")"


def _power_tensor(theta: np.ndarray, r: int) -> np.ndarray:
    out = np.ones(())
    for _ in range(r):
        out = np.multiply.outer(out, theta)
    return out


def _mixture_table(nu: SignedMeasure, r: int) -> np.ndarray:
    k = nu.k
    table = np.zeros((k,) * r)
    for w, theta in zip(nu.weights, nu.points):
        table += w * _power_tensor(theta, r)
    return table


def mixture_probability(q: SignedMeasure, k: int, r: int) -> ExchangeableProbability:
    """Joint law of `r` rolls whose face probabilities are drawn from `q`."""
    if q.k != k:
        raise ValueError(f"measure lives on a {q.k}-simplex, expected {k}")
    if np.any(q.weights < 0):
        raise ValueError("mixing measure has negative weight; use signed_mixture_probability")
    return check_exchangeable(_mixture_table(q, r), tol=1e-9)


def signed_mixture_probability(nu: SignedMeasure, k: int, r: int) -> SignedTable:
    """Like mixture_probability but flags, rather than rejects, invalid output."""
    if nu.k != k:
        raise ValueError(f"measure lives on a {nu.k}-simplex, expected {k}")
    t = _mixture_table(nu, r)
    if np.any(t < -PROB_TOL):
        idx = tuple(int(i) for i in np.argwhere(t < -PROB_TOL)[0])
        return SignedTable(t, False, f"negative entry {t[idx]!r} at {_label(idx)}")
    if abs(t.sum() - 1.0) > 1e-9:
        return SignedTable(t, False, f"entries sum to {t.sum()!r}")
    return SignedTable(t, True, "")


def exchangeable_to_counts(p: ExchangeableProbability) -> dict[MultiIndex, float]:
    """Probability of each count vector: multinomial(n) times its tuple probability."""
    out = {}
    for n in enumerate_multiindices(p.k, p.r):
        rep = tuple(face for face, c in enumerate(n) for _ in range(c))
        out[n] = multinomial(n) * float(p.table[rep])
    return out


def grid_points(k: int, resolution: int) -> np.ndarray:
    return np.array(enumerate_multiindices(k, resolution), dtype=float) / resolution


def represent_signed(p: ExchangeableProbability, grid_resolution: int = 6,
                     nonnegative: bool = False) -> SignedMeasure:
    """Find a measure on the grid ``{n / grid_resolution}`` reproducing `p`.

    Weights are free in sign unless `nonnegative`; among all solutions the
    one with least total variation is returned. Raises InfeasibleAtResolution
    when the grid admits no representation.
    """
    if grid_resolution < 1:
        raise ValueError("grid_resolution must be positive")
    pts = grid_points(p.k, grid_resolution)
    classes = enumerate_multiindices(p.k, p.r)
    counts = exchangeable_to_counts(p)
    expo = np.array(classes, dtype=float)
    mult = np.array([multinomial(n) for n in classes], dtype=float)
    # moments[n, a] = multinomial(n) * theta_a ** n
    moments = mult[:, None] * np.prod(pts[None, :, :] ** expo[:, None, :], axis=2)
    a_eq = np.vstack([moments, np.ones(len(pts))])
    b_eq = np.array([counts[n] for n in classes] + [1.0])
    if nonnegative:
        prog = lp.LinearProgram(-np.ones(len(pts)), a_eq, b_eq)
    else:
        prog = lp.LinearProgram(-np.ones(2 * len(pts)), np.hstack([a_eq, -a_eq]), b_eq)
    sol = lp.solve(prog)
    if sol.status != "optimal":
        kind = "nonnegative" if nonnegative else "signed"
        raise InfeasibleAtResolution(
            f"no {kind} measure on the resolution-{grid_resolution} grid reproduces the table")
    w = sol.primal if nonnegative else sol.primal[: len(pts)] - sol.primal[len(pts):]
    keep = np.abs(w) > 1e-13
    return SignedMeasure(w[keep], pts[keep])


def _as_terms(g, k: int) -> Mapping[MultiIndex, float]:
    if isinstance(g, SimplexPolynomial):
        if g.num_vars != k:
            raise ValueError(f"polynomial has {g.num_vars} variables, expected {k}")
        return g.coeffs
    return g


def lower_prevision(g, r: int, k: int = 6) -> LowerPrevision:
    """Largest `c` with ``g - c`` in the degree-`r` Bernstein cone, and its dual.

    The LP is solved over quasi-moments: minimize the functional's value on
    ``homogenize(g, r)`` subject to nonnegativity on every monomial and
    ``L(1) = 1``. By LP duality its optimum equals the largest certified
    constant, and the optimal point is the extremal quasi-expectation.
    """
    terms = _as_terms(g, k)
    if poly_degree(terms) > r:
        raise ValueError(f"degree {poly_degree(terms)} exceeds level r={r}")
    h = homogenize(terms, k, r)
    classes = enumerate_multiindices(k, r)
    coeff = np.array([h.coefficient(n) for n in classes])
    mult = np.array([multinomial(n) for n in classes], dtype=float)
    sol = lp.solve(lp.LinearProgram(-coeff, mult[None, :], [1.0]))
    if sol.status != "optimal":
        raise lp.LpNumericalError(f"moment LP unexpectedly {sol.status}")
    values = {n: float(v) for n, v in zip(classes, sol.primal) if v != 0.0}
    return LowerPrevision(-sol.value, QuasiMomentVector(k, r, values))


def certificate_lp(g, r: int, k: int = 6) -> lp.LinearProgram:
    """Coefficient-matching form: maximize c s.t. ``homogenize(g - c, r) = sum u_n theta**n``.

    Variables are ``[c, u_n...]`` with `c` free and ``u >= 0``; there is one
    equality per degree-`r` monomial. Its dual vector is a quasi-moment vector.
    """
    terms = _as_terms(g, k)
    h = homogenize(terms, k, r)
    classes = enumerate_multiindices(k, r)
    m = len(classes)
    a = np.hstack([np.array([[multinomial(n)] for n in classes], dtype=float), np.eye(m)])
    b = np.array([h.coefficient(n) for n in classes])
    obj = np.zeros(m + 1)
    obj[0] = 1.0
    free = np.zeros(m + 1, dtype=bool)
    free[0] = True
    return lp.LinearProgram(obj, a, b, free)


def convergence_sweep(g, r_min: int, r_max: int, k: int = 6) -> list[tuple[int, float]]:
    terms = _as_terms(g, k)
    if r_min < poly_degree(terms):
        raise ValueError(f"r_min={r_min} is below the polynomial degree {poly_degree(terms)}")
    if r_max < r_min:
        raise ValueError("r_max must be at least r_min")
    return [(r, lower_prevision(terms, r, k).value) for r in range(r_min, r_max + 1)]


def table_to_json(table: np.ndarray) -> dict[str, float]:
    t = np.asarray(table)
    return {",".join(str(i + 1) for i in idx): float(t[idx]) for idx in np.ndindex(t.shape)}


def table_from_json(data: Mapping[str, float]) -> np.ndarray:
    """Inverse of table_to_json; missing outcomes are zero."""
    keys = [tuple(int(s) for s in key.split(",")) for key in data]
    if not keys:
        raise ValueError("empty probability table")
    r = len(keys[0])
    if any(len(kk) != r for kk in keys):
        raise ValueError("outcome tuples have different lengths")
    k = max(max(kk) for kk in keys)
    if min(min(kk) for kk in keys) < 1:
        raise ValueError("faces are numbered from 1")
    t = np.zeros((k,) * r)
    for key, v in zip(keys, data.values()):
        t[tuple(i - 1 for i in key)] = float(v)
    return t


def classical_minimum(g, k: int = 6, resolution: int = 30) -> float:
    """Minimum of `g` over a simplex grid; an upper bound on the true minimum."""
    terms = _as_terms(g, k)
    if math.comb(k + resolution - 1, resolution) > 2_000_000:
        raise ValueError("grid too large; lower the resolution")
    pts = grid_points(k, resolution)
    total = np.zeros(len(pts))
    for a, c in terms.items():
        total += c * np.prod(pts ** np.asarray(a, dtype=float), axis=1)
    return float(total.min())
