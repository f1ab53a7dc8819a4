"""Polynomials on the probability simplex and their Bernstein-cone certificates.

A multi-index is a plain tuple of nonnegative counts. Polynomials are stored
homogeneously over all ``k`` simplex coordinates, so the last coordinate plays
the role of the slack ``1 - theta_1 - ... - theta_{k-1}`` without ever being
substituted. With that convention the monomials ``theta**n`` (``|n| = r``) are
the Bernstein basis up to positive multinomial factors, and membership in the
degree-``r`` cone is a sign check on the stored coefficients.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

MultiIndex = tuple[int, ...]
SIMPLEX_TOL = 1e-12


class PolynomialParseError(ValueError):
    pass


@lru_cache(maxsize=256)
def _enumerate(k: int, r: int) -> tuple[MultiIndex, ...]:
    if k == 1:
        return ((r,),)
    return tuple((a,) + rest for a in range(r + 1) for rest in _enumerate(k - 1, r - a))


def enumerate_multiindices(k: int, r: int) -> list[MultiIndex]:
    """All count vectors of length `k` summing to `r`, in lexicographic order.

    >>> enumerate_multiindices(2, 2)
    [(0, 2), (1, 1), (2, 0)]
    """
    if k < 1 or r < 0:
        raise ValueError(f"need k >= 1 and r >= 0, got k={k}, r={r}")
    return list(_enumerate(k, r))


def multinomial(n: Iterable[int]) -> int:
    """``|n|! / prod(n_i!)``, computed exactly."""
    n = tuple(n)
    out = 1
    total = 0
    for c in n:
        if c < 0:
            raise ValueError(f"negative count in {n}")
        total += c
        out *= math.comb(total, c)
    return out


def simplex_point(probs, tol: float = SIMPLEX_TOL) -> np.ndarray:
    """Validate a point of the simplex and return it as a float array."""
    x = np.asarray(probs, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("a simplex point is a nonempty 1-d array")
    if np.any(x < -tol) or abs(x.sum() - 1.0) > tol:
        raise ValueError(f"not a point of the simplex: {x}")
    return x


@dataclass(frozen=True)
class SimplexPolynomial:
    """Homogeneous polynomial of fixed degree in `num_vars` simplex coordinates."""

    num_vars: int
    degree: int
    coeffs: Mapping[MultiIndex, float] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for n, c in self.coeffs.items():
            n = tuple(int(v) for v in n)
            if len(n) != self.num_vars or sum(n) != self.degree or min(n) < 0:
                raise ValueError(f"multi-index {n} is not of degree {self.degree} in {self.num_vars} variables")
            if c != 0:
                clean[n] = float(c)
        object.__setattr__(self, "coeffs", clean)

    def coefficient(self, n: MultiIndex) -> float:
        return self.coeffs.get(tuple(n), 0.0)

    def dense(self) -> np.ndarray:
        """Coefficients as an array over ``enumerate_multiindices(k, r)``."""
        return np.array([self.coefficient(n) for n in _enumerate(self.num_vars, self.degree)])

    def __call__(self, x) -> float:
        return evaluate(self, x)


def _check_terms(terms: Mapping[MultiIndex, float], k: int) -> dict[MultiIndex, float]:
    out: dict[MultiIndex, float] = {}
    for a, c in terms.items():
        a = tuple(int(v) for v in a)
        if len(a) != k or min(a, default=0) < 0:
            raise ValueError(f"exponent {a} does not have {k} nonnegative entries")
        out[a] = out.get(a, 0.0) + float(c)
    return out


def poly_degree(terms: Mapping[MultiIndex, float]) -> int:
    return max((sum(a) for a, c in terms.items() if c != 0), default=0)


def homogenize(terms: Mapping[MultiIndex, float] | SimplexPolynomial, k: int | None = None,
               r: int | None = None) -> SimplexPolynomial:
    """Lift a polynomial on the simplex to a homogeneous one of degree `r`.

    Each term of degree ``d`` is multiplied by ``(theta_1 + ... + theta_k)**(r - d)``,
    which equals one on the simplex, so the result agrees with the input there.

    Parameters
    ----------
    terms : mapping or SimplexPolynomial
        Exponent tuples of length `k` mapped to coefficients; need not be
        homogeneous. A SimplexPolynomial is raised to degree `r`.
    k : int
        Number of simplex coordinates (taken from the polynomial if given one).
    r : int
        Target degree; must be at least the degree of the input.
    """
    if isinstance(terms, SimplexPolynomial):
        k = terms.num_vars
        terms = terms.coeffs
    if k is None or r is None:
        raise TypeError("homogenize needs k and r")
    terms = _check_terms(terms, k)
    s = poly_degree(terms)
    if r < s:
        raise ValueError(f"target degree {r} is below the polynomial degree {s}")
    out: dict[MultiIndex, float] = {}
    for a, c in terms.items():
        if c == 0:
            continue
        for rest in _enumerate(k, r - sum(a)):
            n = tuple(x + y for x, y in zip(a, rest))
            out[n] = out.get(n, 0.0) + c * multinomial(rest)
    return SimplexPolynomial(k, r, out)


def evaluate(p: SimplexPolynomial | Mapping[MultiIndex, float], x) -> float:
    x = np.asarray(x, dtype=float)
    coeffs = p.coeffs if isinstance(p, SimplexPolynomial) else p
    total = 0.0
    for n, c in coeffs.items():
        if len(n) != x.size:
            raise ValueError(f"point has {x.size} coordinates, polynomial has {len(n)}")
        total += c * float(np.prod(x ** np.asarray(n)))
    return total


def bernstein_coefficients(p: SimplexPolynomial) -> dict[MultiIndex, float]:
    """Certificate coefficients of `p` over every monomial of its degree.

    All entries nonnegative means `p` lies in the degree-``r`` Bernstein cone.
    """
    return {n: p.coefficient(n) for n in _enumerate(p.num_vars, p.degree)}


def in_bernstein_cone(p: SimplexPolynomial, tol: float = 0.0) -> bool:
    return all(c >= -tol for c in p.coeffs.values())


def partition_of_unity(k: int, r: int, x) -> float:
    """``sum_n multinomial(n) x**n`` over ``|n| = r``; equals 1 on the simplex."""
    x = np.asarray(x, dtype=float)
    return sum(multinomial(n) * float(np.prod(x ** np.asarray(n))) for n in _enumerate(k, r))


def random_simplex_points(rng: np.random.Generator, k: int, size: int) -> np.ndarray:
    return rng.dirichlet(np.ones(k), size=size)


_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")
_NUMBER = re.compile(r"^(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")
_VAR = re.compile(r"^th(\d+)(?:\^(\d+))?$")


def parse_polynomial(text: str, k: int) -> dict[MultiIndex, float]:
    """Parse text such as ``"th1^2 - th1*th2 + th2^2 + 0.05"``.

    Terms are products of numbers and variables ``th1 .. thK`` (optionally
    raised to a nonnegative integer power with ``^``). Whitespace is ignored.
    """
    src = re.sub(r"\s+", "", text)
    # keep exponent signs like 1e-3 out of the term splitter
    src = re.sub(r"(\d[eE])([+-])", lambda m: m.group(1) + ("P" if m.group(2) == "+" else "M"), src)
    if not src:
        raise PolynomialParseError("empty polynomial")
    terms: dict[MultiIndex, float] = {}
    pos = 0
    while pos < len(src):
        m = _TERM.match(src, pos)
        if m is None or m.end() == pos:
            raise PolynomialParseError(f"cannot parse {text!r} near position {pos}")
        sign = -1.0 if m.group(1) == "-" else 1.0
        coef = sign
        expo = [0] * k
        for factor in m.group(2).split("*"):
            factor = factor.replace("P", "+").replace("M", "-")
            if _NUMBER.match(factor):
                coef *= float(factor)
                continue
            v = _VAR.match(factor)
            if v is None:
                raise PolynomialParseError(f"bad factor {factor!r} in {text!r}")
            i = int(v.group(1))
            if not 1 <= i <= k:
                raise PolynomialParseError(f"variable th{i} outside th1..th{k}")
            expo[i - 1] += int(v.group(2) or 1)
        key = tuple(expo)
        terms[key] = terms.get(key, 0.0) + coef
        pos = m.end()
    return terms
