import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasiexp.simplex import (
    PolynomialParseError,
    SimplexPolynomial,
    bernstein_coefficients,
    enumerate_multiindices,
    evaluate,
    homogenize,
    in_bernstein_cone,
    multinomial,
    parse_polynomial,
    partition_of_unity,
    random_simplex_points,
    simplex_point,
)


def e(*idx, k=6):
    out = [0] * k
    for i in idx:
        out[i] += 1
    return tuple(out)


def test_enumerate_small_cases():
    assert enumerate_multiindices(2, 2) == [(0, 2), (1, 1), (2, 0)]
    assert enumerate_multiindices(3, 0) == [(0, 0, 0)]
    assert len(enumerate_multiindices(6, 2)) == 21


@pytest.mark.parametrize("k,r", [(1, 4), (3, 3), (4, 5), (6, 4)])
def test_enumerate_count_and_order(k, r):
    idx = enumerate_multiindices(k, r)
    assert len(idx) == math.comb(k + r - 1, r)
    assert idx == sorted(set(idx))
    assert all(sum(n) == r for n in idx)


def test_multinomial():
    assert multinomial((1, 1, 0, 0, 0, 0)) == 2
    assert multinomial((2, 0, 0, 0, 0, 0)) == 1
    assert multinomial((2, 2, 1)) == 30


def test_homogenize_constant_one():
    p = homogenize({(0,) * 6: 1.0}, 6, 2)
    for n in enumerate_multiindices(6, 2):
        assert p.coefficient(n) == (1.0 if max(n) == 2 else 2.0)


def test_homogenize_linear_two_vars():
    assert homogenize({(1, 0): 1.0}, 2, 1).coeffs == {(1, 0): 1.0}


def test_homogenize_example_polynomial(witness_g):
    p = homogenize(witness_g, 6, 2)
    assert p.coefficient(e(0, 0)) == pytest.approx(1.05)
    assert p.coefficient(e(0, 1)) == pytest.approx(-0.9)
    assert p.coefficient(e(2, 3)) == pytest.approx(0.1)
    assert p.coefficient(e(5, 5)) == pytest.approx(0.05)


def test_homogenize_rejects_low_target(witness_g):
    with pytest.raises(ValueError):
        homogenize(witness_g, 6, 1)


def test_evaluate_examples(witness_g):
    uniform = np.full(6, 1 / 6)
    assert evaluate(homogenize({(0,) * 6: 1.0}, 6, 2), uniform) == pytest.approx(1.0)
    assert evaluate(SimplexPolynomial(6, 2, {e(0, 1): 1.0}), uniform) == pytest.approx(1 / 36)
    x = np.array([0.5, 0.5, 0, 0, 0, 0])
    assert evaluate(witness_g, x) == pytest.approx(0.3)
    assert evaluate(homogenize(witness_g, 6, 2), x) == pytest.approx(0.3)


def test_cone_membership_examples(witness_g):
    const = homogenize({(0,) * 6: 0.05}, 6, 2)
    coeffs = bernstein_coefficients(const)
    assert len(coeffs) == 21 and min(coeffs.values()) > 0
    shifted = dict(witness_g)
    shifted[(0,) * 6] += 0.45
    assert in_bernstein_cone(homogenize(shifted, 6, 2), tol=1e-12)
    bare = {e(0, 0): 1.0, e(0, 1): -1.0, e(1, 1): 1.0}
    assert bernstein_coefficients(homogenize(bare, 6, 2))[e(0, 1)] == -1.0
    assert not in_bernstein_cone(homogenize(bare, 6, 2))


def test_partition_of_unity(rng):
    pts = random_simplex_points(rng, 6, 100)
    for r in range(1, 7):
        for x in pts:
            assert abs(partition_of_unity(6, r, x) - 1.0) <= 1e-12


def test_homogenize_agrees_on_simplex(rng, witness_g):
    for r in (2, 3, 5):
        p = homogenize(witness_g, 6, r)
        for x in random_simplex_points(rng, 6, 100):
            assert abs(evaluate(p, x) - evaluate(witness_g, x)) <= 1e-12


def test_homogenize_is_transitive(witness_g):
    for r in (2, 3, 4):
        step = homogenize(homogenize(witness_g, 6, r), r=r + 1)
        direct = homogenize(witness_g, 6, r + 1)
        keys = set(step.coeffs) | set(direct.coeffs)
        assert max(abs(step.coefficient(n) - direct.coefficient(n)) for n in keys) <= 1e-12


polys = st.dictionaries(
    st.tuples(*[st.integers(0, 2)] * 3),
    st.floats(-5, 5, allow_nan=False),
    min_size=1, max_size=6,
)


@settings(max_examples=60, deadline=None)
@given(polys, st.integers(0, 3))
def test_cone_nesting(terms, extra):
    r = max(sum(a) for a in terms) + extra
    p = homogenize(terms, 3, r)
    if in_bernstein_cone(p):
        assert in_bernstein_cone(homogenize(p, r=r + 1))


@settings(max_examples=60, deadline=None)
@given(polys, st.integers(0, 2), st.lists(st.floats(0.01, 1), min_size=3, max_size=3))
def test_homogenize_agreement_property(terms, extra, raw):
    r = max(sum(a) for a in terms) + extra
    x = np.array(raw) / sum(raw)
    assert evaluate(homogenize(terms, 3, r), x) == pytest.approx(evaluate(terms, x), abs=1e-9)


def test_simplex_point_validation():
    assert simplex_point([0.25, 0.75]).sum() == 1.0
    with pytest.raises(ValueError):
        simplex_point([0.5, 0.6])
    with pytest.raises(ValueError):
        simplex_point([-0.1, 1.1])


def test_parse_polynomial(witness_g):
    assert witness_g == {e(0, 0): 1.0, e(0, 1): -1.0, e(1, 1): 1.0, (0,) * 6: 0.05}
    assert parse_polynomial("  2*th1 * th3^2 -1e-3 ", 3) == {(1, 0, 2): 2.0, (0, 0, 0): -1e-3}
    assert parse_polynomial("th1 + th1", 2) == {(1, 0): 2.0}


@pytest.mark.parametrize("bad", ["", "th7", "th1^^2", "x1", "th1 +", "2**th1"])
def test_parse_polynomial_errors(bad):
    with pytest.raises(PolynomialParseError):
        parse_polynomial(bad, 6)
