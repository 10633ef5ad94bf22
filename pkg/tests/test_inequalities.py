import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from waveheat.inequalities import (
    PreconditionError, TestFunction, check_lemma, fuzz_lemmas, random_test_function,
)


def test_random_function_determinism():
    a = random_test_function(5, 7)
    b = random_test_function(5, 7)
    c = random_test_function(6, 7)
    assert np.array_equal(a.coefficients, b.coefficients)
    assert not np.array_equal(a.coefficients, c.coefficients)
    assert np.all(np.abs(a.coefficients) <= 1)
    with pytest.raises(ValueError):
        random_test_function(0, 0)
    with pytest.raises(ValueError):
        random_test_function(0, 17)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 16))
def test_vanish_at_zero(seed, degree):
    f = random_test_function(seed, degree, "vanish_at_0")
    assert abs(f(0.0)) < 1e-13


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 16))
def test_derivative_matches_finite_difference(seed, degree):
    f = random_test_function(seed, degree)
    x = np.linspace(0.1, 0.9, 9)
    h = 1e-6
    fd = (f(x + h) - f(x - h)) / (2 * h)
    assert np.allclose(f.derivative(x), fd, atol=1e-5 * (1 + degree**2))


def test_lemma_examples():
    c = check_lemma("A1", TestFunction.build(1, 0))
    assert c.lhs == pytest.approx(1) and c.rhs == pytest.approx(2) and c.satisfied
    u = TestFunction.build(0, 1, constraint="vanish_at_0")
    c = check_lemma("A3", u, TestFunction.build(0, 0), mu=1.0)
    assert c.lhs == pytest.approx(-(math.e - 1) - (1 - 1 / math.e), abs=1e-10)
    assert c.rhs == pytest.approx(-2 / math.e, abs=1e-12) and c.satisfied
    c = check_lemma("A4_i0", TestFunction.build(1, 1))
    assert c.lhs == pytest.approx(7 / 3, abs=1e-12)
    assert c.rhs == pytest.approx(1 + 4 / math.pi**2, abs=1e-12)
    assert not c.satisfied and c.variants["doubled"][2]


def test_lemma_a2_variants():
    # p = x: squared form holds with equality, printed form as well
    c = check_lemma("A2", TestFunction.build(0, 1, constraint="vanish_at_0"))
    assert c.satisfied and c.variants["printed"][2]
    # p = 3x: |p(1)|^2 = 9 > ||p_x|| = 3, squared 9 <= 9
    c = check_lemma("A2", TestFunction.build(0, 3, constraint="vanish_at_0"))
    assert c.satisfied and not c.variants["printed"][2]


def test_preconditions():
    free = TestFunction.build(1, 1)
    with pytest.raises(PreconditionError):
        check_lemma("A2", free)
    u = TestFunction.build(0, 1, constraint="vanish_at_0")
    with pytest.raises(PreconditionError):
        check_lemma("A3", u, free)
    with pytest.raises(PreconditionError):
        check_lemma("A3", u, None, mu=1.0)
    with pytest.raises(ValueError):
        check_lemma("A5", free)


@pytest.mark.parametrize("lemma", ["A1", "A4_i0", "A4_i1"])
def test_quadrature_refinement(lemma):
    for seed in range(5):
        f = random_test_function(seed, 16)
        a = check_lemma(lemma, f, cells=400)
        b = check_lemma(lemma, f, cells=800)
        assert abs(a.lhs - b.lhs) <= 1e-6 * abs(b.lhs) + 1e-15
        assert abs(a.rhs - b.rhs) <= 1e-6 * abs(b.rhs) + 1e-15


def test_fuzz_small():
    s = fuzz_lemmas(30, seed=1)
    assert s.count("A1") == 0 and s.count("A2_squared") == 0 and s.count("A3") == 0
    assert s.count("A4_i0") >= 1 and s.count("A4_i1") >= 1
    first = [c for c in s.counterexamples if c.key == "A4_i0"][0]
    assert first.trial == 0 and first.coefficients[:2] == (1.0, 1.0)
    assert s.passes["A1"] == 30
    again = fuzz_lemmas(30, seed=1)
    assert [c.coefficients for c in again.counterexamples] == [c.coefficients for c in s.counterexamples]
    with pytest.raises(ValueError):
        fuzz_lemmas(0)
