import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from specrep.generators import (
    KINDS,
    MIN_SINGULAR_VALUE,
    generate_operator,
    haar_unitary,
    rng_for,
    shift_like,
)
from specrep.linalg import operator_norm, polar


@pytest.mark.parametrize("kind", KINDS)
def test_generation_is_deterministic(kind):
    a = generate_operator(kind, 5, 123)
    b = generate_operator(kind, 5, 123)
    np.testing.assert_array_equal(a, b)
    assert a.shape == (5, 5)
    if kind != "shift_like":
        assert not np.array_equal(a, generate_operator(kind, 5, 124))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**64 - 1), dim=st.integers(1, 12))
def test_construction_contracts(seed, dim):
    U = generate_operator("unitary", dim, seed)
    assert operator_norm(U.conj().T @ U - np.eye(dim)) <= 1e-10
    N = generate_operator("normal", dim, seed)
    assert operator_norm(N @ N.conj().T - N.conj().T @ N) <= 1e-10 * operator_norm(N) ** 2
    s = np.linalg.svd(generate_operator("invertible", dim, seed), compute_uv=False)
    assert s.min() >= MIN_SINGULAR_VALUE * (1 - 1e-12)
    P = generate_operator("positive", dim, seed)
    np.testing.assert_array_equal(P, P.conj().T)
    assert np.linalg.eigvalsh(P).min() > 0
    H = generate_operator("hermitian", dim, seed)
    np.testing.assert_array_equal(H, H.conj().T)


def test_shift_like_two_by_two():
    np.testing.assert_array_equal(shift_like([2, 1]), [[0, 2], [1, 0]])
    T = generate_operator("shift_like", 2, 9)
    # weights (0.5, 2.5) in some order: a weighted swap, never normal
    assert sorted(np.abs(T[T != 0])) == [0.5, 2.5]
    assert operator_norm(T @ T.conj().T - T.conj().T @ T) > 1
    np.testing.assert_allclose(polar(shift_like([2, 1])).positive_part, np.diag([1, 2]), atol=1e-15)


def test_haar_unitary_phases_are_not_biased():
    rng = rng_for(5)
    diag = np.array([np.diag(haar_unitary(3, rng)) for _ in range(400)])
    assert abs(diag.mean()) < 0.1


def test_bad_arguments():
    with pytest.raises(ValueError):
        generate_operator("nilpotent", 3, 0)
    with pytest.raises(ValueError):
        generate_operator("unitary", 0, 0)
    with pytest.raises(ValueError):
        rng_for(-1)
