import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from specrep.errors import NotHermitian, NotSquare
from specrep.generators import random_operator, rng_for
from specrep.linalg import (
    adjoint,
    cluster_spectrum,
    hermitian_eig,
    operator_norm,
    orthonormal_basis,
    polar,
    spectrum_atoms,
    subspace_distance,
    as_matrix,
)


def test_adjoint_examples():
    M = np.array([[1, 1j], [0, 2]])
    np.testing.assert_array_equal(adjoint(M), [[1, 0], [-1j, 2]])
    np.testing.assert_array_equal(adjoint(np.eye(3)), np.eye(3))
    H = np.array([[2, 1 - 1j], [1 + 1j, 3]])
    np.testing.assert_array_equal(adjoint(H), H)


def test_adjoint_is_an_involution(rng):
    M = random_operator("invertible", 5, rng)
    np.testing.assert_array_equal(adjoint(adjoint(M)), M)


@pytest.mark.parametrize(
    "M, expected",
    [
        (np.diag([1.0, 2.0]), 2.0),
        (np.zeros((3, 3)), 0.0),
        (np.array([[0, 2], [1, 0]]), 2.0),  # singular values of diag(1, 4)**0.5
    ],
)
def test_operator_norm_examples(M, expected):
    assert operator_norm(M) == pytest.approx(expected, abs=1e-14)


def test_operator_norm_bounds_random_ratios(rng):
    M = random_operator("invertible", 6, rng)
    x = rng.standard_normal((6, 50)) + 1j * rng.standard_normal((6, 50))
    ratios = np.linalg.norm(M @ x, axis=0) / np.linalg.norm(x, axis=0)
    assert ratios.max() <= operator_norm(M) * (1 + 1e-12)


def test_hermitian_eig_sorts_ascending():
    eig = hermitian_eig(np.diag([2.0, 1.0]))
    np.testing.assert_allclose(eig.values, [1, 2])


def test_hermitian_eig_swap_matrix():
    eig = hermitian_eig(np.array([[0, 1], [1, 0]]))
    np.testing.assert_allclose(eig.values, [-1, 1], atol=1e-15)
    # eigenvectors (1, -1)/sqrt(2) and (1, 1)/sqrt(2) up to a phase
    for v, ref in zip(eig.vectors.T, [np.array([1, -1]), np.array([1, 1])]):
        assert abs(np.vdot(ref / np.sqrt(2), v)) == pytest.approx(1, abs=1e-14)


def test_hermitian_eig_identity():
    np.testing.assert_allclose(hermitian_eig(np.eye(4)).values, np.ones(4))


def test_hermitian_eig_rejects_non_hermitian(swap_shift):
    with pytest.raises(NotHermitian):
        hermitian_eig(swap_shift)


def test_hermitian_eig_is_deterministic(rng):
    H = random_operator("hermitian", 7, rng)
    a, b = hermitian_eig(H), hermitian_eig(H.copy())
    np.testing.assert_array_equal(a.values, b.values)
    np.testing.assert_array_equal(a.vectors, b.vectors)


def test_eigensystem_invariants(rng):
    H = random_operator("hermitian", 9, rng)
    eig = hermitian_eig(H)
    V = eig.vectors
    assert operator_norm(adjoint(V) @ V - np.eye(9)) <= 1e-12
    assert operator_norm(eig.reconstruct() - H) <= 1e-12 * max(1, operator_norm(H))


def test_polar_swap_shift(swap_shift):
    pd = polar(swap_shift)
    np.testing.assert_allclose(pd.positive_part, np.diag([1, 2]), atol=1e-14)
    np.testing.assert_allclose(pd.unitary_part, [[0, 1], [1, 0]], atol=1e-14)
    assert pd.is_invertible


def test_polar_identity_and_unitary(rng):
    pd = polar(np.eye(3))
    np.testing.assert_allclose(pd.unitary_part, np.eye(3), atol=1e-14)
    np.testing.assert_allclose(pd.positive_part, np.eye(3), atol=1e-14)
    Q = random_operator("unitary", 5, rng)
    pd = polar(Q)
    np.testing.assert_allclose(pd.positive_part, np.eye(5), atol=1e-12)
    np.testing.assert_allclose(pd.unitary_part, Q, atol=1e-12)


def test_polar_singular_completes_to_unitary():
    T = np.array([[1, 1], [0, 0]], dtype=complex)
    pd = polar(T)
    U, P = pd.unitary_part, pd.positive_part
    assert not pd.is_invertible
    assert operator_norm(U @ P - T) <= 1e-14
    assert operator_norm(adjoint(U) @ U - np.eye(2)) <= 1e-14
    # ker(P) is sent onto ran(T)^perp = span{e_2}
    kernel = np.array([1, -1]) / np.sqrt(2)
    assert abs(abs((U @ kernel)[1]) - 1) <= 1e-14


def test_polar_rejects_rectangular():
    with pytest.raises(NotSquare):
        polar(np.ones((2, 3)))


def test_as_matrix_rejects_nan():
    with pytest.raises(ValueError):
        as_matrix([[np.nan]])


@settings(max_examples=60, deadline=None)
@given(dim=st.integers(2, 16), seed=st.integers(0, 2**32))
def test_polar_invariants_random_invertible(dim, seed):
    T = random_operator("invertible", dim, rng_for(seed))
    pd = polar(T)
    U, P = pd.unitary_part, pd.positive_part
    nT = operator_norm(T)
    assert operator_norm(U @ P - T) <= 1e-8 * nT
    assert operator_norm(adjoint(U) @ U - np.eye(dim)) <= 1e-8
    assert operator_norm(P - adjoint(P)) == 0
    assert np.linalg.eigvalsh(P)[0] >= -1e-10
    # second route: square root of T*T through the Hermitian eigensolver
    eig = hermitian_eig(adjoint(T) @ T)
    root = (eig.vectors * np.sqrt(np.clip(eig.values, 0, None))) @ adjoint(eig.vectors)
    assert operator_norm(P - root) <= 1e-8 * nT


def test_cluster_spectrum_examples():
    eig = hermitian_eig(np.diag([1.0, 2.0]))
    atoms = cluster_spectrum(eig, 1e-9)
    np.testing.assert_allclose(atoms.atoms, [1, 2])
    assert atoms.multiplicities == [1, 1]

    eig = hermitian_eig(np.diag([1.0, 1.0 + 1e-12, 3.0]))
    atoms = cluster_spectrum(eig, 1e-9)
    np.testing.assert_allclose(atoms.atoms, [1, 3])
    assert atoms.multiplicities == [2, 1]

    atoms = spectrum_atoms(np.diag([1.0, 2.0, 2.0]))
    assert atoms.multiplicities == [1, 2]
    np.testing.assert_allclose(atoms.projectors[1], np.diag([0, 1, 1]), atol=1e-15)
    assert np.linalg.matrix_rank(atoms.projectors[1]) == 2


def test_cluster_spectrum_rejects_nonpositive_tol():
    with pytest.raises(ValueError):
        cluster_spectrum(hermitian_eig(np.eye(2)), 0.0)


@settings(max_examples=40, deadline=None)
@given(dim=st.integers(1, 12), seed=st.integers(0, 2**32))
def test_projectors_resolve_identity(dim, seed):
    P = random_operator("positive", dim, rng_for(seed))
    atoms = spectrum_atoms(P)
    I = np.eye(dim)
    assert operator_norm(sum(atoms.projectors) - I) <= 1e-8
    for j, Pj in enumerate(atoms.projectors):
        assert operator_norm(Pj @ Pj - Pj) <= 1e-8
        assert operator_norm(Pj - adjoint(Pj)) <= 1e-8
        for Pk in atoms.projectors[j + 1:]:
            assert operator_norm(Pj @ Pk) <= 1e-8
    assert sum(atoms.multiplicities) == dim


def test_subspace_distance_metric_properties(rng):
    bases = [orthonormal_basis(rng.standard_normal((6, 2)) + 1j * rng.standard_normal((6, 2))) for _ in range(3)]
    A, B, C = bases
    assert subspace_distance(A, A) <= 1e-14
    assert subspace_distance(A, B) == pytest.approx(subspace_distance(B, A), abs=1e-14)
    assert subspace_distance(A, C) <= subspace_distance(A, B) + subspace_distance(B, C) + 1e-14
    # a different basis of the same span is at distance zero
    R = np.array([[0, 1], [1j, 0]])
    assert subspace_distance(A, A @ R) <= 1e-14
    assert subspace_distance(A, orthonormal_basis(rng.standard_normal((6, 3)))) == 1.0
