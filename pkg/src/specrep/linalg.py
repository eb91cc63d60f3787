"""
Dense complex linear algebra used by every other module.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. The
helpers here wrap LAPACK (through numpy) with the validation, ordering and
phase conventions needed for reproducible reports.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NotHermitian, NotSquare

DEFAULT_TOL = 1e-8
CLUSTER_TOL = 1e-9


def as_matrix(M, square: bool = False) -> np.ndarray:
    """Return ``M`` as a finite 2-d complex array (a copy only if needed)."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-d matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    if square and A.shape[0] != A.shape[1]:
        raise NotSquare(f"expected a square matrix, got {A.shape[0]}x{A.shape[1]}")
    return A


def adjoint(M) -> np.ndarray:
    return np.asarray(M).conj().T


def operator_norm(M) -> float:
    """Largest singular value."""
    A = np.asarray(M)
    if not np.any(A):
        return 0.0
    return float(np.linalg.norm(A, 2))


def scale(M) -> float:
    """``max(1, ||M||)``, the reference magnitude for relative tolerances."""
    return max(1.0, operator_norm(M))


@dataclass(frozen=True)
class EigenSystem:
    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        V = self.vectors
        return (V * self.values) @ V.conj().T


def _fix_phases(V: np.ndarray) -> np.ndarray:
    # Rotate each column so its largest entry (first on ties) is real positive.
    idx = np.argmax(np.abs(V) > np.abs(V).max(axis=0) * (1 - 1e-12), axis=0)
    pivots = V[idx, np.arange(V.shape[1])]
    phases = pivots / np.abs(pivots)
    return V / phases


def hermitian_eig(A, tol: float = DEFAULT_TOL) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix with ascending eigenvalues.

    Raises NotHermitian if ``||A - A*|| > tol * max(1, ||A||)``.
    """
    A = as_matrix(A, square=True)
    if operator_norm(A - adjoint(A)) > tol * scale(A):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    H = 0.5 * (A + adjoint(A))
    w, V = np.linalg.eigh(H)
    return EigenSystem(values=w, vectors=_fix_phases(V))


@dataclass(frozen=True)
class PolarDecomposition:
    """``T = U @ P`` with ``P = |T|`` positive semidefinite and ``U`` unitary."""

    unitary_part: np.ndarray
    positive_part: np.ndarray
    is_invertible: bool


def polar(T, tol: float = DEFAULT_TOL) -> PolarDecomposition:
    """Polar decomposition through the SVD ``T = X S Y*``.

    ``U = X Y*`` and ``P = Y S Y*``. For singular ``T`` the right singular
    vectors spanning ker(P) are sent to left singular vectors spanning
    ran(T)^perp, so ``U`` is a genuine unitary and ``U P = T`` still holds.
    """
    T = as_matrix(T, square=True)
    X, s, Yh = np.linalg.svd(T)
    U = X @ Yh
    P = (adjoint(Yh) * s) @ Yh
    P = 0.5 * (P + adjoint(P))
    invertible = bool(s[-1] > tol * max(1.0, s[0]))
    return PolarDecomposition(unitary_part=U, positive_part=P, is_invertible=invertible)


def modulus(T) -> np.ndarray:
    """``|T| = (T*T)^(1/2)``."""
    return polar(T).positive_part


@dataclass(frozen=True)
class SpectrumAtoms:
    """Distinct eigenvalues of a Hermitian matrix and their spectral projectors.

    ``bases[j]`` holds orthonormal eigenvectors for ``atoms[j]`` as columns,
    and ``projectors[j] = bases[j] @ bases[j]^*``.
    """

    atoms: np.ndarray
    projectors: list
    multiplicities: list
    bases: list = field(repr=False)

    @property
    def dim(self) -> int:
        return sum(self.multiplicities)

    @property
    def is_simple(self) -> bool:
        return all(m == 1 for m in self.multiplicities)


def cluster_spectrum(eig: EigenSystem, cluster_tol: float | None = None) -> SpectrumAtoms:
    """Merge consecutive eigenvalues whose gap is at most ``cluster_tol``."""
    values = np.asarray(eig.values, dtype=float)
    if cluster_tol is None:
        cluster_tol = CLUSTER_TOL * max(1.0, float(np.max(np.abs(values))))
    if cluster_tol <= 0:
        raise ValueError("cluster_tol must be positive")
    groups = [[0]]
    for i in range(1, len(values)):
        if values[i] - values[i - 1] <= cluster_tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    atoms, bases, projectors = [], [], []
    for g in groups:
        B = eig.vectors[:, g]
        atoms.append(float(np.mean(values[g])))
        bases.append(B)
        projectors.append(B @ adjoint(B))
    return SpectrumAtoms(
        atoms=np.array(atoms),
        projectors=projectors,
        multiplicities=[len(g) for g in groups],
        bases=bases,
    )


def spectrum_atoms(P, cluster_tol: float | None = None, tol: float = DEFAULT_TOL) -> SpectrumAtoms:
    """Shortcut for ``cluster_spectrum(hermitian_eig(P))`` with scale-aware merging."""
    P = as_matrix(P, square=True)
    if cluster_tol is None:
        cluster_tol = CLUSTER_TOL * scale(P)
    return cluster_spectrum(hermitian_eig(P, tol=tol), cluster_tol)


def orthonormal_basis(M, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (as columns) for the column space of ``M``."""
    M = np.asarray(M, dtype=complex)
    if M.shape[1] == 0:
        return M
    X, s, _ = np.linalg.svd(M, full_matrices=False)
    rank = int(np.sum(s > tol * max(1.0, s[0])))
    return X[:, :rank]


def projector(Q) -> np.ndarray:
    """Orthogonal projector onto the span of the orthonormal columns of ``Q``."""
    return Q @ adjoint(Q)


def subspace_distance(A, B) -> float:
    """Gap ``||Q_A - Q_B||`` between column spans of orthonormal bases A and B.

    Equals the sine of the largest principal angle for equal dimensions and
    1 when the dimensions differ.
    """
    if A.shape[1] != B.shape[1]:
        return 1.0
    return min(1.0, operator_norm(projector(A) - projector(B)))
