"""
Cyclic subspaces of a positive matrix and their transport under T* and T^-1.

The cyclic subspace generated by a vector under the algebra of polynomials in
``P`` is spanned by the spectral components ``Pi_j xi``; this is the same
space as the Krylov span ``{xi, P xi, P^2 xi, ...}`` but avoids the
ill-conditioned power basis.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calculus import apply_function
from .errors import SingularOperator, ZeroVector
from .linalg import (
    DEFAULT_TOL,
    SpectrumAtoms,
    adjoint,
    as_matrix,
    operator_norm,
    orthonormal_basis,
    polar,
    projector,
    scale,
    spectrum_atoms,
    subspace_distance,
)


def _atoms(P, atoms: SpectrumAtoms | None) -> SpectrumAtoms:
    return atoms if atoms is not None else spectrum_atoms(P)


def cyclic_subspace(P, xi, atoms: SpectrumAtoms | None = None, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the closure of ``{p(P) xi}``.

    Columns are ``Pi_j xi / ||Pi_j xi||`` for every atom whose component
    exceeds ``tol * ||xi||``, in ascending atom order.
    """
    xi = np.asarray(xi, dtype=complex).ravel()
    norm = np.linalg.norm(xi)
    if norm == 0:
        raise ZeroVector("cyclic subspace of the zero vector")
    atoms = _atoms(P, atoms)
    columns = []
    for B in atoms.bases:
        component = B @ (adjoint(B) @ xi)
        c = np.linalg.norm(component)
        if c > tol * norm:
            columns.append(component / c)
    return np.column_stack(columns)


def has_cyclic_vector(P, atoms: SpectrumAtoms | None = None):
    """``(True, xi)`` when ``P`` has simple spectrum, else ``(False, None)``.

    ``xi`` is the normalized sum of one unit eigenvector per atom.
    """
    atoms = _atoms(P, atoms)
    if not atoms.is_simple:
        return False, None
    xi = sum(B[:, 0] for B in atoms.bases) / np.sqrt(len(atoms.bases))
    return True, xi


@dataclass(frozen=True)
class CyclicDecomposition:
    subspaces: list
    cyclic_vectors: list
    source_operator: np.ndarray

    @property
    def dims(self) -> list:
        return [Q.shape[1] for Q in self.subspaces]

    def projectors(self) -> list:
        return [projector(Q) for Q in self.subspaces]

    def completeness_residual(self) -> float:
        n = self.source_operator.shape[0]
        return operator_norm(sum(self.projectors()) - np.eye(n))

    def gram_residual(self) -> float:
        B = np.hstack(self.subspaces)
        return operator_norm(adjoint(B) @ B - np.eye(B.shape[1]))

    def invariance_residuals(self, M=None) -> list:
        """``||(I - Q_i) M Q_i||`` per subspace; ``M`` defaults to the source."""
        M = self.source_operator if M is None else M
        n = M.shape[0]
        return [operator_norm((np.eye(n) - Q) @ M @ Q) for Q in self.projectors()]


def cyclic_decomposition(P, atoms: SpectrumAtoms | None = None, tol: float = DEFAULT_TOL) -> CyclicDecomposition:
    """Greedy orthogonal decomposition into cyclic subspaces of ``P``.

    Each round takes one unused eigenvector from every atom that still has
    some, sums them into a cyclic vector and spans its cyclic subspace. The
    number of rounds equals the largest multiplicity.
    """
    P = as_matrix(P, square=True)
    atoms = _atoms(P, atoms)
    subspaces, vectors = [], []
    for r in range(max(atoms.multiplicities)):
        picks = [B[:, r] for B in atoms.bases if B.shape[1] > r]
        xi = sum(picks) / np.sqrt(len(picks))
        subspaces.append(cyclic_subspace(P, xi, atoms=atoms, tol=tol))
        vectors.append(xi)
    return CyclicDecomposition(subspaces=subspaces, cyclic_vectors=vectors, source_operator=P)


def verify_invertible_invariance(
    P, decomposition: CyclicDecomposition, atoms: SpectrumAtoms | None = None, tol: float = DEFAULT_TOL
) -> list:
    """``||(I - Q_i) P^-1 Q_i||`` for every subspace of the decomposition."""
    P = as_matrix(P, square=True)
    atoms = _atoms(P, atoms)
    if atoms.atoms[0] <= tol * scale(P):
        raise SingularOperator("P has an atom at 0")
    inverse = apply_function(atoms, lambda x: 1.0 / x)
    return decomposition.invariance_residuals(inverse)


@dataclass(frozen=True)
class TransportReport:
    """Measured images of the cyclic subspaces of ``|T^k|`` under T* and T^-1.

    ``matching[i]`` is the index of the subspace of ``|T^(k+1)|`` paired with
    subspace ``i`` of ``|T^k|`` (``None`` when none is left to pair).
    """

    power_k: int
    matching: list
    adjoint_image_residuals: list
    inverse_image_residuals: list
    images_agree_residuals: list
    verdicts: dict
    dims_k: list
    dims_k1: list
    tol: float

    def to_dict(self) -> dict:
        return {
            "power_k": self.power_k,
            "matching": self.matching,
            "adjoint_image_residuals": self.adjoint_image_residuals,
            "inverse_image_residuals": self.inverse_image_residuals,
            "images_agree_residuals": self.images_agree_residuals,
            "verdicts": self.verdicts,
            "dims_k": self.dims_k,
            "dims_k1": self.dims_k1,
            "tol": self.tol,
        }


def verify_power_transport(T, k: int, tol: float = DEFAULT_TOL) -> TransportReport:
    """Compare ``T* H_i`` and ``T^-1 H_i`` with the cyclic subspaces of ``|T^(k+1)|``.

    ``H_i`` runs over the greedy decomposition of ``|T^k|``. Each adjoint
    image is paired with the nearest unused subspace of ``|T^(k+1)|``
    (lowest index on ties). Nothing is assumed; the residuals are reported.
    """
    T = as_matrix(T, square=True)
    if k < 1:
        raise ValueError("k must be a positive integer")
    if not polar(T, tol=tol).is_invertible:
        raise SingularOperator("T is not invertible")

    Pk = polar(np.linalg.matrix_power(T, k)).positive_part
    Pk1 = polar(np.linalg.matrix_power(T, k + 1)).positive_part
    dec_k = cyclic_decomposition(Pk, tol=tol)
    dec_k1 = cyclic_decomposition(Pk1, tol=tol)
    T_adj = adjoint(T)
    T_inv = np.linalg.inv(T)

    adjoint_images = [orthonormal_basis(T_adj @ Q) for Q in dec_k.subspaces]
    inverse_images = [orthonormal_basis(T_inv @ Q) for Q in dec_k.subspaces]

    matching, used = [], set()
    for A in adjoint_images:
        best, best_d = None, np.inf
        for j, H in enumerate(dec_k1.subspaces):
            if j in used:
                continue
            d = subspace_distance(A, H)
            if d < best_d:
                best, best_d = j, d
        matching.append(best)
        if best is not None:
            used.add(best)

    adj_res, inv_res, agree_res = [], [], []
    for A, B, j in zip(adjoint_images, inverse_images, matching):
        if j is None:
            adj_res.append(1.0)
            inv_res.append(1.0)
        else:
            H = dec_k1.subspaces[j]
            adj_res.append(subspace_distance(A, H))
            inv_res.append(subspace_distance(B, H))
        agree_res.append(subspace_distance(A, B))

    verdicts = {
        "adjoint_image": all(r <= tol for r in adj_res),
        "inverse_image": all(r <= tol for r in inv_res),
        "images_agree": all(r <= tol for r in agree_res),
    }
    return TransportReport(
        power_k=k,
        matching=matching,
        adjoint_image_residuals=adj_res,
        inverse_image_residuals=inv_res,
        images_agree_residuals=agree_res,
        verdicts=verdicts,
        dims_k=dec_k.dims,
        dims_k1=dec_k1.dims,
        tol=tol,
    )
