"""
Scalar spectral measures and the finite L2 model.

For a positive matrix ``P`` with atoms ``lambda_j`` and a vector ``xi`` the
spectral measure puts mass ``||Pi_j xi||**2`` at ``lambda_j``, so that
``integral f dmu = <f(P) xi, xi>``. When ``xi`` is cyclic the map
``f -> f(P) xi`` is a unitary from ``L2(mu)`` onto the space, stored as the
matrix ``W`` against the normalized atom indicators.

Finitely supported measures are automatically complete, so no completion
step is needed.
"""
from __future__ import annotations

import json
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .calculus import apply_function, function_values
from .errors import AtomAtZero, NotAbsolutelyContinuous, NotCyclic, ZeroVector
from .linalg import CLUSTER_TOL, DEFAULT_TOL, SpectrumAtoms, adjoint


@dataclass(frozen=True)
class DiscreteMeasure:
    """``sum_j weights[j] * delta(atoms[j])`` with ascending distinct atoms."""

    atoms: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        atoms = np.asarray(self.atoms, dtype=float).ravel()
        weights = np.asarray(self.weights, dtype=float).ravel()
        if atoms.shape != weights.shape:
            raise ValueError("atoms and weights must have the same length")
        if not (np.all(np.isfinite(atoms)) and np.all(np.isfinite(weights))):
            raise ValueError("atoms and weights must be finite")
        if np.any(np.diff(atoms) <= 0):
            raise ValueError("atoms must be strictly ascending")
        if np.any(weights < 0):
            raise ValueError("weights must be nonnegative")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", weights)

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())

    def integrate(self, f: Callable) -> complex:
        return complex(np.dot(function_values(self.atoms, f), self.weights))

    def support(self, tol: float = 0.0) -> "DiscreteMeasure":
        keep = self.weights > tol
        return DiscreteMeasure(self.atoms[keep], self.weights[keep])

    def to_dict(self) -> dict:
        return {"atoms": self.atoms.tolist(), "weights": self.weights.tolist()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "DiscreteMeasure":
        return cls(np.asarray(data["atoms"], dtype=float), np.asarray(data["weights"], dtype=float))

    @classmethod
    def from_json(cls, text: str) -> "DiscreteMeasure":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class FunctionOnAtoms:
    """A function on the atoms of a discrete measure, stored by value."""

    atoms: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        atoms = np.asarray(self.atoms, dtype=float).ravel()
        values = np.asarray(self.values, dtype=complex).ravel()
        if atoms.shape != values.shape:
            raise ValueError("one value per atom is required")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "values", values)

    def to_dict(self) -> dict:
        return {"atoms": self.atoms.tolist(), "values": [[float(v.real), float(v.imag)] for v in self.values]}


def spectral_functional(atoms: SpectrumAtoms, xi, f: Callable) -> complex:
    """``<f(P) xi, xi>``."""
    xi = np.asarray(xi, dtype=complex).ravel()
    return complex(np.vdot(xi, apply_function(atoms, f) @ xi))


def spectral_measure(atoms: SpectrumAtoms, xi) -> DiscreteMeasure:
    """Mass ``||Pi_j xi||**2`` at each atom ``lambda_j`` (zero masses kept)."""
    xi = np.asarray(xi, dtype=complex).ravel()
    if np.linalg.norm(xi) == 0:
        raise ZeroVector("spectral measure of the zero vector")
    weights = [float(np.linalg.norm(adjoint(B) @ xi) ** 2) for B in atoms.bases]
    return DiscreteMeasure(atoms.atoms, np.array(weights))


@dataclass(frozen=True)
class L2Model:
    """``L2(sigma, mu)`` realized on the atom-indicator basis.

    Column ``j`` of ``isometry`` is ``Pi_j xi / sqrt(w_j)``, the image of the
    normalized indicator of atom ``j``. A function ``f`` on the atoms has
    coordinates ``f_j * sqrt(w_j)`` in that basis.
    """

    measure: DiscreteMeasure
    isometry: np.ndarray
    cyclic_vector: np.ndarray
    source_operator: np.ndarray

    @property
    def multiplication_by_z(self) -> np.ndarray:
        return np.diag(self.measure.atoms).astype(complex)

    def coordinates(self, values) -> np.ndarray:
        return np.asarray(values, dtype=complex) * np.sqrt(self.measure.weights)

    def embed(self, values) -> np.ndarray:
        """``W f``; for ``f`` sampled from a function this equals ``f(P) xi``."""
        return self.isometry @ self.coordinates(values)

    def inner(self, f_values, g_values) -> complex:
        return complex(np.sum(np.asarray(f_values) * np.conj(g_values) * self.measure.weights))

    def isometry_residual(self) -> float:
        W = self.isometry
        return float(np.linalg.norm(adjoint(W) @ W - np.eye(W.shape[1]), 2))

    def intertwining_residual(self) -> float:
        W = self.isometry
        return float(np.linalg.norm(W @ self.multiplication_by_z - self.source_operator @ W, 2))

    def constant_residual(self) -> float:
        return float(np.linalg.norm(self.embed(np.ones(len(self.measure.atoms))) - self.cyclic_vector))


def build_l2_model(atoms: SpectrumAtoms, xi, source_operator=None, tol: float = DEFAULT_TOL) -> L2Model:
    """Unitary ``W: L2(mu) -> H`` for a cyclic vector ``xi``.

    Raises NotCyclic when ``xi`` generates a proper subspace: some atom has
    multiplicity above one or receives mass at most ``tol * ||xi||**2``.
    """
    xi = np.asarray(xi, dtype=complex).ravel()
    mu = spectral_measure(atoms, xi)
    if not atoms.is_simple:
        raise NotCyclic("P has a repeated eigenvalue; decompose into cyclic blocks first")
    if np.any(mu.weights <= tol * np.linalg.norm(xi) ** 2):
        raise NotCyclic("xi has no component along some eigenvector")
    columns = [B @ (adjoint(B) @ xi) / np.sqrt(w) for B, w in zip(atoms.bases, mu.weights)]
    if source_operator is None:
        source_operator = sum(lam * (B @ adjoint(B)) for lam, B in zip(atoms.atoms, atoms.bases))
    return L2Model(
        measure=mu,
        isometry=np.column_stack(columns),
        cyclic_vector=xi,
        source_operator=np.asarray(source_operator, dtype=complex),
    )


def pushforward_inversion(mu: DiscreteMeasure) -> DiscreteMeasure:
    """Image of ``mu`` under ``z -> 1/z``; masses are carried unchanged."""
    if np.any(mu.atoms <= 0):
        raise AtomAtZero("inversion needs all atoms strictly positive")
    return DiscreteMeasure(1.0 / mu.atoms[::-1], mu.weights[::-1])


def match_atoms(source, target, cluster_tol: float | None = None) -> list:
    """For each source atom the index of the nearest target atom within ``cluster_tol``."""
    source = np.asarray(source, dtype=float)
    target = np.asarray(target, dtype=float)
    if cluster_tol is None:
        ref = max([1.0, *np.abs(source), *np.abs(target)])
        cluster_tol = CLUSTER_TOL * ref
    out = []
    for a in source:
        if target.size == 0:
            out.append(None)
            continue
        j = int(np.argmin(np.abs(target - a)))
        out.append(j if abs(target[j] - a) <= cluster_tol else None)
    return out


def radon_nikodym(
    nu: DiscreteMeasure, mu: DiscreteMeasure, cluster_tol: float | None = None, tol: float = 0.0
) -> FunctionOnAtoms:
    """Atom-wise density ``d nu / d mu`` on the atoms of ``mu``.

    Atoms carrying mass at most ``tol`` are treated as absent. Raises
    NotAbsolutelyContinuous if ``nu`` charges an atom that ``mu`` does not.
    """
    values = np.zeros(len(mu.atoms))
    index = match_atoms(nu.atoms, mu.atoms, cluster_tol)
    for a, w, j in zip(nu.atoms, nu.weights, index):
        if w <= tol:
            continue
        if j is None or mu.weights[j] <= tol:
            raise NotAbsolutelyContinuous(f"nu has mass {w:g} at {a:g} where mu has none")
        values[j] += w / mu.weights[j]
    return FunctionOnAtoms(mu.atoms, values)


def mutually_absolutely_continuous(
    nu: DiscreteMeasure, mu: DiscreteMeasure, cluster_tol: float | None = None, tol: float = 0.0
) -> bool:
    try:
        radon_nikodym(nu, mu, cluster_tol, tol)
        radon_nikodym(mu, nu, cluster_tol, tol)
    except NotAbsolutelyContinuous:
        return False
    return True
