"""
Unitary equivalences built from the polar decomposition, and their verdicts.

* ``|T^-1| = U |T|^-1 U*`` and ``|T*| = U |T| U*`` with ``U`` the polar
  unitary, checked as matrix identities and at the level of spectral
  measures, where the density between the two measures is reported.
* The multiplication model: conjugating ``T`` by the L2 unitary ``W`` of
  ``|T|`` either gives a diagonal matrix, whose entries split into a modulus
  weight and a unimodular symbol, or it does not. The diagonal residual is
  measured, never assumed.
* Normality, membership in the commutant of ``|T|`` and diagonal
  representability are computed independently and compared.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calculus import apply_function
from .cyclic import cyclic_subspace, has_cyclic_vector
from .errors import NotAbsolutelyContinuous, NotCyclic, SingularOperator
from .linalg import (
    CLUSTER_TOL,
    DEFAULT_TOL,
    adjoint,
    as_matrix,
    operator_norm,
    polar,
    scale,
    spectrum_atoms,
)
from .measure import (
    DiscreteMeasure,
    FunctionOnAtoms,
    L2Model,
    build_l2_model,
    mutually_absolutely_continuous,
    pushforward_inversion,
    radon_nikodym,
    spectral_measure,
)


def _complex_list(values) -> list:
    return [[float(v.real), float(v.imag)] for v in np.asarray(values, dtype=complex)]


@dataclass(frozen=True)
class InverseModulusReport:
    """Comparison of two moduli related by conjugation with the polar unitary.

    ``kind`` is ``"inverse"`` (``|T|^-1`` against ``|T^-1|``) or ``"adjoint"``
    (``|T|`` against ``|T*|``). ``rn_derivative`` is the density of
    ``target_measure`` with respect to ``source_measure``, or ``None`` when it
    does not exist.
    """

    kind: str
    spectra_match: bool
    max_atom_deviation: float
    conjugation_residual: float
    conjugation_holds: bool
    rn_derivative: FunctionOnAtoms | None
    rn_everywhere_nonzero: bool
    mutual_ac: bool
    source_measure: DiscreteMeasure
    target_measure: DiscreteMeasure
    z_squared_claim_residual: float | None = None

    @property
    def rn_min(self) -> float | None:
        if self.rn_derivative is None:
            return None
        return float(np.min(self.rn_derivative.values.real))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "spectra_match": self.spectra_match,
            "max_atom_deviation": self.max_atom_deviation,
            "conjugation_residual": self.conjugation_residual,
            "conjugation_holds": self.conjugation_holds,
            "rn_derivative": None if self.rn_derivative is None else self.rn_derivative.to_dict(),
            "rn_everywhere_nonzero": self.rn_everywhere_nonzero,
            "mutual_ac": self.mutual_ac,
            "source_measure": self.source_measure.to_dict(),
            "target_measure": self.target_measure.to_dict(),
            "z_squared_claim_residual": self.z_squared_claim_residual,
        }


def _require_cyclic(P, atoms, xi, tol):
    if cyclic_subspace(P, xi, atoms=atoms, tol=tol).shape[1] != P.shape[0]:
        raise NotCyclic("xi is not cyclic for |T|")


def _spectral_deviation(a, b) -> float:
    a, b = np.sort(np.asarray(a, dtype=float)), np.sort(np.asarray(b, dtype=float))
    return float(np.max(np.abs(a - b)) / max(1e-300, float(np.max(np.abs(b)))))


def _compare_measures(kind, source, target, conj_residual, conj_holds, deviation, tol, mass_tol, cluster_tol):
    try:
        phi = radon_nikodym(target, source, cluster_tol=cluster_tol, tol=mass_tol)
    except NotAbsolutelyContinuous:
        phi = None
    support = source.weights > mass_tol
    nonzero = phi is not None and bool(np.all(np.abs(phi.values[support]) > tol))
    return dict(
        kind=kind,
        spectra_match=deviation <= tol,
        max_atom_deviation=deviation,
        conjugation_residual=conj_residual,
        conjugation_holds=conj_holds,
        rn_derivative=phi,
        rn_everywhere_nonzero=nonzero,
        mutual_ac=mutually_absolutely_continuous(target, source, cluster_tol=cluster_tol, tol=mass_tol),
        source_measure=source,
        target_measure=target,
    )


def verify_inverse_modulus(T, xi, tol: float = DEFAULT_TOL) -> InverseModulusReport:
    """Check ``sigma(|T|^-1) = sigma(|T^-1|)`` and the conjugation by ``U``.

    The measure of ``|T|^-1`` is the inversion pushforward of the measure of
    ``|T|`` at ``xi``; the measure of ``|T^-1|`` is taken at ``U xi``.
    ``z_squared_claim_residual`` measures how far the inverted masses are from
    ``lambda**2`` times the original masses, a relation that the pushforward
    identity does not imply; it is reported, not required.
    """
    T = as_matrix(T, square=True)
    xi = np.asarray(xi, dtype=complex).ravel()
    pd = polar(T, tol=tol)
    if not pd.is_invertible:
        raise SingularOperator("T is not invertible")
    U, P = pd.unitary_part, pd.positive_part
    atoms_p = spectrum_atoms(P)
    _require_cyclic(P, atoms_p, xi, tol)

    Q = polar(np.linalg.inv(T)).positive_part
    atoms_q = spectrum_atoms(Q)
    eig_p = np.linalg.eigvalsh(P)
    deviation = _spectral_deviation(1.0 / eig_p, np.linalg.eigvalsh(Q))

    P_inv = apply_function(atoms_p, lambda x: 1.0 / x)
    conj = operator_norm(U @ P_inv @ adjoint(U) - Q)

    mu = spectral_measure(atoms_p, xi)
    source = pushforward_inversion(mu)
    target = spectral_measure(atoms_q, U @ xi)
    mass_tol = tol * float(np.vdot(xi, xi).real)
    fields = _compare_measures(
        "inverse", source, target, conj, conj <= tol * scale(Q), deviation, tol, mass_tol,
        CLUSTER_TOL * scale(Q),
    )
    # Mass of the inverted measure at 1/lambda_j against lambda_j**2 * w_j.
    claimed = (mu.atoms**2 * mu.weights)[::-1]
    z2 = float(np.max(np.abs(source.weights - claimed)) / max(mu.total_mass, 1e-300))
    return InverseModulusReport(**fields, z_squared_claim_residual=z2)


def verify_adjoint_modulus(T, xi, tol: float = DEFAULT_TOL) -> InverseModulusReport:
    """Check ``sigma(|T|) = sigma(|T*|)`` and ``|T*| = U |T| U*``.

    Measures are those of ``|T|`` at ``xi`` and of ``|T*|`` at ``U xi``.
    """
    T = as_matrix(T, square=True)
    xi = np.asarray(xi, dtype=complex).ravel()
    pd = polar(T, tol=tol)
    U, P = pd.unitary_part, pd.positive_part
    atoms_p = spectrum_atoms(P)
    _require_cyclic(P, atoms_p, xi, tol)

    Q = polar(adjoint(T)).positive_part
    atoms_q = spectrum_atoms(Q)
    deviation = _spectral_deviation(np.linalg.eigvalsh(P), np.linalg.eigvalsh(Q)) if np.any(P) else 0.0
    conj = operator_norm(U @ P @ adjoint(U) - Q)

    source = spectral_measure(atoms_p, xi)
    target = spectral_measure(atoms_q, U @ xi)
    mass_tol = tol * float(np.vdot(xi, xi).real)
    fields = _compare_measures(
        "adjoint", source, target, conj, conj <= tol * scale(Q), deviation, tol, mass_tol,
        CLUSTER_TOL * scale(Q),
    )
    return InverseModulusReport(**fields)


@dataclass(frozen=True)
class MultiplicationRep:
    """``T`` seen through the L2 unitary ``W`` of ``|T|``.

    When ``conjugated = W* T W`` is diagonal, its entries are
    ``sqrt(eta_j) * lambda_j * psi_j`` with ``|psi_j| = 1``.
    """

    model: L2Model
    conjugated: np.ndarray
    diag_residual: float
    symbol_psi: FunctionOnAtoms
    weight_eta: FunctionOnAtoms
    unitary_part_residual: float
    representation_holds: bool

    @property
    def eta_deviation(self) -> float:
        """``max_j |eta_j - 1|``."""
        return float(np.max(np.abs(self.weight_eta.values - 1)))

    @property
    def psi_deviation(self) -> float:
        """``max_j ||psi_j| - 1|``."""
        return float(np.max(np.abs(np.abs(self.symbol_psi.values) - 1)))

    def to_dict(self) -> dict:
        return {
            "atoms": self.model.measure.atoms.tolist(),
            "weights": self.model.measure.weights.tolist(),
            "conjugated": _complex_list(self.conjugated.ravel()),
            "diag_residual": self.diag_residual,
            "psi": _complex_list(self.symbol_psi.values),
            "eta": self.weight_eta.values.real.tolist(),
            "unitary_part_residual": self.unitary_part_residual,
            "representation_holds": self.representation_holds,
            "eta_deviation": self.eta_deviation,
            "psi_deviation": self.psi_deviation,
        }


def build_multiplication_rep(T, tol: float = DEFAULT_TOL) -> MultiplicationRep:
    """Conjugate ``T`` into ``L2(sigma(|T|), mu)`` and split the diagonal.

    For atoms ``lambda_j > tol``: ``sqrt(eta_j) = |A_jj| / lambda_j`` and
    ``psi_j = A_jj / |A_jj|`` (``psi_j = 1, eta_j = 0`` when ``A_jj = 0``).
    At an atom 0 the symbol is read from ``W* U W`` instead, since ``T``
    vanishes there. Raises NotCyclic if ``|T|`` has a repeated eigenvalue.
    """
    T = as_matrix(T, square=True)
    pd = polar(T, tol=tol)
    U, P = pd.unitary_part, pd.positive_part
    atoms = spectrum_atoms(P)
    ok, xi = has_cyclic_vector(P, atoms=atoms)
    if not ok:
        raise NotCyclic("|T| has a repeated eigenvalue; no cyclic vector exists")
    model = build_l2_model(atoms, xi, source_operator=P, tol=tol)
    W = model.isometry
    A = adjoint(W) @ T @ W
    UW = adjoint(W) @ U @ W
    d = np.diag(A)
    diag_residual = operator_norm(A - np.diag(d)) / max(1.0, operator_norm(A))

    lam = model.measure.atoms
    zero_cut = tol * scale(T)
    psi = np.ones(len(lam), dtype=complex)
    root_eta = np.zeros(len(lam))
    for j, (a, l) in enumerate(zip(d, lam)):
        s = a / l if l > zero_cut else UW[j, j]
        if abs(s) > 0:
            psi[j] = s / abs(s)
            root_eta[j] = abs(s)
    eta = root_eta**2
    unitary_residual = operator_norm(UW - np.diag(root_eta * psi))

    return MultiplicationRep(
        model=model,
        conjugated=A,
        diag_residual=float(diag_residual),
        symbol_psi=FunctionOnAtoms(lam, psi),
        weight_eta=FunctionOnAtoms(lam, eta),
        unitary_part_residual=float(unitary_residual),
        representation_holds=bool(diag_residual <= tol),
    )


def commutant_membership(T) -> float:
    """``||T |T| - |T| T|| / max(1, ||T||**2)``; zero iff T commutes with ``A(|T|)``."""
    T = as_matrix(T, square=True)
    P = polar(T).positive_part
    return operator_norm(T @ P - P @ T) / max(1.0, operator_norm(T) ** 2)


@dataclass(frozen=True)
class NormalityReport:
    normal_residual: float
    commutant_residual: float
    diag_residual: float | None
    eta_deviation: float | None
    verdicts: dict
    consistent: bool

    def to_dict(self) -> dict:
        return {
            "normal_residual": self.normal_residual,
            "commutant_residual": self.commutant_residual,
            "diag_residual": self.diag_residual,
            "eta_deviation": self.eta_deviation,
            "verdicts": dict(self.verdicts),
            "consistent": self.consistent,
        }


def normality_equivalence(T, tol: float = DEFAULT_TOL) -> NormalityReport:
    """Three independent tests of normality, expected to agree.

    ``normal``: ``TT* = T*T``. ``commutant``: ``T|T| = |T|T``. ``diagonal``:
    the multiplication model is diagonal with ``eta = 1``; only available
    when ``|T|`` has simple spectrum (``None`` otherwise).
    """
    T = as_matrix(T, square=True)
    norm2 = operator_norm(T) ** 2
    if norm2 == 0:
        return NormalityReport(0.0, 0.0, None, None, {"normal": True, "commutant": True, "diagonal": None}, True)
    P = polar(T).positive_part
    normal_res = operator_norm(T @ adjoint(T) - adjoint(T) @ T) / norm2
    comm_res = operator_norm(T @ P - P @ T) / norm2

    diag_res = eta_dev = diag_verdict = None
    try:
        rep = build_multiplication_rep(T, tol=tol)
    except NotCyclic:
        pass
    else:
        diag_res, eta_dev = rep.diag_residual, rep.eta_deviation
        diag_verdict = bool(rep.representation_holds and eta_dev <= tol)

    verdicts = {"normal": normal_res <= tol, "commutant": comm_res <= tol, "diagonal": diag_verdict}
    present = {v for v in verdicts.values() if v is not None}
    return NormalityReport(
        normal_residual=float(normal_res),
        commutant_residual=float(comm_res),
        diag_residual=diag_res,
        eta_deviation=eta_dev,
        verdicts=verdicts,
        consistent=len(present) == 1,
    )
