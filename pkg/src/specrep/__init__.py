"""Finite-dimensional polar decompositions, spectral measures and multiplication models."""

__version__ = "0.1.0"

from .calculus import DensityReport, Polynomial, apply_function, fit_polynomial, verify_density
from .cyclic import (
    CyclicDecomposition,
    TransportReport,
    cyclic_decomposition,
    cyclic_subspace,
    has_cyclic_vector,
    verify_invertible_invariance,
    verify_power_transport,
)
from .errors import *  # noqa: F401,F403
from .generators import generate_operator
from .io import load_matrix, save_matrix
from .linalg import (
    EigenSystem,
    PolarDecomposition,
    SpectrumAtoms,
    adjoint,
    cluster_spectrum,
    hermitian_eig,
    operator_norm,
    polar,
    spectrum_atoms,
)
from .measure import (
    DiscreteMeasure,
    FunctionOnAtoms,
    L2Model,
    build_l2_model,
    pushforward_inversion,
    radon_nikodym,
    spectral_functional,
    spectral_measure,
)
from .represent import (
    InverseModulusReport,
    MultiplicationRep,
    NormalityReport,
    build_multiplication_rep,
    commutant_membership,
    normality_equivalence,
    verify_adjoint_modulus,
    verify_inverse_modulus,
)
from .suites import SuiteConfig, SuiteReport, run_suite
