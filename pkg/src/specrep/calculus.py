"""
Functional calculus on finite spectra and polynomial density experiments.

``apply_function`` realizes ``f(P) = sum_j f(lambda_j) Pi_j``. The density
experiments fit polynomials in ``x``, ``1/x`` or ``x**2`` to continuous
targets on an interval bounded away from zero and record how the sup error on
a sample grid falls with the degree.
"""
from __future__ import annotations

from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from numpy.polynomial import chebyshev as cheb
from numpy.polynomial import Chebyshev
from numpy.polynomial import Polynomial as PowerSeries

from .errors import DomainError, SingularFit
from .linalg import SpectrumAtoms

BasisKind = Literal["powers_of_x", "powers_of_inverse_x", "powers_of_x_squared"]
BASIS_KINDS = ("powers_of_x", "powers_of_inverse_x", "powers_of_x_squared")

# Experiment labels: density of polynomials in 1/x, and in x**2, on [a, b] with a > 0.
LEMMA_BASIS = {"L2_1": "powers_of_inverse_x", "L2_2": "powers_of_x_squared"}


def function_values(atoms: SpectrumAtoms | np.ndarray, f: Callable) -> np.ndarray:
    """Evaluate ``f`` at every atom, raising DomainError where it is undefined."""
    points = atoms.atoms if isinstance(atoms, SpectrumAtoms) else np.asarray(atoms)
    out = np.empty(len(points), dtype=complex)
    with np.errstate(divide="raise", invalid="raise", over="raise"):
        for j, lam in enumerate(points):
            try:
                value = complex(f(float(lam)))
            except (ZeroDivisionError, FloatingPointError, OverflowError, ValueError) as exc:
                raise DomainError(f"function undefined at atom {lam!r}: {exc}") from exc
            if not np.isfinite(value):
                raise DomainError(f"function not finite at atom {lam!r}")
            out[j] = value
    return out


def apply_function(atoms: SpectrumAtoms, f: Callable) -> np.ndarray:
    """``f(P) = sum_j f(lambda_j) Pi_j`` over the atoms of ``P``."""
    values = function_values(atoms, f)
    n = atoms.dim
    result = np.zeros((n, n), dtype=complex)
    for value, B in zip(values, atoms.bases):
        result += value * (B @ B.conj().T)
    return result


def basis_variable(x, basis_kind: BasisKind) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if basis_kind == "powers_of_x":
        return x
    if basis_kind == "powers_of_inverse_x":
        if np.any(x == 0):
            raise DomainError("powers_of_inverse_x is undefined at 0")
        return 1.0 / x
    if basis_kind == "powers_of_x_squared":
        return x * x
    raise ValueError(f"unknown basis kind {basis_kind!r}")


@dataclass(frozen=True)
class Polynomial:
    """A polynomial in the basis variable ``t(x)`` (``x``, ``1/x`` or ``x**2``).

    Internally the series is kept in a Chebyshev basis on the fitted range of
    ``t``; ``coefficients`` gives the plain power coefficients ``c_0 .. c_d``
    so that ``p(x) = sum_k c_k t(x)**k``.
    """

    series: Chebyshev | PowerSeries
    basis_kind: BasisKind = "powers_of_x"

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[complex], basis_kind: BasisKind = "powers_of_x"):
        c = np.trim_zeros(np.atleast_1d(np.asarray(coefficients)), "b")
        return cls(PowerSeries(c if c.size else [0.0]), basis_kind)

    @property
    def coefficients(self) -> np.ndarray:
        c = self.series.convert(kind=PowerSeries, domain=[-1, 1], window=[-1, 1]).coef
        c = np.trim_zeros(c, "b")
        return c if c.size else np.zeros(1, dtype=c.dtype)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        return self.series(basis_variable(x, self.basis_kind))


def _sample(f: Callable, x: np.ndarray) -> np.ndarray:
    try:
        y = np.asarray(f(x))
        if y.shape == x.shape:
            return y
    except (TypeError, ValueError):
        pass
    return np.array([f(float(xi)) for xi in x])


def fit_polynomial(f: Callable, sample_points, degree: int, basis_kind: BasisKind = "powers_of_x"):
    """Least-squares fit of ``f`` in ``span{1, t, ..., t**degree}`` over the samples.

    Returns ``(polynomial, sup_error)`` where ``sup_error`` is the largest
    absolute deviation over the sample points.
    """
    x = np.asarray(sample_points, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("sample_points must be nonempty")
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    t = basis_variable(x, basis_kind)
    y = _sample(f, x)
    if not np.all(np.isfinite(y)):
        raise DomainError("target is not finite on the sample points")

    lo, hi = float(t.min()), float(t.max())
    if hi - lo <= 1e-14 * max(1.0, abs(lo)):
        lo, hi = lo - 1.0, hi + 1.0
    s = (2.0 * t - (lo + hi)) / (hi - lo)
    V = cheb.chebvander(s, degree)
    coef, _, rank, _ = np.linalg.lstsq(V, y, rcond=None)
    if rank < degree + 1:
        raise SingularFit(f"degree {degree} needs {degree + 1} independent samples, rank is {rank}")

    p = Polynomial(Chebyshev(coef, domain=[lo, hi]), basis_kind)
    sup_error = float(np.max(np.abs(p(x) - y)))
    return p, sup_error


@dataclass(frozen=True)
class DensityReport:
    """Sup error versus degree for one density experiment.

    ``errors[k]`` is the worst sup error over all targets at ``degrees[k]``;
    per-target sequences live in ``target_errors``.
    """

    degrees: list
    errors: list
    converged: bool
    achieved_tol: float
    lemma: str = ""
    basis_kind: str = ""
    tol: float = 0.0
    target_errors: dict = field(default_factory=dict)
    converged_degrees: dict = field(default_factory=dict)

    def is_non_increasing(self, slack: float = 1e-12) -> bool:
        seqs = [self.errors, *self.target_errors.values()]
        return all(all(b <= a + slack for a, b in zip(s, s[1:])) for s in seqs)

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "basis_kind": self.basis_kind,
            "tol": self.tol,
            "degrees": list(self.degrees),
            "errors": list(self.errors),
            "converged": self.converged,
            "achieved_tol": self.achieved_tol,
            "target_errors": {k: list(v) for k, v in self.target_errors.items()},
            "converged_degrees": dict(self.converged_degrees),
        }


def verify_density(
    lemma: str,
    interval: tuple[float, float],
    targets: Mapping[str, Callable] | Sequence[Callable],
    tol: float,
    max_degree: int,
    n_points: int = 101,
) -> DensityReport:
    """Fit every target at degrees ``0..max_degree`` in the lemma's basis.

    ``lemma`` is ``"L2_1"`` (basis ``1/x``) or ``"L2_2"`` (basis ``x**2``);
    a basis kind name is accepted as well.
    The report is converged when every target reaches a sup error below
    ``tol`` at some degree.
    """
    if lemma in BASIS_KINDS:
        basis_kind = lemma
    elif lemma in LEMMA_BASIS:
        basis_kind = LEMMA_BASIS[lemma]
    else:
        raise ValueError(f"lemma must be one of {sorted(LEMMA_BASIS)}")
    a, b = map(float, interval)
    if not a <= b or a <= 0 <= b:
        raise DomainError("interval must not contain 0")
    if not isinstance(targets, Mapping):
        named = {}
        for i, f in enumerate(targets):
            name = getattr(f, "__name__", "")
            named[f"target{i}" if not name or name.startswith("<") or name in named else name] = f
        targets = named
    x = np.linspace(a, b, n_points)
    degrees = list(range(max_degree + 1))

    target_errors, converged_degrees = {}, {}
    for name, f in targets.items():
        errs = [fit_polynomial(f, x, d, basis_kind)[1] for d in degrees]
        target_errors[name] = errs
        converged_degrees[name] = next((d for d, e in zip(degrees, errs) if e < tol), None)

    worst = [max(e[k] for e in target_errors.values()) for k in range(len(degrees))] if targets else []
    achieved = max((min(e) for e in target_errors.values()), default=0.0)
    return DensityReport(
        degrees=degrees,
        errors=worst,
        converged=all(d is not None for d in converged_degrees.values()),
        achieved_tol=achieved,
        lemma=lemma,
        basis_kind=basis_kind,
        tol=tol,
        target_errors=target_errors,
        converged_degrees=converged_degrees,
    )
