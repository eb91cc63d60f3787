"""
Command-line front end.

    specrep analyze MATRIX.json [--tol X] [--out PATH]
    specrep verify --suite NAME --trials N [--dims LIST] [--seed S] [--tol X] [--kind K] [--out PATH]
    specrep generate --kind K --dim D --seed S --out PATH

Exit status is 0 when every expected check passes, 1 on a verification
failure and 2 on usage or I/O errors. ``SPECREP_TOL`` overrides the default
tolerance; ``--tol`` overrides both.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .cyclic import cyclic_decomposition, has_cyclic_vector
from .errors import NotCyclic, NotSquare, ParseError, SpecrepError
from .generators import KINDS, generate_operator
from .io import dumps, load_matrix, matrix_to_dict, save_matrix
from .linalg import DEFAULT_TOL, adjoint, operator_norm, polar, spectrum_atoms
from .measure import build_l2_model, spectral_measure
from .represent import (
    build_multiplication_rep,
    commutant_membership,
    normality_equivalence,
    verify_adjoint_modulus,
    verify_inverse_modulus,
)
from .suites import SUITES, SuiteConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def resolve_tol(flag: float | None, environ=os.environ) -> float:
    if flag is not None:
        tol = flag
    elif environ.get("SPECREP_TOL"):
        try:
            tol = float(environ["SPECREP_TOL"])
        except ValueError:
            raise UsageError(f"SPECREP_TOL is not a number: {environ['SPECREP_TOL']!r}")
    else:
        tol = DEFAULT_TOL
    if not tol > 0:
        raise UsageError("tolerance must be positive")
    return tol


def parse_dims(text: str) -> list:
    """``"2-16"``, ``"2,4,8"`` or a mix such as ``"2-4,8"``."""
    dims = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-", 1)
            dims.extend(range(int(lo), int(hi) + 1))
        else:
            dims.append(int(part))
    if any(d < 1 for d in dims):
        raise argparse.ArgumentTypeError("dims must all be at least 1")
    return dims


def _seed(text: str) -> int:
    s = int(text)
    if not 0 <= s < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return s


def analyze_matrix(T, tol: float) -> dict:
    """Full per-operator report as a JSON-ready dict."""
    n = T.shape[0]
    pd = polar(T, tol=tol)
    U, P = pd.unitary_part, pd.positive_part
    nT = max(1.0, operator_norm(T))
    checks = {
        "polar_factorization": operator_norm(U @ P - T) / nT,
        "polar_unitary": operator_norm(adjoint(U) @ U - np.eye(n)),
    }
    atoms = spectrum_atoms(P)
    dec = cyclic_decomposition(P, atoms=atoms, tol=tol)
    report = {
        "matrix": matrix_to_dict(T),
        "tol": tol,
        "polar": {
            "unitary_part": matrix_to_dict(U),
            "positive_part": matrix_to_dict(P),
            "is_invertible": pd.is_invertible,
            "factorization_residual": checks["polar_factorization"],
            "unitary_residual": checks["polar_unitary"],
        },
        "spectrum": {"atoms": atoms.atoms.tolist(), "multiplicities": list(atoms.multiplicities)},
        "cyclic": {
            "subspace_dims": dec.dims,
            "completeness_residual": dec.completeness_residual(),
            "max_invariance_residual": max(dec.invariance_residuals()),
        },
    }
    ok, xi = has_cyclic_vector(P, atoms=atoms)
    if ok:
        model = build_l2_model(atoms, xi, source_operator=P, tol=tol)
        report["measure"] = {
            "cyclic_vector": [[float(z.real), float(z.imag)] for z in xi],
            "spectral_measure": spectral_measure(atoms, xi).to_dict(),
            "isometry_residual": model.isometry_residual(),
            "intertwining_residual": model.intertwining_residual(),
        }
        report["adjoint_modulus"] = verify_adjoint_modulus(T, xi, tol=tol).to_dict()
        if pd.is_invertible:
            report["inverse_modulus"] = verify_inverse_modulus(T, xi, tol=tol).to_dict()
        try:
            report["representation"] = build_multiplication_rep(T, tol=tol).to_dict()
        except NotCyclic as exc:
            report["representation"] = {"error": str(exc)}
    else:
        report["measure"] = None
        report["representation"] = None
    normality = normality_equivalence(T, tol=tol)
    report["normality"] = normality.to_dict()
    report["commutant_membership"] = commutant_membership(T)
    report["passed"] = bool(
        checks["polar_factorization"] <= tol and checks["polar_unitary"] <= tol and normality.consistent
    )
    return report


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def cmd_analyze(args) -> int:
    tol = resolve_tol(args.tol)
    T = load_matrix(args.matrix)
    if T.shape[0] != T.shape[1]:
        raise NotSquare(f"analyze needs a square matrix, got {T.shape[0]}x{T.shape[1]}")
    report = analyze_matrix(T, tol)
    _write(dumps(report), args.out)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_verify(args) -> int:
    tol = resolve_tol(args.tol)
    config = SuiteConfig(
        suite_name=args.suite, trials=args.trials, dims=args.dims or [], seed=args.seed, tol=tol, kind=args.kind
    )
    report = run_suite(config)
    _write(dumps(report.to_dict()), args.out)
    agg = report.aggregate
    print(
        f"{report.suite}: {agg['pass_count']}/{agg['trials']} passed "
        f"({report.wall_time:.2f} s) -> {'PASS' if report.passed else 'FAIL'}",
        file=sys.stderr,
    )
    return report.exit_code


def cmd_generate(args) -> int:
    T = generate_operator(args.kind, args.dim, args.seed)
    save_matrix(T, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="specrep", description="Polar, spectral-measure and multiplication-model checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for one matrix")
    p.add_argument("matrix")
    p.add_argument("--tol", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run a named suite over a seeded corpus")
    p.add_argument("--suite", required=True, choices=SUITES + ("all",))
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--dims", type=parse_dims)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--tol", type=float)
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="write a seeded operator as matrix JSON")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, NotSquare, OSError) as exc:
        print(f"specrep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SpecrepError, ValueError) as exc:
        print(f"specrep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
