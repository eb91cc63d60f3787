"""Seeded operator generators for the verification corpora.

All randomness comes from ``numpy.random.Generator(PCG64)`` seeded through
``SeedSequence([seed, *keys])``, so a trial's operator depends only on the
suite seed and the trial index.
"""
from __future__ import annotations

import numpy as np

GENERATOR_ID = "numpy.random.PCG64 via SeedSequence([seed, trial])"

KINDS = ("invertible", "normal", "unitary", "positive", "hermitian", "shift_like")

MIN_SINGULAR_VALUE = 0.1


def rng_for(seed: int, *keys: int) -> np.random.Generator:
    if not 0 <= int(seed) < 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), *map(int, keys)])))


def ginibre(n: int, rng: np.random.Generator) -> np.ndarray:
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    # QR with the phases of R's diagonal folded back in (Mezzadri).
    Q, R = np.linalg.qr(ginibre(n, rng))
    d = np.diag(R)
    return Q * (d / np.abs(d))


def shift_like(weights) -> np.ndarray:
    """Weighted cyclic shift: ``T[i, (i+1) % n] = weights[i]``.

    ``shift_like([2, 1])`` is ``[[0, 2], [1, 0]]``. Non-normal whenever the
    weights are not all equal in modulus.
    """
    w = np.asarray(weights, dtype=complex)
    n = len(w)
    T = np.zeros((n, n), dtype=complex)
    T[np.arange(n), (np.arange(n) + 1) % n] = w
    return T


def positive_with_multiplicities(levels, multiplicities, rng: np.random.Generator) -> np.ndarray:
    """``V diag(levels repeated by multiplicity) V*`` with Haar ``V``."""
    values = np.repeat(np.asarray(levels, dtype=float), multiplicities)
    V = haar_unitary(len(values), rng)
    P = (V * values) @ V.conj().T
    return 0.5 * (P + P.conj().T)


def random_operator(kind: str, dim: int, rng: np.random.Generator) -> np.ndarray:
    if dim < 1:
        raise ValueError("dim must be at least 1")
    if kind == "invertible":
        X, s, Yh = np.linalg.svd(ginibre(dim, rng))
        return (X * np.maximum(s, MIN_SINGULAR_VALUE)) @ Yh
    if kind == "normal":
        V = haar_unitary(dim, rng)
        z = (rng.standard_normal(dim) + 1j * rng.standard_normal(dim)) / np.sqrt(2)
        return (V * z) @ V.conj().T
    if kind == "unitary":
        return haar_unitary(dim, rng)
    if kind == "positive":
        V = haar_unitary(dim, rng)
        values = rng.uniform(0.1, 3.0, dim)
        P = (V * values) @ V.conj().T
        return 0.5 * (P + P.conj().T)
    if kind == "hermitian":
        G = ginibre(dim, rng)
        return 0.5 * (G + G.conj().T)
    if kind == "shift_like":
        if dim == 1:
            return shift_like([rng.uniform(0.5, 2.5)])
        return shift_like(rng.permutation(np.linspace(0.5, 2.5, dim)))
    raise ValueError(f"unknown operator kind {kind!r}; expected one of {KINDS}")


def generate_operator(kind: str, dim: int, seed: int) -> np.ndarray:
    """Deterministic operator of the given kind for ``(kind, dim, seed)``."""
    return random_operator(kind, dim, rng_for(seed))
