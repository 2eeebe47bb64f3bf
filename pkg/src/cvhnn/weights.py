"""Synaptic weight construction and validation.

Convergence guarantees for the dynamics rest on the weight matrix being
conjugate-symmetric (W[i, j] == conj(W[j, i])) with a zero diagonal, so the
constructors here arrange for that property to hold exactly in floats, and
``validate`` reports exact violations rather than tolerance-based ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class WeightGenConfig:
    """Reproducible random-weight recipe: (n, seed) fully determines the matrix."""

    n: int
    seed: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("n must be an integer >= 1")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError("seed must be a non-negative integer")


def random_hermitian(config: WeightGenConfig) -> np.ndarray:
    """Random conjugate-symmetric weights with an exactly zero diagonal.

    Two independent n x n standard-normal draws (numpy Generator / PCG64, so
    equal configs give bit-identical matrices) supply the raw material; the
    first is symmetrized into the real part and the second antisymmetrized
    into the imaginary part.  Both transforms commute with rounding, so
    W[i, j] == conj(W[j, i]) holds exactly, not just up to float error.
    """
    rng = np.random.default_rng(config.seed)
    raw_real = rng.standard_normal((config.n, config.n))
    raw_imag = rng.standard_normal((config.n, config.n))
    weights = (raw_real + raw_real.T) / 2.0 + 1j * (raw_imag - raw_imag.T) / 2.0
    np.fill_diagonal(weights, 0.0)
    return weights


@dataclass(frozen=True)
class HermitianReport:
    """Exact structural check of a weight matrix.

    max_violation is max |W[i, j] - conj(W[j, i])| over all entries, which
    also exposes non-real diagonals; is_hermitian means that maximum is 0.0.
    diagonal_real_nonneg tracks the weaker diagonal condition some stability
    results need (real diagonal entries >= 0).
    """

    is_hermitian: bool
    diagonal_real_nonneg: bool
    max_violation: float


def validate(weights) -> HermitianReport:
    """Report conjugate symmetry and diagonal sign for a square matrix."""
    w = np.asarray(weights, dtype=complex)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError(f"weights must be a square matrix, got shape {w.shape}")
    max_violation = float(np.abs(w - w.conj().T).max()) if w.size else 0.0
    diagonal = np.diagonal(w)
    diagonal_ok = bool(np.all(diagonal.imag == 0.0) and np.all(diagonal.real >= 0.0))
    return HermitianReport(max_violation == 0.0, diagonal_ok, max_violation)


def hebbian(patterns) -> np.ndarray:
    """Outer-product storage of complex patterns.

    W[i, j] = (1/n) * sum_p pattern_i * conj(pattern_j) off the diagonal and
    0 on it, where n is the neuron count.  Vectorized complex multiplication
    can round the (i, j) and (j, i) products apart by one ulp, so the
    accumulated sum is re-symmetrized; that transform commutes with rounding
    and restores exact conjugate symmetry.  Rejects an empty pattern list
    and patterns of mismatched length.
    """
    arrays = [np.asarray(p, dtype=complex) for p in patterns]
    if not arrays:
        raise ValueError("at least one pattern is required")
    n = arrays[0].shape[0] if arrays[0].ndim == 1 else -1
    for a in arrays:
        if a.ndim != 1 or a.shape[0] != n:
            raise ValueError("patterns must be one-dimensional and of equal length")
    weights = np.zeros((n, n), dtype=complex)
    for a in arrays:
        weights += np.outer(a, a.conj())
    weights = (weights + weights.conj().T) / 2.0
    weights /= n
    np.fill_diagonal(weights, 0.0)
    return weights
