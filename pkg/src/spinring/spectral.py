"""Exact diagonalization, Gibbs states, and partition functions.

Temperature is in energy units (Boltzmann constant 1). T=0 never enters an
exponential: the zero-temperature state is the equal mixture over the
ground manifold, which is the limit of the Gibbs state.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

HERMITICITY_ATOL = 1e-12
DEGENERACY_TOL = 1e-9


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in ascending order; eigenvector k in column k."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self):
        return self.eigenvalues.shape[0]

    @property
    def ground_energy(self):
        return float(self.eigenvalues[0])


def eigendecompose(h):
    """Diagonalize a Hermitian matrix.

    Rejects input that is not Hermitian to 1e-12 entrywise. Within a
    degenerate eigenspace the basis is whatever the solver returns; all
    downstream quantities are functions of the density matrix and do not
    depend on that choice.
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.allclose(h, h.conj().T, rtol=0.0, atol=HERMITICITY_ATOL):
        raise ValueError("matrix is not Hermitian within 1e-12")
    eigenvalues, eigenvectors = np.linalg.eigh(h)
    return SpectralDecomposition(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def _positive_temperature(t):
    t = float(t)
    if not np.isfinite(t) or t < 0.0:
        raise ValueError(f"temperature must be finite and nonnegative, got {t}")
    if t == 0.0:
        raise ValueError(
            "T=0 has no Boltzmann form; use ground_state_projector for the limit"
        )
    return t


def log_partition_function(spec, t):
    """log Tr exp(-H/T), overflow-safe at any positive temperature."""
    t = _positive_temperature(t)
    return float(logsumexp(-spec.eigenvalues / t))


def partition_function(spec, t):
    """Tr exp(-H/T); inf when the value exceeds the double range.

    The log-domain value from log_partition_function is always finite.
    """
    with np.errstate(over="ignore"):
        return float(np.exp(log_partition_function(spec, t)))


def boltzmann_weights(spec, t):
    """Normalized thermal occupation of each eigenstate."""
    t = _positive_temperature(t)
    e = spec.eigenvalues
    w = np.exp(-(e - e[0]) / t)
    return w / w.sum()


def gibbs_state(spec, t):
    """Thermal density matrix exp(-H/T)/Z in the original basis."""
    w = boltzmann_weights(spec, t)
    v = spec.eigenvectors
    return (v * w) @ v.conj().T


def ground_state_projector(spec, degeneracy_tol=DEGENERACY_TOL):
    """Equal-weight mixture over the ground manifold, the T -> 0 Gibbs limit."""
    if degeneracy_tol <= 0.0:
        raise ValueError("degeneracy_tol must be positive")
    e = spec.eigenvalues
    ground = e - e[0] <= degeneracy_tol
    v = spec.eigenvectors[:, ground]
    return (v @ v.conj().T) / int(ground.sum())


def thermal_energy(spec, t, degeneracy_tol=DEGENERACY_TOL):
    """Ensemble average energy; the ground-manifold mean at T=0."""
    t = float(t)
    if t == 0.0:
        e = spec.eigenvalues
        return float(e[e - e[0] <= degeneracy_tol].mean())
    return float(spec.eigenvalues @ boltzmann_weights(spec, t))
