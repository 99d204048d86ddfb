"""Pure numpy sweep kernel for the four-site ring.

Evaluates pair concurrences for whole parameter batches at once: stacked
Hamiltonians from cached templates, batched eigendecomposition, batched
Gibbs weights, an einsum pair reduction and a batched Wootters step. The
ring Hamiltonian is real symmetric in the computational basis, so every
intermediate stays real.

The compiled backend implements the same contract; callers go through the
package wrappers in _kernels.__init__, which normalize arguments.
"""

import numpy as np

from ..entanglement import SPIN_FLIP_2
from ..model import ModelParams, build_xx_hamiltonian, magnetization_operator, pauli_site_operator, ring_bonds
from ..xx4 import analytic_concurrence_alternate

BACKEND_NAME = "pure"

GROUND_MANIFOLD_TOL = 1e-9


def _ring_templates():
    hop = build_xx_hamiltonian(ModelParams(coupling_j=1.0, field_b=0.0, n_sites=4)).real
    field = magnetization_operator(4).real
    ising = np.zeros((16, 16))
    for a, b in ring_bonds(4):
        ising += (pauli_site_operator("z", a, 4) @ pauli_site_operator("z", b, 4)).real
    return hop, field, ising


_HOP, _FIELD, _ISING = _ring_templates()


def _thermal_weights(energies, t):
    """Gibbs weights per batch row; t=0 rows get the flat ground-manifold mixture."""
    weights = np.empty_like(energies)
    positive = t > 0.0
    if positive.any():
        scaled = -(energies[positive] - energies[positive, :1]) / t[positive, None]
        np.exp(scaled, out=scaled)
        weights[positive] = scaled / scaled.sum(axis=1, keepdims=True)
    frozen = ~positive
    if frozen.any():
        manifold = (energies[frozen] - energies[frozen, :1]) <= GROUND_MANIFOLD_TOL
        weights[frozen] = manifold / manifold.sum(axis=1, keepdims=True)
    return weights


def _pair_reduction(rho, pair):
    """Trace a (n,16,16) batch down to the two kept sites (1-based, ascending)."""
    r = rho.reshape((-1,) + (2,) * 8)
    row = list(range(1, 5))
    col = [4 + s if s in pair else s for s in range(1, 5)]
    out = [0] + list(pair) + [4 + s for s in pair]
    return np.einsum(r, [0] + row + col, out).reshape(-1, 4, 4)


def _wootters_batch(rho):
    """Concurrence of a (n,4,4) batch of real two-qubit states.

    Works on G = sqrt(rho) F sqrt(rho) with F the doubled spin flip: the
    eigenvalue magnitudes of G are the Wootters lambdas, and forming G from
    the square root keeps the smallest lambda at full precision where the
    textbook rho.(F rho* F) product loses half the digits.
    """
    vals, vecs = np.linalg.eigh(rho)
    np.clip(vals, 0.0, None, out=vals)
    root = (vecs * np.sqrt(vals)[:, None, :]) @ vecs.transpose(0, 2, 1)
    crossed = root @ SPIN_FLIP_2 @ root
    lam = np.abs(np.linalg.eigvalsh(crossed))
    lam.sort(axis=1)
    return np.maximum(lam[:, 3] - lam[:, 2] - lam[:, 1] - lam[:, 0], 0.0)


def thermal_pair_concurrence(j, b, delta, t, pair):
    """Concurrence of the given site pair for each (j, b, delta, t) row."""
    h = (
        j[:, None, None] * _HOP
        + b[:, None, None] * _FIELD
        + (0.5 * j * delta)[:, None, None] * _ISING
    )
    energies, modes = np.linalg.eigh(h)
    weights = _thermal_weights(energies, t)
    gibbs = (modes * weights[:, None, :]) @ modes.transpose(0, 2, 1)
    return _wootters_batch(_pair_reduction(gibbs, pair))


def alternate_concurrence_closed(j, b, t):
    """Closed-form alternate-pair concurrence, elementwise over the batch."""
    return np.asarray(analytic_concurrence_alternate(j, b, t), dtype=float)
