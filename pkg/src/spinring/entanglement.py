"""Entanglement measures: partial trace, pair concurrence, one-vs-rest measures.

The pair measure is the Wootters concurrence. The single-site measure
IC_i = sqrt(2(1 - Tr rho_i^2)) and its mean square Q are purity formulas;
they quantify entanglement only for globally pure states, but both accept
any density matrix and apply the formula literally (callers decide whether
a ground-manifold projector or a literal thermal state is appropriate).
"""

from dataclasses import dataclass

import numpy as np

# sigma_y (x) sigma_y, the two-qubit spin-flip matrix; real in this basis.
SPIN_FLIP_2 = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


def partial_trace(rho, keep, n_sites):
    """Reduce a 2^N state to the sites in `keep` (1-based, strictly increasing).

    The reduced basis inherits the original site order: for keep=(1,3) the
    first kept site is the more significant bit of the 4-dim result.
    """
    rho = np.asarray(rho)
    dim = 2 ** n_sites
    if rho.shape != (dim, dim):
        raise ValueError(f"state has shape {rho.shape}, expected {(dim, dim)}")
    keep = tuple(int(s) for s in keep)
    if not keep or any(k2 <= k1 for k1, k2 in zip(keep, keep[1:])):
        raise ValueError("keep must be a non-empty strictly increasing site list")
    if keep[0] < 1 or keep[-1] > n_sites:
        raise ValueError(f"kept sites must lie in 1..{n_sites}")

    kept = [s - 1 for s in keep]
    row = list(range(n_sites))
    col = [n_sites + s if s in kept else s for s in range(n_sites)]
    out = kept + [n_sites + s for s in kept]
    reduced = np.einsum(rho.reshape((2,) * (2 * n_sites)), row + col, out)
    k = len(keep)
    return reduced.reshape(2 ** k, 2 ** k)


def _psd_sqrt(rho):
    evals, vecs = np.linalg.eigh(rho)
    return (vecs * np.sqrt(np.clip(evals, 0.0, None))) @ vecs.conj().T


def wootters_concurrence(rho2):
    """Concurrence of a two-qubit state, C = max(l1 - l2 - l3 - l4, 0).

    The Wootters numbers l_i are evaluated as the singular values of
    sqrt(rho)* (sigma_y x sigma_y) sqrt(rho). These equal the descending
    square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy), but
    avoid that route's noise floor: an l_i near zero is the square root of
    a doubly-tiny eigenvalue there and comes back with sqrt(eps)-level
    error, which is orders of magnitude above what the singular values
    give.
    """
    rho2 = np.asarray(rho2)
    if rho2.shape != (4, 4):
        raise ValueError("concurrence is defined for 4x4 two-qubit states")
    root = _psd_sqrt(rho2)
    lam = np.linalg.svd(root.conj() @ SPIN_FLIP_2 @ root, compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def i_concurrence(rho, site, n_sites):
    """One-against-the-rest measure sqrt(2(1 - Tr rho_i^2)) for one site."""
    reduced = partial_trace(rho, (site,), n_sites)
    purity = float(np.real(np.trace(reduced @ reduced)))
    return float(np.sqrt(max(0.0, 2.0 * (1.0 - purity))))


def global_entanglement(rho, n_sites):
    """Mean of IC_i^2 over all sites."""
    total = 0.0
    for site in range(1, n_sites + 1):
        ic = i_concurrence(rho, site, n_sites)
        total += ic * ic
    return total / n_sites


@dataclass(frozen=True)
class EntanglementReport:
    """Every pair concurrence, every IC_i, their mean square, and the residual.

    residual = 1 - sum of squared pair concurrences, the part of a pure
    state's entanglement not carried by two-site terms.
    """

    pair_concurrences: dict
    i_concurrences: tuple
    global_q: float
    residual: float


def full_report(rho, n_sites):
    """Aggregate all pair and single-site measures of one state."""
    pairs = {}
    for i in range(1, n_sites + 1):
        for j in range(i + 1, n_sites + 1):
            pairs[(i, j)] = wootters_concurrence(partial_trace(rho, (i, j), n_sites))
    ics = tuple(i_concurrence(rho, s, n_sites) for s in range(1, n_sites + 1))
    q = sum(v * v for v in ics) / n_sites
    residual = 1.0 - sum(c * c for c in pairs.values())
    return EntanglementReport(
        pair_concurrences=pairs,
        i_concurrences=ics,
        global_q=q,
        residual=residual,
    )
