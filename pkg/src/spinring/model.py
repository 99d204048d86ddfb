"""Spin-1/2 ring Hamiltonians: XX hopping in a field, optional zz anisotropy.

Conventions fixed across the package:

* Site 1 is the most significant bit of the basis index, so a bit string
  b_1..b_N maps to index sum_n b_n 2^(N-n) and |0001> on four sites is
  index 1.  Ket strings therefore read left to right as the bits of the
  index.
* sigma^z |1> = +|1> and sigma^z |0> = -|0>, which puts the all-down state
  |00..0> at field energy -N*B.
* The ring is periodic: site N+1 means site 1.
"""

from dataclasses import dataclass

import numpy as np

MAX_SITES = 12

_PAULI = {
    "plus": np.array([[0.0, 0.0], [1.0, 0.0]]),
    "minus": np.array([[0.0, 1.0], [0.0, 0.0]]),
    "z": np.array([[-1.0, 0.0], [0.0, 1.0]]),
    "y": np.array([[0.0, 1.0j], [-1.0j, 0.0]]),
}


@dataclass(frozen=True)
class ModelParams:
    """Ring parameters: hopping strength, field, zz anisotropy, system size."""

    coupling_j: float = 1.0
    field_b: float = 0.0
    anisotropy_delta: float = 0.0
    n_sites: int = 4
    boundary: str = "periodic"

    def __post_init__(self):
        if not isinstance(self.n_sites, (int, np.integer)):
            raise ValueError("n_sites must be an integer")
        if not 2 <= self.n_sites <= MAX_SITES:
            raise ValueError(f"n_sites must be in [2, {MAX_SITES}], got {self.n_sites}")
        if self.boundary != "periodic":
            raise ValueError("only periodic rings are supported")
        for name in ("coupling_j", "field_b", "anisotropy_delta"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def dim(self):
        return 2 ** self.n_sites


def basis_index(bits):
    """Basis index of a site-ordered bit sequence (site 1 first)."""
    index = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError("bits must be 0 or 1")
        index = (index << 1) | b
    return index


def basis_bits(index, n_sites):
    """Bit tuple of a basis index, site 1 first."""
    if not 0 <= index < 2 ** n_sites:
        raise ValueError(f"index {index} outside [0, {2 ** n_sites})")
    return tuple((index >> (n_sites - site)) & 1 for site in range(1, n_sites + 1))


def pauli_site_operator(kind, site, n_sites):
    """Lift a single-site spin matrix to the full 2^N space.

    kind is one of "plus", "minus", "z", "y"; sites are numbered from 1.
    The raising and lowering operators are not Hermitian, so the result is
    a general (possibly complex) matrix.
    """
    try:
        m = _PAULI[kind]
    except KeyError:
        raise ValueError(f"unknown operator kind {kind!r}") from None
    if not 1 <= site <= n_sites:
        raise ValueError(f"site {site} outside 1..{n_sites}")
    left = np.eye(2 ** (site - 1))
    right = np.eye(2 ** (n_sites - site))
    return np.kron(np.kron(left, m), right)


def ring_bonds(n_sites):
    """Ordered periodic bonds (1,2), (2,3), ..., (N,1)."""
    return [(site, site % n_sites + 1) for site in range(1, n_sites + 1)]


def build_xx_hamiltonian(params):
    """H = J sum_n (s+_n s-_n+1 + s-_n s+_n+1) + B sum_n sz_n on the ring."""
    n = params.n_sites
    h = np.zeros((params.dim, params.dim))
    for a, b in ring_bonds(n):
        h += params.coupling_j * (
            pauli_site_operator("plus", a, n) @ pauli_site_operator("minus", b, n)
            + pauli_site_operator("minus", a, n) @ pauli_site_operator("plus", b, n)
        )
    for a in range(1, n + 1):
        h += params.field_b * pauli_site_operator("z", a, n)
    return h


def build_xxz_hamiltonian(params):
    """XX ring plus the anisotropic coupling (J*Delta/2) sum_n sz_n sz_n+1.

    Reduces exactly to build_xx_hamiltonian when the anisotropy vanishes.
    """
    n = params.n_sites
    h = build_xx_hamiltonian(params)
    g = 0.5 * params.coupling_j * params.anisotropy_delta
    if g != 0.0:
        for a, b in ring_bonds(n):
            h += g * (
                pauli_site_operator("z", a, n) @ pauli_site_operator("z", b, n)
            )
    return h


def magnetization_operator(n_sites):
    """Total sz, the conserved magnetization of both ring Hamiltonians."""
    dim = 2 ** n_sites
    diag = np.zeros(dim)
    for index in range(dim):
        ups = bin(index).count("1")
        diag[index] = 2 * ups - n_sites
    return np.diag(diag)
