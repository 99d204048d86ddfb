"""Closed forms for the four-site XX ring.

Everything here is exact algebra for N=4, zero anisotropy: the sixteen
energy levels, their eigenstates, the Boltzmann sums behind the reduced
state of the alternate pair (sites 1 and 3), the partition function, and
the alternate-pair concurrence. These are the independent oracles that the
numeric diagonalization path is tested against; neither route calls the
other.

All temperature-dependent sums are evaluated with a common exponential
shift so they are finite at any T > 0. Quantities that are ratios of sums
(the normalized reduced state, the concurrence) are exact at any
temperature; the raw sums themselves overflow to inf once the true value
exceeds the double range, which the literal accessors document.
"""

from dataclasses import dataclass

import numpy as np

SQRT2 = np.sqrt(2.0)


def crossing_fields(j):
    """Fields where the ground state changes: (sqrt(2)-1)|J| and |J|."""
    if j == 0:
        raise ValueError("crossing fields are undefined for zero coupling")
    return ((SQRT2 - 1.0) * abs(j), abs(j))


def analytic_spectrum(j, b):
    """The sixteen energy levels in their conventional label order.

    Level k of the returned array pairs with state k of
    analytic_eigenstates(). The multiset equals the numeric spectrum of the
    four-site XX ring Hamiltonian.
    """
    return np.array(
        [
            -4 * b,
            2 * j - 2 * b,
            -2 * b,
            -2 * j - 2 * b,
            -2 * b,
            2 * SQRT2 * j,
            -2 * SQRT2 * j,
            0.0,
            0.0,
            0.0,
            0.0,
            2 * j + 2 * b,
            2 * b,
            -2 * j + 2 * b,
            2 * b,
            4 * b,
        ]
    )


def analytic_eigenstates():
    """The sixteen orthonormal eigenvectors, row k belonging to level k.

    They do not depend on the coupling or the field; only the level values
    do. The single- and three-excitation momentum states carry complex
    phases.
    """
    states = np.zeros((16, 16), dtype=complex)

    def put(k, amplitudes):
        for index, amp in amplitudes:
            states[k, index] = amp

    half = 0.5
    quarter_band = SQRT2 / 4.0

    put(0, [(0, 1.0)])
    # one excitation: momentum states over |0001>, |0010>, |0100>, |1000>
    put(1, [(1, half), (2, half), (4, half), (8, half)])
    put(2, [(1, half), (2, half * 1j), (4, -half), (8, -half * 1j)])
    put(3, [(1, half), (2, -half), (4, half), (8, -half)])
    put(4, [(1, half), (2, -half * 1j), (4, -half), (8, half * 1j)])
    # two excitations: the stretched pair (alternate sites) mixes with the
    # adjacent-pair ring wave to form the split band states 5 and 6
    pair_wave = [(3, quarter_band), (6, quarter_band), (12, quarter_band), (9, quarter_band)]
    put(5, pair_wave + [(5, half), (10, half)])
    put(6, pair_wave + [(5, -half), (10, -half)])
    put(7, [(3, half), (6, half * 1j), (12, -half), (9, -half * 1j)])
    put(8, [(3, half), (6, -half), (12, half), (9, -half)])
    put(9, [(5, 1 / SQRT2), (10, -1 / SQRT2)])
    put(10, [(3, half), (6, -half * 1j), (12, -half), (9, half * 1j)])
    # three excitations mirror the single-excitation band
    put(11, [(14, half), (13, half), (11, half), (7, half)])
    put(12, [(14, half), (13, half * 1j), (11, -half), (7, -half * 1j)])
    put(13, [(14, half), (13, -half), (11, half), (7, -half)])
    put(14, [(14, half), (13, -half * 1j), (11, -half), (7, half * 1j)])
    put(15, [(15, 1.0)])
    return states


def _check_temperature(t):
    t = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(t)) or np.any(t <= 0.0):
        raise ValueError("temperature must be finite and positive")
    return t


def _scaled_sums(j, b, t):
    """Boltzmann sums (pop00, pop11, coherence, partition) x exp(-shift/t).

    Grouping the sixteen levels by their contribution to the alternate-pair
    reduced matrix gives four sums of exponentials in the level energies.
    The common factor exp(-shift/t), with shift the largest level magnitude,
    keeps every term in range at any positive temperature and cancels in
    every normalized quantity. Arguments broadcast.
    """
    b = np.asarray(b, dtype=float)
    t = _check_temperature(t)
    hop_plus = 2.0 * j + 2.0 * b
    hop_minus = 2.0 * j - 2.0 * b
    band = 2.0 * SQRT2 * j

    shift = np.maximum(
        np.maximum(np.abs(hop_plus), np.abs(hop_minus)),
        np.maximum(np.abs(band), np.abs(4.0 * b)),
    )
    beta = 1.0 / t

    def ex(x):
        return np.exp((x - shift) * beta)

    def ch(x):
        return 0.5 * (ex(x) + ex(-x))

    one = ex(0.0)
    pop00 = 0.5 * (one + ex(hop_plus) + ex(-hop_minus) + ch(band)) + ex(2 * b) + ex(4 * b)
    pop11 = 0.5 * (one + ex(-hop_plus) + ex(hop_minus) + ch(band)) + ex(-2 * b) + ex(-4 * b)
    coherence = 0.5 * (-one + ch(hop_plus) + ch(hop_minus) + ch(band)) - ch(2 * b)
    partition = 4 * one + 4 * ch(2 * b) + 2 * (ch(4 * b) + ch(hop_plus) + ch(hop_minus) + ch(band))
    return pop00, pop11, coherence, partition, shift * beta


@dataclass(frozen=True)
class PairWeights:
    """Unnormalized Boltzmann weights of the alternate-pair reduced state.

    pop_00, pop_01 and pop_11 are the basis populations multiplied by the
    partition sum (the two antiparallel populations are equal by symmetry);
    coherence is the single off-diagonal element on the same scale. The
    populations satisfy pop_00 + 2*pop_01 + pop_11 = partition.
    """

    pop_00: float
    pop_01: float
    pop_11: float
    coherence: float
    partition: float

    def as_density_matrix(self):
        """The normalized 4x4 reduced state."""
        z = self.partition
        rho = np.diag([self.pop_00, self.pop_01, self.pop_01, self.pop_11]) / z
        rho[1, 2] = rho[2, 1] = self.coherence / z
        return rho


def analytic_rho13(j, b, t):
    """Closed-form reduced state of sites 1 and 3 at temperature t.

    Returns the literal (unnormalized) Boltzmann sums; they overflow to inf
    below roughly T ~ |largest level| / 700. Normalized quantities stay
    exact at any positive temperature via as_density_matrix or
    analytic_concurrence_alternate.
    """
    pop00, pop11, coherence, partition, log_scale = _scaled_sums(j, b, t)
    with np.errstate(over="ignore"):
        scale = np.exp(log_scale)
    pop00, pop11, coherence, partition = (
        float(pop00 * scale),
        float(pop11 * scale),
        float(coherence * scale),
        float(partition * scale),
    )
    return PairWeights(
        pop_00=pop00,
        pop_01=0.5 * (partition - pop00 - pop11),
        pop_11=pop11,
        coherence=coherence,
        partition=partition,
    )


def analytic_partition_function(j, b, t):
    """Closed-form Tr exp(-H/T); inf beyond the double range."""
    _, _, _, partition, log_scale = _scaled_sums(j, b, t)
    with np.errstate(over="ignore"):
        value = partition * np.exp(log_scale)
    return value if np.ndim(value) else float(value)


def analytic_concurrence_alternate(j, b, t):
    """Alternate-pair concurrence 2 max(|coherence| - sqrt(pop00 pop11), 0) / Z.

    Exact at any positive temperature; broadcasts over b and t.
    """
    pop00, pop11, coherence, partition, _ = _scaled_sums(j, b, t)
    value = 2.0 * np.maximum(np.abs(coherence) - np.sqrt(pop00 * pop11), 0.0) / partition
    return value if np.ndim(value) else float(value)


def zero_temperature_concurrence(j, b, crossing_atol=1e-12):
    """The T -> 0 alternate-pair concurrence away from ground-state crossings.

    0 inside |B| < (sqrt(2)-1)|J|, 1/2 on the middle band, 0 beyond |B| > |J|.
    At the crossing fields the zero-temperature state is a degenerate
    mixture and this step function does not apply; those inputs raise, and
    the ground-manifold projector path gives the mixture value instead.
    """
    if j == 0:
        if b == 0:
            raise ValueError(
                "fully degenerate at J=0, B=0; use the ground-manifold projector"
            )
        return 0.0
    low, high = crossing_fields(j)
    distance = min(abs(abs(b) - low), abs(abs(b) - high))
    if distance <= crossing_atol:
        raise ValueError(
            f"|B|={abs(b)} sits on a ground-state crossing; "
            "the limit there is the degenerate mixture, use the "
            "ground-manifold projector path"
        )
    if abs(b) < low or abs(b) > high:
        return 0.0
    return 0.5
