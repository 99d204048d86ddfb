"""Cross-validation suite: every closed form against the numeric path.

Each check pits two independent routes against each other (exact
diagonalization vs closed forms, measured boundaries vs exact crossing
fields, thermal limits vs ground-manifold results) or asserts a frozen
reference value. The CLI validate command runs the full list and reports
one pass/fail line per check; all checks are deterministic given the seed.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .entanglement import full_report, partial_trace, wootters_concurrence
from .model import ModelParams, build_xx_hamiltonian, build_xxz_hamiltonian
from .spectral import (
    eigendecompose,
    gibbs_state,
    ground_state_projector,
    partition_function,
)
from .sweep import critical_temperature, entanglement_onset_field
from .xx4 import (
    analytic_concurrence_alternate,
    analytic_partition_function,
    analytic_rho13,
    analytic_spectrum,
)

SQRT2 = np.sqrt(2.0)

# plateau values of the zero-temperature concurrences on the middle band
# and below it; the residual of the low-field ground state
ALTERNATE_PLATEAU = 0.5
NEAREST_PLATEAU = (2.0 * SQRT2 - 1.0) / 4.0
LOW_FIELD_RESIDUAL = (4.0 * SQRT2 - 5.0) / 4.0

# measured peak position of the anisotropy scan at T=0.2, B=0 (flat to the
# grid used in check 11); frozen so regressions surface as a failed check
ANISOTROPY_PEAK_DELTA = -0.58


@dataclass(frozen=True)
class CheckResult:
    index: int
    name: str
    passed: bool
    detail: str


def _scaled_gap(value, reference, scale):
    """|value - reference| in units of max(1, scale)."""
    return abs(value - reference) / max(1.0, scale)


def _numeric_alternate(j, b, t):
    params = ModelParams(coupling_j=j, field_b=b, n_sites=4)
    decomposition = eigendecompose(build_xx_hamiltonian(params))
    rho = gibbs_state(decomposition, t)
    return wootters_concurrence(partial_trace(rho, (1, 3), 4))


def check_spectrum(rng, draws):
    worst = 0.0
    for b in rng.uniform(-3.0, 3.0, draws):
        params = ModelParams(coupling_j=1.0, field_b=float(b), n_sites=4)
        numeric = eigendecompose(build_xx_hamiltonian(params)).eigenvalues
        closed = np.sort(analytic_spectrum(1.0, float(b)))
        worst = max(worst, float(np.abs(numeric - closed).max()))
    return worst <= 1e-10, f"max |numeric - closed| = {worst:.3g} (tol 1e-10)"


def check_partition(grid):
    worst = 0.0
    for b in np.linspace(-2.0, 2.0, grid):
        params = ModelParams(coupling_j=1.0, field_b=float(b), n_sites=4)
        decomposition = eigendecompose(build_xx_hamiltonian(params))
        for t in np.linspace(0.05, 5.0, grid):
            numeric = partition_function(decomposition, float(t))
            closed = analytic_partition_function(1.0, float(b), float(t))
            worst = max(worst, abs(numeric - closed) / closed)
    return worst <= 1e-9, f"max relative deviation = {worst:.3g} (tol 1e-9)"


def check_reduced_state(rng, draws):
    """Literal reduced-state entries (x Z) against the closed Boltzmann sums.

    Entry deviations are measured in units of the partition sum: the
    numeric entries inherit rounding at the scale of the whole table
    (eps x Z), so exponentially suppressed individual entries carry no
    tighter relative meaning.
    """
    worst = 0.0
    worst_zero = 0.0
    for _ in range(draws):
        b = float(rng.uniform(-2.0, 2.0))
        t = float(rng.uniform(0.05, 5.0))
        params = ModelParams(coupling_j=1.0, field_b=b, n_sites=4)
        decomposition = eigendecompose(build_xx_hamiltonian(params))
        rho = partial_trace(gibbs_state(decomposition, t), (1, 3), 4)
        z = partition_function(decomposition, t)
        closed = analytic_rho13(1.0, b, t)
        scale = closed.partition
        for value, reference in (
            (rho[0, 0].real * z, closed.pop_00),
            (rho[1, 1].real * z, closed.pop_01),
            (rho[2, 2].real * z, closed.pop_01),
            (rho[3, 3].real * z, closed.pop_11),
            (rho[1, 2].real * z, closed.coherence),
            (rho[2, 1].real * z, closed.coherence),
            (z, closed.partition),
        ):
            worst = max(worst, _scaled_gap(value, reference, scale))
        structural = np.abs(
            np.array([rho[0, 1], rho[0, 2], rho[0, 3], rho[1, 3], rho[2, 3]])
        ).max()
        worst_zero = max(worst_zero, float(structural))
    passed = worst <= 1e-10 and worst_zero <= 1e-12
    return passed, (
        f"max entry deviation = {worst:.3g} (tol 1e-10, units of max(1,Z)); "
        f"max structural zero = {worst_zero:.3g} (tol 1e-12, normalized)"
    )


def check_concurrence_oracle(rng, draws):
    worst = 0.0
    for _ in range(draws):
        j = float(rng.uniform(-2.0, 2.0))
        b = float(rng.uniform(-2.0, 2.0))
        t = float(rng.uniform(0.05, 5.0))
        numeric = _numeric_alternate(j, b, t)
        closed = analytic_concurrence_alternate(j, b, t)
        worst = max(worst, abs(numeric - closed))
    return worst <= 1e-9, f"max |numeric - closed| = {worst:.3g} (tol 1e-9)"


def check_zero_temperature_step():
    gaps = []
    for b, target in (
        (0.1, 0.0),
        (0.3, 0.0),
        (0.5, ALTERNATE_PLATEAU),
        (0.7, ALTERNATE_PLATEAU),
        (0.9, ALTERNATE_PLATEAU),
        (1.1, 0.0),
        (1.5, 0.0),
    ):
        c = _kernels.thermal_pair_concurrence(1.0, b, 0.0, 0.001, (1, 3))
        gaps.append(abs(c - target))
    worst = max(gaps)
    return worst <= 1e-3, f"max |C - step value| = {worst:.3g} at T=0.001 (tol 1e-3)"


def half_height_band_edges(j=1.0, t=0.01, level=None):
    """Entangled-band edges at fixed T, measured at half the plateau height.

    Bisects C(B) - level on the rising and falling flanks; half height
    makes the estimate insensitive to how sharply temperature rounds the
    step. Returns (lower_edge, upper_edge).
    """
    if level is None:
        level = 0.5 * ALTERNATE_PLATEAU

    def concurrence(b):
        return float(_kernels.thermal_pair_concurrence(j, b, 0.0, t, (1, 3)))

    def bisect(lo, hi):
        rising = concurrence(lo) < level
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if (concurrence(mid) < level) == rising:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    scale = abs(j)
    return bisect(0.2 * scale, 0.7 * scale), bisect(0.8 * scale, 1.2 * scale)


def check_band_edges():
    lower, upper = half_height_band_edges()
    gap_lower = abs(lower - (SQRT2 - 1.0))
    gap_upper = abs(upper - 1.0)
    passed = gap_lower <= 0.01 and gap_upper <= 0.01
    return passed, (
        f"edges {lower:.5f}, {upper:.5f}; deviations {gap_lower:.4f}, "
        f"{gap_upper:.4f} from sqrt(2)-1, 1.0 (tol 0.01)"
    )


def check_nearest_plateau():
    plateau = float(_kernels.thermal_pair_concurrence(1.0, 0.2, 0.0, 0.01, (1, 2)))
    dip = float(_kernels.thermal_pair_concurrence(1.0, SQRT2 - 1.0, 0.0, 0.01, (1, 2)))
    high_plateau = float(_kernels.thermal_pair_concurrence(1.0, 0.7, 0.0, 0.01, (1, 2)))
    gap = abs(plateau - NEAREST_PLATEAU)
    passed = gap <= 5e-3 and dip < plateau and dip < high_plateau
    return passed, (
        f"plateau {plateau:.6f} vs (2*sqrt(2)-1)/4 = {NEAREST_PLATEAU:.6f} "
        f"(tol 5e-3); dip {dip:.6f} below {plateau:.6f} and {high_plateau:.6f}"
    )


def check_ground_manifold_identities():
    reports = {}
    for b in (0.2, 0.7):
        params = ModelParams(coupling_j=1.0, field_b=b, n_sites=4)
        decomposition = eigendecompose(build_xx_hamiltonian(params))
        reports[b] = full_report(ground_state_projector(decomposition), 4)

    low, high = reports[0.2], reports[0.7]
    gaps = [abs(ic - 1.0) for ic in low.i_concurrences]
    gaps.append(abs(low.residual - LOW_FIELD_RESIDUAL))
    gaps.extend(abs(ic - np.sqrt(3.0) / 2.0) for ic in high.i_concurrences)
    half_sum = 0.5 * sum(c * c for c in high.pair_concurrences.values())
    gaps.append(abs(high.global_q - half_sum))
    worst = max(gaps)
    return worst <= 1e-9, f"max identity deviation = {worst:.3g} (tol 1e-9)"


def check_critical_temperatures():
    counts = {
        b: len(critical_temperature(1.0, b)) for b in (0.05, 0.25, 0.7, 1.2)
    }
    expected = {0.05: 0, 0.25: 2, 0.7: 1, 1.2: 2}
    onset = entanglement_onset_field(1.0)
    passed = counts == expected and 0.07 <= onset <= 0.11
    return passed, (
        f"root counts {counts} (expected {expected}); "
        f"onset field {onset:.4f} (expected within [0.07, 0.11])"
    )


def check_symmetries(subsample=1):
    b_axis = np.linspace(-2.0, 2.0, 121)[::subsample]
    t_axis = np.linspace(0.02, 2.0, 100)[::subsample]
    bb, tt = np.meshgrid(b_axis, t_axis, indexing="ij")
    base = _kernels.thermal_pair_concurrence(1.0, bb, 0.0, tt, (1, 3))
    mirrored = _kernels.thermal_pair_concurrence(1.0, -bb, 0.0, tt, (1, 3))
    flipped = _kernels.thermal_pair_concurrence(-1.0, bb, 0.0, tt, (1, 3))
    worst = max(
        float(np.abs(base - mirrored).max()), float(np.abs(base - flipped).max())
    )
    return worst <= 1e-10, (
        f"max |C(B)-C(-B)|, |C(J)-C(-J)| = {worst:.3g} over "
        f"{bb.size} grid points (tol 1e-10)"
    )


def _anisotropy_scan(b, t=0.2, step=0.01):
    deltas = np.arange(-1.0, 1.0 + 0.5 * step, step)
    values = _kernels.thermal_pair_concurrence(1.0, b, deltas, t, (1, 3))
    return deltas, values


def check_anisotropy_structure():
    """Anisotropy scan facts at T=0.2 on a 0.01 grid in delta.

    Asserts what the scan reproducibly shows: exact zero on the whole
    non-negative-delta side at B=0, a peak at negative delta whose measured
    position is the frozen -0.58, and a peak that sits at larger delta once
    the field is raised to B=0.5.
    """
    deltas, values = _anisotropy_scan(0.0)
    nonneg_max = float(values[deltas >= 0.0].max())
    peak_b0 = float(deltas[int(np.argmax(values))])
    deltas5, values5 = _anisotropy_scan(0.5)
    peak_b5 = float(deltas5[int(np.argmax(values5))])
    passed = (
        nonneg_max <= 1e-9
        and abs(peak_b0 - ANISOTROPY_PEAK_DELTA) <= 0.015
        and peak_b5 > peak_b0
    )
    return passed, (
        f"max C on delta >= 0 at B=0: {nonneg_max:.3g} (tol 1e-9); "
        f"peak at delta = {peak_b0:.2f} (frozen {ANISOTROPY_PEAK_DELTA}); "
        f"peak moves to {peak_b5:.2f} at B=0.5"
    )


def run_validation(seed=20240801, draws=None, quick=False):
    """Run checks 1-11 and return their results in order.

    draws overrides the random draw counts of the sampled checks; quick
    reduces all grids and draw counts for a fast smoke run.
    """
    rng = np.random.default_rng(seed)
    n_spectrum = draws or (20 if quick else 100)
    n_state = draws or (15 if quick else 50)
    n_concurrence = draws or (50 if quick else 200)
    grid = 8 if quick else 20
    subsample = 4 if quick else 1

    plan = [
        ("spectrum_closed_form", lambda: check_spectrum(rng, n_spectrum)),
        ("partition_closed_form", lambda: check_partition(grid)),
        ("reduced_state_closed_form", lambda: check_reduced_state(rng, n_state)),
        ("concurrence_oracle", lambda: check_concurrence_oracle(rng, n_concurrence)),
        ("zero_temperature_step", check_zero_temperature_step),
        ("band_edges", check_band_edges),
        ("nearest_neighbor_plateau", check_nearest_plateau),
        ("ground_manifold_identities", check_ground_manifold_identities),
        ("critical_temperature_structure", check_critical_temperatures),
        ("field_and_coupling_symmetry", lambda: check_symmetries(subsample)),
        ("anisotropy_structure", check_anisotropy_structure),
    ]
    results = []
    for index, (name, check) in enumerate(plan, start=1):
        try:
            passed, detail = check()
        except Exception as exc:  # a crashed check is a failed check
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(index=index, name=name, passed=passed, detail=detail))
    return results
