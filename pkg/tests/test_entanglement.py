import numpy as np
import pytest

from spinring.entanglement import (
    SPIN_FLIP_2,
    EntanglementReport,
    full_report,
    global_entanglement,
    i_concurrence,
    partial_trace,
    wootters_concurrence,
)

from _oracles import (
    concurrence_eigenvalue_route,
    concurrence_pure,
    partial_trace_loops,
    random_density,
    random_pure,
)

BELL = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)


def test_spin_flip_is_sigma_y_tensor_sigma_y():
    sy = np.array([[0.0, 1.0j], [-1.0j, 0.0]])
    np.testing.assert_array_equal(SPIN_FLIP_2, np.kron(sy, sy).real)


@pytest.mark.parametrize("n_sites", [2, 3, 4])
def test_partial_trace_matches_loop_oracle(n_sites):
    rng = np.random.default_rng(100 + n_sites)
    rho = random_density(rng, 2 ** n_sites)
    for size in range(1, n_sites):
        for keep in _ascending_subsets(n_sites, size):
            np.testing.assert_allclose(
                partial_trace(rho, keep, n_sites),
                partial_trace_loops(rho, keep, n_sites),
                atol=1e-13,
            )


def _ascending_subsets(n_sites, size):
    from itertools import combinations

    return combinations(range(1, n_sites + 1), size)


def test_partial_trace_keeps_site_order():
    # product state |0>_1 |1>_2: reducing to (1,2) returns it unchanged
    psi = np.array([0.0, 1.0, 0.0, 0.0])
    rho = np.outer(psi, psi)
    np.testing.assert_array_equal(partial_trace(rho, (1, 2), 2), rho)
    one = partial_trace(rho, (2,), 2)
    np.testing.assert_array_equal(one, [[0.0, 0.0], [0.0, 1.0]])


def test_partial_trace_preserves_trace_and_hermiticity():
    rng = np.random.default_rng(3)
    rho = random_density(rng, 16)
    reduced = partial_trace(rho, (2, 4), 4)
    assert np.trace(reduced) == pytest.approx(1.0, abs=1e-13)
    np.testing.assert_allclose(reduced, reduced.conj().T, atol=1e-14)


def test_partial_trace_validates_arguments():
    rho = np.eye(16) / 16.0
    with pytest.raises(ValueError):
        partial_trace(rho, (3, 1), 4)  # not ascending
    with pytest.raises(ValueError):
        partial_trace(rho, (1, 1), 4)
    with pytest.raises(ValueError):
        partial_trace(rho, (), 4)
    with pytest.raises(ValueError):
        partial_trace(rho, (0, 2), 4)
    with pytest.raises(ValueError):
        partial_trace(rho, (1, 5), 4)
    with pytest.raises(ValueError):
        partial_trace(np.eye(8) / 8.0, (1, 2), 4)  # wrong dimension


def test_concurrence_of_known_states():
    assert wootters_concurrence(np.outer(BELL, BELL)) == pytest.approx(1.0, abs=1e-12)
    product = np.diag([1.0, 0.0, 0.0, 0.0])
    assert wootters_concurrence(product) == 0.0
    maximally_mixed = np.eye(4) / 4.0
    assert wootters_concurrence(maximally_mixed) == 0.0


@pytest.mark.parametrize("p", [0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0])
def test_concurrence_of_werner_states(p):
    werner = p * np.outer(BELL, BELL) + (1.0 - p) * np.eye(4) / 4.0
    expected = max(0.0, (3.0 * p - 1.0) / 2.0)
    assert wootters_concurrence(werner) == pytest.approx(expected, abs=1e-12)


def test_concurrence_of_random_pure_states():
    rng = np.random.default_rng(11)
    for _ in range(25):
        psi = random_pure(rng, 4)
        rho = np.outer(psi, psi.conj())
        assert wootters_concurrence(rho) == pytest.approx(
            concurrence_pure(psi), abs=1e-12
        )


def test_concurrence_matches_eigenvalue_route_on_mixed_states():
    # the eigenvalue route carries a sqrt(eps) noise floor, hence the loose
    # tolerance; the singular-value route is the tighter of the two
    rng = np.random.default_rng(12)
    for _ in range(50):
        rho = random_density(rng, 4)
        assert wootters_concurrence(rho) == pytest.approx(
            concurrence_eigenvalue_route(rho), abs=1e-6
        )


def test_concurrence_rejects_wrong_shape():
    with pytest.raises(ValueError):
        wootters_concurrence(np.eye(8) / 8.0)


def test_i_concurrence_of_bell_half():
    rho = np.outer(BELL, BELL)
    assert i_concurrence(rho, 1, 2) == pytest.approx(1.0, abs=1e-12)
    assert i_concurrence(rho, 2, 2) == pytest.approx(1.0, abs=1e-12)


def test_i_concurrence_of_product_state_is_zero():
    psi = np.zeros(16)
    psi[3] = 1.0
    rho = np.outer(psi, psi)
    for site in range(1, 5):
        assert i_concurrence(rho, site, 4) == 0.0


def test_global_entanglement_of_ghz_and_w():
    ghz = np.zeros(16)
    ghz[0] = ghz[15] = 1.0 / np.sqrt(2.0)
    assert global_entanglement(np.outer(ghz, ghz), 4) == pytest.approx(
        1.0, abs=1e-12
    )
    w = np.zeros(16)
    for k in (1, 2, 4, 8):
        w[k] = 0.5
    assert global_entanglement(np.outer(w, w), 4) == pytest.approx(0.75, abs=1e-12)


def test_full_report_is_consistent_with_the_parts():
    rng = np.random.default_rng(13)
    rho = random_density(rng, 16)
    report = full_report(rho, 4)
    assert isinstance(report, EntanglementReport)
    assert sorted(report.pair_concurrences) == [
        (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4),
    ]
    for (i, k), value in report.pair_concurrences.items():
        direct = wootters_concurrence(partial_trace(rho, (i, k), 4))
        assert value == pytest.approx(direct, abs=1e-13)
    assert report.i_concurrences == tuple(
        i_concurrence(rho, s, 4) for s in range(1, 5)
    )
    assert report.global_q == pytest.approx(
        sum(ic * ic for ic in report.i_concurrences) / 4.0, abs=1e-13
    )
    assert report.residual == pytest.approx(
        1.0 - sum(c * c for c in report.pair_concurrences.values()), abs=1e-13
    )
    assert report.global_q == pytest.approx(global_entanglement(rho, 4), abs=1e-13)
