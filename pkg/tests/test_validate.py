import numpy as np
import pytest

from spinring.validate import (
    CheckResult,
    half_height_band_edges,
    run_validation,
)


def test_quick_suite_passes():
    results = run_validation(quick=True)
    assert [r.index for r in results] == list(range(1, 12))
    assert all(isinstance(r, CheckResult) for r in results)
    assert all(r.passed for r in results), [
        (r.name, r.detail) for r in results if not r.passed
    ]
    assert all(r.detail for r in results)


def test_check_names_are_stable():
    names = [r.name for r in run_validation(quick=True, draws=2)]
    assert names == [
        "spectrum_closed_form",
        "partition_closed_form",
        "reduced_state_closed_form",
        "concurrence_oracle",
        "zero_temperature_step",
        "band_edges",
        "nearest_neighbor_plateau",
        "ground_manifold_identities",
        "critical_temperature_structure",
        "field_and_coupling_symmetry",
        "anisotropy_structure",
    ]


def test_band_edges_measurement():
    lower, upper = half_height_band_edges()
    assert lower == pytest.approx(0.4235448825793897, abs=1e-9)
    assert upper == pytest.approx(1.0, abs=1e-9)
    # the finite-T rounding pushes the lower edge ~0.009 above sqrt(2)-1
    assert abs(lower - (np.sqrt(2.0) - 1.0)) < 0.01
    # colder measurement tightens toward the exact crossing
    colder, _ = half_height_band_edges(t=0.002)
    assert abs(colder - (np.sqrt(2.0) - 1.0)) < abs(lower - (np.sqrt(2.0) - 1.0))


def test_band_edges_scale_with_the_coupling():
    lower, upper = half_height_band_edges(j=2.0, t=0.02)
    assert lower == pytest.approx(2.0 * 0.4235448825793897, abs=1e-3)
    assert upper == pytest.approx(2.0, abs=1e-6)
