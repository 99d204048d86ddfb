import numpy as np
import pytest

from spinring import _kernels
from spinring.model import ModelParams, build_xxz_hamiltonian
from spinring.spectral import eigendecompose, gibbs_state, partition_function
from spinring.entanglement import partial_trace, wootters_concurrence
from spinring.sweep import (
    FIGURE_IDS,
    GridSpec,
    boundary_curve,
    critical_fields,
    critical_temperature,
    entanglement_onset_field,
    figure_dataset,
    level_contours,
    run_sweep,
)
from spinring.xx4 import crossing_fields


def _grid(b=0.7, t=0.2, **kwargs):
    kwargs.setdefault("model", ModelParams(coupling_j=1.0))
    return GridSpec(field_b=b, temperature=t, **kwargs)


def test_gridspec_validates_quantities():
    with pytest.raises(ValueError):
        _grid(quantities=())
    with pytest.raises(ValueError):
        _grid(quantities=("concurrence",))
    with pytest.raises(ValueError):
        _grid(quantities=("Q", "Q"))


def test_gridspec_requires_a_temperature_axis():
    with pytest.raises(ValueError):
        GridSpec(field_b=0.5, model=ModelParams(coupling_j=1.0))


def test_gridspec_rejects_nonpositive_temperatures():
    with pytest.raises(ValueError):
        _grid(t=0.0)
    with pytest.raises(ValueError):
        _grid(t=[0.1, -0.2])


def test_gridspec_axis_forms():
    spec = GridSpec(
        field_b=(0.0, 1.0, 5),
        temperature=[0.4, 0.1, 0.2],
        anisotropy=-0.3,
        model=ModelParams(coupling_j=1.0),
    )
    b, t, d = spec.axes()
    np.testing.assert_allclose(b, np.linspace(0.0, 1.0, 5))
    np.testing.assert_array_equal(t, [0.1, 0.2, 0.4])  # sorted ascending
    np.testing.assert_array_equal(d, [-0.3])


def test_gridspec_rejects_malformed_axes():
    with pytest.raises(ValueError):
        _grid(b=(1.0, 0.0, 5))  # min > max
    with pytest.raises(ValueError):
        _grid(b=(0.0, 1.0, 0))  # empty range
    with pytest.raises(ValueError):
        _grid(b=[])
    with pytest.raises(ValueError):
        _grid(b=[0.1, np.inf])


def test_gridspec_ground_manifold_defaults_temperature_to_zero():
    spec = GridSpec(
        field_b=0.5, model=ModelParams(coupling_j=1.0), ground_manifold=True
    )
    _, t, _ = spec.axes()
    np.testing.assert_array_equal(t, [0.0])


def test_axes_inherit_the_base_model():
    spec = GridSpec(
        temperature=0.3,
        model=ModelParams(coupling_j=1.0, field_b=0.8, anisotropy_delta=0.2),
    )
    b, _, d = spec.axes()
    np.testing.assert_array_equal(b, [0.8])
    np.testing.assert_array_equal(d, [0.2])


def test_run_sweep_row_order():
    spec = GridSpec(
        field_b=[1.0, 0.0, 0.5],
        temperature=[0.2, 0.1],
        anisotropy=[0.5, 0.0],
        model=ModelParams(coupling_j=1.0),
        quantities=("Q", "C_alternate"),
    )
    table = run_sweep(spec)
    assert len(table) == 2 * 2 * 2 * 3
    rows = list(table.rows())
    # quantity blocks in sorted order, then delta, then t, then b ascending
    assert [r.quantity for r in rows[:12]] == ["C_alternate"] * 12
    assert [r.quantity for r in rows[12:]] == ["Q"] * 12
    assert [(r.delta, r.t, r.b) for r in rows[:6]] == [
        (0.0, 0.1, 0.0), (0.0, 0.1, 0.5), (0.0, 0.1, 1.0),
        (0.0, 0.2, 0.0), (0.0, 0.2, 0.5), (0.0, 0.2, 1.0),
    ]
    assert all(r.j == 1.0 for r in rows)
    assert all(r.error == "" for r in rows)


def test_run_sweep_single_point_matches_direct_evaluation():
    for quantity, pair in (("C_alternate", (1, 3)), ("C_nearest", (1, 2))):
        table = run_sweep(_grid(quantities=(quantity,)))
        direct = _kernels.thermal_pair_concurrence(1.0, 0.7, 0.0, 0.2, pair)
        assert table.value[0] == pytest.approx(direct, abs=1e-14)


def test_run_sweep_general_quantities_match_the_library():
    params = ModelParams(coupling_j=1.0, field_b=0.7)
    spec = eigendecompose(build_xxz_hamiltonian(params))
    rho = gibbs_state(spec, 0.2)
    table = run_sweep(_grid(quantities=("Z", "energy", "Q", "IC")))
    by_quantity = {q: v for q, v in zip(table.quantity, table.value)}
    assert by_quantity["Z"] == pytest.approx(partition_function(spec, 0.2), rel=1e-12)
    assert by_quantity["energy"] == pytest.approx(
        float(spec.eigenvalues @ np.exp(-(spec.eigenvalues - spec.eigenvalues[0]) / 0.2)
              / np.sum(np.exp(-(spec.eigenvalues - spec.eigenvalues[0]) / 0.2))),
        rel=1e-12,
    )
    purity = [
        float(np.real(np.trace(m @ m)))
        for m in (partial_trace(rho, (s,), 4) for s in range(1, 5))
    ]
    assert by_quantity["Q"] == pytest.approx(
        sum(2.0 * (1.0 - p) for p in purity) / 4.0, abs=1e-12
    )
    assert by_quantity["IC"] == pytest.approx(
        np.sqrt(2.0 * (1.0 - purity[0])), abs=1e-12
    )


def test_run_sweep_fast_path_agrees_with_numeric():
    spec_args = dict(
        field_b=(0.0, 1.5, 31),
        temperature=[0.05, 0.3, 1.0],
        model=ModelParams(coupling_j=1.0),
        quantities=("C_alternate",),
    )
    numeric = run_sweep(GridSpec(**spec_args))
    fast = run_sweep(GridSpec(fast_path=True, **spec_args))
    np.testing.assert_allclose(fast.value, numeric.value, atol=1e-12)


def test_run_sweep_larger_ring_uses_the_general_path():
    spec = GridSpec(
        field_b=0.4,
        temperature=0.5,
        model=ModelParams(coupling_j=1.0, n_sites=6),
        quantities=("C_nearest",),
    )
    table = run_sweep(spec)
    params = ModelParams(coupling_j=1.0, field_b=0.4, n_sites=6)
    rho = gibbs_state(eigendecompose(build_xxz_hamiltonian(params)), 0.5)
    direct = wootters_concurrence(partial_trace(rho, (1, 2), 6))
    assert table.value[0] == pytest.approx(direct, abs=1e-12)


def test_run_sweep_out_of_domain_rows_become_nan_with_a_reason():
    spec = GridSpec(
        field_b=[0.2, 0.7],
        model=ModelParams(coupling_j=1.0),
        quantities=("Z", "C_alternate"),
        ground_manifold=True,
    )
    table = run_sweep(spec)
    z_rows = table.select("Z")
    assert np.all(np.isnan(z_rows.value))
    assert all("undefined" in e for e in z_rows.error)
    c_rows = table.select("C_alternate")
    assert np.all(np.isfinite(c_rows.value))
    assert all(e == "" for e in c_rows.error)


def test_run_sweep_is_thread_deterministic(monkeypatch):
    spec = GridSpec(
        field_b=(0.0, 1.5, 65),
        temperature=[0.1, 0.4],
        model=ModelParams(coupling_j=1.0),
        quantities=("C_alternate", "C_nearest"),
    )
    serial = run_sweep(spec, threads=1)
    threaded = run_sweep(spec, threads=3)
    assert np.array_equal(serial.value, threaded.value)
    monkeypatch.setenv("SPINRING_THREADS", "2")
    from_env = run_sweep(spec)
    assert np.array_equal(serial.value, from_env.value)
    monkeypatch.setenv("SPINRING_THREADS", "0")
    with pytest.raises(ValueError):
        run_sweep(spec)


def test_coupling_sign_replication():
    tables = {
        j: run_sweep(
            GridSpec(
                field_b=(-2.0, 2.0, 13),
                temperature=(0.02, 2.0, 10),
                model=ModelParams(coupling_j=j),
            )
        )
        for j in (1.0, -1.0)
    }
    np.testing.assert_allclose(
        tables[1.0].value, tables[-1.0].value, atol=1e-10
    )


def test_select_keeps_columns_aligned():
    table = run_sweep(_grid(b=[0.1, 0.9], quantities=("C_alternate", "Q")))
    sub = table.select("Q")
    assert len(sub) == 2
    assert set(sub.quantity) == {"Q"}
    np.testing.assert_array_equal(sub.b, [0.1, 0.9])


def test_critical_temperature_root_structure():
    assert critical_temperature(1.0, 0.05) == []
    roots = critical_temperature(1.0, 0.25)
    np.testing.assert_allclose(
        roots, [0.12184405418754277, 0.45365743980458717], atol=2e-6
    )
    np.testing.assert_allclose(
        critical_temperature(1.0, 0.7), [0.6155598741851649], atol=2e-6
    )
    np.testing.assert_allclose(
        critical_temperature(1.0, 1.2),
        [0.06438765714420529, 0.6753204082643298],
        atol=2e-6,
    )


def test_critical_temperature_is_a_sign_symmetric_detector():
    for b in (0.25, 0.7):
        base = critical_temperature(1.0, b)
        np.testing.assert_allclose(critical_temperature(1.0, -b), base, atol=1e-9)
        np.testing.assert_allclose(critical_temperature(-1.0, b), base, atol=1e-9)


def test_critical_temperature_detection_level_resolves_slivers():
    # below the default onset the band survives at reduced amplitude; a
    # finer detection level resolves it
    assert critical_temperature(1.0, 0.05) == []
    fine = critical_temperature(1.0, 0.05, detection_level=1e-6)
    assert len(fine) == 2
    for root in fine:
        c = _kernels.alternate_concurrence_closed(1.0, 0.05, root)
        assert c == pytest.approx(1e-6, abs=1e-7)


def test_critical_temperature_validates_arguments():
    with pytest.raises(ValueError):
        critical_temperature(1.0, 0.25, t_bracket=(0.5, 0.1))
    with pytest.raises(ValueError):
        critical_temperature(1.0, 0.25, t_bracket=(0.0, 1.0))
    with pytest.raises(ValueError):
        critical_temperature(1.0, 0.25, tol=0.0)


def test_critical_fields_delegates_to_the_crossings():
    assert critical_fields(1.5) == crossing_fields(1.5)
    with pytest.raises(ValueError):
        critical_fields(0.0)


def test_entanglement_onset_field():
    onset = entanglement_onset_field(1.0)
    assert onset == pytest.approx(0.10484130859375, abs=2e-4)
    with pytest.raises(ValueError):
        entanglement_onset_field(1.0, b_bracket=(0.2, 0.4))  # both entangled


def test_boundary_curve_points_straddle_the_indicator():
    spec = GridSpec(
        field_b=0.25,
        temperature=(0.02, 2.0, 60),
        model=ModelParams(coupling_j=1.0),
    )
    table = run_sweep(spec)
    curve = boundary_curve(table)
    assert curve.branch == ("lower", "upper")
    assert curve.t_c[0] < curve.t_c[1]
    assert curve.tolerance == 1e-4
    for t_c, branch in zip(curve.t_c, curve.branch):
        below = float(_kernels.thermal_pair_concurrence(1.0, 0.25, 0.0, t_c - 2e-4))
        above = float(_kernels.thermal_pair_concurrence(1.0, 0.25, 0.0, t_c + 2e-4))
        if branch == "lower":
            assert below <= 1e-9 < above
        else:
            assert above <= 1e-9 < below


def test_boundary_curve_rejects_non_pair_quantities():
    table = run_sweep(_grid(quantities=("Q",)))
    with pytest.raises(ValueError):
        boundary_curve(table, quantity="Q")
    with pytest.raises(ValueError):
        boundary_curve(table, quantity="C_alternate")  # no such rows


def test_level_contours_interpolate_the_requested_level():
    spec = GridSpec(
        field_b=0.7,
        temperature=(0.02, 2.0, 60),
        model=ModelParams(coupling_j=1.0),
    )
    table = run_sweep(spec)
    contours = level_contours(table, levels=(0.3, 0.1))
    for level, points in contours.items():
        assert len(points) == 1  # C falls monotonically from 0.5 here
        b, t = points[0]
        assert b == 0.7
        c = float(_kernels.thermal_pair_concurrence(1.0, b, 0.0, t))
        assert c == pytest.approx(level, abs=5e-3)
    # the cold plateau tops out below 0.5 once T >= 0.02
    assert level_contours(table, levels=(0.5,))[0.5] == []


def test_figure_dataset_rejects_unknown_ids():
    with pytest.raises(ValueError):
        figure_dataset("fig9z")


@pytest.mark.parametrize(
    "figure_id,rows",
    [
        ("fig1a", 12100),
        ("fig2a", 903),
        ("fig2b", 903),
        ("fig2c", 602),
        ("fig3a", 3550),
        ("fig3b", 1071),
    ],
)
def test_figure_preset_shapes(figure_id, rows):
    data = figure_dataset(figure_id)
    assert data.figure_id == figure_id
    assert len(data.table) == rows
    assert data.boundary is None
    assert data.contours is None
    assert np.all(np.isfinite(data.table.value))


def test_figure_quantities():
    assert set(figure_dataset("fig2a").table.quantity) == {"C_alternate"}
    assert set(figure_dataset("fig2b").table.quantity) == {"C_nearest"}
    fig2c = figure_dataset("fig2c").table
    assert set(fig2c.quantity) == {"IC", "Q"}
    np.testing.assert_array_equal(fig2c.t, 0.01)  # label only; T=0 evaluation


def test_fig1b_carries_boundary_and_contours():
    data = figure_dataset("fig1b")
    assert len(data.table) == 12100
    assert len(data.boundary) == 186
    assert set(data.boundary.branch) == {"lower", "upper"}
    # the boundary is symmetric in B like the concurrence itself
    fields = np.sort(data.boundary.field)
    np.testing.assert_allclose(fields, -fields[::-1], atol=1e-12)
    assert {level: len(points) for level, points in data.contours.items()} == {
        0.5: 0,
        0.3: 32,
        0.1: 52,
    }


def test_fig3b_anisotropy_peak_facts():
    table = figure_dataset("fig3b").table
    zero_field = table.b == 0.0
    values = table.value[zero_field]
    deltas = table.delta[zero_field]
    peak = int(np.argmax(values))
    assert deltas[peak] == pytest.approx(-0.6)
    assert values[peak] == pytest.approx(0.13490674263950164, abs=1e-12)
    assert float(values[deltas >= 0.0].max()) == 0.0


def test_figure_ids_constant_is_complete():
    assert FIGURE_IDS == ("fig1a", "fig1b", "fig2a", "fig2b", "fig2c", "fig3a", "fig3b")
