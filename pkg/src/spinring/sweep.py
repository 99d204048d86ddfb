"""Parameter-grid evaluation and phase-structure extraction.

A sweep walks a (B, T, Delta) grid for one base model, evaluates a set of
quantities at every point, and returns a deterministically ordered table.
On top of that sit the boundary tools: critical temperatures in T at fixed
field, the entangled-band edges in B, the onset field below which no
temperature is entangled, and the preset grids behind the standard seven
figure datasets.

Grid points are independent, so the engine may split the grid across a
thread pool; rows are assembled in a fixed lexicographic order either way,
and serial and threaded runs produce identical tables.
"""

import os
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .entanglement import (
    global_entanglement,
    i_concurrence,
    partial_trace,
    wootters_concurrence,
)
from .model import ModelParams, build_xxz_hamiltonian
from .spectral import (
    eigendecompose,
    gibbs_state,
    ground_state_projector,
    partition_function,
    thermal_energy,
)
from .xx4 import crossing_fields

QUANTITIES = ("C_alternate", "C_nearest", "Q", "IC", "Z", "energy")
FIGURE_IDS = ("fig1a", "fig1b", "fig2a", "fig2b", "fig2c", "fig3a", "fig3b")

THREADS_ENV = "SPINRING_THREADS"

# indicator level separating "entangled" from the exactly-zero plateau when
# extracting C=0 phase boundaries from a grid
BOUNDARY_INDICATOR = 1e-9

# smallest concurrence that counts as entanglement for critical-temperature
# detection; filters sub-resolution slivers near the onset field
DETECTION_LEVEL = 1e-3

_PAIR_FOR = {"C_alternate": (1, 3), "C_nearest": (1, 2)}

Row = namedtuple("Row", "j b t delta quantity value error")


def _axis_values(name, definition, default=None):
    """Normalize one axis definition to a sorted 1-d float array.

    Accepted forms: None (fall back to `default`), a scalar, a (min, max,
    count) triple whose count is an integer, or an explicit sequence of
    values. Values are sorted ascending; the row order of the sweep is
    defined in terms of the sorted axes.
    """
    if definition is None:
        if default is None:
            raise ValueError(f"{name} axis is required")
        definition = default
    if np.ndim(definition) == 0:
        values = np.array([float(definition)])
    else:
        items = list(definition)
        if len(items) == 3 and isinstance(items[2], (int, np.integer)):
            lo, hi, count = float(items[0]), float(items[1]), int(items[2])
            if count < 1:
                raise ValueError(f"{name} axis count must be >= 1")
            if lo > hi:
                raise ValueError(f"{name} axis must have min <= max")
            values = np.linspace(lo, hi, count)
        else:
            values = np.sort(np.asarray(items, dtype=float))
    if values.size == 0:
        raise ValueError(f"{name} axis must contain at least one value")
    if not np.all(np.isfinite(values)):
        raise ValueError(f"{name} axis values must be finite")
    return values


@dataclass(frozen=True, eq=False)
class GridSpec:
    """Axes over field, temperature and anisotropy around one base model.

    Each axis is a scalar, a (min, max, count) triple, an explicit value
    sequence, or None to inherit the base model's value. The temperature
    axis must be strictly positive unless ground_manifold is set, which
    evaluates every point on the zero-temperature ground manifold instead
    of a Gibbs state (the temperature column then only labels the rows, and
    defaults to 0).

    fast_path switches C_alternate evaluation to the closed form, available
    when the base model is the four-site ring at zero anisotropy; other
    quantities always use the numeric path.
    """

    field_b: object = None
    temperature: object = None
    anisotropy: object = None
    model: ModelParams = ModelParams()
    quantities: tuple = ("C_alternate",)
    fast_path: bool = False
    ground_manifold: bool = False

    def __post_init__(self):
        quantities = tuple(self.quantities)
        if not quantities:
            raise ValueError("at least one quantity is required")
        for q in quantities:
            if q not in QUANTITIES:
                raise ValueError(f"unknown quantity {q!r}; valid: {QUANTITIES}")
        if len(set(quantities)) != len(quantities):
            raise ValueError("quantities must be unique")
        object.__setattr__(self, "quantities", quantities)
        self.axes()  # validate eagerly

    def axes(self):
        """The three sorted axis arrays (field, temperature, anisotropy)."""
        b = _axis_values("field", self.field_b, self.model.field_b)
        t_default = 0.0 if self.ground_manifold else None
        t = _axis_values("temperature", self.temperature, t_default)
        if not self.ground_manifold and np.any(t <= 0.0):
            raise ValueError(
                "temperature axis must be strictly positive; set "
                "ground_manifold=True for the zero-temperature path"
            )
        d = _axis_values("anisotropy", self.anisotropy, self.model.anisotropy_delta)
        return b, t, d


@dataclass(frozen=True, eq=False)
class SweepTable:
    """Flat sweep result: one row per (quantity, delta, t, b), in that order.

    All columns have equal length. error holds "" for clean rows and a
    message for rows whose value is NaN because the point was out of
    domain.
    """

    j: np.ndarray
    b: np.ndarray
    t: np.ndarray
    delta: np.ndarray
    quantity: tuple
    value: np.ndarray
    error: tuple

    def __len__(self):
        return self.value.shape[0]

    def rows(self):
        for i in range(len(self)):
            yield Row(
                float(self.j[i]),
                float(self.b[i]),
                float(self.t[i]),
                float(self.delta[i]),
                self.quantity[i],
                float(self.value[i]),
                self.error[i],
            )

    def select(self, quantity):
        """The sub-table holding one quantity."""
        mask = np.array([q == quantity for q in self.quantity])
        return SweepTable(
            j=self.j[mask],
            b=self.b[mask],
            t=self.t[mask],
            delta=self.delta[mask],
            quantity=tuple(q for q, m in zip(self.quantity, mask) if m),
            value=self.value[mask],
            error=tuple(e for e, m in zip(self.error, mask) if m),
        )


@dataclass(frozen=True, eq=False)
class BoundaryCurve:
    """C=0 phase boundary points: field, critical temperature, branch.

    branch is "lower" where entanglement switches on as T rises and
    "upper" where it dies; tolerance is the bisection width in T.
    """

    field: np.ndarray
    t_c: np.ndarray
    branch: tuple
    tolerance: float

    def __len__(self):
        return self.t_c.shape[0]


def _resolve_threads(threads):
    if threads is not None:
        threads = int(threads)
    else:
        env = os.environ.get(THREADS_ENV, "").strip()
        threads = int(env) if env else (os.cpu_count() or 1)
    if threads < 1:
        raise ValueError("thread count must be >= 1")
    return threads


def _chunked(total, parts):
    edges = np.linspace(0, total, parts + 1).astype(int)
    return [(int(lo), int(hi)) for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]


def _map_chunks(worker, total, threads):
    """Run worker(lo, hi) over contiguous chunks, in order, maybe threaded."""
    if threads == 1 or total < 64:
        return [worker(0, total)]
    spans = _chunked(total, min(threads, total))
    if len(spans) == 1:
        return [worker(0, total)]
    with ThreadPoolExecutor(max_workers=len(spans)) as pool:
        return list(pool.map(lambda span: worker(*span), spans))


def _point_state(params, t, ground_manifold):
    decomposition = eigendecompose(build_xxz_hamiltonian(params))
    if ground_manifold:
        return decomposition, ground_state_projector(decomposition)
    return decomposition, gibbs_state(decomposition, t)


def _evaluate_general(quantity, spec, b_flat, t_flat, d_flat, lo, hi):
    """Per-point path for the purity measures, Z, energy, and non-ring sizes."""
    model = spec.model
    n = model.n_sites
    values = np.full(hi - lo, np.nan)
    errors = [""] * (hi - lo)
    for k in range(lo, hi):
        params = ModelParams(
            coupling_j=model.coupling_j,
            field_b=float(b_flat[k]),
            anisotropy_delta=float(d_flat[k]),
            n_sites=n,
        )
        t = float(t_flat[k])
        try:
            if quantity == "Z":
                if spec.ground_manifold:
                    raise ValueError("partition function is undefined on the ground manifold")
                decomposition = eigendecompose(build_xxz_hamiltonian(params))
                values[k - lo] = partition_function(decomposition, t)
            elif quantity == "energy":
                decomposition = eigendecompose(build_xxz_hamiltonian(params))
                values[k - lo] = thermal_energy(
                    decomposition, 0.0 if spec.ground_manifold else t
                )
            else:
                _, state = _point_state(params, t, spec.ground_manifold)
                if quantity == "Q":
                    values[k - lo] = global_entanglement(state, n)
                elif quantity == "IC":
                    values[k - lo] = i_concurrence(state, 1, n)
                else:
                    values[k - lo] = wootters_concurrence(
                        partial_trace(state, _PAIR_FOR[quantity], n)
                    )
        except ValueError as exc:
            errors[k - lo] = str(exc)
    return values, errors


def _evaluate_quantity(quantity, spec, b_flat, t_flat, d_flat, threads):
    model = spec.model
    total = b_flat.shape[0]
    ring = model.n_sites == 4 and quantity in _PAIR_FOR
    if ring:
        j = np.full(total, model.coupling_j)
        t_eval = np.zeros(total) if spec.ground_manifold else t_flat
        closed = (
            spec.fast_path
            and quantity == "C_alternate"
            and not spec.ground_manifold
            and not np.any(d_flat)
        )
        if closed:
            worker = lambda lo, hi: (
                _kernels.alternate_concurrence_closed(j[lo:hi], b_flat[lo:hi], t_eval[lo:hi]),
                [""] * (hi - lo),
            )
        else:
            worker = lambda lo, hi: (
                _kernels.thermal_pair_concurrence(
                    j[lo:hi], b_flat[lo:hi], d_flat[lo:hi], t_eval[lo:hi], _PAIR_FOR[quantity]
                ),
                [""] * (hi - lo),
            )
    else:
        worker = lambda lo, hi: _evaluate_general(
            quantity, spec, b_flat, t_flat, d_flat, lo, hi
        )
    parts = _map_chunks(worker, total, threads)
    values = np.concatenate([np.atleast_1d(np.asarray(p[0], dtype=float)) for p in parts])
    errors = [e for p in parts for e in p[1]]
    return values, errors


def run_sweep(spec, threads=None):
    """Evaluate a GridSpec into a SweepTable.

    Rows are ordered by (quantity, delta, t, b) with each axis ascending,
    regardless of thread count. Out-of-domain points become NaN rows with
    the reason in the error column; they never abort the sweep.
    """
    threads = _resolve_threads(threads)
    b_axis, t_axis, d_axis = spec.axes()
    d_grid, t_grid, b_grid = np.meshgrid(d_axis, t_axis, b_axis, indexing="ij")
    b_flat = np.ascontiguousarray(b_grid.reshape(-1))
    t_flat = np.ascontiguousarray(t_grid.reshape(-1))
    d_flat = np.ascontiguousarray(d_grid.reshape(-1))
    total = b_flat.shape[0]

    j_cols, b_cols, t_cols, d_cols, v_cols = [], [], [], [], []
    q_col, e_col = [], []
    for quantity in sorted(spec.quantities):
        values, errors = _evaluate_quantity(quantity, spec, b_flat, t_flat, d_flat, threads)
        j_cols.append(np.full(total, spec.model.coupling_j))
        b_cols.append(b_flat)
        t_cols.append(t_flat)
        d_cols.append(d_flat)
        v_cols.append(values)
        q_col.extend([quantity] * total)
        e_col.extend(errors)
    return SweepTable(
        j=np.concatenate(j_cols),
        b=np.concatenate(b_cols),
        t=np.concatenate(t_cols),
        delta=np.concatenate(d_cols),
        quantity=tuple(q_col),
        value=np.concatenate(v_cols),
        error=tuple(e_col),
    )


def _concurrence_at(j, b, delta, t):
    if delta == 0.0:
        return _kernels.alternate_concurrence_closed(j, b, t)
    return _kernels.thermal_pair_concurrence(j, b, delta, t, (1, 3))


def critical_temperature(
    j,
    b,
    delta=0.0,
    t_bracket=(0.01, 5.0),
    tol=1e-6,
    detection_level=DETECTION_LEVEL,
):
    """Temperatures where alternate-pair entanglement switches on or off.

    Scans C(T) on a 64-point log grid over the bracket and bisects every
    flip of the indicator C > detection_level down to tol. Returns 0, 1 or
    2 temperatures, ascending; an empty list means the indicator never
    fires on the bracket.

    detection_level filters slivers of sub-threshold entanglement near the
    onset field; lowering it toward zero resolves progressively narrower
    bands (they persist to arbitrarily small fields) at the cost of grid
    sensitivity.
    """
    lo, hi = float(t_bracket[0]), float(t_bracket[1])
    if not 0.0 < lo < hi:
        raise ValueError("t_bracket must be positive with lo < hi")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    ts = np.geomspace(lo, hi, 64)
    fired = np.asarray(_concurrence_at(j, b, delta, ts)) > detection_level

    roots = []
    for k in np.flatnonzero(fired[1:] != fired[:-1]):
        t_lo, t_hi = float(ts[k]), float(ts[k + 1])
        lo_fired = bool(fired[k])
        while t_hi - t_lo > tol:
            mid = 0.5 * (t_lo + t_hi)
            if (float(_concurrence_at(j, b, delta, mid)) > detection_level) == lo_fired:
                t_lo = mid
            else:
                t_hi = mid
        roots.append(0.5 * (t_lo + t_hi))
    return roots


def critical_fields(j):
    """Ground-state crossing fields ((sqrt(2)-1)|J|, |J|); undefined at J=0."""
    return crossing_fields(j)


def entanglement_onset_field(
    j=1.0,
    delta=0.0,
    b_bracket=(0.02, 0.4),
    tol=1e-4,
    t_bracket=(0.01, 5.0),
    detection_level=DETECTION_LEVEL,
):
    """Smallest field with detectable entanglement at some temperature.

    Bisects the predicate "critical_temperature finds a root" over the
    field bracket. The bracket must straddle the onset: no roots at the
    low end, at least one at the high end.
    """

    def entangled(b):
        return bool(
            critical_temperature(
                j, b, delta, t_bracket=t_bracket, detection_level=detection_level
            )
        )

    b_lo, b_hi = float(b_bracket[0]), float(b_bracket[1])
    if entangled(b_lo) or not entangled(b_hi):
        raise ValueError("b_bracket must straddle the entanglement onset")
    while b_hi - b_lo > tol:
        mid = 0.5 * (b_lo + b_hi)
        if entangled(mid):
            b_hi = mid
        else:
            b_lo = mid
    return 0.5 * (b_lo + b_hi)


def _columns_by_field(table, quantity):
    """Yield (b, delta, j, t array, value array) per grid column, t ascending."""
    sub = table.select(quantity)
    if len(sub) == 0:
        raise ValueError(f"table has no {quantity!r} rows")
    keys = np.stack([sub.delta, sub.b], axis=1)
    unique, inverse = np.unique(keys, axis=0, return_inverse=True)
    for u in range(unique.shape[0]):
        mask = inverse == u
        order = np.argsort(sub.t[mask], kind="stable")
        yield (
            float(unique[u, 1]),
            float(unique[u, 0]),
            float(sub.j[mask][0]),
            sub.t[mask][order],
            sub.value[mask][order],
        )


def boundary_curve(
    table,
    quantity="C_alternate",
    indicator=BOUNDARY_INDICATOR,
    refine_tol=1e-4,
):
    """Extract and refine the C=0 boundary from a (B, T) sweep table.

    For every field column, each flip of the indicator C > indicator
    between adjacent grid temperatures is bisected down to refine_tol using
    pointwise evaluation. Flips from zero to entangled (rising T) are
    labeled "lower", the reverse "upper".
    """
    if quantity not in _PAIR_FOR:
        raise ValueError("boundaries are defined for the pair concurrences")
    pair = _PAIR_FOR[quantity]
    fields, temps, branches = [], [], []
    for b, delta, j, ts, cs in _columns_by_field(table, quantity):
        fired = cs > indicator
        for k in np.flatnonzero(fired[1:] != fired[:-1]):
            t_lo, t_hi = float(ts[k]), float(ts[k + 1])
            lo_fired = bool(fired[k])
            while t_hi - t_lo > refine_tol:
                mid = 0.5 * (t_lo + t_hi)
                c_mid = float(
                    _kernels.thermal_pair_concurrence(j, b, delta, mid, pair)
                )
                if (c_mid > indicator) == lo_fired:
                    t_lo = mid
                else:
                    t_hi = mid
            fields.append(b)
            temps.append(0.5 * (t_lo + t_hi))
            branches.append("upper" if lo_fired else "lower")
    return BoundaryCurve(
        field=np.array(fields),
        t_c=np.array(temps),
        branch=tuple(branches),
        tolerance=refine_tol,
    )


def level_contours(table, levels=(0.5, 0.3, 0.1), quantity="C_alternate"):
    """Nonzero concurrence contours by linear interpolation along T columns.

    Returns {level: [(b, t), ...]}. One-grid-step interpolation only; the
    C=0 set needs boundary_curve instead because C is exactly zero on a
    region, not merely small.
    """
    contours = {float(level): [] for level in levels}
    for b, _delta, _j, ts, cs in _columns_by_field(table, quantity):
        for level in contours:
            above = cs > level
            for k in np.flatnonzero(above[1:] != above[:-1]):
                c0, c1 = float(cs[k]), float(cs[k + 1])
                frac = (level - c0) / (c1 - c0)
                contours[level].append(
                    (b, float(ts[k]) + frac * float(ts[k + 1] - ts[k]))
                )
    return contours


@dataclass(frozen=True, eq=False)
class FigureData:
    """One preset dataset: the sweep table plus fig1b's boundary extras."""

    figure_id: str
    table: SweepTable
    boundary: BoundaryCurve = None
    contours: dict = None


def _fig1_spec():
    return GridSpec(
        field_b=(-2.0, 2.0, 121),
        temperature=(0.02, 2.0, 100),
        model=ModelParams(coupling_j=1.0),
        quantities=("C_alternate",),
    )


def _figure_spec(figure_id):
    if figure_id in ("fig1a", "fig1b"):
        return _fig1_spec()
    if figure_id in ("fig2a", "fig2b"):
        return GridSpec(
            field_b=(0.0, 1.5, 301),
            temperature=[0.01, 0.1, 0.5],
            model=ModelParams(coupling_j=1.0),
            quantities=("C_alternate",) if figure_id == "fig2a" else ("C_nearest",),
        )
    if figure_id == "fig2c":
        return GridSpec(
            field_b=(0.0, 1.5, 301),
            temperature=0.01,
            model=ModelParams(coupling_j=1.0),
            quantities=("Q", "IC"),
            ground_manifold=True,
        )
    if figure_id == "fig3a":
        return GridSpec(
            field_b=0.5,
            temperature=(0.02, 1.0, 50),
            anisotropy=(-0.4, 1.0, 71),
            model=ModelParams(coupling_j=1.0),
            quantities=("C_alternate",),
        )
    if figure_id == "fig3b":
        return GridSpec(
            field_b=(0.0, 1.0, 51),
            temperature=0.2,
            anisotropy=(-1.0, 1.0, 21),
            model=ModelParams(coupling_j=1.0),
            quantities=("C_alternate",),
        )
    raise ValueError(f"unknown figure id {figure_id!r}; valid: {FIGURE_IDS}")


def figure_dataset(figure_id, threads=None):
    """Generate one of the seven preset datasets.

    fig1b carries the refined C=0 boundary and the 0.5/0.3/0.1 contour
    points alongside its grid; every other preset is a plain table.
    """
    spec = _figure_spec(figure_id)
    table = run_sweep(spec, threads=threads)
    if figure_id == "fig1b":
        return FigureData(
            figure_id=figure_id,
            table=table,
            boundary=boundary_curve(table),
            contours=level_contours(table),
        )
    return FigureData(figure_id=figure_id, table=table)
