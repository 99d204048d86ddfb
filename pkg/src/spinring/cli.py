"""Command-line front end.

Commands: spectrum, state, concurrence, sweep, figure, tc, validate. The
CLI validates the whole configuration before computing anything and writes
output files only after all rows exist. Exit codes: 0 success, 1
computational or I/O failure, 2 usage error.
"""

import argparse
import os
import sys

import numpy as np

from ._kernels import BACKEND_NAME
from .entanglement import full_report, partial_trace, wootters_concurrence
from .model import ModelParams, build_xxz_hamiltonian
from .spectral import (
    eigendecompose,
    gibbs_state,
    ground_state_projector,
    log_partition_function,
    partition_function,
    thermal_energy,
)
from .sweep import (
    FIGURE_IDS,
    QUANTITIES,
    GridSpec,
    critical_temperature,
    figure_dataset,
    run_sweep,
)
from .tableio import format_float, write_boundary_csv, write_sweep
from .validate import run_validation
from .xx4 import analytic_spectrum

DEFAULT_SEED = 20240801


class UsageError(Exception):
    """Bad flag values; reported on stderr with exit code 2."""


def _parse_axis(text, name):
    """Parse an axis flag: scalar, comma list, or lo:hi:count range."""
    if text is None:
        return None
    try:
        if ":" in text:
            lo, hi, count = text.split(":")
            return (float(lo), float(hi), int(count))
        if "," in text:
            return [float(part) for part in text.split(",") if part]
        return float(text)
    except ValueError:
        raise UsageError(
            f"--{name} must be a number, a comma list, or lo:hi:count, got {text!r}"
        ) from None


def _parse_bracket(text):
    parts = text.split(":")
    if len(parts) != 2:
        raise UsageError(f"--bracket must be lo:hi, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise UsageError(f"--bracket must be lo:hi with numbers, got {text!r}") from None


def _parse_pair(text, n_sites):
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"--pair must be two comma-separated sites, got {text!r}") from None
    if len(parts) != 2 or parts[0] == parts[1]:
        raise UsageError("--pair must name two distinct sites")
    pair = tuple(sorted(parts))
    if pair[0] < 1 or pair[1] > n_sites:
        raise UsageError(f"--pair sites must lie in 1..{n_sites}")
    return pair


def _model_from(args):
    try:
        return ModelParams(
            coupling_j=args.j,
            field_b=getattr(args, "b", 0.0) or 0.0,
            anisotropy_delta=getattr(args, "delta", 0.0) or 0.0,
            n_sites=getattr(args, "n_sites", 4),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _state_from(args, params):
    """The requested density matrix: Gibbs at T>0, ground manifold with --zero-temp."""
    zero = getattr(args, "zero_temp", False)
    t = getattr(args, "t", None)
    if not zero and (t is None or t <= 0.0):
        raise UsageError("a positive --t is required (or pass --zero-temp)")
    decomposition = eigendecompose(build_xxz_hamiltonian(params))
    if zero:
        return decomposition, ground_state_projector(decomposition), 0.0
    return decomposition, gibbs_state(decomposition, t), float(t)


def cmd_spectrum(args):
    params = _model_from(args)
    numeric = eigendecompose(build_xxz_hamiltonian(params)).eigenvalues
    closed = None
    if params.n_sites == 4 and params.anisotropy_delta == 0.0:
        closed = np.sort(analytic_spectrum(params.coupling_j, params.field_b))

    lines = ["k,numeric,analytic" if closed is not None else "k,numeric"]
    for k, value in enumerate(numeric):
        row = [str(k), format_float(value)]
        if closed is not None:
            row.append(format_float(closed[k]))
        lines.append(",".join(row))
    if closed is not None:
        deviation = float(np.abs(numeric - closed).max())
        lines.append(f"# max |numeric - analytic| = {deviation:.3g}")
    else:
        lines.append("# analytic reference unavailable (needs N=4 and delta=0)")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_state(args):
    params = _model_from(args)
    decomposition, rho, t = _state_from(args, params)
    ground_gap = decomposition.eigenvalues - decomposition.ground_energy
    degeneracy = int(np.count_nonzero(ground_gap <= 1e-9))
    pair = _parse_pair(args.pair, params.n_sites)

    lines = [
        f"model: J={params.coupling_j:g} B={params.field_b:g} "
        f"delta={params.anisotropy_delta:g} N={params.n_sites} (periodic ring)",
        f"temperature: {'0 (ground manifold)' if t == 0.0 else format_float(t)}",
        f"ground energy: {format_float(decomposition.ground_energy)} "
        f"(degeneracy {degeneracy})",
        f"energy: {format_float(thermal_energy(decomposition, t))}",
    ]
    if t > 0.0:
        lines.append(f"log Z: {format_float(log_partition_function(decomposition, t))}")
        lines.append(f"Z: {format_float(partition_function(decomposition, t))}")
    else:
        lines.append("Z: undefined at T=0")
    lines.append(f"reduced state of pair {pair}:")
    reduced = partial_trace(rho, pair, params.n_sites)
    for row in np.real_if_close(reduced):
        lines.append("  " + "  ".join(f"{value:+.10f}" for value in np.real(row)))
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_concurrence(args):
    params = _model_from(args)
    pair = _parse_pair(args.pair, params.n_sites)
    _, rho, _ = _state_from(args, params)
    lines = []
    if args.full:
        report = full_report(rho, params.n_sites)
        for sites, value in sorted(report.pair_concurrences.items()):
            lines.append(f"C{sites[0]}{sites[1]} = {format_float(value)}")
        for site, value in enumerate(report.i_concurrences, start=1):
            lines.append(f"IC_{site} = {format_float(value)}")
        lines.append(f"Q = {format_float(report.global_q)}")
        lines.append(f"residual = {format_float(report.residual)}")
    else:
        value = wootters_concurrence(partial_trace(rho, pair, params.n_sites))
        lines.append(f"C{pair[0]}{pair[1]} = {format_float(value)}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_sweep(args):
    try:
        model = ModelParams(coupling_j=args.j, n_sites=args.n_sites)
        spec = GridSpec(
            field_b=_parse_axis(args.b, "b"),
            temperature=_parse_axis(args.t, "t"),
            anisotropy=_parse_axis(args.delta, "delta"),
            model=model,
            quantities=tuple(args.quantities.split(",")),
            fast_path=args.fast,
            ground_manifold=args.ground_manifold,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    table = run_sweep(spec, threads=args.threads)
    if args.output:
        write_sweep(table, args.output, args.format)
    else:
        write_sweep(table, sys.stdout, args.format)
    return 0


def cmd_figure(args):
    figure_id = args.figure_id
    if figure_id not in FIGURE_IDS:
        raise UsageError(f"unknown figure id {figure_id!r}; valid: {', '.join(FIGURE_IDS)}")
    if figure_id == "fig1b":
        out_dir = args.output or figure_id
        if str(out_dir).endswith(".csv"):
            raise UsageError("fig1b writes two files; pass a directory with -o")
        data = figure_dataset(figure_id, threads=args.threads)
        os.makedirs(out_dir, exist_ok=True)
        grid_name = "grid.jsonl" if args.format == "json-lines" else "grid.csv"
        grid_path = os.path.join(out_dir, grid_name)
        write_sweep(data.table, grid_path, args.format)
        boundary_path = os.path.join(out_dir, "boundary.csv")
        write_boundary_csv(data.boundary, boundary_path)
        print(f"wrote {grid_path} and {boundary_path}")
        return 0
    suffix = ".jsonl" if args.format == "json-lines" else ".csv"
    out_path = args.output or f"{figure_id}{suffix}"
    data = figure_dataset(figure_id, threads=args.threads)
    write_sweep(data.table, out_path, args.format)
    print(f"wrote {out_path} ({len(data.table)} rows)")
    return 0


def cmd_tc(args):
    bracket = _parse_bracket(args.bracket)
    try:
        roots = critical_temperature(
            args.j,
            args.b,
            args.delta,
            t_bracket=bracket,
            tol=args.tol,
            detection_level=args.detection_level,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = [format_float(t) for t in roots]
    _emit(("\n".join(lines) + "\n") if lines else "", args.output)
    return 0


def cmd_validate(args):
    results = run_validation(seed=args.seed, draws=args.draws, quick=args.quick)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"check {result.index:02d} {result.name}: {status} ({result.detail})")
    failed = sum(1 for r in results if not r.passed)
    print(f"{len(results) - failed}/{len(results)} checks passed [backend: {BACKEND_NAME}]")
    return 0 if failed == 0 else 1


def _emit(text, output):
    if output:
        with open(output, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _add_model_flags(parser, with_t=False):
    parser.add_argument("--j", type=float, default=1.0, help="coupling strength (default 1)")
    parser.add_argument("--b", type=float, default=0.0, help="magnetic field (default 0)")
    if with_t:
        parser.add_argument("--t", type=float, default=None, help="temperature")
        parser.add_argument(
            "--zero-temp",
            action="store_true",
            help="use the ground-manifold state instead of a Gibbs state",
        )
    parser.add_argument("--delta", type=float, default=0.0, help="anisotropy (default 0)")
    parser.add_argument("--n-sites", type=int, default=4, help="ring size (default 4)")


def _add_output_flags(parser):
    parser.add_argument("--output", "-o", default=None, help="output path (default stdout)")
    parser.add_argument(
        "--format",
        choices=("csv", "json-lines"),
        default="csv",
        help="table format (default csv)",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spinring",
        description="Thermal entanglement in small XX/XXZ spin rings.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("spectrum", help="numeric (and closed-form) energy levels")
    _add_model_flags(p)
    _add_output_flags(p)
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("state", help="inspect a thermal or ground-manifold state")
    _add_model_flags(p, with_t=True)
    p.add_argument("--pair", default="1,3", help="pair to reduce to (default 1,3)")
    _add_output_flags(p)
    p.set_defaults(handler=cmd_state)

    p = sub.add_parser("concurrence", help="pair concurrence of the thermal state")
    _add_model_flags(p, with_t=True)
    p.add_argument("--pair", default="1,3", help="site pair (default 1,3)")
    p.add_argument("--full", action="store_true", help="all pairs, IC_i, Q, residual")
    _add_output_flags(p)
    p.set_defaults(handler=cmd_concurrence)

    p = sub.add_parser("sweep", help="evaluate quantities over a parameter grid")
    p.add_argument("--j", type=float, default=1.0, help="coupling strength (default 1)")
    p.add_argument("--n-sites", type=int, default=4, help="ring size (default 4)")
    p.add_argument("--b", default=None, help="field axis: scalar, list, or lo:hi:count")
    p.add_argument("--t", default=None, help="temperature axis: scalar, list, or lo:hi:count")
    p.add_argument("--delta", default=None, help="anisotropy axis: scalar, list, or lo:hi:count")
    p.add_argument(
        "--quantities",
        default="C_alternate",
        help=f"comma list from {','.join(QUANTITIES)}",
    )
    p.add_argument("--fast", action="store_true", help="closed-form fast path when available")
    p.add_argument(
        "--ground-manifold",
        action="store_true",
        help="evaluate on the ground manifold instead of Gibbs states",
    )
    p.add_argument("--threads", type=int, default=None, help="worker threads")
    _add_output_flags(p)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("figure", help="regenerate a preset figure dataset")
    p.add_argument("figure_id", metavar="id", help="one of " + ", ".join(FIGURE_IDS))
    p.add_argument("--threads", type=int, default=None, help="worker threads")
    _add_output_flags(p)
    p.set_defaults(handler=cmd_figure)

    p = sub.add_parser("tc", help="critical temperatures at fixed field")
    p.add_argument("--j", type=float, default=1.0, help="coupling strength (default 1)")
    p.add_argument("--b", type=float, default=0.0, help="magnetic field (default 0)")
    p.add_argument("--delta", type=float, default=0.0, help="anisotropy (default 0)")
    p.add_argument("--bracket", default="0.01:5", help="temperature bracket lo:hi")
    p.add_argument("--tol", type=float, default=1e-6, help="bisection tolerance")
    p.add_argument(
        "--detection-level",
        type=float,
        default=1e-3,
        help="concurrence level that counts as entangled",
    )
    p.add_argument("--output", "-o", default=None, help="output path (default stdout)")
    p.set_defaults(handler=cmd_tc)

    p = sub.add_parser("validate", help="run the cross-validation suite")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed")
    p.add_argument("--draws", type=int, default=None, help="override random draw counts")
    p.add_argument("--quick", action="store_true", help="reduced grids and draws")
    p.set_defaults(handler=cmd_validate)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "handler"):
        parser.print_help()
        return 2
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
