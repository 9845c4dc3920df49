"""Command-line interface.

Exit status: 0 success, 2 invalid input, 3 no feasible estimate (above
threshold, no factory chain, unsupported modality).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator

from . import __version__
from .counts import LogicalCounts, parse_counts, qiss_logical_counts
from .distill import DEFAULT_CONFIDENCE, FactoryDesign, design_factory
from .errors import EstimationError, InfeasibleError, ValidationError
from .estimator import EstimateResult
from .gas import GasRun, estimate_full_gas, find_crossover
from .scenarios import (
    Scenario,
    builtin_scenarios,
    feasibility_year,
    get_scenario,
    load_roadmap,
    load_scenario,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3
DEFAULT_BUDGET = 0.25

CSV_HEADER = (
    "scenario",
    "n_days",
    "code_distance",
    "runtime_s",
    "qubits_total",
    "qubits_logical",
    "qubits_distillation",
    "factories",
    "t_states",
    "classical_runtime_s",
    "speedup",
    "reason",
)

_UNITS = (
    (365.25 * 86400e9, "years"),
    (86400e9, "days"),
    (3600e9, "h"),
    (1e9, "s"),
    (1e6, "ms"),
    (1e3, "us"),
)


def format_duration(ns: float) -> str:
    for scale, unit in _UNITS:
        if ns >= scale:
            return f"{ns / scale:.4g} {unit}"
    return f"{ns:.4g} ns"


def _seconds(ns: float | None) -> float | None:
    return None if ns is None else ns / 1e9


def _csv_value(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


# ---- argument handling -----------------------------------------------------


def _add_scenario_args(p: argparse.ArgumentParser, multiple: bool = False) -> None:
    g = p.add_mutually_exclusive_group()
    if multiple:
        g.add_argument("--scenario", action="append", metavar="NAME", help="builtin scenario (repeatable)")
        g.add_argument("--scenario-file", action="append", metavar="PATH", help="scenario JSON file (repeatable)")
    else:
        g.add_argument("--scenario", metavar="NAME", help="builtin scenario name (see `scenarios`)")
        g.add_argument("--scenario-file", metavar="PATH", help="scenario JSON file")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--error-budget", type=float, default=DEFAULT_BUDGET, metavar="FLOAT",
                   help=f"total failure probability (default {DEFAULT_BUDGET})")
    p.add_argument("--format", choices=("human", "json", "csv"), default="human")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    p.add_argument("--exact-binomial", action="store_true",
                   help="size distillation rounds with the exact binomial tail")
    p.add_argument("--roadmap", metavar="FILE", help="roadmap CSV replacing the bundled dataset")


def _add_counts_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--days", type=int, metavar="N", help="QISS instance with N scheduled days")
    g.add_argument("--counts", metavar="PATH", help="logical counts JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qissre",
        description="Fault-tolerant resource estimates for QISS Grover search.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="estimate one circuit on one scenario")
    _add_scenario_args(p)
    _add_counts_args(p)
    p.add_argument("--full-gas", action="store_true", help="extrapolate to all sqrt(N) rotations")
    _add_common(p)

    p = sub.add_parser("sweep", help="estimate a range of days on one or more scenarios")
    _add_scenario_args(p, multiple=True)
    p.add_argument("--days-from", type=int, default=1, metavar="N")
    p.add_argument("--days-to", type=int, required=True, metavar="N")
    p.add_argument("--full-gas", action="store_true", help="extrapolate to all sqrt(N) rotations")
    _add_common(p)

    p = sub.add_parser("crossover", help="first problem size where the quantum run beats brute force")
    _add_scenario_args(p)
    p.add_argument("--max-days", type=int, default=20, metavar="N")
    _add_common(p)

    p = sub.add_parser("factory", help="show the T-state distillation factory design")
    _add_scenario_args(p)
    _add_counts_args(p)
    p.add_argument("--target", type=float, metavar="P_T",
                   help="design for this output T error directly instead of running an estimate")
    p.add_argument("--full-gas", action="store_true")
    _add_common(p)

    p = sub.add_parser("scenarios", help="list builtin scenarios")
    p.add_argument("--format", choices=("human", "json", "csv"), default="human")
    p.add_argument("--out", metavar="PATH")
    return parser


def _scenario(args, default: str = "flat-1e-3") -> Scenario:
    if getattr(args, "scenario_file", None):
        return load_scenario(Path(args.scenario_file))
    return get_scenario(args.scenario or default)


def _scenarios(args) -> list[Scenario]:
    if args.scenario_file:
        return [load_scenario(Path(f)) for f in args.scenario_file]
    return [get_scenario(s) for s in (args.scenario or ["flat-1e-3"])]


def _counts(args) -> tuple[LogicalCounts, int | None]:
    if args.counts:
        return parse_counts(Path(args.counts)), None
    if args.days is None:
        raise ValidationError("one of --days N or --counts PATH is required")
    return qiss_logical_counts(args.days), args.days


def _estimate_opts(args) -> dict[str, Any]:
    return {"exact_binomial": args.exact_binomial}


@contextmanager
def _output(path: str | None) -> Iterator[io.TextIOBase]:
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


# ---- serialisation ---------------------------------------------------------


def factory_to_dict(f: FactoryDesign) -> dict[str, Any]:
    return {
        "rounds": [
            {
                "distance": r.distance,
                "unit": r.unit.name,
                "unit_count": r.unit_count,
                "input_t_error": r.input_t_error,
                "output_t_error": r.output_t_error,
                "target_t_error": r.target_t_error,
                "max_input_t_error": r.max_input_t_error,
                "clifford_error_bound": r.clifford_error_bound,
                "clifford_error": r.clifford_error,
                "acceptance_prob": r.acceptance_prob,
                "qubits": r.qubits,
                "runtime_s": _seconds(r.runtime),
            }
            for r in f.rounds
        ],
        "total_runtime_s": _seconds(f.total_runtime),
        "qubits": f.qubits,
        "outputs_per_run": f.outputs_per_run,
    }


def result_to_dict(r: EstimateResult) -> dict[str, Any]:
    return {
        "logical_qubits": r.logical_qubits,
        "logical_cycles": r.logical_cycles,
        "t_states": r.t_states,
        "synthesis_factor": r.synthesis_factor,
        "logical_error_target": r.logical_error_target,
        "code_distance": r.code_distance,
        "qubits_per_logical": r.qubits_per_logical,
        "cycle_time_s": _seconds(r.cycle_time),
        "runtime_s": _seconds(r.runtime),
        "factory": factory_to_dict(r.factory),
        "factory_count": r.factory_count,
        "qubits_logical": r.qubits_logical,
        "qubits_distillation": r.qubits_distillation,
        "qubits_total": r.qubits_total,
        "error_budget": {
            "total": r.budget.total,
            "logical": r.budget.logical,
            "synthesis": r.budget.synthesis,
            "distillation": r.budget.distillation,
        },
    }


def gas_to_dict(g: GasRun) -> dict[str, Any]:
    return {
        "n_days": g.n_days,
        "iterations": g.iterations,
        "quantum_runtime_s": _seconds(g.quantum_runtime),
        "quantum_qubits": g.quantum_qubits,
        "classical_runtime_s": _seconds(g.classical_runtime),
        "speedup": g.speedup,
        "lower_bound_runtime_s": _seconds(g.lower_bound_runtime),
        "lower_bound_qubits": g.lower_bound_qubits,
    }


def sweep_row(scenario: str, n_days: int | None, result: EstimateResult | None = None,
              gas: GasRun | None = None, reason: str = "") -> dict[str, Any]:
    row: dict[str, Any] = dict.fromkeys(CSV_HEADER)
    row.update(scenario=scenario, n_days=n_days, reason=reason)
    if gas is not None:
        result = gas.rotation
    if result is None:
        return row
    row.update(
        code_distance=result.code_distance,
        runtime_s=_seconds(result.runtime),
        qubits_total=result.qubits_total,
        qubits_logical=result.qubits_logical,
        qubits_distillation=result.qubits_distillation,
        factories=result.factory_count,
        t_states=result.t_states,
    )
    if gas is not None:
        row.update(
            runtime_s=_seconds(gas.quantum_runtime),
            qubits_total=gas.quantum_qubits,
            t_states=result.t_states * gas.iterations,
            classical_runtime_s=_seconds(gas.classical_runtime),
            speedup=gas.speedup,
        )
    return row


def write_csv(out, rows: list[dict[str, Any]], header=CSV_HEADER) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_csv_value(row.get(k)) for k in header])


def _dump_json(out, obj) -> None:
    json.dump(obj, out, indent=2, allow_nan=False)
    out.write("\n")


def _human_factory(f: FactoryDesign) -> list[str]:
    if not f.rounds:
        return ["  no distillation needed (physical T states meet the target)"]
    lines = []
    for i, r in enumerate(f.rounds, 1):
        lines.append(
            f"  round {i}: {r.unit_count} x {r.unit.name} at d={r.distance}, "
            f"P_T in {r.input_t_error:.3g} -> out {r.output_t_error:.3g} "
            f"(max in {r.max_input_t_error:.3g}), acceptance {r.acceptance_prob:.4f}, "
            f"{r.qubits} qubits, {format_duration(r.runtime)}"
        )
    lines.append(
        f"  per factory: {f.qubits} qubits, {format_duration(f.total_runtime)}, "
        f"{f.outputs_per_run} T state(s) per run"
    )
    return lines


def human_report(scenario: Scenario, n_days: int | None, r: EstimateResult,
                 gas: GasRun | None = None, device=None, eps: float | None = None) -> str:
    what = f"{n_days} days" if n_days is not None else "counts file"
    eps = r.budget.total if eps is None else eps
    lines = [f"scenario {scenario.name}, {what}, error budget {eps:g}"]
    if gas is not None:
        lines.append(f"full search: {gas.iterations} rotations, per-rotation budget {r.budget.total:.4g}")
    lines += [
        f"logical qubits        {r.logical_qubits}",
        f"logical cycles        {r.logical_cycles}",
        f"T states              {r.t_states}",
    ]
    if r.code_distance is None:
        lines.append(f"no error correction, clock {format_duration(r.cycle_time)}")
    else:
        lines += [
            f"logical error target  {r.logical_error_target:.3g}",
            f"code distance         {r.code_distance} ({r.qubits_per_logical} qubits per logical)",
            f"logical cycle time    {format_duration(r.cycle_time)}",
        ]
    lines.append(f"runtime               {format_duration(r.runtime)} ({_seconds(r.runtime):.6g} s)")
    if r.code_distance is not None:
        lines.append(f"factories             {r.factory_count}")
        lines += _human_factory(r.factory)
    lines += [
        f"qubits (logical)      {r.qubits_logical}",
        f"qubits (distillation) {r.qubits_distillation}",
        f"qubits (total)        {r.qubits_total}",
    ]
    if gas is not None:
        lines += [
            f"full-search runtime   {format_duration(gas.quantum_runtime)}",
            f"classical runtime     {format_duration(gas.classical_runtime)}",
            f"quantum speedup       {'yes' if gas.speedup else 'no'}",
        ]
    if device is not None:
        when = device.year if device.year is not None else "undated"
        lines.append(f"first roadmap device  {device.company} {device.designation} ({device.qubits} qubits, {when})")
    elif device is None and r.qubits_total:
        lines.append("first roadmap device  none large enough")
    return "\n".join(lines) + "\n"


# ---- commands --------------------------------------------------------------


def cmd_estimate(args) -> int:
    scenario = _scenario(args)
    counts, n_days = _counts(args)
    gas = None
    if args.full_gas:
        if n_days is None:
            raise ValidationError("--full-gas needs --days (the rotation count is 4**days)")
        gas = estimate_full_gas(n_days, scenario, args.error_budget, counts, **_estimate_opts(args))
        result = gas.rotation
        qubits = gas.quantum_qubits
    else:
        result = scenario.estimate(counts, args.error_budget, **_estimate_opts(args))
        qubits = result.qubits_total
    device = feasibility_year(qubits, load_roadmap(args.roadmap))
    with _output(args.out) as out:
        if args.format == "json":
            doc = {"scenario": scenario.name, "n_days": n_days, **result_to_dict(result)}
            if gas is not None:
                doc["full_gas"] = gas_to_dict(gas)
            doc["roadmap_device"] = None if device is None else {
                "company": device.company, "designation": device.designation,
                "year": device.year, "qubits": device.qubits,
            }
            _dump_json(out, doc)
        elif args.format == "csv":
            write_csv(out, [sweep_row(scenario.name, n_days, result, gas)])
        else:
            out.write(human_report(scenario, n_days, result, gas, device, args.error_budget))
    return EXIT_OK


def _exit_code(e: EstimationError) -> int:
    return EXIT_INFEASIBLE if isinstance(e, InfeasibleError) else EXIT_INVALID


def cmd_sweep(args) -> int:
    if args.days_from < 1 or args.days_to < args.days_from:
        raise ValidationError("need 1 <= --days-from <= --days-to")
    scenarios = _scenarios(args)
    rows, first_error, ok = [], None, 0
    for sc in scenarios:
        for n in range(args.days_from, args.days_to + 1):
            try:
                if args.full_gas:
                    rows.append(sweep_row(sc.name, n, gas=estimate_full_gas(n, sc, args.error_budget,
                                                                           **_estimate_opts(args))))
                else:
                    res = sc.estimate(qiss_logical_counts(n), args.error_budget, **_estimate_opts(args))
                    rows.append(sweep_row(sc.name, n, res))
                ok += 1
            except EstimationError as e:
                first_error = first_error or e
                rows.append(sweep_row(sc.name, n, reason=str(e)))
    with _output(args.out) as out:
        if args.format == "csv":
            write_csv(out, rows)
        elif args.format == "json":
            _dump_json(out, [{k: v for k, v in r.items()} for r in rows])
        else:
            cols = ("scenario", "n_days", "code_distance", "runtime_s", "qubits_total", "factories")
            if args.full_gas:
                cols += ("classical_runtime_s", "speedup")
            out.write(" ".join(f"{c:>20}" for c in cols) + "\n")
            for r in rows:
                if r["reason"]:
                    out.write(f"{r['scenario']:>20} {r['n_days']:>20} infeasible: {r['reason']}\n")
                else:
                    out.write(" ".join(f"{_fmt_cell(r[c]):>20}" for c in cols) + "\n")
    if ok == 0 and first_error is not None:
        print(f"error: {first_error}", file=sys.stderr)
        return _exit_code(first_error)
    return EXIT_OK


def _fmt_cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    return _csv_value(v)


def cmd_crossover(args) -> int:
    scenario = _scenario(args)
    x = find_crossover(scenario, args.error_budget, args.max_days, **_estimate_opts(args))
    doc = {
        "scenario": scenario.name,
        "max_days": args.max_days,
        "crossover_days": x.n_days,
        "quantum_runtime_s": _seconds(x.run.quantum_runtime) if x.run else None,
        "classical_runtime_s": _seconds(x.run.classical_runtime) if x.run else None,
        "skipped_days": [n for n, _ in x.skipped],
    }
    with _output(args.out) as out:
        if args.format == "json":
            _dump_json(out, doc)
        elif args.format == "csv":
            header = ("scenario", "max_days", "crossover_days", "quantum_runtime_s", "classical_runtime_s")
            write_csv(out, [doc], header)
        else:
            if x.n_days is None:
                out.write(f"{scenario.name}: none within range (1-{args.max_days} days)\n")
            else:
                out.write(
                    f"{scenario.name}: crossover at {x.n_days} days, quantum "
                    f"{format_duration(x.run.quantum_runtime)} vs classical "
                    f"{format_duration(x.run.classical_runtime)}\n"
                )
            for n, reason in x.skipped:
                out.write(f"  skipped {n} days: {reason}\n")
    return EXIT_OK


def cmd_factory(args) -> int:
    scenario = _scenario(args)
    if scenario.perfect:
        raise ValidationError("perfect qubits need no distillation factory")
    if args.target is not None:
        if scenario.modality not in ("superconducting", "trapped-ion"):
            scenario.estimate(qiss_logical_counts(1), args.error_budget)  # raises unsupported modality
        p = scenario.params
        design = design_factory(p.t_gate_error, p.clifford_error, args.target, p,
                                exact_binomial=args.exact_binomial)
        count = None
    else:
        counts, n_days = _counts(args)
        if args.full_gas:
            if n_days is None:
                raise ValidationError("--full-gas needs --days")
            result = estimate_full_gas(n_days, scenario, args.error_budget, counts,
                                       **_estimate_opts(args)).rotation
        else:
            result = scenario.estimate(counts, args.error_budget, **_estimate_opts(args))
        design, count = result.factory, result.factory_count
    with _output(args.out) as out:
        if args.format == "json":
            _dump_json(out, {"scenario": scenario.name, "factory_count": count, **factory_to_dict(design)})
        elif args.format == "csv":
            header = ("round", "distance", "unit", "unit_count", "input_t_error", "output_t_error",
                      "max_input_t_error", "acceptance_prob", "qubits", "runtime_s")
            rows = [
                {"round": i, **{k: v for k, v in r.items() if k in header}}
                for i, r in enumerate(factory_to_dict(design)["rounds"], 1)
            ]
            write_csv(out, rows, header)
        else:
            out.write(f"scenario {scenario.name}\n")
            out.write("\n".join(_human_factory(design)) + "\n")
            if count is not None:
                out.write(f"  factories: {count}, qubits {count * design.qubits}\n")
    return EXIT_OK


def cmd_scenarios(args) -> int:
    rows = []
    for s in builtin_scenarios():
        p = s.params
        rows.append({
            "name": s.name, "modality": s.modality, "perfect": s.perfect,
            "one_q_gate_error": p.one_q_gate_error, "two_q_gate_error": p.two_q_gate_error,
            "idle_error": p.idle_error, "meas_error": p.meas_error, "t_gate_error": p.t_gate_error,
            "meas_time_ns": p.meas_time, "one_q_gate_time_ns": p.one_q_gate_time,
            "two_q_gate_time_ns": p.two_q_gate_time, "t_gate_time_ns": p.t_gate_time,
            "description": s.description,
        })
    with _output(args.out) as out:
        if args.format == "json":
            _dump_json(out, rows)
        elif args.format == "csv":
            write_csv(out, rows, tuple(rows[0]))
        else:
            for r in rows:
                out.write(
                    f"{r['name']:<18} {r['modality']:<16} p_2q={r['two_q_gate_error']:<9g} "
                    f"p_idle={r['idle_error']:<9g} p_meas={r['meas_error']:<9g} p_T={r['t_gate_error']:<9g} "
                    f"t_meas={r['meas_time_ns']:g} ns  {r['description']}\n"
                )
    return EXIT_OK


COMMANDS = {
    "estimate": cmd_estimate,
    "sweep": cmd_sweep,
    "crossover": cmd_crossover,
    "factory": cmd_factory,
    "scenarios": cmd_scenarios,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except EstimationError as e:
        print(f"error: {e}", file=sys.stderr)
        return _exit_code(e)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
