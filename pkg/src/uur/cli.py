"""Command-line front end: bound reports, sweeps, comparisons, self-checks.

Commands
    bounds   one report at a single angle (or for the state in a JSON file)
    sweep    one row per angle across a built-in example's sweep range
    compare  difference columns between the blended split bound and the rest
    check    the seeded randomized invariant suites

Exit codes: 0 ok, 1 invariant violation, 2 input error, 3 search cap hit.
Output is deterministic byte for byte for a fixed configuration; floats are
printed with 17 significant digits so CSV round-trips are exact.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import bounds, moments, scenarios, selfcheck
from .bounds import DEFAULT_CAP
from .errors import SearchSpaceTooLarge, UurError
from .moments import DensityMatrix, PureState

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


class _Violation(Exception):
    """Raised when an emitted row fails its own chain invariants."""


@dataclass
class RunConfig:
    command: str
    input_path: str | None = None
    example: str | None = None
    dim: int | None = None
    theta_min: float | None = None
    theta_max: float | None = None
    steps: int | None = None
    m: int | None = None
    v: float | None = None
    flavor: str | None = None
    cap: int | None = None
    seed: int = 42
    trials: int = 1000
    output: str | None = None
    format: str | None = None
    corrupt: str | None = None  # harness test hook; not an exposed flag


@dataclass
class Problem:
    """Operators and a state source, resolved from --example or --input."""

    label: str
    operators: list[tuple[str, np.ndarray]]
    scenario: scenarios.Scenario | None
    fixed_state: PureState | None
    m: int
    v: float
    cap: int
    flavor: str
    notes: tuple[str, ...]

    @property
    def dimension(self) -> int:
        return self.operators[0][1].shape[0]

    def state_at(self, theta: float) -> PureState:
        if self.scenario is not None:
            return self.scenario.state(theta)
        return self.fixed_state


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _decode_complex_matrix(obj, name: str) -> np.ndarray:
    try:
        M = np.array([[complex(c[0], c[1]) for c in row] for row in obj])
    except (TypeError, IndexError) as exc:
        raise UurError(f"operator {name!r}: matrix entries must be [re, im] pairs") from exc
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise UurError(f"operator {name!r}: matrix must be square, got shape {M.shape}")
    return M


def _decode_state(obj, dim: int) -> PureState | DensityMatrix:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise UurError('state must be one of {"pure": ...}, {"density": ...}, {"bloch": ...}')
    kind, payload = next(iter(obj.items()))
    if kind == "pure":
        amps = np.array([complex(c[0], c[1]) for c in payload])
        if amps.size != dim:
            raise UurError(f"pure state has {amps.size} amplitudes, dimension says {dim}")
        return PureState(amplitudes=amps)
    if kind == "density":
        M = _decode_complex_matrix(payload, "density")
        if M.shape[0] != dim:
            raise UurError(f"density matrix is {M.shape[0]}x{M.shape[0]}, dimension says {dim}")
        return DensityMatrix(matrix=M)
    if kind == "bloch":
        if dim != 2:
            raise UurError("bloch states require dimension 2")
        return moments.bloch_density([float(t) for t in payload])
    raise UurError(f"unknown state kind {kind!r}")


def _load_input_file(cfg: RunConfig) -> Problem:
    with open(cfg.input_path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if "dimension" not in doc:
        raise UurError('input file needs a top-level "dimension" field')
    dim = int(doc["dimension"])
    named = []
    for entry in doc.get("operators", []):
        if not isinstance(entry, dict) or "name" not in entry or "matrix" not in entry:
            raise UurError('each operator must be an object with "name" and "matrix"')
        named.append((str(entry["name"]), _decode_complex_matrix(entry["matrix"], entry["name"])))
    if not 2 <= len(named) <= 3:
        raise UurError(f"need 2 or 3 operators, got {len(named)}")
    for name, M in named:
        if M.shape[0] != dim:
            raise UurError(f"operator {name!r} is {M.shape[0]}x{M.shape[0]}, dimension says {dim}")
    state = _decode_state(doc.get("state"), dim)
    notes: tuple[str, ...] = ()
    if isinstance(state, DensityMatrix):
        # Mixed inputs go through purification; operators act on the doubled
        # space as I (x) U, exactly like the built-in qubit example.
        psi = moments.purify(state)
        named = [(name, moments.lift(M)) for name, M in named]
        notes = ("mixed state purified; operators lifted to the doubled space",)
    else:
        psi = state
    for name, M in named:
        dev = float(np.max(np.abs(M.conj().T @ M - np.eye(M.shape[0]))))
        if dev > 1e-8:
            raise UurError(f"operator {name!r} deviates from unitarity by {dev:.3e}")
    params = doc.get("params", {})
    n = named[0][1].shape[0]
    m = cfg.m if cfg.m is not None else params.get("m", max(1, n // 2))
    v = cfg.v if cfg.v is not None else params.get("v", 0.1)
    cap = cfg.cap if cfg.cap is not None else params.get("cap", DEFAULT_CAP)
    flavor = cfg.flavor if cfg.flavor is not None else params.get("flavor", "plain")
    return Problem(label=cfg.input_path, operators=named, scenario=None,
                   fixed_state=psi, m=int(m), v=float(v), cap=int(cap),
                   flavor=flavor, notes=notes)


def _load_example(cfg: RunConfig) -> Problem:
    scen = scenarios.scenario(cfg.example, cfg.dim)
    return Problem(
        label=cfg.example,
        operators=list(scen.operators),
        scenario=scen,
        fixed_state=None,
        m=cfg.m if cfg.m is not None else scen.default_m,
        v=cfg.v if cfg.v is not None else scen.default_v,
        cap=cfg.cap if cfg.cap is not None else DEFAULT_CAP,
        flavor=cfg.flavor if cfg.flavor is not None else "plain",
        notes=scen.notes,
    )


def _load_problem(cfg: RunConfig) -> Problem:
    if (cfg.input_path is None) == (cfg.example is None):
        raise UurError("exactly one of --input or --example is required")
    return _load_input_file(cfg) if cfg.input_path else _load_example(cfg)


def _theta_grid(cfg: RunConfig, problem: Problem) -> list[float]:
    if problem.scenario is not None:
        lo_default, hi_default = problem.scenario.theta_range
        steps_default = problem.scenario.default_steps
    else:
        lo_default, hi_default, steps_default = 0.0, math.pi, scenarios.DEFAULT_STEPS
    lo = cfg.theta_min if cfg.theta_min is not None else lo_default
    hi = cfg.theta_max if cfg.theta_max is not None else hi_default
    steps = cfg.steps if cfg.steps is not None else steps_default
    if steps < 1:
        raise UurError(f"steps must be >= 1, got {steps}")
    if lo > hi:
        raise UurError(f"theta range is empty: {lo} > {hi}")
    return scenarios.theta_grid(lo, hi, steps)


def _triple_fields(problem: Problem, psi: PureState) -> dict:
    ops = [M for _, M in problem.operators]
    vals = {
        "variance_triple": math.prod(moments.variance_pure(U, psi) for U in ops),
        "bong3": bounds.triple_correlation_bound(*ops, psi),
        "prod_k": bounds.geometric_mean_bound(ops, psi, problem.m, problem.v, "plain", problem.cap),
        "prod_k_v": bounds.geometric_mean_bound(ops, psi, problem.m, problem.v, "convex", problem.cap),
        "prod_k_tilde": bounds.geometric_mean_bound(ops, psi, problem.m, problem.v, "tilde", problem.cap),
    }
    for key in ("bong3", "prod_k", "prod_k_v", "prod_k_tilde"):
        if vals[key] > vals["variance_triple"] + 1e-10:
            raise _Violation(f"{key} exceeds variance_triple by "
                             f"{vals[key] - vals['variance_triple']:.3e}")
    return vals


def _report_row(problem: Problem, theta: float) -> tuple[bounds.BoundSet, dict]:
    (nameA, A), (nameB, B) = problem.operators[0], problem.operators[1]
    psi = problem.state_at(theta)
    report = bounds.bound_report(A, B, psi, m=problem.m, v=problem.v, cap=problem.cap)
    bad = report.validate()
    if bad:
        raise _Violation(f"chain invariants failed at theta={theta!r}: " + "; ".join(bad))
    row = {
        "theta": theta,
        "variance_product": report.variance_product,
        "lb": report.lb,
        "k_m": report.k_m,
        "k_m_v": report.k_m_v,
        "k_tilde": report.k_tilde,
        "i_2": report.i_d[1],
        "i_1_prime": report.i_1_prime,
    }
    if len(problem.operators) == 3:
        row.update(_triple_fields(problem, psi))
    return report, row


def _emit(cfg: RunConfig, text: str):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return _fmt(value)
    return str(value)


def _rows_to_csv(columns: list[str], rows: list[dict]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_csv_cell(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def _rows_to_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=2) + "\n"


def run_bounds(cfg: RunConfig) -> int:
    problem = _load_problem(cfg)
    if problem.scenario is not None:
        theta = cfg.theta_min if cfg.theta_min is not None else problem.scenario.theta_range[0]
    else:
        theta = cfg.theta_min if cfg.theta_min is not None else 0.0
    report, row = _report_row(problem, theta)
    out = {
        "command": "bounds",
        "source": problem.label,
        "dimension": problem.dimension,
        "theta": theta,
        "m": report.m,
        "v": report.v,
        "variance_product": report.variance_product,
        "lb": report.lb,
        "k_m": report.k_m,
        "k_m_v": report.k_m_v,
        "k_tilde_m": report.k_tilde_m,
        "k_tilde": report.k_tilde,
        "k_tilde_argmax": {"m": report.k_tilde_argmax.m,
                           "indices": list(report.k_tilde_argmax.indices)},
        "i_d": list(report.i_d),
        "i_1_prime": report.i_1_prime,
        "notes": list(problem.notes),
    }
    if len(problem.operators) == 3:
        triple = {k: row[k] for k in
                  ("variance_triple", "bong3", "prod_k", "prod_k_v", "prod_k_tilde")}
        triple["geometric_mean_flavor"] = problem.flavor
        triple["geometric_mean"] = bounds.geometric_mean_bound(
            [M for _, M in problem.operators], problem.state_at(theta),
            problem.m, problem.v, problem.flavor, problem.cap)
        out["triple"] = triple
    if (cfg.format or "json") == "json":
        _emit(cfg, json.dumps(out, indent=2) + "\n")
    else:
        flat = dict(out)
        flat.pop("k_tilde_argmax")
        flat.pop("notes")
        triple = flat.pop("triple", None)
        flat["k_tilde_argmax_m"] = report.k_tilde_argmax.m
        flat["k_tilde_argmax"] = ";".join(str(i) for i in report.k_tilde_argmax.indices)
        i_d = flat.pop("i_d")
        for lev, val in enumerate(i_d, start=1):
            flat[f"i_{lev}"] = val
        if triple:
            for key in ("variance_triple", "bong3", "prod_k", "prod_k_v", "prod_k_tilde"):
                flat[key] = triple[key]
        columns = list(flat.keys())
        _emit(cfg, _rows_to_csv(columns, [flat]))
    return EXIT_OK


SWEEP_COLUMNS = ["theta", "variance_product", "lb", "k_m", "k_m_v", "k_tilde",
                 "i_2", "i_1_prime"]
TRIPLE_COLUMNS = ["variance_triple", "bong3", "prod_k", "prod_k_v", "prod_k_tilde"]


def run_sweep(cfg: RunConfig) -> int:
    if cfg.example is None:
        raise UurError("sweep requires --example: JSON inputs carry a single state, not a family")
    problem = _load_problem(cfg)
    rows = [_report_row(problem, theta)[1] for theta in _theta_grid(cfg, problem)]
    columns = SWEEP_COLUMNS + (TRIPLE_COLUMNS if len(problem.operators) == 3 else [])
    if (cfg.format or "csv") == "csv":
        _emit(cfg, _rows_to_csv(columns, rows))
    else:
        _emit(cfg, _rows_to_json([{c: r[c] for c in columns} for r in rows]))
    return EXIT_OK


def run_compare(cfg: RunConfig) -> int:
    if cfg.example is None:
        raise UurError("compare requires --example: JSON inputs carry a single state, not a family")
    problem = _load_problem(cfg)
    out_rows = []
    for theta in _theta_grid(cfg, problem):
        _, row = _report_row(problem, theta)
        diff = {
            "theta": theta,
            "k_m_v_minus_lb": row["k_m_v"] - row["lb"],
            "k_m_v_minus_i_2": row["k_m_v"] - row["i_2"],
            "k_m_v_minus_i_1_prime": (None if row["i_1_prime"] is None
                                      else row["k_m_v"] - row["i_1_prime"]),
        }
        if len(problem.operators) == 3:
            diff["prod_k_v_minus_bong3"] = row["prod_k_v"] - row["bong3"]
        out_rows.append(diff)
    columns = list(out_rows[0].keys())
    if (cfg.format or "csv") == "csv":
        _emit(cfg, _rows_to_csv(columns, out_rows))
    else:
        _emit(cfg, _rows_to_json(out_rows))
    return EXIT_OK


def run_check(cfg: RunConfig) -> int:
    results = selfcheck.run_all(cfg.seed, cfg.trials,
                                cap=cfg.cap if cfg.cap is not None else DEFAULT_CAP,
                                corrupt=cfg.corrupt)
    lines = [f"check seed={cfg.seed} trials={cfg.trials}"]
    failed = [r for r in results if r.failures]
    for r in results:
        lines.append(f"suite {r.name}: trials={r.trials} failures={r.failures} "
                     f"worst={r.worst:.3e}")
    for r in failed:
        lines.append("counterexample: " + json.dumps(r.counterexample, sort_keys=True))
    lines.append("result: PASS" if not failed else
                 f"result: FAIL ({len(failed)} of {len(results)} suites)")
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK if not failed else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uur",
        description="Variance lower bounds for unitary operator pairs and triples.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, summary in (
        ("bounds", "single bound report (evaluated at --theta-min for examples)"),
        ("sweep", "per-angle bound table over an example's sweep range"),
        ("compare", "per-angle differences between the blended split bound and the others"),
        ("check", "seeded randomized invariant suites"),
    ):
        p = sub.add_parser(name, help=summary)
        p.add_argument("--input", dest="input_path", metavar="PATH",
                       help="JSON problem file (see README for the schema)")
        p.add_argument("--example", choices=sorted(scenarios.DEFAULT_DIMS),
                       help="built-in example id")
        p.add_argument("--dim", type=int, help="dimension for ex1/ex2 (others are fixed)")
        p.add_argument("--theta-min", type=float, dest="theta_min")
        p.add_argument("--theta-max", type=float, dest="theta_max")
        p.add_argument("--steps", type=int)
        p.add_argument("--m", type=int, help="block size (default: half the dimension)")
        p.add_argument("--v", type=float, help="blend weight in [0, 1] (default 0.1)")
        p.add_argument("--flavor", choices=("plain", "convex", "tilde"),
                       help="geometric mean variant for triples (default plain)")
        p.add_argument("--cap", type=int, help=f"subset search cap (default {DEFAULT_CAP})")
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--trials", type=int, default=1000)
        p.add_argument("--output", metavar="PATH", help="write here instead of stdout")
        p.add_argument("--format", choices=("csv", "json"))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**vars(args))
    dispatch = {"bounds": run_bounds, "sweep": run_sweep,
                "compare": run_compare, "check": run_check}
    try:
        return dispatch[cfg.command](cfg)
    except SearchSpaceTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except _Violation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (UurError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
