"""Command-line front end.

Three subcommands: `verify` runs the solvability checkers and the sampled
contractive-inequality certificate for a configured equation pair; `solve`
additionally runs the alternating solver; `example-linf` runs the exact
sequence-space fixture.  Reports are JSON, written to --out or stdout.

Exit codes: 0 pass, 1 input error, 2 condition/inequality violation,
3 non-convergence.  `solve` exits on the solve outcome; checker results ride
along in the report.  With identical configs and seeds, reports are
byte-identical except for the wall_time_seconds field.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import __version__
from .linf_model import (
    DEFAULT_PHI1_SLOPE,
    E0,
    domain_points,
    exhaustive_case_check,
    iterate_from,
)
from .mateq import (
    EquationPair,
    EquationSpec,
    MapDescriptor,
    auto_k1,
    certify_derived_inequality,
    check_all_conditions,
    solve_common,
)
from .spectra import HermitianMatrix

EXIT_PASS = 0
EXIT_INPUT_ERROR = 1
EXIT_VIOLATION = 2
EXIT_NO_CONVERGENCE = 3

MAX_REPORT_VIOLATIONS = 100


class ConfigError(ValueError):
    """Malformed problem configuration; message carries the field path."""


def _expect(cond: bool, path: str, message: str):
    if not cond:
        raise ConfigError(f"{path}: {message}")


def _number(obj, path: str) -> float:
    _expect(isinstance(obj, (int, float)) and not isinstance(obj, bool), path,
            f"expected a number, got {obj!r}")
    return float(obj)


def _complex_entry(obj, path: str) -> complex:
    _expect(isinstance(obj, (list, tuple)) and len(obj) == 2, path,
            "complex entries are [re, im] pairs")
    return complex(_number(obj[0], f"{path}[0]"), _number(obj[1], f"{path}[1]"))


def _matrix(obj, dim: int, path: str) -> np.ndarray:
    _expect(isinstance(obj, list) and len(obj) == dim, path,
            f"expected {dim} rows")
    out = np.empty((dim, dim), dtype=np.complex128)
    for i, row in enumerate(obj):
        _expect(isinstance(row, list) and len(row) == dim, f"{path}[{i}]",
                f"expected {dim} entries")
        for j, entry in enumerate(row):
            out[i, j] = _complex_entry(entry, f"{path}[{i}][{j}]")
    return out


def _matrix_json(arr: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in arr]


@dataclass(frozen=True, eq=False)
class ProblemConfig:
    """Parsed configuration plus the resolved singular-value bound k1."""

    dim: int
    ball_radius: float
    k1: float
    k1_source: str  # "auto" | "explicit"
    alpha: float
    tolerance: float
    max_iterations: int
    samples: int
    seed: int
    pair: EquationPair


def parse_problem_config(data: dict) -> ProblemConfig:
    _expect(isinstance(data, dict), "config", "top level must be an object")
    required = {"dim", "ball_radius", "k1", "alpha", "tolerance",
                "max_iterations", "samples", "seed", "equations"}
    missing = required - set(data)
    _expect(not missing, "config", f"missing keys {sorted(missing)}")

    dim = data["dim"]
    _expect(isinstance(dim, int) and dim >= 1, "config.dim", "must be an int >= 1")
    ball = _number(data["ball_radius"], "config.ball_radius")
    _expect(ball > 0, "config.ball_radius", "must be positive")
    alpha = _number(data["alpha"], "config.alpha")
    _expect(alpha > 0, "config.alpha", "must be positive")
    tol = _number(data["tolerance"], "config.tolerance")
    _expect(tol > 0, "config.tolerance", "must be positive")
    max_iter = data["max_iterations"]
    _expect(isinstance(max_iter, int) and max_iter >= 2, "config.max_iterations",
            "must be an int >= 2")
    samples = data["samples"]
    _expect(isinstance(samples, int) and samples >= 1, "config.samples",
            "must be an int >= 1")
    seed = data["seed"]
    _expect(isinstance(seed, int), "config.seed", "must be an int")

    eqs = data["equations"]
    _expect(isinstance(eqs, list) and len(eqs) == 2, "config.equations",
            "expected exactly two equation descriptors")

    specs = []
    for e_idx, eq in enumerate(eqs):
        path = f"config.equations[{e_idx}]"
        _expect(isinstance(eq, dict), path, "must be an object")
        missing = {"sign", "q", "coefficients", "map"} - set(eq)
        _expect(not missing, path, f"missing keys {sorted(missing)}")
        sign = eq["sign"]
        _expect(sign in ("plus", "minus"), f"{path}.sign", "must be 'plus' or 'minus'")
        q = _matrix(eq["q"], dim, f"{path}.q")
        coeffs = eq["coefficients"]
        _expect(isinstance(coeffs, list) and coeffs, f"{path}.coefficients",
                "expected a nonempty list of matrices")
        a_list = [
            _matrix(a, dim, f"{path}.coefficients[{i}]") for i, a in enumerate(coeffs)
        ]
        desc = eq["map"]
        _expect(isinstance(desc, dict) and {"kind", "params"} <= set(desc),
                f"{path}.map", "expected {kind, params}")
        kind = desc["kind"]
        params = desc["params"]
        _expect(isinstance(params, list), f"{path}.map.params", "must be a list")
        specs.append((sign, q, a_list, kind, tuple(params)))

    # Resolve the shared singular-value bound before building descriptors.
    k1_raw = data["k1"]
    if k1_raw == "auto":
        bounds = []
        for e_idx, (_, _, _, kind, params) in enumerate(specs):
            bound = auto_k1(kind, params, ball)
            _expect(
                bound is not None,
                f"config.equations[{e_idx}].map",
                f"kind {kind!r} has no automatic k1 bound; set config.k1 explicitly",
            )
            bounds.append(bound)
        k1 = max(bounds)
        k1_source = "auto"
    else:
        k1 = _number(k1_raw, "config.k1")
        _expect(k1 >= 0, "config.k1", "must be >= 0")
        k1_source = "explicit"

    built = []
    for e_idx, (sign, q, a_list, kind, params) in enumerate(specs):
        path = f"config.equations[{e_idx}]"
        try:
            descriptor = MapDescriptor(
                kind=kind, params=params, declared_k1=k1, ball_radius=ball
            )
            spec = EquationSpec(
                q=HermitianMatrix(q),
                sign=sign,
                coefficients=tuple(a_list),
                nonlinearity=descriptor,
            )
        except ValueError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
        built.append(spec)

    try:
        pair = EquationPair(built[0], built[1])
    except ValueError as exc:
        raise ConfigError(f"config.equations: {exc}") from exc

    return ProblemConfig(
        dim=dim,
        ball_radius=ball,
        k1=k1,
        k1_source=k1_source,
        alpha=alpha,
        tolerance=tol,
        max_iterations=max_iter,
        samples=samples,
        seed=seed,
        pair=pair,
    )


def serialize_config(cfg: ProblemConfig) -> dict:
    """Canonical JSON form; parse_problem_config(serialize_config(c)) == c."""
    equations = []
    for spec in (cfg.pair.first, cfg.pair.second):
        equations.append(
            {
                "sign": spec.sign,
                "q": _matrix_json(spec.q.entries),
                "coefficients": [_matrix_json(a.entries) for a in spec.coefficients],
                "map": {
                    "kind": spec.nonlinearity.kind,
                    "params": list(spec.nonlinearity.params),
                },
            }
        )
    return {
        "dim": cfg.dim,
        "ball_radius": cfg.ball_radius,
        "k1": "auto" if cfg.k1_source == "auto" else cfg.k1,
        "alpha": cfg.alpha,
        "tolerance": cfg.tolerance,
        "max_iterations": cfg.max_iterations,
        "samples": cfg.samples,
        "seed": cfg.seed,
        "equations": equations,
    }


def load_config_file(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path!r} is not valid JSON: {exc}") from exc


def _apply_overrides(data: dict, args) -> dict:
    out = dict(data)
    if getattr(args, "seed", None) is not None:
        out["seed"] = args.seed
    if getattr(args, "samples", None) is not None:
        out["samples"] = args.samples
    if getattr(args, "tol", None) is not None:
        out["tolerance"] = args.tol
    if getattr(args, "max_iter", None) is not None:
        out["max_iterations"] = args.max_iter
    return out


# ---------------------------------------------------------------------------
# Report builders.


def _cap(entries: list) -> list:
    return entries[:MAX_REPORT_VIOLATIONS]


def _conditions_json(cfg: ProblemConfig):
    report = check_all_conditions(
        cfg.pair,
        cfg.ball_radius,
        cfg.k1,
        alpha=cfg.alpha,
        samples=cfg.samples,
        seed=cfg.seed,
    )
    cert = certify_derived_inequality(
        cfg.pair, cfg.ball_radius, cfg.alpha, cfg.samples, cfg.seed
    )
    payload = {
        "k": report.k,
        "k1": cfg.k1,
        "k1_source": cfg.k1_source,
        "conditions": {
            "condition_i": {
                "passed": report.condition_i.passed,
                "norm_q1": report.condition_i.norm_q1,
                "norm_q2": report.condition_i.norm_q2,
                "margin_q1": report.condition_i.margin_q1,
                "margin_q2": report.condition_i.margin_q2,
            },
            "condition_ii": {
                "passed": report.condition_ii.passed,
                "min_margin": report.condition_ii.min_margin,
                "min_eigenvalue": report.condition_ii.min_eigenvalue,
                "branch_first_uniform": report.condition_ii.branch_first_uniform,
                "branch_second_uniform": report.condition_ii.branch_second_uniform,
                "violations": _cap([[i, m] for i, m in report.condition_ii.violations]),
                "violations_total": len(report.condition_ii.violations),
            },
            "condition_iii": {
                "passed": report.condition_iii.passed,
                "lhs": report.condition_iii.lhs,
                "worst_margin": report.condition_iii.worst_margin,
                "violations": _cap([[i, m] for i, m in report.condition_iii.violations]),
                "violations_total": len(report.condition_iii.violations),
            },
            "samples": cfg.samples,
            "seed": cfg.seed,
            "sampled_evidence_only": True,
        },
        "inequality_certificate": {
            "pairs_checked": cert.pairs_checked,
            "worst_margin": cert.worst_margin,
            "violations": _cap([[v.index, v.margin] for v in cert.violations]),
            "violations_total": len(cert.violations),
            "exhaustive": cert.exhaustive,
        },
    }
    clean = report.all_passed and not cert.violations
    return payload, clean


def _report_skeleton(command: str, config_echo: dict | None) -> dict:
    out = {
        "tool": {"name": "matpair", "version": __version__},
        "command": command,
    }
    if config_echo is not None:
        out["config"] = config_echo
    return out


def cmd_verify(cfg: ProblemConfig) -> tuple[dict, int]:
    report = _report_skeleton("verify", serialize_config(cfg))
    results, clean = _conditions_json(cfg)
    report["results"] = results
    code = EXIT_PASS if clean else EXIT_VIOLATION
    report["exit_code"] = code
    return report, code


def cmd_solve(cfg: ProblemConfig) -> tuple[dict, int]:
    report = _report_skeleton("solve", serialize_config(cfg))
    results, _clean = _conditions_json(cfg)
    report["results"] = results

    sol = solve_common(
        cfg.pair, cfg.ball_radius, tol=cfg.tolerance, max_iter=cfg.max_iterations
    )
    final_gap = sol.trace.gaps[-1] if sol.trace.gaps else 0.0
    report["solve"] = {
        "verdict": sol.trace.verdict.value,
        "iterations": sol.iterations,
        "final_gap": float(final_gap),
        "residual_1": sol.residual_1,
        "residual_2": sol.residual_2,
        "min_eigenvalue": sol.min_eigenvalue,
        "within_ball": sol.within_ball,
        "final_iterate": _matrix_json(sol.trace.final.entries),
    }
    code = EXIT_PASS if sol.converged else EXIT_NO_CONVERGENCE
    report["exit_code"] = code
    return report, code


def _frac(text: str, path: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{path}: not a valid rational: {exc}") from exc
    if value <= 0:
        raise ConfigError(f"{path}: slope must be positive")
    return value


def cmd_example_linf(max_index: int, phi1_slope: Fraction) -> tuple[dict, int]:
    if max_index < 8:
        raise ConfigError("--max-index must be >= 8")
    report = _report_skeleton("example-linf", None)
    report["max_index"] = max_index
    report["phi1_slope"] = str(phi1_slope)

    cert = exhaustive_case_check(max_index, phi1_slope)
    report["certificate"] = {
        "pairs_checked": cert.pairs_checked,
        "worst_margin": str(cert.worst_margin),
        "violations": _cap(
            [
                [f"e{v.x.index}", f"e{v.y.index}", str(v.margin)]
                for v in cert.violations
            ]
        ),
        "violations_total": len(cert.violations),
        "exhaustive": True,
    }

    runs = []
    all_to_zero_point = True
    for start in domain_points(max_index):
        trace = iterate_from(start)
        ok = trace.converged and trace.final == E0
        all_to_zero_point = all_to_zero_point and ok
        runs.append(
            {
                "start": f"e{start.index}",
                "iterates": [f"e{p.index}" for p in trace.iterates],
                "gaps": [str(gap) for gap in trace.gaps],
                "verdict": trace.verdict.value,
                "residual_f": str(trace.residual_f),
                "residual_g": str(trace.residual_g),
            }
        )
    report["iterations"] = _cap(runs)
    report["runs_total"] = len(runs)
    report["all_limits_zero_point"] = all_to_zero_point

    clean = not cert.violations and all_to_zero_point
    code = EXIT_PASS if clean else EXIT_VIOLATION
    report["exit_code"] = code
    return report, code


def _emit(report: dict, out_path: str | None, started: float) -> None:
    report["wall_time_seconds"] = time.perf_counter() - started
    text = json.dumps(report, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matpair",
        description="Common positive-definite solutions to pairs of nonlinear "
        "matrix equations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_max_iter=False):
        p.add_argument("--config", required=True, help="path to a JSON problem config")
        p.add_argument("--seed", type=int, default=None, help="override config seed")
        p.add_argument("--samples", type=int, default=None,
                       help="override config sample count")
        p.add_argument("--tol", type=float, default=None,
                       help="override config tolerance")
        if with_max_iter:
            p.add_argument("--max-iter", dest="max_iter", type=int, default=None,
                           help="override config iteration cap")
        p.add_argument("--out", default=None, help="write the JSON report here")

    add_common(sub.add_parser("verify", help="run solvability checkers"))
    add_common(sub.add_parser("solve", help="checkers plus alternating solve"),
               with_max_iter=True)

    pe = sub.add_parser("example-linf", help="exact sequence-space fixture")
    pe.add_argument("--max-index", dest="max_index", type=int, default=50,
                    help="largest basis index enumerated (default 50)")
    pe.add_argument("--phi1-slope", dest="phi1_slope", default=None,
                    help="override the phi1 slope, e.g. 1/8 (fault injection)")
    pe.add_argument("--out", default=None, help="write the JSON report here")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        if args.command in ("verify", "solve"):
            data = _apply_overrides(load_config_file(args.config), args)
            cfg = parse_problem_config(data)
            report, code = (cmd_verify if args.command == "verify" else cmd_solve)(cfg)
        else:
            slope = (
                DEFAULT_PHI1_SLOPE
                if args.phi1_slope is None
                else _frac(args.phi1_slope, "--phi1-slope")
            )
            report, code = cmd_example_linf(args.max_index, slope)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    _emit(report, args.out, started)
    return code
