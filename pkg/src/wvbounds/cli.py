"""Command-line front end: reports, sweeps, random verification, Gaussian checks.

All output is deterministic for fixed flags and seed: JSON objects keep a fixed
key order with reals printed to 15 significant digits, CSV files are
RFC-4180-style with LF line endings, and every random path is driven by an
explicit seed.  Exit codes: 0 success, 1 invariant violation, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .bounds import REPORT_FIELDS, UncertaintyReport, schrodinger_report
from .continuous import (
    DEFAULT_N_POINTS,
    GaussianFamilyParams,
    GridTooNarrow,
    NotConverged,
    discord_p_given_x,
    gaussian_mus,
    modulus_condition_residual,
    phase_condition_residual,
    position_momentum_moments,
    schrodinger_check_continuous,
)
from .harness import (
    DEGENERACY_MODES,
    INVARIANT_NAMES,
    RandomHarnessConfig,
    run_random_harness,
)
from .linalg import (
    DimensionMismatch,
    NonHermitianInput,
    PureState,
    ZeroState,
    as_operator,
    require_hermitian,
)
from .models import SweepTable, sweep_spin1, sweep_spin32

__all__ = [
    "ParseError",
    "ValidationError",
    "Problem",
    "load_problem",
    "parse_problem",
    "problem_payload",
    "report_payload",
    "dumps_fixed",
    "write_csv",
    "main",
    "entry_point",
]

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


class ParseError(ValueError):
    """The problem file is malformed (JSON or schema)."""


class ValidationError(ValueError):
    """The problem file parses but violates a mathematical precondition."""


@dataclass(frozen=True)
class Problem:
    """A parsed problem instance plus its effective tolerances."""

    a: np.ndarray
    b: np.ndarray
    psi: PureState
    fill: np.ndarray | None
    tolerances: dict[str, float]


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _fmt(value: float) -> str:
    return format(float(value), ".15g")


def dumps_fixed(obj, indent: int = 0) -> str:
    """JSON text with dict insertion order preserved and floats at 15 digits."""
    pad = " " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f"{pad}  {json.dumps(key)}: {dumps_fixed(value, indent + 2)}"
            for key, value in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ",\n".join(f"{pad}  {dumps_fixed(value, indent + 2)}" for value in obj)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _complex_from(obj, context: str) -> complex:
    if not isinstance(obj, dict) or set(obj) != {"re", "im"}:
        raise ParseError(f"{context}: expected an object with keys 're' and 'im'")
    re, im = obj["re"], obj["im"]
    if not _is_number(re) or not _is_number(im):
        raise ParseError(f"{context}: 're' and 'im' must be numbers")
    return complex(re, im)


def _complex_obj(value: complex) -> dict:
    return {"re": float(value.real), "im": float(value.imag)}


def _matrix_from(rows, context: str) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise ParseError(f"{context}: expected a non-empty array of rows")
    dim = len(rows)
    out = np.empty((dim, dim), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"{context}[{i}]: expected a row of length {dim}")
        for j, cell in enumerate(row):
            out[i, j] = _complex_from(cell, f"{context}[{i}][{j}]")
    return out


def _vector_from(cells, context: str) -> np.ndarray:
    if not isinstance(cells, list) or not cells:
        raise ParseError(f"{context}: expected a non-empty array")
    return np.array(
        [_complex_from(cell, f"{context}[{k}]") for k, cell in enumerate(cells)],
        dtype=np.complex128,
    )


_DEFAULT_TOLERANCES = {"zero": 1e-12, "degeneracy": 1e-9, "hermitian": 1e-9}


def parse_problem(data, tolerance_overrides: dict[str, float] | None = None) -> Problem:
    """Validate a decoded problem object; raise ParseError/ValidationError.

    Effective tolerances are defaults, overlaid by the file's ``tolerances``
    object, overlaid by ``tolerance_overrides`` (command-line flags); the
    Hermiticity validation below uses the effective value.
    """
    if not isinstance(data, dict):
        raise ParseError("top level: expected a JSON object")
    for key in ("A", "B", "psi"):
        if key not in data:
            raise ParseError(f"top level: missing required field {key!r}")
    a = _matrix_from(data["A"], "A")
    b = _matrix_from(data["B"], "B")
    psi_vec = _vector_from(data["psi"], "psi")

    tolerances = dict(_DEFAULT_TOLERANCES)
    if "tolerances" in data:
        overrides = data["tolerances"]
        if not isinstance(overrides, dict):
            raise ParseError("tolerances: expected an object")
        for key, value in overrides.items():
            if key not in tolerances:
                raise ParseError(f"tolerances.{key}: unknown tolerance name")
            if not _is_number(value) or value <= 0:
                raise ParseError(f"tolerances.{key}: expected a positive number")
            tolerances[key] = float(value)
    for key, value in (tolerance_overrides or {}).items():
        if value is not None:
            tolerances[key] = float(value)

    if a.shape != b.shape:
        raise ValidationError(f"A is {a.shape[0]}x{a.shape[0]} but B is {b.shape[0]}x{b.shape[0]}")
    if psi_vec.size != a.shape[0]:
        raise ValidationError(f"psi has length {psi_vec.size}, expected {a.shape[0]}")
    for name, matrix in (("A", a), ("B", b)):
        try:
            require_hermitian(matrix, rtol=tolerances["hermitian"])
        except NonHermitianInput as exc:
            raise ValidationError(f"{name}: {exc}") from exc
    try:
        psi = PureState(psi_vec)
    except ZeroState as exc:
        raise ValidationError(f"psi: {exc}") from exc

    fill = None
    if "fill" in data and data["fill"] is not None:
        fill = _vector_from(data["fill"], "fill")
    return Problem(a=a, b=b, psi=psi, fill=fill, tolerances=tolerances)


def load_problem(path: str, tolerance_overrides: dict[str, float] | None = None) -> Problem:
    """Read and validate a problem file."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
    return parse_problem(data, tolerance_overrides)


def problem_payload(a, b, psi: PureState, fill=None, meta: dict | None = None) -> dict:
    """Serializable problem object; floats round-trip exactly through json."""
    am = as_operator(a)
    bm = as_operator(b)
    payload: dict = {
        "A": [[_complex_obj(v) for v in row] for row in am.tolist()],
        "B": [[_complex_obj(v) for v in row] for row in bm.tolist()],
        "psi": [_complex_obj(v) for v in psi.amplitudes.tolist()],
    }
    if fill is not None:
        payload["fill"] = [_complex_obj(complex(v)) for v in np.asarray(fill).tolist()]
    if meta is not None:
        payload["meta"] = meta
    return payload


def report_payload(report: UncertaintyReport) -> dict:
    """UncertaintyReport as an ordered JSON object."""
    payload = {name: getattr(report, name) for name in REPORT_FIELDS}
    payload["conditioning_warnings"] = list(report.conditioning_warnings)
    return payload


def write_csv(table: SweepTable, stream) -> None:
    """Write a sweep table with a header row, 15-digit reals, LF endings."""
    stream.write(",".join(table.columns) + "\n")
    for row in table.rows:
        stream.write(",".join(_fmt(v) for v in row) + "\n")


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _cmd_report(args: argparse.Namespace) -> int:
    flag_overrides = {
        "zero": args.tol_zero,
        "degeneracy": args.tol_degeneracy,
        "hermitian": args.tol_hermitian,
    }
    try:
        problem = load_problem(args.problem, flag_overrides)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = schrodinger_report(
        problem.a,
        problem.b,
        problem.psi,
        fill=problem.fill,
        zero_tol=problem.tolerances["zero"],
        rel_tol=problem.tolerances["degeneracy"],
        hermitian_rtol=problem.tolerances["hermitian"],
    )
    _emit(dumps_fixed(report_payload(report)), args.out)
    return EXIT_OK


def _cmd_sweep_spin1(args: argparse.Namespace) -> int:
    table = sweep_spin1(args.res, args.theta)
    return _write_table(table, args.out)


def _cmd_sweep_spin32(args: argparse.Namespace) -> int:
    table = sweep_spin32(args.tmin, args.tmax, args.steps)
    return _write_table(table, args.out)


def _write_table(table: SweepTable, out_path: str) -> int:
    try:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            write_csv(table, handle)
    except OSError as exc:
        print(f"io error: cannot write {out_path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def _cmd_random_verify(args: argparse.Namespace) -> int:
    config = RandomHarnessConfig(
        seed=args.seed,
        dims=tuple(args.dims),
        samples_per_dim=args.samples,
        degeneracy_modes=tuple(args.modes),
    )
    summary = run_random_harness(config)
    lines = [
        f"checked {summary.checked} instances "
        f"(dims {','.join(str(d) for d in config.dims)}; "
        f"modes {','.join(config.degeneracy_modes)}; seed {config.seed})"
    ]
    for name in INVARIANT_NAMES:
        lines.append(f"max violation [{name}]: {_fmt(summary.max_violation[name])}")
    lines.append(f"failures: {summary.failures}")
    print("\n".join(lines))
    if summary.failures:
        failure = summary.first_failure
        meta = {
            "seed": failure["seed"],
            "dim": failure["dim"],
            "index": failure["index"],
            "mode": failure["mode"],
            "violations": failure["violations"],
        }
        payload = problem_payload(failure["a"], failure["b"], failure["psi"], meta=meta)
        print(json.dumps(payload, indent=2))
        print(
            f"invariant violation at dim {failure['dim']} index {failure['index']} "
            f"(mode {failure['mode']}); reproducer printed above",
            file=sys.stderr,
        )
        return EXIT_VIOLATION
    return EXIT_OK


def _cmd_gaussian(args: argparse.Namespace) -> int:
    try:
        params = GaussianFamilyParams(
            lam=args.lam, mu=args.mu, mean_x=args.mean_x, mean_p=args.mean_p
        )
    except ValueError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        wave = gaussian_mus(
            params,
            x_min=args.x_min,
            x_max=args.x_max,
            n_points=args.points,
            hbar=args.hbar,
        )
    except GridTooNarrow as exc:
        print(f"grid too narrow: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        lhs, rhs, gap = schrodinger_check_continuous(wave)
    except NotConverged as exc:
        print(f"not converged: {exc}", file=sys.stderr)
        return EXIT_USAGE
    moments = position_momentum_moments(wave)
    payload = {
        "lambda": args.lam,
        "mu": args.mu,
        "hbar": args.hbar,
        "n_points": wave.n_points,
        "x_min": wave.x_min,
        "x_max": wave.x_max,
        "mean_x": moments["mean_x"],
        "mean_p": moments["mean_p"],
        "var_x": moments["var_x"],
        "var_p": moments["var_p"],
        "covariance": moments["covariance"],
        "residual_phase": phase_condition_residual(
            wave, params.lam, params.mean_x, params.mean_p
        ),
        "residual_modulus": modulus_condition_residual(wave, params.mu, params.mean_x),
        "lhs": lhs,
        "rhs": rhs,
        "gap": gap,
        "discord_p_given_x": discord_p_given_x(wave),
    }
    _emit(dumps_fixed(payload), args.out)
    return EXIT_OK


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _dims_list(text: str) -> list[int]:
    try:
        dims = [int(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise argparse.ArgumentTypeError("dims must be comma-separated integers") from exc
    if not dims or any(d < 1 for d in dims):
        raise argparse.ArgumentTypeError("dims must be positive integers")
    return dims


def _modes_list(text: str) -> list[str]:
    modes = [part for part in text.split(",") if part]
    for mode in modes:
        if mode not in DEGENERACY_MODES:
            raise argparse.ArgumentTypeError(
                f"unknown mode {mode!r}; choose from {','.join(DEGENERACY_MODES)}"
            )
    return modes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wvbounds",
        description="Weak-value operators and variance uncertainty bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    report = sub.add_parser("report", help="full bound report for a problem file")
    report.add_argument("problem", help="path to a problem JSON file")
    report.add_argument("--out", default=None, help="output path (default: stdout)")
    report.add_argument("--tol-zero", type=float, default=None, dest="tol_zero")
    report.add_argument("--tol-degeneracy", type=float, default=None, dest="tol_degeneracy")
    report.add_argument("--tol-hermitian", type=float, default=None, dest="tol_hermitian")
    report.set_defaults(handler=_cmd_report)

    spin1 = sub.add_parser("sweep-spin1", help="spin-1 extra-term sweep CSV")
    spin1.add_argument("--res", type=int, default=200, help="grid resolution per axis")
    spin1.add_argument("--theta", type=float, default=0.0, help="relative phase (radians)")
    spin1.add_argument("--out", required=True, help="CSV output path")
    spin1.set_defaults(handler=_cmd_sweep_spin1)

    spin32 = sub.add_parser("sweep-spin32", help="spin-3/2 bound-contribution sweep CSV")
    spin32.add_argument("--tmin", type=float, default=-3.0)
    spin32.add_argument("--tmax", type=float, default=3.0)
    spin32.add_argument("--steps", type=int, default=601)
    spin32.add_argument("--out", required=True, help="CSV output path")
    spin32.set_defaults(handler=_cmd_sweep_spin32)

    verify = sub.add_parser("random-verify", help="seeded random invariant harness")
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--dims", type=_dims_list, default=[3, 4, 5, 6])
    verify.add_argument("--samples", type=_positive_int, default=100, help="samples per dim")
    verify.add_argument("--modes", type=_modes_list, default=list(DEGENERACY_MODES))
    verify.set_defaults(handler=_cmd_random_verify)

    gaussian = sub.add_parser("gaussian", help="continuous position-momentum check")
    gaussian.add_argument("--lambda", type=float, default=0.0, dest="lam")
    gaussian.add_argument("--mu", type=float, default=1.0)
    gaussian.add_argument("--mean-x", type=float, default=0.0, dest="mean_x")
    gaussian.add_argument("--mean-p", type=float, default=0.0, dest="mean_p")
    gaussian.add_argument("--hbar", type=float, default=1.0)
    gaussian.add_argument("--points", type=_positive_int, default=DEFAULT_N_POINTS)
    gaussian.add_argument("--x-min", type=float, default=None, dest="x_min")
    gaussian.add_argument("--x-max", type=float, default=None, dest="x_max")
    gaussian.add_argument("--out", default=None, help="output path (default: stdout)")
    gaussian.set_defaults(handler=_cmd_gaussian)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sweep-spin1" and args.res < 2:
        parser.error("--res must be at least 2")
    if args.command == "sweep-spin32" and args.steps < 2:
        parser.error("--steps must be at least 2")
    try:
        return args.handler(args)
    except (DimensionMismatch, NonHermitianInput, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
