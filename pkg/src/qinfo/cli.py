"""``qinfo`` command-line front end.

Exit codes: 0 success, 1 failed check, 2 usage / schema / invalid input,
3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict

import numpy as np

from qinfo.classical import NoiseModel, averaging_experiment
from qinfo.encode import TableCode, decode_ladder, misalignment_sweep
from qinfo.entropy import Ensemble, entropy_report
from qinfo.errors import QInfoError, ValidationError
from qinfo.golden import paper_check
from qinfo.measure import named_state, tomography_experiment
from qinfo.protocols import run_bb84, run_three_stage
from qinfo.qcore import DensityMatrix, max_qubits, matrix_from_json

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

TOMOGRAPHY_COLUMNS = ["n_per_basis", "mean_trace_distance", "std_trace_distance", "trials", "seed"]
ENCODE_COLUMNS = ["theta_or_n", "s_inf_bits", "success_rate", "copies", "seed"]
CLASSICAL_COLUMNS = ["n", "mean_abs_error", "bits_recovered", "noise_kind", "scale", "seed"]
ENTROPY_COLUMNS = ["s_inf", "s_n", "gap", "s_p"]
BB84_COLUMNS = ["n_sent", "sifted_length", "qber", "eavesdropped"]
CHECK_COLUMNS = ["name", "expected", "computed", "tolerance", "passed"]


class InputFileError(Exception):
    pass


def _u64(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2**64)")
    return v


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("copy counts must be positive")
    return vals


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputFileError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InputFileError(f"{path} is not valid JSON: {exc}") from None


def _load_density(path: str) -> DensityMatrix:
    m = matrix_from_json(_read_json(path))
    return DensityMatrix(m)


def _load_ensemble(path: str) -> Ensemble:
    obj = _read_json(path)
    comps = obj.get("components") if isinstance(obj, dict) else None
    if not isinstance(comps, list) or not comps:
        raise ValidationError('ensemble JSON needs a non-empty "components" list')
    pairs = []
    for c in comps:
        if not isinstance(c, dict) or "weight" not in c or "matrix" not in c:
            raise ValidationError('each component needs "weight" and "matrix"')
        pairs.append((float(c["weight"]), matrix_from_json(c["matrix"])))
    return Ensemble.from_pairs(pairs)


def _csv_text(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in (r[c] for c in columns)])
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(args, text: str) -> None:
    if args.output in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputFileError(f"cannot write {args.output}: {exc.strerror or exc}") from None


def _emit_rows(args, columns, rows, default="csv") -> None:
    fmt = args.format or default
    dict_rows = [asdict(r) if not isinstance(r, dict) else r for r in rows]
    if fmt == "csv":
        _emit(args, _csv_text(columns, dict_rows))
    else:
        _emit(args, _json_text([{c: r[c] for c in columns} for r in dict_rows]))


# -- commands -----------------------------------------------------------------


def cmd_entropy(args) -> int:
    rho = _load_density(args.matrix)
    ens = _load_ensemble(args.ensemble) if args.ensemble else None
    rep = entropy_report(rho, ens)
    row = {"s_inf": rep.s_inf, "s_n": rep.s_n, "gap": rep.gap, "s_p": rep.s_p}
    if (args.format or "json") == "json":
        _emit(args, _json_text(row))
    else:
        _emit(args, _csv_text(ENTROPY_COLUMNS, [{k: ("" if v is None else v) for k, v in row.items()}]))
    return EXIT_OK


def cmd_tomography(args) -> int:
    state = _load_density(args.matrix) if args.matrix else named_state(args.state)
    rows = tomography_experiment(state, args.n, args.trials, args.seed)
    _emit_rows(args, TOMOGRAPHY_COLUMNS, rows)
    return EXIT_OK


def cmd_encode(args) -> int:
    if args.mode == "sweep":
        if args.thetas is not None:
            thetas = args.thetas
        else:
            thetas = [i * (math.pi / 2) / (args.steps - 1) for i in range(args.steps)] if args.steps > 1 else [0.0]
        rows = misalignment_sweep(thetas, args.n[0], args.seed)
    else:
        code = TableCode.from_bits(args.bits)
        rows = decode_ladder(code, args.n, args.trials, args.seed)
    _emit_rows(args, ENCODE_COLUMNS, rows)
    return EXIT_OK


def cmd_classical(args) -> int:
    noise = NoiseModel(args.noise, args.scale)
    rows = averaging_experiment(args.bits, noise, args.n, args.trials, args.seed)
    _emit_rows(args, CLASSICAL_COLUMNS, rows)
    return EXIT_OK


def cmd_bb84(args) -> int:
    t = run_bb84(args.n, args.eavesdrop, args.seed)
    if (args.format or "json") == "json":
        _emit(args, _json_text(t.to_json()))
    else:
        row = {"n_sent": t.n_sent, "sifted_length": len(t.sifted_key_a), "qber": t.qber, "eavesdropped": t.eavesdropped}
        _emit(args, _csv_text(BB84_COLUMNS, [row]))
    return EXIT_OK


def cmd_three_stage(args) -> int:
    if args.message is None:
        bits = np.random.default_rng(np.random.SeedSequence([args.seed, 1])).integers(0, 2, args.random_bits)
        message = "".join(map(str, bits))
    else:
        message = args.message
    t = run_three_stage(message, args.seed)
    if (args.format or "json") != "json":
        raise ValidationError("three-stage transcripts are JSON only")
    _emit(args, _json_text(t.to_json()))
    return EXIT_OK


def cmd_paper_check(args) -> int:
    report = paper_check()
    rows = [c.as_dict() for c in report.checks]
    if args.format == "json":
        _emit(args, _json_text({"passed": report.passed, "checks": rows}))
    elif args.format == "csv":
        _emit(args, _csv_text(CHECK_COLUMNS, rows))
    else:
        width = max(len(c.name) for c in report.checks)
        lines = [
            f"{'PASS' if c.passed else 'FAIL'}  {c.name:<{width}}  expected={c.expected:.6g}  "
            f"computed={c.computed:.6g}  tol={c.tolerance:g}"
            for c in report.checks
        ]
        lines.append(f"{sum(c.passed for c in report.checks)}/{len(report.checks)} checks passed")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if report.passed else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_u64, default=0, help="master RNG seed (u64)")
    common.add_argument("--output", "-o", help="output file (default stdout)")
    common.add_argument("--format", choices=["csv", "json"], help="output format")

    p = argparse.ArgumentParser(prog="qinfo", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("entropy", parents=[common], help="S_inf, S_n, gap (and S_p) of a matrix")
    s.add_argument("--matrix", required=True, help='JSON {"dim": d, "entries": [[re, im], ...]}')
    s.add_argument("--ensemble", help='JSON {"components": [{"weight": w, "matrix": {...}}, ...]}')
    s.set_defaults(func=cmd_entropy)

    s = sub.add_parser("tomography", parents=[common], help="tomography convergence table")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--state", default="plus", help="zero|one|plus|minus|plus_i|mixed")
    g.add_argument("--matrix")
    s.add_argument("--n", type=_int_list, default=[64, 256, 1024], help="copies per basis, comma-separated")
    s.add_argument("--trials", type=_positive_int, default=50)
    s.set_defaults(func=cmd_tomography)

    s = sub.add_parser("encode", parents=[common], help="misalignment sweep or table-decode ladder")
    s.add_argument("--mode", choices=["sweep", "ladder"], default="sweep")
    s.add_argument("--thetas", type=_float_list, help="sweep angles in radians, within [0, pi/2]")
    s.add_argument("--steps", type=_positive_int, default=9, help="evenly spaced sweep angles if --thetas omitted")
    s.add_argument("--bits", default="101", help="table symbol for the ladder")
    s.add_argument("--n", type=_int_list, default=[1000], help="copies (sweep: first value; ladder: the ladder)")
    s.add_argument("--trials", type=_positive_int, default=200)
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("classical", parents=[common], help="noisy averaging of a binary fraction")
    s.add_argument("--bits", default="10110011")
    s.add_argument("--noise", choices=["uniform", "gaussian"], default="uniform")
    s.add_argument("--scale", type=float, default=0.5)
    s.add_argument("--n", type=_int_list, default=[100, 1000, 10000])
    s.add_argument("--trials", type=_positive_int, default=100)
    s.set_defaults(func=cmd_classical)

    s = sub.add_parser("bb84", parents=[common], help="toy BB84 run")
    s.add_argument("--n", type=_positive_int, default=4096)
    s.add_argument("--eavesdrop", action="store_true", help="intercept-resend in a random basis")
    s.set_defaults(func=cmd_bb84)

    s = sub.add_parser("three-stage", parents=[common], help="toy three-stage run")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--message", help="bit string")
    g.add_argument("--random-bits", type=_positive_int, default=64, help="random message length")
    s.set_defaults(func=cmd_three_stage)

    s = sub.add_parser("paper-check", parents=[common], help="recompute all golden values")
    s.set_defaults(func=cmd_paper_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        max_qubits()
        return args.func(args)
    except InputFileError as exc:
        print(f"qinfo: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValidationError as exc:
        print(f"qinfo: invalid input ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QInfoError as exc:
        print(f"qinfo: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
