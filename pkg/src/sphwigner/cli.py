"""Command-line front end: ``sphwigner convert|wigner|verify|sample``.

Exit codes: 0 success, 1 invalid input, 2 numerical degeneracy or a
failed verification.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import math
import sys
from typing import Any, Iterator, TextIO

import numpy as np

from .errors import DegenerateError, NotRealizable, SphericalGeometryError, Status
from .sampling import SampleConfig, iter_samples
from .tetra import (
    EdgeId,
    TetAngles,
    TetLengths,
    dihedrals_from_lengths,
    lengths_from_dihedrals,
    validate_angles,
    validate_lengths,
)
from .verification import verify_population
from .wigner import DEFAULT_STEP, reciprocity_report

SCHEMA_VERSION = 1
EDGE_ORDER = [e.label for e in EdgeId]
CSV_HEADER = ["l" + label for label in EDGE_ORDER]

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERIC = 2


class InputError(ValueError):
    """Unparseable or invalid document; maps to exit code 1."""


def fmt(x: float) -> str:
    return format(x, ".17g")


def dumps(obj: Any) -> str:
    """Compact JSON with every float written to 17 significant digits."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "null"
        return fmt(x)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def make_document(kind: str, values, label: str | None = None, degrees: bool = False) -> dict:
    vals = [float(x) for x in values]
    doc: dict[str, Any] = {"schema_version": SCHEMA_VERSION, "kind": kind}
    if degrees:
        doc["units"] = "degrees"
        vals = [math.degrees(x) for x in vals]
    doc["values"] = vals
    if label is not None:
        doc["label"] = label
    return doc


def parse_document(obj: Any) -> TetLengths | TetAngles:
    if not isinstance(obj, dict):
        raise InputError("document must be a JSON object")
    version = obj.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise InputError(f"unsupported schema_version {version!r}")
    if obj.get("units", "radians") != "radians":
        raise InputError("input values must be in radians")
    kind = obj.get("kind")
    if kind not in ("lengths", "angles"):
        raise InputError(f"unknown kind {kind!r}")
    values = obj.get("values")
    if not isinstance(values, list) or len(values) != 6:
        raise InputError("values must be an array of six numbers")
    if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in values):
        raise InputError("values must be numbers")
    if not all(math.isfinite(v) for v in values):
        raise InputError("values must be finite")
    return TetLengths(values) if kind == "lengths" else TetAngles(values)


def read_documents(stream: TextIO) -> Iterator[dict]:
    """A single JSON document or JSON lines."""
    text = stream.read()
    stripped = text.strip()
    if not stripped:
        raise InputError("empty input")
    try:
        yield json.loads(stripped)
        return
    except json.JSONDecodeError:
        pass
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            yield json.loads(line)
        except json.JSONDecodeError as exc:
            raise InputError(f"line {n}: {exc.msg}") from None


def _check(data: TetLengths | TetAngles) -> None:
    check = validate_lengths(data) if isinstance(data, TetLengths) else validate_angles(data)
    if check.status is Status.OUT_OF_RANGE:
        raise InputError(f"{check.status.value}: {check.detail}")
    if check.status is Status.DEGENERATE:
        raise DegenerateError(str(check.detail))
    if check.status is Status.NOT_REALIZABLE:
        raise NotRealizable(str(check.detail))


def convert(data: TetLengths | TetAngles, label: str | None = None, degrees: bool = False) -> dict:
    _check(data)
    if isinstance(data, TetLengths):
        out = dihedrals_from_lengths(data)
        back = lengths_from_dihedrals(out)
        kind, source = "angles", "lengths"
    else:
        out = lengths_from_dihedrals(data)
        back = dihedrals_from_lengths(out)
        kind, source = "lengths", "angles"
    residual = float(np.max(np.abs(back.as_array() - data.as_array())))
    doc = make_document(kind, out, label, degrees)
    doc["metadata"] = {"source_kind": source, "round_trip_residual": residual}
    return doc


def wigner(data: TetLengths | TetAngles, pair: EdgeId, step: float) -> dict:
    _check(data)
    lengths = data if isinstance(data, TetLengths) else lengths_from_dihedrals(data)
    out = {"schema_version": SCHEMA_VERSION}
    out.update(reciprocity_report(lengths, pair, step).to_dict())
    return out


def _error(kind: str, message: str) -> dict:
    return {"schema_version": SCHEMA_VERSION, "error": {"type": kind, "message": message}}


def _open_input(path: str):
    if path == "-":
        return contextlib.nullcontext(sys.stdin)
    try:
        return open(path, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def cmd_convert(args, out: TextIO) -> int:
    with _open_input(args.input) as stream:
        for obj in read_documents(stream):
            data = parse_document(obj)
            label = obj.get("label")
            out.write(dumps(convert(data, label, args.degrees)) + "\n")
    return EXIT_OK


def cmd_wigner(args, out: TextIO) -> int:
    try:
        pair = EdgeId.parse(args.pair)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    with _open_input(args.input) as stream:
        for obj in read_documents(stream):
            out.write(dumps(wigner(parse_document(obj), pair, args.fd_step)) + "\n")
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    if args.count < 1:
        raise InputError("count must be positive")
    if args.tol < 0 or not math.isfinite(args.tol):
        raise InputError("tol must be a non-negative number")
    config = SampleConfig(seed=args.seed, count=args.count)
    samples = [lengths for lengths, _ in iter_samples(config)]
    summary = verify_population(samples, args.tol, args.fd_step)
    report = {"schema_version": SCHEMA_VERSION, "seed": args.seed, "fd_step": args.fd_step}
    report.update(summary.to_dict())
    out.write(dumps(report) + "\n")
    return EXIT_OK if summary.passed else EXIT_NUMERIC


def cmd_sample(args, out: TextIO) -> int:
    if args.count < 1:
        raise InputError("count must be positive")
    config = SampleConfig(seed=args.seed, count=args.count)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for lengths, _ in iter_samples(config):
            vals = [math.degrees(x) for x in lengths] if args.degrees else list(lengths)
            writer.writerow([fmt(x) for x in vals])
        out.write(buf.getvalue())
    else:
        for n, (lengths, _) in enumerate(iter_samples(config)):
            doc = make_document("lengths", lengths, f"seed{args.seed}-{n}", args.degrees)
            out.write(dumps(doc) + "\n")
    return EXIT_OK


def read_csv(stream: TextIO) -> list[TetLengths]:
    reader = csv.reader(stream)
    header = next(reader, None)
    if header != CSV_HEADER:
        raise InputError(f"expected header {','.join(CSV_HEADER)}")
    return [TetLengths([float(x) for x in row]) for row in reader if row]


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degrees", action="store_true", help="display output angles in degrees")

    parser = argparse.ArgumentParser(
        prog="sphwigner", description="Spherical tetrahedra: conversions and Wigner derivatives."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", parents=[common], help="lengths <-> dihedral angles")
    p.add_argument("--input", default="-", help="JSON document or JSON lines (default stdin)")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("wigner", parents=[common], help="derivative report for one edge pair")
    p.add_argument("--input", default="-")
    p.add_argument("--pair", default="01", help="edge label such as 01 or 23")
    p.add_argument("--fd-step", type=float, default=DEFAULT_STEP)
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("verify", parents=[common], help="check all identities on samples")
    p.add_argument("--seed", type=_seed, default=42)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--fd-step", type=float, default=DEFAULT_STEP)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", parents=[common], help="emit random valid tetrahedra")
    p.add_argument("--seed", type=_seed, default=42)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if getattr(args, "fd_step", 1.0) <= 0:
        out.write(dumps(_error("input", "fd-step must be positive")) + "\n")
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except InputError as exc:
        out.write(dumps(_error("input", str(exc))) + "\n")
        return EXIT_INPUT
    except (DegenerateError, NotRealizable) as exc:
        out.write(dumps(_error(type(exc).__name__, str(exc))) + "\n")
        return EXIT_NUMERIC
    except SphericalGeometryError as exc:
        out.write(dumps(_error(type(exc).__name__, str(exc))) + "\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
