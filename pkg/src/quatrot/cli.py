"""Command-line front end.

Subcommands: quat2mat, mat2quat, decompose4, compose4, classify, angle,
embed, random, verify. Input comes from --input PATH or stdin, as JSON
({"matrix": [[...]]}, {"quaternion": {"w","x","y","z"}}, or
{"left": ..., "right": ...} for compose4) or as plain text (whitespace-
separated numbers, one matrix row per line). Output is always JSON on
stdout, with numbers printed to 17 significant digits so values
round-trip through double precision exactly.

Exit codes: 0 success, 2 parse/validation error, 3 mathematical
rejection (input passed parsing but is not the kind of matrix the
command requires). Errors are reported as a single-line JSON object
{"error": code, "detail": text} on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import rot3, rot4
from .errors import NonFiniteInput, NotARotation, NotOrthogonal, NotUnit, QuatrotError
from .linalg import check_orthonormal
from .rng import random_rotation
from .rot3 import IsometryKind

_VALIDATION_ERRORS = (NonFiniteInput, NotUnit)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_MATH = 3


# --- JSON output with fixed float formatting -------------------------------

def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.17g}"
    if isinstance(x, str):
        return json.dumps(x)
    if isinstance(x, np.ndarray):
        x = x.tolist()
    if isinstance(x, (list, tuple)):
        return "[" + ",".join(_fmt(v) for v in x) + "]"
    if isinstance(x, dict):
        return "{" + ",".join(f"{json.dumps(k)}:{_fmt(v)}" for k, v in x.items()) + "}"
    raise TypeError(f"cannot serialize {type(x)!r}")


def dump_json(obj) -> str:
    return _fmt(obj)


def _quat_obj(q) -> dict:
    return {"w": float(q[0]), "x": float(q[1]), "y": float(q[2]), "z": float(q[3])}


# --- input parsing ---------------------------------------------------------

class ParseError(ValueError):
    pass


def _parse_numbers_plain(text: str):
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        try:
            rows.append([float(tok) for tok in line.split()])
        except ValueError as exc:
            raise ParseError(f"bad number in plain input: {exc}") from exc
    return rows


def parse_matrix(text: str, fmt: str) -> np.ndarray:
    if fmt == "json":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if not isinstance(payload, dict) or "matrix" not in payload:
            raise ParseError('expected an object with a "matrix" key')
        rows = payload["matrix"]
    else:
        rows = _parse_numbers_plain(text)
    try:
        m = np.array(rows, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"matrix is not rectangular numeric data: {exc}") from exc
    if m.shape not in ((3, 3), (4, 4)):
        raise ParseError(f"expected a 3x3 or 4x4 matrix, got shape {m.shape}")
    return m


def _quat_from_obj(obj) -> np.ndarray:
    if not isinstance(obj, dict) or set(obj) != {"w", "x", "y", "z"}:
        raise ParseError('quaternion must be an object with keys "w","x","y","z"')
    try:
        return np.array([float(obj[k]) for k in ("w", "x", "y", "z")])
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad quaternion component: {exc}") from exc


def parse_quaternion(text: str, fmt: str) -> np.ndarray:
    if fmt == "json":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if isinstance(payload, dict) and "quaternion" in payload:
            payload = payload["quaternion"]
        return _quat_from_obj(payload)
    rows = _parse_numbers_plain(text)
    flat = [v for row in rows for v in row]
    if len(flat) != 4:
        raise ParseError(f"expected 4 numbers (w x y z), got {len(flat)}")
    return np.array(flat)


def parse_quaternion_pair(text: str, fmt: str):
    if fmt == "json":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if not isinstance(payload, dict) or "left" not in payload or "right" not in payload:
            raise ParseError('expected an object with "left" and "right" quaternions')
        return _quat_from_obj(payload["left"]), _quat_from_obj(payload["right"])
    rows = _parse_numbers_plain(text)
    if len(rows) != 2 or any(len(r) != 4 for r in rows):
        raise ParseError("expected two lines of 4 numbers (left, then right)")
    return np.array(rows[0]), np.array(rows[1])


# --- command handlers ------------------------------------------------------

def _cmd_quat2mat(args, text):
    q = parse_quaternion(text, args.format)
    if args.kind == "rotoreflection":
        m = rot3.rotoreflection_matrix(q)
        kind = "rotoreflection"
    else:
        m = rot3.euler_rodrigues(q)
        kind = "rotation"
    return {"matrix": m, "kind": kind}


def _require_dim(m, dim, command):
    if m.shape[0] != dim:
        raise ParseError(f"{command} needs a {dim}x{dim} matrix, got {m.shape[0]}x{m.shape[0]}")


def _cmd_mat2quat(args, text):
    m = parse_matrix(text, args.format)
    _require_dim(m, 3, "mat2quat")
    if args.kind == "rotation":
        kind = IsometryKind.ROTATION
    elif args.kind == "rotoreflection":
        kind = IsometryKind.ROTOREFLECTION
    else:
        try:
            kind = rot3.classify(m, args.tol)
        except NotOrthogonal as exc:
            raise NotARotation(str(exc)) from exc
    if kind is IsometryKind.ROTATION:
        result = rot3.extract_rotation(m, args.tol)
    else:
        result = rot3.extract_rotoreflection(m, args.tol)
    return {
        "quaternion": _quat_obj(result.params),
        "residual": result.residual,
        "branch": result.branch,
        "kind": kind.value,
    }


def _cmd_decompose4(args, text):
    m = parse_matrix(text, args.format)
    _require_dim(m, 4, "decompose4")
    dec = rot4.decompose_4d(m, args.tol)
    return {
        "left": _quat_obj(dec.left),
        "right": _quat_obj(dec.right),
        "rank1_residual": dec.rank1_residual,
        "reconstruction_error": dec.reconstruction_error,
    }


def _cmd_compose4(args, text):
    left, right = parse_quaternion_pair(text, args.format)
    return {"matrix": rot4.compose_4d(left, right)}


def _cmd_classify(args, text):
    m = parse_matrix(text, args.format)
    _require_dim(m, 3, "classify")
    kind = rot3.classify(m, args.tol)
    det = check_orthonormal(m, args.tol).determinant
    return {"kind": kind.value, "det": det}


def _cmd_angle(args, text):
    m = parse_matrix(text, args.format)
    _require_dim(m, 3, "angle")
    kind = rot3.classify(m, args.tol)
    report = rot3.rotation_angle(m, kind, args.tol)
    return {"kind": kind.value, "alpha": report.alpha, "cos_alpha": report.cos_alpha}


def _cmd_embed(args, text):
    m = parse_matrix(text, args.format)
    _require_dim(m, 3, "embed")
    kind = rot3.classify(m, args.tol)
    return {"kind": kind.value, "matrix": rot3.embed_4d(m, kind, args.tol)}


def _cmd_random(args, text):
    if args.seed is None:
        raise ParseError("random requires --seed")
    m = random_rotation(args.seed, args.dim)
    return {
        "matrix": m,
        "meta": {
            "seed": args.seed,
            "dim": args.dim,
            "generator": "xorshift64star+boxmuller",
        },
    }


def _cmd_verify(args, text):
    m = parse_matrix(text, args.format)
    report = check_orthonormal(m, args.tol)
    if m.shape == (3, 3):
        kind = rot3.classify(m, args.tol)
        if kind is IsometryKind.ROTATION:
            result = rot3.extract_rotation(m, args.tol)
        else:
            result = rot3.extract_rotoreflection(m, args.tol)
        angle = rot3.rotation_angle(m, kind, args.tol)
        ok = report.max_abs_gram_deviation <= args.tol and result.residual <= args.tol
        return {
            "dim": 3,
            "kind": kind.value,
            "orthogonality_deviation": report.max_abs_gram_deviation,
            "det": report.determinant,
            "extraction_residual": result.residual,
            "branch": result.branch,
            "alpha": angle.alpha,
            "ok": ok,
        }
    dec = rot4.decompose_4d(m, args.tol)
    ok = (
        report.max_abs_gram_deviation <= args.tol
        and dec.rank1_residual <= args.tol
        and dec.reconstruction_error <= args.tol
    )
    return {
        "dim": 4,
        "orthogonality_deviation": report.max_abs_gram_deviation,
        "det": report.determinant,
        "rank1_residual": dec.rank1_residual,
        "reconstruction_error": dec.reconstruction_error,
        "ok": ok,
    }


_HANDLERS = {
    "quat2mat": _cmd_quat2mat,
    "mat2quat": _cmd_mat2quat,
    "decompose4": _cmd_decompose4,
    "compose4": _cmd_compose4,
    "classify": _cmd_classify,
    "angle": _cmd_angle,
    "embed": _cmd_embed,
    "random": _cmd_random,
    "verify": _cmd_verify,
}

_NEEDS_INPUT = {c for c in _HANDLERS if c != "random"}


def _seed_type(value: str) -> int:
    seed = int(value)
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return seed


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatrot",
        description="Quaternion decomposition of 3D/4D rotation matrices.",
    )
    parser.add_argument("command", choices=sorted(_HANDLERS))
    parser.add_argument("--input", default=None, help="input file (default: stdin)")
    parser.add_argument("--format", choices=("json", "plain"), default="json")
    parser.add_argument("--tol", type=float, default=1e-9)
    parser.add_argument("--seed", type=_seed_type, default=None)
    parser.add_argument("--dim", type=int, choices=(3, 4), default=3)
    parser.add_argument(
        "--kind",
        choices=("auto", "rotation", "rotoreflection"),
        default="auto",
        help="isometry kind for quat2mat/mat2quat (default: auto; quat2mat treats auto as rotation)",
    )
    return parser


def _fail(code: str, detail: str, exit_code: int) -> int:
    sys.stderr.write(dump_json({"error": code, "detail": detail}) + "\n")
    return exit_code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.tol <= 0:
        return _fail("parse_error", "--tol must be positive", EXIT_PARSE)
    text = ""
    if args.command in _NEEDS_INPUT:
        try:
            if args.input is not None:
                with open(args.input, "r", encoding="utf-8") as handle:
                    text = handle.read()
            else:
                text = sys.stdin.read()
        except OSError as exc:
            return _fail("parse_error", f"cannot read input: {exc}", EXIT_PARSE)
    try:
        result = _HANDLERS[args.command](args, text)
    except ParseError as exc:
        return _fail("parse_error", str(exc), EXIT_PARSE)
    except _VALIDATION_ERRORS as exc:
        return _fail(exc.code, str(exc), EXIT_PARSE)
    except QuatrotError as exc:
        return _fail(exc.code, str(exc), EXIT_MATH)
    sys.stdout.write(dump_json(result) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
