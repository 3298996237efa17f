"""Command-line interface: ``multibase <command> ...``.

Systems are read from JSON files ``{"digits": [...], "bases": [...]}`` whose
entries are scalar literals such as ``"3/2"``, ``"1.9"`` or
``"(1+sqrt(5))/2"``.  Output is plain line-oriented text (CSV for ``scan``)
and is byte-identical for identical inputs.

Exit codes: 0 success, 2 malformed input, 3 violated precondition, 4 an
undetermined result under ``--strict`` (or an undecidable precondition).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence, TextIO

from . import __version__
from .classification import (
    DEFAULT_DEPTH,
    PreconditionError,
    UniquenessClass,
    classify,
    classify_two_element,
    q_gr,
    q_kl,
)
from .expansion import (
    ExpansionKind,
    NotRegularError,
    OutOfRangeError,
    Verdict,
    characteristics,
    expand,
    is_unique,
    unique_point_test,
    validate,
)
from .numerics import (
    DEFAULT_PRECISION,
    Interval,
    ScalarSyntaxError,
    UndeterminedError,
    default_precision,
    format_scalar,
    parse_scalar,
    set_default_precision,
)
from .oracle import enumerate_expansions, extremal_prefix
from .sequences import DigitSequence, alpha_gr, alpha_kl, format_sequence, parse_sequence
from .system import AlphabetBaseSystem, system_from_json

EXIT_MALFORMED = 2
EXIT_PRECONDITION = 3
EXIT_UNDETERMINED = 4


class MalformedInput(Exception):
    pass


# ---------------------------------------------------------------- input helpers

def _read_system(path: str) -> AlphabetBaseSystem:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON ({exc.msg})") from exc
    if not isinstance(obj, dict) or not isinstance(obj.get("digits"), list) or not isinstance(obj.get("bases"), list):
        raise MalformedInput(f'{path}: expected an object with "digits" and "bases" arrays')
    try:
        for v in obj["digits"] + obj["bases"]:
            parse_scalar(str(v))
    except ScalarSyntaxError as exc:
        raise MalformedInput(f"{path}: {exc}") from exc
    try:
        return system_from_json(obj)
    except ValueError as exc:
        raise PreconditionError(f"{path}: {exc}") from exc


def _scalar(text: str):
    try:
        return parse_scalar(text)
    except ScalarSyntaxError as exc:
        raise MalformedInput(str(exc)) from exc


def _sequence(text: str) -> DigitSequence:
    try:
        return parse_sequence(text)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def _grid_axis(text: str) -> list[Fraction]:
    """``lo:hi:steps`` -> ``steps`` equally spaced exact rationals from lo to hi inclusive."""
    parts = text.split(":")
    if len(parts) != 3:
        raise MalformedInput(f"range {text!r} must look like lo:hi:steps")
    lo, hi = _scalar(parts[0]), _scalar(parts[1])
    try:
        steps = int(parts[2])
    except ValueError:
        raise MalformedInput(f"step count {parts[2]!r} is not an integer") from None
    if not isinstance(lo, Fraction) or not isinstance(hi, Fraction):
        raise MalformedInput("scan ranges need rational endpoints")
    if steps < 1 or not (1 < lo <= hi <= 2):
        raise PreconditionError(f"range {text!r} needs 1 < lo <= hi <= 2 and steps >= 1")
    if steps == 1:
        return [lo]
    return [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]


def _kind(text: str) -> ExpansionKind:
    try:
        return ExpansionKind(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"kind must be one of {[k.value for k in ExpansionKind]}") from None


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _bool(v: bool) -> str:
    return "true" if v else "false"


def _decimals(bits: int) -> int:
    return max(12, min(60, math.floor(bits * math.log10(2))))


def _check_strict(args, undetermined: bool) -> int:
    if undetermined and args.strict:
        return EXIT_UNDETERMINED
    return 0


# ---------------------------------------------------------------- commands

def cmd_check(args, out: TextIO) -> int:
    system = _read_system(args.system)
    s = system.summary()
    print(f"system = {system}", file=out)
    print(f"lambda = {format_scalar(s.lam)}", file=out)
    print(f"Lambda = {format_scalar(s.Lam)}", file=out)
    print(f"semi-regular = {_bool(s.semi_regular)}", file=out)
    print(f"regular = {_bool(s.regular)}", file=out)
    return 0


def cmd_expand(args, out: TextIO) -> int:
    system = _read_system(args.system)
    state = expand(system, _scalar(args.x), args.kind, args.digits)
    print(f"kind = {args.kind.value}", file=out)
    print(f"x = {format_scalar(state.x)}", file=out)
    if state.cycle is not None:
        print(f"digits = {format_sequence(state.sequence, system.M)}", file=out)
        start, period = state.cycle
        print(f"cycle = preperiod {start}, period {period}", file=out)
    else:
        print(f"digits = {format_sequence(DigitSequence.truncated(state.digits[:args.digits]), system.M)}", file=out)
        print("cycle = none detected", file=out)
    print(f"residual = {format_scalar(state.current_value)} after {len(state.digits)} digits", file=out)
    if state.undetermined_at is not None:
        print(f"undetermined at digit {state.undetermined_at}", file=out)
    return _check_strict(args, state.undetermined_at is not None)


def _stream_text(state, n: int, M: int) -> str:
    if state.cycle is not None:
        return format_sequence(state.sequence, M)
    return format_sequence(DigitSequence.truncated(state.take(n)), M)


def cmd_alphas(args, out: TextIO) -> int:
    system = _read_system(args.system)
    chars = characteristics(system)
    undetermined = False
    for j, stream in enumerate(chars.alpha):
        stream.extend(args.digits)
        undetermined |= stream.undetermined_at is not None
        print(f"alpha^{j} = {_stream_text(stream, args.digits, system.M)}", file=out)
    for j in range(1, system.M + 1):
        stream = chars.gamma[j].extend(args.digits)
        undetermined |= stream.undetermined_at is not None
        print(f"gamma^{j} = {_stream_text(stream, args.digits, system.M)}", file=out)
    return _check_strict(args, undetermined)


def cmd_validate(args, out: TextIO) -> int:
    system = _read_system(args.system)
    result = validate(system, _sequence(args.seq), args.kind, args.depth)
    print(result, file=out)
    return _check_strict(args, result.verdict is Verdict.UNDETERMINED)


def cmd_unique(args, out: TextIO) -> int:
    system = _read_system(args.system)
    if args.seq is not None:
        result = is_unique(system, _sequence(args.seq), args.depth)
    else:
        result = unique_point_test(system, _scalar(args.x), args.depth)
    print(result, file=out)
    return _check_strict(args, result.verdict is Verdict.UNDETERMINED)


def cmd_classify(args, out: TextIO) -> int:
    system = _read_system(args.system)
    result = classify(system, args.depth)
    print(result, file=out)
    for item in result.evidence:
        print(f"  {item}", file=out)
    for note in result.notes:
        print(f"  note: {note}", file=out)
    return _check_strict(args, result.value is UniquenessClass.UNDETERMINED)


def _scan_cell(cell):
    d0, d1, q0, q1 = cell
    system = AlphabetBaseSystem((d0, d1), (q0, q1))
    if not system.is_regular():
        raise PreconditionError(f"system {system} is not regular")
    return q0, q1, str(classify_two_element(system))


def cmd_scan(args, out: TextIO) -> int:
    parts = args.digits.split(",")
    if len(parts) != 2:
        raise MalformedInput("--digits needs two values d0,d1")
    d0, d1 = (_scalar(p) for p in parts)
    cells = [(d0, d1, a, b) for a in _grid_axis(args.q0) for b in _grid_axis(args.q1)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_scan_cell, cells, chunksize=256))
    else:
        rows = [_scan_cell(c) for c in cells]
    sink = open(args.out, "w", newline="", encoding="utf-8") if args.out else out
    try:
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(["q0", "q1", "class"])
        for q0, q1, cls in rows:
            writer.writerow([format_scalar(q0), format_scalar(q1), cls])
    finally:
        if args.out:
            sink.close()
    undetermined = any(cls.startswith("Undetermined") for _, _, cls in rows)
    return _check_strict(args, undetermined)


def _threshold_text(x, digits: int) -> str:
    return format_scalar(x, digits) if isinstance(x, Interval) else format_scalar(x)


def cmd_thresholds(args, out: TextIO) -> int:
    bits = args.precision
    digits = _decimals(bits)
    print(f"M = {args.M}", file=out)
    print(f"q_GR = {_threshold_text(q_gr(args.M, bits), digits)}", file=out)
    print(f"q_KL = {_threshold_text(q_kl(args.M, bits), digits)}", file=out)
    print(f"alpha_GR = {format_sequence(alpha_gr(args.M), args.M)}", file=out)
    print(f"alpha_KL = {format_sequence(alpha_kl(args.M, args.digits), args.M)}", file=out)
    return 0


def cmd_oracle(args, out: TextIO) -> int:
    system = _read_system(args.system)
    x = _scalar(args.x)
    try:
        tree = enumerate_expansions(system, x, args.depth)
    except TypeError as exc:
        raise PreconditionError(str(exc)) from exc
    except ValueError as exc:
        raise PreconditionError(str(exc)) from exc
    words = tree.surviving_prefixes
    print(f"x = {format_scalar(x)}", file=out)
    print(f"depth = {args.depth}", file=out)
    print(f"surviving prefixes = {len(words)}", file=out)
    for w in words[: args.limit]:
        print(f"  {format_sequence(DigitSequence.truncated(w), system.M).rstrip('…')}", file=out)
    if len(words) > args.limit:
        print(f"  ... {len(words) - args.limit} more", file=out)
    def text(w: list[int]) -> str:
        return "".join(map(str, w)) if system.M <= 9 else ",".join(map(str, w))

    failures = 0
    for kind in ExpansionKind:
        engine = expand(system, x, kind, args.depth).take(args.depth)
        brute = extremal_prefix(system, x, kind, args.depth)
        agree = engine == brute
        failures += not agree
        print(f"{kind.value}: engine {text(engine)}, brute force {text(brute)}, "
              f"{'extremal' if agree else 'MISMATCH'}", file=out)
    return 1 if failures else 0


# ---------------------------------------------------------------- parser

def _add_common(parser: argparse.ArgumentParser, defaults: bool) -> None:
    parser.add_argument("--precision", type=_positive,
                        default=DEFAULT_PRECISION if defaults else argparse.SUPPRESS,
                        help="bits for interval arithmetic (default: $MULTIBASE_PRECISION or 128)")
    parser.add_argument("--strict", action="store_true", default=False if defaults else argparse.SUPPRESS,
                        help="exit with status 4 on undetermined results")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multibase",
        description="Expansions of real numbers in alphabet-base systems with several non-integer bases.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_common(parser, defaults=True)
    # the common flags are also accepted after the command name
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, defaults=False)
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    add = lambda name, **kw: sub.add_parser(name, parents=[common], **kw)

    p = add("check", help="lambda, Lambda and regularity of a system")
    p.add_argument("system")
    p.set_defaults(func=cmd_check)

    p = add("expand", help="digit stream of one expansion")
    p.add_argument("system")
    p.add_argument("--x", required=True)
    p.add_argument("--kind", type=_kind, default=ExpansionKind.GREEDY)
    p.add_argument("--digits", type=_positive, default=32)
    p.set_defaults(func=cmd_expand)

    p = add("alphas", help="the characteristic sequences alpha^j and gamma^j")
    p.add_argument("system")
    p.add_argument("--digits", type=_positive, default=32)
    p.set_defaults(func=cmd_alphas)

    p = add("validate", help="lexicographic test of a digit sequence")
    p.add_argument("system")
    p.add_argument("--seq", required=True)
    p.add_argument("--kind", type=_kind, default=ExpansionKind.GREEDY)
    p.add_argument("--depth", type=_positive, default=DEFAULT_DEPTH)
    p.set_defaults(func=cmd_validate)

    p = add("unique", help="uniqueness of a sequence or of a point")
    p.add_argument("system")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--seq")
    which.add_argument("--x")
    p.add_argument("--depth", type=_positive, default=DEFAULT_DEPTH)
    p.set_defaults(func=cmd_unique)

    p = add("classify", help="size of the set of unique expansions")
    p.add_argument("system")
    p.add_argument("--depth", type=_positive, default=DEFAULT_DEPTH)
    p.set_defaults(func=cmd_classify)

    p = add("scan", help="two-element classification over a grid of bases, as CSV")
    p.add_argument("--digits", default="0,1", help="d0,d1 (default 0,1)")
    p.add_argument("--q0", required=True, help="lo:hi:steps")
    p.add_argument("--q1", required=True, help="lo:hi:steps")
    p.add_argument("--out", help="CSV file (default: standard output)")
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    p.set_defaults(func=cmd_scan)

    p = add("thresholds", help="generalized golden ratio and Thue-Morse threshold q_KL")
    p.add_argument("--M", type=_positive, required=True)
    p.add_argument("--digits", type=_positive, default=32, help="alpha_KL prefix length")
    p.set_defaults(func=cmd_thresholds)

    p = add("oracle", help="brute-force enumeration and extremality check at one point")
    p.add_argument("system")
    p.add_argument("--x", required=True)
    p.add_argument("--depth", type=_positive, default=12)
    p.add_argument("--limit", type=int, default=64, help="surviving prefixes to list")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    previous = default_precision()
    set_default_precision(args.precision)
    try:
        return args.func(args, out)
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (PreconditionError, OutOfRangeError, NotRegularError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except UndeterminedError as exc:
        print(f"undetermined: {exc}", file=sys.stderr)
        return EXIT_UNDETERMINED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    finally:
        set_default_precision(previous)


if __name__ == "__main__":
    sys.exit(main())
