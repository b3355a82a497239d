"""Command-line front end.

Every command builds a JSON payload (with a top-level ``schema`` field) and a
short human summary; ``--json`` selects which one is printed.  Exit codes:
0 ok, 2 invalid input, 3 validation failed, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import SCHEMA, __version__, kernels
from .cone import info as cone_info
from .cremona import cremona_reduce
from .errors import InstabilityError, InternalError, NagataError, ParseError, ValidationError
from .goodrays import (
    bqp_ray,
    certificate_from_json,
    certificate_to_json,
    good_ray_for_n,
    nagata_direction_distance,
    sqrt10_pairs,
    surd_convergents,
    validate_certificate,
    waldschmidt_bounds,
)
from .lattice import ClassVector, SurdSum, format_class, intersect, nagata_gap, parse_class, surd_compare
from .negcurves import DEFAULT_MAX_DEGREE, enumerate_neg_classes
from .reduction import nagata_partition, partition_range
from .shgh import DEFAULT_SEED, classify_speciality

__all__ = ["CommandResult", "EXIT_CODES", "run", "main", "build_parser"]

EXIT_CODES = {"ok": 0, "invalid-input": 2, "validation-failed": 3, "internal-error": 4}


@dataclass
class CommandResult:
    status: str
    payload: dict
    human_text: str

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _payload(command: str, status: str = "ok", **fields) -> dict:
    return {"schema": SCHEMA, "command": command, "status": status, **fields}


_DELTA = re.compile(r"\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?sqrt\(\s*(\d+)\s*\)\s*|\s*(\d+(?:/\d+)?)\s*")


def _parse_delta(text: str) -> SurdSum:
    """``13``, ``27/2``, ``sqrt(10)`` or ``3*sqrt(10)``."""
    match = _DELTA.fullmatch(text)
    if not match:
        raise ParseError("bad delta (use N, P/Q, sqrt(N) or c*sqrt(N))", text, 0)
    if match.group(3) is not None:
        return SurdSum.rational(Fraction(match.group(3)))
    return SurdSum.sqrt(int(match.group(2)), Fraction(match.group(1) or 1))


def _parse_mults(text: str) -> tuple[int, ...]:
    c = parse_class("0;" + text)
    return c.m


# ---------------------------------------------------------------------------
# Commands


def _cmd_info(args) -> CommandResult:
    c = args.cls
    data = cone_info(c)
    lines = [
        f"class            {format_class(c)}",
        f"self-intersection {data['self_intersection']}",
        f"q_status         {data['q_status']}",
        f"K pairing        {data['k_pairing']}",
        f"de Fernex sign   {data['de_fernex_sign']}",
        f"Nagata pairing   {data['nagata_pairing_sign']}",
        f"nagata gap       {data['nagata_gap']['gap']} ({data['nagata_gap']['verdict']})",
    ]
    return CommandResult("ok", _payload("info", **{"class": c.to_json()}, **data), "\n".join(lines))


def _cmd_reduce(args) -> CommandResult:
    c = args.cls
    red = cremona_reduce(c)
    payload = _payload(
        "reduce",
        **{"class": c.to_json()},
        final=red.final.to_json(),
        reduction_status=red.status,
        steps=[s.to_json() for s in red.steps],
    )
    lines = [f"{format_class(s.before)} -> {format_class(s.after)}  at {list(s.triple)}" for s in red.steps]
    lines.append(f"final {format_class(red.final)} ({red.status}, {len(red.steps)} steps)")
    return CommandResult("ok", payload, "\n".join(lines))


def _cmd_dim(args) -> CommandResult:
    c = args.cls
    oracle = True if args.oracle else None
    report = classify_speciality(c, seed=args.seed, oracle=oracle)
    payload = _payload("dim", seed=args.seed, backend=kernels.BACKEND, **report.to_json())
    lines = [
        f"class        {format_class(c)}",
        f"virtual      {report.virtual_dim}",
        f"expected     {report.expected_dim}",
        f"conjectural  {report.conjectural_dim}" + ("  (special)" if report.special else ""),
    ]
    if report.oracle_dim is not None:
        lines.append(f"oracle       {report.oracle_dim}")
    for e, p in report.obstructions:
        lines.append(f"fixed (-1)-class {format_class(e)} pairing {p}")
    return CommandResult("ok", payload, "\n".join(lines))


def _cmd_nagata(args) -> CommandResult:
    c = args.cls
    g = nagata_gap(c)
    payload = _payload("nagata", **{"class": c.to_json()}, gap=g.gap, verdict=g.verdict, admissible=g.admissible)
    text = f"{format_class(c)}: gap {g.gap}, {g.verdict}" + ("" if g.admissible else " (not admissible)")
    return CommandResult("ok", payload, text)


def _cmd_negcurves(args) -> CommandResult:
    s = enumerate_neg_classes(args.n, args.max_degree)
    payload = _payload("negcurves", **s.to_json())
    lines = [format_class(c) for c in s.classes]
    lines.append(
        f"{len(s.classes)} sorted classes, {s.count} labeled, degree <= {s.max_degree}"
        + (", saturated" if s.saturated else "")
    )
    return CommandResult("ok", payload, "\n".join(lines))


def _validation_result(command: str, cert, report, extra: dict) -> CommandResult:
    status = "ok" if report.valid else "validation-failed"
    payload = _payload(command, status, **extra, certificate=certificate_to_json(cert), validation=report.to_json())
    lines = [f"ray {format_class(cert.ray.rep)}  (canonical {format_class(cert.ray.rep.canonical())})"]
    lines.append(f"depth {report.depth}, K pairing {report.k_pairing}")
    if report.nef_scan is not None:
        lines.append(f"nef scan to degree {report.nef_scan.max_degree}: {len(report.nef_scan.obstructions)} obstructions")
    for path, msg in report.failures:
        lines.append(f"FAIL {path}: {msg}")
    lines.append("valid" if report.valid else "INVALID")
    return CommandResult(status, payload, "\n".join(lines))


def _cmd_goodray(args) -> CommandResult:
    cert = good_ray_for_n(args.n)
    report = validate_certificate(cert, args.max_degree)
    return _validation_result("goodray", cert, report, {"n": args.n})


def _cmd_certify(args) -> CommandResult:
    try:
        with open(args.file, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise NagataError(f"cannot read {args.file}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON ({exc.msg})", args.file, exc.pos) from None
    if isinstance(obj, dict) and "certificate" in obj:
        obj = obj["certificate"]
    if not isinstance(obj, dict):
        raise ValidationError("certificate must be a JSON object")
    cert = certificate_from_json(obj)
    report = validate_certificate(cert, args.max_degree)
    return _validation_result("certify", cert, report, {"file": args.file})


def _bqp_entry(q: int, p: int) -> dict:
    ray = bqp_ray(q, p)
    dist = nagata_direction_distance(ray.rep)
    return {
        "q": q,
        "p": p,
        "ray": ray.rep.to_json(),
        "self_intersection": intersect(ray.rep, ray.rep),
        "distance": str(dist),
        "distance_terms": dist.to_json(),
        "distance_approx": float(dist),
    }


def _cmd_bqp(args) -> CommandResult:
    if args.sequence is not None:
        if args.q is not None:
            raise _UsageError("give either q p or --sequence k")
        if args.sequence < 1:
            raise NagataError("--sequence needs k >= 1")
        entries = [_bqp_entry(q, p) for q, p in sqrt10_pairs(args.sequence)]
        dists = [SurdSum.from_json(e["distance_terms"]) for e in entries]
        decreasing = all(surd_compare(a, b) > 0 for a, b in zip(dists, dists[1:]))
        payload = _payload("bqp", pairs=entries, strictly_decreasing=decreasing)
        lines = [
            f"({e['q']},{e['p']})  {format_class(ClassVector.from_json(e['ray']))}  distance ~ {e['distance_approx']:.3e}"
            for e in entries
        ]
        lines.append("distance strictly decreasing" if decreasing else "distance NOT strictly decreasing")
        return CommandResult("ok", payload, "\n".join(lines))
    if args.q is None or args.p is None:
        raise _UsageError("bqp needs q p or --sequence k")
    e = _bqp_entry(args.q, args.p)
    text = f"{format_class(ClassVector.from_json(e['ray']))}  square {e['self_intersection']}  distance {e['distance']}"
    return CommandResult("ok", _payload("bqp", **e), text)


def _cmd_convergents(args) -> CommandResult:
    cf = surd_convergents(args.n, args.k)
    payload = _payload(
        "convergents", n=args.n, a0=cf.a0, period=cf.period, values=[str(v) for v in cf.values]
    )
    text = f"sqrt({args.n}) = [{cf.a0}; ({','.join(map(str, cf.period))})]\n" + " ".join(str(v) for v in cf.values)
    return CommandResult("ok", payload, text)


def _cmd_waldschmidt(args) -> CommandResult:
    m = _parse_mults(args.mults)
    delta = _parse_delta(args.delta)
    b = waldschmidt_bounds(m, delta, args.kmax)
    payload = _payload(
        "waldschmidt",
        m=list(m),
        delta=str(delta),
        lower=str(b.lower) if b.lower is not None else None,
        upper=[str(u) for u in b.upper],
        certified_by=b.certified_by,
    )
    lines = [
        f"lower bound {b.lower if b.lower is not None else 'none'}"
        + (f" (nef via {b.certified_by})" if b.certified_by else ""),
        f"upper bound at k={args.kmax}: {b.upper[-1]}",
    ]
    return CommandResult("ok", payload, "\n".join(lines))


def _cmd_partition(args) -> CommandResult:
    if args.range is not None:
        if args.n is not None:
            raise _UsageError("give either n or --range lo hi")
        lo, hi = args.range
        if lo < 90 or hi < lo:
            raise NagataError("--range needs 90 <= lo <= hi")
        summary = partition_range(lo, hi)
        status = "ok" if summary["all_valid"] else "validation-failed"
        text = (
            f"n in [{lo}, {hi}]: {summary['checked']} checked, {len(summary['failures'])} failures; "
            f"tightest margin at n={summary['tightest_n']} (~{summary['tightest_margin_approx']:.4f})"
        )
        return CommandResult(status, _payload("partition", status, **summary), text)
    if args.n is None:
        raise _UsageError("partition needs n or --range lo hi")
    w = nagata_partition(args.n)
    runs = format_class(ClassVector(0, w.parts)).split(";", 1)[1]
    text = f"n={w.n}: parts ({runs}), margin {w.inequality_margin}, {'valid' if w.valid else 'INVALID'}"
    return CommandResult("ok", _payload("partition", **w.to_json()), text)


# ---------------------------------------------------------------------------
# Parser and dispatch


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON payload")

    parser = _Parser(prog="nagata", description="Exact computations around Nagata's conjecture.")
    parser.add_argument("--version", action="store_true", help="print version and schema")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    for name, func, doc in (
        ("info", _cmd_info, "cone position, Nagata gap and de Fernex sign"),
        ("reduce", _cmd_reduce, "Cremona reduction with the step log"),
        ("nagata", _cmd_nagata, "exact Nagata inequality verdict"),
    ):
        p = sub.add_parser(name, parents=[common], help=doc)
        p.add_argument("cls", metavar="CLASS", help="e.g. '13;5,4^9'")
        p.set_defaults(func=func)

    p = sub.add_parser("dim", parents=[common], help="conjectural dimension and interpolation oracle")
    p.add_argument("cls", metavar="CLASS")
    p.add_argument("--oracle", action="store_true", help="run the oracle for any n (default: n <= 9)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=_cmd_dim)

    p = sub.add_parser("negcurves", parents=[common], help="(-1)-classes up to a degree")
    p.add_argument("n", type=int)
    p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    p.set_defaults(func=_cmd_negcurves)

    p = sub.add_parser("goodray", parents=[common], help="certified good ray on n >= 10 points")
    p.add_argument("n", type=int)
    p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    p.set_defaults(func=_cmd_goodray)

    p = sub.add_parser("certify", parents=[common], help="validate a certificate JSON file")
    p.add_argument("file")
    p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("bqp", parents=[common], help="B-family rays on ten points")
    p.add_argument("q", type=int, nargs="?")
    p.add_argument("p", type=int, nargs="?")
    p.add_argument("--sequence", type=int, metavar="K", help="use the first K sqrt(10) convergent pairs")
    p.set_defaults(func=_cmd_bqp)

    p = sub.add_parser("convergents", parents=[common], help="continued-fraction convergents of sqrt(n)")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=_cmd_convergents)

    p = sub.add_parser("waldschmidt", parents=[common], help="Waldschmidt-type bounds")
    p.add_argument("mults", help="multiplicities, e.g. '5,4^9'")
    p.add_argument("--delta", required=True, help="N, P/Q, sqrt(N) or c*sqrt(N)")
    p.add_argument("--kmax", type=int, required=True)
    p.set_defaults(func=_cmd_waldschmidt)

    p = sub.add_parser("partition", parents=[common], help="ten-part partition for n >= 90")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--range", type=int, nargs=2, metavar=("LO", "HI"))
    p.set_defaults(func=_cmd_partition)
    return parser


def _error(command: str, status: str, exc: Exception) -> CommandResult:
    err = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ParseError):
        err["position"] = exc.position
    return CommandResult(status, _payload(command, status, error=err), f"error: {exc}")


def run(argv: list[str] | None = None) -> CommandResult:
    argv = list(sys.argv[1:] if argv is None else argv)
    command = next((a for a in argv if not a.startswith("-")), "")
    try:
        args = build_parser().parse_args(argv)
    except (_UsageError, NagataError, ValueError) as exc:
        return _error(command, "invalid-input", exc)
    if args.version:
        return CommandResult("ok", _payload("version", version=__version__), f"nagata {__version__} (schema {SCHEMA})")
    if not args.command:
        return _error("", "invalid-input", _UsageError("missing subcommand"))
    try:
        if hasattr(args, "cls"):
            # parsed here rather than as an argparse type so the error keeps its position
            args.cls = parse_class(args.cls)
        return args.func(args)
    except (InternalError, InstabilityError) as exc:
        return _error(args.command, "internal-error", exc)
    except ValidationError as exc:
        return _error(args.command, "validation-failed", exc)
    except (_UsageError, NagataError, ValueError) as exc:
        return _error(args.command, "invalid-input", exc)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    result = run(argv)
    as_json = "--json" in argv
    if as_json:
        print(json.dumps(result.payload, indent=2))
    elif result.status == "ok" or result.status == "validation-failed":
        print(result.human_text)
    else:
        print(result.human_text, file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
