"""
Command-line front end.

Exit codes: 0 success, 1 negative verdict (not free, not positively curved,
failed suite), 2 malformed input.  Payloads go to stdout as JSON (or CSV for
streams); diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys
from typing import Iterable, Sequence

from . import fixed_point as fp
from .atlas import NotCohomogeneityOne, descriptor_for, group_diagram
from .espaces import (
    ClassificationError, E2Params, EschParams, classify_family, esch_to_e2, parse_space,
)
from .exact_arith import RationalAngle
from .group_catalog import (
    CapExceeded, FiniteIsometryGroup, IsometryTuple, JCoset, Torus, build_group, close_subgroup,
    lift_su2_group,
)
from .invariants import e2_invariants
from .search import SUITES, SweepConfig, default_jobs, enumerate_canonical, verify_theorems

log = logging.getLogger("eschenburg")

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


class InputError(ValueError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False)


def _emit_stream(rows: Iterable[dict], fmt: str, out) -> None:
    rows = list(rows)
    if fmt == "json":
        for r in rows:
            out.write(_dump(r) + "\n")
        return
    fields: list[str] = []
    for r in rows:
        fields += [k for k in r if k not in fields]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: v if isinstance(v, (str, int, float, bool)) or v is None else _dump(v)
                         for k, v in r.items()})
    out.write(buf.getvalue())


# --------------------------------------------------------------------------
# input parsing


def _space(text: str):
    try:
        return parse_space(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


_ELEM = re.compile(r"^\s*([TJ])\((-?\d+)/(\d+)\)\s*$")


def _su2(text: str):
    m = _ELEM.match(text)
    if not m:
        raise InputError(f"SU(2) element must look like T(a/b) or J(a/b), got {text!r}")
    angle = RationalAngle(int(m.group(2)), int(m.group(3)))
    return Torus(angle) if m.group(1) == "T" else JCoset(angle)


def load_generators(path: str) -> list[IsometryTuple]:
    """JSON list of {"w1": "a/b", "g1": "T(a/b)", "w2": ..., "g2": ...}; missing keys are trivial."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read generator file {path}: {exc}") from None
    if not isinstance(raw, list):
        raise InputError("generator file must hold a JSON list")
    gens = []
    for item in raw:
        try:
            gens.append(IsometryTuple(
                w1=RationalAngle.parse(item.get("w1", "0/1")),
                g1=_su2(item.get("g1", "T(0/1)")),
                w2=RationalAngle.parse(item.get("w2", "0/1")),
                g2=_su2(item.get("g2", "T(0/1)")),
            ))
        except (AttributeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad generator {item!r}: {exc}") from None
    return gens


def _group(spec: str, side: str) -> FiniteIsometryGroup:
    if spec.startswith("@"):
        try:
            return close_subgroup(load_generators(spec[1:]))
        except CapExceeded as exc:
            raise InputError(str(exc)) from None
    try:
        return lift_su2_group(build_group(spec), side)
    except (ValueError, KeyError) as exc:
        raise InputError(f"unknown group {spec!r}: {exc}") from None


# --------------------------------------------------------------------------
# commands


def cmd_classify(args, out) -> int:
    params = _space(args.space)
    cls = classify_family(params)
    desc = descriptor_for(params, cls)
    payload = {"space": str(params)}
    payload.update(cls.to_json())
    payload["iso"] = desc.full_group or desc.identity_component
    payload["isometry"] = desc.to_json()
    out.write(_dump(payload) + "\n")
    return OK


def cmd_invariants(args, out) -> int:
    params = _space(args.space)
    if isinstance(params, EschParams):
        params = esch_to_e2(params)
    if not isinstance(params, E2Params):
        raise InputError("invariants are defined for E2 triples only")
    inv = e2_invariants(params)
    if inv.r == 0:
        raise InputError(f"H^4 of {params} is infinite (r = 0); no Pontrjagin residue")
    out.write(_dump(dict(space=str(params), **inv.to_json())) + "\n")
    return OK


def cmd_diagram(args, out) -> int:
    params = _space(args.space)
    out.write(_dump(dict(space=str(params), **group_diagram(params).to_json())) + "\n")
    return OK


def cmd_certify(args, out) -> int:
    params = _space(args.space)
    if not isinstance(params, (E2Params, EschParams)):
        raise InputError("freeness certificates are available for Eschenburg spaces only")
    classify_family(params)
    sides = ["left", "right"] if args.side == "both" else [args.side]
    certs = []
    for side in sides:
        if args.group in ("factor", "so3", "su2"):
            try:
                certs.append(fp.so3_factor_is_free(params, side))
            except fp.NoSuchFactor as exc:
                raise InputError(str(exc)) from None
        else:
            group = _group(args.group, side)
            try:
                certs.append(fp.action_is_free(params, group, args.group))
            except fp.UnsupportedFactor as exc:
                raise InputError(str(exc)) from None
        if args.group.startswith("@"):
            break
    docs = [dict(c.to_json(), side=c.side or side) for c, side in zip(certs, sides)]
    out.write(_dump(docs[0] if len(docs) == 1 else docs) + "\n")
    return OK if any(c.free for c in certs) else NEGATIVE


def _parse_shard(text: str) -> tuple[int, int]:
    try:
        i, n = (int(x) for x in text.split("/"))
    except ValueError:
        raise InputError(f"shard must be i/n, got {text!r}") from None
    return i, n


def cmd_enumerate(args, out) -> int:
    try:
        config = SweepConfig(args.bound, args.family, _parse_shard(args.shard))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rows = []
    for e in enumerate_canonical(config):
        cls = classify_family(e)
        rows.append({"space": list(e.p), "family": str(cls.family), "cohomogeneity": cls.cohomogeneity})
    _emit_stream(rows, args.format, out)
    return OK


def cmd_verify(args, out) -> int:
    ranges = {k: v for k, v in (("bound", args.bound), ("max_p", args.max_p), ("max_q", args.max_q),
                                ("max_k", args.max_k), ("count", args.count)) if v is not None}
    report = verify_theorems(args.suite, jobs=args.jobs, **ranges)
    lines = report.lines() if args.records else [dict(report.summary, record="summary")]
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            _emit_stream(report.lines(), args.format, fh)
    _emit_stream(lines, args.format, out)
    log.info("suite %s: %s", args.suite, "pass" if report.passed else "FAIL")
    return OK if report.passed else NEGATIVE


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eschenburg", description=__doc__.strip().splitlines()[0])
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="family, cohomogeneity and isometry group")
    p.add_argument("--space", required=True)
    p.set_defaults(func=cmd_classify, stream=False)

    p = sub.add_parser("invariants", help="H^4 order, p1 residue, vertex lens orders")
    p.add_argument("--space", required=True)
    p.set_defaults(func=cmd_invariants, stream=False)

    p = sub.add_parser("diagram", help="cohomogeneity-one group diagram")
    p.add_argument("--space", required=True)
    p.set_defaults(func=cmd_diagram, stream=False)

    p = sub.add_parser("certify-free", help="freeness certificate for a finite group or SU(2) factor")
    p.add_argument("--space", required=True)
    p.add_argument("--group", default="factor",
                   help="catalog name (cyclic:n, bindihedral:n, quaternion8, 2T, 2O, 2I), "
                        "'factor' for the whole SU(2) factor, or @file.json with generators")
    p.add_argument("--side", choices=("left", "right", "both"), default="right")
    p.set_defaults(func=cmd_certify, stream=False)

    p = sub.add_parser("enumerate", help="canonical free positively curved E2 triples")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--family")
    p.add_argument("--shard", default="0/1")
    p.set_defaults(func=cmd_enumerate, stream=True)

    p = sub.add_parser("verify", help="run a theorem-verification suite")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--bound", type=int)
    p.add_argument("--max-p", type=int)
    p.add_argument("--max-q", type=int)
    p.add_argument("--max-k", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.add_argument("--records", action="store_true", help="emit per-case records before the summary")
    p.add_argument("--output", help="also write the full JSON-lines report here")
    p.set_defaults(func=cmd_verify, stream=True)
    return ap


def _error(out, kind: str, message: str, **extra) -> None:
    out.write(_dump(dict(error=kind, message=message, **extra)) + "\n")
    print(f"eschenburg: {message}", file=sys.stderr)


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:
            return OK
        _error(out, "UsageError", "invalid command line")
        return INPUT_ERROR
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    if args.format == "csv" and not args.stream:
        _error(out, "UsageError", f"{args.command} produces a single JSON object; csv is for streams")
        return INPUT_ERROR
    try:
        return args.func(args, out)
    except InputError as exc:
        _error(out, "InputError", str(exc))
        return INPUT_ERROR
    except ClassificationError as exc:
        _error(out, type(exc).__name__, str(exc), condition=getattr(exc, "condition", None))
        return NEGATIVE
    except NotCohomogeneityOne as exc:
        _error(out, "NotCohomogeneityOne", str(exc))
        return NEGATIVE


def main() -> None:
    sys.exit(run())
