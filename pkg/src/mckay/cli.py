"""Command line entry point: ``mckay <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from collections import Counter
from typing import Optional, Sequence

from . import ar, quiver as qv, reps, verify
from .errors import InvalidSpec, McKayError, OrderCapExceeded
from .groups import (
    DEFAULT_CAP,
    GroupSpec,
    PPrime,
    ProductWithCyclic,
    conductor,
    conjugacy_classes,
    is_small,
    order,
    parse_spec,
)


class Failure(Exception):
    """A requested check did not pass (exit status 1)."""


def write_output(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".mckay-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _spec(text: str, max_order: int) -> GroupSpec:
    spec = parse_spec(text)
    if order(spec) > max_order:
        raise OrderCapExceeded(f"{spec} has order {order(spec)} > --max-order {max_order}")
    return spec


def _irrep_dims(spec: GroupSpec) -> list[int]:
    if verify.has_table(spec):
        return reps.character_table(spec).dims
    return list(qv.rule_quiver(spec).dims)


def cmd_info(spec: GroupSpec, fmt: str) -> str:
    dims = _irrep_dims(spec)
    data = {
        "group": str(spec),
        "order": order(spec),
        "classes": len(conjugacy_classes(spec)),
        "irreps": len(dims),
        "dims": {str(d): c for d, c in sorted(Counter(dims).items())},
        "conductor": conductor(spec),
        "small": is_small(spec),
    }
    if fmt == "json":
        return json.dumps(data, indent=1) + "\n"
    dim_text = " ".join(f"{d}^{c}" for d, c in data["dims"].items())
    return (f"group      {data['group']}\norder      {data['order']}\nclasses    {data['classes']}\n"
            f"irreps     {data['irreps']}\ndims       {dim_text}\nconductor  {data['conductor']}\n"
            f"small      {'yes' if data['small'] else 'no'}\n")


def cmd_chartable(spec: GroupSpec, fmt: str) -> str:
    table = reps.character_table(spec)
    if fmt == "csv":
        return reps.table_csv(table)
    if fmt == "text":
        return reps.table_text(table)
    raise InvalidSpec(f"character tables export as csv or text, not {fmt}")


def build_quiver(spec: GroupSpec, source: str) -> qv.Quiver:
    if source == "rules":
        return qv.rule_quiver(spec)
    if source == "chars":
        return qv.mckay_quiver(spec)
    rules = qv.rule_quiver(spec)
    if qv.dynkin_type(spec) is not None:
        if not qv.spectral_check(spec, rules):
            raise Failure(f"{spec}: Dynkin data disagrees with the class traces")
        return rules
    chars = qv.mckay_quiver(spec)
    diff = qv.labeled_difference(chars, rules)
    if diff:
        raise Failure(f"{spec}: rule quiver differs from character quiver: " + "; ".join(diff[:5]))
    return chars


def cmd_quiver(spec: GroupSpec, fmt: str, source: str) -> str:
    if fmt not in ("dot", "json"):
        raise InvalidSpec(f"quivers export as dot or json, not {fmt}")
    return qv.export(build_quiver(spec, source), fmt)


_TREES = {"D4": ("D", 4), "D5": ("D", 5), "D6": ("D", 6), "D7": ("D", 7), "D8": ("D", 8),
          "E6": ("E", 6), "E7": ("E", 7), "E8": ("E", 8)}


def ar_reports(target: str, m: int, max_order: int) -> list[ar.Report]:
    key = target.upper().replace("~", "")
    if key in _TREES:
        return [ar.check_lemma6(ar.dynkin_signed_tree(*_TREES[key]), m)]
    spec = _spec(target, max_order)
    if isinstance(spec, PPrime):
        return [ar.p_identification_report(spec.k, 1)]
    if isinstance(spec, ProductWithCyclic) and isinstance(spec.inner, PPrime):
        return [ar.p_identification_report(spec.inner.k, spec.m)]
    if isinstance(spec, ProductWithCyclic) and qv.dynkin_type(spec.inner) is not None:
        kind, idx = qv.dynkin_type(spec.inner)
        tree = ar.dynkin_signed_tree(kind, idx)
        rep = ar.Report(f"{spec}")
        prod = qv.mckay_quiver(spec)
        f = qv.find_isomorphism(prod, ar.bracket_quiver(tree, spec.m))
        rep.add("quiver isomorphic to [T,m]", f is not None, f"T = {kind}~{idx}, m = {spec.m}")
        return [rep, ar.check_lemma6(tree, spec.m)]
    raise InvalidSpec(f"ar-check takes P(k), P(k)xC(l), a Dynkin group times C(m), or a tree name, not {target}")


def _report_text(reports: Sequence[dict]) -> str:
    lines = []
    for r in reports:
        lines.append(r["case"])
        for c in r["checks"]:
            detail = f"  ({c['detail']})" if c["detail"] else ""
            lines.append(f"  {'PASS' if c['pass'] else 'FAIL'}  {c['name']}{detail}")
    return "\n".join(lines) + "\n"


def _render_reports(reports: list[dict], fmt: str, extra: Optional[dict] = None) -> str:
    if fmt == "json":
        payload = dict(extra or {})
        payload["reports"] = reports
        return json.dumps(payload, indent=1) + "\n"
    text = _report_text(reports)
    if extra:
        text += "".join(f"{k}: {v}\n" for k, v in extra.items())
    return text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to FILE (atomically)")
    common.add_argument("--max-order", type=int, default=DEFAULT_CAP, help="refuse groups larger than this")

    p = argparse.ArgumentParser(prog="mckay", description="Character tables and McKay quivers of small groups.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", parents=[common], help="order, classes, irreducibles")
    s.add_argument("spec")
    s.add_argument("--format", choices=["text", "json"], default="text")

    s = sub.add_parser("chartable", parents=[common], help="character table")
    s.add_argument("spec")
    s.add_argument("--format", choices=["csv", "text"], default="text")

    s = sub.add_parser("quiver", parents=[common], help="McKay quiver of the natural representation")
    s.add_argument("spec")
    s.add_argument("--format", choices=["dot", "json"], default="dot")
    src = s.add_mutually_exclusive_group()
    src.add_argument("--rules-only", action="store_true")
    src.add_argument("--chars-only", action="store_true")

    s = sub.add_parser("ar-check", parents=[common], help="layered-quiver comparisons")
    s.add_argument("target", help="P(k), P(k)xC(l), e.g. BTxC(5), or a tree name such as E6")
    s.add_argument("--m", type=int, default=3, help="layer count for a bare tree")
    s.add_argument("--format", choices=["text", "json"], default="text")

    s = sub.add_parser("verify", parents=[common], help="run the property suite")
    s.add_argument("specs", nargs="*", help="grid of group specs (default: built-in grid)")
    s.add_argument("--no-ar", action="store_true", help="skip the layered-quiver checks")
    s.add_argument("--inject-fault", action="store_true", help="perturb one character value per table")
    s.add_argument("--format", choices=["text", "json"], default="json")

    s = sub.add_parser("export", parents=[common], help="csv/text table or dot/json quiver")
    s.add_argument("spec")
    s.add_argument("--format", choices=["csv", "text", "dot", "json"], required=True)
    return p


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, str]:
    """Execute a command; returns (exit status, stdout text)."""
    args = build_parser().parse_args(argv)
    try:
        if args.command == "info":
            text = cmd_info(_spec(args.spec, args.max_order), args.format)
        elif args.command == "chartable":
            text = cmd_chartable(_spec(args.spec, args.max_order), args.format)
        elif args.command == "quiver":
            source = "rules" if args.rules_only else "chars" if args.chars_only else "both"
            text = cmd_quiver(_spec(args.spec, args.max_order), args.format, source)
        elif args.command == "export":
            spec = _spec(args.spec, args.max_order)
            if args.format in ("csv", "text"):
                text = cmd_chartable(spec, args.format)
            else:
                text = cmd_quiver(spec, args.format, "both")
        elif args.command == "ar-check":
            reports = [r.to_dict() for r in ar_reports(args.target, args.m, args.max_order)]
            text = _render_reports(reports, args.format)
            write_output(text, args.out)
            return (0 if all(c["pass"] for r in reports for c in r["checks"]) else 1), text
        else:
            grid = args.specs or None
            for g in grid or ():
                _spec(g, args.max_order)
            result = verify.verify_suite(grid, fault=args.inject_fault, ar=not args.no_ar)
            extra = {"checks": result["checks"], "failures": result["failures"]}
            text = _render_reports(result["reports"], args.format, extra)
            write_output(text, args.out)
            return (0 if result["failures"] == 0 else 1), text
    except Failure as exc:
        sys.stderr.write(f"mckay: {exc}\n")
        return 1, ""
    except McKayError as exc:
        sys.stderr.write(f"mckay: {type(exc).__name__}: {exc}\n")
        return 2, ""
    write_output(text, args.out)
    return 0, text


def main(argv: Optional[Sequence[str]] = None) -> int:
    status, _ = run(argv)
    return status


if __name__ == "__main__":
    sys.exit(main())
