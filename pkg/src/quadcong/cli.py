"""Command-line interface: ``quadcong <command> ...``.

Exit codes: 0 success, 1 a checked identity failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import congruence as cg
from .arith import is_discriminant
from .cfrac import InvalidIrrational, QuadIrr, expand, hirzebruch_psi
from .classgroup import kmz_check
from .dedekind import dedekind_sum
from .orders import (
    InvariantError,
    class_number_imag,
    fundamental_unit,
    narrow_class_number_real,
    wide_class_number_real,
)

THEOREMS = ("1.1i", "1.1ii", "1.1iii", "1.2", "1.3", "conjecture", "redei", "all")
_THEOREM_CHECK = {"1.2": "thm12", "1.3": "thm13", "conjecture": "conj", "redei": "redei", "all": "all"}
ROW_COLUMNS = cg.TABLE_COLUMNS + ("h32p", "thm12_ok", "thm13_ok", "conj_ok", "thm_redei_ok")
THM11_COLUMNS = ("d1", "d2", "lhs", "h", "psi", "rhs", "ok")


class UsageError(Exception):
    pass


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    return value


def render(records: list[dict], columns, fmt: str) -> str:
    if fmt == "json":
        payload = [{c: _jsonable(r[c]) for c in columns} for r in records]
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in records:
            writer.writerow([_fmt(r[c]) for c in columns])
        return buf.getvalue()
    cells = [list(columns)] + [[_fmt(r[c]) for c in columns] for r in records]
    widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
    lines = ["  ".join(v.rjust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def _row_record(r: cg.CongruenceRow) -> dict:
    return {c: getattr(r, c) for c in ROW_COLUMNS}


def _thm11_record(r: cg.Thm11Result) -> dict:
    return {"d1": r.d1, "d2": r.d2, "lhs": r.lhs, "h": r.h, "psi": r.psi, "rhs": r.rhs, "ok": r.ok}


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)


def cmd_psi(args) -> int:
    if args.p is not None:
        try:
            psi1, psi2 = cg.psi_pair(args.p)
        except ValueError as exc:
            raise UsageError(str(exc))
        print(f"psi1={psi1} psi2={psi2}")
        return 0
    if None in (args.a, args.b, args.delta):
        raise UsageError("psi needs either --p or all of --a --b --delta")
    try:
        xi = QuadIrr(args.a, args.b, args.delta)
    except InvalidIrrational as exc:
        raise UsageError(str(exc))
    cf = expand(xi)
    period = ",".join(map(str, cf.period))
    preperiod = ",".join(map(str, cf.preperiod))
    print(f"period=[{period}] preperiod=[{preperiod}] psi={hirzebruch_psi(xi)}")
    return 0


def cmd_verify(args) -> int:
    if args.pmax < 3:
        raise UsageError("--pmax must be at least 3")
    if args.theorem.startswith("1.1"):
        case = args.theorem[3:]
        results = cg.verify_thm11(case, args.pmax, args.max_delta, jobs=args.jobs)
        records = [_thm11_record(r) for r in results]
        failed = sum(not r.ok for r in results)
        text = render(records, THM11_COLUMNS, args.format)
        text += f"checked={len(results)} failed={failed}\n"
        _emit(text, args.out)
        return 1 if failed else 0

    which = _THEOREM_CHECK[args.theorem]
    rows = cg.sweep(args.pmin, args.pmax, which, jobs=args.jobs)
    failed = sum(1 for r in rows if cg.row_failures(r, which))
    text = render([_row_record(r) for r in rows], ROW_COLUMNS, args.format)
    text += f"checked={len(rows)} failed={failed}\n"
    _emit(text, args.out)
    if which in ("conj", "all"):
        for r in rows:
            if not r.conj_ok and r.p > cg.CONJECTURE_OBSERVED_LIMIT:
                print(f"WARN conjecture congruence fails at p={r.p} (H1={r.H1_fact})",
                      file=sys.stderr)
    return 1 if failed else 0


def cmd_table(args) -> int:
    rows = cg.table_rows(args.which, jobs=args.jobs)
    records = [{c: getattr(r, c) for c in cg.TABLE_COLUMNS} for r in rows]
    _emit(render(records, cg.TABLE_COLUMNS, args.format), args.out)
    return 0


def cmd_classnum(args) -> int:
    delta = args.delta
    if not is_discriminant(delta):
        raise UsageError(f"{delta} is not a quadratic discriminant")
    if delta < 0:
        print(class_number_imag(delta))
    else:
        print(f"h={wide_class_number_real(delta)} h_plus={narrow_class_number_real(delta)}")
    return 0


def cmd_unit(args) -> int:
    if args.delta <= 0 or not is_discriminant(args.delta):
        raise UsageError(f"{args.delta} is not a positive quadratic discriminant")
    q, r, norm = fundamental_unit(args.delta)
    print(f"q={q} r={r} norm={norm}")
    return 0


def cmd_dedekind(args) -> int:
    try:
        print(dedekind_sum(args.h, args.k))
    except ValueError as exc:
        raise UsageError(str(exc))
    return 0


def cmd_kmz(args) -> int:
    try:
        res = kmz_check(args.d1, args.d2, args.f)
    except ValueError as exc:
        raise UsageError(str(exc))
    print(f"lhs={res.lhs} rhs={res.rhs} equal={_fmt(res.equal)}")
    return 0 if res.equal else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadcong",
        description="Class numbers, Hirzebruch sums and congruences for quadratic orders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("psi", help="continued fraction and Hirzebruch sum")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--p", type=int, help="prime 3 mod 4: print both Psi values for 32p")
    p.set_defaults(func=cmd_psi)

    def add_output(sp, formats=("pretty", "csv", "json"), default="pretty"):
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--jobs", type=int, default=None,
                        help="worker processes (default: $QUADCONG_JOBS or CPU count)")
        sp.add_argument("--out", help="also write the report to this path")

    p = sub.add_parser("verify", help="sweep a theorem over primes")
    p.add_argument("--theorem", choices=THEOREMS, required=True)
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--pmin", type=int, default=3)
    p.add_argument("--max-delta", type=int, default=None,
                   help="for 1.1 cases: only pairs with d1*d2 <= this bound")
    add_output(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="regenerate an appendix table")
    p.add_argument("--which", choices=("A1", "A2", "A3"), required=True)
    add_output(p, default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("classnum", help="class number of a quadratic order")
    p.add_argument("--delta", type=int, required=True)
    p.set_defaults(func=cmd_classnum)

    p = sub.add_parser("unit", help="fundamental unit q + r*omega")
    p.add_argument("--delta", type=int, required=True)
    p.set_defaults(func=cmd_unit)

    p = sub.add_parser("dedekind", help="Dedekind sum s(h, k)")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_dedekind)

    p = sub.add_parser("kmz", help="both sides of the class-number identity")
    p.add_argument("--d1", type=int, required=True)
    p.add_argument("--d2", type=int, required=True)
    p.add_argument("--f", type=int, default=1)
    p.set_defaults(func=cmd_kmz)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", None) is not None and args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvariantError, AssertionError) as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
