"""``qmatcount`` command line: counts, formulas, identity suites, rook data, probes."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import tempfile
import time

from . import formulas as F
from . import oracle, rook, verify
from .errors import BudgetExceeded, InvalidQuery, ParseError, QMatError
from .gf import Character
from .oracle import CLASSES, METHODS, CountQuery
from .polyprobe import probe
from .support import (SupportSet, complement, diagonal_prefix, fano_support, graph_support,
                      skew_shape, straight_shape)

SCHEMA = "qmatcount/1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


# -- shape DSL ------------------------------------------------------------------------
#
#   spec     := "diag:" INT | "straight:" ints | "skew:" ints "/" ints | "fano" | "none"
#             | "complement(" spec ")" | "explicit:[" cells? "]" | "graph:" edges
#   ints     := INT ("," INT)*
#   cells    := "(" INT "," INT ")" ("," "(" INT "," INT ")")*
#   edges    := INT "-" INT ("," INT "-" INT)*


class _Parser:
    _int = re.compile(r"\d+")

    def __init__(self, text: str, n: int | None, m: int | None = None):
        self.text = text
        self.pos = 0
        self.n = n
        self.m = n if m is None else m

    def fail(self, *expected):
        raise ParseError(self.text, self.pos, expected)

    def peek(self, token: str) -> bool:
        return self.text.startswith(token, self.pos)

    def eat(self, token: str) -> None:
        if not self.peek(token):
            self.fail(repr(token))
        self.pos += len(token)

    def integer(self) -> int:
        m = self._int.match(self.text, self.pos)
        if not m:
            self.fail("integer")
        self.pos = m.end()
        return int(m.group())

    def ints(self) -> list[int]:
        out = [self.integer()]
        while self.peek(","):
            self.pos += 1
            out.append(self.integer())
        return out

    def size(self) -> int:
        if self.n is None:
            self.fail("a grid size (pass --n)")
        return self.n

    def spec(self) -> SupportSet:
        start = self.pos
        for keyword in ("diag:", "straight:", "skew:", "fano", "none", "complement(",
                        "explicit:[", "graph:"):
            if self.peek(keyword):
                self.pos += len(keyword)
                try:
                    return getattr(self, "_" + keyword.strip(":[(").lower())()
                except (QMatError, ValueError) as exc:
                    if isinstance(exc, ParseError):
                        raise
                    self.pos = start
                    raise ParseError(self.text, start, (f"a valid shape ({exc})",)) from exc
        self.fail("diag:", "straight:", "skew:", "fano", "none", "complement(", "explicit:[",
                  "graph:")

    def _diag(self):
        return diagonal_prefix(self.size(), self.integer())

    def _straight(self):
        return straight_shape(self.ints(), self.size())

    def _skew(self):
        lam = self.ints()
        self.eat("/")
        return skew_shape(lam, self.ints(), self.size())

    def _fano(self):
        return fano_support()

    def _none(self):
        n = self.size()
        return SupportSet.of(self.m, n)

    def _complement(self):
        inner = self.spec()
        self.eat(")")
        return complement(inner)

    def _explicit(self):
        n = self.size()
        cells = []
        if not self.peek("]"):
            while True:
                self.eat("(")
                i = self.integer()
                self.eat(",")
                j = self.integer()
                self.eat(")")
                cells.append((i, j))
                if not self.peek(","):
                    break
                self.pos += 1
        self.eat("]")
        return SupportSet.of(self.m, n, cells)

    def _graph(self):
        edges = []
        while True:
            u = self.integer()
            self.eat("-")
            edges.append((u, self.integer()))
            if not self.peek(","):
                break
            self.pos += 1
        vertices = max(max(e) for e in edges)
        return graph_support(vertices, edges)


def parse_shape_spec(text: str, n: int | None = None, m: int | None = None) -> SupportSet:
    """Parse a forbidden-set description; ``n`` (and ``m`` for rows) size the shapes that need it.

    Offsets in errors refer to the stripped text.
    """
    p = _Parser(text.strip(), n, m)
    S = p.spec()
    if p.pos != len(p.text):
        p.fail("end of input")
    return S


# -- reports ---------------------------------------------------------------------------


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qmat-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _rows_to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    keys = list(rows[0])
    for row in rows[1:]:
        keys.extend(k for k in row if k not in keys)
    writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: json.dumps(v) if isinstance(v, (dict, list)) else v
                         for k, v in row.items()})
    return buf.getvalue()


def emit(args, report: dict, rows: list[dict] | None = None) -> None:
    if args.format == "csv":
        text = _rows_to_csv(rows if rows is not None else [report["result"]])
    else:
        text = json.dumps(report, indent=2, sort_keys=False) + "\n"
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def _report(verb: str, args, inputs: dict, result: dict, elapsed: float) -> dict:
    inputs = dict(inputs, workers=args.workers, budget=args.budget)
    return {"schema": SCHEMA, "verb": verb, "inputs": inputs, "result": result,
            "timing": {"elapsed_seconds": round(elapsed, 6)}}


# -- verbs ---------------------------------------------------------------------------------


def _support_arg(args, m: int | None, n: int | None) -> SupportSet:
    if args.support is None:
        if n is None:
            raise InvalidQuery("--n is required without a fano or graph support")
        return SupportSet.of(m, n)
    return parse_shape_spec(args.support, n, m)


def cmd_count(args) -> int:
    n = args.n
    m = args.m if args.m is not None else n
    S = _support_arg(args, m, n)
    m, n = S.m, S.n
    r = None if args.rank in (None, "all") else int(args.rank)
    ch = None if args.character is None else Character.parse(args.character)
    cls = args.cls
    if ch is not None and cls == "symmetric":
        cls = "symmetric_with_character"
    query = CountQuery(m, n, S, r, args.q, cls, ch)
    t0 = time.perf_counter()
    cv = oracle.count_restricted(query, method=args.method, workers=args.workers,
                                 budget=args.budget)
    result = {"value": str(cv.value), "method": cv.method, "work": str(cv.work)}
    if cv.distribution is not None:
        result["distribution"] = {str(k): str(v) for k, v in sorted(cv.distribution.items())}
    inputs = {"m": m, "n": n, "q": args.q, "rank": "all" if r is None else r, "class": cls,
              "character": None if ch is None else str(ch), "support": args.support,
              "method": args.method}
    emit(args, _report("count", args, inputs, result, time.perf_counter() - t0))
    return EXIT_OK


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise SystemExit(_usage(f"formula {args.name} needs {', '.join(missing)}"))


def _usage(msg: str) -> int:
    print(f"qmatcount: error: {msg}", file=sys.stderr)
    return EXIT_USAGE


FORMULAS = ("q_number", "q_factorial", "q_double_factorial", "frect", "matz", "g", "sym",
            "sym_rank", "sym_rank_char", "sym0_even", "sk", "sq", "z", "y", "sym0_char", "symz",
            "derangement", "partial_involution")


def _psi(args):
    if args.psi in (None, "both"):
        return "both"
    return int(Character.parse(args.psi))


def cmd_formula(args) -> int:
    name, q = args.name, args.q
    method = args.method
    t0 = time.perf_counter()
    if name in ("q_number", "q_factorial", "q_double_factorial"):
        _need(args, "n", "q")
        value = F.q_basics(name[2:], args.n, q)
    elif name == "frect":
        _need(args, "k", "n", "q")
        value = F.f_rect(args.k, args.n, q, method or "closed")
    elif name == "matz":
        _need(args, "n", "k", "rank", "q")
        value = F.matz_count(args.n, args.k, args.rank, q)
    elif name == "g":
        _need(args, "n", "rank", "q")
        value = F.g_zero_diag(args.n, args.rank, q, method or "recursive")
    elif name == "sym":
        _need(args, "n", "q")
        value = F.sym_formulas("invertible", args.n, q=q)
    elif name == "sym_rank":
        _need(args, "n", "rank", "q")
        value = F.sym_formulas("rank", args.n, args.rank, q=q)
    elif name == "sym_rank_char":
        _need(args, "n", "rank", "psi", "q")
        value = F.sym_formulas("rank_char", args.n, args.rank, _psi(args), q=q)
    elif name == "sym0_even":
        _need(args, "n", "rank", "q")
        value = F.sym0_even_q(args.n, args.rank, q)
    elif name == "sk":
        _need(args, "n", "rank", "q")
        value = F.sk_count(args.n, args.rank, q, method or "recursive")
    elif name == "sq":
        _need(args, "m", "psi", "q")
        value = F.sq_table(args.m, q, _psi(args))
    elif name in ("z", "y"):
        _need(args, "n", "q")
        value = F.bilinear_zy(name, args.n, q)
    elif name == "sym0_char":
        _need(args, "n", "k", "rank", "psi", "q")
        value = F.sym0_char_recursive(args.n, args.k, args.rank, _psi(args), q)
    elif name == "symz":
        _need(args, "n", "k", "q")
        value = F.symz_count(args.n, args.k, _psi(args), q, method or "recursive")
    elif name == "derangement":
        _need(args, "n")
        value = F.combinatorial_limits("derangement", args.n)
    else:
        _need(args, "n", "rank")
        value = F.combinatorial_limits("partial_involution", args.n, args.rank)
    inputs = {k: getattr(args, k) for k in ("name", "m", "n", "k", "rank", "psi", "q", "method")}
    emit(args, _report("formula", args, inputs, {"value": str(value)}, time.perf_counter() - t0))
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    q_filter = None if args.q is None else [args.q]
    t0 = time.perf_counter()
    suites, rows, timings = [], [], {}
    for name in names:
        rep = verify.run_suite(name, workers=args.workers, budget=args.budget, q_filter=q_filter)
        checks = [c.as_dict() for c in rep.checks]
        suites.append({"suite": name, "passed": rep.passed, "checks": len(checks),
                       "failures": [c for c in checks if not c["passed"]],
                       "results": checks if args.full else None})
        timings[name] = round(rep.elapsed, 6)
        rows.extend(dict(suite=name, **c) for c in checks)
        if not args.quiet:
            print(f"{'PASS' if rep.passed else 'FAIL'} {name}: {len(checks)} checks "
                  f"({rep.elapsed:.1f}s)", file=sys.stderr)
    passed = all(s["passed"] for s in suites)
    result = {"passed": passed, "suites": suites}
    report = _report("verify", args, {"suite": args.suite, "q": args.q}, result,
                     time.perf_counter() - t0)
    report["timing"]["suites"] = timings
    emit(args, report, rows)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_rook(args) -> int:
    n = args.n
    S = _support_arg(args, n, n)
    n = S.n
    t0 = time.perf_counter()
    ranks = range(min(S.m, S.n) + 1) if args.rank is None else [args.rank]
    board = complement(S)
    out = []
    for r in ranks:
        entry = {"rank": r, "t1": str(rook.rook_count_T1(S.m, S.n, S, r)),
                 "q_rook_polynomial": str(rook.q_rook_polynomial(board, r))}
        if args.q is not None:
            res = rook.q_analogue_check(S.m, S.n, S, r, args.q, workers=args.workers,
                                        budget=args.budget)
            entry.update(count=str(res.count), modulus=str(res.modulus),
                         count_residue=str(res.count_residue),
                         rook_residue=str(res.rook_residue), holds=res.holds)
        out.append(entry)
    ok = all(e.get("holds", True) for e in out)
    inputs = {"n": n, "support": args.support, "rank": args.rank, "q": args.q}
    emit(args, _report("rook", args, inputs, {"ranks": out, "passed": ok},
                       time.perf_counter() - t0), out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_probe(args) -> int:
    n = args.n
    m = args.m if args.m is not None else n
    S = _support_arg(args, m, n)
    m, n = S.m, S.n
    qs = [int(x) for x in args.qs.split(",")]
    t0 = time.perf_counter()
    template = CountQuery(m, n, S, args.rank, qs[0], args.cls)
    res = probe(template, qs, holdout=args.holdout, workers=args.workers, budget=args.budget)
    result = {
        "verdict": res.verdict,
        "fitted": None if res.fitted is None else str(res.fitted),
        "samples": [[q, str(v)] for q, v in res.samples],
        "residuals": [[q, str(p), str(a)] for q, p, a in res.residuals],
        "degree_bound": res.degree_bound,
        "underdetermined": res.underdetermined,
        "caveat": res.caveat,
        "parity_fits": {k: str(v) for k, v in res.parity_fits.items()},
    }
    inputs = {"m": m, "n": n, "support": args.support, "rank": args.rank, "class": args.cls,
              "qs": qs, "holdout": args.holdout}
    report = _report("probe", args, inputs, result, time.perf_counter() - t0)
    report["timing"]["per_q"] = {str(q): round(t, 6) for q, t in res.timings.items()}
    emit(args, report)
    return EXIT_OK


def cmd_bruhat(args) -> int:
    S = None if args.support is None else parse_shape_spec(args.support, args.n)
    t0 = time.perf_counter()
    cells = oracle.bruhat_cell_counts(args.n, args.q, S, workers=args.workers,
                                      budget=args.budget)
    total = sum(v.value for v in cells.values())
    mod = (args.q - 1) ** (args.n + 1)
    rows = []
    for w in sorted(cells, key=lambda p: p.images):
        value = cells[w].value
        rows.append({"w": str(w), "derangement": w.is_derangement(), "count": str(value),
                     "residue": str(value % mod)})
    result = {"cells": rows, "total": str(total)}
    if S is None:
        result["f_nn"] = str(F.f_rect(args.n, args.n, args.q))
        result["passed"] = total == F.f_rect(args.n, args.n, args.q)
    inputs = {"n": args.n, "q": args.q, "support": args.support}
    emit(args, _report("bruhat", args, inputs, result, time.perf_counter() - t0), rows)
    return EXIT_OK if result.get("passed", True) else EXIT_FAIL


# -- argument parsing --------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--workers", type=int, default=oracle.default_workers())
    p.add_argument("--budget", type=int, default=None,
                   help="work budget (default: $QMAT_BUDGET or 2^34)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write the report here (atomically) instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmatcount",
                                     description="Count matrices over GF(q) with forbidden zeros.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("count", help="oracle count by enumeration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--rank", default=None, help="integer or 'all'")
    p.add_argument("--support", help="forbidden-set spec, e.g. diag:3 or straight:2,1")
    p.add_argument("--class", dest="cls", choices=CLASSES, default="general")
    p.add_argument("--character", choices=("+", "-"))
    p.add_argument("--method", choices=("auto",) + METHODS, default="auto")
    _common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("formula", help="evaluate a closed formula or recursion")
    p.add_argument("--name", choices=FORMULAS, required=True)
    for flag in ("m", "n", "k", "rank", "q"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--psi", choices=("+", "-", "both"))
    p.add_argument("--method", choices=("closed", "recursive"))
    _common(p)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("verify", help="run a named identity suite")
    p.add_argument("--suite", choices=("all",) + tuple(verify.SUITES), required=True)
    p.add_argument("--q", type=int, help="restrict the suite to this q")
    p.add_argument("--full", action="store_true", help="include every check in the report")
    p.add_argument("--quiet", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rook", help="rook numbers and the q = 1 congruence")
    p.add_argument("--n", type=int)
    p.add_argument("--support")
    p.add_argument("--rank", type=int)
    p.add_argument("--q", type=int)
    _common(p)
    p.set_defaults(func=cmd_rook)

    p = sub.add_parser("probe", help="fit counts over several q")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--support")
    p.add_argument("--rank", type=int)
    p.add_argument("--class", dest="cls", choices=CLASSES, default="general")
    p.add_argument("--qs", required=True, help="comma-separated q values")
    p.add_argument("--holdout", type=int, default=1)
    _common(p)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("bruhat", help="zero-diagonal counts per Bruhat cell")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--support")
    _common(p)
    p.set_defaults(func=cmd_bruhat)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget is None:
        args.budget = oracle.default_budget()
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"qmatcount: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except QMatError as exc:
        return _usage(str(exc))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
