"""Argument handling, command dispatch and rendering for the ``qdual`` tool."""

from __future__ import annotations

import argparse
import json
import os
import sys
from itertools import product as iproduct

from ..errors import InputError, MathError, QDualError, VerificationFailed
from ..ncalg import NcElement

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_MATH, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4
SUITES = ("hopf", "pbw", "drinfeld", "limits", "all")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


class Outcome:
    """What a command produced: a result payload, text lines and an exit code."""

    def __init__(self, result, lines, code=EXIT_OK, diagnostics=None):
        self.result = result
        self.lines = lines
        self.code = code
        self.diagnostics = diagnostics or []


# algebra loading ----------------------------------------------------------------

def load_algebra(spec: str):
    """(entry or None, presentation, label) for a catalog name or a file path."""
    from ..catalog import catalog_get
    from .presfile import parse_presentation_file

    if os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            p = parse_presentation_file(fh.read())
        return None, p, p.name
    entry = catalog_get(spec)
    return entry, entry.presentation, entry.name


def _need_entry(entry, label: str, what: str):
    if entry is None:
        raise InputError(f"{label}: {what} needs a catalog entry, not a presentation file")
    return entry


def _expr(p, src: str, want_element: bool = True):
    from .parse import parse_expression

    x = parse_expression(src, p)
    if want_element and not isinstance(x, NcElement):
        raise InputError("expected an algebra element, not a tensor")
    return x


def _check_rows(entries) -> list:
    return [{"check": e.check, "item": e.item, "ok": e.ok, "detail": e.detail} for e in entries]


def _check_lines(rows) -> list:
    out = []
    for r in rows:
        mark = "ok  " if r["ok"] else "FAIL"
        tail = f"  [{r['detail']}]" if r["detail"] and not r["ok"] else ""
        out.append(f"{mark} {r['check']}: {r['item']}{tail}")
    return out


# commands -----------------------------------------------------------------------

def cmd_catalog(args, _entry=None, _p=None, _label=None) -> Outcome:
    from ..catalog import catalog_names

    names = catalog_names()
    return Outcome({"entries": names}, names)


def cmd_normalize(args, entry, p, label) -> Outcome:
    x = _expr(p, args.expr, want_element=False)
    return Outcome({"normal_form": str(x)}, [str(x)])


def cmd_coproduct(args, entry, p, label) -> Outcome:
    from ..hopf import iterated_coproduct

    x = _expr(p, args.expr)
    t = iterated_coproduct(x, args.n)
    return Outcome({"n": args.n, "value": str(t)}, [str(t)])


def cmd_delta(args, entry, p, label) -> Outcome:
    from ..hopf import delta_n, delta_via_subsets

    x = _expr(p, args.expr)
    f = delta_via_subsets if args.subsets else delta_n
    t = f(x, args.n)
    method = "subsets" if args.subsets else "direct"
    return Outcome({"n": args.n, "method": method, "value": str(t)}, [str(t)])


def cmd_member(args, entry, p, label) -> Outcome:
    from ..drinfeld import INCONCLUSIVE, NOT_MEMBER, tilde_member

    x = _expr(p, args.expr)
    v = tilde_member(x, p, args.max_n)
    d = v.as_dict()
    lines = [f"element: {v.element}", f"verdict: {v.verdict}"]
    if v.witness is not None:
        lines.append(f"witness: n = {v.witness}")
    for n, val in d["profile"]:
        lines.append(f"  n = {n}: lattice valuation of delta_n is {val}")
    if v.note:
        lines.append(f"note: {v.note}")
    code = {NOT_MEMBER: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}.get(v.verdict, EXIT_OK)
    return Outcome(d, lines, code)


def _tilde(args, entry, label, kind) -> Outcome:
    from ..drinfeld import tilde_F_presentation, tilde_presentation
    from .presfile import serialize

    entry = _need_entry(entry, label, "the tilde construction")
    res = (tilde_presentation if kind == "QUEA" else tilde_F_presentation)(entry)
    text = serialize(res.presentation)
    rows = _check_rows(res.checks)
    result = {"presentation": text, "recipe": dict(entry.tilde_recipe), "checks": rows, "ok": res.ok}
    lines = text.rstrip("\n").split("\n")
    lines.append(f"# {sum(r['ok'] for r in rows)}/{len(rows)} substitution checks passed")
    return Outcome(result, lines, EXIT_OK if res.ok else EXIT_FAIL)


def cmd_tilde(args, entry, p, label) -> Outcome:
    return _tilde(args, entry, label, "QUEA")


def cmd_tilde_f(args, entry, p, label) -> Outcome:
    return _tilde(args, entry, label, "QFA")


def cmd_double_tilde(args, entry, p, label) -> Outcome:
    from ..drinfeld import double_tilde_check

    entry = _need_entry(entry, label, "the double tilde check")
    rep = double_tilde_check(entry, args.max_n)
    rows = _check_rows(rep.checks)
    lines = [f"{k} = {v}" for k, v in rep.double_generators.items()] + _check_lines(rows)
    lines.append(f"double tilde: {'PASS' if rep.ok else 'FAIL'}")
    result = {"double_generators": rep.double_generators, "checks": rows, "ok": rep.ok}
    return Outcome(result, lines, EXIT_OK if rep.ok else EXIT_FAIL)


def cmd_limit(args, entry, p, label) -> Outcome:
    from ..classical import COPOISSON, POISSON, specialize
    from .presfile import serialize

    pp = specialize(p)
    if args.poisson_table and pp.marker != POISSON:
        raise InputError(f"{label}: the limit is co-Poisson, it has no Poisson table")
    if args.cobracket_table and pp.marker != COPOISSON:
        raise InputError(f"{label}: the limit is Poisson, it has no cobracket table")
    rows = pp.table_rows()
    table = [{"entry": k, "value": v} for k, v in rows]
    result = {"marker": pp.marker, "table": table}
    lines = []
    if not (args.poisson_table or args.cobracket_table):
        text = serialize(pp.limit)
        result["presentation"] = text
        lines.extend(text.rstrip("\n").split("\n"))
    lines.append(f"# {pp.marker} limit")
    width = max((len(k) for k, _ in rows), default=0)
    lines.extend(f"{k.ljust(width)}  =  {v}" for k, v in rows)
    return Outcome(result, lines)


def cmd_checkmap(args, entry, p, label) -> Outcome:
    from ..classical import check_generator_map

    entry = _need_entry(entry, label, "checkmap")
    m = entry.generator_map
    if m is None:
        raise InputError(f"{label} declares no specialization map")
    rep = check_generator_map(m)
    rows = _check_rows(rep.entries)
    lines = [f"{g} mod (q-1) -> {v}" for g, v in m.images.items()]
    lines += _check_lines(rows)
    lines.append(f"{rep.source} -> {rep.target}: {'PASS' if rep.ok else 'FAIL'}")
    result = {"target": rep.target, "images": {g: str(v) for g, v in m.images.items()},
              "checks": rows, "ok": rep.ok}
    return Outcome(result, lines, EXIT_OK if rep.ok else EXIT_FAIL)


# verify -------------------------------------------------------------------------

def _row(suite, check, item, ok, detail="") -> dict:
    return {"suite": suite, "check": check, "item": item, "ok": bool(ok), "detail": detail}


def _suite_hopf(entry, p) -> list:
    from ..hopf import check_hopf

    if p.hopf is None:
        return [_row("hopf", "Hopf data present", p.name, False, "no Hopf data")]
    rep = check_hopf(p)
    return [_row("hopf", e.check, e.item, e.ok, e.detail) for e in rep.entries]


def _suite_pbw(entry, p) -> list:
    from ..ncalg import overlap_check

    rep = overlap_check(p)
    rows = [_row("pbw", "overlap", f.word, False, f.difference) for f in rep.failures]
    rows += [_row("pbw", "structure", msg, False) for msg in rep.problems]
    rows.append(_row("pbw", "overlaps resolved", f"{rep.checked}/{rep.total}", rep.ok))
    return rows


def _suite_drinfeld(entry, p) -> list:
    from ..drinfeld import double_tilde_check, tilde_F_presentation, tilde_presentation
    from ..hopf import delta_n, delta_via_subsets

    rows = []
    if p.hopf is not None:
        for g in p.generators:
            x = p.gen(g.name)
            for n in range(5):
                ok = delta_n(x, n) == delta_via_subsets(x, n)
                rows.append(_row("drinfeld", "delta_n = delta via subsets", f"{g.name}, n = {n}", ok))
    if entry is not None and entry.tilde_text:
        build = tilde_presentation if entry.kind == "QUEA" else tilde_F_presentation
        res = build(entry)
        rows += [_row("drinfeld", "tilde " + c.check, c.item, c.ok, c.detail) for c in res.checks]
        rep = double_tilde_check(entry, 3)
        rows += [_row("drinfeld", c.check, c.item, c.ok, c.detail) for c in rep.checks
                 if not c.check.startswith("tilde ")]
    return rows


def _classical_table_rows(p) -> list:
    from ..classical import target_bracket, target_cobracket

    rows = []
    gens = [p.gen(g.name) for g in p.generators]
    names = [g.name for g in p.generators]
    if p.meta.get("bracket"):
        for i, j in iproduct(range(len(gens)), repeat=2):
            s = target_bracket(gens[i], gens[j], p) + target_bracket(gens[j], gens[i], p)
            rows.append(_row("limits", "antisymmetry", f"{{{names[i]}, {names[j]}}}", not s, str(s)))
        for i, j, k in iproduct(range(len(gens)), repeat=3):
            x, y, z = gens[i], gens[j], gens[k]
            jac = (target_bracket(x, target_bracket(y, z, p), p) + target_bracket(y, target_bracket(z, x, p), p)
                   + target_bracket(z, target_bracket(x, y, p), p))
            rows.append(_row("limits", "Jacobi", f"{names[i]}, {names[j]}, {names[k]}", not jac, str(jac)))
    if p.meta.get("cobracket"):
        for g, x in zip(names, gens):
            d = target_cobracket(x, p)
            s = d + d.flip()
            rows.append(_row("limits", "antisymmetry", f"delta({g})", not s, str(s)))
    return rows


def _suite_limits(entry, p) -> list:
    from ..classical import check_generator_map, limit_property_report

    if p.classification not in ("QUEA", "QFA"):
        return _classical_table_rows(p)
    rep = limit_property_report(p)
    rows = [_row("limits", e.check, e.item, e.ok, e.detail) for e in rep.entries]
    if entry is not None and entry.generator_map is not None:
        m = check_generator_map(entry.generator_map)
        rows += [_row("limits", "map " + e.check, e.item, e.ok, e.detail) for e in m.entries]
    return rows


_SUITE_FUNCS = {"hopf": _suite_hopf, "pbw": _suite_pbw, "drinfeld": _suite_drinfeld,
                "limits": _suite_limits}


def run_suite(entry, p, suite: str) -> list:
    names = list(_SUITE_FUNCS) if suite == "all" else [suite]
    rows = []
    for s in names:
        rows.extend(_SUITE_FUNCS[s](entry, p))
    return rows


def cmd_verify(args, entry, p, label) -> Outcome:
    rows = run_suite(entry, p, args.suite)
    ok = all(r["ok"] for r in rows)
    summary = {}
    for r in rows:
        s = summary.setdefault(r["suite"], [0, 0])
        s[0] += r["ok"]
        s[1] += 1
    lines = [f"{s}: {a}/{b} checks passed" for s, (a, b) in summary.items()]
    lines += _check_lines([r for r in rows if not r["ok"]])
    lines.append(f"verify {args.suite}: {'PASS' if ok else 'FAIL'}")
    result = {"suite": args.suite, "ok": ok, "checks": rows,
              "summary": {s: {"passed": a, "total": b} for s, (a, b) in summary.items()}}
    return Outcome(result, lines, EXIT_OK if ok else EXIT_FAIL)


# argument parsing -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="qdual", description="Exact computations with quantum groups and their tilde forms.")
    ap.add_argument("--format", choices=("text", "structured"), default="text")
    # subcommands accept --format too; SUPPRESS keeps them from resetting a global choice
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("text", "structured"), default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, expr=False, algebra=True):
        sp = sub.add_parser(name, help=help_text, parents=[fmt])
        if algebra:
            sp.add_argument("--algebra", required=True, help="catalog name, Name(n), or a file path")
        if expr:
            sp.add_argument("--expr", required=True)
        sp.set_defaults(func=func)
        return sp

    cat = add("catalog", cmd_catalog, "catalog operations", algebra=False)
    cat.add_argument("action", choices=("list",))
    add("normalize", cmd_normalize, "normal form of an expression", expr=True)
    sp = add("coproduct", cmd_coproduct, "iterated coproduct", expr=True)
    sp.add_argument("--n", type=int, default=2)
    sp = add("delta", cmd_delta, "Drinfeld's delta_n", expr=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--subsets", action="store_true", help="use the inclusion-exclusion formula")
    sp = add("member", cmd_member, "bounded membership test for the tilde form", expr=True)
    sp.add_argument("--max-n", type=int, default=4)
    add("tilde", cmd_tilde, "tilde presentation of a QUEA entry")
    add("tilde-f", cmd_tilde_f, "tilde presentation of a QFA entry")
    sp = add("double-tilde", cmd_double_tilde, "regenerate the hat algebra from its tilde")
    sp.add_argument("--max-n", type=int, default=3)
    sp = add("limit", cmd_limit, "specialization at q = 1")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--poisson-table", action="store_true")
    g.add_argument("--cobracket-table", action="store_true")
    add("checkmap", cmd_checkmap, "check the declared specialization map")
    sp = add("verify", cmd_verify, "run a verification suite")
    sp.add_argument("--suite", choices=SUITES, default="all")
    return ap


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, InputError):
        return EXIT_PARSE
    if isinstance(exc, MathError):
        return EXIT_MATH
    if isinstance(exc, VerificationFailed):
        return EXIT_FAIL
    return EXIT_FAIL


def _inputs(args) -> dict:
    skip = {"func", "format", "command", "algebra"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def dispatch(argv) -> tuple[int, str]:
    """Run one command; returns (exit code, rendered output)."""
    argv = list(argv)
    structured = False
    if "--format" in argv:
        i = argv.index("--format")
        structured = i + 1 < len(argv) and argv[i + 1] == "structured"
    args = None
    label = None
    try:
        args = build_parser().parse_args(argv)
        structured = args.format == "structured"
        entry = p = None
        if getattr(args, "algebra", None) is not None:
            entry, p, label = load_algebra(args.algebra)
        for k in ("n", "max_n"):
            if getattr(args, k, None) is not None and getattr(args, k) < 0:
                raise InputError(f"--{k.replace('_', '-')} must be nonnegative")
        out = args.func(args, entry, p, label)
    except (QDualError, ArithmeticError, RecursionError) as exc:
        code = _exit_code(exc) if isinstance(exc, QDualError) else EXIT_MATH
        msg = f"{type(exc).__name__}: {exc}"
        out = Outcome(None, [], code, [msg])
    if structured:
        doc = {
            "command": getattr(args, "command", None) if args else None,
            "algebra": label,
            "inputs": _inputs(args) if args else {"argv": argv},
            "result": out.result,
            "diagnostics": out.diagnostics,
        }
        return out.code, json.dumps(doc, sort_keys=True, indent=2, default=str)
    text = "\n".join(out.lines)
    if out.diagnostics:
        text = "\n".join(filter(None, [text] + [f"error: {d}" for d in out.diagnostics]))
    return out.code, text


def main(argv=None) -> int:
    code, text = dispatch(sys.argv[1:] if argv is None else argv)
    stream = sys.stderr if code in (EXIT_PARSE, EXIT_MATH) and not text.startswith("{") else sys.stdout
    if text:
        print(text, file=stream)
    return code
