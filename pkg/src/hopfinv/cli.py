"""Command line interface: ``hopfinv <command> ...``.

Exit codes: 0 success, 1 usage or input error, 2 a negative verdict
(two algebras distinguished, or an integrality check failed).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable

from .braid import BraidWord, braid_relations, braid_trace, braiding_operator, homcount_crosscheck
from .characters import CharacterTable
from .groups.core import BudgetExceeded, FinGroup, FpGroup, GroupError, count_homs, named_group
from .hopf import (
    HopfError,
    HopfStructure,
    drinfeld_double,
    dual_hopf,
    exponent,
    group_algebra,
    integrals,
    validate,
)
from .indicators import default_tables, fs_indicator, indicator_invariant, kaplansky_check, mixed_indicator
from .invariants import canonical
from .invariants.expr import evaluate, parse
from .invariants.spans import (
    distinguish,
    gram_rank,
    group_automorphism_matrices,
    k0_generators,
    saturation_check,
    span_basis,
)
from .scalars import format_scalar

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2

DEFAULT_N_MAX = 3
DEFAULT_MAX_ORDER = 24
DEFAULT_BRAID_ORDER = 4
DEFAULT_MAX_STRANDS = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


# -- loading -------------------------------------------------------------------------------


def _read_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_group(spec: str) -> FinGroup:
    """A bundled group name (``S3``, ``C2xC4`` ...), a group JSON file, or a group algebra file."""
    if os.path.isfile(spec):
        data = _read_json(spec)
        if "table" in data:
            return FinGroup.from_json(data)
        origin = data.get("origin") or {}
        if origin.get("kind") == "group":
            return FinGroup.from_json(origin["group"])
        raise UsageError(f"{spec} is neither a group file nor a group algebra")
    return named_group(spec)


def load_hopf(spec: str, max_order: int = DEFAULT_MAX_ORDER) -> HopfStructure:
    """``NAME`` (group algebra), ``dual:NAME``, ``double:NAME``, or a group or structure JSON file."""
    if os.path.isfile(spec):
        data = _read_json(spec)
        if "mult" in data:
            return HopfStructure.from_json(data)
        if "table" in data:
            return group_algebra(_checked(FinGroup.from_json(data), max_order))
        raise UsageError(f"{spec} is neither a group nor a structure file")
    kind, _, name = spec.partition(":")
    if not name:
        return group_algebra(_checked(load_group(kind), max_order))
    G = _checked(load_group(name), max_order)
    if kind == "dual":
        return dual_hopf(group_algebra(G))
    if kind == "double":
        return drinfeld_double(G)[0]
    raise UsageError(f"unknown construction {kind!r} (use dual: or double:)")


def _checked(G: FinGroup, max_order: int) -> FinGroup:
    if G.order > max_order:
        raise BudgetExceeded(f"group order {G.order} exceeds --max-order {max_order}")
    return G


def _tables(H: HopfStructure, h_path: str | None, d_path: str | None):
    """(charH table, charD table): characters of H* and of H, defaulting to the bundled ones."""
    chars_H, chars_dual = default_tables(H)
    h_chars = CharacterTable.load(h_path) if h_path else chars_dual
    d_chars = CharacterTable.load(d_path) if d_path else chars_H
    return h_chars, d_chars


# -- output -------------------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return format_scalar(x)


def _emit(args, text: str, data: dict) -> None:
    if args.json:
        print(json.dumps(_jsonable(data), indent=1, sort_keys=True))
    else:
        print(text)


def _vec_text(v) -> str:
    return "[" + ", ".join(format_scalar(c) for c in v) + "]"


# -- commands ------------------------------------------------------------------------------


def cmd_validate(args) -> int:
    H = load_hopf(args.hopf, args.max_order)
    report = validate(H)
    data = {"ok": report.ok, "checks": [
        {"name": c.name, "passed": c.passed, "witness": list(c.witness) if c.witness else None, "detail": c.detail}
        for c in report.checks
    ]}
    _emit(args, report.format() + f"\n{'valid' if report.ok else 'INVALID'}", data)
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_build(args) -> int:
    G = _checked(load_group(args.group), args.max_order)
    if args.kind == "group-algebra":
        H = group_algebra(G)
    elif args.kind == "dual":
        H = dual_hopf(group_algebra(G))
    else:
        H = drinfeld_double(G)[0]
    text = H.dumps()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_integrals(args) -> int:
    H = load_hopf(args.hopf, args.max_order)
    ell, lam = integrals(H)
    value = H.evaluate(lam, ell)
    _emit(
        args,
        f"l = {_vec_text(ell)}\nlam = {_vec_text(lam)}\nlam(l) = {format_scalar(value)}",
        {"l": ell, "lam": lam, "lam_l": value},
    )
    return EXIT_OK


def cmd_exponent(args) -> int:
    H = load_hopf(args.hopf, args.max_order)
    m = exponent(H, args.bound)
    _emit(args, str(m), {"exponent": m})
    return EXIT_OK


def cmd_invariant(args) -> int:
    with open(args.expr_file, encoding="utf-8") as fh:
        expr = parse(fh.read())
    H = load_hopf(args.hopf, args.max_order)
    h_chars, d_chars = _tables(H, args.h_chars, args.d_chars)
    t = evaluate(H, expr, h_chars, d_chars)
    if t.shape == (0, 0):
        value = t.scalar_value()
        _emit(args, format_scalar(value), {"shape": [0, 0], "value": value})
    else:
        _emit(args, t.dump(), {"shape": list(t.shape), "dump": t.dump().splitlines()})
    return EXIT_OK


def cmd_enumerate(args) -> int:
    data = list(canonical.enumerate_canonical(args.i, args.j, args.n_max))
    lines = [f"N={c.N} {c.render()}" for c in data]
    _emit(args, "\n".join(lines + [f"{len(data)} data"]), {"count": len(data), "data": [c.to_json() for c in data]})
    return EXIT_OK


def cmd_span(args) -> int:
    H = load_hopf(args.hopf, args.max_order)
    res = span_basis(H, args.i, args.j, args.budget, workers=args.workers)
    data = {
        "shape": list(res.shape), "dim": res.dim, "profile": res.profile,
        "generators": [c.render() for c in res.generators],
        "basis": [v.dump().splitlines() for v in res.basis],
    }
    _emit(args, res.format(), data)
    return EXIT_OK


def cmd_saturate(args) -> int:
    H = load_hopf(args.hopf, args.max_order)
    autgens = group_automorphism_matrices(H)
    rep = saturation_check(H, autgens, args.i, args.j, args.budget, workers=args.workers)
    data = {
        "shape": list(rep.shape), "span_dim": rep.span_dim, "fixed_dim": rep.fixed_dim,
        "saturated": rep.saturated, "violations": rep.containment_violations, "profile": rep.profile,
    }
    _emit(args, rep.format(), data)
    return EXIT_OK


def cmd_gram(args) -> int:
    H = load_hopf(args.hopf, args.max_order)
    r, da, db = gram_rank(H, args.i, args.j, args.budget, workers=args.workers)
    full = r == da == db
    text = f"pairing ({args.i},{args.j}) x ({args.j},{args.i}): rank {r}, dimensions {da} and {db}: " + (
        "non-degenerate" if full else "degenerate"
    )
    _emit(args, text, {"rank": r, "dims": [da, db], "full_rank": full})
    return EXIT_OK


def cmd_distinguish(args) -> int:
    H1 = load_hopf(args.h1, args.max_order)
    H2 = load_hopf(args.h2, args.max_order)
    v = distinguish(H1, H2, args.budget, workers=args.workers)
    data = {
        "distinguished": v.distinguished, "checked": v.checked, "budget": v.budget,
        "datum": v.datum.to_json() if v.datum else None, "values": list(v.values) if v.values else None,
    }
    _emit(args, v.format(), data)
    return EXIT_NEGATIVE if v.distinguished else EXIT_OK


def cmd_k0(args) -> int:
    H = load_hopf(args.hopf, args.max_order)
    gens = k0_generators(H, args.budget, workers=args.workers)
    lines = [f"{format_scalar(x)}  {c.render()}" for c, x in gens]
    _emit(args, "\n".join(lines), {"generators": [{"value": x, "datum": c.render()} for c, x in gens]})
    return EXIT_OK


def cmd_indicators(args) -> int:
    H = load_hopf(args.hopf, args.max_order)
    chars_H, chars_dual = default_tables(H)
    if args.chars:
        chars_H = CharacterTable.load(args.chars)
    lines, data = [], {"indicator_invariant": {}, "fs": {}, "mixed": {}}
    for n in range(1, args.n_max + 1):
        v = indicator_invariant(H, n)
        data["indicator_invariant"][n] = v
        lines.append(f"lam(l_1...l_{n}) = {format_scalar(v)}")
    if chars_H is not None:
        for name in chars_H.names:
            row = [fs_indicator(H, chars_H, n, name) for n in range(1, args.n_max + 1)]
            data["fs"][name] = row
            lines.append(f"nu_1..{args.n_max}({name}) = " + " ".join(format_scalar(x) for x in row))
    for m in range(1, args.mixed + 1):
        for n in range(1, args.mixed + 1):
            v = mixed_indicator(H, m, n, chars_H, chars_dual)
            data["mixed"][f"{m},{n}"] = v
            lines.append(f"(lam_1...lam_{m})(l_1...l_{n}) = {format_scalar(v)}")
    _emit(args, "\n".join(lines), data)
    return EXIT_OK


def cmd_kaplansky(args) -> int:
    H = load_hopf(args.hopf, args.max_order)
    rep = kaplansky_check(H, args.probes)
    ok = rep.passed and all(p[2] for p in rep.probes)
    data = {
        "dim": rep.dim, "eigenvalues": rep.eigenvalues, "irrep_dims": rep.irrep_dims,
        "passed": rep.passed, "probes": [{"n": n, "value": v, "integer": b} for n, v, b in rep.probes],
        "verdict": "pass" if ok else "fail-integrality",
    }
    _emit(args, rep.format() + f"\nverdict: {data['verdict']}", data)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_homs(args) -> int:
    P = FpGroup.parse(args.presentation)
    G = _checked(load_group(args.group), args.max_order)
    n = count_homs(P, G, workers=args.workers)
    _emit(args, str(n), {"homs": n})
    return EXIT_OK


def cmd_braid_trace(args) -> int:
    G = load_group(args.group)
    if G.order > args.max_group:
        raise BudgetExceeded(f"|G| = {G.order} exceeds --max-group {args.max_group}")
    w = BraidWord.parse(args.word, args.strands)
    if w.strands > args.max_strands:
        raise BudgetExceeded(f"{w.strands} strands exceed --max-strands {args.max_strands}")
    D, R = drinfeld_double(G)
    op = braiding_operator(D, R)
    value = braid_trace(D, R, w, workers=args.workers, op=op)
    lines = [f"tr({w.format()}) on D({G.name})^{w.strands} = {format_scalar(value)}"]
    data: dict = {"word": w.format(), "strands": w.strands, "trace": value}
    if args.relations:
        rels = braid_relations(op, w.strands)
        data["relations"] = [{"relation": r, "holds": ok} for r, ok in rels]
        lines.extend(f"{r}: {'holds' if ok else 'FAILS'}" for r, ok in rels)
    if args.presentation:
        rep = homcount_crosscheck(G, w, FpGroup.parse(args.presentation), args.a)
        data["crosscheck"] = {"count_side": rep.count_side, "homs": rep.homs, "match": rep.match}
        lines.append(rep.format())
    _emit(args, "\n".join(lines), data)
    return EXIT_OK


# -- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hopfinv", description="Exact invariants of semisimple Hopf algebras.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--workers", type=int, default=1, help="worker processes for batch evaluation")
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER, help="largest group order accepted")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, func: Callable, help: str, hopf: bool = True, budget: bool = False, shape: bool = False):
        sp = sub.add_parser(name, help=help)
        if hopf:
            sp.add_argument("hopf", help="NAME, dual:NAME, double:NAME or a JSON file")
        if shape:
            sp.add_argument("i", type=int)
            sp.add_argument("j", type=int)
        if budget:
            sp.add_argument("--budget", type=int, default=DEFAULT_N_MAX, help="largest leg count N")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "check every Hopf algebra axiom")
    sp = add("build", cmd_build, "write a structure file", hopf=False)
    sp.add_argument("kind", choices=["group-algebra", "dual", "double"])
    sp.add_argument("group")
    sp.add_argument("-o", "--output")
    add("integrals", cmd_integrals, "normalized integrals of H and H*")
    sp = add("exponent", cmd_exponent, "exponent of H")
    sp.add_argument("--bound", type=int, default=256)

    sp = sub.add_parser("invariant", help="evaluate an invariant expression")
    isub = sp.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ev = isub.add_parser("eval")
    ev.add_argument("expr_file")
    ev.add_argument("--hopf", required=True)
    ev.add_argument("--h-chars", help="character table for charH generators")
    ev.add_argument("--d-chars", help="character table for charD generators")
    ev.set_defaults(func=cmd_invariant)

    sp = sub.add_parser("enumerate", help="list canonical data")
    sp.add_argument("i", type=int)
    sp.add_argument("j", type=int)
    sp.add_argument("n_max", type=int)
    sp.set_defaults(func=cmd_enumerate)

    add("span", cmd_span, "basis of the invariant span", budget=True, shape=True)
    add("saturate", cmd_saturate, "compare the span with the automorphism-fixed space", budget=True, shape=True)
    add("gram", cmd_gram, "rank of the pairing between (i,j) and (j,i) spans", budget=True, shape=True)
    sp = add("distinguish", cmd_distinguish, "search for a scalar invariant separating two algebras", hopf=False, budget=True)
    sp.add_argument("h1")
    sp.add_argument("h2")
    add("k0", cmd_k0, "distinct scalar invariant values", budget=True)
    sp = add("indicators", cmd_indicators, "Frobenius-Schur and mixed indicators")
    sp.add_argument("--n-max", type=int, default=6)
    sp.add_argument("--mixed", type=int, default=2, help="largest m and n for mixed indicators")
    sp.add_argument("--chars", help="character table of H")
    sp = add("kaplansky", cmd_kaplansky, "irreducible dimensions divide dim H")
    sp.add_argument("--probes", type=int, default=4)
    sp = add("homs", cmd_homs, "count homomorphisms from a presentation", hopf=False)
    sp.add_argument("presentation")
    sp.add_argument("group")
    sp = add("braid-trace", cmd_braid_trace, "trace of a braid word on D(KG)^n", hopf=False)
    sp.add_argument("group")
    sp.add_argument("word", help='e.g. "s1 s2\' s1"')
    sp.add_argument("--strands", type=int)
    sp.add_argument("--max-group", type=int, default=DEFAULT_BRAID_ORDER)
    sp.add_argument("--max-strands", type=int, default=DEFAULT_MAX_STRANDS)
    sp.add_argument("--relations", action="store_true", help="also check the braid relations")
    sp.add_argument("--presentation", help="compare with |G|^a #Hom(P, G)")
    sp.add_argument("-a", type=int, default=1)
    return p


_ERRORS = (UsageError, HopfError, GroupError, BudgetExceeded, ValueError, LookupError, ArithmeticError, OSError)


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    try:
        return args.func(args)
    except _ERRORS as exc:
        where = type(exc).__module__.removeprefix("hopfinv.")
        print(f"hopfinv: error [{where}.{type(exc).__name__}]: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
