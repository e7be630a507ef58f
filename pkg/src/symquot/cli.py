"""Command-line front end: ``symquot classify | verify | corpus | table``."""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import sympy

from . import __version__
from .characters import CharacterError, character_table
from .corpus import corpus
from .cyclotomic import make_context
from .group_algebra import classify_character, default_context
from .groups import GroupError, build
from .verify import VERIFIERS, run

EXIT_OK, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2

ROW_FIELDS = [
    "chi", "degree", "lambda_exponent", "symmetric", "matrix_algebra", "central_type", "height",
    "trace_exponent", "gram_unimodular", "divisible", "verdict", "rank_K", "rank_k",
    "inducing_subgroup_order",
]


def _warn(msg: str) -> None:
    print(f"symquot: warning: {msg}", file=sys.stderr)


def _fail(msg: str) -> int:
    print(f"symquot: error: {msg}", file=sys.stderr)
    return EXIT_ERROR


# ---------------------------------------------------------------------------
# classification (optionally one worker per character)

_worker_state: dict = {}


def _init_worker(spec: str, p: int, conductor: int | None) -> None:
    G = build(spec)
    _worker_state.update(G=G, p=p, ctx=default_context(G, p, conductor), table=character_table(G))


def _classify_one(index: int) -> dict:
    s = _worker_state
    chi = s["table"].characters[index]
    return classify_character(s["G"], s["p"], chi, s["ctx"], s["table"]).to_dict()


def classify_rows(spec: str, p: int, conductor: int | None = None, jobs: int = 1) -> list[dict]:
    _init_worker(spec, p, conductor)
    count = len(_worker_state["table"].characters)
    if jobs > 1:
        with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(spec, p, conductor)) as pool:
            return list(pool.map(_classify_one, range(count)))
    return [_classify_one(i) for i in range(count)]


def _render_value(v) -> str:
    num, den = v
    return "(" + ",".join(str(c) for c in num) + ")" + ("" if den == 1 else f"/{den}")


def _cell(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def _print_rows(rows: list[dict], fmt: str, doc: dict, out) -> None:
    if fmt == "json":
        json.dump(doc, out, indent=2, sort_keys=False)
        out.write("\n")
        return
    header = ROW_FIELDS + ["values"]
    if fmt == "tsv":
        out.write("\t".join(header) + "\n")
        for r in rows:
            vals = " ".join(_render_value(v) for v in r["values"])
            out.write("\t".join([_cell(r[k]) for k in ROW_FIELDS] + [vals]) + "\n")
        return
    ctx = doc["context"]
    out.write(f"group {doc['group']}  order {doc['order']}  m={ctx['m']} p={ctx['p']} e={ctx['e']} f={ctx['f']}\n")
    if doc.get("semisimple"):
        out.write("p does not divide |G|: every quotient is a matrix algebra over O\n")
    cols = ROW_FIELDS
    table = [[_cell(r[k]) for k in cols] for r in rows]
    widths = [max(len(c), *(len(t[i]) for t in table)) if table else len(c) for i, c in enumerate(cols)]
    out.write("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip() + "\n")
    for t in table:
        out.write("  ".join(x.ljust(w) for x, w in zip(t, widths)).rstrip() + "\n")
    out.write(_summary_line(rows) + "\n")


def _summary_line(rows: list[dict]) -> str:
    counts = {v: sum(r["verdict"] == v for r in rows) for v in ("PASS", "VIOLATION", "SKIPPED")}
    sym = sum(r["symmetric"] for r in rows)
    return (f"characters {len(rows)}  symmetric {sym}  PASS {counts['PASS']}  "
            f"VIOLATION {counts['VIOLATION']}  SKIPPED {counts['SKIPPED']}")


def cmd_classify(args) -> int:
    G = build(args.spec)
    if not sympy.isprime(args.p):
        return _fail(f"{args.p} is not prime")
    if args.conductor is not None and args.conductor < G.exponent:
        _warn(f"conductor {args.conductor} is smaller than exp(G) = {G.exponent}")
    semisimple = G.n % args.p != 0
    if semisimple:
        _warn(f"p = {args.p} does not divide |G| = {G.n}; the report only records semisimplicity")
    start = time.perf_counter()
    rows = classify_rows(args.spec, args.p, args.conductor, args.jobs)
    ctx = default_context(G, args.p, args.conductor)
    doc = {
        "tool": "symquot",
        "version": __version__,
        "group": args.spec,
        "order": G.n,
        "context": {"m": ctx.m, "p": ctx.p, "e": ctx.e, "f": ctx.f},
        "semisimple": semisimple,
        "rows": rows,
        "summary": {v: sum(r["verdict"] == v for r in rows) for v in ("PASS", "VIOLATION", "SKIPPED")},
    }
    if args.timing:
        doc["seconds"] = round(time.perf_counter() - start, 3)
    _print_rows(rows, args.format, doc, sys.stdout)
    return EXIT_VIOLATION if doc["summary"]["VIOLATION"] else EXIT_OK


# ---------------------------------------------------------------------------
# verification

def _text_verify(doc: dict, out) -> None:
    out.write(f"{doc['id']}: {doc['verdict']}\n")
    for k, v in doc.items():
        if k in ("id", "verdict"):
            continue
        if k == "rows":
            for r in v:
                out.write("  " + "  ".join(f"{a}={_cell(b)}" for a, b in r.items()) + "\n")
        else:
            out.write(f"  {k}: {json.dumps(v)}\n")


def cmd_verify(args) -> int:
    if args.id not in VERIFIERS:
        return _fail(f"unknown id {args.id!r}; expected one of {', '.join(VERIFIERS)}")
    start = time.perf_counter()
    doc = {"tool": "symquot", "version": __version__}
    doc.update(run(args.id, group=args.group, p=args.p, n=args.n))
    if args.timing:
        doc["seconds"] = round(time.perf_counter() - start, 3)
    if args.format == "json":
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        _text_verify({k: v for k, v in doc.items() if k not in ("tool", "version")}, sys.stdout)
    return EXIT_VIOLATION if doc["verdict"] == "FAIL" else EXIT_OK


# ---------------------------------------------------------------------------
# corpus sweep

def sweep(specs: list[str]) -> list[dict]:
    """One entry per (group, dividing prime) with its classification rows."""
    out = []
    for spec in specs:
        G = build(spec)
        for p in sorted(sympy.primefactors(G.n)):
            rows = classify_rows(spec, p)
            ctx = make_context(G.exponent, p)
            out.append({
                "group": spec,
                "order": G.n,
                "p": p,
                "context": {"m": ctx.m, "p": ctx.p, "e": ctx.e, "f": ctx.f},
                "p_group": len(sympy.primefactors(G.n)) == 1,
                "rows": rows,
            })
    return out


def corpus_summary(entries: list[dict]) -> dict:
    rows = [r for e in entries for r in e["rows"]]
    central_ok = all(r["symmetric"] for e in entries if e["p_group"] for r in e["rows"] if r["central_type"])
    return {
        "groups": len({e["group"] for e in entries}),
        "group_prime_pairs": len(entries),
        "characters": len(rows),
        "PASS": sum(r["verdict"] == "PASS" for r in rows),
        "VIOLATION": sum(r["verdict"] == "VIOLATION" for r in rows),
        "SKIPPED": sum(r["verdict"] == "SKIPPED" for r in rows),
        "non_symmetric": sum(not r["symmetric"] for r in rows),
        "p_group_central_type_symmetric": central_ok,
    }


def cmd_corpus(args) -> int:
    specs = corpus(args.filter)
    start = time.perf_counter()
    entries = sweep(specs)
    summary = corpus_summary(entries)
    doc = {"tool": "symquot", "version": __version__, "filter": args.filter, "entries": entries, "summary": summary}
    if args.timing:
        doc["seconds"] = round(time.perf_counter() - start, 3)
    out = sys.stdout
    if args.format == "json":
        json.dump(doc, out, indent=2)
        out.write("\n")
    else:
        for e in entries:
            rs = e["rows"]
            out.write(f"{e['group']}\tp={e['p']}\t" + _summary_line(rs).replace("  ", "\t") + "\n")
        out.write("total\t" + "\t".join(f"{k}={_cell(v)}" for k, v in summary.items()) + "\n")
        if args.timing:
            out.write(f"seconds\t{doc['seconds']}\n")
    return EXIT_VIOLATION if summary["VIOLATION"] else EXIT_OK


# ---------------------------------------------------------------------------
# character table

def cmd_table(args) -> int:
    G = build(args.spec)
    T = character_table(G)
    classes = [
        {"representative": G.classes[i][0] + 1, "size": len(G.classes[i]), "order": G.element_orders[G.classes[i][0]]}
        for i in range(len(G.classes))
    ]
    chars = [{"index": chi.index, "degree": chi.degree, "values": [v.to_json() for v in chi.values]} for chi in T]
    doc = {"tool": "symquot", "version": __version__, "group": args.spec, "order": G.n, "conductor": T.m,
           "classes": classes, "characters": chars}
    if args.format == "json":
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return EXIT_OK
    sep = "\t" if args.format == "tsv" else "  "
    print(f"group {args.spec}  order {G.n}  values in Q(zeta_{T.m}) as coefficient tuples")
    print(sep.join(["class"] + [str(i) for i in range(len(classes))]))
    print(sep.join(["rep"] + [str(c["representative"]) for c in classes]))
    print(sep.join(["size"] + [str(c["size"]) for c in classes]))
    print(sep.join(["order"] + [str(c["order"]) for c in classes]))
    for ch in chars:
        print(sep.join([f"chi{ch['index']}"] + [_render_value(v) for v in ch["values"]]))
    return EXIT_OK


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # usage errors share exit code 1 with descriptor parse errors; 2 is reserved for violations
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="symquot", description="Symmetry of character quotients of group algebras over O.")
    ap.add_argument("--version", action="version", version=f"symquot {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify OG e(chi) for every irreducible chi")
    c.add_argument("spec")
    c.add_argument("-p", type=int, required=True)
    c.add_argument("--format", choices=["json", "tsv", "text"], default="text")
    c.add_argument("--conductor", type=int)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--timing", action="store_true", help="include wall-clock time (makes output nondeterministic)")
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="run one statement verifier")
    v.add_argument("id", help=", ".join(VERIFIERS))
    v.add_argument("--group")
    v.add_argument("--p", type=int)
    v.add_argument("--n", type=int)
    v.add_argument("--format", choices=["json", "text"], default="text")
    v.add_argument("--timing", action="store_true")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("corpus", help="sweep the built-in corpus at every dividing prime")
    s.add_argument("--filter", help="glob over group specs")
    s.add_argument("--format", choices=["json", "text"], default="text")
    s.add_argument("--timing", action="store_true")
    s.set_defaults(func=cmd_corpus)

    t = sub.add_parser("table", help="print the character table")
    t.add_argument("spec")
    t.add_argument("--format", choices=["json", "tsv", "text"], default="text")
    t.set_defaults(func=cmd_table)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = parser().parse_args(argv)
    try:
        return args.func(args)
    except (GroupError, CharacterError, ValueError, OSError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
