"""Command line front end: ``bergex <command> [options]``.

Hypergraphs are read in the ``n r m`` text format (``-`` for stdin). Patterns
may be given by name (``P4``, ``K3``, ``S3``, ``K4^3``, ``K4^3-``) or as
``@file``. Exit status: 0 ok, 1 a check fails, 2 usage or input error,
3 a search hit its size guard or budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .bergematch import NotBergeFreeError, contains_berge, red_blue_decompose
from .canon import canonical_labeling
from .census import clique_hypergraph, count_copies, count_s_cliques, gamma, iter_s_cliques
from .hypercore import (
    Hypergraph,
    ParameterError,
    ParseError,
    complete,
    expansion,
    named_hypergraph,
    read_hypergraph,
    shadow,
    star_path_construction,
    turan_graph,
    turan_hypergraph,
    write_hypergraph,
)
from .pathstruct import classify_component, hanging_blocks, longest_berge_path, peeling_verdicts
from .veriflab import (
    FAILS,
    SearchOptions,
    is_nice,
    report_to_csv,
    report_to_json,
    run_check,
    run_suite,
)
from .xsearch import ExtremalResult, ForbiddenSpec, Objective, ResourceError, results_to_csv

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _read(src: str) -> Hypergraph:
    text = sys.stdin.read() if src == "-" else Path(src).read_text()
    return read_hypergraph(text)


def _pattern(spec: str) -> Hypergraph:
    if spec.startswith("@"):
        return _read(spec[1:])
    return named_hypergraph(spec)


def _int_range(text: str) -> list[int]:
    a, sep, b = text.partition("..")
    try:
        lo = int(a)
        hi = int(b) if sep else lo
    except ValueError:
        raise _Usage(f"expected N or A..B, got {text!r}") from None
    if hi < lo:
        raise _Usage(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _options(args) -> SearchOptions:
    return SearchOptions(
        engine=getattr(args, "engine", "canonical"),
        workers=args.threads,
        node_budget=args.node_budget,
        time_budget=args.time_budget,
        override_size_guard=args.override_size_guard,
    )


def _hyper(H: Hypergraph) -> dict:
    return {"n": H.n, "r": H.r, "edges": [list(e) for e in H.edges]}


# -- output ----------------------------------------------------------------------

class Output:
    """A command result: JSON-able data plus a text rendering.

    CSV output uses ``rows`` when set, else a single row of ``data`` with
    nested values JSON-encoded.
    """

    def __init__(self, data, text: str, rows: list[dict] | None = None, csv_text: str | None = None):
        self.data, self.text, self.rows, self.csv_text = data, text, rows, csv_text

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.data, indent=2) + "\n"
        if fmt == "text":
            return self.text if self.text.endswith("\n") else self.text + "\n"
        if self.csv_text is not None:
            return self.csv_text
        rows = self.rows if self.rows is not None else [self.data]
        if not rows:
            return ""
        fields = list(rows[0])
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in row.items()})
        return buf.getvalue()


def _graph_out(H: Hypergraph) -> Output:
    return Output(_hyper(H), write_hypergraph(H), rows=[{"edge": " ".join(map(str, e))} for e in H.edges])


# -- commands ------------------------------------------------------------------

def cmd_shadow(args):
    return _graph_out(shadow(_read(args.file), args.r))


def cmd_expand(args):
    return _graph_out(expansion(_read(args.file), args.r))


def cmd_construct(args):
    kind = args.kind
    need = {"complete": ("n", "r"), "turan": ("n", "k"), "turan-hyper": ("n", "k", "r"),
            "star-path": ("n", "r", "k"), "named": ("name",)}[kind]
    missing = [f"--{x}" for x in need if getattr(args, x) is None]
    if missing:
        raise _Usage(f"construct {kind} needs {' '.join(missing)}")
    if kind == "complete":
        H = complete(args.n, args.r)
    elif kind == "turan":
        H = turan_graph(args.n, args.k)
    elif kind == "turan-hyper":
        H = turan_hypergraph(args.n, args.k, args.r)
    elif kind == "star-path":
        H = star_path_construction(args.n, args.r, args.k)
    else:
        H = named_hypergraph(args.name)
    return _graph_out(H)


def cmd_contains_berge(args):
    H, F = _read(args.file), _pattern(args.pattern)
    cert = contains_berge(H, F)
    data = {"contains": cert is not None, "certificate": None if cert is None else cert.to_dict()}
    text = f"Berge-{args.pattern}-free" if cert is None else cert.to_json()
    return Output(data, text)


def cmd_longest_path(args):
    H = _read(args.file)
    cert = longest_berge_path(H, args.budget)
    data = {"length": cert.length, "vertices": list(cert.defining_vertices),
            "hyperedges": [list(e) for e in cert.defining_hyperedges], "certificate": cert.to_dict()}
    text = f"length {cert.length}: " + " ".join(map(str, cert.defining_vertices))
    return Output(data, text)


def cmd_count(args):
    P, G = _pattern(args.pattern), _read(args.host)
    ec = count_copies(P, G, args.bound)
    data = {"pattern": args.pattern, "host": args.host, **ec.to_dict()}
    return Output(data, f"{ec.copies} copies ({ec.injective_maps} maps / {ec.automorphisms} automorphisms)")


def cmd_gamma(args):
    H = _pattern(args.pattern)
    g = gamma(H, args.bound)
    return Output({"pattern": args.pattern, "gamma": g}, str(g))


def cmd_cliques(args):
    H = _read(args.file)
    if args.hypergraph:
        return _graph_out(clique_hypergraph(H, args.s))
    data = {"s": args.s, "count": count_s_cliques(H, args.s)}
    if args.list:
        data["cliques"] = [list(c) for c in iter_s_cliques(H, args.s)]
    text = str(data["count"])
    if args.list:
        text += "\n" + "\n".join(" ".join(map(str, c)) for c in data["cliques"])
    return Output(data, text)


def cmd_hanging_blocks(args):
    H = _read(args.file)
    blocks = hanging_blocks(H, args.size)
    rows = [{"block": list(b.block), "attachment": b.attachment} for b in blocks]
    text = "\n".join(f"{' '.join(map(str, b.block))} @ {b.attachment}" for b in blocks) or "none"
    return Output(rows, text, rows=rows)


def cmd_classify(args):
    H = _read(args.file)
    rep = classify_component(H, args.k)
    data = rep.to_dict()
    text = rep.verdict
    if args.exhaustive:
        data["all_orders"] = sorted(peeling_verdicts(H, args.k))
        text += f" (all orders: {', '.join(data['all_orders'])})"
    return Output(data, text)


def cmd_canon(args):
    H = _read(args.file)
    c = canonical_labeling(H)
    form = Hypergraph(H.n, H.r, [sorted(c.labeling[v] for v in e) for e in H.edges])
    data = {"code": str(c.code), "labeling": list(c.labeling), "automorphisms": c.order, "form": _hyper(form)}
    return Output(data, write_hypergraph(form))


def _forbidden(spec: str) -> ForbiddenSpec:
    kind, _, pat = spec.partition(":")
    if kind == "none" and not pat:
        return ForbiddenSpec.none()
    if not pat:
        raise _Usage(f"forbidden must be none, berge:PATTERN or sub:PATTERN, got {spec!r}")
    P = _pattern(pat)
    if kind == "berge":
        return ForbiddenSpec.berge(P, pat)
    if kind == "sub":
        return ForbiddenSpec.subhypergraph(P, pat)
    raise _Usage(f"unknown forbidden kind {kind!r}")


def _objective(spec: str) -> Objective:
    if spec == "edges":
        return Objective.edges()
    kind, _, pat = spec.partition(":")
    if kind != "copies" or not pat:
        raise _Usage(f"objective must be edges or copies:PATTERN, got {spec!r}")
    return Objective.copies(_pattern(pat), pat)


def _result_text(res: ExtremalResult) -> str:
    head = f"n={res.n} r={res.r} {res.forbidden} {res.objective}{' connected' if res.connected else ''}"
    return f"{head}: {res.value}\n{write_hypergraph(res.witness)}"


def cmd_extremal(args):
    forb = _forbidden(args.forbidden)
    obj = _objective(args.objective)
    opts = _options(args)
    results = []
    for n in _int_range(args.n):
        results.append(opts.run(n, args.r, forb, obj, args.connected, strategy=args.strategy, debug=args.debug))
    data = [r.to_dict() for r in results]
    text = "\n".join(_result_text(r) for r in results)
    return Output(data if len(data) > 1 else data[0], text, csv_text=results_to_csv(results))


def cmd_decompose(args):
    H, F = _read(args.file), _pattern(args.pattern)
    rb = red_blue_decompose(H, F)
    data = rb.to_dict()
    text = (f"red: {' '.join('-'.join(map(str, e)) for e in rb.red.edges) or '-'}\n"
            f"blue: {' '.join('-'.join(map(str, e)) for e in rb.blue.edges) or '-'}")
    return Output(data, text)


def cmd_nice_check(args):
    H, F = _read(args.file), _pattern(args.pattern)
    ok, pair = is_nice(H, F)
    data = {"nice": ok, "required": min(F.m, H.r * (H.r - 1) // 2), "deficient_pair": None if ok else list(pair)}
    return Output(data, "nice" if ok else f"not nice: pair {pair[0]}-{pair[1]}")


def _check_text(c) -> str:
    params = " ".join(f"{k}={v}" for k, v in c.params.items())
    mid = f" {c.middle} <=" if c.middle is not None else ""
    rel = "<=" if c.relation == "<=<=" else c.relation
    vals = f"{c.lhs} {rel}{mid} {c.rhs}" if c.lhs is not None else "-"
    tail = f" ({c.reason})" if c.reason else ""
    return f"{c.verdict.upper():8s}{c.theorem} {params}: {vals}{tail}"


def cmd_check(args):
    params = {}
    for kv in args.params:
        k, eq, v = kv.partition("=")
        if not eq:
            raise _Usage(f"expected key=value, got {kv!r}")
        params[k] = v
    c = run_check(args.theorem, params, _options(args))
    d = c.to_dict()
    out = Output(d, _check_text(c), rows=[{**d, "params": params}])
    out.failed = c.verdict == FAILS
    return out


def cmd_run_suite(args):
    cfg = None if args.config is None else Path(args.config)
    rep = run_suite(cfg, _options(args))
    js = report_to_json(rep)
    if args.json_out:
        Path(args.json_out).write_text(js + "\n")
    if args.csv_out:
        Path(args.csv_out).write_text(report_to_csv(rep))
    s = rep["summary"]
    text = "\n".join(_check_text(c) for c in rep["checks"])
    text += f"\n{s['holds']} holds, {s['fails']} fails, {s['skipped']} skipped"
    out = Output(json.loads(js), text, csv_text=report_to_csv(rep))
    out.failed = not rep["ok"]
    return out


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    g.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker processes for extremal search")
    g.add_argument("--node-budget", type=int, default=argparse.SUPPRESS)
    g.add_argument("--time-budget", type=float, default=argparse.SUPPRESS, help="seconds")
    g.add_argument("--override-size-guard", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="bergex", description="Berge hypergraph toolkit", parents=[common])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    sp = add("shadow", cmd_shadow, "r-shadow of a hypergraph")
    sp.add_argument("file")
    sp.add_argument("--r", type=int, default=2)

    sp = add("expand", cmd_expand, "expansion F^{r+} of a graph")
    sp.add_argument("file")
    sp.add_argument("--r", type=int, required=True)

    sp = add("construct", cmd_construct, "named constructions")
    sp.add_argument("kind", choices=("complete", "turan", "turan-hyper", "star-path", "named"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--name")

    sp = add("contains-berge", cmd_contains_berge, "find a Berge copy of a graph")
    sp.add_argument("file")
    sp.add_argument("--pattern", "-F", required=True)

    sp = add("longest-path", cmd_longest_path, "longest Berge path")
    sp.add_argument("file")
    sp.add_argument("--budget", type=int)

    sp = add("count", cmd_count, "copies of a pattern in a host")
    sp.add_argument("pattern")
    sp.add_argument("host")
    sp.add_argument("--bound", type=int, default=8, help="pattern size bound")

    sp = add("gamma", cmd_gamma, "copies of H sharing one fixed 2-shadow")
    sp.add_argument("pattern")
    sp.add_argument("--bound", type=int, default=8)

    sp = add("cliques", cmd_cliques, "s-cliques of an r-graph")
    sp.add_argument("file")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--list", action="store_true")
    sp.add_argument("--hypergraph", action="store_true", help="emit the s-graph of s-cliques")

    sp = add("hanging-blocks", cmd_hanging_blocks, "hanging blocks of a given size")
    sp.add_argument("file")
    sp.add_argument("--size", type=int, required=True)

    sp = add("classify", cmd_classify, "nice/strong/bad verdict of a component")
    sp.add_argument("file")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--exhaustive", action="store_true", help="also try every deletion order (n <= 8)")

    sp = add("canon", cmd_canon, "canonical form and automorphism count")
    sp.add_argument("file")

    sp = add("extremal", cmd_extremal, "exact extremal number by exhaustive search")
    sp.add_argument("--n", required=True, help="N or A..B")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--forbidden", default="none", help="none | berge:PATTERN | sub:PATTERN")
    sp.add_argument("--objective", default="edges", help="edges | copies:PATTERN")
    sp.add_argument("--connected", action="store_true")
    sp.add_argument("--engine", choices=("naive", "canonical"), default="canonical")
    sp.add_argument("--strategy", choices=("auto", "masks", "search", "path"), default="auto")
    sp.add_argument("--debug", action="store_true", help="recheck every incremental test in full")

    sp = add("decompose", cmd_decompose, "red-blue decomposition of a Berge-F-free hypergraph")
    sp.add_argument("file")
    sp.add_argument("--pattern", "-F", required=True)

    sp = add("nice-check", cmd_nice_check, "is H nice with respect to F")
    sp.add_argument("file")
    sp.add_argument("--pattern", "-F", required=True)

    sp = add("check", cmd_check, "run one theorem check")
    sp.add_argument("theorem")
    sp.add_argument("params", nargs="*", help="key=value")
    sp.add_argument("--engine", choices=("naive", "canonical"), default="canonical")

    sp = add("run-suite", cmd_run_suite, "run a suite of checks (default: the shipped suite)")
    sp.add_argument("config", nargs="?")
    sp.add_argument("--json-out")
    sp.add_argument("--csv-out")
    sp.add_argument("--engine", choices=("naive", "canonical"), default="canonical")
    return p


_DEFAULTS = {"format": "text", "threads": 1, "node_budget": None, "time_budget": None, "override_size_guard": False}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    for k, v in _DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    try:
        out = args.func(args)
    except (_Usage, ParameterError, ParseError, NotBergeFreeError, OSError) as exc:
        print(f"bergex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"bergex: resource limit: {exc}", file=sys.stderr)
        if exc.partial is not None:
            print(f"bergex: best value seen (lower bound only): {exc.partial.value}", file=sys.stderr)
        return EXIT_RESOURCE
    sys.stdout.write(out.render(args.format))
    return EXIT_FAIL if getattr(out, "failed", False) else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
