"""Command-line entry point.

Thin adapters over the library: generate, detect, verify, find, search,
wedges, classify, and table.  Results go to stdout and are byte-identical
across runs for identical argv (given node budgets, not wall-clock ones);
timings and diagnostics go to stderr.

Exit codes: 0 success; 1 negative answer (NONE with --expect-found, or a
failed verification); 2 usage or input errors; 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial
from pathlib import Path

from .errors import GuardError, ParseError
from .extremal import classify_3sets, count_wedges, extremal_search
from .gadgets import (
    bes_layer_star,
    example_a,
    example_b,
    example_b_free_threshold,
    full_star,
    gadget_h,
    gadget_h_prime,
    star_plus,
)
from .hypercore import Hypergraph, read_hypergraph, write_hypergraph
from .patterns import find_gadget_copy, find_same_union, find_sunflower, greedy_sunflower
from .regdetect import (
    SolverBudget,
    SolveStatus,
    find_regular,
    parse_certificate,
    serialize_certificate,
    verify_certificate,
)

_CLAIMS = ("mv-conjecture", "star-extremal", "example-b", "sunflower-bounds")


@dataclass
class RunConfig:
    command: str
    fmt: str = "text"
    seed: int = 0
    input: str | None = None
    out: str | None = None
    certificate: str | None = None
    kind: str | None = None
    variant: str | None = None
    pattern: str | None = None
    claim: str | None = None
    n: int | None = None
    k: int | None = None
    r: int | None = None
    l: int | None = None
    c: int | None = None
    p: int | None = None
    v: int | None = None
    n_max: int | None = None
    k_max: int | None = None
    max_nodes: int | None = None
    max_millis: int | None = None
    expect_found: bool = False
    prime: bool = False
    isomorph_reject: bool = False


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv"), default="text")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="regulus")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="write a named construction")
    g.add_argument("--kind", required=True,
                   choices=("star", "star-plus", "hkl", "hkl-prime",
                            "example-a", "example-b", "c64", "bes-layer-star"))
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--r", type=int)
    g.add_argument("--l", type=int)
    g.add_argument("--c", type=int)
    g.add_argument("--variant", choices=("r-eq-k", "r-eq-k-plus-1"))
    g.add_argument("--out", required=True)

    d = sub.add_parser("detect", parents=[common], help="search for an r-regular subgraph")
    d.add_argument("--input", required=True)
    d.add_argument("--r", type=int, required=True)
    d.add_argument("--max-nodes", type=int)
    d.add_argument("--max-millis", type=int)
    d.add_argument("--certificate")
    d.add_argument("--expect-found", action="store_true")

    vf = sub.add_parser("verify", parents=[common], help="check a certificate against a hypergraph")
    vf.add_argument("--input", required=True)
    vf.add_argument("--certificate", required=True)

    f = sub.add_parser("find", parents=[common], help="find a structural pattern")
    f.add_argument("--pattern", required=True, choices=("sunflower", "same-union", "gadget"))
    f.add_argument("--input", required=True)
    f.add_argument("--p", type=int)
    f.add_argument("--k", type=int)
    f.add_argument("--l", type=int)
    f.add_argument("--prime", action="store_true")
    f.add_argument("--out")
    f.add_argument("--expect-found", action="store_true")

    s = sub.add_parser("search", parents=[common], help="exhaustive extremal edge-count search")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--max-nodes", type=int)
    s.add_argument("--max-millis", type=int)
    s.add_argument("--isomorph-reject", action="store_true")
    s.add_argument("--out")

    w = sub.add_parser("wedges", parents=[common], help="count wedges at a vertex")
    w.add_argument("--input", required=True)
    w.add_argument("--v", type=int, required=True)
    w.add_argument("--r", type=int, required=True)

    c = sub.add_parser("classify", parents=[common], help="good/bad 3-sets at a vertex")
    c.add_argument("--input", required=True)
    c.add_argument("--v", type=int, required=True)

    t = sub.add_parser("table", parents=[common], help="desk-scale claim tables")
    t.add_argument("--claim", required=True, choices=_CLAIMS)
    t.add_argument("--n", type=int)
    t.add_argument("--k", type=int)
    t.add_argument("--r", type=int)
    t.add_argument("--c", type=int)
    t.add_argument("--p", type=int)
    t.add_argument("--n-max", type=int)
    t.add_argument("--k-max", type=int)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command, fmt=args.format, seed=args.seed)
    for name in ("input", "out", "certificate", "kind", "variant", "pattern", "claim",
                 "n", "k", "r", "l", "c", "p", "v", "n_max", "k_max",
                 "max_nodes", "max_millis", "expect_found", "prime", "isomorph_reject"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    return cfg


def _budget(cfg: RunConfig) -> SolverBudget | None:
    millis = cfg.max_millis
    if millis is None:
        env = os.environ.get("REGULUS_MAX_MILLIS")
        if env is not None and env != "":
            millis = int(env)
    if cfg.max_nodes is None and millis is None:
        return None
    return SolverBudget(max_nodes=cfg.max_nodes, max_millis=millis)


def _require(cfg: RunConfig, *names: str) -> None:
    for name in names:
        if getattr(cfg, name) is None:
            flag = name.replace("_", "-")
            raise ValueError(f"--{flag} is required for this invocation")


def _write_descriptor(path: Path, desc) -> None:
    lines = [f"kind {desc.kind.value}"]
    for key in sorted(desc.params):
        lines.append(f"param {key} {desc.params[key]}")
    if desc.center is not None:
        lines.append(f"center {desc.center}")
    for part in desc.stationary_parts:
        lines.append("part " + " ".join(str(v) for v in part))
    for u, v in desc.dynamic_pairs:
        lines.append(f"pair {u} {v}")
    path.write_text("\n".join(lines) + "\n", encoding="ascii")


def _cmd_generate(cfg: RunConfig) -> int:
    kind = cfg.kind
    if kind == "star":
        _require(cfg, "n")
        h, desc = full_star(cfg.n, cfg.k)
    elif kind == "star-plus":
        _require(cfg, "n", "r")
        h, desc = star_plus(cfg.n, cfg.k, cfg.r)
    elif kind in ("hkl", "hkl-prime"):
        _require(cfg, "l")
        if cfg.n is not None and cfg.n != 2 * cfg.k:
            raise ValueError(f"this gadget lives on 2k = {2 * cfg.k} vertices, got --n {cfg.n}")
        h, desc = (gadget_h if kind == "hkl" else gadget_h_prime)(cfg.k, cfg.l)
    elif kind == "example-a":
        _require(cfg, "n", "variant")
        h, desc = example_a(cfg.n, cfg.k, cfg.variant)
    elif kind == "example-b":
        _require(cfg, "n", "c")
        h, desc = example_b(cfg.n, cfg.k, cfg.c)
    else:  # c64 / bes-layer-star
        _require(cfg, "n", "r")
        h, desc = bes_layer_star(cfg.n, cfg.k, cfg.r, cfg.seed)
    write_hypergraph(h, cfg.out)
    _write_descriptor(Path(cfg.out).with_suffix(".desc"), desc)
    print(f"wrote {cfg.out} ({h.n} vertices, {len(h.edges)} edges)")
    return 0


def _cmd_detect(cfg: RunConfig) -> int:
    h = read_hypergraph(cfg.input)
    res = find_regular(h, cfg.r, _budget(cfg))
    if res.status is SolveStatus.FOUND:
        cert = res.certificate
        if cfg.fmt == "csv":
            print("status,edges,nodes")
            print(f"found,{len(cert.edge_indices)},{res.nodes}")
        else:
            print(f"FOUND {len(cert.edge_indices)} edges")
        if cfg.certificate:
            Path(cfg.certificate).write_text(serialize_certificate(cert), encoding="ascii")
        return 0
    if res.status is SolveStatus.BUDGET_EXHAUSTED:
        if cfg.fmt == "csv":
            print("status,edges,nodes")
            print(f"budget,0,{res.nodes}")
        else:
            print(f"BUDGET EXHAUSTED after {res.nodes} nodes")
        return 3
    if cfg.fmt == "csv":
        print("status,edges,nodes")
        print(f"none,0,{res.nodes}")
    else:
        print("NONE (search complete)")
    return 1 if cfg.expect_found else 0


def _cmd_verify(cfg: RunConfig) -> int:
    h = read_hypergraph(cfg.input)
    cert = parse_certificate(Path(cfg.certificate).read_text(encoding="ascii"))
    ok, reason = verify_certificate(h, cert)
    if cfg.fmt == "csv":
        print("result,reason")
        print("ok," if ok else f"fail,{reason}")
    else:
        print("OK" if ok else f"FAIL {reason}")
    return 0 if ok else 1


def _cmd_find(cfg: RunConfig) -> int:
    h = read_hypergraph(cfg.input)
    if cfg.pattern == "sunflower":
        _require(cfg, "p")
        s = find_sunflower(h, cfg.p)
        line = None if s is None else (
            f"SUNFLOWER petals={','.join(map(str, s.petals))}"
            f" core={','.join(map(str, s.core))}"
        )
    elif cfg.pattern == "same-union":
        q = find_same_union(h)
        line = None if q is None else f"SAME-UNION a={q.a} b={q.b} c={q.c} d={q.d}"
    else:
        _require(cfg, "k", "l")
        copy = find_gadget_copy(h, cfg.k, cfg.l, prime=cfg.prime)
        if copy is None:
            line = None
        else:
            parts = "|".join(",".join(map(str, part)) for part in copy.stationary_parts)
            pairs = "|".join(f"{u},{v}" for u, v in copy.dynamic_pairs)
            edges = ",".join(map(str, copy.edge_indices))
            line = (f"GADGET k={copy.k} l={copy.l} prime={int(copy.prime)}"
                    f" parts={parts} pairs={pairs} edges={edges}")
    out = line if line is not None else "NONE"
    print(out)
    if cfg.out:
        Path(cfg.out).write_text(out + "\n", encoding="ascii")
    if line is None:
        return 1 if cfg.expect_found else 0
    return 0


def _cmd_search(cfg: RunConfig) -> int:
    rep = extremal_search(cfg.n, cfg.k, cfg.r, budget=_budget(cfg),
                          isomorph_reject=cfg.isomorph_reject)
    if cfg.fmt == "csv":
        print("n,k,r,optimum,complete,nodes")
        print(f"{rep.n},{rep.k},{rep.r},{rep.optimum},{int(rep.complete)},{rep.nodes}")
    else:
        print(f"n {rep.n}")
        print(f"k {rep.k}")
        print(f"r {rep.r}")
        print(f"optimum {rep.optimum}")
        print(f"complete {'yes' if rep.complete else 'no'}")
        print(f"nodes {rep.nodes}")
        witness = ";".join(",".join(map(str, e)) for e in rep.witness.edges)
        print(f"witness {witness}" if witness else "witness")
    print(f"elapsed_ms {rep.elapsed_ms:.1f}", file=sys.stderr)
    if cfg.out:
        write_hypergraph(rep.witness, cfg.out)
    return 0 if rep.complete else 3


def _cmd_wedges(cfg: RunConfig) -> int:
    h = read_hypergraph(cfg.input)
    w = count_wedges(h, cfg.v, cfg.r)
    if cfg.fmt == "csv":
        print("edge,count")
        for i in sorted(w.per_edge):
            print(f"{i},{w.per_edge[i]}")
        print(f"total,{w.total}")
    else:
        print(f"v {w.v}")
        print(f"r {w.r}")
        print(f"k {w.k}")
        print(f"k_prime {w.k_prime}")
        print(f"lambda {w.total}")
        for i in sorted(w.per_edge):
            print(f"edge {i} {w.per_edge[i]}")
    return 0


def _cmd_classify(cfg: RunConfig) -> int:
    h = read_hypergraph(cfg.input)
    part = classify_3sets(h, cfg.v)
    if cfg.fmt == "csv":
        print("a,b,c,bad")
        flagged = {t: 0 for t in part.good}
        flagged.update({t: 1 for t in part.bad})
        for t in sorted(flagged):
            print(f"{t[0]},{t[1]},{t[2]},{flagged[t]}")
    else:
        print(f"v {part.v}")
        print(f"good {len(part.good)}")
        print(f"bad {len(part.bad)}")
        for t in part.bad:
            print(f"bad-set {t[0]} {t[1]} {t[2]}")
    return 0


def emit_table(claim: str, params: dict) -> tuple[tuple[str, ...], list[tuple]]:
    """Rows for one desk-scale claim table; every row names its method
    (exhaustive | solver | formula | sampled)."""
    if claim == "mv-conjecture":
        k = params.get("k", 3)
        r = params.get("r", 2)
        n_max = params["n_max"]
        header = ("n", "k", "r", "conjectured", "optimum", "match", "method")
        rows = []
        for n in range(k + 1, n_max + 1):
            rep = extremal_search(n, k, r)
            conj = comb(n - 1, k - 1) + (n - 1) // k
            rows.append((n, k, r, conj, rep.optimum,
                         int(rep.optimum == conj), "exhaustive"))
        return header, rows
    if claim == "star-extremal":
        k = params.get("k", 3)
        r = params.get("r", 2)
        n_max = params["n_max"]
        header = ("n", "k", "r", "edges", "free", "method")
        rows = []
        for n in range(k + 1, n_max + 1):
            h, _ = full_star(n, k)
            res = find_regular(h, r)
            rows.append((n, k, r, len(h.edges),
                         int(res.status is SolveStatus.NONE_EXISTS), "solver"))
        return header, rows
    if claim == "example-b":
        k = params.get("k", 3)
        c = params.get("c", 2)
        n_max = params["n_max"]
        r = example_b_free_threshold(k, c) + 1
        header = ("n", "k", "c", "edges", "r", "free", "method")
        rows = []
        for n in range(c + k - 1, n_max + 1):
            h, _ = example_b(n, k, c)
            res = find_regular(h, r)
            rows.append((n, k, c, len(h.edges), r,
                         int(res.status is SolveStatus.NONE_EXISTS), "solver"))
        return header, rows
    if claim == "sunflower-bounds":
        p = params.get("p", 3)
        k_max = params.get("k_max", 3)
        seed = params.get("seed", 0)
        header = ("k", "p", "lower", "upper", "observed", "method")
        rows = []
        for k in range(1, k_max + 1):
            lower = (p - 1) ** k
            upper = lower * factorial(k)
            n = k * (p - 1) + 2
            all_edges = list(combinations(range(n), k))
            observed = upper + 1
            for size in range(lower + 1, upper + 2):
                ok = True
                for trial in range(20):
                    rng = random.Random(seed * 1_000_003 + k * 10_007 + size * 101 + trial)
                    sample = rng.sample(range(len(all_edges)), size)
                    fam = Hypergraph(n, [all_edges[i] for i in sample])
                    if greedy_sunflower(fam, p) is None:
                        ok = False
                        break
                if ok:
                    observed = size
                    break
            rows.append((k, p, lower, upper, observed, "sampled"))
        return header, rows
    raise ValueError(f"unknown claim {claim!r}")


def _cmd_table(cfg: RunConfig) -> int:
    params: dict = {"seed": cfg.seed}
    for name in ("n", "k", "r", "c", "p", "n_max", "k_max"):
        val = getattr(cfg, name)
        if val is not None:
            params[name] = val
    if cfg.claim in ("mv-conjecture", "star-extremal", "example-b") and "n_max" not in params:
        raise ValueError("--n-max is required for this claim")
    header, rows = emit_table(cfg.claim, params)
    if cfg.fmt == "csv":
        print(",".join(header))
        for row in rows:
            print(",".join(str(x) for x in row))
    else:
        cells = [tuple(str(x) for x in row) for row in rows]
        widths = [max(len(header[i]), *(len(c[i]) for c in cells)) if cells else len(header[i])
                  for i in range(len(header))]
        print("  ".join(header[i].ljust(widths[i]) for i in range(len(header))).rstrip())
        for c in cells:
            print("  ".join(c[i].ljust(widths[i]) for i in range(len(header))).rstrip())
    return 0


_DISPATCH = {
    "generate": _cmd_generate,
    "detect": _cmd_detect,
    "verify": _cmd_verify,
    "find": _cmd_find,
    "search": _cmd_search,
    "wedges": _cmd_wedges,
    "classify": _cmd_classify,
    "table": _cmd_table,
}


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the usage message
        code = exc.code
        return code if isinstance(code, int) else 2
    cfg = _config(args)
    try:
        return _DISPATCH[cfg.command](cfg)
    except (ParseError, GuardError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
