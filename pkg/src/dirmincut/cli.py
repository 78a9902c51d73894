"""Command-line entry point: ``dirmincut <subcommand> [options] FILE...``.

Exit codes: 0 on success, 1 when an algorithm finds no candidate or a
verify suite fails, 2 on usage or input errors. Human output is
``key=value`` lines; ``--json`` prints a sorted, timing-free JSON report so
identical argv and seed give identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from pathlib import Path
from typing import Sequence

from .config import DEFAULT_SEED, DriverConfig
from .driver import DriverStats, approx_s_mincut, exact_s_mincut, global_mincut
from .generators import MODELS, clique, cycle, erdos, planted_unbalanced, planted_vertex
from .graph import GraphError, VertexWeightedDigraph, WeightedDigraph
from .io import read_graph, serialize_graph, write_graph
from .maxflow import reference_s_mincut
from .onerespect import centroid_decomposition, min_one_respecting_cut
from .packing import Arborescence, NoArborescenceError, pack_arborescences, validate_arborescence
from .rng import make_rng
from .sparsify import partial_sparsify
from .verify import SUITES, run_suite
from .vertex import approx_global_vertex_cut, approx_rooted_vertex_cut

SUBCOMMANDS = (
    "exact",
    "approx",
    "global",
    "vertex-approx",
    "sparsify",
    "pack",
    "one-respect",
    "verify",
    "bench",
    "gen",
)

BENCH_FIELDS = (
    "file",
    "n",
    "m",
    "k",
    "value",
    "maxflow_calls",
    "call_bound",
    "balanced_calls",
    "balanced_bound",
    "unbalanced_worst",
    "unbalanced_bound",
    "sparsifier_edges_max",
    "wall_ms",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits by default; surface as UsageError
        raise UsageError(message)


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed {text!r}") from None
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _eps(text: str) -> float:
    v = float(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError("eps must lie in (0, 1)")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    common.add_argument("--json", action="store_true")
    common.add_argument("--root", type=int, default=None)
    common.add_argument("--eps", type=_eps, default=None)
    common.add_argument("--k", type=int, default=0)
    common.add_argument("--variant", choices=("rounding", "binomial"), default="rounding")

    p = _Parser(prog="dirmincut", description="Minimum rooted and global cuts in digraphs.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    for name in ("exact", "approx", "global"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--exhaustive", action="store_true", help="visit every sink")
        s.add_argument("files", nargs=1, metavar="FILE")

    s = sub.add_parser("vertex-approx", parents=[common])
    s.add_argument("--global", dest="global_", action="store_true")
    s.add_argument("files", nargs=1, metavar="FILE")

    s = sub.add_parser("sparsify", parents=[common])
    s.add_argument("--lambda", dest="lam", type=int, default=None)
    s.add_argument("--out", default=None)
    s.add_argument("files", nargs=1, metavar="FILE")

    s = sub.add_parser("pack", parents=[common])
    s.add_argument("files", nargs=1, metavar="FILE")

    s = sub.add_parser("one-respect", parents=[common])
    s.add_argument("--tree", required=True)
    s.add_argument("files", nargs=1, metavar="FILE")

    s = sub.add_parser("verify", parents=[common])
    s.add_argument("--suite", choices=SUITES, required=True)

    s = sub.add_parser("bench", parents=[common])
    s.add_argument("--out", default=None, help="write the CSV here instead of stdout")
    s.add_argument("files", nargs="*", metavar="FILE", help="graph files or directories")

    s = sub.add_parser("gen", parents=[common])
    s.add_argument("--model", choices=MODELS, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=float, default=0.3)
    s.add_argument("--max-weight", type=int, default=10)
    s.add_argument("files", nargs="?", metavar="FILE")
    return p


def _emit(args, payload: dict, lines: list[str], out) -> None:
    if args.json:
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def _load_edge_graph(path: str) -> WeightedDigraph:
    G = read_graph(path)
    if not isinstance(G, WeightedDigraph):
        raise UsageError(f"{path}: expected an edge-weighted ('p ec') graph")
    return G


def _load_vertex_graph(path: str) -> VertexWeightedDigraph:
    G = read_graph(path)
    if not isinstance(G, VertexWeightedDigraph):
        raise UsageError(f"{path}: expected a vertex-weighted ('p vc') graph")
    return G


def _root(args, G) -> int:
    r = G.root if args.root is None else args.root
    if not 0 <= r < G.n:
        raise UsageError(f"root {r} out of range")
    return r


def _fmt_set(S) -> str:
    return " ".join(map(str, sorted(S)))


def _cmd_cut(args, out) -> int:
    G = _load_edge_graph(args.files[0])
    cfg = DriverConfig(
        k=args.k,
        eps=args.eps if args.eps is not None else 0.25,
        seed=args.seed,
        variant=args.variant,
        exhaustive=args.exhaustive,
    )
    rng = make_rng(args.seed)
    stats = DriverStats()
    t0 = time.perf_counter()
    if args.command == "exact":
        res = exact_s_mincut(G, _root(args, G), cfg, rng, stats)
    elif args.command == "approx":
        res = approx_s_mincut(G, _root(args, G), cfg.eps, cfg, rng, stats)
    else:
        res = global_mincut(G, cfg, rng)
    elapsed = time.perf_counter() - t0
    payload = {
        "command": args.command,
        "value": res.value,
        "sink_side": sorted(res.sink_side),
        "maxflow_calls": res.maxflow_calls,
        "origin": res.witness_origin,
        "k": stats.k,
        "lambda_guesses": stats.lambda_guesses,
        "notes": sorted(set(stats.premise_notes)),
    }
    lines = [
        f"value={res.value}",
        f"sink_side={_fmt_set(res.sink_side)}",
        f"maxflow_calls={res.maxflow_calls}",
        f"origin={res.witness_origin}",
        f"time_total_ms={elapsed * 1000:.1f}",
    ]
    if args.command != "global":
        lines.insert(3, f"balanced_calls={stats.balanced_calls}")
        lines.insert(4, f"unbalanced_calls={sum(c for _, c in stats.unbalanced_calls)}")
    lines += [f"note={n}" for n in sorted(set(stats.premise_notes))]
    _emit(args, payload, lines, out)
    return 0


def _cmd_vertex(args, out) -> int:
    G = _load_vertex_graph(args.files[0])
    eps = args.eps if args.eps is not None else 0.25
    rng = make_rng(args.seed)
    if args.global_:
        res = approx_global_vertex_cut(G, eps, rng)
    else:
        res = approx_rooted_vertex_cut(G, _root(args, G), eps, rng)
    payload = {
        "command": "vertex-approx",
        "value": res.value,
        "separator": sorted(res.separator),
        "sink_component": sorted(res.sink_component),
        "degenerate": res.degenerate,
        "maxflow_calls": res.maxflow_calls,
    }
    lines = [
        f"value={res.value}",
        f"separator={_fmt_set(res.separator)}",
        f"sink_component={_fmt_set(res.sink_component)}",
        f"degenerate={str(res.degenerate).lower()}",
        f"maxflow_calls={res.maxflow_calls}",
    ]
    _emit(args, payload, lines, out)
    return 0


def _cmd_sparsify(args, out) -> int:
    G = _load_edge_graph(args.files[0])
    s = _root(args, G)
    eps = args.eps if args.eps is not None else 0.25
    lam = args.lam
    if lam is None:
        lam = max(1, reference_s_mincut(G, s).value)
    k = args.k if args.k > 0 else DriverConfig().resolve_k(G.n, G.m)
    sp = partial_sparsify(G, s, lam, k, eps, make_rng(args.seed), args.variant)
    H = sp.graph
    if args.out:
        write_graph(args.out, H)
    payload = {
        "command": "sparsify",
        "variant": sp.variant,
        "lambda": lam,
        "k": k,
        "eps": eps,
        "scale": str(sp.scale),
        "n": H.n,
        "m": H.m,
        "contracted": sorted(sp.contracted),
    }
    if sp.variant == "rounding":
        payload["tau"] = sp.params["tau"]
        scale_line = f"tau={sp.params['tau']}"
    else:
        payload["p"] = str(sp.params["p"])
        scale_line = f"p={sp.params['p']}"
    lines = [scale_line, f"n={H.n}", f"edges={H.m}", f"contracted={len(sp.contracted)}"]
    code = 0
    if H.n < 2:
        payload["mincut"] = None
        lines.append("mincut=none")
        code = 1
    else:
        mc = reference_s_mincut(H, H.root).value
        payload["mincut"] = mc
        lines.append(f"mincut={mc}")
    _emit(args, payload, lines, out)
    return code


def _cmd_pack(args, out) -> int:
    G = _load_edge_graph(args.files[0])
    s = _root(args, G)
    eps = args.eps if args.eps is not None else 0.1
    try:
        P = pack_arborescences(G, s, eps=eps)
    except NoArborescenceError as e:
        print(f"dirmincut: {e}", file=sys.stderr)
        return 1
    g = P.exact_gamma_bar()
    loads = P.scaled_loads()
    payload = {
        "command": "pack",
        "iterations": P.iterations,
        "gamma_bar": str(g),
        "value": str(1 / g),
        "max_load": str(g),
        "max_scaled_load": str(max(loads)),
        "certified": P.certified,
        "distinct_trees": len({T.edge_ids() for T in P.arborescences}),
    }
    lines = [
        f"iterations={P.iterations}",
        f"gamma_bar={float(g):.6g}",
        f"value={float(1 / g):.6g}",
        f"max_load={float(g):.6g}",
        f"max_scaled_load={float(max(loads)):.6g}",
    ]
    _emit(args, payload, lines, out)
    return 0


def read_tree(path: str, n: int, root: int) -> Arborescence:
    """Parse ``a tail head`` lines into an arborescence rooted at ``root``."""
    parents = [-1] * n
    count = 0
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] != "a" or len(parts) != 3:
            raise UsageError(f"{path}:{lineno}: expected 'a <tail> <head>'")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise UsageError(f"{path}:{lineno}: non-integer id") from None
        if not (0 <= u < n and 0 <= v < n) or v == root or parents[v] != -1:
            raise UsageError(f"{path}:{lineno}: bad tree edge {u} {v}")
        parents[v] = u
        count += 1
    if count != n - 1:
        raise UsageError(f"{path}: tree needs {n - 1} edges, found {count}")
    T = Arborescence.from_parents(root, parents)
    validate_arborescence(T)
    return T


def _cmd_one_respect(args, out) -> int:
    G = _load_edge_graph(args.files[0])
    s = _root(args, G)
    T = read_tree(args.tree, G.n, s)
    res = min_one_respecting_cut(G, s, T)
    layers = centroid_decomposition(T).depth
    payload = {
        "command": "one-respect",
        "value": res.value,
        "sink_side": sorted(res.sink_side),
        "maxflow_calls": res.maxflow_calls,
        "layers": layers,
    }
    lines = [
        f"value={res.value}",
        f"sink_side={_fmt_set(res.sink_side)}",
        f"maxflow_calls={res.maxflow_calls}",
        f"layers={layers}",
    ]
    _emit(args, payload, lines, out)
    return 0


def _cmd_verify(args, out) -> int:
    rep = run_suite(args.suite, args.seed)
    lines = []
    for c in rep.checks:
        extra = ""
        if c.report is not None:
            extra = f" {c.report.successes}/{c.report.trials}"
        elif c.note:
            extra = f" {c.note}"
        lines.append(f"{'PASS' if c.passed else 'FAIL'} {args.suite}/{c.name}{extra}")
    lines.append(f"suite={args.suite} passed={str(rep.passed).lower()}")
    _emit(args, rep.to_dict(), lines, out)
    return 0 if rep.passed else 1


def _bench_files(paths: Sequence[str]) -> list[Path]:
    files: list[Path] = []
    for p in paths:
        path = Path(p)
        if path.is_dir():
            files.extend(sorted(q for q in path.iterdir() if q.is_file() and not q.name.endswith(".answer")))
        elif path.is_file():
            files.append(path)
        else:
            raise UsageError(f"missing corpus entry {p}")
    return files


def bench_row(path: Path, cfg: DriverConfig, seed: int) -> dict:
    G = _load_edge_graph(str(path))
    stats = DriverStats()
    t0 = time.perf_counter()
    res = exact_s_mincut(G, G.root, cfg, make_rng(seed), stats)
    wall = (time.perf_counter() - t0) * 1000
    n = G.n
    k = stats.k
    balanced_bound = math.ceil((n / k) * cfg.constants.log_factor * math.log(max(n, 2))) if k else 0
    per_guess = stats.trees_per_guess * (math.floor(math.log2(max(n, 2))) + 1)
    return {
        "file": path.name,
        "n": n,
        "m": G.m,
        "k": k,
        "value": res.value,
        "maxflow_calls": res.maxflow_calls,
        "call_bound": balanced_bound + per_guess * len(stats.unbalanced_calls),
        "balanced_calls": stats.balanced_calls,
        "balanced_bound": balanced_bound,
        "unbalanced_worst": max((c for _, c in stats.unbalanced_calls), default=0),
        "unbalanced_bound": per_guess,
        "sparsifier_edges_max": max(stats.sparsifier_edges, default=0),
        "wall_ms": round(wall, 1),
    }


def format_bench_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=BENCH_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def parse_bench_csv(text: str) -> list[dict]:
    rows = []
    for r in csv.DictReader(io.StringIO(text)):
        row: dict = {}
        for key in BENCH_FIELDS:
            v = r[key]
            if key == "file":
                row[key] = v
            elif key == "wall_ms":
                row[key] = float(v)
            else:
                row[key] = int(v)
        rows.append(row)
    return rows


def _cmd_bench(args, out) -> int:
    cfg = DriverConfig(k=args.k, seed=args.seed, variant=args.variant)
    rows = [bench_row(p, cfg, args.seed) for p in _bench_files(args.files)]
    text = format_bench_csv(rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return 0


def _cmd_gen(args, out) -> int:
    rng = make_rng(args.seed)
    n = args.n
    answer = None
    if n < 2:
        raise UsageError("--n must be at least 2")
    if args.model == "erdos":
        G = erdos(n, args.p, args.max_weight, rng)
    elif args.model == "cycle":
        G = cycle(n)
    elif args.model == "clique":
        G = clique(n)
    elif args.model == "planted-unbalanced":
        G, answer = planted_unbalanced(n, max(1, args.k or 1), rng, max_light=args.max_weight)
    else:
        if n < 3:
            raise UsageError("planted-vertex needs --n >= 3")
        G, answer = planted_vertex(n, rng, max_weight=args.max_weight)
    comments = (f"model {args.model} n {n} seed {args.seed}",)
    if args.files:
        write_graph(args.files, G, comments)
        if answer is not None:
            Path(str(args.files) + ".answer").write_text(answer.to_text(), encoding="utf-8")
    else:
        if answer is not None:
            comments += tuple(f"answer {line}" for line in answer.to_text().splitlines())
        out.write(serialize_graph(G, comments))
    return 0


HANDLERS = {
    "exact": _cmd_cut,
    "approx": _cmd_cut,
    "global": _cmd_cut,
    "vertex-approx": _cmd_vertex,
    "sparsify": _cmd_sparsify,
    "pack": _cmd_pack,
    "one-respect": _cmd_one_respect,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
    "gen": _cmd_gen,
}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return HANDLERS[args.command](args, out)
    except (UsageError, GraphError, OSError) as e:
        print(f"dirmincut: {e}", file=sys.stderr)
        return 2


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)
