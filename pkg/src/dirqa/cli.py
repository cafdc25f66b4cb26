"""Command-line entry points: build, analyze, compare, celegans, simulate."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import experiments
from .complex import build_dfc
from .digraph import Digraph, parse_edge_list, remove_double_edges
from .errors import DomainError, NumericError, ParseError
from .io import (
    RunConfig, complex_json, csv_text, dumps, matrix_csv, q_digraph_json, report_json, str1_csv, write,
)
from .measures import SCALARS, VERTEX_MEASURES, analyze
from .qstructure import VARIANTS, build_q_digraph
from .similarity import compare

EXIT_OK, EXIT_IO, EXIT_DOMAIN, EXIT_NUMERIC = 0, 2, 3, 4

SIM_COLUMNS = {
    "n_vertices": "|V_q|",
    "n_arcs": "|E_q|",
    "global_efficiency": "E_glob",
    "energy": "energy",
    "global_reaching": "GRC",
    "max_harmonic": "max_HC",
}


def _load(path: str, weighted: bool, allow_empty: bool = False) -> Digraph:
    try:
        text = Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_edge_list(text, weighted=weighted, allow_empty=allow_empty)


def _q_list(spec: str | None) -> list[int]:
    if not spec:
        return [0]
    out = []
    for part in spec.split(","):
        if ":" in part:
            a, b = part.split(":")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def _config(args, inputs, **extra) -> RunConfig:
    return RunConfig(
        command=args.command,
        inputs=inputs,
        q=_q_list(getattr(args, "q", None)),
        variant=args.variant,
        weighted=args.weighted,
        d_max=args.d_max,
        out_dir=args.out_dir,
        seed=args.seed,
        remove_double_edges=args.remove_double_edges,
        **extra,
    )


def cmd_build(args) -> int:
    cfg = _config(args, [args.edge_list])
    g = _load(args.edge_list, args.weighted)
    if args.remove_double_edges:
        g = remove_double_edges(g)
    dfc = build_dfc(g, args.d_max)
    out = Path(cfg.out_dir)
    stem = Path(args.edge_list).stem
    write(out / f"{stem}.complex.json", dumps({"complex": complex_json(dfc)}, cfg))
    write(out / f"{stem}.str1.csv", str1_csv(dfc, cfg))
    print(",".join(map(str, dfc.counts())))
    return EXIT_OK


def cmd_analyze(args) -> int:
    measures = args.measures.split(",") if args.measures else None
    cfg = _config(args, [args.edge_list], measures=measures)
    g = _load(args.edge_list, args.weighted)
    if args.remove_double_edges:
        g = remove_double_edges(g)
    dfc = build_dfc(g, args.d_max)
    out = Path(cfg.out_dir)
    stem = Path(args.edge_list).stem
    summary = []
    for q in cfg.q:
        qd = build_q_digraph(dfc, q, args.variant, weighted=args.weighted)
        rep = analyze(qd, measures, weighted=args.weighted)
        write(out / f"{stem}.q{q}.report.json", dumps({"report": report_json(rep)}, cfg))
        write(out / f"{stem}.q{q}.digraph.json", dumps({"q_digraph": q_digraph_json(qd)}, cfg))
        write(out / f"{stem}.q{q}.matrix.csv", matrix_csv(qd, cfg))
        maxima = rep.maxima()
        summary.append((q, rep.scalar_measures, maxima))
        print(f"q={q}: {qd.n} vertices, {len(qd.arcs)} arcs" + (" (empty)" if qd.n == 0 else ""))
    scal = [m for m in SCALARS if any(m in s for _, s, _ in summary)]
    vert = [m for m in VERTEX_MEASURES if any(m in x for _, _, x in summary)]
    rows = [[q] + [s.get(m) for m in scal] + [x.get(m) for m in vert] for q, s, x in summary]
    write(out / f"{stem}.summary.csv", csv_text(["q"] + scal + [f"max_{m}" for m in vert], rows, cfg))
    return EXIT_OK


def cmd_compare(args) -> int:
    cfg = _config(args, [args.edge_list_a, args.edge_list_b])
    xs = []
    for p in (args.edge_list_a, args.edge_list_b):
        g = _load(p, args.weighted, allow_empty=True)
        if args.remove_double_edges:
            g = remove_double_edges(g)
        xs.append(build_dfc(g, args.d_max))
    rep = compare(xs[0], xs[1])
    payload = {"structure_distances": rep.structure_distances, "kernels": rep.kernels, "padding": rep.padding}
    write(Path(cfg.out_dir) / "comparison.json", dumps({"comparison": payload}, cfg))
    for k, v in rep.structure_distances.items():
        print(f"Str{k} distance: {v:.4f}")
    for k, v in rep.kernels.items():
        print(f"{k}: {'undefined' if v is None else f'{v:.4f}'}")
    return EXIT_OK


def cmd_celegans(args) -> int:
    null_cfg = {"n_null": args.n_null, "models": ["maslov-sneppen", "lattice"],
                "double_edge_policy": "clique-preserving"}
    cfg = _config(args, [args.edge_list], null_model=null_cfg)
    cfg.variant = "lower"
    g = _load(args.edge_list, False)
    res = experiments.null_model_comparison(g, n_null=args.n_null, seed=args.seed)
    print(f"{res.meta['n_vertices']} vertices, {res.meta['n_arcs_input']} -> {res.meta['n_arcs_clean']} arcs")
    header = ["q", "measure", "model", "observed", "null_mean", "null_sd", "n_defined", "z", "p"]
    rows = [[r[h] for h in header] for r in res.rows]
    out = Path(cfg.out_dir)
    write(out / "celegans_z.csv", csv_text(header, rows, cfg))
    write(out / "celegans.json", dumps({"meta": res.meta, "observed": res.observed, "rows": res.rows}, cfg))
    return EXIT_OK


def cmd_simulate(args) -> int:
    p_values = [float(x) for x in args.p.split(",")] if args.p else list(experiments.SIM_P_GRID)
    q_values = _q_list(args.q) if args.q else [0, 1, 2]
    cfg = _config(args, [], null_model={"model": "erdos-renyi", "n": args.n, "p": p_values,
                                        "trials": args.trials, "limit": args.limit})
    cfg.q = q_values
    res = experiments.simulate_er(args.n, p_values, args.trials, args.seed, q_values, args.d_max,
                                  args.variant, args.limit)
    header = ["q", "p"]
    for m in experiments.SIM_MEASURES:
        header += [SIM_COLUMNS[m], SIM_COLUMNS[m] + " sd"]
    rows = []
    for q in q_values:
        for p in p_values:
            row = [q, p]
            for m in experiments.SIM_MEASURES:
                row += [res.mean(p, q, m), res.sd(p, q, m)]
            rows.append(row)
            print(f"q={q} p={p}: |V|={res.mean(p, q, 'n_vertices'):.1f} |E|={res.mean(p, q, 'n_arcs'):.1f}")
    write(Path(cfg.out_dir) / "simulation.csv", csv_text(header, rows, cfg))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--variant", choices=VARIANTS, default="maximal")
    common.add_argument("--weighted", action="store_true")
    common.add_argument("--remove-double-edges", action="store_true")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out-dir", default=".")
    common.add_argument("--d-max", type=int, default=None)
    common.add_argument("--q", default=None, help="levels, e.g. 0,1 or 0:3")

    ap = argparse.ArgumentParser(prog="dirqa", description="q-analysis of directed flag complexes")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("build", parents=[common], help="directed flag complex and Str1")
    p.add_argument("edge_list")
    p.set_defaults(func=cmd_build)
    p = sub.add_parser("analyze", parents=[common], help="q-digraph measures per level")
    p.add_argument("edge_list")
    p.add_argument("--measures", default=None, help="comma-separated measure names")
    p.set_defaults(func=cmd_analyze)
    p = sub.add_parser("compare", parents=[common], help="structure distances and kernels")
    p.add_argument("edge_list_a")
    p.add_argument("edge_list_b")
    p.set_defaults(func=cmd_compare)
    p = sub.add_parser("celegans", parents=[common], help="null-model z-score table")
    p.add_argument("edge_list")
    p.add_argument("--n-null", type=int, default=30)
    p.set_defaults(func=cmd_celegans)
    p = sub.add_parser("simulate", parents=[common], help="random digraph simulation tables")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--p", default=None, help="comma-separated probabilities")
    p.add_argument("--trials", type=int, default=30)
    p.add_argument("--limit", type=int, default=experiments.SIM_LIMIT)
    p.set_defaults(func=cmd_simulate)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
