"""Command line entry point: ``knotsearch <verb> ...``.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys

os.environ.setdefault("OPENBLAS_NUM_THREADS", "1")

import numpy as np  # noqa: E402

from . import experiments as ex  # noqa: E402
from . import neuralnet as nn  # noqa: E402
from .data_ingest import ingest_csv  # noqa: E402
from .errors import DataError, KnotSearchError  # noqa: E402
from .explain import export_heatmap, lrp, rank_features  # noqa: E402
from .report import ResultQuery, emit_latex, emit_heatmap_plot_data, query  # noqa: E402
from .validation import run_all  # noqa: E402

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _load(args):
    if args.data:
        return ingest_csv(args.data, schema_hints=args.schema)
    from .knotinfo import load_dataset

    return load_dataset()


def _config(args) -> nn.NetworkConfig:
    return nn.NetworkConfig(task=nn.REGRESSION, epochs=args.epochs)


def _append(path, results):
    if path:
        ex.write_results(path, results, append=True)


def cmd_learn(args) -> int:
    if args.num_inputs != len(args.names) - 1:
        raise UsageError(f"expected {args.num_inputs} inputs and one output, got {len(args.names)} names")
    *inputs, output = args.names
    ds = _load(args)
    spec = ex.make_spec(ds, inputs, output, runs=args.runs, seed_base=args.seed)
    result, models, design = ex.run_experiment(ds, spec, _config(args), args.min_knots, keep_models=True)
    print(result.to_line())
    _append(args.results, [result])
    net, test_idx = models[0]
    if args.save_model:
        nn.save_model(net, args.save_model)
    if args.save_features:
        with open(args.save_features, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["knot_id", *design.feature_names])
            for i in test_idx:
                w.writerow([design.knot_ids[i], *(repr(float(v)) for v in design.X[i])])
    return EXIT_OK


def cmd_sweep(args) -> int:
    ds = _load(args)
    specs = [ex.make_spec(ds, ins, out, runs=args.runs, seed_base=args.seed) for ins, out in ex.read_manifest(args.manifest)]

    def sink(res):
        print(res.to_line(), flush=True)
        _append(args.results, [res])

    ex.run_many(ds, specs, _config(args), args.min_knots, args.workers, sink)
    return EXIT_OK


def cmd_scan(args) -> int:
    ds = _load(args)
    points = ex.random_points(args.random_points, args.seed) if args.random_points else None
    grid = ex.scan_grid(
        ds, args.poly, args.output, step=args.step, runs=args.runs, config=_config(args),
        min_knots=args.min_knots, seed_base=args.seed, points=points, workers=args.workers,
    )
    text = emit_heatmap_plot_data(grid)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    best, acc = grid.best()
    print(f"best point {best} accuracy {acc!r}", file=sys.stderr)
    return EXIT_OK


def cmd_lrp(args) -> int:
    net = nn.load_model(args.model)
    with open(args.data, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise DataError(f"{args.data}: empty feature file")
    names = rows[0][1:]
    ids = [r[0] for r in rows[1:]]
    try:
        X = np.array([[float(v) for v in r[1:]] for r in rows[1:]], dtype=float).reshape(len(ids), len(names))
    except ValueError as exc:
        raise DataError(f"{args.data}: {exc}") from None
    rmap = lrp(net, X)
    if args.out:
        export_heatmap(rmap, ids, names, args.out, args.meta)
    for j in rank_features(rmap)[: args.top]:
        print(f"{names[j]}\t{np.abs(rmap.per_sample[:, j]).mean()!r}")
    return EXIT_OK


def _names(text):
    if text is None:
        return "ALL"
    if text.upper() in ("ALL", "POLY"):
        return text.upper()
    return tuple(s.strip() for s in text.split(",") if s.strip())


def cmd_report(args) -> int:
    q = ResultQuery(
        num_inputs=args.num_inputs,
        min_accuracy=args.min_accuracy,
        max_accuracy=args.max_accuracy,
        min_knots=args.min_knots,
        max_knots=args.max_knots,
        inputs=_names(args.inputs),
        outputs=_names(args.outputs),
    )
    text = emit_latex(query(args.results, q))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_validate(args) -> int:
    ds = _load(args)
    ok = True
    for rep in run_all(ds):
        print(f"{rep.check}: {rep.rows_checked} rows, {len(rep.violations)} violations")
        for v in rep.violations[: args.show]:
            print(f"  {v.knot_id}: {v.detail}")
        ok &= rep.passed
    return EXIT_OK if ok else EXIT_DATA


def cmd_export(args) -> int:
    from .knotinfo import export_csv

    blanked = export_csv(args.out, args.max_crossings, args.hints)
    for col, n in blanked.most_common():
        print(f"blanked {n} cells in {col}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="knotsearch", description="Search knot invariant tables for learnable correlations.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def data_opts(sp):
        sp.add_argument("--data", help="invariant CSV (default: packaged KnotInfo, <= 12 crossings)")
        sp.add_argument("--schema", help="column=kind hints file")

    def train_opts(sp, runs):
        sp.add_argument("--runs", type=int, default=runs)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--epochs", type=int, default=100)
        sp.add_argument("--min-knots", type=int, default=ex.DEFAULT_MIN_KNOTS)
        sp.add_argument("--workers", type=int, default=1)

    sp = sub.add_parser("learn", help="run one experiment")
    sp.add_argument("num_inputs", type=int, choices=(1, 2, 3))
    sp.add_argument("names", nargs="+", metavar="name", help="inputs then output")
    data_opts(sp)
    train_opts(sp, 1)
    sp.add_argument("--results", help="append the results line here")
    sp.add_argument("--save-model")
    sp.add_argument("--save-features", help="write the first run's test features (for lrp)")
    sp.set_defaults(func=cmd_learn)

    sp = sub.add_parser("sweep", help="run every spec in a manifest")
    sp.add_argument("--manifest", required=True)
    data_opts(sp)
    train_opts(sp, 1)
    sp.add_argument("--results")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("scan", help="evaluation-point heatmap")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--output", required=True)
    sp.add_argument("--step", type=float, default=0.1)
    sp.add_argument("--random-points", type=int, default=0, help="scan this many random points instead of the grid")
    sp.add_argument("--out")
    data_opts(sp)
    train_opts(sp, 5)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("lrp", help="relevance scores for a saved model")
    sp.add_argument("--model", required=True)
    sp.add_argument("--data", required=True, help="feature CSV written by learn --save-features")
    sp.add_argument("--out")
    sp.add_argument("--meta")
    sp.add_argument("--top", type=int, default=10)
    sp.set_defaults(func=cmd_lrp)

    sp = sub.add_parser("report", help="filter a results file into a LaTeX table")
    sp.add_argument("--results", required=True)
    sp.add_argument("--num-inputs", type=int, choices=(1, 2, 3))
    sp.add_argument("--min-accuracy", type=float, default=float("-inf"))
    sp.add_argument("--max-accuracy", type=float, default=float("inf"))
    sp.add_argument("--min-knots", type=int, default=0)
    sp.add_argument("--max-knots", type=float, default=float("inf"))
    sp.add_argument("--inputs", help="comma list, ALL or POLY")
    sp.add_argument("--outputs", help="comma list or ALL")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("validate-dataset", help="check determinant and Turaev identities")
    data_opts(sp)
    sp.add_argument("--show", type=int, default=10)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("export-knotinfo", help="write the packaged KnotInfo table as CSV")
    sp.add_argument("--out", required=True)
    sp.add_argument("--max-crossings", type=int, default=12)
    sp.add_argument("--hints")
    sp.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (KnotSearchError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
