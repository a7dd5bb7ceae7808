"""``centra`` command line interface.

Exit codes: 0 success, 1 data error, 2 usage error, 3 stability bound violated.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .centrality import Measure, compute
from .exceptions import CentraError
from .experiments import (
    BOUNDED_MEASURES,
    FIVE_MEASURES,
    connected_random_network,
    cross_measure_matrix,
    real_network_sweep,
    run_perturbation_experiment,
    verify_stability_bounds,
)
from .graph import ConversionRule, WeightKind, convert_weights
from .io import parse_config, parse_edge_list, write_csv
from .ranking import centrality_ranking

log = logging.getLogger("centra")

EXIT_DATA = 1
EXIT_VIOLATION = 3


def _seed(value):
    if value is not None:
        return value
    env = os.environ.get("CENTRA_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise argparse.ArgumentTypeError(f"CENTRA_SEED must be an integer, got {env!r}") from None


def _int_list(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text):
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _measure_list(text):
    try:
        return tuple(Measure(x.strip()) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _jobs(args):
    return args.jobs if args.jobs is not None else (os.cpu_count() or 1)


def cmd_centrality(args, out):
    g, labels = parse_edge_list(args.graph, args.weight_kind)
    measure = args.measure
    if g.weight_kind.value != measure.weight_kind:
        g = convert_weights(g, args.conversion)
    cv = compute(g, measure)
    ranks = centrality_ranking(cv).rank_of
    write_csv(out, ["node", "value", "rank"], [(labels[i], float(cv.values[i]), int(ranks[i])) for i in range(g.n)])


def cmd_perturb_experiment(args, out):
    config = parse_config(args.config)
    if args.seed is not None or "CENTRA_SEED" in os.environ:
        from dataclasses import replace

        config = replace(config, seed=_seed(args.seed))
    reports = run_perturbation_experiment(config, jobs=_jobs(args))
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    cells = [(n, m) for n in config.sizes for m in config.measures]
    header = ["size", "measure", "value"]
    write_csv(outdir / "mean_max_displacement.csv", header, [(n, m, reports[(n, m)].mean_max) for n, m in cells])
    write_csv(
        outdir / "mean_average_displacement.csv", header, [(n, m, reports[(n, m)].mean_average) for n, m in cells]
    )
    for t in config.thresholds:
        write_csv(outdir / f"exceedance_gt_{t}.csv", header, [(n, m, reports[(n, m)].exceedance(t)) for n, m in cells])
    write_csv(outdir / f"top_{config.top_k}_retention.csv", header, [(n, m, reports[(n, m)].top_k_rate) for n, m in cells])
    write_csv(
        outdir / "max_displacement_histogram.csv",
        ["size", "measure", "displacement", "count"],
        [(n, m, k, c) for n, m in cells for k, c in reports[(n, m)].histogram.items()],
    )
    print(f"wrote {len(config.thresholds) + 4} files to {outdir}", file=out)


def cmd_sweep(args, out):
    g, labels = parse_edge_list(args.graph, args.weight_kind)
    measures = args.measures
    if args.measures_given is False:
        measures = tuple(m for m in FIVE_MEASURES if g.is_symmetric or m not in (Measure.DEGREE, Measure.EIGENVECTOR))
        if len(measures) < len(FIVE_MEASURES):
            log.warning("graph is directed: skipping degree and eigenvector centrality")
    reports = real_network_sweep(
        {g.weight_kind: g}, args.deltas, args.trials, _seed(args.seed), measures, conversion=args.conversion
    )
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    cells = [(d, m) for d in args.deltas for m in measures]
    write_csv(
        outdir / "exceedance.csv",
        ["delta", "measure", "threshold", "probability"],
        [(d, m, t, reports[(d, m)].exceedance(t)) for d, m in cells for t in args.thresholds],
    )
    write_csv(
        outdir / "histogram.csv",
        ["delta", "measure", "displacement", "count"],
        [(d, m, k, c) for d, m in cells for k, c in reports[(d, m)].histogram.items()],
    )
    write_csv(
        outdir / "summary.csv",
        ["delta", "measure", "mean_max_displacement", "mean_average_displacement"],
        [(d, m, reports[(d, m)].mean_max, reports[(d, m)].mean_average) for d, m in cells],
    )
    print(f"wrote 3 files to {outdir}", file=out)


def cmd_compare_measures(args, out):
    seed = _seed(args.seed)
    rows = []
    for n in args.sizes:
        nets = [connected_random_network(n, (seed, n, t, 0)) for t in range(args.trials)]
        res = cross_measure_matrix(nets, args.measures)
        table = res.table()
        for i, m in enumerate(res.measures):
            rows.append([n, m] + [float(x) for x in table[i]])
    write_csv(out, ["size", "measure"] + [m.value for m in args.measures], rows)


def cmd_verify_bounds(args, out):
    checks = verify_stability_bounds(args.sizes, args.trials, _seed(args.seed), args.measures, jobs=_jobs(args))
    write_csv(
        out,
        ["measure", "pairs", "worst_ratio", "worst_ratio_over_bound", "violations"],
        [(c.measure, c.pairs, c.worst_ratio, c.worst_fraction, c.violations) for c in checks.values()],
    )
    if any(c.violations for c in checks.values()):
        return EXIT_VIOLATION
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="centra", description="Centrality stability toolkit")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, jobs=True):
        sp.add_argument("--seed", type=int, default=None, help="master seed (falls back to $CENTRA_SEED, then 0)")
        if jobs:
            sp.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")

    kinds = [k.value for k in WeightKind]
    rules = [r.value for r in ConversionRule]

    c = sub.add_parser("centrality", help="per-node values and ranks as CSV")
    c.add_argument("--graph", required=True)
    c.add_argument("--measure", required=True, type=Measure, choices=list(Measure), metavar="MEASURE")
    c.add_argument("--weight-kind", default="similarity", choices=kinds)
    c.add_argument("--conversion", default="reciprocal", choices=rules)
    c.set_defaults(func=cmd_centrality)

    e = sub.add_parser("perturb-experiment", help="random-network robustness indicators")
    e.add_argument("--config", required=True)
    e.add_argument("--out", default="experiment_out")
    common(e)
    e.set_defaults(func=cmd_perturb_experiment)

    s = sub.add_parser("sweep", help="robustness of one network against perturbation size")
    s.add_argument("--graph", required=True)
    s.add_argument("--weight-kind", default="similarity", choices=kinds)
    s.add_argument("--conversion", default="reciprocal", choices=rules)
    s.add_argument("--deltas", type=_float_list, default=(0.005, 0.01, 0.02, 0.035, 0.05))
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--thresholds", type=_int_list, default=(1, 3))
    s.add_argument("--measures", type=_measure_list, default=None)
    s.add_argument("--out", default="sweep_out")
    common(s, jobs=False)
    s.set_defaults(func=cmd_sweep)

    m = sub.add_parser("compare-measures", help="ranking displacement between measures")
    m.add_argument("--sizes", type=_int_list, default=(100,))
    m.add_argument("--trials", type=int, default=30)
    m.add_argument(
        "--measures",
        type=_measure_list,
        default=FIVE_MEASURES + (Measure.DEGREE_SQUARED,),
    )
    common(m, jobs=False)
    m.set_defaults(func=cmd_compare_measures)

    b = sub.add_parser("verify-bounds", help="check proven stability constants on random pairs")
    b.add_argument("--sizes", type=_int_list, default=(10, 20, 30, 40, 50, 60))
    b.add_argument("--trials", type=int, default=10)
    b.add_argument("--measures", type=_measure_list, default=BOUNDED_MEASURES)
    common(b)
    b.set_defaults(func=cmd_verify_bounds)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    if getattr(args, "command", None) == "sweep":
        args.measures_given = args.measures is not None
        if args.measures is None:
            args.measures = FIVE_MEASURES
        if any(not 0 <= d < 1 for d in args.deltas):
            parser.error("--deltas must lie in [0, 1)")
    if getattr(args, "trials", 1) < 1:
        parser.error("--trials must be positive")
    if getattr(args, "jobs", None) is not None and args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        _seed(getattr(args, "seed", None))
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    try:
        return args.func(args, out) or 0
    except (CentraError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
