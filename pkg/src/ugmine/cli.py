"""Command-line interface: mine, oracle-check, gen, featurize, evaluate, stats.

Exit codes: 0 success, 1 runtime/data failure, 2 usage error. Output is
deterministic given identical flags and inputs.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys

import numpy as np

from .classify import evaluate, export_csv, featurize
from .distribution import (
    MEASURE_KINDS,
    PHI_PROBABILITY,
    MeasureSpec,
    joint_distribution,
    measure_from_joint,
    support_distribution,
)
from .graphs import (
    Dataset,
    DatasetFormatError,
    Subgraph,
    parse_dataset,
    serialize_dataset,
    union_graph,
)
from .miner import MiningConfig, MiningResult, mine
from .oracle import DEFAULT_MAX_WORLDS, WorldCountError, oracle_joint, oracle_measure
from .scores import SCORE_KINDS, ScoreFunction
from .synth import PRESETS, dataset_stats, make_preset

PHI_DEFAULTS = {"hsic": 0.03, "gtest": 200.0, "ratio": 1.0, "conf": 0.5}


class UsageError(Exception):
    """Invalid flag combination or unusable input path."""


def _json_value(x: float) -> float | str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


def _add_dataset_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="dataset JSON file")


def _add_mining_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--measure", choices=MEASURE_KINDS, default="phi-pr")
    p.add_argument("--score", choices=SCORE_KINDS, default="ratio")
    p.add_argument("--top", type=int, default=100, help="number of features to keep")
    p.add_argument("--min-sup", type=float, default=0.2, help="minimum expected frequency")
    p.add_argument("--phi", type=float, default=None, help="phi threshold (phi-pr only)")
    p.add_argument("--cap-epsilon", type=float, default=None, help="score cap 1/eps; 0 disables")
    p.add_argument("--max-edges", type=int, default=None)
    p.add_argument("--no-prune", action="store_true", help="disable all subtree pruning")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ugmine",
        description="Discriminative subgraph mining over uncertain graph datasets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="mine top-t discriminative subgraph features")
    _add_dataset_arg(p)
    _add_mining_args(p)
    p.add_argument("--out", help="write the JSON feature list here instead of stdout")

    p = sub.add_parser("oracle-check", help="compare the DP route against brute-force worlds")
    _add_dataset_arg(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--measure", choices=MEASURE_KINDS, default="phi-pr")
    p.add_argument("--score", choices=SCORE_KINDS, default="ratio")
    p.add_argument("--phi", type=float, default=None)
    p.add_argument("--cap-epsilon", type=float, default=None)
    p.add_argument("--max-worlds", type=int, default=DEFAULT_MAX_WORLDS)

    p = sub.add_parser("gen", help="generate a synthetic dataset")
    p.add_argument("--preset", choices=PRESETS, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--planted-prob-pos", type=float, default=0.9)
    p.add_argument("--planted-prob-neg", type=float, default=0.1)
    p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("featurize", help="export containment-probability features as CSV")
    _add_dataset_arg(p)
    p.add_argument("--features", required=True, help="JSON feature list (mine output)")
    p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("evaluate", help="mine + classify over repeated stratified splits")
    _add_dataset_arg(p)
    _add_mining_args(p)
    p.add_argument("--repeats", type=int, default=20)
    p.add_argument("--train-fraction", type=float, default=0.8)
    p.add_argument("--out", help="write the JSON report here instead of stdout")

    p = sub.add_parser("stats", help="dataset summary statistics")
    _add_dataset_arg(p)
    return parser


def _load_dataset(path: str) -> Dataset:
    if not os.path.isfile(path):
        raise UsageError(f"input file not found: {path}")
    with open(path, "rb") as fh:
        return parse_dataset(fh.read())


def _mining_config(args: argparse.Namespace) -> MiningConfig:
    if args.phi is not None and args.measure != PHI_PROBABILITY:
        raise UsageError("--phi only applies to the phi-pr measure")
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    phi = None
    if args.measure == PHI_PROBABILITY:
        phi = args.phi if args.phi is not None else PHI_DEFAULTS[args.score]
    if args.cap_epsilon is not None:
        cap = args.cap_epsilon
    elif args.measure == "exp" and args.score in ("ratio", "gtest"):
        cap = 0.01  # expectation is fragile to +inf scores; cap by default
    else:
        cap = 0.0
    return MiningConfig(
        t=args.top,
        min_sup=args.min_sup,
        measure=MeasureSpec(args.measure, phi),
        score=ScoreFunction(args.score, cap),
        max_edges=args.max_edges,
        frequency_pruning=not args.no_prune,
        bound_pruning=not args.no_prune,
    )


def _feature_payload(result: MiningResult, cfg: MiningConfig) -> dict:
    return {
        "measure": cfg.measure.kind,
        "phi": None if cfg.measure.phi is None else _json_value(cfg.measure.phi),
        "score": cfg.score.kind,
        "cap_epsilon": cfg.score.cap_epsilon,
        "min_sup": cfg.min_sup,
        "top": cfg.t,
        "features": [
            {
                "rank": i + 1,
                "edges": [[u, v] for u, v in f.subgraph.edges],
                "measure_value": _json_value(f.measure_value),
                "exp_freq": f.exp_freq,
            }
            for i, f in enumerate(result.features)
        ],
        "stats": {
            "nodes_evaluated": result.stats.nodes_evaluated,
            "frequency_pruned": result.stats.frequency_pruned,
            "bound_pruned": result.stats.bound_pruned,
        },
    }


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _run_mine(args: argparse.Namespace) -> int:
    dataset = _load_dataset(args.input)
    cfg = _mining_config(args)
    result = mine(dataset, cfg)
    print(f"{'rank':>4}  {'measure':>14}  {'exp_freq':>10}  edges")
    for i, f in enumerate(result.features):
        edges = " ".join(f"({u},{v})" for u, v in f.subgraph.edges)
        print(f"{i + 1:>4}  {f.measure_value:>14.6g}  {f.exp_freq:>10.6g}  {edges}")
    print(
        f"# evaluated {result.stats.nodes_evaluated} nodes, "
        f"pruned {result.stats.frequency_pruned} by frequency, "
        f"{result.stats.bound_pruned} by bound"
    )
    payload = json.dumps(_feature_payload(result, cfg), indent=1) + "\n"
    _emit(payload, args.out)
    return 0


def _random_connected_subgraph(rng: random.Random, edges: list, adjacency: dict) -> Subgraph:
    sub = {rng.choice(edges)}
    target = rng.randint(1, 3)
    while len(sub) < target:
        nodes = {n for e in sub for n in e}
        frontier = sorted({e for n in nodes for e in adjacency[n]} - sub)
        if not frontier:
            break
        sub.add(rng.choice(frontier))
    return Subgraph(tuple(sorted(sub)))


def _run_oracle_check(args: argparse.Namespace) -> int:
    dataset = _load_dataset(args.input)
    if dataset.n_pos < 1 or dataset.n_neg < 1:
        raise UsageError("oracle-check needs both classes present")
    if args.phi is not None and args.measure != PHI_PROBABILITY:
        raise UsageError("--phi only applies to the phi-pr measure")
    phi = None
    if args.measure == PHI_PROBABILITY:
        phi = args.phi if args.phi is not None else PHI_DEFAULTS[args.score]
    measure = MeasureSpec(args.measure, phi)
    score = ScoreFunction(args.score, args.cap_epsilon or 0.0)

    universe = union_graph(dataset)
    edges = sorted(universe.edges)
    if not edges:
        print("0/0 matched (empty union graph)")
        return 0
    adjacency: dict[int, set] = {}
    for e in edges:
        adjacency.setdefault(e[0], set()).add(e)
        adjacency.setdefault(e[1], set()).add(e)

    rng = random.Random(args.seed)
    matched = 0
    for _ in range(args.trials):
        g = _random_connected_subgraph(rng, edges, adjacency)
        dp_joint = joint_distribution(
            support_distribution(g, dataset.pos), support_distribution(g, dataset.neg)
        )
        bf_joint = oracle_joint(g, dataset, args.max_worlds)
        ok = bool(np.max(np.abs(dp_joint - bf_joint)) <= 1e-9)
        dp_m = measure_from_joint(dp_joint, score, measure)
        bf_m = oracle_measure(g, dataset, measure, score, args.max_worlds)
        if math.isinf(dp_m) or math.isinf(bf_m):
            ok = ok and dp_m == bf_m
        else:
            ok = ok and abs(dp_m - bf_m) <= 1e-9
        matched += ok
    print(f"{matched}/{args.trials} matched")
    return 0 if matched == args.trials else 1


def _run_gen(args: argparse.Namespace) -> int:
    dataset = make_preset(
        args.preset,
        seed=args.seed,
        **(
            {}
            if args.preset == "fig2"
            else {
                "planted_prob_pos": args.planted_prob_pos,
                "planted_prob_neg": args.planted_prob_neg,
            }
        ),
    )
    data = serialize_dataset(dataset)
    if args.out is None:
        sys.stdout.write(data.decode("utf-8"))
    else:
        with open(args.out, "wb") as fh:
            fh.write(data)
    return 0


def _run_featurize(args: argparse.Namespace) -> int:
    dataset = _load_dataset(args.input)
    if not os.path.isfile(args.features):
        raise UsageError(f"features file not found: {args.features}")
    with open(args.features, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    raw = obj["features"] if isinstance(obj, dict) else obj
    features = [Subgraph.from_edges([(u, v) for u, v in item["edges"]]) for item in raw]
    if not features:
        raise UsageError("features file holds no features")
    matrix = featurize(dataset, features)
    data = export_csv(matrix)
    if args.out is None:
        sys.stdout.write(data.decode("utf-8"))
    else:
        with open(args.out, "wb") as fh:
            fh.write(data)
    return 0


def _run_evaluate(args: argparse.Namespace) -> int:
    dataset = _load_dataset(args.input)
    cfg = _mining_config(args)
    report = evaluate(
        dataset,
        cfg,
        repeats=args.repeats,
        train_fraction=args.train_fraction,
        seed=args.seed,
    )
    print(f"{'repeat':>6}  {'error':>8}  {'f1':>8}")
    for i, (e, f) in enumerate(zip(report.error_rates, report.f1_scores)):
        print(f"{i:>6}  {e:>8.4f}  {f:>8.4f}")
    print(f"error rate: {report.mean_error:.4f} +- {report.std_error:.4f}")
    print(f"f1 score:   {report.mean_f1:.4f} +- {report.std_f1:.4f}")
    payload = {
        "repeats": args.repeats,
        "train_fraction": args.train_fraction,
        "seed": args.seed,
        "error_rates": list(report.error_rates),
        "f1_scores": list(report.f1_scores),
        "mean_error": report.mean_error,
        "std_error": report.std_error,
        "mean_f1": report.mean_f1,
        "std_f1": report.std_f1,
    }
    _emit(json.dumps(payload, indent=1) + "\n", args.out)
    return 0


def _run_stats(args: argparse.Namespace) -> int:
    stats = dataset_stats(_load_dataset(args.input))
    payload = {
        "n_graphs": stats.n_graphs,
        "n_pos": stats.n_pos,
        "n_neg": stats.n_neg,
        "num_nodes": stats.num_nodes,
        "mean_edges": stats.mean_edges,
        "mean_edge_prob": stats.mean_edge_prob,
        "empty": stats.empty,
    }
    sys.stdout.write(json.dumps(payload, indent=1) + "\n")
    return 0


_RUNNERS = {
    "mine": _run_mine,
    "oracle-check": _run_oracle_check,
    "gen": _run_gen,
    "featurize": _run_featurize,
    "evaluate": _run_evaluate,
    "stats": _run_stats,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _RUNNERS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DatasetFormatError, WorldCountError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
