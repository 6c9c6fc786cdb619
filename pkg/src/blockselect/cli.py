"""Command-line front end.

Exit codes are a stable contract: 0 success, 1 I/O error, 2 validation
error, 3 strict fingerprint mismatch.  All machine-readable output is
JSON on stdout; human-oriented tables go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import balance, io, metrics, oracle
from .core import (
    STRATEGIES,
    ConstraintSet,
    Partition,
    StrategyConfig,
    ValidationError,
    build_similarity,
    validate_inputs,
)
from .partition import block_capacity, random_partition, run_strategy
from .submodular import eval_fl, greedy_select

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_FINGERPRINT = 3

ORACLE_OBJECTIVES = ("best-subset",) + metrics.OBJECTIVES


def _parse_bool(value: str) -> bool:
    low = value.strip().lower()
    if low in ("true", "1", "yes", "on"):
        return True
    if low in ("false", "0", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {value!r}")


def _positive_int(flag: str):
    def parse(value: str) -> int:
        try:
            number = int(value)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"{flag} expects an integer") from exc
        if number < 1:
            raise argparse.ArgumentTypeError(f"{flag} must be a positive integer")
        return number

    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blockselect",
        description="Partition embedding sets into diverse or coherent context blocks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("--input", required=True, help="embedding file (csv/jsonl/bin)")
        p.add_argument(
            "--format",
            choices=io.FORMATS,
            default=None,
            help="input format (default: by extension)",
        )

    p_part = sub.add_parser("partition", help="run one strategy and write a partition file")
    add_input(p_part)
    p_part.add_argument("--strategy", required=True, choices=STRATEGIES)
    p_part.add_argument("--k", type=_positive_int("--k"), default=40)
    p_part.add_argument("--blocks", type=_positive_int("--blocks"), default=4)
    p_part.add_argument("--normalize", type=_parse_bool, default=True, metavar="BOOL")
    p_part.add_argument(
        "--balance-labels", type=_parse_bool, default=False, metavar="BOOL"
    )
    p_part.add_argument("--seed", type=int, default=0)
    p_part.add_argument("--output", required=True)

    p_score = sub.add_parser("score", help="recompute the report for a partition file")
    add_input(p_score)
    p_score.add_argument("--partition", required=True, help="partition json file")
    p_score.add_argument(
        "--strict",
        action="store_true",
        help="exit 3 when the input fingerprint does not match",
    )

    p_cmp = sub.add_parser("compare", help="run strategies plus a random baseline")
    add_input(p_cmp)
    p_cmp.add_argument(
        "--strategy",
        action="append",
        choices=STRATEGIES,
        default=None,
        help="strategy to include (repeatable; default: all four)",
    )
    p_cmp.add_argument("--k", type=_positive_int("--k"), default=40)
    p_cmp.add_argument("--blocks", type=_positive_int("--blocks"), default=4)
    p_cmp.add_argument("--normalize", type=_parse_bool, default=True, metavar="BOOL")
    p_cmp.add_argument("--seed", type=int, default=0)

    p_orc = sub.add_parser("oracle", help="exhaustive optimum and per-strategy ratios")
    add_input(p_orc)
    p_orc.add_argument("--k", type=_positive_int("--k"), required=True)
    p_orc.add_argument("--blocks", type=_positive_int("--blocks"), default=1)
    p_orc.add_argument("--objective", required=True, choices=ORACLE_OBJECTIVES)
    p_orc.add_argument("--normalize", type=_parse_bool, default=True, metavar="BOOL")
    p_orc.add_argument("--seed", type=int, default=0)

    return parser


def _load(args) -> io.EmbeddingMatrix:
    return io.load_embeddings(args.input, args.format)


def _constraints(args, emb) -> ConstraintSet:
    cons = ConstraintSet(k=args.k, B=args.blocks)
    if getattr(args, "balance_labels", False):
        if emb.labels is None:
            raise ValidationError(
                "--balance-labels requires a label column in the input"
            )
        cap = block_capacity(args.strategy, args.k, args.blocks)
        cons = replace(
            cons,
            per_block_capacity=cap,
            label_quotas=balance.quota_map(emb.labels, cap),
        )
    return cons


def cmd_partition(args) -> int:
    emb = _load(args)
    cons = _constraints(args, emb)
    cfg = StrategyConfig(
        strategy=args.strategy, seed=args.seed, normalize=args.normalize
    )
    part = run_strategy(emb, cons, cfg)
    S = build_similarity(emb, normalize=cfg.normalize)
    rep = metrics.report(S, part)
    io.write_partition(args.output, emb, cons, cfg, part, rep)
    print(io.dumps_canonical({"written": str(args.output), "strategy": part.strategy}))
    return EXIT_OK


def cmd_score(args) -> int:
    emb = _load(args)
    doc = io.read_partition(args.partition)
    part = Partition(
        blocks=tuple(tuple(b["indices"]) for b in doc["blocks"]),
        strategy=doc.get("strategy", "unknown"),
    )
    cons = ConstraintSet(k=int(doc["k"]), B=int(doc["B"]))
    validate_inputs(emb, cons)
    if part.total_selected > cons.k:
        raise ValidationError("partition selects more items than its budget k")
    S = build_similarity(emb, normalize=bool(doc.get("normalize", True)))
    rep = metrics.report(S, part)
    actual = io.fingerprint(emb)
    recorded = doc.get("input_fingerprint")
    if recorded != actual:
        message = (
            f"input fingerprint mismatch: file records {recorded}, input is {actual}"
        )
        if args.strict:
            print(f"error: {message}", file=sys.stderr)
            return EXIT_FINGERPRINT
        print(f"warning: {message}", file=sys.stderr)
    print(io.dumps_canonical(metrics.report_as_dict(rep)))
    return EXIT_OK


def _aligned_table(rows: list[list[str]]) -> str:
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    return "\n".join(
        "  ".join(cell.ljust(widths[c]) for c, cell in enumerate(row)).rstrip()
        for row in rows
    )


def cmd_compare(args) -> int:
    emb = _load(args)
    requested = args.strategy if args.strategy else list(STRATEGIES)
    strategies: list[str] = []
    for tag in requested:
        if tag in strategies:
            print(f"warning: duplicate --strategy {tag} ignored", file=sys.stderr)
        else:
            strategies.append(tag)
    cons = ConstraintSet(k=args.k, B=args.blocks)
    validate_inputs(emb, cons)
    parts = [
        run_strategy(
            emb,
            cons,
            StrategyConfig(strategy=tag, seed=args.seed, normalize=args.normalize),
        )
        for tag in strategies
    ]
    parts.append(random_partition(emb.n, cons, seed=args.seed))
    S = build_similarity(emb, normalize=args.normalize)
    comparison = metrics.compare(S, parts)
    names = [p.strategy for p in parts]
    doc = {
        "schema_version": io.SCHEMA_VERSION,
        "k": cons.k,
        "B": cons.B,
        "seed": args.seed,
        "normalize": args.normalize,
        "entries": [metrics.report_as_dict(r) for r in comparison.entries],
        "rankings": {
            obj: [names[i] for i in order]
            for obj, order in comparison.rankings.items()
        },
    }
    print(io.dumps_canonical(doc))
    rows = [["strategy", "min_f", "max_f", "sum_f", "union_f"]]
    for rep in comparison.entries:
        rows.append(
            [
                rep.strategy,
                f"{rep.min_f:.4f}",
                f"{rep.max_f:.4f}",
                f"{rep.sum_f:.4f}",
                f"{rep.union_f:.4f}",
            ]
        )
    print(_aligned_table(rows), file=sys.stderr)
    return EXIT_OK


def cmd_oracle(args) -> int:
    emb = _load(args)
    cons = ConstraintSet(k=args.k, B=args.blocks)
    validate_inputs(emb, cons)
    S = build_similarity(emb, normalize=args.normalize)

    def ratio(achieved: float, optimal: float, maximize: bool) -> float:
        hi, lo = (optimal, achieved) if maximize else (achieved, optimal)
        if hi == 0.0:
            return 1.0
        return lo / hi

    if args.objective == "best-subset":
        subset, opt = oracle.brute_best_subset(S, args.k)
        greedy = greedy_select(S, args.k)
        doc = {
            "objective": "best-subset",
            "optimum": opt,
            "optimal_subset": list(subset),
            "ratios": {"greedy": ratio(eval_fl(S, greedy), opt, maximize=True)},
        }
        print(io.dumps_canonical(doc))
        return EXIT_OK

    best_part, opt = oracle.brute_best_partition(S, cons, args.objective)
    maximize = metrics.OBJECTIVE_DIRECTION[args.objective] > 0
    ratios = {}
    for tag in STRATEGIES:
        part = run_strategy(
            emb,
            cons,
            StrategyConfig(strategy=tag, seed=args.seed, normalize=args.normalize),
        )
        value = metrics.report(S, part).objective_value(args.objective)
        ratios[tag] = ratio(value, opt, maximize)
    doc = {
        "objective": args.objective,
        "optimum": opt,
        "optimal_blocks": [list(b) for b in best_part.blocks],
        "ratios": ratios,
    }
    print(io.dumps_canonical(doc))
    return EXIT_OK


COMMANDS = {
    "partition": cmd_partition,
    "score": cmd_score,
    "compare": cmd_compare,
    "oracle": cmd_oracle,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code not in (0, None) else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
