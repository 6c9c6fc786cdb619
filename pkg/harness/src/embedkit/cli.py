"""`embed` command: dataset in, embedding JSONL out."""

from __future__ import annotations

import argparse
import sys

from .datasets import DatasetError, DatasetSpec
from .embed import embed_dataset


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="embed",
        description="Embed a text classification dataset into JSONL.",
    )
    parser.add_argument("--dataset", required=True,
                        help="local csv/tsv/json/jsonl file or hub dataset name")
    parser.add_argument("--split", default="train")
    parser.add_argument("--text-field", default="text")
    parser.add_argument("--label-field", default="label")
    parser.add_argument("--model", default="hash:256",
                        help="'hash:<dim>' or a sentence-transformers model name")
    parser.add_argument("--output", required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    spec = DatasetSpec(
        dataset=args.dataset,
        split=args.split,
        text_field=args.text_field,
        label_field=args.label_field,
        model=args.model,
        output=args.output,
    )
    try:
        out = embed_dataset(spec)
    except (DatasetError, RuntimeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
