"""tag-corpus command line entry point."""

from __future__ import annotations

import argparse
import sys

from . import demo_backend  # noqa: F401  (registers the demo backend)
from .adapter import AdapterConfig, tag_file
from .backends import available_backends
from .errors import MissingPipelineError, TagCorpusError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tag-corpus",
        description="Tag plain text into the canonical reduced-POS tag-stream format",
    )
    parser.add_argument("--lang", required=True, help="language code, e.g. es or en")
    parser.add_argument("--in", dest="inputs", required=True, nargs="+",
                        help="input .txt files or directories")
    parser.add_argument("--out", required=True, help="output tag-stream path")
    parser.add_argument("--backend", default="spacy",
                        help=f"tagger backend ({', '.join(available_backends())})")
    parser.add_argument("--batch-size", type=int, default=1000)
    parser.add_argument("--reduction-table", default=None,
                        help="override the shared reduction table JSON")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = AdapterConfig(
        language=args.lang,
        inputs=tuple(args.inputs),
        output=args.out,
        backend=args.backend,
        batch_size=args.batch_size,
        reduction_table=args.reduction_table,
    )
    try:
        report = tag_file(config)
    except (FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MissingPipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except TagCorpusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(
        f"wrote {report.sentences} sentences / {report.tokens} tags "
        f"from {report.documents} documents to {report.output}"
    )
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
