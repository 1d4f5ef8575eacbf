"""Command-line surface.

Subcommands cover the full pipeline: ``entropy`` (position sweep plus
the non-causal-minus-causal aggregate), ``patterns`` (low-entropy
context mining), ``generate`` (mask-fill or causal sampling from the
bundled count-based model), ``evaluate`` (conditional relative entropy
of generated batches against references), and ``compare`` (two-corpus
predictability summary). Every run writes ``manifest.json`` with the
effective parameters and input checksums, so reruns are reproducible.

Exit codes: 0 success, 2 input error, 3 parameter/spec error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
from pathlib import Path

from . import __version__
from .corpus import TagCorpus, read_conllu, read_tagstream, write_tagstream
from .counting import ContextSpec, CountTable, count, count_sharded
from .demo import DEMO_SEED, DEMO_TOKENS, demo_corpus
from .divergence import conditional_relative_entropy
from .entropy import (
    DEFAULT_MIN_CONTEXT_COUNT,
    DEFAULT_PATTERN_THRESHOLD,
    DEFAULT_TARGET_VARIANCE,
    avg_conditional_entropy,
    compare_languages,
    mine_patterns,
    noncausal_minus_causal,
    position_sweep,
)
from .errors import InputError, SpecError
from .generation import (
    FilterSet,
    GenerationConfig,
    NGramMaskedModel,
    generate_causal,
    generate_noncausal,
)

THREADS_ENV = "PREDICTALANG_THREADS"

SWEEP_COLUMNS = [
    "kind", "window_len", "predicted_pos", "avg_entropy_bits", "windows_used",
    "distinct_contexts", "required_context_tokens", "required_outcome_tokens",
]
PATTERN_COLUMNS = [
    "window_len", "predicted_pos", "context", "argmax", "entropy_bits",
    "count", "max_prob",
]
EVALUATE_COLUMNS = [
    "batch", "reference", "context", "window_len", "predicted_pos", "kl_bits",
    "contexts_scored", "contexts_skipped", "smoothing_alpha", "unbounded_terms",
]
COMPARE_COLUMNS = [
    "window_len", "causal_entropy_a", "causal_entropy_b",
    "causal_more_predictable", "causal_margin_pct",
    "noncausal_rest_a", "noncausal_rest_b",
    "noncausal_more_predictable", "noncausal_margin_pct",
]


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _count(corpus: TagCorpus, spec: ContextSpec) -> CountTable:
    threads = _threads()
    if threads > 1:
        return count_sharded(corpus, spec, threads)
    return count(corpus, spec)


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _load_corpus(spec: str, fmt: str, cross_sentences: bool) -> tuple[TagCorpus, dict]:
    """Resolve a corpus argument; 'demo' selects the bundled corpus."""
    if spec == "demo":
        corpus = demo_corpus()
        source = {"demo": f"markov(seed={DEMO_SEED}, tokens={DEMO_TOKENS})"}
    else:
        reader = read_conllu if fmt == "conllu" else read_tagstream
        corpus = reader(spec)
        source = {spec: _sha256(spec)}
    if cross_sentences:
        corpus = corpus.flattened()
    return corpus, source


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _write_csv(path: Path, columns: list[str], rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns)
        writer.writeheader()
        writer.writerows(rows)


def _emit(outdir: Path, stem: str, emit: str, payload, columns, rows) -> list[str]:
    written = []
    if emit in ("json", "both"):
        _write_json(outdir / f"{stem}.json", payload)
        written.append(f"{stem}.json")
    if emit in ("csv", "both"):
        _write_csv(outdir / f"{stem}.csv", columns, rows)
        written.append(f"{stem}.csv")
    return written


def _manifest(outdir: Path, command: str, params: dict, inputs: dict,
              outputs: list[str], warnings: list[str] | None = None) -> None:
    payload = {
        "command": command,
        "version": __version__,
        "parameters": params,
        "inputs": inputs,
        "outputs": sorted(outputs),
    }
    if warnings:
        payload["warnings"] = warnings
    _write_json(outdir / "manifest.json", payload)


def _outdir(args) -> Path:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    return outdir


def _sweep_row(report) -> dict:
    return {
        "kind": "position",
        "window_len": report.spec.window_len,
        "predicted_pos": report.spec.predicted_pos,
        "avg_entropy_bits": f"{report.avg_entropy:.6f}",
        "windows_used": report.windows_used,
        "distinct_contexts": report.distinct_contexts,
        "required_context_tokens": report.sufficiency.required_context_tokens,
        "required_outcome_tokens": report.sufficiency.required_outcome_tokens,
    }


def cmd_entropy(args) -> int:
    outdir = _outdir(args)
    corpus, inputs = _load_corpus(args.corpus, args.format, args.cross_sentences)
    rows = []
    payload: dict = {"window_len": args.window}
    if args.position == "all":
        sweep = position_sweep(corpus, args.window, args.target_variance)
        aggregate = noncausal_minus_causal(sweep)
        payload["positions"] = [r.to_json_dict() for r in sweep]
        payload["noncausal_minus_causal_bits"] = aggregate
        payload["causal_bits"] = sweep[-1].avg_entropy
        rows = [_sweep_row(r) for r in sweep]
        rows.append({
            "kind": "noncausal_minus_causal",
            "window_len": args.window,
            "predicted_pos": "",
            "avg_entropy_bits": f"{aggregate:.6f}",
            "windows_used": "",
            "distinct_contexts": "",
            "required_context_tokens": "",
            "required_outcome_tokens": "",
        })
    else:
        k = int(args.position)
        table = _count(corpus, ContextSpec(args.window, k))
        report = avg_conditional_entropy(table, args.target_variance)
        payload["positions"] = [report.to_json_dict()]
        rows = [_sweep_row(report)]
    outputs = _emit(outdir, "entropy", args.emit, payload, SWEEP_COLUMNS, rows)
    _manifest(outdir, "entropy", _params(args), inputs, outputs + ["manifest.json"])
    return 0


def cmd_patterns(args) -> int:
    outdir = _outdir(args)
    corpus, inputs = _load_corpus(args.corpus, args.format, args.cross_sentences)
    k = args.window if args.mode == "causal" else args.window // 2
    spec = ContextSpec(args.window, k)
    table = _count(corpus, spec)
    patterns = mine_patterns(table, args.threshold, args.min_count)
    payload = {
        "window_len": args.window,
        "predicted_pos": k,
        "context_labels": list(spec.context_labels()),
        "threshold_bits": args.threshold,
        "min_context_count": args.min_count,
        "patterns": [p.to_json_dict() for p in patterns],
    }
    rows = [
        {
            "window_len": args.window,
            "predicted_pos": k,
            "context": " ".join(p.context),
            "argmax": p.argmax_tag,
            "entropy_bits": f"{p.entropy:.6f}",
            "count": p.count,
            "max_prob": f"{p.max_prob:.6f}",
        }
        for p in patterns
    ]
    outputs = _emit(outdir, "patterns", args.emit, payload, PATTERN_COLUMNS, rows)
    _manifest(outdir, "patterns", _params(args), inputs, outputs + ["manifest.json"])
    return 0


def cmd_generate(args) -> int:
    outdir = _outdir(args)
    corpus, inputs = _load_corpus(args.corpus, args.format, args.cross_sentences)
    model = NGramMaskedModel.from_corpus(
        corpus, args.model_window,
        source=f"ngram(window={args.model_window}) on {args.corpus}",
    )
    filters = FilterSet.parse(args.filters)
    generate = generate_noncausal if args.mode == "noncausal" else generate_causal
    sequences = []
    calls = []
    fallbacks = 0
    for i in range(args.count):
        cfg = GenerationConfig(
            seq_len=args.seq_len,
            iterations=args.iterations,
            group_size=args.group_size,
            seed=args.seed + i,
            temperature=args.temperature,
            filters=filters,
        )
        result = generate(model, cfg)
        sequences.append(result.tokens)
        calls.append(result.model_calls)
        fallbacks += result.fallbacks
    batch = TagCorpus(tuple(sequences), corpus.alphabet)
    batch_path = outdir / "generated.tags"
    write_tagstream(batch, batch_path)
    params = _params(args)
    params["model_identity"] = model.source
    params["calls_per_sequence"] = calls[0] if calls else 0
    params["total_model_calls"] = sum(calls)
    params["fallback_events"] = fallbacks
    _manifest(outdir, "generate", params, inputs, ["generated.tags", "manifest.json"])
    return 0


def cmd_evaluate(args) -> int:
    outdir = _outdir(args)
    inputs: dict = {}
    references = []
    for ref in args.reference:
        corpus, src = _load_corpus(ref, args.format, args.cross_sentences)
        inputs.update(src)
        references.append((ref, corpus))
    batches = []
    for batch in args.batch:
        corpus, src = _load_corpus(batch, "tagstream", False)
        inputs.update(src)
        batches.append((batch, corpus))
    specs = [
        ("causal", ContextSpec(args.window, args.window)),
        ("middle", ContextSpec(args.window, args.window // 2)),
    ]
    warnings = []
    cells = []
    for ref_name, ref_corpus in references:
        for kind, spec in specs:
            ref_table = _count(ref_corpus, spec)
            for batch_name, batch_corpus in batches:
                eval_table = _count(batch_corpus, spec)
                report = conditional_relative_entropy(ref_table, eval_table, args.alpha)
                cells.append((batch_name, ref_name, kind, report))
                if args.alpha == 0.0 and (report.contexts_skipped or report.unbounded_terms):
                    warnings.append(
                        f"alpha=0 with {report.contexts_skipped} skipped contexts and "
                        f"{report.unbounded_terms} unbounded terms for batch={batch_name}"
                        f" reference={ref_name} context={kind}"
                    )
    for warning in warnings:
        print(f"warning: {warning}", file=sys.stderr)
    payload = {
        "window_len": args.window,
        "smoothing_alpha": args.alpha,
        "cells": [
            {"batch": b, "reference": r, "context": kind, **report.to_json_dict()}
            for b, r, kind, report in cells
        ],
    }
    rows = [
        {
            "batch": b,
            "reference": r,
            "context": kind,
            "window_len": report.spec.window_len,
            "predicted_pos": report.spec.predicted_pos,
            "kl_bits": f"{report.kl_bits:.6f}",
            "contexts_scored": report.contexts_scored,
            "contexts_skipped": report.contexts_skipped,
            "smoothing_alpha": report.smoothing_alpha,
            "unbounded_terms": report.unbounded_terms,
        }
        for b, r, kind, report in cells
    ]
    outputs = _emit(outdir, "evaluate", args.emit, payload, EVALUATE_COLUMNS, rows)
    _manifest(outdir, "evaluate", _params(args), inputs, outputs + ["manifest.json"], warnings)
    return 0


def cmd_compare(args) -> int:
    outdir = _outdir(args)
    corpus_a, inputs = _load_corpus(args.corpus_a, args.format, args.cross_sentences)
    corpus_b, src_b = _load_corpus(args.corpus_b, args.format, args.cross_sentences)
    inputs.update(src_b)
    windows = _parse_windows(args.windows)
    summary = []
    rows = []
    for n in windows:
        sweep_a = position_sweep(corpus_a, n, args.target_variance)
        sweep_b = position_sweep(corpus_b, n, args.target_variance)
        causal = compare_languages(sweep_a[-1], sweep_b[-1], args.label_a, args.label_b)
        rest_a = noncausal_minus_causal(sweep_a)
        rest_b = noncausal_minus_causal(sweep_b)
        rest_winner, rest_margin = _margin(rest_a, rest_b, args.label_a, args.label_b)
        summary.append({
            "window_len": n,
            "causal": causal.to_json_dict(),
            "noncausal_minus_causal": {
                "entropy": {args.label_a: rest_a, args.label_b: rest_b},
                "more_predictable": rest_winner,
                "margin_pct": rest_margin,
            },
        })
        rows.append({
            "window_len": n,
            "causal_entropy_a": f"{causal.entropy_a:.6f}",
            "causal_entropy_b": f"{causal.entropy_b:.6f}",
            "causal_more_predictable": causal.more_predictable,
            "causal_margin_pct": f"{causal.margin_pct:.4f}",
            "noncausal_rest_a": f"{rest_a:.6f}",
            "noncausal_rest_b": f"{rest_b:.6f}",
            "noncausal_more_predictable": rest_winner,
            "noncausal_margin_pct": f"{rest_margin:.4f}",
        })
    payload = {
        "labels": {"a": args.label_a, "b": args.label_b},
        "windows": summary,
    }
    outputs = _emit(outdir, "compare", args.emit, payload, COMPARE_COLUMNS, rows)
    _manifest(outdir, "compare", _params(args), inputs, outputs + ["manifest.json"])
    return 0


def _margin(h_a: float, h_b: float, label_a: str, label_b: str) -> tuple[str, float]:
    if h_a == h_b:
        return "tie", 0.0
    lo_label, lo, hi = (label_a, h_a, h_b) if h_a < h_b else (label_b, h_b, h_a)
    return lo_label, 100.0 * (hi - lo) / lo


def _parse_windows(text: str) -> list[int]:
    if ":" in text:
        lo, hi = text.split(":", 1)
        windows = list(range(int(lo), int(hi) + 1))
    else:
        windows = [int(part) for part in text.split(",") if part]
    if not windows or any(n < 1 for n in windows):
        raise ValueError(f"invalid window list: {text!r}")
    return windows


def _params(args) -> dict:
    # the output directory is where the manifest lives, not an analysis
    # input, so reruns into different directories stay byte-identical
    skip = {"func", "out"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=["tagstream", "conllu"], default="tagstream",
                        help="input corpus format")
    parser.add_argument("--cross-sentences", action="store_true",
                        help="let context windows span sentence boundaries")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--emit", choices=["json", "csv", "both"], default="both")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="predictalang",
        description="Tag-stream predictability analysis and non-causal generation",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", help="position sweep of conditional entropy")
    p.add_argument("--corpus", required=True, help="corpus path or 'demo'")
    p.add_argument("--window", type=int, required=True, help="context length N")
    p.add_argument("--position", default="all", help="predicted position k or 'all'")
    p.add_argument("--target-variance", type=float, default=DEFAULT_TARGET_VARIANCE)
    _add_common(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("patterns", help="mine low-entropy contexts")
    p.add_argument("--corpus", required=True)
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--mode", choices=["causal", "middle"], default="causal")
    p.add_argument("--threshold", type=float, default=DEFAULT_PATTERN_THRESHOLD,
                   help="entropy ceiling in bits (default log2 3)")
    p.add_argument("--min-count", type=int, default=DEFAULT_MIN_CONTEXT_COUNT)
    _add_common(p)
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("generate", help="sample sequences from the bundled model")
    p.add_argument("--corpus", required=True, help="training corpus path or 'demo'")
    p.add_argument("--mode", choices=["noncausal", "causal"], default="noncausal")
    p.add_argument("--model-window", type=int, default=1)
    p.add_argument("--seq-len", type=int, default=50)
    p.add_argument("--iterations", type=int, default=30)
    p.add_argument("--group-size", type=int, default=2)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--temperature", type=float, default=1.0)
    p.add_argument("--filters", default="none",
                   help="comma list from {adjacent,affix,unknown} or 'none'")
    _add_common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("evaluate", help="conditional relative entropy grid")
    p.add_argument("--reference", required=True, nargs="+",
                   help="reference corpus paths or 'demo'")
    p.add_argument("--batch", required=True, nargs="+", help="generated batch files")
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.5)
    _add_common(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("compare", help="two-corpus predictability summary")
    p.add_argument("--corpus-a", required=True)
    p.add_argument("--corpus-b", required=True)
    p.add_argument("--label-a", default="a")
    p.add_argument("--label-b", default="b")
    p.add_argument("--windows", default="2:6", help="window range 'lo:hi' or comma list")
    p.add_argument("--target-variance", type=float, default=DEFAULT_TARGET_VARIANCE)
    _add_common(p)
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
