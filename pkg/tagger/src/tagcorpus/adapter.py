"""Raw text to canonical tag-stream conversion.

tag_file reads UTF-8 plain-text files, runs the configured tagging
backend, folds each UPOS tag through the shared reduction table, and
writes one line of reduced tags per detected sentence. A sidecar
manifest records the backend identity and document/sentence/token
counts, since entropy measurements downstream depend on the exact
pipeline version.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .backends import get_backend
from .errors import TagCorpusError
from .reduction import load_reduction


@dataclass(frozen=True)
class AdapterConfig:
    language: str
    inputs: tuple[str, ...]
    output: str
    backend: str = "spacy"
    batch_size: int = 1000
    reduction_table: str | None = None

    def __post_init__(self):
        if not self.inputs:
            raise TagCorpusError("no input files given")
        if self.batch_size < 1:
            raise TagCorpusError("batch_size must be >= 1")


@dataclass
class TagReport:
    output: str
    manifest_path: str
    documents: int = 0
    sentences: int = 0
    tokens: int = 0
    warnings: list[str] = field(default_factory=list)


def _expand_inputs(paths) -> list[Path]:
    files: list[Path] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            files.extend(p for p in path.rglob("*.txt") if p.is_file())
        else:
            if not path.exists():
                raise FileNotFoundError(f"input not found: {path}")
            files.append(path)
    # output ordering is defined by input path sort order
    return sorted(set(files))


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def tag_file(config: AdapterConfig) -> TagReport:
    """Tag all inputs into one tag-stream file plus a manifest."""
    tags, reduction = load_reduction(config.reduction_table)
    backend = get_backend(config.backend, config.language)
    files = _expand_inputs(config.inputs)
    if not files:
        raise TagCorpusError("no input files found")

    output = Path(config.output)
    output.parent.mkdir(parents=True, exist_ok=True)
    report = TagReport(output=str(output), manifest_path=str(output) + ".json")
    checksums = {}
    with open(output, "w", encoding="utf-8", newline="\n") as out:
        for path in files:
            text = path.read_text("utf-8")
            checksums[str(path)] = _sha256(path)
            report.documents += 1
            wrote_any = False
            for sentence in backend.tag(text, batch_size=config.batch_size):
                reduced = [reduction[upos.upper()] for _, upos in sentence]
                if not reduced:
                    continue
                out.write(" ".join(reduced))
                out.write("\n")
                report.sentences += 1
                report.tokens += len(reduced)
                wrote_any = True
            if not wrote_any:
                report.warnings.append(f"no sentences found in {path}")

    manifest = {
        "backend": backend.name,
        "backend_version": backend.version,
        "language": config.language,
        "tags": tags,
        "documents": report.documents,
        "sentences": report.sentences,
        "tokens": report.tokens,
        "inputs": checksums,
        "warnings": report.warnings,
    }
    Path(report.manifest_path).write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return report
