"""Tagged corpora and their readers.

Two input formats are supported:

* the canonical tag-stream format: UTF-8, one sentence per line, tag
  names separated by whitespace, blank lines ignored;
* a CoNLL-U subset: tab-separated rows, UPOS in column 4, ``#`` comment
  lines, blank-line sentence separators, multiword ranges and empty
  nodes skipped. UPOS values are folded through the alphabet's
  reduction table.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field

import numpy as np

from .alphabet import TagAlphabet, default_reduction
from .errors import EmptyCorpusError, MalformedLineError

DTYPE = np.int64


def _freeze(sentence) -> np.ndarray:
    arr = np.asarray(sentence, dtype=DTYPE)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TagCorpus:
    """A sequence of tag-id sentences; immutable after construction."""

    sentences: tuple[np.ndarray, ...]
    alphabet: TagAlphabet
    token_count: int = field(init=False, default=0)

    def __post_init__(self):
        frozen = tuple(_freeze(s) for s in self.sentences)
        if any(len(s) == 0 for s in frozen):
            raise ValueError("empty sentences are not allowed")
        for s in frozen:
            if len(s) and (s.min() < 0 or s.max() >= self.alphabet.size):
                raise ValueError("tag id outside the alphabet range")
        object.__setattr__(self, "sentences", frozen)
        object.__setattr__(self, "token_count", int(sum(len(s) for s in frozen)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TagCorpus):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and len(self.sentences) == len(other.sentences)
            and all(np.array_equal(a, b) for a, b in zip(self.sentences, other.sentences))
        )

    def __len__(self) -> int:
        return len(self.sentences)

    def flattened(self) -> "TagCorpus":
        """The same tokens as a single sentence (windows may then span
        original sentence boundaries)."""
        joined = np.concatenate(self.sentences)
        return TagCorpus((joined,), self.alphabet)

    def shards(self, n: int) -> list["TagCorpus"]:
        """Split into up to ``n`` contiguous sentence shards."""
        if n < 1:
            raise ValueError("shard count must be >= 1")
        chunks = np.array_split(np.arange(len(self.sentences)), n)
        return [TagCorpus(tuple(self.sentences[i] for i in idx), self.alphabet)
                for idx in chunks if len(idx)]


def _open_text(source) -> io.TextIOBase:
    if isinstance(source, (str, os.PathLike)):
        return open(source, "r", encoding="utf-8")
    if isinstance(source, io.TextIOBase):
        return source
    if isinstance(source, (bytes, bytearray)):
        return io.StringIO(source.decode("utf-8"))
    # binary file-like
    return io.TextIOWrapper(source, encoding="utf-8")


def read_tagstream(source, alphabet: TagAlphabet | None = None) -> TagCorpus:
    """Read the canonical tag-stream format.

    ``source`` may be a path, a text or binary stream, or raw bytes.
    Raises UnknownTagError for names outside the alphabet and
    EmptyCorpusError when no tokens are found.
    """
    alphabet = alphabet or default_reduction()
    sentences = []
    stream = _open_text(source)
    try:
        for line_no, line in enumerate(stream, start=1):
            names = line.split()
            if not names:
                continue
            sentences.append([alphabet.index(n, line_no) for n in names])
    finally:
        if isinstance(source, (str, os.PathLike)):
            stream.close()
    if not sentences:
        raise EmptyCorpusError()
    return TagCorpus(tuple(sentences), alphabet)


def _is_skippable_id(token_id: str) -> bool:
    # multiword ranges ("1-2") and empty nodes ("1.1") carry no UPOS
    return "-" in token_id or "." in token_id


def read_conllu(source, alphabet: TagAlphabet | None = None) -> TagCorpus:
    """Read a CoNLL-U file, reducing UPOS (column 4) through the alphabet."""
    alphabet = alphabet or default_reduction()
    sentences = []
    current: list[int] = []
    stream = _open_text(source)
    try:
        for line_no, line in enumerate(stream, start=1):
            line = line.rstrip("\r\n")
            if line.startswith("#"):
                continue
            if not line:
                if current:
                    sentences.append(current)
                    current = []
                continue
            fields = line.split("\t")
            if len(fields) < 5:
                raise MalformedLineError(line_no)
            if _is_skippable_id(fields[0]):
                continue
            current.append(alphabet.lookup(fields[3], line_no))
    finally:
        if isinstance(source, (str, os.PathLike)):
            stream.close()
    if current:
        sentences.append(current)
    if not sentences:
        raise EmptyCorpusError()
    return TagCorpus(tuple(sentences), alphabet)


def write_tagstream(corpus: TagCorpus, target) -> None:
    """Write a corpus in the canonical tag-stream format."""
    if isinstance(target, (str, os.PathLike)):
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            write_tagstream(corpus, fh)
        return
    for sentence in corpus.sentences:
        target.write(" ".join(corpus.alphabet.names(sentence)))
        target.write("\n")


def format_tagstream(corpus: TagCorpus) -> str:
    buf = io.StringIO()
    write_tagstream(corpus, buf)
    return buf.getvalue()
