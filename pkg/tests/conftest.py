import sys
from pathlib import Path

import numpy as np
import pytest

from predictalang import TagAlphabet, TagCorpus

sys.path.insert(0, str(Path(__file__).parent))

LETTERS = "ABCDEFGHIJ"


def letter_alphabet(size: int) -> TagAlphabet:
    return TagAlphabet.from_tags(tuple(LETTERS[:size]))


def corpus_of(*sentences, size: int | None = None) -> TagCorpus:
    """Corpus from letter strings, e.g. corpus_of("ABAB", "BA")."""
    ids = [[LETTERS.index(c) for c in s] for s in sentences]
    if size is None:
        size = max(max(s) for s in ids) + 1
    return TagCorpus(tuple(np.array(s) for s in ids), letter_alphabet(size))


def random_corpus(rng: np.random.Generator, vocab: int, tokens: int,
                  max_sentence: int = 40) -> TagCorpus:
    sentences = []
    remaining = tokens
    while remaining > 0:
        length = int(rng.integers(1, min(max_sentence, remaining) + 1))
        sentences.append(rng.integers(0, vocab, size=length))
        remaining -= length
    return TagCorpus(tuple(sentences), letter_alphabet(vocab))


@pytest.fixture
def ab_corpus() -> TagCorpus:
    return corpus_of("ABABAB")
