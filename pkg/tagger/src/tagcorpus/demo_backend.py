"""Deterministic word-list demo backend.

Not a tagger: a small frozen lexicon plus shape rules (digits -> NUM,
punctuation -> PUNCT, everything else -> X). It exists so the whole
file-to-tag-stream pipeline can be exercised and golden-tested on
machines without any tagging pipeline installed. Output quality is
deliberately out of scope; the word lists are pinned and versioned so
results are byte-reproducible.
"""

from __future__ import annotations

import re
from typing import Iterator

from .backends import Sentence, register_backend
from .errors import MissingPipelineError

DEMO_BACKEND_VERSION = "1.0"

_TOKEN = re.compile(r"\w+|[^\w\s]", re.UNICODE)
_SENTENCE_END = {".", "!", "?"}
_PUNCT = re.compile(r"[^\w\s]+$", re.UNICODE)
_NUM = re.compile(r"\d")

LEXICONS: dict[str, dict[str, str]] = {
    "en": {
        "the": "DET", "a": "DET", "an": "DET", "this": "DET", "every": "DET",
        "cat": "NOUN", "dog": "NOUN", "house": "NOUN", "garden": "NOUN",
        "bird": "NOUN", "moon": "NOUN", "night": "NOUN", "story": "NOUN",
        "sleeps": "VERB", "runs": "VERB", "sings": "VERB", "is": "AUX",
        "was": "AUX", "reads": "VERB", "shines": "VERB",
        "old": "ADJ", "small": "ADJ", "quiet": "ADJ", "bright": "ADJ",
        "softly": "ADV", "quickly": "ADV", "very": "ADV",
        "in": "ADP", "on": "ADP", "under": "ADP", "of": "ADP",
        "and": "CCONJ", "but": "CCONJ", "while": "SCONJ", "that": "SCONJ",
        "it": "PRON", "she": "PRON", "he": "PRON", "they": "PRON",
        "not": "PART", "to": "PART",
        "oh": "INTJ",
    },
    "es": {
        "el": "DET", "la": "DET", "un": "DET", "una": "DET", "cada": "DET",
        "gato": "NOUN", "perro": "NOUN", "casa": "NOUN", "luna": "NOUN",
        "noche": "NOUN", "cuento": "NOUN", "ave": "NOUN",
        "duerme": "VERB", "corre": "VERB", "canta": "VERB", "lee": "VERB",
        "brilla": "VERB", "es": "AUX", "era": "AUX",
        "viejo": "ADJ", "vieja": "ADJ", "tranquila": "ADJ", "brillante": "ADJ",
        "suavemente": "ADV", "muy": "ADV",
        "en": "ADP", "sobre": "ADP", "de": "ADP", "bajo": "ADP",
        "y": "CCONJ", "pero": "CCONJ", "mientras": "SCONJ", "que": "SCONJ",
        "ella": "PRON", "nosotros": "PRON", "se": "PRON",
        "no": "PART",
        "ay": "INTJ",
    },
}


class WordListDemoBackend:
    name = "demo-wordlist"

    def __init__(self, language: str):
        if language not in LEXICONS:
            raise MissingPipelineError(language, "no demo word list")
        self.language = language
        self.version = f"demo-wordlist-{language}-{DEMO_BACKEND_VERSION}"
        self._lexicon = LEXICONS[language]

    def _upos(self, token: str) -> str:
        lowered = token.lower()
        if lowered in self._lexicon:
            return self._lexicon[lowered]
        if _NUM.search(token):
            return "NUM"
        if _PUNCT.match(token):
            return "PUNCT"
        return "X"

    def tag(self, text: str, batch_size: int = 1000) -> Iterator[Sentence]:
        current: Sentence = []
        for token in _TOKEN.findall(text):
            current.append((token, self._upos(token)))
            if token in _SENTENCE_END:
                yield current
                current = []
        if current:
            yield current


register_backend(WordListDemoBackend.name, WordListDemoBackend)
