"""Tagger backends.

A backend turns raw text into sentences of (token, UPOS) pairs. The
primary backend wraps spaCy with pinned pipeline names per language and
raises MissingPipelineError when the pipeline is not installed, so the
analysis toolkit stays fully usable without any tagger present.
"""

from __future__ import annotations

from typing import Callable, Iterator, Protocol

from .errors import MissingPipelineError, UnknownBackendError

Sentence = list[tuple[str, str]]

# pinned pipeline per language; tag distributions depend on the exact
# model, so the version in use is recorded in every output manifest
SPACY_PIPELINES = {
    "es": "es_core_news_sm",
    "en": "en_core_web_sm",
}


class TaggerBackend(Protocol):
    name: str
    version: str
    language: str

    def tag(self, text: str, batch_size: int = 1000) -> Iterator[Sentence]:
        ...


class SpacyBackend:
    """spaCy pipeline wrapper with pinned model names."""

    name = "spacy"

    def __init__(self, language: str):
        if language not in SPACY_PIPELINES:
            raise MissingPipelineError(language, "no pinned spaCy pipeline")
        self.language = language
        self.pipeline_name = SPACY_PIPELINES[language]
        try:
            import spacy
        except ImportError as exc:
            raise MissingPipelineError(language, "spacy is not installed") from exc
        try:
            self._nlp = spacy.load(self.pipeline_name)
        except OSError as exc:
            raise MissingPipelineError(
                language, f"pipeline {self.pipeline_name} is not installed"
            ) from exc
        self.version = f"{self.pipeline_name}-{self._nlp.meta.get('version', '?')}"

    def tag(self, text: str, batch_size: int = 1000) -> Iterator[Sentence]:
        doc = self._nlp(text)
        for sentence in doc.sents:
            tagged = [(token.text, token.pos_) for token in sentence]
            if tagged:
                yield tagged


_REGISTRY: dict[str, Callable[[str], TaggerBackend]] = {"spacy": SpacyBackend}


def register_backend(name: str, factory: Callable[[str], TaggerBackend]) -> None:
    """Add a backend factory (used by tests and extensions)."""
    _REGISTRY[name] = factory


def available_backends() -> list[str]:
    return sorted(_REGISTRY)


def get_backend(name: str, language: str) -> TaggerBackend:
    try:
        factory = _REGISTRY[name]
    except KeyError:
        raise UnknownBackendError(name, _REGISTRY) from None
    return factory(language)
