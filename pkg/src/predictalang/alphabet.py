"""Closed tag vocabularies and the coarse grammatical-category reduction.

The default alphabet has nine categories (ADJ, ADP, ADV, CONJ, DET, NOUN,
PRON, VERB, OTHER) and a reduction table mapping each of the seventeen
Universal POS categories onto one of them. The table lives in
``data/upos_reduction.json`` so that external tools (e.g. the tagger
adapter) can consume the identical mapping.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .errors import UnknownTagError

# The seventeen categories of the Universal Dependencies tag set. A
# reduction table must cover all of them (extra entries such as SPACE,
# emitted by some taggers, are allowed on top).
UNIVERSAL_POS_TAGS = (
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
)

REDUCTION_RESOURCE = "upos_reduction.json"


@dataclass(frozen=True)
class TagAlphabet:
    """A closed, ordered tag vocabulary plus the mask sentinel.

    ``tags`` holds the real category names; ``reduction_map`` maps full
    UPOS names to indices into ``tags`` (it may be empty for synthetic
    alphabets that are never fed CoNLL-U input). The mask sentinel id
    lies outside ``[0, size)`` so it can never collide with a real tag.
    """

    tags: tuple[str, ...]
    reduction_map: dict[str, int] = field(default_factory=dict)
    mask_id: int = -1

    def __post_init__(self):
        if not self.tags:
            raise ValueError("alphabet needs at least one tag")
        if len(set(self.tags)) != len(self.tags):
            raise ValueError("tag names must be unique")
        if any(not name for name in self.tags):
            raise ValueError("tag names must be non-empty")
        if self.mask_id < 0:
            object.__setattr__(self, "mask_id", len(self.tags))
        if 0 <= self.mask_id < len(self.tags):
            raise ValueError("mask_id must lie outside the real tag range")
        if self.reduction_map:
            missing = [u for u in UNIVERSAL_POS_TAGS if u not in self.reduction_map]
            if missing:
                raise ValueError(f"reduction map misses UPOS categories: {missing}")
            bad = {u: i for u, i in self.reduction_map.items()
                   if not 0 <= i < len(self.tags)}
            if bad:
                raise ValueError(f"reduction targets out of range: {bad}")
        object.__setattr__(self, "_index", {t: i for i, t in enumerate(self.tags)})

    @property
    def size(self) -> int:
        return len(self.tags)

    @classmethod
    def from_tags(cls, tags) -> "TagAlphabet":
        """Build a bare alphabet (no UPOS reduction) from tag names."""
        return cls(tags=tuple(tags))

    def index(self, name: str, line: int = 0) -> int:
        """Id of a tag name from this alphabet; names are case-folded."""
        try:
            return self._index[name.upper()]
        except KeyError:
            raise UnknownTagError(name, line) from None

    def lookup(self, upos: str, line: int = 0) -> int:
        """Reduced tag id for a full UPOS category name."""
        try:
            return self.reduction_map[upos.upper()]
        except KeyError:
            raise UnknownTagError(upos, line) from None

    def name(self, tag_id: int) -> str:
        return self.tags[tag_id]

    def names(self, tag_ids) -> tuple[str, ...]:
        return tuple(self.tags[i] for i in tag_ids)


def _load_reduction_table() -> dict:
    text = resources.files("predictalang.data").joinpath(REDUCTION_RESOURCE).read_text("utf-8")
    return json.loads(text)


def default_reduction() -> TagAlphabet:
    """The nine-category alphabet with the full 17-way UPOS reduction."""
    table = _load_reduction_table()
    tags = tuple(table["tags"])
    index = {t: i for i, t in enumerate(tags)}
    reduction = {upos: index[coarse] for upos, coarse in table["reduction"].items()}
    return TagAlphabet(tags=tags, reduction_map=reduction)
