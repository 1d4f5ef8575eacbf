"""The adapter and the analysis toolkit must share one reduction table."""

from predictalang import default_reduction
from predictalang.alphabet import UNIVERSAL_POS_TAGS

from tagcorpus.demo_backend import LEXICONS, WordListDemoBackend
from tagcorpus.reduction import load_reduction


def test_shared_table_matches_primary_alphabet():
    tags, reduction = load_reduction()
    alphabet = default_reduction()
    assert tuple(tags) == alphabet.tags
    for upos, coarse in reduction.items():
        assert alphabet.name(alphabet.lookup(upos)) == coarse


def test_shared_table_covers_all_upos():
    _, reduction = load_reduction()
    for upos in UNIVERSAL_POS_TAGS:
        assert upos in reduction


def test_every_backend_emission_reduces_like_the_primary():
    _, reduction = load_reduction()
    alphabet = default_reduction()
    emittable = {"NUM", "PUNCT", "X"}
    for lexicon in LEXICONS.values():
        emittable.update(lexicon.values())
    for upos in emittable:
        assert alphabet.name(alphabet.lookup(upos)) == reduction[upos]


def test_backend_sentences_reduce_cleanly():
    backend = WordListDemoBackend("en")
    alphabet = default_reduction()
    _, reduction = load_reduction()
    for sentence in backend.tag("The cat sleeps. It runs quickly!"):
        for _, upos in sentence:
            assert reduction[upos] == alphabet.name(alphabet.lookup(upos))
