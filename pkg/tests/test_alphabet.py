import pytest

from predictalang import TagAlphabet, UnknownTagError, default_reduction
from predictalang.alphabet import UNIVERSAL_POS_TAGS

EXPECTED_REDUCTION = {
    "ADJ": "ADJ",
    "ADP": "ADP",
    "ADV": "ADV",
    "AUX": "VERB",
    "CCONJ": "CONJ",
    "DET": "DET",
    "INTJ": "OTHER",
    "NOUN": "NOUN",
    "NUM": "OTHER",
    "PART": "OTHER",
    "PRON": "PRON",
    "PROPN": "NOUN",
    "PUNCT": "OTHER",
    "SCONJ": "CONJ",
    "SYM": "OTHER",
    "VERB": "VERB",
    "X": "OTHER",
    "SPACE": "OTHER",
}


def test_default_alphabet_has_nine_tags():
    alphabet = default_reduction()
    assert alphabet.size == 9
    assert alphabet.tags == (
        "ADJ", "ADP", "ADV", "CONJ", "DET", "NOUN", "PRON", "VERB", "OTHER",
    )


def test_mask_id_outside_real_range():
    alphabet = default_reduction()
    assert not 0 <= alphabet.mask_id < alphabet.size


def test_reduction_totality():
    alphabet = default_reduction()
    assert len(UNIVERSAL_POS_TAGS) == 17
    for upos in UNIVERSAL_POS_TAGS:
        assert 0 <= alphabet.lookup(upos) < alphabet.size


def test_full_reduction_audit():
    # category-by-category audit of the whole 17-way table
    alphabet = default_reduction()
    for upos, coarse in EXPECTED_REDUCTION.items():
        assert alphabet.name(alphabet.lookup(upos)) == coarse, upos


def test_lookup_identity_and_aux():
    alphabet = default_reduction()
    assert alphabet.name(alphabet.lookup("NOUN")) == "NOUN"
    assert alphabet.name(alphabet.lookup("AUX")) == "VERB"


def test_lookup_case_folds():
    alphabet = default_reduction()
    assert alphabet.lookup("propn") == alphabet.lookup("PROPN")


def test_lookup_unknown_raises_with_line():
    alphabet = default_reduction()
    with pytest.raises(UnknownTagError) as exc:
        alphabet.lookup("XYZ", line=7)
    assert exc.value.tag == "XYZ"
    assert exc.value.line == 7


def test_index_resolves_reduced_names():
    alphabet = default_reduction()
    assert alphabet.index("ADJ") == 0
    assert alphabet.index("other") == 8
    with pytest.raises(UnknownTagError):
        alphabet.index("AUX")  # a UPOS name, not one of the nine


def test_synthetic_alphabet_skips_reduction():
    alphabet = TagAlphabet.from_tags(("A", "B"))
    assert alphabet.size == 2
    assert alphabet.mask_id == 2
    with pytest.raises(UnknownTagError):
        alphabet.lookup("NOUN")


@pytest.mark.parametrize(
    "tags",
    [(), ("A", "A"), ("A", "")],
)
def test_invalid_tag_lists_rejected(tags):
    with pytest.raises(ValueError):
        TagAlphabet.from_tags(tags)


def test_mask_inside_range_rejected():
    with pytest.raises(ValueError):
        TagAlphabet(tags=("A", "B"), mask_id=1)


def test_partial_reduction_rejected():
    with pytest.raises(ValueError):
        TagAlphabet(tags=("A",), reduction_map={"NOUN": 0})
