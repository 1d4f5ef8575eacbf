import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from predictalang import (
    ContextSpec,
    CountTable,
    EmptyTableError,
    NoWindowsError,
    SpecMismatchError,
    TagCorpus,
    UnseenContextError,
    count,
    count_sharded,
    required_tokens,
)
from predictalang.counting import empty_table
from conftest import corpus_of, letter_alphabet, random_corpus
from oracles import oracle_counts, oracle_total

A, B, C = 0, 1, 2


def table_as_dict(table):
    return {
        table.decode_context(int(code)): {
            j: int(n) for j, n in enumerate(table.outcome_counts[r]) if n
        }
        for r, code in enumerate(table.context_codes)
    }


def test_spec_validation():
    with pytest.raises(ValueError):
        ContextSpec(0, 0)
    with pytest.raises(ValueError):
        ContextSpec(2, 3)
    with pytest.raises(ValueError):
        ContextSpec(2, -1)
    assert ContextSpec(2, 2).is_causal
    assert not ContextSpec(2, 1).is_causal


def test_context_labels():
    assert ContextSpec(2, 2).context_labels() == ("X_{i-2}", "X_{i-1}")
    assert ContextSpec(2, 1).context_labels() == ("X_{i-1}", "X_{i+1}")
    assert ContextSpec(3, 0).context_labels() == ("X_{i+1}", "X_{i+2}", "X_{i+3}")


def test_bigram_counts():
    table = count(corpus_of("ABABAB"), ContextSpec(1, 1))
    assert table.total == 5
    assert table_as_dict(table) == {(A,): {B: 3}, (B,): {A: 2}}


def test_self_transition_counts():
    table = count(corpus_of("AAB"), ContextSpec(1, 1))
    assert table.total == 2
    assert table_as_dict(table) == {(A,): {A: 1, B: 1}}


def test_middle_prediction_single_window():
    table = count(corpus_of("ABC"), ContextSpec(2, 1))
    assert table.total == 1
    assert table_as_dict(table) == {(A, C): {B: 1}}


def test_short_sentences_skipped():
    corpus = corpus_of("AB", "ABAB", size=2)
    table = count(corpus, ContextSpec(2, 2))
    # only the 4-token sentence yields windows
    assert table.total == 2


def test_no_windows_raises():
    with pytest.raises(NoWindowsError):
        count(corpus_of("AB", size=2), ContextSpec(3, 3))


def test_causal_total_is_length_minus_n():
    corpus = corpus_of("ABABABAB")  # single sentence, no boundaries
    for n in (1, 2, 3):
        table = count(corpus, ContextSpec(n, n))
        assert table.total == corpus.token_count - n


def test_merge_with_empty_is_identity():
    table = count(corpus_of("ABAB"), ContextSpec(1, 1))
    empty = empty_table(ContextSpec(1, 1), table.alphabet)
    assert table.merge(empty) == table
    assert empty.merge(table) == table


def test_merge_equals_counting_concatenation():
    spec = ContextSpec(2, 1)
    c1 = corpus_of("ABCAB", "CAB", size=3)
    c2 = corpus_of("BBCA", size=3)
    joint = TagCorpus(c1.sentences + c2.sentences, c1.alphabet)
    assert count(c1, spec).merge(count(c2, spec)) == count(joint, spec)


def test_merge_spec_mismatch():
    t1 = count(corpus_of("ABAB"), ContextSpec(1, 1))
    t2 = count(corpus_of("ABAB"), ContextSpec(1, 0))
    with pytest.raises(SpecMismatchError):
        t1.merge(t2)
    t3 = count(corpus_of("ABC"), ContextSpec(1, 1))
    with pytest.raises(SpecMismatchError):
        t1.merge(t3)  # alphabets differ


def test_context_prob_values():
    table = count(corpus_of("ABABAB"), ContextSpec(1, 1))
    assert table.context_prob((A,)) == pytest.approx(3 / 5)
    assert table.context_prob((B,)) == pytest.approx(2 / 5)


def test_context_prob_unseen_is_zero():
    table = count(corpus_of("ABAB", size=3), ContextSpec(1, 1))
    assert table.context_prob((C,)) == 0.0


def test_context_prob_single_window():
    table = count(corpus_of("ABC"), ContextSpec(2, 1))
    assert table.context_prob((A, C)) == 1.0


def test_context_prob_empty_table():
    table = empty_table(ContextSpec(1, 1), letter_alphabet(2))
    with pytest.raises(EmptyTableError):
        table.context_prob((A,))


def test_outcome_dist_values():
    table = count(corpus_of("AAB"), ContextSpec(1, 1))
    dist = table.outcome_dist((A,))
    assert dist == pytest.approx([0.5, 0.5])
    assert abs(dist.sum() - 1.0) < 1e-12


def test_outcome_dist_point_mass():
    table = count(corpus_of("ABABAB"), ContextSpec(1, 1))
    assert table.outcome_dist((A,)) == pytest.approx([0.0, 1.0])


def test_outcome_dist_unseen_raises():
    table = count(corpus_of("ABAB", size=3), ContextSpec(1, 1))
    with pytest.raises(UnseenContextError):
        table.outcome_dist((C,))


def test_probabilities_normalize():
    rng = np.random.default_rng(7)
    corpus = random_corpus(rng, 4, 300)
    table = count(corpus, ContextSpec(2, 1))
    total_prob = sum(
        table.context_prob(table.decode_context(int(code)))
        for code in table.context_codes
    )
    assert total_prob == pytest.approx(1.0, abs=1e-12)
    for code in table.context_codes:
        dist = table.outcome_dist(table.decode_context(int(code)))
        assert abs(dist.sum() - 1.0) < 1e-12
        assert ((dist >= 0) & (dist <= 1)).all()


def test_matches_oracle_counts():
    rng = np.random.default_rng(11)
    for _ in range(5):
        corpus = random_corpus(rng, 3, 200)
        for n in (1, 2):
            for k in range(n + 1):
                table = count(corpus, ContextSpec(n, k))
                oracle = oracle_counts(corpus.sentences, n, k)
                got = table_as_dict(table)
                assert got == {
                    ctx: dict(counter) for ctx, counter in oracle.items()
                }
                assert table.total == oracle_total(oracle)


def test_required_tokens_reference_point():
    assert required_tokens(9, 2, 0.001) == (80000, 648000)


def test_required_tokens_trivial():
    assert required_tokens(2, 1, 1) == (1, 2)


def test_required_tokens_rounds_up():
    # (3^1 - 1) / 0.3 = 6.67 -> 7; 3 * 2 / 0.3 = 20
    assert required_tokens(3, 1, 0.3) == (7, 20)


def test_required_tokens_invalid():
    with pytest.raises(ValueError):
        required_tokens(9, 2, 0)


def test_serialization_roundtrip():
    rng = np.random.default_rng(3)
    corpus = random_corpus(rng, 4, 500)
    table = count(corpus, ContextSpec(2, 1))
    buf = io.StringIO()
    table.save(buf)
    buf.seek(0)
    again = CountTable.load(buf)
    assert again == table
    assert again.total == table.total


def test_sharded_count_matches_single_pass():
    rng = np.random.default_rng(5)
    corpus = random_corpus(rng, 3, 2000)
    spec = ContextSpec(2, 2)
    whole = count(corpus, spec)
    for shards in (1, 2, 5):
        assert count_sharded(corpus, spec, shards) == whole


def test_code_capacity_guard():
    corpus = corpus_of("ABAB")
    with pytest.raises(ValueError):
        count(corpus, ContextSpec(80, 0))


sentences_strategy = st.lists(
    st.lists(st.integers(min_value=0, max_value=2), min_size=2, max_size=10),
    min_size=1,
    max_size=6,
)


@settings(max_examples=40, deadline=None)
@given(sentences_strategy, sentences_strategy, sentences_strategy)
def test_merge_commutative_associative(s1, s2, s3):
    spec = ContextSpec(1, 1)
    alphabet = letter_alphabet(3)
    tables = [
        count(TagCorpus(tuple(np.array(x) for x in s), alphabet), spec)
        for s in (s1, s2, s3)
    ]
    t1, t2, t3 = tables
    assert t1.merge(t2) == t2.merge(t1)
    assert t1.merge(t2).merge(t3) == t1.merge(t2.merge(t3))
