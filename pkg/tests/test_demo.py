import numpy as np
import pytest

from predictalang import demo_corpus, iid_corpus, markov_corpus
from predictalang.demo import (
    DEMO_TRANSITION_WEIGHTS,
    normalized_rows,
    stationary_distribution,
)
from conftest import letter_alphabet


def test_demo_transition_rows_sum_to_100():
    assert (DEMO_TRANSITION_WEIGHTS.sum(axis=1) == 100).all()
    assert DEMO_TRANSITION_WEIGHTS.shape == (9, 9)
    assert (DEMO_TRANSITION_WEIGHTS > 0).all()


def test_stationary_distribution_is_fixed_point():
    t = normalized_rows(DEMO_TRANSITION_WEIGHTS)
    pi = stationary_distribution(t)
    assert pi.sum() == pytest.approx(1.0, abs=1e-12)
    assert pi @ t == pytest.approx(pi, abs=1e-12)
    assert (pi > 0).all()


def test_demo_corpus_is_deterministic():
    a = demo_corpus(5_000)
    b = demo_corpus(5_000)
    assert a == b
    assert a.token_count == 5_000
    assert a.alphabet.size == 9


def test_markov_corpus_sentence_lengths():
    transition = np.array([[0.5, 0.5], [0.5, 0.5]])
    corpus = markov_corpus(transition, 95, seed=1, alphabet=letter_alphabet(2),
                           sentence_len=20)
    lengths = [len(s) for s in corpus.sentences]
    assert lengths == [20, 20, 20, 20, 15]
    assert corpus.token_count == 95


def test_markov_corpus_respects_transitions():
    # a chain that never emits B after A
    transition = np.array([[1.0, 0.0], [0.5, 0.5]])
    corpus = markov_corpus(transition, 2_000, seed=3, alphabet=letter_alphabet(2))
    for sentence in corpus.sentences:
        pairs = zip(sentence[:-1], sentence[1:])
        assert all(not (a == 0 and b == 1) for a, b in pairs)


def test_markov_corpus_validation():
    transition = np.array([[1.0]])
    with pytest.raises(ValueError):
        markov_corpus(transition, 0, seed=1, alphabet=letter_alphabet(1))
    with pytest.raises(ValueError):
        markov_corpus(transition, 10, seed=1, alphabet=letter_alphabet(2))


def test_iid_corpus_shape():
    corpus = iid_corpus(1000, seed=9, alphabet=letter_alphabet(4), sentence_len=30)
    assert corpus.token_count == 1000
    assert corpus.alphabet.size == 4
    assert {int(t) for s in corpus.sentences for t in s} <= {0, 1, 2, 3}
