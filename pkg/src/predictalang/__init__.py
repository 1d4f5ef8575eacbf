"""Corpus predictability analysis and non-causal generation over tag streams."""

from .alphabet import TagAlphabet, default_reduction
from .corpus import TagCorpus, format_tagstream, read_conllu, read_tagstream, write_tagstream
from .counting import ContextSpec, CountTable, count, count_sharded, required_tokens
from .demo import demo_corpus, iid_corpus, markov_corpus
from .divergence import DivergenceReport, conditional_relative_entropy
from .entropy import (
    EntropyReport,
    LanguageComparison,
    PatternRow,
    avg_conditional_entropy,
    compare_languages,
    mine_patterns,
    noncausal_minus_causal,
    position_sweep,
)
from .errors import (
    EmptyCorpusError,
    EmptyTableError,
    IncompleteSweepError,
    InputError,
    MalformedLineError,
    NoWindowsError,
    PredictalangError,
    SpecError,
    SpecMismatchError,
    UnknownTagError,
    UnseenContextError,
)
from .generation import (
    FilterSet,
    GenerationConfig,
    GenerationResult,
    MaskedModel,
    NGramMaskedModel,
    filter_distribution,
    generate_causal,
    generate_noncausal,
    sample_token,
)

__version__ = "0.1.0"

__all__ = [
    "ContextSpec",
    "CountTable",
    "DivergenceReport",
    "EmptyCorpusError",
    "EmptyTableError",
    "EntropyReport",
    "FilterSet",
    "GenerationConfig",
    "GenerationResult",
    "IncompleteSweepError",
    "InputError",
    "LanguageComparison",
    "MalformedLineError",
    "MaskedModel",
    "NGramMaskedModel",
    "NoWindowsError",
    "PatternRow",
    "PredictalangError",
    "SpecError",
    "SpecMismatchError",
    "TagAlphabet",
    "TagCorpus",
    "UnknownTagError",
    "UnseenContextError",
    "avg_conditional_entropy",
    "compare_languages",
    "conditional_relative_entropy",
    "count",
    "count_sharded",
    "default_reduction",
    "demo_corpus",
    "filter_distribution",
    "format_tagstream",
    "generate_causal",
    "generate_noncausal",
    "iid_corpus",
    "markov_corpus",
    "mine_patterns",
    "noncausal_minus_causal",
    "position_sweep",
    "read_conllu",
    "read_tagstream",
    "required_tokens",
    "sample_token",
    "write_tagstream",
]
