"""Golden-file tests against the pinned spaCy pipelines.

These only run where the pinned pipelines are installed (pip install
tagcorpus[spacy] plus the es_core_news_sm / en_core_web_sm models).
Goldens are created on the first pinned-environment run via
TAGCORPUS_UPDATE_GOLDENS=1 and must be committed; afterwards the output
must stay byte-identical until the pipeline version is deliberately
bumped.
"""

import os
from pathlib import Path

import pytest

from tagcorpus import AdapterConfig, MissingPipelineError, get_backend, tag_file

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = FIXTURES / "golden"


def _require_pipeline(lang):
    try:
        return get_backend("spacy", lang)
    except MissingPipelineError as exc:
        pytest.skip(f"pinned tagging pipeline unavailable: {exc}")


@pytest.mark.parametrize("lang", ["en", "es"])
def test_spacy_golden_byte_exact(lang, tmp_path):
    _require_pipeline(lang)
    report = tag_file(AdapterConfig(
        language=lang,
        inputs=(str(FIXTURES / f"{lang}.txt"),),
        output=str(tmp_path / f"{lang}.tags"),
        backend="spacy",
    ))
    produced = Path(report.output).read_bytes()
    golden_path = GOLDEN / f"{lang}.spacy.tags"
    if os.environ.get("TAGCORPUS_UPDATE_GOLDENS") == "1":
        golden_path.write_bytes(produced)
    if not golden_path.exists():
        pytest.fail(
            f"golden file {golden_path} missing; run once with "
            "TAGCORPUS_UPDATE_GOLDENS=1 in the pinned environment and commit it"
        )
    assert produced == golden_path.read_bytes()


@pytest.mark.parametrize("lang", ["en", "es"])
def test_spacy_output_parses_with_primary_reader(lang, tmp_path):
    from predictalang import read_tagstream

    _require_pipeline(lang)
    report = tag_file(AdapterConfig(
        language=lang,
        inputs=(str(FIXTURES / f"{lang}.txt"),),
        output=str(tmp_path / f"{lang}.tags"),
        backend="spacy",
    ))
    corpus = read_tagstream(report.output)
    assert corpus.token_count == report.tokens
