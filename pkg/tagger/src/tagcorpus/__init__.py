"""Plain-text to tag-stream adapter around pluggable POS taggers."""

from . import demo_backend  # noqa: F401  (registers the demo backend)
from .adapter import AdapterConfig, TagReport, tag_file
from .backends import available_backends, get_backend, register_backend
from .errors import MissingPipelineError, TagCorpusError, UnknownBackendError
from .reduction import load_reduction

__version__ = "0.1.0"

__all__ = [
    "AdapterConfig",
    "MissingPipelineError",
    "TagCorpusError",
    "TagReport",
    "UnknownBackendError",
    "available_backends",
    "get_backend",
    "load_reduction",
    "register_backend",
    "tag_file",
]
