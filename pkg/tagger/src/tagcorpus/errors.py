class TagCorpusError(Exception):
    """Base class for adapter errors."""


class MissingPipelineError(TagCorpusError):
    def __init__(self, language: str, detail: str = ""):
        message = f"no tagging pipeline available for language {language!r}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)
        self.language = language


class UnknownBackendError(TagCorpusError):
    def __init__(self, name: str, known):
        super().__init__(f"unknown backend {name!r}; registered: {sorted(known)}")
        self.name = name
