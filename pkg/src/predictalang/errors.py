"""Exception hierarchy.

Input errors (bad files, unknown tags) and spec errors (incompatible
analysis parameters) are kept on separate branches so the CLI can map
them to distinct exit codes.
"""


class PredictalangError(Exception):
    """Base class for all package errors."""


class InputError(PredictalangError):
    """Problems with corpus files or their contents."""


class SpecError(PredictalangError):
    """Incompatible or invalid analysis parameters."""


class UnknownTagError(InputError):
    def __init__(self, tag: str, line: int):
        super().__init__(f"unknown tag {tag!r} on line {line}")
        self.tag = tag
        self.line = line


class EmptyCorpusError(InputError):
    def __init__(self, detail: str = "no tokens read"):
        super().__init__(detail)


class MalformedLineError(InputError):
    def __init__(self, line: int, detail: str = "fewer than 5 tab-separated fields"):
        super().__init__(f"malformed line {line}: {detail}")
        self.line = line


class NoWindowsError(SpecError):
    def __init__(self, window_len: int):
        super().__init__(f"no sentence is long enough for window length {window_len}")
        self.window_len = window_len


class SpecMismatchError(SpecError):
    pass


class EmptyTableError(SpecError):
    def __init__(self, detail: str = "count table holds no windows"):
        super().__init__(detail)


class UnseenContextError(SpecError):
    def __init__(self, context):
        super().__init__(f"context {context!r} was never observed")
        self.context = context


class IncompleteSweepError(SpecError):
    def __init__(self, detail: str):
        super().__init__(detail)
