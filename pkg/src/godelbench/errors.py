"""Exception types shared across the package."""


class GodelBenchError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class MalformedCode(GodelBenchError, ValueError):
    """A natural number does not decode to an object of the requested category."""


class ParseError(GodelBenchError, ValueError):
    pass


class SignatureMismatch(GodelBenchError, ValueError):
    pass


class ModeMismatch(GodelBenchError, ValueError):
    """A tense-only construct was used against a unimodal frame or logic."""


class EnumerationTooLarge(GodelBenchError):
    """The requested enumeration exceeds the configured ceiling."""


class MalformedProof(GodelBenchError, ValueError):
    pass
