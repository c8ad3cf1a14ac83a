"""Exception hierarchy shared by every engine.

Input errors (exit code 1 at the command line) derive from :class:`InputError`;
engine refusals (exit code 2) derive from :class:`EngineRefusal`.
"""


class DiaglabError(Exception):
    """Base class for all errors raised by this package."""


class InputError(DiaglabError, ValueError):
    """The caller supplied something malformed or out of range."""


class MalformedInput(InputError):
    pass


class OutOfDomain(InputError):
    pass


class ConstructionError(InputError):
    """A list or set failed validation while being built."""


class DefinitionError(InputError):
    """A definition file could not be parsed or resolved.

    ``line`` and ``token`` locate the problem when they are known.
    """

    def __init__(self, message, line=None, token=None):
        self.line = line
        self.token = token
        where = []
        if line is not None:
            where.append(f"line {line}")
        if token is not None:
            where.append(f"token {token!r}")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message)


class EngineRefusal(DiaglabError):
    """An engine declined to run with the given parameters."""


class HorizonTooSmall(EngineRefusal):
    def __init__(self, horizon, required):
        self.horizon = horizon
        self.required = required
        super().__init__(f"horizon {horizon} is too small; need at least {required}")


class BudgetExceeded(EngineRefusal):
    pass


class InsufficientEvidence(EngineRefusal):
    pass
