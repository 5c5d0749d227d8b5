"""Exception types shared across the package."""


class BipolarABAError(Exception):
    """Base class for all library errors.

    ``line`` is set by the parsers when the failure can be attributed to a
    specific input line, ``None`` otherwise.
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class FrameworkError(BipolarABAError, ValueError):
    """A framework declaration violates the bipolar ABA invariants."""


class EmptyAssumptions(FrameworkError):
    """The declared assumption set is empty."""


class NonBipolarRule(FrameworkError):
    """A rule body is not an assumption, or its head is neither an
    assumption nor a declared contrary."""


class MissingContrary(FrameworkError):
    """An assumption has no contrary."""


class DuplicateContrary(FrameworkError):
    """An assumption was given more than one contrary."""


class UnknownName(FrameworkError):
    """A rule or contrary refers to an undeclared sentence."""


class UnknownSentence(BipolarABAError, ValueError):
    """A query refers to a sentence outside the framework's language."""


class ParseError(BipolarABAError, ValueError):
    """Malformed input text."""

    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None, expected: str | None = None):
        super().__init__(message, line=line)
        self.column = column
        self.expected = expected


class UnknownArgument(ParseError):
    """An attack or support edge mentions an undeclared argument."""


class MissingInterpretation(BipolarABAError, ValueError):
    """A framework with supports was mapped without choosing how supports
    are to be read."""


class IllegalSelection(BipolarABAError, RuntimeError):
    """A transition was applied to an assumption it must not be applied to.

    Raised only on internal misuse by a search; never a user-facing error.
    """


class NoBlank(BipolarABAError, RuntimeError):
    """Heuristic selection was requested but no assumption is blank."""


class InvalidVariant(BipolarABAError, ValueError):
    """The requested algorithm variant does not exist for the semantics."""


class SearchTimeout(BipolarABAError, TimeoutError):
    """A search exceeded its deadline."""


class TooLarge(BipolarABAError, ValueError):
    """Input exceeds the size guard of a brute-force reference routine."""


class NotAnAF(BipolarABAError, ValueError):
    """An AF-only routine was handed a framework with support edges."""


class InfeasibleParams(BipolarABAError, ValueError):
    """Generator parameters cannot be satisfied."""
