"""Exception hierarchy shared by all sstf modules."""


class SSTFError(Exception):
    """Base class for every error raised by this package."""


class StructuralError(SSTFError, ValueError):
    """A graph violates a structural requirement (connectivity, orientation...)."""


class PreconditionError(SSTFError, ValueError):
    """An operation was called with arguments outside its domain."""


class MoveError(SSTFError, ValueError):
    """A handle move cannot be applied to the given surface inventory.

    ``step`` is the position of the offending move when raised from a
    schedule run, else ``None``.
    """

    def __init__(self, message, step=None):
        if step is not None:
            message = f"step {step}: {message}"
        super().__init__(message)
        self.step = step


class BlueprintError(SSTFError, ValueError):
    """A Morse blueprint is internally inconsistent."""


class SynthesisError(SSTFError, RuntimeError):
    """Synthesis produced an inconsistent simulation.

    This indicates a bug in the library, not bad input.
    """


class ParseError(SSTFError, ValueError):
    """Malformed graph text. ``line`` is 1-based, or ``None`` for whole-file errors."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
