"""Exception types shared across the package."""


class FormulaSyntaxError(ValueError):
    """Raised by the text parsers. ``pos`` is the character (or word) offset."""

    def __init__(self, message, pos=None, text=None):
        self.pos = pos
        self.text = text
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class ArityConflictError(FormulaSyntaxError):
    pass


class CapacityError(RuntimeError):
    """An automaton or tableau grew past its configured state limit."""


class EquivalenceTimeout(TimeoutError):
    """A decision procedure ran past its deadline."""


class MissingApError(ValueError):
    pass


class UnsupportedShapeError(ValueError):
    """The formula cannot be verbalised by the controlled-English grammar."""


class AmbiguityError(ValueError):
    pass


class CollisionError(ValueError):
    pass


class AlignmentError(ValueError):
    pass


class SchemaError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MissingPredictionError(KeyError):
    pass


class ProcessError(RuntimeError):
    pass


class LineCountMismatchError(RuntimeError):
    pass
