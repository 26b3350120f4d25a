"""Exception types shared across the package."""


class NewsgraphError(Exception):
    """Base class for all package-specific errors."""


class EmptyDocument(NewsgraphError):
    """Raised when a text contains no word characters."""


class InvalidMask(NewsgraphError):
    """Raised when a mask set is empty or references unknown node ids."""


class EmbeddingParseError(NewsgraphError):
    """Raised on malformed word-vector files; carries the offending line number."""

    def __init__(self, message, line_number=None):
        super().__init__(message)
        self.line_number = line_number


class ShapeError(NewsgraphError):
    """Raised on dimension mismatches between vectors and matrices."""


class NumericalError(NewsgraphError):
    """Raised when non-finite values enter a numeric computation."""


class SolverDidNotConverge(NewsgraphError):
    """Power iteration hit its iteration cap; carries the last residual."""

    def __init__(self, message, residual=None, seed=None):
        super().__init__(message)
        self.residual = residual
        self.seed = seed


class TrackerDidNotConverge(NewsgraphError):
    """Push-out correction series hit its iteration cap."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class EmptyTrainingSet(NewsgraphError):
    """Raised when an operation requires at least one training example."""


class MissingClass(NewsgraphError):
    """Raised when the training set lacks one of the two classes."""


class ModelFormatError(NewsgraphError):
    """Raised when a model file is truncated, malformed, or unsupported."""


class CorpusError(NewsgraphError):
    """Raised on missing corpus files or malformed CSV rows."""


class LengthMismatch(NewsgraphError):
    """Raised when prediction and label lists differ in length."""


class UnknownWord(NewsgraphError):
    """Raised when a what-if mask names words absent from the document."""

    def __init__(self, message, words=()):
        super().__init__(message)
        self.words = tuple(words)
