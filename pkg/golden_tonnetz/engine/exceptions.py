"""
Custom exceptions for the golden Tonnetz engine.
"""


class TonnetzError(Exception):
    """Base exception for all golden Tonnetz errors"""
    code = "E_TONNETZ"


class ToneParseError(TonnetzError):
    """Exception raised when a note, scale, triad or word expression is malformed"""
    code = "E_PARSE"

    def __init__(self, text, position, reason):
        self.text = text
        self.position = position
        self.reason = reason
        super().__init__(f"{reason} at position {position} in {text!r}")


class UnsupportedScaleError(TonnetzError):
    """Exception raised when an operation does not support the given scale kind"""
    code = "E_UNSUPPORTED_SCALE"


class LabelingError(TonnetzError):
    """Exception raised when a labeling is not a bijection onto the template degrees"""
    code = "E_LABELING"


class AtlasError(TonnetzError):
    """Exception raised when an atlas file is malformed or fails validation"""
    code = "E_ATLAS"

    def __init__(self, message, failures=None):
        self.failures = list(failures or [])
        super().__init__(message)


class IsometryError(TonnetzError):
    """Exception raised when a gluing map does not preserve squared distances"""
    code = "E_ISOMETRY"


class LabelConflictError(TonnetzError):
    """Exception raised when two differently spelled tones land on the same point"""
    code = "E_LABEL_CONFLICT"

    def __init__(self, point, existing, incoming):
        self.point = point
        self.existing = existing
        self.incoming = incoming
        super().__init__(
            f"label conflict at {point}: {existing} already placed, {incoming} incoming"
        )


class NotFoundError(TonnetzError):
    """Exception raised when a window is too small to realise a query"""
    code = "E_NOT_FOUND"

    def __init__(self, target, message=None):
        self.target = target
        super().__init__(message or f"{target} not found in window (enlarge the window)")


class HighlightError(TonnetzError):
    """Exception raised when a render highlight references a missing element"""
    code = "E_HIGHLIGHT"


class UsageError(TonnetzError):
    """Exception raised for invalid command-line usage"""
    code = "E_USAGE"
