"""Exception types shared across the package."""


class ChandassuError(Exception):
    """Base class for all package errors."""


class MalformedCluster(ChandassuError):
    """Virama with no following consonant in a non-word-final position."""

    def __init__(self, offset, message="virama without following consonant"):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownGana(ChandassuError):
    pass


class TableLoadError(ChandassuError):
    pass


class UnknownMeter(ChandassuError):
    pass


class ShortLine(ChandassuError):
    pass


class CorpusParseError(ChandassuError):
    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class DuplicateId(ChandassuError):
    pass


class NoMask(ChandassuError):
    pass


class MultipleMasks(ChandassuError):
    pass


class UnsatisfiableRemainder(ChandassuError):
    pass


class MissingSlot(ChandassuError):
    pass


class TransportError(ChandassuError):
    pass


class EmptyCell(ChandassuError):
    pass


class KeyMismatch(ChandassuError):
    def __init__(self, missing_left, missing_right):
        super().__init__(
            f"ids missing from judge records: {sorted(missing_right)}; "
            f"ids missing from annotator file: {sorted(missing_left)}"
        )
        self.missing_left = set(missing_left)
        self.missing_right = set(missing_right)
