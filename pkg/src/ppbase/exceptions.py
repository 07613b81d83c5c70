"""Exception types raised across the package."""


class PPBaseError(Exception):
    """Base class for all errors raised by ppbase."""


class DegreeMismatch(PPBaseError, ValueError):
    pass


class CycleParseError(PPBaseError, ValueError):
    """Malformed cycle notation; ``offset`` is the 0-based character index."""

    def __init__(self, message, text="", offset=0):
        super().__init__(f"{message} at offset {offset} in {text!r}")
        self.text = text
        self.offset = offset


class GroupFileError(PPBaseError, ValueError):
    """Malformed group file; ``line`` and ``column`` are 1-based."""

    def __init__(self, message, line=0, column=0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class CapExceeded(PPBaseError, RuntimeError):
    pass


class BudgetExceeded(PPBaseError, RuntimeError):
    pass


class NotASubgroup(PPBaseError, ValueError):
    pass


class NotNormal(PPBaseError, ValueError):
    pass


class NotInGroup(PPBaseError, ValueError):
    pass


class FrattiniNotTrivial(PPBaseError, ValueError):
    pass
