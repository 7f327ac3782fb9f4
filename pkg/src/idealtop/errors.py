"""Exception hierarchy shared by all idealtop modules."""

from __future__ import annotations


class IdealTopError(Exception):
    """Base class for every error raised by the toolkit."""


class ZeroDenominator(IdealTopError, ZeroDivisionError):
    pass


class ShapeMismatch(IdealTopError, ValueError):
    pass


class ParseError(IdealTopError, ValueError):
    """Raised by the grammars; carries the offset and the expected tokens."""

    def __init__(self, text: str, position: int, expected):
        self.text = text
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        shown = ", ".join(self.expected) if self.expected else "end of input"
        super().__init__(f"parse error at offset {position} in {text!r}: expected {shown}")


class CycleNotDetected(IdealTopError):
    def __init__(self, horizon: int, reason: str = ""):
        self.horizon = horizon
        msg = f"residue cycle not detected within horizon {horizon}"
        super().__init__(f"{msg}: {reason}" if reason else msg)


class UnsupportedSequence(IdealTopError):
    """The sequence has no exact residue structure the engine can represent."""


class WindowOverflow(IdealTopError):
    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"enumeration exceeded the element budget of {budget}")


class ChainNotAscending(IdealTopError, ValueError):
    pass


class NoExtraction(IdealTopError):
    pass


class HorizonLimit(IdealTopError):
    pass


class GroupTooLarge(IdealTopError, ValueError):
    pass
