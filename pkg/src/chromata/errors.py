"""Exception hierarchy shared by every chromata module."""

from __future__ import annotations


class ChromataError(Exception):
    """Base class; ``kind`` is the name reported in CLI error documents."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class ParseError(ChromataError):
    pass


class NonSimpleError(ChromataError):
    pass


class InvalidParam(ChromataError, ValueError):
    pass


class EdgeAlreadyColored(ChromataError):
    pass


class NotCandidate(ChromataError):
    pass


class SameColor(ChromataError, ValueError):
    pass


class NonMaximalSwap(ChromataError):
    pass


class PaletteExceeded(ChromataError):
    pass


class InfeasiblePalette(ChromataError):
    pass


class BudgetExceeded(ChromataError):
    def __init__(self, message: str, lower: int | None = None, upper: int | None = None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class DisconnectedInput(ChromataError):
    pass


class AmbiguousRuleMatch(ChromataError):
    def __init__(self, message: str, rule_ids: tuple[str, ...] = (), anchors: tuple[str, ...] = ()):
        super().__init__(message)
        self.rule_ids = rule_ids
        self.anchors = anchors


class ConstraintCatalogIncomplete(ChromataError):
    pass


class UnknownLemmaId(ChromataError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class PreconditionUnverified(ChromataError):
    pass
