"""Exception hierarchy.

Errors raised because the *input* does not meet an operation's
preconditions derive from :class:`PreconditionError`; the CLI maps those
to exit code 3.
"""

from __future__ import annotations


class QPError(Exception):
    """Base class for every error raised by this package."""


class ParseError(QPError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotACycle(QPError):
    pass


class EndpointMismatch(QPError):
    pass


class NotInvertible(QPError):
    pass


class NameCollision(QPError):
    pass


class InvalidQuiver(QPError):
    def __init__(self, report):
        self.report = report
        super().__init__("invalid quiver with potential: " + "; ".join(report.problems()))


class InhomogeneousElement(QPError):
    pass


class PreconditionError(QPError):
    pass


class TwoCycleAtVertex(PreconditionError):
    pass


class NotReduced(PreconditionError):
    pass


class RelatedArrows(PreconditionError):
    def __init__(self, groups):
        self.groups = list(groups)
        desc = ", ".join(
            f"{g.massive}: {{{', '.join(g.related)}}}" for g in self.groups
        )
        super().__init__(f"related arrows: {desc}")


class FuelExhausted(PreconditionError):
    pass


class NotGood(PreconditionError):
    pass


class NotCertifiedDualizable(PreconditionError):
    pass


class NotInForm31(PreconditionError):
    """The potential does not split into massive pairs, companions and a rest."""


class NoIncomingArrows(PreconditionError):
    pass
