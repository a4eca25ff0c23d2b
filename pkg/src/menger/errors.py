"""Exception hierarchy shared by every layer of the toolkit."""


class MengerError(Exception):
    """Base class for all toolkit errors."""


class SelfLoopError(MengerError):
    """An edge was given with both endpoints equal."""


class UnknownVertexError(MengerError):
    """A vertex id is not part of the graph under consideration."""


class UnknownEdgeError(MengerError):
    """An edge is not part of the graph under consideration."""


class TerminalInSetError(MengerError):
    """A candidate separator contains one of the terminals."""


class AdjacentTerminalsError(MengerError):
    """The operation requires the two terminals to be non-adjacent."""


class TooLargeError(MengerError):
    """Input exceeds the size bound of a brute-force operation."""


class CapExceededError(MengerError):
    """Exhaustive enumeration was requested beyond the hard vertex cap."""


class PreconditionViolatedError(MengerError):
    """A structural precondition of a constructive step does not hold."""


class EdgeListParseError(MengerError):
    """An edge-list document is malformed."""


class KappaDroppedAfterContractionError(MengerError):
    """Connectivity changed across a contraction that must preserve it.

    Raised only on implementation bugs, never on valid inputs.
    """


class LiftFailedError(MengerError):
    """A lifted path system failed re-validation in the host graph.

    Raised only on implementation bugs, never on valid inputs.
    """
