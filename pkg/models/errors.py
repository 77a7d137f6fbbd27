"""
Exception hierarchy for the dissociation / spectral toolkit.
Every error raised by the library derives from DissSpectraError so the
command line can map them to a usage exit code in one place.
"""


class DissSpectraError(Exception):
    """Base class for all library errors."""


class GraphError(DissSpectraError):
    """Invalid vertex index, edge-existence violation or order overflow."""


class Graph6FormatError(DissSpectraError):
    """Malformed graph6 text.

    Attributes:
        offset (int): Byte offset in the input where parsing failed
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class FamilyParameterError(DissSpectraError):
    """Family constructor called outside its parameter domain."""


class FamilySpecSyntaxError(DissSpectraError):
    """Family specification text that does not follow NAME(p1,...,pk)."""


class NotATreeError(DissSpectraError):
    """A tree-only operation received a graph that is not a tree."""


class OrderCapError(DissSpectraError):
    """Requested order exceeds the cap of an engine or enumerator."""


class DisconnectedGraphError(DissSpectraError):
    """An operation that needs a connected graph received a disconnected one."""


class ConvergenceError(DissSpectraError):
    """Power iteration did not reach the tolerance within the iteration cap."""


class TransformError(DissSpectraError):
    """A graph surgery was requested outside its precondition."""


class ConfigError(DissSpectraError):
    """Invalid configuration value."""
