"""Exception hierarchy shared by all modules."""


class PosetError(Exception):
    """Base class for every error raised by posetforge."""


class StructureError(PosetError):
    """Malformed input: size mismatch, bits out of range, bad text."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NaturalLabelingError(PosetError):
    """A relation (lo, hi) with lo >= hi was supplied."""


class ExtensionError(PosetError):
    """A vector is not a poset vector of the matrix it should extend.

    ``witness`` is the first pair ``(i, j)`` with ``i`` in the support,
    ``j`` below ``i`` and ``j`` missing from the support.
    """

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class CapacityError(PosetError):
    """Requested size exceeds the 64-element word capacity."""


class NotAnAntichainError(PosetError):
    def __init__(self, message, pair):
        super().__init__(message)
        self.pair = pair


class NotAnAutomorphismError(PosetError):
    pass


class TopologyError(PosetError):
    """A family of sets is not a naturally labeled topology, or a set is not a member."""
