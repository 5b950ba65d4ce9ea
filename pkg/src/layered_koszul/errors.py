"""Exception types shared across the package."""


class CapExceeded(RuntimeError):
    """A configured resource cap would be exceeded; shrink the instance."""

    cap_name = "cap"

    def __init__(self, message, limit=None):
        super().__init__(message)
        self.limit = limit


class AmbientCapExceeded(CapExceeded):
    cap_name = "ambient-cap"


class PathCapExceeded(CapExceeded):
    cap_name = "path-cap"


class LatticeCapExceeded(CapExceeded):
    cap_name = "lattice-cap"


class NonUniformGraphError(ValueError):
    """Raised when a construction needs a uniform graph and got another."""

    def __init__(self, witness):
        v, u, w = witness
        super().__init__(
            f"graph is not uniform: children {u!r} and {w!r} of {v!r} are not linked"
        )
        self.witness = witness


class GraphFormatError(ValueError):
    """Malformed or invalid text graph input."""
