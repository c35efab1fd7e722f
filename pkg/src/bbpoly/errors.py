"""Exception hierarchy shared by all modules.

Input problems and internal consistency failures are kept apart because the
CLI maps them to different exit codes (2 and 3 respectively).
"""


class InvalidInput(ValueError):
    """Malformed or out-of-contract input (bad polytope, bad flags, ...)."""


class InadmissibleCocharacter(InvalidInput):
    """Cocharacter perpendicular to an edge; carries one offending edge."""

    def __init__(self, edge, v):
        self.edge = tuple(edge)
        self.v = tuple(v)
        super().__init__(
            f"cocharacter {self.v} is perpendicular to edge {self.edge}"
        )


class ConsistencyError(RuntimeError):
    """Two independently computed routes disagree: an implementation bug,
    never a property of the input."""
