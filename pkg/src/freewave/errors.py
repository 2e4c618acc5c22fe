"""Exception types shared across the library."""


class FreewaveError(Exception):
    """Base class for all library errors."""


class InvalidReaction(FreewaveError):
    """A reaction term fails the structural requirements of its declared kind."""


class BracketError(FreewaveError):
    """A root bracket could not be established (no sign change found)."""


class NoSemiWave(FreewaveError):
    """No connecting phase-plane trajectory exists at the requested speed."""


class Infeasible(FreewaveError):
    """The requested coupled-wave problem has no solution in the admissible range."""


class StepError(FreewaveError):
    """A time step violates a stability or positivity constraint."""
