"""Exception hierarchy shared across the package."""


class NivatlabError(Exception):
    """Base class for all package-specific errors."""


class GeometryError(NivatlabError):
    """Invalid geometric input (empty hull input, null-area set where volume is required, ...)."""


class ConfigurationError(NivatlabError):
    """Invalid configuration definition."""


class UnknownLetterError(ConfigurationError):
    """A letter was queried at a point the representation does not determine."""


class InexactDataError(NivatlabError):
    """A verdict that requires exact counts was requested on lower-bound data."""


class HypothesisNotMet(NivatlabError):
    """A complexity precondition failed; the operation makes no claim."""


class ConstructionError(NivatlabError):
    """An asserted step of a constructive procedure failed.

    Carries the name of the failed step; reaching this on valid inputs
    indicates an engine bug or a genuine soundness problem.
    """

    def __init__(self, step: str, message: str) -> None:
        super().__init__(f"{step}: {message}")
        self.step = step


class SoundnessError(NivatlabError):
    """A verified theorem failed on concrete data; always a test failure."""
