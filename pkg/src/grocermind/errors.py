"""Exception hierarchy shared across the package."""


class GrocermindError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(GrocermindError):
    """A vector's length does not match the vocabulary dimension."""


class UnknownContextError(GrocermindError):
    """A context name does not exist in the environment."""


class UnknownInstanceError(GrocermindError):
    """An item instance id is not known to the environment or its catalog."""


class WindowError(GrocermindError):
    """An observation's day index falls outside the current STCM window."""


class EmptyNetworkError(GrocermindError):
    """An operation requires at least one (non-storage) cluster."""


class ScenarioError(GrocermindError):
    """A scenario script is malformed or references unknown entities."""


class PersistenceError(GrocermindError):
    """Base class for state save/load failures."""


class StateParseError(PersistenceError):
    """The state file is not valid JSON or lacks the expected structure."""


class VersionMismatchError(PersistenceError):
    """The state file was written by an incompatible format version."""


class StateConsistencyError(PersistenceError):
    """Cross-references inside a snapshot disagree (dimensions, labels)."""


class CommandError(GrocermindError):
    """A session command failed; carries an HTTP-style status class.

    status 400..499 means the request itself was invalid (schema violation,
    unknown verb, reference to a missing entity); 500..599 means the
    simulation hit an internal failure while executing a valid request.
    """

    def __init__(self, message: str, status: int = 400):
        super().__init__(message)
        self.status = status
