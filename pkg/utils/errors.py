"""
Exception hierarchy for the toolkit.

Every computational contract violation raises a subclass of ToolkitError so
that the CLI can map it to exit status 1.
"""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class SizeLimitError(ToolkitError):
    """Group closure exceeded the configured element cap."""


class ShapeError(ToolkitError):
    """Generators or matrices have incompatible representation or shape."""


class ContractError(ToolkitError):
    """An operation was called outside its precondition."""


class GroupMismatchError(ToolkitError):
    """Class functions or modules belong to different groups."""


class CatalogMismatchError(ToolkitError):
    """Computed character degrees disagree with the catalog."""


class CharacterTableError(ToolkitError):
    """The modular character table method failed for every prime tried."""


class NotACharacterError(ToolkitError):
    """A class function has a non-integral or negative decomposition."""


class NotCrystallographicError(ToolkitError):
    """A lattice action is not effective."""


class DegenerateInputError(ToolkitError):
    """Input data is degenerate, e.g. a rank-0 lattice."""


class OutOfScopeError(ToolkitError):
    """Parameters fall outside the tabulated regime."""


class FactTableError(ToolkitError):
    """A fact-table record is malformed or lacks a citation."""


class FormatError(ToolkitError):
    """An input file does not follow its line-oriented format."""


class AutomorphismError(ToolkitError):
    """An endomorphism is not invertible or its order exceeds the cap."""
