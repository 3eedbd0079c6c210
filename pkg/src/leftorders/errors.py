"""Exception hierarchy shared by every module."""


class LeftOrderError(Exception):
    """Base class for all errors raised by this package."""


class GroupSpecError(LeftOrderError, ValueError):
    """Unparseable group descriptor or element word."""


class FamilyMismatchError(LeftOrderError, ValueError):
    """An element was used with a group context of another family."""


class RadiusError(LeftOrderError, ValueError):
    """A ball is too small to decide the requested quantity."""


class ChainError(LeftOrderError, ValueError):
    """Degenerate chain condition (repeated elements, identity in a V-set)."""


class BudgetExceeded(LeftOrderError, RuntimeError):
    """Search node limit exhausted.

    ``partial`` holds whatever was completed before the limit hit, and
    ``nodes`` the number of search nodes visited.
    """

    def __init__(self, message, nodes=0, partial=None):
        super().__init__(message)
        self.nodes = nodes
        self.partial = partial


class OracleCapExceeded(LeftOrderError, RuntimeError):
    """Brute-force enumeration would exceed its raw assignment cap."""
