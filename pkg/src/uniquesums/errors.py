"""Exception types shared across the package."""


class UniqueSumsError(Exception):
    """Base class for all errors raised by this package."""


class GroupError(UniqueSumsError):
    """Invalid group description, or an element that does not fit the group."""


class DilationError(UniqueSumsError):
    """Dilation by a factor that is not a unit modulo the group order."""


class SizeLimitError(UniqueSumsError):
    """An exact computation was refused because it exceeds a configured cap.

    May carry a ``partial`` attribute with whatever lower-bound information
    was established before giving up.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class PreconditionError(UniqueSumsError):
    """An operation was called on input that violates its stated contract."""


class RepresentationError(UniqueSumsError):
    """A coefficient vector does not actually represent its target."""


class NotInSubgroupError(UniqueSumsError):
    """The target element lies outside the subgroup generated by the input."""


class RectificationError(UniqueSumsError):
    """No order-compatible integer model of the set could be found."""


class SetFileError(UniqueSumsError):
    """A set/multiset file could not be parsed."""
