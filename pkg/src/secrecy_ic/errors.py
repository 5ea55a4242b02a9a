"""Exception types raised by the library.

All of them derive from :class:`ChannelError` (itself a ``ValueError``) so
callers can catch domain errors with a single clause.
"""


class ChannelError(ValueError):
    """Base class for every domain error."""


class NonPositiveParameter(ChannelError):
    pass


class NotWeakInterference(ChannelError):
    pass


class NonPositiveMargin(ChannelError):
    """A secrecy-regime result needs g11 > g21 and g22 > g12."""


class ParamOutOfRange(ChannelError):
    pass


class DegenerateStep(ChannelError):
    """Finite-difference step too small to resolve curvature."""


class ConfigFormatError(ChannelError):
    pass
