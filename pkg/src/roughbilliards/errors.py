"""Exceptions raised by the simulation modules. The CLI prints the class name of any of them."""


class RoughBilliardsError(Exception):
    """Base class for all simulation errors"""


class InvalidParam(RoughBilliardsError, ValueError):
    pass


class MalformedCustom(InvalidParam):
    """Custom wall segments overlap, are disconnected or leave the datum band"""


class NotIncoming(RoughBilliardsError, ValueError):
    pass


class Singular(RoughBilliardsError):
    """Tangential hit, corner hit or simultaneous contact: the dynamics is undefined"""


class Capped(RoughBilliardsError):
    """max_bounces or max_time exceeded"""


class BoundaryCase(RoughBilliardsError, ValueError):
    pass


class TooManySingular(RoughBilliardsError):
    pass


class DegenerateAngle(RoughBilliardsError, ValueError):
    pass


class Empty(RoughBilliardsError, ValueError):
    pass
