"""Exception hierarchy shared by all modules."""


class CayleyPopError(Exception):
    """Base class for every error raised by :mod:`cayleypop`."""


class InvalidOrderError(CayleyPopError, ValueError):
    pass


class CapacityError(CayleyPopError, ValueError):
    pass


class SelfLoopError(CayleyPopError, ValueError):
    pass


class InvalidWeightsError(CayleyPopError, ValueError):
    pass


class GroupMismatchError(CayleyPopError, ValueError):
    pass


class DomainError(CayleyPopError, ValueError):
    pass


class NumericalError(CayleyPopError, ArithmeticError):
    pass


class ConfigError(CayleyPopError, ValueError):
    pass
