"""Exception types shared across the package."""


class SBTError(Exception):
    """Base class for every error raised by sbtlab."""


class MalformedInputError(SBTError, ValueError):
    pass


class SizeMismatchError(SBTError, ValueError):
    pass


class ApplicabilityError(SBTError, ValueError):
    """A 3-cycle was applied whose symbols are out of order in the target cycle.

    ``product`` holds the cycle decomposition of the (non-cycle) product so the
    caller can see what the move would have produced.
    """

    def __init__(self, message, product=None):
        super().__init__(message)
        self.product = product


class ParityError(SBTError, ValueError):
    pass


class DomainError(SBTError, ValueError):
    pass


class CapacityError(SBTError, ValueError):
    pass


class ConstructionError(SBTError, RuntimeError):
    pass
