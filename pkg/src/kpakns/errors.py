class InsufficientDepth(ArithmeticError):
    """A truncated series cannot supply a coefficient exactly.

    ``floor`` is the lowest exponent known exactly, ``needed`` the exponent
    that was asked for.
    """

    def __init__(self, message, floor=None, needed=None):
        super().__init__(message)
        self.floor = floor
        self.needed = needed


class VerificationError(AssertionError):
    """An internal cross-check disagreed; indicates a formula or code defect."""
