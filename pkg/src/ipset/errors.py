class IpsetError(Exception):
    pass


class FactorizationLimitExceeded(IpsetError):
    """A cofactor survived trial division and could not be classified."""


class DegenerateInput(IpsetError):
    pass


class DegenerateTriangle(IpsetError):
    pass


class PreconditionViolated(IpsetError):
    pass


class NoUnitDistance(IpsetError):
    pass


class InvalidParameter(IpsetError):
    pass


class ConstructionBudgetExceeded(IpsetError):
    pass


class BudgetExceeded(IpsetError):
    """Search reached ``d_max`` without finding a set.

    ``exhausted_up_to`` is the largest diameter that was fully refuted.
    """

    def __init__(self, message, exhausted_up_to):
        super().__init__(message)
        self.exhausted_up_to = exhausted_up_to
