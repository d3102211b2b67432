class IsoclassError(Exception):
    """Base class for domain errors (the CLI maps these to exit status 1)."""


class Reducible(IsoclassError):
    def __init__(self, poly, factorization):
        self.poly = poly
        self.factorization = factorization
        super().__init__(f"{poly} is reducible: {factorization}")


class DegreeBudgetExceeded(IsoclassError):
    pass


class DepthBudgetExceeded(IsoclassError):
    pass


class FallbackExhausted(IsoclassError):
    pass


class HeightBoundExceeded(IsoclassError):
    pass


class NotGalois(IsoclassError):
    pass


class ParseError(IsoclassError, ValueError):
    def __init__(self, message, token=None):
        self.token = token
        if token is not None:
            message = f"{message} (at {token!r})"
        super().__init__(message)


class DegenerateInput(IsoclassError, ValueError):
    """An operation's precondition on its arguments does not hold."""
