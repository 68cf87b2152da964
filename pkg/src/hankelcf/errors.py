"""Exception hierarchy shared by every module of the package."""


class HankelCFError(Exception):
    """Base class for all errors raised by hankelcf."""


class PoleAtZero(HankelCFError):
    pass


class ZeroInput(HankelCFError):
    pass


class NonUnitConstantTerm(HankelCFError):
    pass


class ZeroDenominator(HankelCFError):
    pass


class NoRelationFound(HankelCFError):
    pass


class DivergentIteration(HankelCFError):
    pass


class NotCanonicalizable(HankelCFError):
    pass


class ChainError(HankelCFError):
    """A transformation failed while a chain was being extended."""

    def __init__(self, step_index, cause):
        super().__init__(f"tau failed at step {step_index}: {cause}")
        self.step_index = step_index
        self.cause = cause


class ChainTooShort(HankelCFError):
    def __init__(self, n, steps_consumed, largest_resolvable=None):
        msg = f"chain too short for H_{n} (consumed {steps_consumed} steps)"
        if largest_resolvable is not None:
            msg += f"; largest resolvable n is {largest_resolvable}"
        super().__init__(msg)
        self.n = n
        self.steps_consumed = steps_consumed
        self.largest_resolvable = largest_resolvable


class NoPeriodFound(HankelCFError):
    pass


class VerificationFailed(HankelCFError):
    def __init__(self, n, expected=None, got=None):
        super().__init__(f"verification failed at n={n}: expected {expected}, fitted {got}")
        self.n = n
        self.expected = expected
        self.got = got


class NoFit(HankelCFError):
    pass


class Mismatch(HankelCFError):
    def __init__(self, statement, n, expected=None, got=None):
        super().__init__(f"{statement}: mismatch at n={n} (closed form {expected}, computed {got})")
        self.statement = statement
        self.n = n
        self.expected = expected
        self.got = got
