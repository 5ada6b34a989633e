"""Exception hierarchy shared by every csint module."""


class CsintError(Exception):
    """Base class for all numerical errors raised by csint."""


class PoleAtNonpositiveInteger(CsintError):
    pass


class NotConverged(CsintError):
    pass


class DivergentSeries(CsintError):
    pass


class LowerParameterPole(CsintError):
    pass


class DivisionByZero(CsintError, ZeroDivisionError):
    pass


class _PlainKeyError(KeyError):
    """KeyError whose message is printed without quotes."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class UnknownCase(CsintError, _PlainKeyError):
    pass


class UnsupportedParameters(CsintError):
    pass


class OutOfSupport(CsintError):
    pass


class ConfluentParameters(CsintError):
    pass


class OutsideConvergenceDisc(CsintError):
    pass


class UnsupportedWeight(CsintError):
    pass


class UnknownSuite(CsintError, _PlainKeyError):
    pass


class IncompleteInstance(CsintError, ValueError):
    pass
