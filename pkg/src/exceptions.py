#!/usr/bin/env python3
"""
Exception hierarchy shared by every ising-gap module.

Parameter-range violations are plain ValueErrors; everything that is specific to this
package derives from IsingGapError so that the experiment harness can record a failing
grid point and move on to the next one.

Usage:
    raise GuardError("Box with l={} exceeds the enumeration guard".format(l))
    except IsingGapError as e: record the failure
"""

from typing import Optional


class IsingGapError(Exception):
    """Base class for all errors raised by the ising-gap package."""
    pass


class GuardError(IsingGapError, ValueError):
    """A size or enumeration guard was exceeded."""
    pass


class HypothesisError(IsingGapError):
    """The hypothesis of an energy-estimate checker does not hold for the given input.

    This is distinct from an inequality failure, which checkers report rather than raise.
    """
    pass


class ConvergenceError(IsingGapError):
    """An iterative eigensolve did not reach the requested tolerance.

    Attributes
        residual    The residual norm reached before giving up.
    """

    def __init__(self, message: str, residual: Optional[float] = None) -> None:
        """Initialisation of ConvergenceError.

        :param message: The error message.
        :param residual: The residual norm reached before giving up, if known.
        """

        super().__init__(message)
        self.residual = residual


class InsufficientDataError(IsingGapError):
    """A relaxation estimate was requested from too short (or constant) a sample."""
    pass


class NonExponentialFitError(IsingGapError):
    """The log-autocorrelation of an observable is not well described by a straight line."""
    pass


class PlanError(IsingGapError, ValueError):
    """An experiment plan or boundary descriptor could not be parsed."""
    pass


if __name__ == '__main__':
    pass
