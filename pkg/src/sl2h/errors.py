"""Exception hierarchy for the sl2h package.

Two failure classes matter to callers:

* :class:`ValidationError` -- the caller handed us something malformed
  (bad parity, a matrix that is not unimodular, an exponent out of
  range).  The command-line driver maps these to exit code 2.

* :class:`ConvergenceError` -- the inputs were fine but an iterative or
  adaptive procedure failed to reach its target (a fixed-point iteration
  stalled, a calibration did not stabilise).  Exit code 3.

Everything else (programming errors, I/O trouble) propagates as the
usual built-in exceptions.
"""

from __future__ import annotations


class SL2HError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(SL2HError, ValueError):
    """Raised when user-supplied data fails a precondition check."""


class ConvergenceError(SL2HError, RuntimeError):
    """Raised when an iterative procedure fails to converge.

    Attributes
    ----------
    history : list
        Optional record of the quantity that was being driven to zero
        (residual norms, successive estimates, ...).  Useful for
        diagnosing *why* the iteration stalled.
    """

    def __init__(self, message: str, history=None):
        super().__init__(message)
        self.history = list(history) if history is not None else []


class CalibrationError(ConvergenceError):
    """Raised when discrete-part normalisation constants cannot be
    determined to the requested accuracy."""
