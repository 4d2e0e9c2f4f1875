"""Exception types shared across the package.

Every operational failure mode has a named class so callers can react to
specific conditions instead of parsing messages.
"""


class BrightsegError(Exception):
    """Base class for all package errors."""


class UnsupportedFormat(BrightsegError):
    """Raster exists but is not an 8-bit format we read."""


class CorruptData(BrightsegError):
    """File decodes partially or not at all."""


class DimensionMismatch(BrightsegError, ValueError):
    """Two rasters that must share dimensions do not."""


class InvalidParams(BrightsegError, ValueError):
    """Parameter set violates its invariants."""


class DegeneratePatch(BrightsegError, ArithmeticError):
    """Zero-variance patch: the requested statistic is undefined.

    Callers must decide what a constant neighborhood means in their
    context instead of silently receiving 0.
    """


class InsufficientSamples(BrightsegError, ValueError):
    """Calibration needs at least two sample patches."""


class EmptySupport(BrightsegError, ArithmeticError):
    """All fuzzy memberships are zero at the queried intensity."""


class EmptyMask(BrightsegError, ValueError):
    """Metric undefined for a mask with no foreground pixels."""


class TooSmall(BrightsegError, ValueError):
    """Image smaller than the metric's minimum window."""


class DegenerateAgreement(BrightsegError, ArithmeticError):
    """Expected agreement is 1; kappa is undefined."""


class AllZeroDifferences(BrightsegError, ValueError):
    """Every paired difference is zero; the signed-rank test is undefined."""


class SessionBusy(BrightsegError):
    """A segmentation run is already in flight for this session."""
