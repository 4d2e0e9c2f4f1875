"""Three-rule fuzzy inference over pixel intensity.

A pixel's grayscale intensity is scored against three membership
functions (dark half-trapezoid, gray triangle, bright half-trapezoid),
collapsed to a single output intensity by weighted-average
defuzzification, and classified black / white / ambiguous by comparing
that output against two cut levels. Ambiguous pixels are handed to the
spatial-statistics stage.

The calibration UI never edits breakpoints directly: the Shift Gray
slider moves the gray peak and the Span Gray slider moves the triangle
feet symmetrically around it (see :func:`apply_sliders`).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np

from .errors import EmptySupport, InvalidParams

# Upper classification cut is a fixed intensity, not tied to the bright
# breakpoint c; the lower cut tracks the dark breakpoint a unless
# explicitly overridden.
DEFAULT_UPPER_CUT = 140.0


class FuzzyClass(enum.Enum):
    BLACK = "black"
    WHITE = "white"
    AMBIGUOUS = "ambiguous"


@dataclass(frozen=True)
class FuzzyParams:
    """Membership breakpoints, output levels and classification cuts.

    a, b, c        : dark shoulder end, gray peak, bright shoulder start
    alpha          : intensity where the dark ramp reaches zero
    beta           : intensity where the bright ramp leaves zero
    v_dark/gray/bright : crisp output levels used by defuzzification
    lower_cut      : black/ambiguous boundary; None means "track a"
    upper_cut      : ambiguous/white boundary; None means the fixed 140
    """

    a: float = 80.0
    b: float = 110.0
    c: float = 140.0
    alpha: float = 110.0
    beta: float = 110.0
    v_dark: float = 0.0
    v_gray: float = 127.0
    v_bright: float = 255.0
    lower_cut: float | None = None
    upper_cut: float | None = None

    def __post_init__(self):
        if not (0.0 <= self.a < self.b < self.c <= 255.0):
            raise InvalidParams(
                f"need 0 <= a < b < c <= 255, got a={self.a} b={self.b} c={self.c}")
        if not (self.a < self.alpha <= 255.0):
            raise InvalidParams(f"alpha must be in (a, 255], got {self.alpha}")
        if not (0.0 <= self.beta < self.c):
            raise InvalidParams(f"beta must be in [0, c), got {self.beta}")
        if not (self.v_dark < self.v_gray < self.v_bright):
            raise InvalidParams("output levels must satisfy v_dark < v_gray < v_bright")
        if self.effective_lower_cut >= self.effective_upper_cut:
            raise InvalidParams(
                f"lower cut {self.effective_lower_cut} must be below "
                f"upper cut {self.effective_upper_cut}")

    @property
    def effective_lower_cut(self) -> float:
        return self.a if self.lower_cut is None else self.lower_cut

    @property
    def effective_upper_cut(self) -> float:
        return DEFAULT_UPPER_CUT if self.upper_cut is None else self.upper_cut


def mu_dark(x: float, p: FuzzyParams) -> float:
    """Half-trapezoidal decreasing membership: 1 below a, ramp to 0 at alpha."""
    if x <= p.a:
        return 1.0
    return max((p.alpha - x) / (p.alpha - p.a), 0.0)


def mu_gray(x: float, p: FuzzyParams) -> float:
    """Triangular membership: feet at a and c, peak 1 at b."""
    return max(min((x - p.a) / (p.b - p.a), (p.c - x) / (p.c - p.b)), 0.0)


def mu_bright(x: float, p: FuzzyParams) -> float:
    """Half-trapezoidal increasing membership: 0 below beta, 1 from c up."""
    if x >= p.c:
        return 1.0
    return max((x - p.beta) / (p.c - p.beta), 0.0)


def defuzzify(x: float, p: FuzzyParams) -> float:
    """Weighted-average output intensity for input intensity x.

        f = (v_d*u_d + v_g*u_g + v_b*u_b) / (u_d + u_g + u_b)

    Raises EmptySupport if every membership is zero at x, which cannot
    happen for parameters satisfying the FuzzyParams invariants but is
    checked defensively for hand-built parameter sets.
    """
    ud = mu_dark(x, p)
    ug = mu_gray(x, p)
    ub = mu_bright(x, p)
    total = ud + ug + ub
    if total == 0.0:
        raise EmptySupport(f"all memberships zero at intensity {x}")
    return (p.v_dark * ud + p.v_gray * ug + p.v_bright * ub) / total


def classify(x: float, p: FuzzyParams, on: str = "fuzzy") -> FuzzyClass:
    """Three-way pixel classification.

    on="fuzzy" compares the defuzzified output against the cuts (the
    algorithmic definition); on="raw" compares the raw intensity instead,
    which coincides with it at the default parameters. If defuzzification
    has empty support the raw comparison is used as fallback.
    """
    if on == "raw":
        f = x
    elif on == "fuzzy":
        try:
            f = defuzzify(x, p)
        except EmptySupport:
            f = x
    else:
        raise InvalidParams(f"classify_on must be 'fuzzy' or 'raw', got {on!r}")
    if f < p.effective_lower_cut:
        return FuzzyClass.BLACK
    if f > p.effective_upper_cut:
        return FuzzyClass.WHITE
    return FuzzyClass.AMBIGUOUS


def apply_sliders(shift_gray: float, span_gray: float,
                  base: FuzzyParams | None = None) -> FuzzyParams:
    """Resolve the Shift Gray / Span Gray sliders into full parameters.

    The gray peak b moves to shift_gray; the triangle feet a and c sit
    span_gray below and above it; alpha and beta follow b so the shoulder
    ramps keep meeting the axis at the feet. Output levels and explicit
    cut overrides are taken from base unchanged.

    Raises InvalidParams when the resulting breakpoints leave [0, 255]
    or violate any other FuzzyParams invariant.
    """
    if base is None:
        base = FuzzyParams()
    b = float(shift_gray)
    a = b - float(span_gray)
    c = b + float(span_gray)
    if a < 0.0 or c > 255.0:
        raise InvalidParams(
            f"sliders put breakpoints out of range: a={a}, c={c}")
    return replace(base, a=a, b=b, c=c, alpha=b, beta=b)


def intensity_luts(p: FuzzyParams, on: str = "fuzzy") -> tuple[np.ndarray, np.ndarray]:
    """Defuzzified-output and class lookup tables over all 256 intensities.

    class codes: 0 = black, 1 = white, 2 = ambiguous. The segmentation
    engine classifies whole images through these tables.
    """
    f = np.empty(256, dtype=np.float64)
    cls = np.empty(256, dtype=np.uint8)
    code = {FuzzyClass.BLACK: 0, FuzzyClass.WHITE: 1, FuzzyClass.AMBIGUOUS: 2}
    for x in range(256):
        try:
            f[x] = defuzzify(float(x), p)
        except EmptySupport:
            f[x] = float(x)
        cls[x] = code[classify(float(x), p, on=on)]
    return f, cls
