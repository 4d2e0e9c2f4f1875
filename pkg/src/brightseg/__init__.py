"""Unsupervised bright-field microscopy segmentation.

Training-free pipeline: local-SD homogeneity masking, fuzzy intensity
classification, and spatial-statistics resolution of ambiguous pixels,
followed by morphological denoising. Ships with evaluation metrics, a
batch/calibration CLI and an HTTP session service for interactive
parameter tuning.
"""

from .denoise import (DenoiseProfile, apply_profile, builtin_profile,
                      load_profile)
from .fuzzy import FuzzyClass, FuzzyParams, apply_sliders, classify, defuzzify
from .image_io import (load_image, load_mask, render_comparison,
                       render_uncertainty, save_mask, to_gray_average)
from .segmentation import (Provenance, SegmentationConfig,
                           SegmentationResult, segment)
from .spatial_stats import (SpatialThresholds, adjusted_variogram,
                            calibrate_lb, cssni, morans_i, nav_normalized,
                            ssdlm)

__version__ = "0.1.0"

__all__ = [
    "DenoiseProfile", "apply_profile", "builtin_profile", "load_profile",
    "FuzzyClass", "FuzzyParams", "apply_sliders", "classify", "defuzzify",
    "load_image", "load_mask", "render_comparison", "render_uncertainty",
    "save_mask", "to_gray_average",
    "Provenance", "SegmentationConfig", "SegmentationResult", "segment",
    "SpatialThresholds", "adjusted_variogram", "calibrate_lb", "cssni",
    "morans_i", "nav_normalized", "ssdlm",
    "__version__",
]
