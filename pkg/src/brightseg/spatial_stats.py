"""Local spatial statistics computed on square pixel neighborhoods.

All statistics operate on a small 2D patch of intensities (odd side,
typically 5x5) and return a single scalar. They are the decision
primitives of the segmentation pipeline: the local standard deviation
flags homogeneous background, the adjusted variogram and Moran's I
characterize texture versus noise in ambiguous regions, and the nodal
intensity shift compares contrast across color channels.

Patches are plain 2D numpy arrays. Values are treated as reals; uint8
input is fine. Zero-variance (constant) patches make several statistics
undefined and raise :class:`DegeneratePatch` rather than returning 0, so
callers are forced to give the degenerate case an explicit meaning.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DegeneratePatch, InsufficientSamples, InvalidParams

ALLOWED_PATCH_SIZES = (3, 5, 7, 9, 11)

DEFAULT_LOWER_BOUND = 4.23      # bright-field homogeneity threshold
DEFAULT_NAV_THRESHOLD = 2.0     # slider range 0..10
DEFAULT_RANDOMNESS_THRESHOLD = 0.0  # slider range -1..+1
DEFAULT_PATCH_SIZE = 5


@dataclass(frozen=True)
class SpatialThresholds:
    """Cutoffs that drive the per-pixel spatial decisions.

    lb          : homogeneity lower bound; pixels whose neighborhood SD
                  falls below it are masked as background outright.
    nav         : threshold on the SD-normalized adjusted variogram.
    randomness  : Moran's I threshold; below it a neighborhood counts as
                  spatially disordered.
    patch_size  : odd side length of the square neighborhood.
    """

    lb: float = DEFAULT_LOWER_BOUND
    nav: float = DEFAULT_NAV_THRESHOLD
    randomness: float = DEFAULT_RANDOMNESS_THRESHOLD
    patch_size: int = DEFAULT_PATCH_SIZE

    def __post_init__(self):
        if self.lb < 0:
            raise InvalidParams(f"lb must be >= 0, got {self.lb}")
        if not 0.0 <= self.nav <= 10.0:
            raise InvalidParams(f"nav must be in [0, 10], got {self.nav}")
        if not -1.0 <= self.randomness <= 1.0:
            raise InvalidParams(
                f"randomness must be in [-1, 1], got {self.randomness}")
        if self.patch_size not in ALLOWED_PATCH_SIZES:
            raise InvalidParams(
                f"patch_size must be one of {ALLOWED_PATCH_SIZES}, "
                f"got {self.patch_size}")


def _as_patch(patch) -> np.ndarray:
    a = np.asarray(patch, dtype=np.float64)
    if a.ndim == 1:
        a = a[np.newaxis, :]
    if a.ndim != 2 or a.size == 0:
        raise InvalidParams("patch must be a non-empty 2D array")
    return a


def extract_patch(image: np.ndarray, row: int, col: int, size: int) -> np.ndarray:
    """Extract the size x size neighborhood centered on (row, col).

    Coordinates outside the image are clamped to the nearest edge pixel
    (replicate padding), the border rule used throughout the pipeline.
    """
    if size % 2 == 0 or size < 1:
        raise InvalidParams(f"patch size must be odd and positive, got {size}")
    h, w = image.shape[:2]
    r = size // 2
    rows = np.clip(np.arange(row - r, row + r + 1), 0, h - 1)
    cols = np.clip(np.arange(col - r, col + r + 1), 0, w - 1)
    return image[np.ix_(rows, cols)]


def ssdlm(patch) -> float:
    """Standard deviation of patch intensities about their local mean.

    Population form: sqrt(sum((x - mean)^2) / N) with N the pixel count.
    A computationally cheap homogeneity proxy; 0 iff the patch is constant.
    """
    a = _as_patch(patch)
    mean = a.mean()
    return float(np.sqrt(np.mean((a - mean) ** 2)))


@lru_cache(maxsize=32)
def inverse_distance_weights(n_rows: int, n_cols: int) -> np.ndarray:
    """Pairwise inverse-Euclidean-distance weight matrix for a patch grid.

    Entry (i, j) is 1/dist between the 2D coordinates of flattened pixels
    i and j; self weights are 0. Symmetric by construction.
    """
    rr, cc = np.meshgrid(np.arange(n_rows), np.arange(n_cols), indexing="ij")
    coords = np.column_stack([rr.ravel(), cc.ravel()]).astype(np.float64)
    diff = coords[:, None, :] - coords[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=2))
    with np.errstate(divide="ignore"):
        w = np.where(dist > 0, 1.0 / dist, 0.0)
    w.setflags(write=False)
    return w


def morans_i(patch, weights: np.ndarray | None = None) -> float:
    """Spatial autocorrelation of the patch under inverse-distance weights.

        I = n * sum_ij w_ij (x_i - mean)(x_j - mean)
            / (sum_ij w_ij * sum_i (x_i - mean)^2)

    with n the number of pixels. Positive values indicate clustering,
    negative values dispersion, near-zero randomness.

    Raises DegeneratePatch for a constant patch (zero denominator).
    """
    a = _as_patch(patch)
    if weights is None:
        weights = inverse_distance_weights(a.shape[0], a.shape[1])
    z = a.ravel() - a.mean()
    denom = float(z @ z)
    if denom == 0.0:
        raise DegeneratePatch("constant patch: Moran's I undefined")
    num = float(z @ weights @ z)
    return a.size * num / (float(weights.sum()) * denom)


@lru_cache(maxsize=64)
def _pair_inverse_distances(n_rows: int, n_cols: int, mode: str) -> np.ndarray:
    """1/d for all unordered index pairs (i<j) of the flattened patch.

    mode "sequence": d is the index gap in the row-major flattening.
    mode "euclidean": d is the 2D Euclidean distance between pixels.
    """
    m = n_rows * n_cols
    iu = np.triu_indices(m, k=1)
    if mode == "sequence":
        d = (iu[1] - iu[0]).astype(np.float64)
    elif mode == "euclidean":
        rows = np.arange(m) // n_cols
        cols = np.arange(m) % n_cols
        d = np.sqrt((rows[iu[0]] - rows[iu[1]]) ** 2.0
                    + (cols[iu[0]] - cols[iu[1]]) ** 2.0)
    else:
        raise InvalidParams(f"unknown variogram distance mode: {mode!r}")
    inv = 1.0 / d
    inv.setflags(write=False)
    return inv


def adjusted_variogram(patch, distance: str = "sequence") -> float:
    """Single-scalar variogram-like texture measure.

    Half the mean, over all unordered pixel pairs, of the squared
    intensity difference divided by the pair distance. The default
    distance is the index gap after flattening the patch row-major into a
    1D sequence; "euclidean" switches to true 2D distances.
    """
    a = _as_patch(patch)
    if a.size < 2:
        raise InvalidParams("adjusted variogram needs at least 2 pixels")
    z = a.ravel()
    iu = np.triu_indices(z.size, k=1)
    sq = (z[iu[0]] - z[iu[1]]) ** 2
    inv_d = _pair_inverse_distances(a.shape[0], a.shape[1], distance)
    return 0.5 * float(np.mean(sq * inv_d))


def cssni(patch) -> float:
    """Cumulative squared shift of nodal intensity.

    Sum of squared intensity differences over every unordered pair of
    8-connected neighbors inside the patch (equivalently, half the sum
    over ordered pairs). 0 iff the patch is constant.
    """
    a = _as_patch(patch)
    total = np.sum((a[:, :-1] - a[:, 1:]) ** 2)        # horizontal
    total += np.sum((a[:-1, :] - a[1:, :]) ** 2)       # vertical
    total += np.sum((a[:-1, :-1] - a[1:, 1:]) ** 2)    # diagonal
    total += np.sum((a[:-1, 1:] - a[1:, :-1]) ** 2)    # anti-diagonal
    return float(total)


def nav_normalized(patch, distance: str = "sequence") -> float:
    """Adjusted variogram normalized by the patch standard deviation.

    Raises DegeneratePatch when the patch is constant (SD = 0); the
    pipeline treats such neighborhoods as homogeneous background.
    """
    sd = ssdlm(patch)
    if sd == 0.0:
        raise DegeneratePatch("constant patch: normalized variogram undefined")
    return adjusted_variogram(patch, distance=distance) / sd


def calibrate_lb(background_patches) -> float:
    """Homogeneity lower bound from sampled background neighborhoods.

    Computes the SSDLM of every patch and returns mean + 3 * SD of that
    sample (population SD). Shipped default for bright-field microscopy
    is DEFAULT_LOWER_BOUND; this recomputes the bound for a new modality.
    """
    patches = list(background_patches)
    if len(patches) < 2:
        raise InsufficientSamples(
            f"calibration needs >= 2 patches, got {len(patches)}")
    values = np.array([ssdlm(p) for p in patches], dtype=np.float64)
    return float(values.mean() + 3.0 * values.std())
