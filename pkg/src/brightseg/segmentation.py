"""End-to-end unsupervised masking pipeline.

Decision order per pixel:

1. primary masking - neighborhoods whose SSDLM falls below the
   homogeneity lower bound are background outright;
2. fuzzy classification of the grayscale intensity - black and white
   pixels are decided, mid-range pixels stay ambiguous;
3. spatial analysis of ambiguous pixels - the SD-normalized adjusted
   variogram, Moran's I and a per-channel contrast rule resolve them.

Every pixel ends with exactly one verdict and one provenance tag, and
the set of pixels that reached stage 3 is reported as the uncertainty
mask. The engine processes images in tiles that may run on several
threads; per-pixel arithmetic is arranged so the output is byte-identical
for any tile size and thread count (integer window sums, fixed-order
float accumulation).
"""
from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from . import fuzzy as fz
from . import spatial_stats as ss
from .errors import DegeneratePatch, InvalidParams
from .image_io import to_gray_average

BACKGROUND = 0
FOREGROUND = 255


class Provenance(enum.IntEnum):
    """Which pipeline stage decided a pixel."""

    PRIMARY_MASK = 0
    FUZZY_BLACK = 1
    FUZZY_WHITE = 2
    NAV_MORAN = 3
    CHANNEL_RULE = 4
    NAV_HIGH_TEXTURE = 5


# Gray levels used when the provenance map is exported as a PNG raster.
PROVENANCE_GRAY = {
    Provenance.PRIMARY_MASK: 0,
    Provenance.FUZZY_BLACK: 51,
    Provenance.FUZZY_WHITE: 102,
    Provenance.NAV_MORAN: 153,
    Provenance.CHANNEL_RULE: 204,
    Provenance.NAV_HIGH_TEXTURE: 255,
}


@dataclass(frozen=True)
class SegmentationConfig:
    """Immutable bundle of every tunable the pipeline consumes."""

    fuzzy: fz.FuzzyParams = field(default_factory=fz.FuzzyParams)
    thresholds: ss.SpatialThresholds = field(default_factory=ss.SpatialThresholds)
    green_cut: float = 100.0
    classify_on: str = "fuzzy"
    variogram_distance: str = "sequence"

    def __post_init__(self):
        if not 0.0 <= self.green_cut <= 255.0:
            raise InvalidParams(f"green_cut must be in [0, 255], got {self.green_cut}")
        if self.classify_on not in ("fuzzy", "raw"):
            raise InvalidParams(f"classify_on must be 'fuzzy' or 'raw', got {self.classify_on!r}")
        if self.variogram_distance not in ("sequence", "euclidean"):
            raise InvalidParams(
                f"variogram_distance must be 'sequence' or 'euclidean', "
                f"got {self.variogram_distance!r}")

    def to_dict(self) -> dict:
        """Canonical plain-dict form, used for config hashing and the API."""
        return {
            "fuzzy": {
                "a": self.fuzzy.a, "b": self.fuzzy.b, "c": self.fuzzy.c,
                "alpha": self.fuzzy.alpha, "beta": self.fuzzy.beta,
                "v_dark": self.fuzzy.v_dark, "v_gray": self.fuzzy.v_gray,
                "v_bright": self.fuzzy.v_bright,
                "lower_cut": self.fuzzy.effective_lower_cut,
                "upper_cut": self.fuzzy.effective_upper_cut,
            },
            "thresholds": {
                "lb": self.thresholds.lb,
                "nav": self.thresholds.nav,
                "randomness": self.thresholds.randomness,
                "patch_size": self.thresholds.patch_size,
            },
            "green_cut": self.green_cut,
            "classify_on": self.classify_on,
            "variogram_distance": self.variogram_distance,
        }


@dataclass
class SegmentationResult:
    """Pipeline output: binary mask, uncertainty mask, provenance codes."""

    mask: np.ndarray         # (H, W) uint8 in {0, 255}
    uncertainty: np.ndarray  # (H, W) uint8, 255 where stage 3 ran
    provenance: np.ndarray   # (H, W) uint8 Provenance codes

    def provenance_image(self) -> np.ndarray:
        """Provenance codes mapped to the documented gray levels."""
        lut = np.zeros(256, dtype=np.uint8)
        for tag, level in PROVENANCE_GRAY.items():
            lut[int(tag)] = level
        return lut[self.provenance]

    def provenance_counts(self) -> dict[str, int]:
        counts = np.bincount(self.provenance.ravel(), minlength=len(Provenance))
        return {tag.name.lower(): int(counts[int(tag)]) for tag in Provenance}


def _window_sums(padded: np.ndarray, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Exact integer sums of x and x^2 over every size x size window.

    `padded` must already carry a replicate border of size//2 on each
    side; the returned maps align with the unpadded image. Integer sums
    keep every later comparison bit-reproducible.
    """
    p = padded.astype(np.int64)
    ii1 = np.zeros((p.shape[0] + 1, p.shape[1] + 1), dtype=np.int64)
    ii1[1:, 1:] = p.cumsum(axis=0).cumsum(axis=1)
    ii2 = np.zeros_like(ii1)
    ii2[1:, 1:] = (p * p).cumsum(axis=0).cumsum(axis=1)

    def win(ii):
        return (ii[size:, size:] - ii[:-size, size:]
                - ii[size:, :-size] + ii[:-size, :-size])

    return win(ii1), win(ii2)


def primary_mask(gray: np.ndarray, cfg: SegmentationConfig) -> np.ndarray:
    """First-stage homogeneity mask.

    Returns a (H, W) uint8 array where 0 marks pixels whose neighborhood
    SSDLM is strictly below the lower bound (decided background) and 255
    marks pixels left undecided for the later stages.
    """
    gray = np.asarray(gray, dtype=np.uint8)
    n = cfg.thresholds.patch_size
    r = n // 2
    padded = np.pad(gray, r, mode="edge")
    s1, s2 = _window_sums(padded, n)
    m = n * n
    # ssdlm < lb  <=>  m*S2 - S1^2 < (lb*m)^2, all in exact integers on the left
    below = (m * s2 - s1 * s1) < (cfg.thresholds.lb * m) ** 2
    out = np.full(gray.shape, 255, dtype=np.uint8)
    out[below] = 0
    return out


def resolve_ambiguous(rgb_patches, gray_patch, cfg: SegmentationConfig):
    """Resolve one fuzzy-ambiguous pixel from its neighborhoods.

    rgb_patches is a (R, G, B) triple of channel patches and gray_patch
    the grayscale patch, all centered on the pixel. Returns
    (value, Provenance) with value 0 or 255.

    Branch order: a constant gray patch is background immediately; a
    normalized variogram at or above the NAV threshold is foreground
    (high texture); Moran's I below the randomness threshold is
    background (disorder); otherwise the channel rule decides - a pixel
    whose green intensity is lowest and below the green cut while the
    channel contrasts order red > green > blue is background, anything
    else stays foreground.
    """
    try:
        v = ss.nav_normalized(gray_patch, distance=cfg.variogram_distance)
    except DegeneratePatch:
        return BACKGROUND, Provenance.NAV_MORAN
    if v >= cfg.thresholds.nav:
        return FOREGROUND, Provenance.NAV_HIGH_TEXTURE
    moran = ss.morans_i(gray_patch)
    if moran < cfg.thresholds.randomness:
        return BACKGROUND, Provenance.NAV_MORAN
    r_patch, g_patch, b_patch = rgb_patches
    center = tuple(np.asarray(p)[p.shape[0] // 2, p.shape[1] // 2]
                   for p in (r_patch, g_patch, b_patch))
    r_c, g_c, b_c = (float(x) for x in center)
    d_r, d_g, d_b = ss.cssni(r_patch), ss.cssni(g_patch), ss.cssni(b_patch)
    if (g_c < cfg.green_cut and g_c < r_c and g_c < b_c
            and d_r > d_g > d_b):
        return BACKGROUND, Provenance.CHANNEL_RULE
    return FOREGROUND, Provenance.CHANNEL_RULE


def _batch_cssni(patches: np.ndarray) -> np.ndarray:
    """CSSNI for a (K, n, n) int64 patch stack; exact integer results."""
    t = ((patches[:, :, :-1] - patches[:, :, 1:]) ** 2).sum(axis=(1, 2))
    t += ((patches[:, :-1, :] - patches[:, 1:, :]) ** 2).sum(axis=(1, 2))
    t += ((patches[:, :-1, :-1] - patches[:, 1:, 1:]) ** 2).sum(axis=(1, 2))
    t += ((patches[:, :-1, 1:] - patches[:, 1:, :-1]) ** 2).sum(axis=(1, 2))
    return t


def _batch_variogram(patches: np.ndarray, mode: str) -> np.ndarray:
    """Adjusted variogram for a (K, n, n) int64 patch stack.

    Accumulates one float term per distance group in a fixed order, with
    the inner pair sums done in exact integers, so each pixel's value is
    independent of how the batch was assembled.
    """
    k, nr, nc = patches.shape
    m = nr * nc
    pairs = m * (m - 1) // 2
    acc = np.zeros(k, dtype=np.float64)
    if mode == "sequence":
        z = patches.reshape(k, m)
        for d in range(1, m):
            sq = ((z[:, d:] - z[:, :-d]) ** 2).sum(axis=1)
            acc += sq * (0.5 / (pairs * d))
    else:  # euclidean
        for dr in range(nr):
            for dc in range(-(nc - 1), nc):
                if dr == 0 and dc <= 0:
                    continue
                if dc >= 0:
                    a = patches[:, :nr - dr, :nc - dc]
                    b = patches[:, dr:, dc:]
                else:
                    a = patches[:, :nr - dr, -dc:]
                    b = patches[:, dr:, :nc + dc]
                sq = ((a - b) ** 2).sum(axis=(1, 2))
                dist = float(np.hypot(dr, dc))
                acc += sq * (0.5 / (pairs * dist))
    return acc


def _batch_morans(patches: np.ndarray, s1: np.ndarray) -> np.ndarray:
    """Moran's I for a (K, n, n) int64 patch stack with patch sums s1.

    Uses integer-centered values u = m*x - S1 (the m^2 scale cancels in
    the ratio) and a fixed j-order accumulation for reproducibility.
    Degenerate patches must be filtered out by the caller.
    """
    k, nr, nc = patches.shape
    m = nr * nc
    w = ss.inverse_distance_weights(nr, nc)
    w_sum = float(w.sum())
    u = (m * patches.reshape(k, m) - s1[:, None])
    uu = (u * u).sum(axis=1)
    uf = u.astype(np.float64)
    num = np.zeros(k, dtype=np.float64)
    for j in range(m):
        t = (uf * w[j]).sum(axis=1)
        num += uf[:, j] * t
    return m * num / (w_sum * uu.astype(np.float64))


def _process_tile(tile, gray, channels, sums, luts, cfg, out):
    """Decide every pixel of one tile; writes only into its own slab."""
    r0, r1, c0, c1 = tile
    n = cfg.thresholds.patch_size
    m = n * n
    s1_map, s2_map = sums
    class_lut = luts
    mask, uncertainty, provenance = out

    s1 = s1_map[r0:r1, c0:c1]
    s2 = s2_map[r0:r1, c0:c1]
    gray_slab = gray[r0:r1, c0:c1]

    below = (m * s2 - s1 * s1) < (cfg.thresholds.lb * m) ** 2
    cls = class_lut[gray_slab]

    mask_slab = np.empty(gray_slab.shape, dtype=np.uint8)
    prov_slab = np.empty(gray_slab.shape, dtype=np.uint8)
    unc_slab = np.zeros(gray_slab.shape, dtype=np.uint8)

    mask_slab[below] = BACKGROUND
    prov_slab[below] = Provenance.PRIMARY_MASK

    black = ~below & (cls == 0)
    white = ~below & (cls == 1)
    amb = ~below & (cls == 2)
    mask_slab[black] = BACKGROUND
    prov_slab[black] = Provenance.FUZZY_BLACK
    mask_slab[white] = FOREGROUND
    prov_slab[white] = Provenance.FUZZY_WHITE
    unc_slab[amb] = 255

    if amb.any():
        rows, cols = np.nonzero(amb)
        rows_g = rows + r0
        cols_g = cols + c0
        patches = channels["gray_windows"][rows_g, cols_g].astype(np.int64)
        k = patches.shape[0]
        ps1 = s1_map[rows_g, cols_g]
        ps2 = s2_map[rows_g, cols_g]

        value = np.empty(k, dtype=np.uint8)
        prov = np.empty(k, dtype=np.uint8)

        degenerate = (m * ps2 - ps1 * ps1) == 0
        value[degenerate] = BACKGROUND
        prov[degenerate] = Provenance.NAV_MORAN

        live = np.nonzero(~degenerate)[0]
        if live.size:
            live_patches = patches[live]
            gamma = _batch_variogram(live_patches, cfg.variogram_distance)
            sd = np.sqrt((m * ps2[live] - ps1[live] * ps1[live]).astype(np.float64)) / m
            nav = gamma / sd

            high = nav >= cfg.thresholds.nav
            value[live[high]] = FOREGROUND
            prov[live[high]] = Provenance.NAV_HIGH_TEXTURE

            low = np.nonzero(~high)[0]
            if low.size:
                idx = live[low]
                moran = _batch_morans(patches[idx], ps1[idx])
                disordered = moran < cfg.thresholds.randomness
                value[idx[disordered]] = BACKGROUND
                prov[idx[disordered]] = Provenance.NAV_MORAN

                chan_idx = idx[~disordered]
                if chan_idx.size:
                    rr = rows_g[chan_idx]
                    cc = cols_g[chan_idx]
                    d = {}
                    center = {}
                    for name in "rgb":
                        win = channels[f"{name}_windows"]
                        ch_patches = win[rr, cc].astype(np.int64)
                        d[name] = _batch_cssni(ch_patches)
                        center[name] = channels[name][rr, cc].astype(np.int64)
                    is_bg = ((center["g"] < cfg.green_cut)
                             & (center["g"] < center["r"])
                             & (center["g"] < center["b"])
                             & (d["r"] > d["g"]) & (d["g"] > d["b"]))
                    value[chan_idx] = np.where(is_bg, BACKGROUND, FOREGROUND)
                    prov[chan_idx] = Provenance.CHANNEL_RULE

        mask_slab[rows, cols] = value
        prov_slab[rows, cols] = prov

    mask[r0:r1, c0:c1] = mask_slab
    uncertainty[r0:r1, c0:c1] = unc_slab
    provenance[r0:r1, c0:c1] = prov_slab


def segment(img: np.ndarray, cfg: SegmentationConfig | None = None,
            threads: int = 1, tile_size: int = 256) -> SegmentationResult:
    """Run the full pipeline on an (H, W, 3) uint8 RGB image.

    `threads` and `tile_size` control the tiled execution only; the
    output is byte-identical for every setting of both.
    """
    if cfg is None:
        cfg = SegmentationConfig()
    img = np.asarray(img, dtype=np.uint8)
    if img.ndim != 3 or img.shape[2] != 3:
        raise InvalidParams(f"expected (H, W, 3) uint8 image, got shape {img.shape}")
    if tile_size < 1:
        raise InvalidParams(f"tile_size must be positive, got {tile_size}")
    h, w = img.shape[:2]
    n = cfg.thresholds.patch_size
    r = n // 2

    gray = to_gray_average(img)
    padded = np.pad(gray, r, mode="edge")
    sums = _window_sums(padded, n)
    _, class_lut = fz.intensity_luts(cfg.fuzzy, on=cfg.classify_on)

    channels = {"gray_windows": sliding_window_view(padded, (n, n))}
    for i, name in enumerate("rgb"):
        ch = img[:, :, i]
        channels[name] = ch
        channels[f"{name}_windows"] = sliding_window_view(
            np.pad(ch, r, mode="edge"), (n, n))

    mask = np.empty((h, w), dtype=np.uint8)
    uncertainty = np.empty((h, w), dtype=np.uint8)
    provenance = np.empty((h, w), dtype=np.uint8)
    out = (mask, uncertainty, provenance)

    tiles = [(r0, min(r0 + tile_size, h), c0, min(c0 + tile_size, w))
             for r0 in range(0, h, tile_size)
             for c0 in range(0, w, tile_size)]

    if threads <= 1 or len(tiles) == 1:
        for tile in tiles:
            _process_tile(tile, gray, channels, sums, class_lut, cfg, out)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_process_tile, tile, gray, channels,
                                   sums, class_lut, cfg, out)
                       for tile in tiles]
            for f in futures:
                f.result()

    return SegmentationResult(mask=mask, uncertainty=uncertainty,
                              provenance=provenance)
