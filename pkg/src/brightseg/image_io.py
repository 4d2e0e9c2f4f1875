"""Raster loading/saving, grayscale conversion and overlay rendering.

Images are plain numpy arrays: RGB rasters are (H, W, 3) uint8, grayscale
images (H, W) uint8, binary masks (H, W) uint8 holding only 0 and 255.
Readers accept 8-bit PNG / TIFF / BMP; masks are written as 8-bit
grayscale PNG so that save/load round-trips are bit-exact.
"""
from __future__ import annotations

import os
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import CorruptData, DimensionMismatch, UnsupportedFormat

# Overlay legend (render_comparison)
COLOR_TRUE_POSITIVE = (255, 255, 255)   # detected by both
COLOR_MISSED = (0, 255, 0)              # in truth, missed by prediction
COLOR_FALSE_POSITIVE = (200, 200, 200)  # predicted, not in truth
COLOR_TRUE_NEGATIVE = (0, 0, 0)

COLOR_UNCERTAIN = (255, 0, 255)         # pink uncertainty regions

_READABLE_FORMATS = {"PNG", "TIFF", "BMP"}
# 8-bit modes we can losslessly map onto RGB
_ACCEPTED_MODES = {"1", "L", "LA", "P", "RGB", "RGBA"}


def _decode_open_image(im: Image.Image, origin: str) -> np.ndarray:
    if im.format not in _READABLE_FORMATS:
        raise UnsupportedFormat(
            f"{origin}: format {im.format} not supported (want PNG/TIFF/BMP)")
    if im.mode not in _ACCEPTED_MODES:
        raise UnsupportedFormat(f"{origin}: mode {im.mode} is not an 8-bit raster")
    return np.asarray(im.convert("RGB"), dtype=np.uint8)


def load_image(path) -> np.ndarray:
    """Load an 8-bit raster as an (H, W, 3) uint8 RGB array.

    Grayscale sources are replicated across the three channels so the
    rest of the pipeline can treat every input as RGB.

    Raises FileNotFoundError, UnsupportedFormat (non 8-bit or unknown
    format) or CorruptData (truncated / undecodable file).
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such image: {path}")
    try:
        with Image.open(path) as im:
            arr = _decode_open_image(im, str(path))
    except UnidentifiedImageError as exc:
        raise CorruptData(f"{path}: cannot identify image data") from exc
    except (OSError, SyntaxError) as exc:
        raise CorruptData(f"{path}: truncated or undecodable ({exc})") from exc
    return arr


def decode_image(data: bytes, origin: str = "<upload>") -> np.ndarray:
    """Decode in-memory raster bytes with the same rules as load_image."""
    import io

    try:
        with Image.open(io.BytesIO(data)) as im:
            return _decode_open_image(im, origin)
    except UnidentifiedImageError as exc:
        raise CorruptData(f"{origin}: cannot identify image data") from exc
    except (OSError, SyntaxError) as exc:
        raise CorruptData(f"{origin}: truncated or undecodable ({exc})") from exc


def encode_png(arr: np.ndarray) -> bytes:
    """Encode a gray or RGB uint8 array as PNG bytes."""
    import io

    arr = np.asarray(arr, dtype=np.uint8)
    mode = "L" if arr.ndim == 2 else "RGB"
    buf = io.BytesIO()
    Image.fromarray(arr, mode=mode).save(buf, format="PNG")
    return buf.getvalue()


def to_gray_average(img: np.ndarray) -> np.ndarray:
    """Unweighted grayscale conversion: floor((R + G + B) / 3).

    Equal channel weights keep the conversion unbiased across channels;
    integer floor division makes the result byte-stable everywhere.
    """
    img = _ensure_rgb(img)
    total = img.astype(np.uint32).sum(axis=2)
    return (total // 3).astype(np.uint8)


def split_channels(img: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split an RGB raster into three single-channel images (R, G, B)."""
    img = _ensure_rgb(img)
    return (img[:, :, 0].copy(), img[:, :, 1].copy(), img[:, :, 2].copy())


def save_mask(mask: np.ndarray, path) -> None:
    """Write a binary mask as an 8-bit grayscale PNG (0 background, 255
    foreground)."""
    mask = ensure_mask(mask)
    path = Path(path)
    try:
        Image.fromarray(mask, mode="L").save(path, format="PNG")
    except (OSError, ValueError) as exc:
        raise OSError(f"cannot write mask to {path}: {exc}") from exc


def load_mask(path, binarize: bool = True) -> np.ndarray:
    """Load a mask PNG as (H, W) uint8.

    With binarize=True any nonzero pixel becomes 255, so masks produced
    by other tools (0/1 encodings, instance labels) compare cleanly.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such mask: {path}")
    try:
        with Image.open(path) as im:
            arr = np.asarray(im.convert("L"), dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise CorruptData(f"{path}: cannot identify image data") from exc
    except (OSError, SyntaxError) as exc:
        raise CorruptData(f"{path}: truncated or undecodable ({exc})") from exc
    if binarize:
        arr = np.where(arr > 0, 255, 0).astype(np.uint8)
    return arr


def save_image(img: np.ndarray, path) -> None:
    """Write an (H, W) gray or (H, W, 3) RGB uint8 array as PNG."""
    arr = np.asarray(img, dtype=np.uint8)
    mode = "L" if arr.ndim == 2 else "RGB"
    try:
        Image.fromarray(arr, mode=mode).save(Path(path), format="PNG")
    except (OSError, ValueError) as exc:
        raise OSError(f"cannot write image to {path}: {exc}") from exc


def render_comparison(pred: np.ndarray, truth: np.ndarray) -> np.ndarray:
    """Four-color agreement overlay between a prediction and ground truth.

    bright white = detected true positive, green = foreground the
    prediction missed, off-white = false positive, black = true negative.
    """
    pred = ensure_mask(pred)
    truth = ensure_mask(truth)
    if pred.shape != truth.shape:
        raise DimensionMismatch(
            f"pred {pred.shape} vs truth {truth.shape}")
    p = pred > 0
    t = truth > 0
    out = np.zeros((*pred.shape, 3), dtype=np.uint8)
    out[p & t] = COLOR_TRUE_POSITIVE
    out[~p & t] = COLOR_MISSED
    out[p & ~t] = COLOR_FALSE_POSITIVE
    return out


def render_uncertainty(gray: np.ndarray, uncertain: np.ndarray) -> np.ndarray:
    """Paint fuzzy-ambiguous pixels pink over the grayscale image."""
    gray = np.asarray(gray, dtype=np.uint8)
    uncertain = ensure_mask(uncertain)
    if gray.shape != uncertain.shape:
        raise DimensionMismatch(
            f"gray {gray.shape} vs uncertainty {uncertain.shape}")
    out = np.repeat(gray[:, :, np.newaxis], 3, axis=2)
    out[uncertain > 0] = COLOR_UNCERTAIN
    return out


def ensure_mask(mask: np.ndarray) -> np.ndarray:
    """Validate a (H, W) uint8 two-level mask and return it as uint8."""
    arr = np.asarray(mask)
    if arr.ndim != 2:
        raise DimensionMismatch(f"mask must be 2D, got shape {arr.shape}")
    arr = arr.astype(np.uint8, copy=False)
    bad = ~np.isin(arr, (0, 255))
    if bad.any():
        raise ValueError("mask contains values other than 0 and 255")
    return arr


def _ensure_rgb(img: np.ndarray) -> np.ndarray:
    arr = np.asarray(img)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise DimensionMismatch(f"expected (H, W, 3) RGB array, got {arr.shape}")
    return arr.astype(np.uint8, copy=False)
