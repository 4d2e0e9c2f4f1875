"""Synthetic test scene with a known construction mask.

A flat background at intensity 120 with unit Gaussian noise, plus
textured elliptical blobs whose interior intensities are drawn uniformly
from a wide bright range. The blob texture guarantees per-patch SSDLM
far above the homogeneity bound while the background stays far below it,
and the texture range dips into the fuzzy mid-band so the scene always
produces an uncertainty region. The returned construction mask is the
ground truth the pipeline output is scored against.
"""
from __future__ import annotations

import numpy as np


def make_phantom(size: int = 512, n_blobs: int = 8, seed: int = 7,
                 bg_level: int = 120, noise_sigma: float = 1.0,
                 texture_low: int = 95, texture_high: int = 210):
    """Build (rgb_image, construction_mask) deterministically from seed."""
    rng = np.random.default_rng(seed)
    gray = np.clip(np.round(bg_level + rng.normal(0.0, noise_sigma, (size, size))),
                   0, 255).astype(np.uint8)

    yy, xx = np.mgrid[0:size, 0:size]
    truth = np.zeros((size, size), dtype=bool)
    margin = size // 8
    for _ in range(n_blobs):
        cy = rng.uniform(margin, size - margin)
        cx = rng.uniform(margin, size - margin)
        ry = rng.uniform(size / 20, size / 9)
        rx = rng.uniform(size / 20, size / 9)
        theta = rng.uniform(0, np.pi)
        dy = yy - cy
        dx = xx - cx
        u = dx * np.cos(theta) + dy * np.sin(theta)
        v = -dx * np.sin(theta) + dy * np.cos(theta)
        truth |= (u / rx) ** 2 + (v / ry) ** 2 <= 1.0

    texture = rng.integers(texture_low, texture_high + 1, (size, size))
    gray = np.where(truth, texture, gray).astype(np.uint8)

    rgb = np.repeat(gray[:, :, np.newaxis], 3, axis=2)
    mask = np.where(truth, 255, 0).astype(np.uint8)
    return rgb, mask
