"""Post-segmentation cleanup: hole filling, erosion, shape filters, blur.

A denoising profile is an ordered list of steps applied to the binary
mask that the pipeline produced. Three presets ship with the package as
YAML files (profile1, profile2, profile_d1); profile files with the same
schema can be written by hand and passed to the CLI or the service.

Profile file schema (YAML, UTF-8)::

    name: profile1
    lb: 4.23              # homogeneity lower bound applied upstream
    steps:
      - type: fill_below_area
        max_area: 100
      - type: erode
        kernel: 3
      - type: circularity_filter
        area_min: 0
        area_max: 71
        circ_min: 0.0
        circ_max: 1.0
        mode: remove      # or keep
      - type: median_blur
        kernel: 5
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
import yaml
from scipy import ndimage

from .errors import InvalidParams
from .image_io import ensure_mask

_EIGHT = np.ones((3, 3), dtype=bool)  # 8-connectivity structuring element

BUILTIN_PROFILES = ("profile1", "profile2", "profile_d1")


@dataclass(frozen=True)
class FillBelowArea:
    """Fill enclosed background holes smaller than max_area pixels."""

    max_area: int

    def __post_init__(self):
        if self.max_area < 0:
            raise InvalidParams("max_area must be >= 0")


@dataclass(frozen=True)
class Erode:
    """Binary erosion with a square kernel (replicate border)."""

    kernel: int

    def __post_init__(self):
        if self.kernel < 3 or self.kernel % 2 == 0:
            raise InvalidParams(f"erode kernel must be odd >= 3, got {self.kernel}")


@dataclass(frozen=True)
class CircularityFilter:
    """Remove (or exclusively keep) components by area and circularity."""

    area_min: int
    area_max: int
    circ_min: float = 0.0
    circ_max: float = 1.0
    mode: str = "remove"

    def __post_init__(self):
        if self.area_min > self.area_max:
            raise InvalidParams("area_min must be <= area_max")
        if self.circ_min > self.circ_max:
            raise InvalidParams("circ_min must be <= circ_max")
        if not (0.0 <= self.circ_min and self.circ_max <= 1.0):
            raise InvalidParams("circularity bounds must lie in [0, 1]")
        if self.mode not in ("remove", "keep"):
            raise InvalidParams(f"mode must be 'remove' or 'keep', got {self.mode!r}")


@dataclass(frozen=True)
class MedianBlur:
    """Majority vote over an odd square window (binary median)."""

    kernel: int

    def __post_init__(self):
        if self.kernel < 3 or self.kernel % 2 == 0:
            raise InvalidParams(f"median kernel must be odd >= 3, got {self.kernel}")


DenoiseStep = FillBelowArea | Erode | CircularityFilter | MedianBlur


@dataclass(frozen=True)
class DenoiseProfile:
    """Named lower bound plus an ordered denoising step list."""

    name: str
    lb: float
    steps: tuple[DenoiseStep, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {"name": self.name, "lb": self.lb,
                "steps": [_step_to_dict(s) for s in self.steps]}


@dataclass(frozen=True)
class Component:
    """One 8-connected foreground component with its shape statistics.

    perimeter counts boundary pixels (foreground pixels with at least one
    non-foreground 8-neighbor, the image border included); circularity is
    the isoperimetric quotient 4*pi*A/P^2 clamped to [0, 1].
    """

    label: int
    area: int
    perimeter: int
    circularity: float
    coords: np.ndarray  # (area, 2) row/col pairs


def connected_components(mask: np.ndarray) -> list[Component]:
    """8-connected foreground components with area/perimeter/circularity."""
    mask = ensure_mask(mask)
    labels, count = ndimage.label(mask > 0, structure=_EIGHT)
    if count == 0:
        return []
    fg = mask > 0
    interior = ndimage.binary_erosion(fg, structure=_EIGHT, border_value=0)
    boundary = fg & ~interior
    areas = np.bincount(labels.ravel(), minlength=count + 1)
    perims = np.bincount(labels[boundary].ravel(), minlength=count + 1)
    out = []
    for lab in range(1, count + 1):
        area = int(areas[lab])
        perim = int(perims[lab])
        circ = min(4.0 * np.pi * area / (perim * perim), 1.0) if perim else 1.0
        coords = np.argwhere(labels == lab)
        out.append(Component(label=lab, area=area, perimeter=perim,
                             circularity=circ, coords=coords))
    return out


def fill_below_area(mask: np.ndarray, max_area: int) -> np.ndarray:
    """Fill enclosed background holes strictly smaller than max_area.

    Background is 4-connected (the dual of 8-connected foreground); a
    hole is a background component that does not touch the image border.
    """
    mask = ensure_mask(mask)
    bg = mask == 0
    labels, count = ndimage.label(bg)  # default structure = 4-connectivity
    if count == 0:
        return mask.copy()
    border_labels = np.unique(np.concatenate([
        labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]]))
    areas = np.bincount(labels.ravel(), minlength=count + 1)
    fill = np.zeros(count + 1, dtype=bool)
    for lab in range(1, count + 1):
        fill[lab] = areas[lab] < max_area and lab not in border_labels
    out = mask.copy()
    out[fill[labels]] = 255
    return out


def erode(mask: np.ndarray, kernel: int) -> np.ndarray:
    """Binary erosion with a kernel x kernel square element.

    Pixels outside the image are treated as foreground (replicate-style
    border), so an all-foreground mask is unchanged.
    """
    step = Erode(kernel)
    mask = ensure_mask(mask)
    selem = np.ones((step.kernel, step.kernel), dtype=bool)
    kept = ndimage.binary_erosion(mask > 0, structure=selem, border_value=1)
    return np.where(kept, 255, 0).astype(np.uint8)


def circularity_filter(mask: np.ndarray, step: CircularityFilter) -> np.ndarray:
    """Drop or exclusively keep components matching the area/circularity box."""
    mask = ensure_mask(mask)
    out = mask.copy()
    for comp in connected_components(mask):
        matches = (step.area_min <= comp.area <= step.area_max
                   and step.circ_min <= comp.circularity <= step.circ_max)
        drop = matches if step.mode == "remove" else not matches
        if drop:
            out[comp.coords[:, 0], comp.coords[:, 1]] = 0
    return out


def median_blur(mask: np.ndarray, kernel: int) -> np.ndarray:
    """Binary median filter: majority vote over the window.

    Implemented with exact integer window counts (replicate border), so
    the result is deterministic and stays two-level.
    """
    step = MedianBlur(kernel)
    mask = ensure_mask(mask)
    n = step.kernel
    r = n // 2
    ones = (np.pad(mask, r, mode="edge") > 0).astype(np.int64)
    ii = np.zeros((ones.shape[0] + 1, ones.shape[1] + 1), dtype=np.int64)
    ii[1:, 1:] = ones.cumsum(axis=0).cumsum(axis=1)
    counts = (ii[n:, n:] - ii[:-n, n:] - ii[n:, :-n] + ii[:-n, :-n])
    return np.where(counts * 2 > n * n, 255, 0).astype(np.uint8)


def apply_step(mask: np.ndarray, step: DenoiseStep) -> np.ndarray:
    if isinstance(step, FillBelowArea):
        return fill_below_area(mask, step.max_area)
    if isinstance(step, Erode):
        return erode(mask, step.kernel)
    if isinstance(step, CircularityFilter):
        return circularity_filter(mask, step)
    if isinstance(step, MedianBlur):
        return median_blur(mask, step.kernel)
    raise InvalidParams(f"unknown denoise step: {step!r}")


def apply_profile(mask: np.ndarray, profile: DenoiseProfile) -> np.ndarray:
    """Apply the profile's steps in order (the lb field acts upstream)."""
    out = ensure_mask(mask).copy()
    for step in profile.steps:
        out = apply_step(out, step)
    return out


_STEP_TYPES = {
    "fill_below_area": FillBelowArea,
    "erode": Erode,
    "circularity_filter": CircularityFilter,
    "median_blur": MedianBlur,
}
_STEP_NAMES = {cls: name for name, cls in _STEP_TYPES.items()}


def step_from_dict(d: dict) -> DenoiseStep:
    d = dict(d)
    kind = d.pop("type", None)
    cls = _STEP_TYPES.get(kind)
    if cls is None:
        raise InvalidParams(f"unknown step type {kind!r} "
                            f"(expected one of {sorted(_STEP_TYPES)})")
    try:
        return cls(**d)
    except TypeError as exc:
        raise InvalidParams(f"bad fields for step {kind!r}: {exc}") from exc


def _step_to_dict(step: DenoiseStep) -> dict:
    d = {"type": _STEP_NAMES[type(step)]}
    d.update({k: getattr(step, k) for k in step.__dataclass_fields__})
    return d


def profile_from_dict(d: dict) -> DenoiseProfile:
    try:
        steps = tuple(step_from_dict(s) for s in d.get("steps", []))
        return DenoiseProfile(name=str(d["name"]), lb=float(d["lb"]), steps=steps)
    except KeyError as exc:
        raise InvalidParams(f"profile file missing key: {exc}") from exc


def load_profile(path) -> DenoiseProfile:
    """Read a profile YAML file."""
    with open(Path(path), "r", encoding="utf-8") as fh:
        data = yaml.safe_load(fh)
    if not isinstance(data, dict):
        raise InvalidParams(f"{path}: profile file must be a mapping")
    return profile_from_dict(data)


def save_profile(profile: DenoiseProfile, path) -> None:
    with open(Path(path), "w", encoding="utf-8") as fh:
        yaml.safe_dump(profile.to_dict(), fh, sort_keys=False)


def builtin_profile(name: str) -> DenoiseProfile:
    """Load one of the shipped presets by name (see BUILTIN_PROFILES)."""
    if name not in BUILTIN_PROFILES:
        raise InvalidParams(
            f"unknown profile {name!r}; built-ins are {BUILTIN_PROFILES}")
    ref = resources.files("brightseg").joinpath(f"profiles/{name}.yaml")
    data = yaml.safe_load(ref.read_text(encoding="utf-8"))
    return profile_from_dict(data)
