"""Request/response models for the calibration service."""
from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class SessionCreated(BaseModel):
    session_id: str
    width: int
    height: int
    channels: int = 3


class ParamsUpdate(BaseModel):
    """Partial update; omitted fields keep their current values.

    Numeric fields accept decimal strings; out-of-range values are
    rejected rather than clamped.
    """

    shift_gray: float | None = Field(None, ge=0, le=255)
    span_gray: float | None = Field(None, gt=0, le=255)
    lb: float | None = Field(None, ge=0)
    nav: float | None = Field(None, ge=0, le=10)
    randomness: float | None = Field(None, ge=-1, le=1)
    green_cut: float | None = Field(None, ge=0, le=255)
    patch_size: int | None = None
    classify_on: str | None = None
    variogram_distance: str | None = None


class ResolvedParams(BaseModel):
    """Effective configuration after slider resolution."""

    shift_gray: float
    span_gray: float
    a: float
    b: float
    c: float
    alpha: float
    beta: float
    v_dark: float
    v_gray: float
    v_bright: float
    lower_cut: float
    upper_cut: float
    lb: float
    nav: float
    randomness: float
    patch_size: int
    green_cut: float
    classify_on: str
    variogram_distance: str
    profile_name: str
    config_hash: str


class StepModel(BaseModel):
    """One denoise step; extra keys are the step's own parameters."""

    model_config = ConfigDict(extra="allow")

    type: str


class ProfileUpdate(BaseModel):
    name: str | None = None
    steps: list[StepModel]


class SegmentResponse(BaseModel):
    config_hash: str
    duration_ms: float
    uncertain_pixels: int
    provenance_counts: dict[str, int]


class DenoiseResponse(BaseModel):
    config_hash: str
    duration_ms: float
    foreground_pixels: int


class HealthResponse(BaseModel):
    status: str = "ok"
