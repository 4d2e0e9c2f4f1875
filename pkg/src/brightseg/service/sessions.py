"""In-memory calibration sessions.

A session holds one uploaded image, the currently tuned parameters and
denoising profile, and the artifacts of the most recent run, each
stamped with the hash of the configuration that produced it. Sessions
are ephemeral: exports are the durable artifact, so idle sessions are
evicted after a TTL and nothing is persisted.
"""
from __future__ import annotations

import hashlib
import json
import threading
import time
import uuid
from dataclasses import dataclass, field

import numpy as np

from ..denoise import DenoiseProfile, builtin_profile
from ..fuzzy import apply_sliders
from ..segmentation import SegmentationConfig, SegmentationResult
from ..spatial_stats import (DEFAULT_NAV_THRESHOLD,
                             DEFAULT_RANDOMNESS_THRESHOLD, SpatialThresholds)

DEFAULT_IDLE_TTL = 1800.0  # seconds


def config_digest(cfg: SegmentationConfig, profile: DenoiseProfile) -> str:
    payload = {"segmentation": cfg.to_dict(), "profile": profile.to_dict()}
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


@dataclass
class RunArtifacts:
    result: SegmentationResult
    cfg: SegmentationConfig
    config_hash: str
    duration_ms: float


@dataclass
class Session:
    id: str
    image: np.ndarray
    # tuning state; sliders are the source of truth for the fuzzy params
    shift_gray: float = 110.0
    span_gray: float = 30.0
    lb: float = 4.23
    nav: float = DEFAULT_NAV_THRESHOLD
    randomness: float = DEFAULT_RANDOMNESS_THRESHOLD
    patch_size: int = 5
    green_cut: float = 100.0
    classify_on: str = "fuzzy"
    variogram_distance: str = "sequence"
    profile: DenoiseProfile = field(default_factory=lambda: builtin_profile("profile1"))
    run: RunArtifacts | None = None
    export_cache: tuple[str, bytes, int] | None = None  # (hash, png, fg px)
    last_access: float = field(default_factory=time.monotonic)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def config(self) -> SegmentationConfig:
        """Resolve the tuning state into an engine configuration."""
        return SegmentationConfig(
            fuzzy=apply_sliders(self.shift_gray, self.span_gray),
            thresholds=SpatialThresholds(
                lb=self.lb, nav=self.nav, randomness=self.randomness,
                patch_size=self.patch_size),
            green_cut=self.green_cut,
            classify_on=self.classify_on,
            variogram_distance=self.variogram_distance)

    def current_hash(self) -> str:
        return config_digest(self.config(), self.profile)

    def touch(self) -> None:
        self.last_access = time.monotonic()


class SessionStore:
    """Thread-safe session registry with lazy TTL eviction."""

    def __init__(self, idle_ttl: float = DEFAULT_IDLE_TTL):
        self._sessions: dict[str, Session] = {}
        self._mutex = threading.RLock()
        self.idle_ttl = idle_ttl

    def create(self, image: np.ndarray) -> Session:
        session = Session(id=uuid.uuid4().hex, image=image)
        with self._mutex:
            self._evict_idle()
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        with self._mutex:
            self._evict_idle()
            session = self._sessions.get(session_id)
            if session is not None:
                session.touch()
            return session

    def drop(self, session_id: str) -> bool:
        with self._mutex:
            return self._sessions.pop(session_id, None) is not None

    def __len__(self) -> int:
        with self._mutex:
            return len(self._sessions)

    def _evict_idle(self) -> None:
        now = time.monotonic()
        stale = [sid for sid, s in self._sessions.items()
                 if now - s.last_access > self.idle_ttl]
        for sid in stale:
            del self._sessions[sid]
