"""HTTP session service driving the interactive calibration loop.

Upload an image, tune parameters, run the pipeline, inspect the mask /
uncertainty / provenance rasters, edit the denoising profile, and export
the final mask. Every served artifact carries an ``X-Config-Hash``
header naming the configuration that produced it; responses that change
the configuration return the new current hash so a client can tell
whether displayed artifacts are stale.

One segmentation runs at a time per session (409 on concurrent runs);
reads stay available while a run is in flight.
"""
from __future__ import annotations

import time

from fastapi import FastAPI, File, HTTPException, Response, UploadFile

from .. import denoise as dn
from ..errors import BrightsegError, CorruptData, InvalidParams, UnsupportedFormat
from ..image_io import encode_png, decode_image, render_uncertainty, to_gray_average
from ..segmentation import segment
from .schemas import (DenoiseResponse, HealthResponse, ParamsUpdate,
                      ProfileUpdate, ResolvedParams, SegmentResponse,
                      SessionCreated)
from .sessions import DEFAULT_IDLE_TTL, RunArtifacts, Session, SessionStore, config_digest


def create_app(asset_dir=None, threads: int = 1,
               idle_ttl: float = DEFAULT_IDLE_TTL) -> FastAPI:
    app = FastAPI(title="brightseg calibration service")
    store = SessionStore(idle_ttl=idle_ttl)
    app.state.sessions = store
    app.state.threads = threads

    def get_session(session_id: str) -> Session:
        session = store.get(session_id)
        if session is None:
            raise HTTPException(status_code=404,
                                detail=f"unknown session {session_id}")
        return session

    def resolved_params(session: Session) -> ResolvedParams:
        cfg = session.config()
        return ResolvedParams(
            shift_gray=session.shift_gray, span_gray=session.span_gray,
            a=cfg.fuzzy.a, b=cfg.fuzzy.b, c=cfg.fuzzy.c,
            alpha=cfg.fuzzy.alpha, beta=cfg.fuzzy.beta,
            v_dark=cfg.fuzzy.v_dark, v_gray=cfg.fuzzy.v_gray,
            v_bright=cfg.fuzzy.v_bright,
            lower_cut=cfg.fuzzy.effective_lower_cut,
            upper_cut=cfg.fuzzy.effective_upper_cut,
            lb=cfg.thresholds.lb, nav=cfg.thresholds.nav,
            randomness=cfg.thresholds.randomness,
            patch_size=cfg.thresholds.patch_size,
            green_cut=cfg.green_cut, classify_on=cfg.classify_on,
            variogram_distance=cfg.variogram_distance,
            profile_name=session.profile.name,
            config_hash=session.current_hash())

    def png_response(arr, config_hash: str) -> Response:
        return Response(content=encode_png(arr), media_type="image/png",
                        headers={"X-Config-Hash": config_hash})

    def require_run(session: Session) -> RunArtifacts:
        if session.run is None:
            raise HTTPException(status_code=404,
                                detail="no segmentation has been run yet")
        return session.run

    def compute_export(session: Session) -> tuple[str, bytes, int]:
        """Denoised final mask; stamped with the run's segmentation config
        plus the profile in force now, and cached under that hash."""
        run = require_run(session)
        export_hash = config_digest(run.cfg, session.profile)
        if session.export_cache and session.export_cache[0] == export_hash:
            return session.export_cache
        final = dn.apply_profile(run.result.mask, session.profile)
        payload = (export_hash, encode_png(final), int((final > 0).sum()))
        session.export_cache = payload
        return payload

    @app.get("/healthz", response_model=HealthResponse)
    def healthz():
        return HealthResponse()

    @app.post("/sessions", response_model=SessionCreated, status_code=201)
    async def create_session(file: UploadFile = File(...)):
        data = await file.read()
        try:
            image = decode_image(data, origin=file.filename or "<upload>")
        except (UnsupportedFormat, CorruptData) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        session = store.create(image)
        return SessionCreated(session_id=session.id,
                              height=image.shape[0], width=image.shape[1])

    @app.get("/sessions/{session_id}/image")
    def get_image(session_id: str):
        session = get_session(session_id)
        return png_response(session.image, session.current_hash())

    @app.get("/sessions/{session_id}/params", response_model=ResolvedParams)
    def get_params(session_id: str):
        return resolved_params(get_session(session_id))

    @app.put("/sessions/{session_id}/params", response_model=ResolvedParams)
    def put_params(session_id: str, update: ParamsUpdate):
        session = get_session(session_id)
        candidate = {name: getattr(update, name)
                     for name in ParamsUpdate.model_fields
                     if getattr(update, name) is not None}
        saved = {name: getattr(session, name) for name in candidate}
        try:
            for name, value in candidate.items():
                setattr(session, name, value)
            session.config()  # validates the combination
        except InvalidParams as exc:
            for name, value in saved.items():  # roll back, sliders unchanged
                setattr(session, name, value)
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return resolved_params(session)

    @app.post("/sessions/{session_id}/segment", response_model=SegmentResponse)
    def run_segment(session_id: str):
        session = get_session(session_id)
        if not session.lock.acquire(blocking=False):
            raise HTTPException(status_code=409,
                                detail="a run is already in flight")
        try:
            try:
                cfg = session.config()
            except InvalidParams as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from exc
            started = time.perf_counter()
            result = segment(session.image, cfg, threads=app.state.threads)
            duration = (time.perf_counter() - started) * 1000.0
            run = RunArtifacts(result=result, cfg=cfg,
                               config_hash=config_digest(cfg, session.profile),
                               duration_ms=duration)
            session.run = run
            session.export_cache = None
            return SegmentResponse(
                config_hash=run.config_hash, duration_ms=duration,
                uncertain_pixels=int((result.uncertainty > 0).sum()),
                provenance_counts=result.provenance_counts())
        finally:
            session.lock.release()

    @app.get("/sessions/{session_id}/mask")
    def get_mask(session_id: str):
        session = get_session(session_id)
        run = require_run(session)
        return png_response(run.result.mask, run.config_hash)

    @app.get("/sessions/{session_id}/uncertainty")
    def get_uncertainty(session_id: str, overlay: bool = False):
        session = get_session(session_id)
        run = require_run(session)
        if overlay:
            gray = to_gray_average(session.image)
            return png_response(render_uncertainty(gray, run.result.uncertainty),
                                run.config_hash)
        return png_response(run.result.uncertainty, run.config_hash)

    @app.get("/sessions/{session_id}/provenance")
    def get_provenance(session_id: str):
        session = get_session(session_id)
        run = require_run(session)
        return png_response(run.result.provenance_image(), run.config_hash)

    @app.put("/sessions/{session_id}/profile", response_model=ResolvedParams)
    def put_profile(session_id: str, update: ProfileUpdate):
        session = get_session(session_id)
        try:
            steps = tuple(dn.step_from_dict(s.model_dump()) for s in update.steps)
        except InvalidParams as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        session.profile = dn.DenoiseProfile(
            name=update.name or "custom", lb=session.lb, steps=steps)
        return resolved_params(session)

    @app.post("/sessions/{session_id}/denoise", response_model=DenoiseResponse)
    def run_denoise(session_id: str):
        session = get_session(session_id)
        if not session.lock.acquire(blocking=False):
            raise HTTPException(status_code=409,
                                detail="a run is already in flight")
        try:
            started = time.perf_counter()
            export_hash, _, foreground = compute_export(session)
            duration = (time.perf_counter() - started) * 1000.0
            return DenoiseResponse(config_hash=export_hash, duration_ms=duration,
                                   foreground_pixels=foreground)
        finally:
            session.lock.release()

    @app.get("/sessions/{session_id}/export")
    def get_export(session_id: str):
        session = get_session(session_id)
        export_hash, png, _ = compute_export(session)
        return Response(content=png, media_type="image/png",
                        headers={"X-Config-Hash": export_hash,
                                 "Content-Disposition":
                                     'attachment; filename="mask.png"'})

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str):
        if not store.drop(session_id):
            raise HTTPException(status_code=404,
                                detail=f"unknown session {session_id}")
        return Response(status_code=204)

    if asset_dir is not None:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=str(asset_dir), html=True),
                  name="ui")

    return app
