"""HTTP prediction backend.

Receives a QR-code image, runs the structural pipeline
(preprocess → binarize → feature extraction → classifier), and returns
the verdict.  The service never links any payload decoder: verdicts are
computed purely from the symbol's structure, so no response field can
contain decoded URL content.

Routes:
    POST /api/v1/predict   raw PNG body, or JSON ``{"image_b64": ...}``
    GET  /api/v1/health    readiness, model digest, kernel build
    GET  /api/v1/spec      OpenAPI description
"""

from __future__ import annotations

import base64
import binascii
import hashlib
import json
import logging
import os
import time

import anyio
import anyio.to_thread
from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import __version__, _kernels
from .errors import QrisError
from .features import extract_all
from .imaging import binarize_to_grid, decode_image, preprocess
from .model import read_model

MAX_BODY_BYTES = 8 * 1024 * 1024

# Pipeline failures that mean "this image is not a plain, machine-usable
# black-and-white QR symbol" — the client can fix these, hence 422.
_UNPROCESSABLE_CODES = frozenset({
    "image_too_small", "no_black_pixel", "implausible_module_size",
    "invalid_side_count", "format_unrecoverable", "degenerate_grid",
})

logger = logging.getLogger("qris.service")


def _error(status: int, reason: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"reason": reason, "message": message})


def create_app(model_path: str, jobs: int | None = None,
               cors_origins: tuple[str, ...] = ("*",)) -> FastAPI:
    """Build the ASGI app with the model loaded once, up front.

    A missing or malformed model file raises immediately so the process
    refuses to start rather than serving 503s forever.
    """
    with open(model_path, "rb") as fh:
        model_bytes = fh.read()
    model_id = hashlib.sha256(model_bytes).hexdigest()[:16]
    from .model import load_model
    model = load_model(model_bytes)
    limiter = anyio.CapacityLimiter(jobs or os.cpu_count() or 1)

    app = FastAPI(title="QR structural phishing detector",
                  version=__version__, openapi_url="/api/v1/spec")
    app.add_middleware(CORSMiddleware, allow_origins=list(cors_origins),
                       allow_methods=["*"], allow_headers=["*"])

    @app.middleware("http")
    async def request_log(request: Request, call_next):
        start = time.perf_counter()
        response: Response = await call_next(request)
        logger.info(json.dumps({
            "method": request.method,
            "path": request.url.path,
            "status": response.status_code,
            "duration_ms": round((time.perf_counter() - start) * 1000, 3),
        }, sort_keys=True))
        return response

    @app.get("/api/v1/health")
    async def health():
        return {"status": "ok", "model_id": model_id,
                "model_kind": model.kind,
                "kernels": _kernels.IMPLEMENTATION,
                "version": __version__}

    def run_pipeline(data: bytes) -> dict:
        timing: dict[str, float] = {}
        total_start = time.perf_counter()

        def stage(name, fn, *args):
            t0 = time.perf_counter()
            result = fn(*args)
            timing[name] = round((time.perf_counter() - t0) * 1000, 3)
            return result

        image = stage("decode", decode_image, data)
        clean = stage("preprocess", preprocess, image)
        grid = stage("binarize", binarize_to_grid, clean)
        vector = stage("extract", extract_all, grid.cells)
        label, confidence = stage("predict", model.predict_vector, vector)
        timing["total"] = round((time.perf_counter() - total_start) * 1000, 3)
        return {"label": label, "confidence": confidence,
                "features": vector.as_dict(), "timing_ms": timing,
                "model_id": model_id}

    @app.post("/api/v1/predict")
    async def predict(request: Request):
        body = await request.body()
        if len(body) > MAX_BODY_BYTES:
            return _error(400, "oversized_body",
                          f"request body exceeds {MAX_BODY_BYTES} bytes")
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("application/json"):
            try:
                payload = json.loads(body)
                data = base64.b64decode(payload["image_b64"], validate=True)
            except (json.JSONDecodeError, KeyError, TypeError,
                    binascii.Error):
                return _error(400, "malformed_request",
                              "JSON body must carry base64 PNG bytes in "
                              "the 'image_b64' field")
            if len(data) > MAX_BODY_BYTES:
                return _error(400, "oversized_body",
                              f"image exceeds {MAX_BODY_BYTES} bytes")
        else:
            data = body
        if not data:
            return _error(400, "malformed_request", "empty image body")
        try:
            async with limiter:
                result = await anyio.to_thread.run_sync(run_pipeline, data)
        except ValueError as exc:
            return _error(400, "undecodable_image", str(exc))
        except QrisError as exc:
            if exc.code in _UNPROCESSABLE_CODES:
                return _error(422, exc.code, str(exc))
            return _error(400, exc.code, str(exc))
        return result

    return app


def serve(model_path: str, host: str = "127.0.0.1", port: int = 8000,
          jobs: int | None = None) -> None:
    import uvicorn
    uvicorn.run(create_app(model_path, jobs=jobs), host=host, port=port,
                log_level="warning")
