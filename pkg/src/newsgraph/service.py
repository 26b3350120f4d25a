"""HTTP API behind the demo UI: predict, async explain jobs, what-if.

Explanation costs one incremental-tracking pass per distinct word, so it
runs as a background job polled by the client; prediction and what-if are
synchronous.  The loaded model and embedding store are immutable shared
state; the in-memory job table is the only synchronized structure and
evicts the oldest finished jobs beyond a fixed cap.
"""

from __future__ import annotations

import threading
import uuid
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .classifier import MODEL_FORMAT_VERSION, MlpModel, Prediction
from .embeddings import EmbeddingStore
from .errors import EmptyDocument, NewsgraphError, UnknownWord
from .explain import analyze, explain_all, what_if
from .textgraph import tokenize

MAX_FINISHED_JOBS = 100

QUEUED = "queued"
RUNNING = "running"
DONE = "done"
FAILED = "failed"


@dataclass
class ExplainJob:
    job_id: str
    status: str = QUEUED
    progress: float = 0.0
    stage: str = "queued"
    top_k: int | None = None
    result: dict | None = None
    error: str | None = None

    def as_dict(self) -> dict:
        return {"job_id": self.job_id, "status": self.status,
                "progress": self.progress, "stage": self.stage,
                "result": self.result, "error": self.error}


class JobRegistry:
    """Thread-safe job table with LRU eviction of finished jobs."""

    def __init__(self, workers_per_job: int = 2):
        self._jobs: OrderedDict[str, ExplainJob] = OrderedDict()
        self._lock = threading.Lock()
        self._executor = ThreadPoolExecutor(max_workers=2)
        self.workers_per_job = workers_per_job

    def get(self, job_id: str) -> ExplainJob | None:
        with self._lock:
            return self._jobs.get(job_id)

    def submit(self, model: MlpModel, store: EmbeddingStore, text: str,
               top_k: int | None) -> ExplainJob:
        job = ExplainJob(job_id=uuid.uuid4().hex, top_k=top_k)
        with self._lock:
            self._jobs[job.job_id] = job
        self._executor.submit(self._run, job, model, store, text)
        return job

    def _set(self, job: ExplainJob, **updates):
        with self._lock:
            for key, value in updates.items():
                setattr(job, key, value)

    def _evict_finished(self):
        with self._lock:
            finished = [jid for jid, job in self._jobs.items()
                        if job.status in (DONE, FAILED)]
            for jid in finished[:max(0, len(finished) - MAX_FINISHED_JOBS)]:
                del self._jobs[jid]

    def _run(self, job: ExplainJob, model: MlpModel, store: EmbeddingStore,
             text: str):
        try:
            self._set(job, status=RUNNING, stage="building-graph")
            doc = analyze(text, model, store)
            self._set(job, stage="solving-ppr")
            total = doc.n_nodes
            done_count = [0]
            count_lock = threading.Lock()

            def on_word(_node):
                # Increment and publish under one lock so concurrent word
                # workers cannot write progress fractions out of order.
                with count_lock:
                    done_count[0] += 1
                    self._set(job, progress=done_count[0] / total,
                              stage="masking")

            report = explain_all(doc, model, workers=self.workers_per_job,
                                 progress_callback=on_word)
            self._set(job, stage="ranking")
            entries = report.entries
            if job.top_k is not None and job.top_k >= 0:
                entries = entries[:job.top_k]
            result = {
                "p_real": doc.base_prediction.p_real,
                "p_fake": doc.base_prediction.p_fake,
                "n_nodes": doc.graph.n_nodes,
                "n_edges": doc.graph.n_edges,
                "reference_class": report.reference_class,
                "entries": [e.as_dict() for e in entries],
            }
            self._set(job, status=DONE, progress=1.0, stage="done",
                      result=result)
        except NewsgraphError as exc:
            self._set(job, status=FAILED, stage="failed", error=str(exc))
        except Exception as exc:  # keep the job table consistent
            self._set(job, status=FAILED, stage="failed",
                      error=f"internal error: {exc}")
        finally:
            self._evict_finished()


class PredictBody(BaseModel):
    text: str


class ExplainBody(BaseModel):
    text: str
    top_k: int | None = None


class WhatIfBody(BaseModel):
    text: str
    masked_words: list[str]


def _prediction_dict(pred: Prediction) -> dict:
    return {"p_real": pred.p_real, "p_fake": pred.p_fake}


def create_app(model: MlpModel | None = None,
               store: EmbeddingStore | None = None,
               ui_dir: str | None = None,
               explain_workers: int = 2) -> FastAPI:
    app = FastAPI(title="newsgraph", docs_url=None, redoc_url=None)
    app.state.model = model
    app.state.store = store
    app.state.jobs = JobRegistry(workers_per_job=explain_workers)

    @app.exception_handler(RequestValidationError)
    def bad_body(_request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"detail": "malformed request body"})

    def require_model() -> tuple[MlpModel, EmbeddingStore] | JSONResponse:
        if app.state.model is None or app.state.store is None:
            return JSONResponse(status_code=503,
                                content={"detail": "no model loaded"})
        return app.state.model, app.state.store

    def analyzed(text: str):
        return analyze(text, app.state.model, app.state.store)

    @app.get("/api/health")
    def health():
        loaded = app.state.model is not None
        return {"status": "ok", "model_loaded": loaded,
                "format_version": MODEL_FORMAT_VERSION if loaded else None}

    @app.post("/api/predict")
    def predict_endpoint(body: PredictBody):
        ctx = require_model()
        if isinstance(ctx, JSONResponse):
            return ctx
        try:
            doc = analyzed(body.text)
        except EmptyDocument:
            return JSONResponse(status_code=400,
                                content={"detail": "text has no words"})
        return {"p_real": doc.base_prediction.p_real,
                "p_fake": doc.base_prediction.p_fake,
                "n_nodes": doc.graph.n_nodes,
                "n_edges": doc.graph.n_edges}

    @app.post("/api/explain", status_code=202)
    def explain_endpoint(body: ExplainBody):
        ctx = require_model()
        if isinstance(ctx, JSONResponse):
            return ctx
        try:
            # Validate the text up front so bad queries fail fast with 400
            # instead of surfacing later as a failed job.
            tokenize(body.text)
        except EmptyDocument:
            return JSONResponse(status_code=400,
                                content={"detail": "text has no words"})
        model, store = ctx
        job = app.state.jobs.submit(model, store, body.text, body.top_k)
        return {"job_id": job.job_id}

    @app.get("/api/explain/{job_id}")
    def explain_status(job_id: str):
        job = app.state.jobs.get(job_id)
        if job is None:
            return JSONResponse(status_code=404,
                                content={"detail": f"unknown job {job_id}"})
        return job.as_dict()

    @app.post("/api/whatif")
    def whatif_endpoint(body: WhatIfBody):
        ctx = require_model()
        if isinstance(ctx, JSONResponse):
            return ctx
        model, _store = ctx
        try:
            doc = analyzed(body.text)
            masked = what_if(doc, model, set(body.masked_words))
        except EmptyDocument:
            return JSONResponse(status_code=400,
                                content={"detail": "text has no words"})
        except UnknownWord as exc:
            return JSONResponse(
                status_code=422,
                content={"detail": str(exc), "unknown_words": list(exc.words)})
        base = doc.base_prediction
        ref = base.argmax
        return {"base": _prediction_dict(base),
                "masked": _prediction_dict(masked),
                "delta_reference_class": masked[ref] - base[ref]}

    if ui_dir:
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
