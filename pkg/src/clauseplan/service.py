"""Stateless JSON HTTP service over an immutable (graph, index) pair."""

from __future__ import annotations

import random

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .generator import RetrievalIndex, retrieve_clause
from .keywords import TopicKeywordList, lemmatize
from .plangraph import DEFAULT_THRESHOLD, PlanGraph, WalkConfig, generate_plan

MAX_SEED = 2**63 - 1


class PlanRequest(BaseModel):
    topic: str
    custom_keywords: list[str] = Field(default_factory=list)
    n: int | None = Field(default=None, ge=1)
    thresholds: list[int] | None = None
    seed: int | None = None


class GenerateRequest(BaseModel):
    topic: str
    plan: list[str]
    k: int = Field(default=1, ge=1)
    topic_filter: bool = False
    seed: int | None = None


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message})


def create_app(graph: PlanGraph, index: RetrievalIndex,
               keyword_lists: dict[str, TopicKeywordList] | None = None) -> FastAPI:
    app = FastAPI(title="clauseplan")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    keyword_lists = keyword_lists or {}
    clause_counts: dict[str, int] = {}
    for doc in index.docs:
        clause_counts[doc["topic"]] = clause_counts.get(doc["topic"], 0) + 1

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return _error(400, str(exc.errors()))

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/topics")
    def topics(q: str = "", limit: int = 20):
        labels = [t for t in graph.topic_labels() if t.startswith(q.lower())]
        labels.sort(key=lambda t: (-clause_counts.get(t, 0), t))
        return {"topics": [
            {"label": t, "clause_count": clause_counts.get(t, 0)}
            for t in labels[:limit]
        ]}

    @app.get("/topics/{label}/keywords")
    def topic_keywords(label: str, limit: int = 20):
        if label not in keyword_lists:
            return _error(404, f"unknown topic: {label!r}")
        return {"keywords": [
            {"kw": kw, "rank": rank}
            for kw, _, rank in keyword_lists[label].keywords[:limit]
        ]}

    @app.post("/plan")
    def plan(req: PlanRequest):
        if not graph.has_topic(req.topic):
            return _error(404, f"unknown topic: {req.topic!r}")
        n = req.n if req.n is not None else int(graph.config.get("n", 10))
        thresholds = req.thresholds or [DEFAULT_THRESHOLD] * n
        if len(thresholds) != n or any(th < 1 for th in thresholds):
            return _error(400, f"need {n} thresholds, each >= 1")
        seed = req.seed if req.seed is not None else random.randrange(MAX_SEED)
        customs = [lemmatize(kw.lower()) for kw in req.custom_keywords]
        generated = generate_plan(graph, req.topic, customs,
                                  WalkConfig(n, tuple(thresholds), seed))
        return {
            "plan": [{"keyword": kw, "source": source, "score": score}
                     for kw, source, score in generated.stages],
            "truncated": generated.truncated,
            "seed": seed,
        }

    @app.post("/generate")
    def generate(req: GenerateRequest):
        seed = req.seed if req.seed is not None else random.randrange(MAX_SEED)
        result = retrieve_clause(index, req.topic, req.plan, k=req.k,
                                 topic_filter=req.topic_filter)
        return {
            "candidates": [{"text": text, "score": score, "clause_id": clause_id}
                           for clause_id, _, text, score in result.hits],
            "empty_query": result.empty_query,
            "seed": seed,
        }

    return app
