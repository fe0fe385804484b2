"""HTTP API for the review UI: queue, item detail, decisions, agreement."""

from __future__ import annotations

import json
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Mapping

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from pmnharvest.resolver import AnalysisResult, analysis_from_dict
from pmnharvest.review import (
    CandidateNotOffered,
    Decision,
    UnknownDescriptor,
    agreement_to_dict,
    apply_decisions,
    cross_validate,
    item_to_dict,
    record_decision,
    review_items,
    validate_decision,
)
from pmnharvest.snapshot import SnapshotIndex


class DecisionBody(BaseModel):
    descriptor_ui: str
    chosen_scr_ui: str | None = None
    reviewer: str
    timestamp: datetime | None = None


class ReviewState:
    """In-memory review state backed by the analysis file and decision log.

    The log is the source of truth: decisions are appended there first,
    then folded into the in-memory analysis. Writes are serialized.
    """

    def __init__(
        self,
        analysis_path: str | Path,
        decisions_path: str | Path,
        indices: Mapping[int, SnapshotIndex] | None = None,
    ):
        self._lock = threading.Lock()
        self.decisions_path = Path(decisions_path)
        self.indices = indices or {}
        doc = json.loads(Path(analysis_path).read_text(encoding="utf-8"))
        base = analysis_from_dict(doc)
        self.analysis: AnalysisResult = apply_decisions(base, self.decisions_path)

    def items(self):
        return review_items(self.analysis)

    def decide(self, decision: Decision) -> None:
        with self._lock:
            validate_decision(decision, self.items())
            record_decision(self.decisions_path, decision)
            self.analysis = apply_decisions(self.analysis, self.decisions_path)

    def agreements(self):
        if not self.indices:
            return []
        return cross_validate(self.analysis, self.indices)


def create_app(
    analysis_path: str | Path,
    decisions_path: str | Path,
    indices: Mapping[int, SnapshotIndex] | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    state = ReviewState(analysis_path, decisions_path, indices)
    app = FastAPI(title="pmnharvest review")
    app.state.review = state

    @app.get("/api/queue")
    def get_queue():
        return [item_to_dict(i) for i in state.items()]

    @app.get("/api/items/{descriptor_ui}")
    def get_item(descriptor_ui: str):
        for item in state.items():
            if item.descriptor_ui == descriptor_ui:
                return item_to_dict(item)
        raise HTTPException(status_code=404, detail=f"no review item for {descriptor_ui}")

    @app.post("/api/decisions", status_code=201)
    def post_decision(body: DecisionBody):
        decision = Decision(
            descriptor_ui=body.descriptor_ui,
            chosen_scr_ui=body.chosen_scr_ui,
            reviewer=body.reviewer,
            timestamp=body.timestamp or datetime.now(timezone.utc),
        )
        try:
            state.decide(decision)
        except UnknownDescriptor as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        except CandidateNotOffered as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return {"recorded": decision.descriptor_ui}

    @app.get("/api/agreement")
    def get_agreement():
        return [agreement_to_dict(a) for a in state.agreements()]

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
