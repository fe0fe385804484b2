"""Adjudication queue, append-only decision log, and host cross-validation."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from pmnharvest.resolver import (
    AnalysisResult,
    Candidate,
    DescriptorOutcome,
    MissingSnapshot,
    Resolution,
    ResolutionMethod,
)
from pmnharvest.snapshot import SnapshotIndex, lookup_descriptor_by_name


class ReviewError(Exception):
    pass


class UnknownDescriptor(ReviewError):
    def __init__(self, descriptor_ui: str):
        super().__init__(f"no review item for descriptor {descriptor_ui}")
        self.descriptor_ui = descriptor_ui


class CandidateNotOffered(ReviewError):
    def __init__(self, descriptor_ui: str, scr_ui: str):
        super().__init__(f"{scr_ui} was not offered as a candidate for {descriptor_ui}")
        self.descriptor_ui = descriptor_ui
        self.scr_ui = scr_ui


class LogUnwritable(ReviewError):
    pass


class MalformedLogLine(ReviewError):
    def __init__(self, line_number: int, reason: str):
        super().__init__(f"decision log line {line_number}: {reason}")
        self.line_number = line_number


class ItemStatus(str, Enum):
    PENDING = "Pending"
    DECIDED = "Decided"


class AgreementClass(str, Enum):
    IDENTICAL = "Identical"
    SOME_DIFFERENT = "SomeDifferent"
    PMN_PLUS_ADDITIONAL = "PmnPlusAdditional"
    PMN_SUBSET_ONLY = "PmnSubsetOnly"


@dataclass(frozen=True)
class ReviewItem:
    descriptor_ui: str
    descriptor_name: str
    pmn_text: str | None
    x_text: str
    candidates: tuple[Candidate, ...]
    status: ItemStatus
    chosen_scr_ui: str | None = None


@dataclass(frozen=True)
class Decision:
    descriptor_ui: str
    chosen_scr_ui: str | None  # absent = "no valid candidate"
    reviewer: str
    timestamp: datetime


@dataclass(frozen=True)
class HostAgreement:
    descriptor_ui: str
    resolved_hosts: frozenset[str]
    pmn_host_names: tuple[str, ...]
    pmn_hosts_mapped: frozenset[str]
    unmapped_names: tuple[str, ...]
    agreement_class: AgreementClass
    warnings: tuple[str, ...] = ()


def _outcome_x_text(outcome: DescriptorOutcome) -> str:
    if outcome.parse is not None and outcome.parse.clauses:
        return outcome.parse.clauses[0].x_text
    return ""


def _item_from_outcome(outcome: DescriptorOutcome) -> ReviewItem:
    decided = outcome.reviewed or outcome.resolution.method is ResolutionMethod.MANUAL_SELECTION
    chosen = None
    if outcome.resolution.method is ResolutionMethod.MANUAL_SELECTION:
        chosen = outcome.resolution.scr_ui
    return ReviewItem(
        descriptor_ui=outcome.descriptor_ui,
        descriptor_name=outcome.descriptor_name,
        pmn_text=outcome.public_mesh_note,
        x_text=_outcome_x_text(outcome),
        candidates=outcome.candidates,
        status=ItemStatus.DECIDED if decided else ItemStatus.PENDING,
        chosen_scr_ui=chosen,
    )


def review_items(analysis: AnalysisResult) -> list[ReviewItem]:
    """Every adjudicable item (pending and decided), ordered by descriptor UI."""
    items = [
        _item_from_outcome(o)
        for o in analysis.outcomes
        if o.candidates
    ]
    return sorted(items, key=lambda i: i.descriptor_ui)


def build_review_queue(analysis: AnalysisResult) -> list[ReviewItem]:
    """Pending items only: unresolved outcomes with candidates, never decided."""
    return [i for i in review_items(analysis) if i.status is ItemStatus.PENDING]


def _decision_to_dict(decision: Decision) -> dict:
    ts = decision.timestamp.astimezone(timezone.utc)
    return {
        "descriptor_ui": decision.descriptor_ui,
        "chosen_scr_ui": decision.chosen_scr_ui,
        "reviewer": decision.reviewer,
        "timestamp": ts.isoformat().replace("+00:00", "Z"),
    }


def _decision_from_dict(obj: dict, line_number: int) -> Decision:
    try:
        raw_ts = obj["timestamp"]
        return Decision(
            descriptor_ui=obj["descriptor_ui"],
            chosen_scr_ui=obj["chosen_scr_ui"],
            reviewer=obj["reviewer"],
            timestamp=datetime.fromisoformat(raw_ts.replace("Z", "+00:00")),
        )
    except (KeyError, AttributeError, ValueError) as exc:
        raise MalformedLogLine(line_number, str(exc)) from exc


def validate_decision(decision: Decision, queue: Sequence[ReviewItem]) -> None:
    """Check a decision against the offered candidates before persisting it."""
    item = next((i for i in queue if i.descriptor_ui == decision.descriptor_ui), None)
    if item is None:
        raise UnknownDescriptor(decision.descriptor_ui)
    if decision.chosen_scr_ui is not None:
        offered = {c.scr_ui for c in item.candidates}
        if decision.chosen_scr_ui not in offered:
            raise CandidateNotOffered(decision.descriptor_ui, decision.chosen_scr_ui)


def record_decision(
    log_path: str | Path,
    decision: Decision,
    queue: Sequence[ReviewItem] | None = None,
) -> Decision:
    """Append one decision line to the JSONL log; never rewrites prior lines."""
    if queue is not None:
        validate_decision(decision, queue)
    line = json.dumps(_decision_to_dict(decision), sort_keys=True)
    try:
        with open(log_path, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")
    except OSError as exc:
        raise LogUnwritable(f"cannot append to {log_path}: {exc}") from exc
    return decision


def read_decisions(log_path: str | Path) -> list[Decision]:
    """Parse the full decision log; blank lines are ignored."""
    decisions: list[Decision] = []
    text = Path(log_path).read_text(encoding="utf-8")
    for number, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedLogLine(number, str(exc)) from exc
        if not isinstance(obj, dict):
            raise MalformedLogLine(number, "decision must be a JSON object")
        decisions.append(_decision_from_dict(obj, number))
    return decisions


def apply_decisions(analysis: AnalysisResult, log_path: str | Path) -> AnalysisResult:
    """Fold the decision log into the analysis; last decision per
    descriptor wins and applying the same log twice equals applying once."""
    path = Path(log_path)
    if not path.exists():
        return analysis
    last: dict[str, Decision] = {}
    for decision in read_decisions(path):
        last[decision.descriptor_ui] = decision

    outcomes: list[DescriptorOutcome] = []
    for outcome in analysis.outcomes:
        decision = last.get(outcome.descriptor_ui)
        if decision is None:
            outcomes.append(outcome)
            continue
        if decision.chosen_scr_ui is not None:
            offered = {c.scr_ui for c in outcome.candidates}
            if decision.chosen_scr_ui not in offered:
                raise CandidateNotOffered(outcome.descriptor_ui, decision.chosen_scr_ui)
            resolution = Resolution(
                descriptor_ui=outcome.descriptor_ui,
                scr_ui=decision.chosen_scr_ui,
                method=ResolutionMethod.MANUAL_SELECTION,
            )
        else:
            # Retraction / "no valid candidate": stays unresolved but decided.
            resolution = Resolution(
                descriptor_ui=outcome.descriptor_ui,
                scr_ui=None,
                method=ResolutionMethod.UNRESOLVED,
            )
        outcomes.append(replace(outcome, resolution=resolution, reviewed=True))
    return AnalysisResult(range=analysis.range, outcomes=tuple(outcomes))


def classify_host_agreement(
    resolved: frozenset[str] | set[str], pmn: frozenset[str] | set[str]
) -> AgreementClass:
    """Four-way comparison of SCR-derived vs PMN-reported previous hosts."""
    resolved = frozenset(resolved)
    pmn = frozenset(pmn)
    if resolved == pmn:
        return AgreementClass.IDENTICAL
    if not resolved or not pmn:
        # One side empty, the other not: no overlap to compare, so the
        # proper-subset classes do not apply.
        return AgreementClass.SOME_DIFFERENT
    if pmn < resolved:
        return AgreementClass.PMN_PLUS_ADDITIONAL
    if resolved < pmn:
        return AgreementClass.PMN_SUBSET_ONLY
    return AgreementClass.SOME_DIFFERENT


PMN_ROUTE_METHODS = frozenset(
    {
        ResolutionMethod.PMN_TERM_EXACT,
        ResolutionMethod.DESCRIPTOR_NAME_EXACT,
        ResolutionMethod.MANUAL_SELECTION,
    }
)


def cross_validate(
    analysis: AnalysisResult, indices: Mapping[int, SnapshotIndex]
) -> list[HostAgreement]:
    """Compare SCR-derived previous hosts with PMN-reported ones for every
    PMN-route resolution. Reports classes only; resolutions are never changed."""
    agreements: list[HostAgreement] = []
    for outcome in analysis.outcomes:
        if outcome.resolution.method not in PMN_ROUTE_METHODS:
            continue
        previous_year = outcome.year_introduced - 1
        index = indices.get(previous_year)
        if index is None:
            raise MissingSnapshot(previous_year)
        scr = index.scr_by_ui[outcome.resolution.scr_ui]
        resolved_hosts = frozenset(scr.mapped_to)

        names = [h.name for h in outcome.pmn_hosts if h.name]
        mapped: set[str] = set()
        unmapped: list[str] = []
        for name in names:
            dui = lookup_descriptor_by_name(index, name)
            if dui is None:
                unmapped.append(name)
            else:
                mapped.add(dui)

        warnings: tuple[str, ...] = ()
        if outcome.parse is not None:
            warnings = tuple(w.value for w in outcome.parse.warnings)
        agreements.append(
            HostAgreement(
                descriptor_ui=outcome.descriptor_ui,
                resolved_hosts=resolved_hosts,
                pmn_host_names=tuple(names),
                pmn_hosts_mapped=frozenset(mapped),
                unmapped_names=tuple(unmapped),
                agreement_class=classify_host_agreement(resolved_hosts, mapped),
                warnings=warnings,
            )
        )
    return agreements


def item_to_dict(item: ReviewItem) -> dict:
    from pmnharvest.resolver import candidate_to_dict

    return {
        "descriptor_ui": item.descriptor_ui,
        "descriptor_name": item.descriptor_name,
        "pmn_text": item.pmn_text,
        "x_text": item.x_text,
        "candidates": [candidate_to_dict(c) for c in item.candidates],
        "status": item.status.value,
        "chosen_scr_ui": item.chosen_scr_ui,
    }


def agreement_to_dict(agreement: HostAgreement) -> dict:
    return {
        "descriptor_ui": agreement.descriptor_ui,
        "resolved_hosts": sorted(agreement.resolved_hosts),
        "pmn_host_names": list(agreement.pmn_host_names),
        "pmn_hosts_mapped": sorted(agreement.pmn_hosts_mapped),
        "unmapped_names": list(agreement.unmapped_names),
        "class": agreement.agreement_class.value,
        "warnings": list(agreement.warnings),
    }
