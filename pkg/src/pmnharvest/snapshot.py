"""Immutable yearly thesaurus snapshots: loading, validation, and indexing.

A snapshot is one year's frozen view of the thesaurus (descriptors, SCRs,
concepts, terms), read from a normalized JSON file. All structures are
immutable after construction and safe to share across concurrent readers.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

DESCRIPTOR_UI_RE = re.compile(r"^D(?:\d{6}|\d{9})$")
SCR_UI_RE = re.compile(r"^C(?:\d{6}|\d{9})$")

YEAR_MIN = 1960
YEAR_MAX = 2100


class SnapshotError(Exception):
    """Base class for snapshot loading and validation failures."""


class FileUnreadable(SnapshotError):
    pass


class MalformedJson(SnapshotError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class InvariantViolation(SnapshotError):
    def __init__(self, entity_ui: str, rule: str):
        super().__init__(f"{entity_ui}: {rule}")
        self.entity_ui = entity_ui
        self.rule = rule


class DuplicateConceptOwner(SnapshotError):
    def __init__(self, concept_ui: str):
        super().__init__(f"concept {concept_ui} owned by more than one record")
        self.concept_ui = concept_ui


def normalize_term(term: str) -> str:
    """Case-fold, collapse internal whitespace runs to one space, trim."""
    return " ".join(term.casefold().split())


@dataclass(frozen=True)
class ConceptRecord:
    ui: str
    preferred: bool
    terms: tuple[str, ...]

    @property
    def preferred_term(self) -> str:
        return self.terms[0]


@dataclass(frozen=True)
class DescriptorRecord:
    ui: str
    name: str
    year_introduced: int
    public_mesh_note: str | None
    concepts: tuple[ConceptRecord, ...]

    @property
    def preferred_concept(self) -> ConceptRecord:
        return next(c for c in self.concepts if c.preferred)


@dataclass(frozen=True)
class ScrRecord:
    ui: str
    name: str
    concepts: tuple[ConceptRecord, ...]
    mapped_to: tuple[str, ...]


@dataclass(frozen=True)
class Snapshot:
    year: int
    descriptors: tuple[DescriptorRecord, ...]
    scrs: tuple[ScrRecord, ...]


@dataclass(frozen=True)
class SnapshotIndex:
    """Read-only lookup structures over one snapshot."""

    year: int
    term_to_scrs: Mapping[str, frozenset[str]]
    concept_to_scr: Mapping[str, str]
    concept_to_descriptor: Mapping[str, str]
    name_to_descriptor: Mapping[str, str]
    all_scr_terms: tuple[tuple[str, str], ...]  # (normalized term, SCR UI)
    subordinate_concepts: frozenset[str] = field(default_factory=frozenset)
    scr_by_ui: Mapping[str, ScrRecord] = field(default_factory=dict)
    descriptor_by_ui: Mapping[str, DescriptorRecord] = field(default_factory=dict)


def _require(obj: dict, key: str, owner: str):
    if key not in obj:
        raise InvariantViolation(owner, f"missing required key '{key}'")
    return obj[key]


def _concept_from_dict(obj: dict, owner: str) -> ConceptRecord:
    ui = _require(obj, "ui", owner)
    preferred = _require(obj, "preferred", owner)
    terms = _require(obj, "terms", owner)
    if not isinstance(terms, list) or not terms:
        raise InvariantViolation(str(ui), "concept terms must be non-empty")
    return ConceptRecord(ui=str(ui), preferred=bool(preferred), terms=tuple(str(t) for t in terms))


def _check_one_preferred(ui: str, concepts: tuple[ConceptRecord, ...]) -> None:
    if sum(1 for c in concepts if c.preferred) != 1:
        raise InvariantViolation(ui, "exactly one concept must be preferred")


def _descriptor_from_dict(obj: dict) -> DescriptorRecord:
    ui = str(_require(obj, "ui", "<descriptor>"))
    if not DESCRIPTOR_UI_RE.match(ui):
        raise InvariantViolation(ui, "descriptor UI must be 'D' + 6 or 9 digits")
    name = str(_require(obj, "name", ui))
    if not name:
        raise InvariantViolation(ui, "descriptor name must be non-empty")
    year = int(_require(obj, "year_introduced", ui))
    pmn = _require(obj, "public_mesh_note", ui)
    concepts = tuple(_concept_from_dict(c, ui) for c in _require(obj, "concepts", ui))
    _check_one_preferred(ui, concepts)
    return DescriptorRecord(
        ui=ui,
        name=name,
        year_introduced=year,
        public_mesh_note=None if pmn is None else str(pmn),
        concepts=concepts,
    )


def _scr_from_dict(obj: dict) -> ScrRecord:
    ui = str(_require(obj, "ui", "<scr>"))
    if not SCR_UI_RE.match(ui):
        raise InvariantViolation(ui, "SCR UI must be 'C' + 6 or 9 digits")
    name = str(_require(obj, "name", ui))
    concepts = tuple(_concept_from_dict(c, ui) for c in _require(obj, "concepts", ui))
    _check_one_preferred(ui, concepts)
    mapped_to = tuple(str(d) for d in _require(obj, "mapped_to", ui))
    for dui in mapped_to:
        if not DESCRIPTOR_UI_RE.match(dui):
            raise InvariantViolation(ui, f"mapped_to entry {dui!r} is not a descriptor UI")
    return ScrRecord(ui=ui, name=name, concepts=concepts, mapped_to=mapped_to)


def snapshot_from_dict(doc: dict) -> Snapshot:
    year = int(_require(doc, "year", "<snapshot>"))
    if not YEAR_MIN <= year <= YEAR_MAX:
        raise InvariantViolation(str(year), f"snapshot year must be in [{YEAR_MIN}, {YEAR_MAX}]")
    descriptors = tuple(_descriptor_from_dict(d) for d in _require(doc, "descriptors", "<snapshot>"))
    scrs = tuple(_scr_from_dict(s) for s in _require(doc, "scrs", "<snapshot>"))
    snapshot = Snapshot(year=year, descriptors=descriptors, scrs=scrs)
    validate_snapshot(snapshot)
    return snapshot


def snapshot_to_dict(snapshot: Snapshot) -> dict:
    """Inverse of snapshot_from_dict; round-trips to an equal Snapshot."""
    return {
        "year": snapshot.year,
        "descriptors": [
            {
                "ui": d.ui,
                "name": d.name,
                "year_introduced": d.year_introduced,
                "public_mesh_note": d.public_mesh_note,
                "concepts": [
                    {"ui": c.ui, "preferred": c.preferred, "terms": list(c.terms)}
                    for c in d.concepts
                ],
            }
            for d in snapshot.descriptors
        ],
        "scrs": [
            {
                "ui": s.ui,
                "name": s.name,
                "concepts": [
                    {"ui": c.ui, "preferred": c.preferred, "terms": list(c.terms)}
                    for c in s.concepts
                ],
                "mapped_to": list(s.mapped_to),
            }
            for s in snapshot.scrs
        ],
    }


def validate_snapshot(snapshot: Snapshot) -> None:
    seen: set[str] = set()
    for rec in (*snapshot.descriptors, *snapshot.scrs):
        if rec.ui in seen:
            raise InvariantViolation(rec.ui, "unique-ui")
        seen.add(rec.ui)


def load_snapshot(path: str | Path) -> Snapshot:
    """Load and fully validate one snapshot JSON file.

    Unknown JSON keys are ignored; missing required keys and invariant
    violations reject the whole file.
    """
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileUnreadable(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MalformedJson(f"{path}: {exc}", position=exc.pos) from exc
    if not isinstance(doc, dict):
        raise MalformedJson(f"{path}: top-level value must be an object")
    return snapshot_from_dict(doc)


def build_index(snapshot: Snapshot) -> SnapshotIndex:
    """Build deterministic lookup maps over one snapshot.

    Raises DuplicateConceptOwner when a concept UI appears in two SCRs or
    two descriptors of the same snapshot.
    """
    term_to_scrs: dict[str, set[str]] = {}
    concept_to_scr: dict[str, str] = {}
    concept_to_descriptor: dict[str, str] = {}
    name_to_descriptor: dict[str, str] = {}
    subordinate: set[str] = set()
    pairs: set[tuple[str, str]] = set()

    for d in snapshot.descriptors:
        for c in d.concepts:
            owner = concept_to_descriptor.get(c.ui)
            if owner is not None and owner != d.ui:
                raise DuplicateConceptOwner(c.ui)
            concept_to_descriptor[c.ui] = d.ui
            if not c.preferred:
                subordinate.add(c.ui)
        # First-seen wins on (unexpected) duplicate normalized names.
        name_to_descriptor.setdefault(normalize_term(d.name), d.ui)

    for s in snapshot.scrs:
        for c in s.concepts:
            owner = concept_to_scr.get(c.ui)
            if owner is not None and owner != s.ui:
                raise DuplicateConceptOwner(c.ui)
            concept_to_scr[c.ui] = s.ui
            for term in c.terms:
                norm = normalize_term(term)
                term_to_scrs.setdefault(norm, set()).add(s.ui)
                pairs.add((norm, s.ui))

    return SnapshotIndex(
        year=snapshot.year,
        term_to_scrs={t: frozenset(u) for t, u in term_to_scrs.items()},
        concept_to_scr=concept_to_scr,
        concept_to_descriptor=concept_to_descriptor,
        name_to_descriptor=name_to_descriptor,
        all_scr_terms=tuple(sorted(pairs)),
        subordinate_concepts=frozenset(subordinate),
        scr_by_ui={s.ui: s for s in snapshot.scrs},
        descriptor_by_ui={d.ui: d for d in snapshot.descriptors},
    )


def lookup_scrs_by_term(index: SnapshotIndex, term: str) -> frozenset[str]:
    """Set of SCR UIs carrying the normalized form of `term` (maybe empty)."""
    return index.term_to_scrs.get(normalize_term(term), frozenset())


def lookup_descriptor_by_name(index: SnapshotIndex, name: str) -> str | None:
    """Descriptor UI whose normalized preferred name equals `name`, if any."""
    return index.name_to_descriptor.get(normalize_term(name))


def load_snapshots(paths: Iterable[str | Path]) -> dict[int, tuple[Snapshot, SnapshotIndex]]:
    """Load several snapshot files into a year-keyed map with indices."""
    out: dict[int, tuple[Snapshot, SnapshotIndex]] = {}
    for path in paths:
        snap = load_snapshot(path)
        if snap.year in out:
            raise InvariantViolation(str(snap.year), "duplicate snapshot year")
        out[snap.year] = (snap, build_index(snap))
    return out
