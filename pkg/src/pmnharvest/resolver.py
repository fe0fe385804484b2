"""Resolution cascade linking each new descriptor to its predecessor SCR.

Stage order per descriptor: category-1 detection, keyword pattern check,
concept-identifier comparison, exact term/name lookup over the previous
year's snapshot, then ranked candidate generation (parts matching and
edit distance) for human review.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Mapping, Sequence

from pmnharvest.matching import levenshtein, tokenize_parts
from pmnharvest.pmn import (
    HostMention,
    IndexedClause,
    ParseWarning,
    PmnParse,
    YearRange,
    matches_indexed_pattern,
    parse_pmn,
)
from pmnharvest.snapshot import (
    DescriptorRecord,
    Snapshot,
    SnapshotIndex,
    lookup_scrs_by_term,
    normalize_term,
)


class ResolverError(Exception):
    pass


class AmbiguousConceptMatch(ResolverError):
    def __init__(self, scr_uis: frozenset[str]):
        super().__init__(f"concept identifiers match several SCRs: {sorted(scr_uis)}")
        self.scr_uis = scr_uis


class AmbiguousTermMatch(ResolverError):
    def __init__(self, scr_uis: frozenset[str]):
        super().__init__(f"term matches several SCRs: {sorted(scr_uis)}")
        self.scr_uis = scr_uis


class MissingSnapshot(ResolverError):
    def __init__(self, year: int):
        super().__init__(f"no snapshot loaded for year {year}")
        self.year = year


class ResolutionMethod(str, Enum):
    PREFERRED_CONCEPT = "PreferredConcept"
    PMN_TERM_EXACT = "PmnTermExact"
    DESCRIPTOR_NAME_EXACT = "DescriptorNameExact"
    MANUAL_SELECTION = "ManualSelection"
    UNRESOLVED = "Unresolved"


class CandidateSource(str, Enum):
    PARTIAL_EXACT = "PartialExact"
    PARTIAL_SUPERSET = "PartialSuperset"
    EDIT_DISTANCE = "EditDistance"


class QueryKind(str, Enum):
    PMN_X = "PmnX"
    DESCRIPTOR_NAME = "DescriptorName"


@dataclass(frozen=True)
class Resolution:
    descriptor_ui: str
    scr_ui: str | None
    method: ResolutionMethod
    also_matched_by_name: bool = False


@dataclass(frozen=True)
class Candidate:
    scr_ui: str
    matched_term: str
    source: CandidateSource
    query: QueryKind
    extra_parts: int | None = None
    distance: int | None = None


@dataclass(frozen=True)
class DescriptorOutcome:
    descriptor_ui: str
    descriptor_name: str
    year_introduced: int
    public_mesh_note: str | None
    category1: bool
    pattern_matched: bool
    parse: PmnParse | None
    resolution: Resolution
    candidates: tuple[Candidate, ...] = ()
    pmn_hosts: tuple[HostMention, ...] = ()
    stage_warnings: tuple[str, ...] = ()
    reviewed: bool = False


@dataclass(frozen=True)
class AnalysisResult:
    range: tuple[int, int]
    outcomes: tuple[DescriptorOutcome, ...]


def detect_category1(descriptor: DescriptorRecord, previous: SnapshotIndex) -> bool:
    """True iff the preferred concept was a subordinate concept of some
    descriptor in the previous snapshot."""
    return descriptor.preferred_concept.ui in previous.subordinate_concepts


def resolve_by_concept(
    descriptor: DescriptorRecord, previous: SnapshotIndex
) -> Resolution | None:
    """Match the descriptor's concept identifiers against SCR-owned ones.

    Matches through the preferred concept take priority over matches
    through subordinate concepts; two distinct SCRs at the same tier
    raise AmbiguousConceptMatch.
    """
    tiers = (
        [c for c in descriptor.concepts if c.preferred],
        [c for c in descriptor.concepts if not c.preferred],
    )
    for tier in tiers:
        hits = {previous.concept_to_scr[c.ui] for c in tier if c.ui in previous.concept_to_scr}
        if len(hits) > 1:
            raise AmbiguousConceptMatch(frozenset(hits))
        if hits:
            return Resolution(
                descriptor_ui=descriptor.ui,
                scr_ui=next(iter(hits)),
                method=ResolutionMethod.PREFERRED_CONCEPT,
            )
    return None


def _exact_term_lookup(
    descriptor_ui: str, query: str, previous: SnapshotIndex, method: ResolutionMethod
) -> Resolution | None:
    hits = lookup_scrs_by_term(previous, query)
    if not hits:
        return None
    if len(hits) > 1:
        raise AmbiguousTermMatch(hits)
    return Resolution(descriptor_ui=descriptor_ui, scr_ui=next(iter(hits)), method=method)


def resolve_by_term(
    x_text: str, previous: SnapshotIndex, descriptor_ui: str = ""
) -> Resolution | None:
    """Exact lookup of the PMN-extracted X among all SCR terms."""
    if not x_text:
        raise ValueError("x_text must be non-empty; route empty X to resolve_by_name")
    return _exact_term_lookup(descriptor_ui, x_text, previous, ResolutionMethod.PMN_TERM_EXACT)


def resolve_by_name(
    descriptor: DescriptorRecord, previous: SnapshotIndex
) -> Resolution | None:
    """Exact lookup of the current descriptor name among all SCR terms."""
    return _exact_term_lookup(
        descriptor.ui, descriptor.name, previous, ResolutionMethod.DESCRIPTOR_NAME_EXACT
    )


def partial_match_candidates(
    queries: Sequence[tuple[QueryKind, str]], previous: SnapshotIndex
) -> list[Candidate]:
    """SCR terms whose part multiset equals or contains each query's parts.

    Equal multisets rank as PartialExact; proper containment ranks as
    PartialSuperset ordered by how many extra parts the term carries.
    One candidate per SCR, keeping the best evidence.
    """
    best: dict[str, Candidate] = {}
    for kind, query in queries:
        query_parts = tokenize_parts(query)
        if not query_parts:
            continue
        query_size = sum(query_parts.values())
        for term, scr_ui in previous.all_scr_terms:
            term_parts = tokenize_parts(term)
            if term_parts == query_parts:
                candidate = Candidate(
                    scr_ui=scr_ui,
                    matched_term=term,
                    source=CandidateSource.PARTIAL_EXACT,
                    query=kind,
                )
            elif query_parts <= term_parts:
                candidate = Candidate(
                    scr_ui=scr_ui,
                    matched_term=term,
                    source=CandidateSource.PARTIAL_SUPERSET,
                    query=kind,
                    extra_parts=sum(term_parts.values()) - query_size,
                )
            else:
                continue
            current = best.get(scr_ui)
            if current is None or _partial_rank(candidate) < _partial_rank(current):
                best[scr_ui] = candidate
    return sorted(best.values(), key=lambda c: (*_partial_rank(c), c.scr_ui))


def _partial_rank(candidate: Candidate) -> tuple[int, int]:
    exact = 0 if candidate.source is CandidateSource.PARTIAL_EXACT else 1
    return (exact, candidate.extra_parts or 0)


def edit_distance_candidates(
    queries: Sequence[tuple[QueryKind, str]], previous: SnapshotIndex, k: int = 5
) -> list[Candidate]:
    """The k SCRs whose closest term has the smallest edit distance (> 0)
    to any query, ties broken by SCR UI."""
    if k < 1:
        raise ValueError("k must be >= 1")
    best: dict[str, Candidate] = {}
    for kind, query in queries:
        for term, scr_ui in previous.all_scr_terms:
            distance = levenshtein(query, term)
            if distance == 0:
                continue  # exact territory, handled by the exact stages
            current = best.get(scr_ui)
            if current is None or distance < current.distance:  # type: ignore[operator]
                best[scr_ui] = Candidate(
                    scr_ui=scr_ui,
                    matched_term=term,
                    source=CandidateSource.EDIT_DISTANCE,
                    query=kind,
                    distance=distance,
                )
    ranked = sorted(best.values(), key=lambda c: (c.distance, c.scr_ui))
    return ranked[:k]


def _build_queries(x_text: str | None, name: str) -> list[tuple[QueryKind, str]]:
    queries: list[tuple[QueryKind, str]] = []
    if x_text:
        queries.append((QueryKind.PMN_X, x_text))
    queries.append((QueryKind.DESCRIPTOR_NAME, name))
    return queries


def _unresolved(descriptor_ui: str) -> Resolution:
    return Resolution(descriptor_ui=descriptor_ui, scr_ui=None, method=ResolutionMethod.UNRESOLVED)


def analyze_descriptor(
    descriptor: DescriptorRecord, previous: SnapshotIndex, k: int = 5
) -> DescriptorOutcome:
    """Run the full cascade for one descriptor against its previous snapshot."""
    base = dict(
        descriptor_ui=descriptor.ui,
        descriptor_name=descriptor.name,
        year_introduced=descriptor.year_introduced,
        public_mesh_note=descriptor.public_mesh_note,
    )
    if detect_category1(descriptor, previous):
        return DescriptorOutcome(
            category1=True,
            pattern_matched=False,
            parse=None,
            resolution=_unresolved(descriptor.ui),
            **base,
        )

    pattern_matched = matches_indexed_pattern(descriptor.public_mesh_note)
    parse = parse_pmn(descriptor.public_mesh_note) if pattern_matched else None
    pmn_hosts: tuple[HostMention, ...] = ()
    if parse is not None:
        pmn_hosts = tuple(h for clause in parse.clauses for h in clause.hosts)
    warnings: list[str] = []

    resolution: Resolution | None = None
    try:
        resolution = resolve_by_concept(descriptor, previous)
    except AmbiguousConceptMatch as exc:
        warnings.append(str(exc))

    x_text = ""
    if parse is not None and parse.clauses:
        x_text = parse.clauses[0].x_text

    if resolution is None and pattern_matched:
        if x_text:
            try:
                resolution = resolve_by_term(x_text, previous, descriptor.ui)
            except AmbiguousTermMatch as exc:
                warnings.append(str(exc))
        if resolution is not None:
            # Dual-confirmation check against the descriptor name route.
            try:
                by_name = resolve_by_name(descriptor, previous)
            except AmbiguousTermMatch:
                by_name = None
            if by_name is not None and by_name.scr_ui == resolution.scr_ui:
                resolution = replace(resolution, also_matched_by_name=True)
        else:
            try:
                resolution = resolve_by_name(descriptor, previous)
            except AmbiguousTermMatch as exc:
                warnings.append(str(exc))

    candidates: tuple[Candidate, ...] = ()
    if resolution is None and pattern_matched:
        queries = _build_queries(x_text, descriptor.name)
        partial = partial_match_candidates(queries, previous)
        fuzzy = edit_distance_candidates(queries, previous, k)
        candidates = tuple(partial) + tuple(fuzzy)

    return DescriptorOutcome(
        category1=False,
        pattern_matched=pattern_matched,
        parse=parse,
        resolution=resolution or _unresolved(descriptor.ui),
        candidates=candidates,
        pmn_hosts=pmn_hosts,
        stage_warnings=tuple(warnings),
        **base,
    )


def run_pipeline(
    snapshots: Mapping[int, tuple[Snapshot, SnapshotIndex]],
    year_range: tuple[int, int],
    k: int = 5,
) -> AnalysisResult:
    """Analyze every descriptor introduced within year_range.

    The end-year snapshot provides the descriptor universe; each
    descriptor resolves against the snapshot of the year before its
    introduction. Output ordering is by descriptor UI, so results are
    independent of input ordering.
    """
    start, end = year_range
    if end not in snapshots:
        raise MissingSnapshot(end)
    universe, _ = snapshots[end]

    outcomes: list[DescriptorOutcome] = []
    for descriptor in sorted(universe.descriptors, key=lambda d: d.ui):
        if not start <= descriptor.year_introduced <= end:
            continue
        previous_year = descriptor.year_introduced - 1
        if previous_year not in snapshots:
            raise MissingSnapshot(previous_year)
        _, previous = snapshots[previous_year]
        outcomes.append(analyze_descriptor(descriptor, previous, k))

    result = AnalysisResult(range=(start, end), outcomes=tuple(outcomes))
    check_conservation(result)
    return result


def check_conservation(analysis: AnalysisResult) -> None:
    """Assert the set-arithmetic identities between pipeline stages."""
    outcomes = analysis.outcomes
    cat1 = [o for o in outcomes if o.category1]
    non_cat1 = [o for o in outcomes if not o.category1]
    assert len(outcomes) == len(cat1) + len(non_cat1)

    pattern = [o for o in non_cat1 if o.pattern_matched]
    non_pattern = [o for o in non_cat1 if not o.pattern_matched]
    assert len(non_cat1) == len(pattern) + len(non_pattern)

    def count(pool, method):
        return sum(1 for o in pool if o.resolution.method is method)

    concept_in_pattern = count(pattern, ResolutionMethod.PREFERRED_CONCEPT)
    remainder = len(pattern) - concept_in_pattern
    term = count(pattern, ResolutionMethod.PMN_TERM_EXACT)
    name = count(pattern, ResolutionMethod.DESCRIPTOR_NAME_EXACT)
    manual = count(pattern, ResolutionMethod.MANUAL_SELECTION)
    pending = count(pattern, ResolutionMethod.UNRESOLVED)
    assert remainder == term + name + manual + pending

    # PMN-route methods only ever occur inside the pattern-matched set.
    for o in non_pattern + cat1:
        assert o.resolution.method in (
            ResolutionMethod.PREFERRED_CONCEPT,
            ResolutionMethod.UNRESOLVED,
        ) or o.category1
    for o in outcomes:
        if o.resolution.also_matched_by_name:
            assert o.resolution.method is ResolutionMethod.PMN_TERM_EXACT
        if o.resolution.method is ResolutionMethod.PREFERRED_CONCEPT:
            assert not o.candidates


# --- JSON serialization (the contract consumed by review and reporting) ---


def _year_range_to_dict(period: YearRange | None):
    if period is None:
        return None
    return {"start": period.start, "end": period.end}


def _host_to_dict(host: HostMention) -> dict:
    return {"name": host.name, "period": _year_range_to_dict(host.period)}


def _parse_to_dict(parse: PmnParse | None):
    if parse is None:
        return None
    return {
        "intro_year": parse.intro_year,
        "clauses": [
            {"x_text": c.x_text, "hosts": [_host_to_dict(h) for h in c.hosts]}
            for c in parse.clauses
        ],
        "warnings": [w.value for w in parse.warnings],
    }


def candidate_to_dict(candidate: Candidate) -> dict:
    return {
        "scr_ui": candidate.scr_ui,
        "matched_term": candidate.matched_term,
        "source": candidate.source.value,
        "query": candidate.query.value,
        "extra_parts": candidate.extra_parts,
        "distance": candidate.distance,
    }


def outcome_to_dict(outcome: DescriptorOutcome) -> dict:
    return {
        "descriptor_ui": outcome.descriptor_ui,
        "descriptor_name": outcome.descriptor_name,
        "year_introduced": outcome.year_introduced,
        "public_mesh_note": outcome.public_mesh_note,
        "category1": outcome.category1,
        "pattern_matched": outcome.pattern_matched,
        "parse": _parse_to_dict(outcome.parse),
        "resolution": {
            "descriptor_ui": outcome.resolution.descriptor_ui,
            "scr_ui": outcome.resolution.scr_ui,
            "method": outcome.resolution.method.value,
            "also_matched_by_name": outcome.resolution.also_matched_by_name,
        },
        "candidates": [candidate_to_dict(c) for c in outcome.candidates],
        "pmn_hosts": [_host_to_dict(h) for h in outcome.pmn_hosts],
        "stage_warnings": list(outcome.stage_warnings),
        "reviewed": outcome.reviewed,
    }


def analysis_to_dict(analysis: AnalysisResult) -> dict:
    return {
        "range": list(analysis.range),
        "outcomes": [outcome_to_dict(o) for o in analysis.outcomes],
    }


def _year_range_from_dict(obj) -> YearRange | None:
    if obj is None:
        return None
    return YearRange(start=obj["start"], end=obj["end"])


def _host_from_dict(obj) -> HostMention:
    return HostMention(name=obj["name"], period=_year_range_from_dict(obj["period"]))


def _parse_from_dict(obj) -> PmnParse | None:
    if obj is None:
        return None
    return PmnParse(
        intro_year=obj["intro_year"],
        clauses=tuple(
            IndexedClause(
                x_text=c["x_text"], hosts=tuple(_host_from_dict(h) for h in c["hosts"])
            )
            for c in obj["clauses"]
        ),
        warnings=tuple(ParseWarning(w) for w in obj["warnings"]),
    )


def candidate_from_dict(obj) -> Candidate:
    return Candidate(
        scr_ui=obj["scr_ui"],
        matched_term=obj["matched_term"],
        source=CandidateSource(obj["source"]),
        query=QueryKind(obj["query"]),
        extra_parts=obj["extra_parts"],
        distance=obj["distance"],
    )


def outcome_from_dict(obj) -> DescriptorOutcome:
    res = obj["resolution"]
    return DescriptorOutcome(
        descriptor_ui=obj["descriptor_ui"],
        descriptor_name=obj["descriptor_name"],
        year_introduced=obj["year_introduced"],
        public_mesh_note=obj["public_mesh_note"],
        category1=obj["category1"],
        pattern_matched=obj["pattern_matched"],
        parse=_parse_from_dict(obj["parse"]),
        resolution=Resolution(
            descriptor_ui=res["descriptor_ui"],
            scr_ui=res["scr_ui"],
            method=ResolutionMethod(res["method"]),
            also_matched_by_name=res["also_matched_by_name"],
        ),
        candidates=tuple(candidate_from_dict(c) for c in obj["candidates"]),
        pmn_hosts=tuple(_host_from_dict(h) for h in obj["pmn_hosts"]),
        stage_warnings=tuple(obj["stage_warnings"]),
        reviewed=obj["reviewed"],
    )


def analysis_from_dict(doc: dict) -> AnalysisResult:
    return AnalysisResult(
        range=(doc["range"][0], doc["range"][1]),
        outcomes=tuple(outcome_from_dict(o) for o in doc["outcomes"]),
    )
