"""Summary table over pipeline outcomes and final provenance export."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from pmnharvest.resolver import AnalysisResult, ResolutionMethod
from pmnharvest.review import HostAgreement


class PathUnwritable(Exception):
    pass


ROW_LABELS = (
    "All new descriptors",
    "Category 1",
    "non Category 1",
    "PMnote not covered by the pattern",
    "PMnote covered by the pattern",
    "SCR found overall",
    "SCR found by pref Concept",
    "SCR found by pref Concept covered by the pattern",
    "PMnote covered by the pattern and not found by concept",
    "SCR found by term",
    "SCR found by descriptor Name",
    "SCR found by both term and name",
    "SCR found by exception",
    "SCR not found",
    "SCR found by other means than pref Concept",
)


@dataclass(frozen=True)
class SummaryTable:
    rows: tuple[tuple[str, int], ...]

    def as_dict(self) -> dict[str, int]:
        return dict(self.rows)

    def counts(self) -> tuple[int, ...]:
        return tuple(count for _, count in self.rows)


def summarize(analysis: AnalysisResult) -> SummaryTable:
    """Compute every summary row as a set cardinality over the outcomes."""
    outcomes = analysis.outcomes
    cat1 = [o for o in outcomes if o.category1]
    non_cat1 = [o for o in outcomes if not o.category1]
    pattern = [o for o in non_cat1 if o.pattern_matched]
    non_pattern = [o for o in non_cat1 if not o.pattern_matched]

    def by_method(pool, *methods):
        return sum(1 for o in pool if o.resolution.method in methods)

    concept = by_method(non_cat1, ResolutionMethod.PREFERRED_CONCEPT)
    concept_in_pattern = by_method(pattern, ResolutionMethod.PREFERRED_CONCEPT)
    term = by_method(non_cat1, ResolutionMethod.PMN_TERM_EXACT)
    name_only = by_method(non_cat1, ResolutionMethod.DESCRIPTOR_NAME_EXACT)
    both = sum(1 for o in non_cat1 if o.resolution.also_matched_by_name)
    manual = by_method(non_cat1, ResolutionMethod.MANUAL_SELECTION)
    # "SCR not found": pattern-amenable descriptors left without an SCR.
    not_found = by_method(pattern, ResolutionMethod.UNRESOLVED)
    found_overall = concept + term + name_only + manual

    counts = (
        len(outcomes),
        len(cat1),
        len(non_cat1),
        len(non_pattern),
        len(pattern),
        found_overall,
        concept,
        concept_in_pattern,
        len(pattern) - concept_in_pattern,
        term,
        name_only + both,
        both,
        manual,
        not_found,
        term + name_only + manual,
    )
    return SummaryTable(rows=tuple(zip(ROW_LABELS, counts)))


def format_summary(table: SummaryTable) -> str:
    """Aligned two-column text rendering."""
    width = max(len(label) for label, _ in table.rows)
    lines = [f"{label:<{width}}  {count:>6}" for label, count in table.rows]
    return "\n".join(lines)


def write_summary_tsv(table: SummaryTable, path: str | Path) -> None:
    body = "".join(f"{label}\t{count}\n" for label, count in table.rows)
    _write(path, "descriptor_set\tcount\n" + body)


def export_provenance(
    analysis: AnalysisResult,
    agreements: Sequence[HostAgreement],
    path: str | Path,
) -> None:
    """Write the final provenance dataset as TSV, one row per resolved
    descriptor, sorted by descriptor UI."""
    by_descriptor = {a.descriptor_ui: a for a in agreements}
    lines = ["descriptor_ui\tscr_ui\tmethod\tprevious_hosts\tpmn_hosts\tagreement"]
    for outcome in sorted(analysis.outcomes, key=lambda o: o.descriptor_ui):
        if outcome.resolution.scr_ui is None:
            continue
        agreement = by_descriptor.get(outcome.descriptor_ui)
        previous_hosts = "|".join(sorted(agreement.resolved_hosts)) if agreement else ""
        pmn_hosts = "|".join(sorted(agreement.pmn_hosts_mapped)) if agreement else ""
        klass = agreement.agreement_class.value if agreement else ""
        lines.append(
            "\t".join(
                (
                    outcome.descriptor_ui,
                    outcome.resolution.scr_ui,
                    outcome.resolution.method.value,
                    previous_hosts,
                    pmn_hosts,
                    klass,
                )
            )
        )
    _write(path, "\n".join(lines) + "\n")


def _write(path: str | Path, content: str) -> None:
    try:
        Path(path).write_text(content, encoding="utf-8")
    except OSError as exc:
        raise PathUnwritable(f"cannot write {path}: {exc}") from exc
