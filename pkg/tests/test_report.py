from __future__ import annotations

import random
from datetime import datetime, timezone

import pytest

from pmnharvest.report import (
    ROW_LABELS,
    export_provenance,
    format_summary,
    summarize,
    write_summary_tsv,
)
from pmnharvest.resolver import AnalysisResult
from pmnharvest.review import Decision, apply_decisions, cross_validate, record_decision

# Hand-traced expectation for the bundled 15-descriptor fixture, staged
# through the cascade before implementation (see tests/data/*.json).
EXPECTED_BEFORE_REVIEW = (15, 1, 14, 3, 11, 8, 2, 1, 10, 3, 4, 1, 0, 4, 6)
EXPECTED_AFTER_REVIEW = (15, 1, 14, 3, 11, 10, 2, 1, 10, 3, 4, 1, 2, 2, 8)


def test_empty_analysis_all_zero():
    table = summarize(AnalysisResult(range=(2013, 2014), outcomes=()))
    assert table.counts() == (0,) * len(ROW_LABELS)


def test_fixture_matches_hand_trace(analysis):
    assert summarize(analysis).counts() == EXPECTED_BEFORE_REVIEW


def test_row_labels_fixed(analysis):
    assert tuple(label for label, _ in summarize(analysis).rows) == ROW_LABELS


def test_row_identities(analysis):
    rows = summarize(analysis).as_dict()
    assert rows["All new descriptors"] == rows["Category 1"] + rows["non Category 1"]
    assert rows["non Category 1"] == (
        rows["PMnote covered by the pattern"] + rows["PMnote not covered by the pattern"]
    )
    assert rows["SCR found by term"] >= rows["SCR found by both term and name"]
    assert rows["SCR found by descriptor Name"] >= rows["SCR found by both term and name"]


def test_summary_is_a_pure_fold(analysis):
    shuffled = list(analysis.outcomes)
    random.Random(7).shuffle(shuffled)
    permuted = AnalysisResult(range=analysis.range, outcomes=tuple(shuffled))
    assert summarize(permuted) == summarize(analysis)


def test_format_summary_alignment(analysis):
    text = format_summary(summarize(analysis))
    lines = text.splitlines()
    assert len(lines) == len(ROW_LABELS)
    assert len({line.rfind(" ") for line in lines}) >= 1
    assert lines[0].startswith("All new descriptors")


def test_write_summary_tsv(analysis, tmp_path):
    out = tmp_path / "summary.tsv"
    write_summary_tsv(summarize(analysis), out)
    lines = out.read_text().splitlines()
    assert lines[0] == "descriptor_set\tcount"
    assert len(lines) == len(ROW_LABELS) + 1
    assert lines[1] == "All new descriptors\t15"


@pytest.fixture()
def reviewed_analysis(analysis, tmp_path):
    log = tmp_path / "decisions.jsonl"
    now = datetime(2026, 8, 23, tzinfo=timezone.utc)
    for ui, chosen in (("D100003", "C063074"), ("D100013", "C100013"), ("D100002", None)):
        record_decision(log, Decision(ui, chosen, "alice", now))
    return apply_decisions(analysis, log)


def test_fixture_after_review_matches_hand_trace(reviewed_analysis):
    assert summarize(reviewed_analysis).counts() == EXPECTED_AFTER_REVIEW


def test_export_empty_analysis(tmp_path):
    out = tmp_path / "prov.tsv"
    export_provenance(AnalysisResult(range=(2013, 2014), outcomes=()), [], out)
    assert out.read_text() == (
        "descriptor_ui\tscr_ui\tmethod\tprevious_hosts\tpmn_hosts\tagreement\n"
    )


def test_export_rows(reviewed_analysis, snapshots, tmp_path):
    indices = {year: index for year, (_, index) in snapshots.items()}
    agreements = cross_validate(reviewed_analysis, indices)
    out = tmp_path / "prov.tsv"
    export_provenance(reviewed_analysis, agreements, out)
    lines = out.read_text().splitlines()
    resolved = [o for o in reviewed_analysis.outcomes if o.resolution.scr_ui]
    assert len(lines) == 1 + len(resolved)
    by_ui = {line.split("\t")[0]: line.split("\t") for line in lines[1:]}
    assert by_ui["D100001"][5] == "Identical"
    assert by_ui["D100003"][3] == "D200003|D200004"
    assert by_ui["D100003"][5] == "PmnPlusAdditional"
    # Concept-resolved rows have no SCR-derived host data without agreements.
    assert by_ui["D100006"][5] == ""
    # Rows sorted by descriptor UI.
    assert [line.split("\t")[0] for line in lines[1:]] == sorted(by_ui)
