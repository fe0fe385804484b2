from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from pmnharvest.snapshot import (
    DuplicateConceptOwner,
    FileUnreadable,
    InvariantViolation,
    MalformedJson,
    build_index,
    load_snapshot,
    lookup_descriptor_by_name,
    lookup_scrs_by_term,
    normalize_term,
    snapshot_from_dict,
    snapshot_to_dict,
)


def write_snapshot(tmp_path, doc, name="snap.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


def test_load_minimal_empty_snapshot(tmp_path):
    path = write_snapshot(tmp_path, {"year": 2013, "descriptors": [], "scrs": []})
    snap = load_snapshot(path)
    assert snap.year == 2013
    assert snap.descriptors == ()
    assert snap.scrs == ()


def test_pmn_preserved_byte_for_byte(data_dir):
    snap = load_snapshot(data_dir / "snapshot_2014.json")
    d = next(d for d in snap.descriptors if d.ui == "D100001")
    assert d.public_mesh_note == (
        "2014; was indexed under CALCIUM-BINDING PROTEINS, VITAMIN D-DEPENDENT 1987-2013"
    )


def test_duplicate_descriptor_ui_rejected(tmp_path):
    desc = {
        "ui": "D000001",
        "name": "A",
        "year_introduced": 2000,
        "public_mesh_note": None,
        "concepts": [{"ui": "M1", "preferred": True, "terms": ["a"]}],
    }
    desc2 = dict(desc, concepts=[{"ui": "M2", "preferred": True, "terms": ["b"]}])
    path = write_snapshot(tmp_path, {"year": 2013, "descriptors": [desc, desc2], "scrs": []})
    with pytest.raises(InvariantViolation) as err:
        load_snapshot(path)
    assert err.value.entity_ui == "D000001"
    assert err.value.rule == "unique-ui"


def test_missing_file_is_unreadable(tmp_path):
    with pytest.raises(FileUnreadable):
        load_snapshot(tmp_path / "nope.json")


def test_malformed_json_reports_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"year": 2013,', encoding="utf-8")
    with pytest.raises(MalformedJson) as err:
        load_snapshot(path)
    assert err.value.position is not None


def test_missing_required_key_rejected(tmp_path):
    path = write_snapshot(tmp_path, {"year": 2013, "descriptors": []})
    with pytest.raises(InvariantViolation):
        load_snapshot(path)


def test_unknown_keys_ignored(tmp_path):
    path = write_snapshot(
        tmp_path, {"year": 2013, "descriptors": [], "scrs": [], "whatever": 1}
    )
    assert load_snapshot(path).year == 2013


def test_two_preferred_concepts_rejected():
    doc = {
        "year": 2013,
        "descriptors": [
            {
                "ui": "D000001",
                "name": "A",
                "year_introduced": 2000,
                "public_mesh_note": None,
                "concepts": [
                    {"ui": "M1", "preferred": True, "terms": ["a"]},
                    {"ui": "M2", "preferred": True, "terms": ["b"]},
                ],
            }
        ],
        "scrs": [],
    }
    with pytest.raises(InvariantViolation):
        snapshot_from_dict(doc)


def test_bad_ui_pattern_rejected():
    doc = {
        "year": 2013,
        "descriptors": [],
        "scrs": [
            {
                "ui": "C12345",
                "name": "x",
                "concepts": [{"ui": "M1", "preferred": True, "terms": ["x"]}],
                "mapped_to": [],
            }
        ],
    }
    with pytest.raises(InvariantViolation):
        snapshot_from_dict(doc)


def test_index_contains_paper_adrenomedullin_term(prev_index):
    assert lookup_scrs_by_term(prev_index, "adrenomedullin receptor") >= {"C093200"}
    assert lookup_scrs_by_term(prev_index, "ADRENOMEDULLIN RECEPTOR") == {"C093200"}


def test_index_normalizes_whitespace_and_case(snapshots):
    doc = {
        "year": 2013,
        "descriptors": [],
        "scrs": [
            {
                "ui": "C000001",
                "name": "HLA-DRB5",
                "concepts": [{"ui": "M1", "preferred": True, "terms": ["  HLA-DRB5 "]}],
                "mapped_to": [],
            }
        ],
    }
    index = build_index(snapshot_from_dict(doc))
    assert index.term_to_scrs["hla-drb5"] == {"C000001"}


def test_empty_snapshot_index_maps_empty():
    index = build_index(snapshot_from_dict({"year": 2013, "descriptors": [], "scrs": []}))
    assert not index.term_to_scrs
    assert not index.concept_to_scr
    assert not index.name_to_descriptor
    assert index.all_scr_terms == ()


def test_shared_synonym_maps_to_two_scrs(prev_index):
    assert lookup_scrs_by_term(prev_index, "shared synonym") == {"C100009", "C100010"}


def test_lookup_missing_term_and_name(prev_index):
    assert lookup_scrs_by_term(prev_index, "no such term") == frozenset()
    assert lookup_descriptor_by_name(prev_index, "RECEPTORS, INTERLEUKIN-4") is None
    assert lookup_descriptor_by_name(prev_index, "") is None


def test_lookup_descriptor_by_name(snapshots):
    index = snapshots[2014][1]
    assert lookup_descriptor_by_name(index, "Calbindin 2") == "D100001"
    assert lookup_descriptor_by_name(index, "CALBINDIN 2") == "D100001"


def test_duplicate_concept_owner_rejected():
    scr = {
        "ui": "C000001",
        "name": "x",
        "concepts": [{"ui": "M1", "preferred": True, "terms": ["x"]}],
        "mapped_to": [],
    }
    scr2 = {
        "ui": "C000002",
        "name": "y",
        "concepts": [{"ui": "M1", "preferred": True, "terms": ["y"]}],
        "mapped_to": [],
    }
    snap = snapshot_from_dict({"year": 2013, "descriptors": [], "scrs": [scr, scr2]})
    with pytest.raises(DuplicateConceptOwner):
        build_index(snap)


def test_round_trip_stability(data_dir):
    for name in ("snapshot_2012.json", "snapshot_2013.json", "snapshot_2014.json"):
        snap = load_snapshot(data_dir / name)
        again = snapshot_from_dict(json.loads(json.dumps(snapshot_to_dict(snap))))
        assert again == snap


def test_every_scr_term_is_findable(snapshots):
    for snap, index in snapshots.values():
        for scr in snap.scrs:
            for concept in scr.concepts:
                for term in concept.terms:
                    assert scr.ui in lookup_scrs_by_term(index, term)


def test_build_index_deterministic(snapshots):
    snap, index = snapshots[2013]
    again = build_index(snap)
    assert again == index


@given(st.text(max_size=40))
def test_normalize_term_idempotent(text):
    once = normalize_term(text)
    assert normalize_term(once) == once
    assert "  " not in once
