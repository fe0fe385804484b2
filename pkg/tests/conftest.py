from __future__ import annotations

from pathlib import Path

import pytest

from pmnharvest.resolver import run_pipeline
from pmnharvest.snapshot import load_snapshots

DATA_DIR = Path(__file__).parent / "data"
SNAPSHOT_FILES = [
    DATA_DIR / "snapshot_2012.json",
    DATA_DIR / "snapshot_2013.json",
    DATA_DIR / "snapshot_2014.json",
]


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def snapshots():
    return load_snapshots(SNAPSHOT_FILES)


@pytest.fixture(scope="session")
def prev_index(snapshots):
    """Index of the 2013 snapshot, the 'previous' view for 2014 descriptors."""
    return snapshots[2013][1]


@pytest.fixture(scope="session")
def analysis(snapshots):
    return run_pipeline(snapshots, (2013, 2014), k=5)


@pytest.fixture()
def outcome_by_ui(analysis):
    return {o.descriptor_ui: o for o in analysis.outcomes}
