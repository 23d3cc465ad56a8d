from __future__ import annotations

import functools

import pytest

from lefblock import dataio
from lefblock.lefschetz import assemble
from lefblock.projtest import analyze

DATA = dataio.default_data_dir()


@functools.lru_cache(maxsize=None)
def bundle(name: str) -> dataio.FixtureBundle:
    return dataio.load_bundle(DATA / name)


@functools.lru_cache(maxsize=None)
def report(group: str, analysed: bool = True):
    """Assembled report for the primary recipe of ``group`` (cached, do not mutate)."""
    b = bundle(dataio.find_bundle(DATA, group).name)
    rep = assemble(b.primary_recipe(group))
    if analysed:
        analyze(rep, b.brauer_for(group))
    return rep


def all_bundles() -> list[str]:
    return sorted(dataio.available_bundles(DATA))


@pytest.fixture
def s3toy():
    return bundle("S3-toy")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
