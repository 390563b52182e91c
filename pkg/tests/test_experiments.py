"""Experiment suite registry and determinism of the cheap suites."""

import pytest

from ultraharmonic.experiments import SUITES, run_suite


def test_registry_names():
    assert set(SUITES) == {
        "fact1",
        "fact2",
        "fact3-identity",
        "extraction",
        "glazer-principal",
        "glazer-ideal",
        "vdw-desk",
        "mertens",
    }


def test_unknown_suite_lists_choices():
    with pytest.raises(ValueError, match="extraction"):
        run_suite("nope")


def test_cheap_suites_pass():
    for name in ("extraction", "fact2", "fact3-identity", "vdw-desk"):
        records = run_suite(name)
        assert records, name
        for record in records:
            assert record["passed"], (name, record)


def test_suites_are_deterministic():
    first = run_suite("fact2")
    second = run_suite("fact2")
    assert first == second
