"""Harness machinery: determinism, registry, failure reporting."""

import pytest

from mdl import harness


def test_registry_complete():
    expected = {"thm4", "cor5", "lem7", "lem8", "lem9", "lem10", "lem11",
                "lem12", "lem14", "lem16", "lem17", "hirschfeld"}
    assert set(harness.SUITES) == expected


def test_unknown_suite():
    with pytest.raises(ValueError):
        harness.run_suite("lem99", 1, 0)


def test_suites_deterministic():
    a = harness.run_suite("cor5", 6, 42)
    b = harness.run_suite("cor5", 6, 42)
    assert [t.detail for t in a.trials] == [t.detail for t in b.trials]


def test_counts_property():
    r = harness.run_suite("hirschfeld", 10, 0)
    good, total = r.counts
    assert total == 10
    assert r.passed == (good == total)


@pytest.mark.parametrize("name", sorted(harness.SUITES))
def test_each_suite_smoke(name):
    r = harness.run_suite(name, 4, 7)
    assert r.passed, [t.detail for t in r.trials if not t.passed]
