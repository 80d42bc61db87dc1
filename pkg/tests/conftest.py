"""Shared, session-scoped fixtures for the expensive catalog computations."""

from __future__ import annotations

import pytest

from orthoslice import suites
from orthoslice.catalog import hso4_components, so3_slice_components, so5star_components
from orthoslice.meet import all_meets, intersection_points


@pytest.fixture(scope="session")
def hso4():
    return hso4_components()


@pytest.fixture(scope="session")
def so5():
    return so5star_components()


@pytest.fixture(scope="session")
def so3():
    return so3_slice_components()


@pytest.fixture(scope="session")
def hso4_table(hso4):
    return all_meets(hso4)


@pytest.fixture(scope="session")
def hso4_points(hso4, hso4_table):
    return intersection_points(hso4, hso4_table)


@pytest.fixture(scope="session")
def so5_table(so5):
    return all_meets(so5)


@pytest.fixture(scope="session")
def so5_points(so5, so5_table):
    return intersection_points(so5, so5_table)


@pytest.fixture(scope="session")
def reports():
    """Suite reports run once per session, keyed by verb, with wall times."""
    import time

    cache = {}

    def get(name, **cfg):
        key = (name, tuple(sorted(cfg.items())))
        if key not in cache:
            fn = {
                "verify-so3": suites.verify_so3,
                "verify-hso4": suites.verify_hso4,
                "verify-so5star": suites.verify_so5star,
                "witness-so4": suites.witness_so4,
                "polytopes": suites.polytopes,
            }[name]
            t0 = time.perf_counter()
            rep = fn(suites.RunConfig(**cfg))
            cache[key] = (rep, time.perf_counter() - t0)
        return cache[key]

    return get


def check_named(report, name, section=None):
    """The check called ``name`` (unique within ``section`` or the whole report)."""
    hits = [c for s in report.sections for c in s.checks
            if c.name == name and (section is None or s.name == section)]
    assert len(hits) == 1, f"{name!r}: {len(hits)} matches"
    return hits[0]


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion, printed after the run

ACCEPTANCE: dict = {}


@pytest.fixture
def criterion(request):
    """Record the verdict of an acceptance criterion: ``criterion(n, title)``
    returns a callback taking ``(passed, detail)``; a criterion whose test
    raises before reporting is recorded as failed."""
    state = {}

    def start(n, title):
        state.update(n=n, title=title)
        ACCEPTANCE[n] = (title, False, "did not complete")

        def done(passed, detail=""):
            ACCEPTANCE[n] = (title, bool(passed), detail)
            return passed

        return done

    return start


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n:>2}. {title}: {detail}")
