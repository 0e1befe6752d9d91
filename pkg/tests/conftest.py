from __future__ import annotations

import os
from contextlib import contextmanager

import pytest


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: long-running checks, enabled with POSETLAB_SLOW=1"
    )


def pytest_collection_modifyitems(config, items):
    if os.environ.get("POSETLAB_SLOW"):
        return
    skip = pytest.mark.skip(reason="slow-optional; set POSETLAB_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def criterion(capsys):
    """Wrap one acceptance criterion so a pass/fail line always reaches the
    terminal, even under output capture."""

    @contextmanager
    def runner(number: int, description: str):
        ok = False
        try:
            yield
            ok = True
        finally:
            with capsys.disabled():
                status = "PASS" if ok else "FAIL"
                print(f"[criterion {number:2d}] {status} - {description}")

    return runner
