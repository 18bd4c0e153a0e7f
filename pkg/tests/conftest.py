import time

"""Shared fixtures: cached runs and the m = 1..50 scan used by several
test modules (the scan is the expensive part; compute it once)."""

from __future__ import annotations

import pytest

from bianchi.arith import is_squarefree
from bianchi.coxeter import build_diagram
from bianchi.pipeline import classify
from bianchi.qform import make_form
from bianchi.spinor import mark_filled
from bianchi.vinberg import run

TERMINATING = (1, 2, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 30, 33, 39)


@pytest.fixture(scope="session")
def terminated_runs():
    """m -> (form, root system, diagram with filled flags) for every case
    whose enumeration terminates at the default budget."""
    out = {}
    for m in TERMINATING:
        form = make_form(m)
        state = run(form)
        diagram = mark_filled(build_diagram(form, state.roots), m)
        out[m] = (form, state, diagram)
    return out


@pytest.fixture(scope="session")
def _scan_data():
    t0 = time.perf_counter()
    verdicts = {m: classify(m) for m in range(1, 51) if is_squarefree(m)}
    return verdicts, time.perf_counter() - t0


@pytest.fixture(scope="session")
def scan_verdicts(_scan_data):
    """Full default-budget classification of every square-free m <= 50."""
    return _scan_data[0]


@pytest.fixture(scope="session")
def scan_elapsed(_scan_data):
    """Single-threaded wall-clock seconds the scan took."""
    return _scan_data[1]
