"""Shared heavyweight fixtures: compiled-kernel warmup, the r <= 6 engine,
and the full brute-force tables the acceptance suite exercises."""
import os

import pytest

from inv3412 import _fast
from inv3412.genfun import GenfunEngine
from inv3412.oracle import brute_parity_table, brute_table

THREADS = min(os.cpu_count() or 1, 8)


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    _fast.warmup()


@pytest.fixture(scope="session")
def engine6():
    """Engine with the full r <= 6 catalog (scans I_4 .. I_13 once)."""
    return GenfunEngine(6, order=40, threads=THREADS)


@pytest.fixture(scope="session")
def table126():
    return brute_table(12, 6, threads=THREADS)


@pytest.fixture(scope="session")
def parity126():
    return brute_parity_table(12, 6, threads=THREADS)


@pytest.fixture(scope="session")
def table136():
    """Counts to n = 13 (568504 involutions at the top size)."""
    return brute_table(13, 6, threads=THREADS)


@pytest.fixture(scope="session")
def parity136():
    return brute_parity_table(13, 6, threads=THREADS)
