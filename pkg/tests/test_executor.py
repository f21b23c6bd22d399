"""Tests for ordered parallel execution and logging setup."""

import logging
import threading
import time

from lattice_floquet.core.executor import map_ordered, with_status, worker_count
from lattice_floquet.core.log import configure_logging


def test_worker_count_respects_env_cap(monkeypatch):
    monkeypatch.setenv('LATTICE_FLOQUET_THREADS', '2')
    assert worker_count(8) == 2
    assert worker_count(1) == 1


def test_worker_count_without_cap(monkeypatch):
    monkeypatch.delenv('LATTICE_FLOQUET_THREADS', raising=False)
    assert worker_count(3) == 3
    assert worker_count() >= 1


def test_map_ordered_keeps_input_order(monkeypatch):
    """Test results line up with inputs even when later items finish first."""
    monkeypatch.delenv('LATTICE_FLOQUET_THREADS', raising=False)

    def slow_for_small(x):
        time.sleep(0.01 * (5 - x))
        return x * x

    assert map_ordered(slow_for_small, range(5), threads=4) == [0, 1, 4, 9, 16]


def test_map_ordered_single_thread_runs_inline(monkeypatch):
    monkeypatch.delenv('LATTICE_FLOQUET_THREADS', raising=False)
    seen = []
    map_ordered(lambda x: seen.append(threading.current_thread()), range(3), threads=1)
    assert all(t is threading.main_thread() for t in seen)


def test_map_ordered_empty():
    assert map_ordered(lambda x: x, [], threads=4) == []


def test_with_status_passes_through():
    with with_status("working", enabled=False):
        value = 1
    assert value == 1


def test_configure_logging_levels(monkeypatch):
    monkeypatch.delenv('LATTICE_FLOQUET_DEBUG', raising=False)
    logger = configure_logging(verbose=False)
    assert logger.level == logging.WARNING
    assert configure_logging(verbose=True).level == logging.INFO

    monkeypatch.setenv('LATTICE_FLOQUET_DEBUG', '1')
    assert configure_logging().level == logging.DEBUG


def test_configure_logging_single_handler(monkeypatch):
    monkeypatch.delenv('LATTICE_FLOQUET_DEBUG', raising=False)
    configure_logging()
    logger = configure_logging()
    assert len([h for h in logger.handlers if h.name == 'lattice-floquet']) == 1
