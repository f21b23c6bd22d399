"""Slow end-to-end runs of the verification suites."""
