"""Verification suites for the invariants of every module."""

from src.verify.suites import SUITES, SuiteOptions, run_suite

__all__ = ["SUITES", "SuiteOptions", "run_suite"]
