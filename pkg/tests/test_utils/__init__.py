"""
Test utilities for the qlab test suite.

This package contains utility functions and fixtures for testing qlab.
"""

from .logging import configure_test_logging, get_test_logger

__all__ = ["configure_test_logging", "get_test_logger"]
