"""

Shared fixtures for qlab tests.

This module provides reusable pytest fixtures: the small spaces, groupoids and
quantales most tests start from, and the catalog models.
"""

import logging
import os
import sys

import pytest

from qlab.catalog import load
from qlab.groupoid import pair_groupoid, unit_groupoid
from qlab.locale import FiniteSpace
from qlab.quantale import quantale_of_groupoid

# Import test utilities for logging
from .test_utils.logging import configure_test_logging

# Add the tests directory to the Python path
sys.path.insert(0, os.path.abspath(os.path.dirname(__file__)))


logger = logging.getLogger(__name__)


def pytest_addoption(parser):
    """Add command-line options for pytest."""
    parser.addoption(
        "--run-slow",
        action="store_true",
        default=False,
        help="Run slow tests",
    )
    parser.addoption(
        "--qlab-log-level",
        default="INFO",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Set the logging level for qlab tests",
    )


def pytest_configure(config):
    """Configure logging from the command line."""
    configure_test_logging(level=config.getoption("--qlab-log-level"))


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session", autouse=True)
def setup_logging(pytestconfig):
    """Set up logging for all tests.

    Returns the configuration function so a test can reconfigure logging.
    """
    configure_test_logging(level=pytestconfig.getoption("--qlab-log-level"))
    return configure_test_logging


@pytest.fixture(scope="session")
def point():
    return FiniteSpace.point()


@pytest.fixture(scope="session")
def sierpinski():
    return FiniteSpace.sierpinski()


@pytest.fixture(scope="session")
def two_points():
    return FiniteSpace.discrete(["a", "b"], name="2")


@pytest.fixture(scope="session")
def pair2(two_points):
    """The pair groupoid of the two-point discrete space."""
    return pair_groupoid(two_points)


@pytest.fixture(scope="session")
def pair_s(sierpinski):
    """The pair groupoid of the Sierpinski space."""
    return pair_groupoid(sierpinski)


@pytest.fixture(scope="session")
def unit_s(sierpinski):
    return unit_groupoid(sierpinski)


@pytest.fixture(scope="session")
def quantale_pair2(pair2):
    return quantale_of_groupoid(pair2)


@pytest.fixture(scope="session")
def quantale_pair_s(pair_s):
    return quantale_of_groupoid(pair_s)


@pytest.fixture(scope="session")
def catalog_model():
    """Build a catalog model by name and kind."""

    def _load(name, kind=None):
        return load(name, kind=kind)

    return _load
