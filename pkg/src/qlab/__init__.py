"""Top-level package for qlab."""

__author__ = """Qlab Developers"""
__email__ = "developers@qlab.dev"
__version__ = "0.1.0"

import logging

logging.getLogger(__name__).addHandler(logging.NullHandler())
