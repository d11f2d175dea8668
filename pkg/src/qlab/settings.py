import os

# Global enumeration bound: the largest number of candidates a single
# enumeration (elements, subsets, maps) may visit.
MAX_ENUM = int(os.getenv("QLAB_MAX_ENUM", 2**20))

# Largest |L|*|M| for which pullbacks and relative tensors are recomputed
# frame-side and compared with the spatial result.
TENSOR_CROSSCHECK = int(os.getenv("QLAB_TENSOR_CROSSCHECK", 1024))

LOG_LEVEL = os.getenv("QLAB_LOG_LEVEL", "WARNING")
LOG_FORMAT = os.getenv("QLAB_LOG_FORMAT", "simple")

SCHEMA_VERSION = 1


def resolve_bound(bound=None) -> int:
    """Return ``bound`` if given, else the global enumeration bound."""
    return MAX_ENUM if bound is None else int(bound)
