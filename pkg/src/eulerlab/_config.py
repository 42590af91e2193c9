import os

DEFAULT_TOL = 1e-6
TRACE_EPS = 1e-9
DET_TOL = 1e-9
INT_TOL = 1e-6
MAX_STEPS = 1 << 24


def threads():
    """Worker count from ``EULERLAB_THREADS`` (default 1)."""
    raw = os.environ.get("EULERLAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)
