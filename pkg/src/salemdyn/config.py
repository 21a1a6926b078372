"""Runtime configuration read from the environment."""
import os

DEFAULT_PRECISION_BITS = 200
MAX_PRECISION_BITS = 6400


def precision_bits() -> int:
    """Working precision (bits) for certified numerical steps."""
    raw = os.environ.get("ADT_PRECISION_BITS", "")
    try:
        bits = int(raw)
    except ValueError:
        return DEFAULT_PRECISION_BITS
    return max(bits, 53)
