"""
Domain errors for the braid toolkit.

Every failure a caller can act on is a BraidError carrying a stable code,
a one-line message and optional structured details. The CLI maps these to
exit status 1.
"""

from typing import Any, Dict, Optional


class BraidError(Exception):
    """Error raised by braid, knot and ring operations."""

    def __init__(self, code: str, message: str, details: Optional[Dict[str, Any]] = None):
        self.code = code
        self.message = message
        self.details = details or {}
        super().__init__(message)

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


def require_same_strands(*words) -> int:
    """Return the common strand count or raise STRAND_MISMATCH."""
    counts = {w.strands for w in words}
    if len(counts) != 1:
        raise BraidError(
            "STRAND_MISMATCH",
            f"Strand counts differ: {sorted(counts)}",
            {"strands": sorted(counts)},
        )
    return counts.pop()
