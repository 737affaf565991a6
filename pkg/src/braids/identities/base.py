"""
Base Identity Check Interface.

Every identity the toolkit can verify is a subclass of IdentityCheck: it
knows how to draw a random instance of its free variables and how to
evaluate both sides of the identity to comparable keys.

A check never raises for a false identity; the verdict lives in the
returned IdentityReport.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Tuple

import numpy as np

from src.braids.algebra.braid_core import free_reduce
from src.braids.algebra.word_problem import canonical_key
from src.braids.models.schemas import BraidWord, FreeWord, IdentityReport


Instance = Dict[str, Any]


def word_key(w) -> str:
    """Comparison key: canonical key for braids, reduced spelling for free words."""
    if isinstance(w, BraidWord):
        return canonical_key(w)
    if isinstance(w, FreeWord):
        return free_reduce(w).text or "1"
    raise TypeError(f"No comparison key for {type(w).__name__}")


def describe(value: Any) -> str:
    text = getattr(value, "text", None)
    if isinstance(text, str):
        return text
    word = getattr(value, "word", None)
    if isinstance(word, BraidWord):
        return word.text
    return str(value)


class IdentityCheck(ABC):
    """
    Abstract base class for all identity checks.

    Usage:
        check = ProductCommutator()
        report = check.check(check.sample(rng))
        assert report.verdict
    """

    # Override in subclass
    IDENTITY_ID: str = "base"
    DESCRIPTION: str = "Base identity"

    @abstractmethod
    def sample(self, rng: np.random.Generator) -> Instance:
        """Draw concrete values for the identity's free variables."""
        pass

    @abstractmethod
    def sides(self, instance: Instance) -> Tuple[str, str]:
        """Evaluate both sides to comparable keys."""
        pass

    def check(self, instance: Instance) -> IdentityReport:
        left, right = self.sides(instance)
        return IdentityReport(
            identity_id=self.IDENTITY_ID,
            parameters={name: describe(value) for name, value in instance.items()},
            verdict=left == right,
            left_key=left,
            right_key=right,
        )
