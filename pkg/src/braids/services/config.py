"""
Runtime configuration for the braid service layer.

Values come from ``settings.BRAIDS_SETTINGS``; anything missing falls back to
the library defaults so the service also works without configured Django.
"""

from dataclasses import dataclass, fields
from typing import Any, Dict, Optional

from src.braids.algebra.ds3 import DEFAULT_BASE_BOUND
from src.braids.algebra.group_ring import DEFAULT_DESCENT_STEP_FACTOR
from src.braids.algebra.relators import MAX_REDUCTION_STEPS
from src.braids.knots.alternating import DEFAULT_PRIMALITY_ROUNDS
from src.braids.knots.invariants import DEFAULT_W_SERIES_MAX
from src.braids.knots.oracles import DEFAULT_STATE_SUM_MAX_CROSSINGS


@dataclass
class BraidsConfig:
    """Configuration passed to the service on initialization."""

    # Sampling
    default_seed: int = 0

    # Searches and budgets
    base_bound: int = DEFAULT_BASE_BOUND
    descent_step_factor: int = DEFAULT_DESCENT_STEP_FACTOR
    max_reduction_steps: int = MAX_REDUCTION_STEPS
    family_primality_rounds: int = DEFAULT_PRIMALITY_ROUNDS

    # Invariants
    w_series_max: int = DEFAULT_W_SERIES_MAX
    state_sum_max_crossings: int = DEFAULT_STATE_SUM_MAX_CROSSINGS

    @classmethod
    def from_dict(cls, values: Optional[Dict[str, Any]]) -> "BraidsConfig":
        """Build from an upper-case settings dict, ignoring unknown keys."""
        values = values or {}
        known = {f.name for f in fields(cls)}
        return cls(**{
            key.lower(): int(value)
            for key, value in values.items()
            if key.lower() in known
        })

    @classmethod
    def from_settings(cls) -> "BraidsConfig":
        from django.conf import settings

        if not settings.configured:
            return cls()
        return cls.from_dict(getattr(settings, "BRAIDS_SETTINGS", None))
