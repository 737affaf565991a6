"""
Identity Registry - Routes identity ids to their checks.
"""

import logging
from typing import Dict, List, Optional, Type

from src.braids.algebra.subgroup_series import seeded_rng
from src.braids.exceptions import BraidError
from src.braids.identities.base import IdentityCheck, Instance
from src.braids.identities.braid_relations import (
    BraidRelation,
    Ds3Commutator,
    FarCommutation,
    HalfTwistConjugation,
    HalfTwistModCenter,
    SlideStep,
)
from src.braids.identities.free_group import NestedCommutator, ProductCommutator
from src.braids.identities.ring_identities import (
    RelatorMovePast,
    RelatorSwap,
    RingCommutatorExpansion,
    RingInverseExpansion,
    RingProductExpansion,
)
from src.braids.models.schemas import IdentityReport


logger = logging.getLogger("braids.identities.registry")


class IdentityRegistry:
    """Registry of all verifiable identities."""

    _checks: Dict[str, Type[IdentityCheck]] = {
        check.IDENTITY_ID: check
        for check in (
            FarCommutation,
            BraidRelation,
            ProductCommutator,
            NestedCommutator,
            SlideStep,
            HalfTwistConjugation,
            HalfTwistModCenter,
            Ds3Commutator,
            RingCommutatorExpansion,
            RingProductExpansion,
            RingInverseExpansion,
            RelatorSwap,
            RelatorMovePast,
        )
    }

    @classmethod
    def get_check(cls, identity_id: str) -> IdentityCheck:
        check_class = cls._checks.get(identity_id.lower())

        if not check_class:
            supported = ", ".join(cls._checks.keys())
            raise BraidError(
                "UNKNOWN_IDENTITY",
                f"Unknown identity: {identity_id}. Supported: {supported}",
                {"identity_id": identity_id},
            )

        return check_class()

    @classmethod
    def list_identities(cls) -> List[str]:
        return list(cls._checks.keys())

    @classmethod
    def is_supported(cls, identity_id: str) -> bool:
        return identity_id.lower() in cls._checks


def verify_identity(identity_id: str, instance: Optional[Instance] = None, seed: int = 0) -> IdentityReport:
    """Check one instance; a random one drawn from the seed when none is given."""
    check = IdentityRegistry.get_check(identity_id)
    if instance is None:
        instance = check.sample(seeded_rng(seed, 3, sorted(IdentityRegistry._checks).index(check.IDENTITY_ID)))
    report = check.check(instance)
    if not report.verdict:
        logger.warning(f"Identity {identity_id} failed on {report.parameters}")
    return report


def run_identity_suite(seed: int = 0, count: int = 10) -> List[IdentityReport]:
    """``count`` random instances of every registered identity."""
    reports = []
    for position, identity_id in enumerate(sorted(IdentityRegistry.list_identities())):
        check = IdentityRegistry.get_check(identity_id)
        rng = seeded_rng(seed, 4, position)
        for _ in range(count):
            reports.append(check.check(check.sample(rng)))
    failures = sum(1 for report in reports if not report.verdict)
    logger.info(f"Identity suite: {len(reports)} instances, {failures} failures")
    return reports
