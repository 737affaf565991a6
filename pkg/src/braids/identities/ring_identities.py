"""
Group-ring identities in Z B_k, compared as exact RingElements.
"""

from typing import Tuple

import numpy as np

from src.braids.algebra.braid_core import commutator, compose, invert, random_pure_word, random_word
from src.braids.algebra.group_ring import RingElement, move_past_sides, ring_key, swap_sides
from src.braids.identities.base import IdentityCheck, Instance


class _RingCheck(IdentityCheck):
    STRANDS = (3, 4)
    LENGTH = 5

    def sample(self, rng: np.random.Generator) -> Instance:
        k = int(rng.integers(self.STRANDS[0], self.STRANDS[1] + 1))
        return {"x": random_word(rng, k, self.LENGTH), "y": random_word(rng, k, self.LENGTH)}


class RingCommutatorExpansion(_RingCheck):
    IDENTITY_ID = "ring-commutator-expansion"
    DESCRIPTION = "[x, y] − 1 = ((x − 1)(y − 1) − (y − 1)(x − 1)) x^-1 y^-1"

    def sides(self, instance: Instance) -> Tuple[str, str]:
        x, y = instance["x"], instance["y"]
        fx, fy = RingElement.augmentation_factor(x), RingElement.augmentation_factor(y)
        left = RingElement.augmentation_factor(commutator(x, y))
        right = (fx * fy - fy * fx) * RingElement.from_word(compose(invert(x), invert(y)))
        return ring_key(left), ring_key(right)


class RingProductExpansion(_RingCheck):
    IDENTITY_ID = "ring-product-expansion"
    DESCRIPTION = "xy − 1 = x (y − 1) + (x − 1)"

    def sides(self, instance: Instance) -> Tuple[str, str]:
        x, y = instance["x"], instance["y"]
        left = RingElement.augmentation_factor(compose(x, y))
        right = RingElement.from_word(x) * RingElement.augmentation_factor(y) + RingElement.augmentation_factor(x)
        return ring_key(left), ring_key(right)


class RingInverseExpansion(_RingCheck):
    IDENTITY_ID = "ring-inverse-expansion"
    DESCRIPTION = "x^-1 − 1 = −x^-1 (x − 1)"

    def sides(self, instance: Instance) -> Tuple[str, str]:
        x = instance["x"]
        left = RingElement.augmentation_factor(invert(x))
        right = -(RingElement.from_word(invert(x)) * RingElement.augmentation_factor(x))
        return ring_key(left), ring_key(right)


class RelatorSwap(IdentityCheck):
    IDENTITY_ID = "relator-swap"
    DESCRIPTION = "(x − 1)(y − 1) − (y − 1)(x − 1) = ([x, y] − 1) + ([x, y] − 1)(yx − 1)"

    def sample(self, rng: np.random.Generator) -> Instance:
        k = int(rng.integers(3, 5))
        return {"x": random_pure_word(rng, k, 2), "y": random_pure_word(rng, k, 2)}

    def sides(self, instance: Instance) -> Tuple[str, str]:
        left, right = swap_sides(instance["x"], instance["y"])
        return ring_key(left), ring_key(right)


class RelatorMovePast(IdentityCheck):
    IDENTITY_ID = "relator-move-past"
    DESCRIPTION = "(x − 1) y − y (x − 1) = ([x, y] − 1) y x"

    def sample(self, rng: np.random.Generator) -> Instance:
        k = int(rng.integers(3, 5))
        return {"x": random_pure_word(rng, k, 2), "y": random_pure_word(rng, k, 1)}

    def sides(self, instance: Instance) -> Tuple[str, str]:
        left, right = move_past_sides(instance["x"], instance["y"])
        return ring_key(left), ring_key(right)
