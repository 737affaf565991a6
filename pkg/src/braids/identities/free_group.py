"""
Commutator identities valid in every free group, checked by free reduction.

    [xy, z]     = (x [y, z] x^{-1}) [x, z]
    [[x, y], z] = (g [[z^{-1}, y^{-1}], x] g^{-1}) (x [y, [x^{-1}, z]] x^{-1}),  g = x y x^{-1} z
"""

from typing import Tuple

import numpy as np

from src.braids.algebra.braid_core import commutator, compose, compose_all, invert, random_free_word
from src.braids.identities.base import IdentityCheck, Instance, word_key


GENERATORS = ("a", "b", "c")
WORD_LENGTH = 6


class _FreeGroupCheck(IdentityCheck):
    def sample(self, rng: np.random.Generator) -> Instance:
        return {name: random_free_word(rng, GENERATORS, WORD_LENGTH) for name in ("x", "y", "z")}


class ProductCommutator(_FreeGroupCheck):
    IDENTITY_ID = "product-commutator"
    DESCRIPTION = "[xy, z] = (x [y, z] x^-1) [x, z]"

    def sides(self, instance: Instance) -> Tuple[str, str]:
        x, y, z = instance["x"], instance["y"], instance["z"]
        left = commutator(compose(x, y), z)
        right = compose_all(x, commutator(y, z), invert(x), commutator(x, z))
        return word_key(left), word_key(right)


class NestedCommutator(_FreeGroupCheck):
    IDENTITY_ID = "nested-commutator"
    DESCRIPTION = "[[x, y], z] as a product of conjugates of [[z^-1, y^-1], x] and [y, [x^-1, z]]"

    def sides(self, instance: Instance) -> Tuple[str, str]:
        x, y, z = instance["x"], instance["y"], instance["z"]
        left = commutator(commutator(x, y), z)
        g = compose_all(x, y, invert(x), z)
        first = compose_all(g, commutator(commutator(invert(z), invert(y)), x), invert(g))
        second = compose_all(x, commutator(y, commutator(invert(x), z)), invert(x))
        return word_key(left), word_key(compose(first, second))
