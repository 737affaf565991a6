"""
Identities in B_k checked with the word problem.
"""

from typing import Tuple

import numpy as np

from src.braids.algebra.braid_core import (
    commutator,
    compose_all,
    conjugate,
    half_twist,
    include,
    invert,
    mirror,
    power,
    random_pure_word,
    random_word,
    twist_power,
)
from src.braids.algebra.ds3 import A_LETTER, B_LETTER, CORE_ALPHABET, D_INVERSE, D_WORD, commutator_d_form
from src.braids.identities.base import IdentityCheck, Instance, word_key
from src.braids.models.schemas import BraidWord


class FarCommutation(IdentityCheck):
    IDENTITY_ID = "far-commutation"
    DESCRIPTION = "σ_i σ_j = σ_j σ_i for |i − j| ≥ 2"

    def sample(self, rng: np.random.Generator) -> Instance:
        k = int(rng.integers(4, 8))
        i = int(rng.integers(1, k - 2))
        j = int(rng.integers(i + 2, k))
        return {"k": k, "i": i, "j": j}

    def sides(self, instance: Instance) -> Tuple[str, str]:
        k, i, j = instance["k"], instance["i"], instance["j"]
        return word_key(BraidWord(strands=k, letters=(i, j))), word_key(BraidWord(strands=k, letters=(j, i)))


class BraidRelation(IdentityCheck):
    IDENTITY_ID = "braid-relation"
    DESCRIPTION = "σ_i σ_{i+1} σ_i = σ_{i+1} σ_i σ_{i+1}"

    def sample(self, rng: np.random.Generator) -> Instance:
        k = int(rng.integers(3, 8))
        return {"k": k, "i": int(rng.integers(1, k - 1))}

    def sides(self, instance: Instance) -> Tuple[str, str]:
        k, i = instance["k"], instance["i"]
        left = BraidWord(strands=k, letters=(i, i + 1, i))
        right = BraidWord(strands=k, letters=(i + 1, i, i + 1))
        return word_key(left), word_key(right)


class SlideStep(IdentityCheck):
    """t^{-i-1} y t^{i+1} x t = [t^{-i-1} y t^{i+1}, x] · x · t^{-i-1} y t^{i+2} in B_2k."""

    IDENTITY_ID = "slide-step"
    DESCRIPTION = "one step of sliding y around the closure past x"

    def sample(self, rng: np.random.Generator) -> Instance:
        k = int(rng.integers(2, 4))
        return {
            "k": k,
            "i": int(rng.integers(0, k)),
            "x": include(random_pure_word(rng, k, 2), 2 * k),
            "y": include(random_pure_word(rng, k, 2), 2 * k),
        }

    def sides(self, instance: Instance) -> Tuple[str, str]:
        k, i, x, y = instance["k"], instance["i"], instance["x"], instance["y"]
        m = 2 * k
        moved = compose_all(twist_power(m, -i - 1), y, twist_power(m, i + 1))
        left = compose_all(moved, x, twist_power(m, 1))
        right = compose_all(
            commutator(moved, x), x, twist_power(m, -i - 1), y, twist_power(m, i + 2)
        )
        return word_key(left), word_key(right)


class HalfTwistConjugation(IdentityCheck):
    """d X d^{-1} = mirror(X) in B_3 with d = σ2σ1σ2."""

    IDENTITY_ID = "half-twist-conjugation"
    DESCRIPTION = "conjugation by the half-twist swaps a and b"

    def sample(self, rng: np.random.Generator) -> Instance:
        return {"x": random_word(rng, 3, int(rng.integers(1, 13)))}

    def sides(self, instance: Instance) -> Tuple[str, str]:
        x = instance["x"]
        left = conjugate(x, BraidWord.of(3, D_INVERSE))
        return word_key(left), word_key(mirror(x))


class HalfTwistModCenter(IdentityCheck):
    """
    D X D · Δ² = mirror(X) and d X d · Δ^{-2} = mirror(X) for a single letter X:
    the literal d X d = mirror(X) holds only up to the central Δ².
    """

    IDENTITY_ID = "half-twist-mod-center"
    DESCRIPTION = "DXD = dXd = mirror(X) modulo the center of B_3"

    def sample(self, rng: np.random.Generator) -> Instance:
        return {
            "letter": int(rng.choice(np.array([1, 2, -1, -2]))),
            "variant": "DXD" if rng.random() < 0.5 else "dXd",
        }

    def sides(self, instance: Instance) -> Tuple[str, str]:
        letter, variant = instance["letter"], instance["variant"]
        x = BraidWord(strands=3, letters=(letter,))
        full_twist = power(half_twist(3), 2)
        if variant == "DXD":
            d = BraidWord.of(3, D_INVERSE)
            left = compose_all(d, x, d, full_twist)
        else:
            d = BraidWord.of(3, D_WORD)
            left = compose_all(d, x, d, invert(full_twist))
        return word_key(left), word_key(mirror(x))


class Ds3Commutator(IdentityCheck):
    """[u·a, v·B] equals its D-form spelling for {a, B}-words u, v."""

    IDENTITY_ID = "ds3-commutator"
    DESCRIPTION = "[awa, awB] = awBD and its three siblings"

    def sample(self, rng: np.random.Generator) -> Instance:
        def core(length: int) -> BraidWord:
            picks = rng.integers(0, 2, size=length)
            return BraidWord.of(3, (CORE_ALPHABET[int(p)] for p in picks))

        x_prefix = A_LETTER if rng.random() < 0.5 else B_LETTER
        y_prefix = A_LETTER if rng.random() < 0.5 else B_LETTER
        x = BraidWord.of(3, (x_prefix,) + core(int(rng.integers(0, 7))).letters + (A_LETTER,))
        y = BraidWord.of(3, (y_prefix,) + core(int(rng.integers(0, 7))).letters + (B_LETTER,))
        return {"x": x, "y": y}

    def sides(self, instance: Instance) -> Tuple[str, str]:
        x, y = instance["x"], instance["y"]
        d_form = BraidWord.of(3, commutator_d_form(x.letters, y.letters))
        return word_key(commutator(x, y)), word_key(d_form)
