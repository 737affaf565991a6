"""
Tests for word algebra: reduction, inversion, permutations and inclusions.
"""

import pytest
from pydantic import ValidationError

from src.braids.algebra.braid_core import (
    commutator,
    compose,
    compose_all,
    conjugate,
    exponent_sums,
    free_reduce,
    half_twist,
    include,
    invert,
    is_pure,
    mirror,
    permutation_braid,
    permutation_of,
    power,
    pure_generator,
    random_pure_word,
    random_word,
    require_pure,
    shift_letters,
    sign_flip,
    twist,
)
from src.braids.algebra.group_ring import RingElement
from src.braids.exceptions import BraidError
from src.braids.models.schemas import BraidWord, FreeWord, Permutation


def word(strands, *letters):
    return BraidWord(strands=strands, letters=letters)


class TestBraidWord:
    """Test braid word construction and text."""

    def test_text_format(self):
        """Test that words print with a strand header."""
        assert word(3, 1, -2, 1).text == "B3: 1 -2 1"
        assert BraidWord.empty(4).text == "B4:"

    def test_letter_out_of_range(self):
        """Test that a letter beyond σ_{k-1} is rejected."""
        with pytest.raises(BraidError) as exc:
            word(3, 3)
        assert exc.value.code == "INDEX_OUT_OF_RANGE"

    def test_zero_letter_rejected(self):
        with pytest.raises(BraidError) as exc:
            word(3, 0)
        assert exc.value.code == "INDEX_OUT_OF_RANGE"

    def test_words_are_immutable(self):
        w = word(3, 1)
        with pytest.raises(ValidationError):
            w.letters = (2,)
        assert BraidWord.model_config["frozen"]
        assert BraidWord(strands=3, letters=(1,), note="ignored") == w

    def test_ring_elements_stay_mutable(self):
        assert RingElement.model_config["frozen"] is False
        assert RingElement.model_config["use_enum_values"]

    def test_exponent_sum_and_length(self):
        w = word(3, 1, 1, -2)
        assert w.exponent_sum == 1
        assert w.length == 3


class TestFreeOperations:
    """Test free reduction, products and inverses."""

    def test_free_reduce_cancels_nested_pairs(self):
        """Test that cancellation cascades through nested pairs."""
        assert free_reduce(word(3, 1, 2, -2, -1, 1)) == word(3, 1)

    def test_compose_reduces(self):
        assert compose(word(3, 1, 2), word(3, -2, 1)) == word(3, 1, 1)

    def test_compose_strand_mismatch(self):
        """Test that words on different strand counts cannot be multiplied."""
        with pytest.raises(BraidError) as exc:
            compose(word(3, 1), word(4, 1))
        assert exc.value.code == "STRAND_MISMATCH"

    def test_compose_braid_with_free_word(self):
        with pytest.raises(BraidError):
            compose(word(3, 1), FreeWord(letters=(("x", 1),)))

    def test_invert(self):
        assert invert(word(3, 1, -2)) == word(3, 2, -1)

    def test_power(self):
        assert power(word(2, 1), -2) == word(2, -1, -1)
        assert power(word(3, 1, 2), 0) == BraidWord.empty(3)

    def test_commutator_and_conjugate(self):
        """Test [x, y] = x y x^{-1} y^{-1} and g^{-1} x g."""
        assert commutator(word(3, 1), word(3, 2)) == word(3, 1, 2, -1, -2)
        assert conjugate(word(3, 1), word(3, 2)) == word(3, -2, 1, 2)

    def test_compose_all_reduces_across_boundaries(self):
        assert compose_all(word(3, 1), word(3, 2), word(3, -2, -1)) == BraidWord.empty(3)

    def test_free_words_reduce(self):
        x = FreeWord(letters=(("x", 1), ("y", 1), ("y", -1)))
        assert free_reduce(x).text == "x"


class TestPermutations:
    """Test the permutation map B_k → S_k."""

    def test_permutation_of_product(self):
        """Test that perm(σ1 σ2) sends 1 → 2 → 3 → 1."""
        p = permutation_of(word(3, 1, 2))
        assert p.image == (2, 3, 1)
        assert p.cycles() == [(1, 2, 3)]

    def test_signs_ignored(self):
        assert permutation_of(word(3, -1)) == permutation_of(word(3, 1))

    def test_pure_generators_are_pure(self):
        for i, j in [(1, 2), (1, 3), (2, 3), (1, 4)]:
            assert is_pure(pure_generator(i, j, 4))

    def test_pure_generator_letters(self):
        assert pure_generator(1, 3, 3) == word(3, 2, 1, 1, -2)

    def test_pure_generator_bad_indices(self):
        with pytest.raises(BraidError) as exc:
            pure_generator(2, 2, 3)
        assert exc.value.code == "INDEX_OUT_OF_RANGE"

    def test_require_pure(self):
        with pytest.raises(BraidError) as exc:
            require_pure(word(3, 1))
        assert exc.value.code == "NOT_PURE"

    def test_permutation_braid_realizes_permutation(self):
        """Test that the bubble-sort word has the requested permutation."""
        for image in [(2, 3, 1), (3, 2, 1), (1, 2, 3), (4, 1, 3, 2)]:
            p = Permutation(image=image)
            w = permutation_braid(p)
            assert permutation_of(w) == p
            assert all(letter > 0 for letter in w.letters)

    def test_bad_permutation(self):
        with pytest.raises(BraidError) as exc:
            Permutation(image=(1, 1, 2))
        assert exc.value.code == "INCONSISTENT_DATA"

    def test_permutation_algebra(self):
        p = Permutation(image=(2, 3, 1))
        assert p.compose(p.inverse()).is_identity
        assert p(1) == 2


class TestSpecialWords:
    """Test twists, inclusions, mirrors and shifts."""

    def test_twist(self):
        assert twist(3) == word(3, -2, -1)
        assert twist(1) == BraidWord.empty(1)

    def test_twist_permutation_is_a_cycle(self):
        """Test that t_k permutes the strands in one k-cycle."""
        assert len(permutation_of(twist(5)).cycles()) == 1

    def test_half_twist(self):
        assert half_twist(3) == word(3, 1, 2, 1)
        assert half_twist(4).length == 6

    def test_include(self):
        assert include(word(2, 1), 4) == word(4, 1)
        with pytest.raises(BraidError):
            include(word(4, 3), 3)

    def test_mirror(self):
        assert mirror(word(3, 1, -2)) == word(3, 2, -1)

    def test_sign_flip(self):
        assert sign_flip(word(3, 1, -2)) == word(3, -1, 2)

    def test_shift_letters(self):
        assert shift_letters(word(2, 1, -1), 2, 4) == word(4, 3, -3)
        with pytest.raises(BraidError) as exc:
            shift_letters(word(3, 1), 2, 4)
        assert exc.value.code == "INDEX_OUT_OF_RANGE"

    def test_exponent_sums(self):
        assert exponent_sums(word(3, 1, 1, -2)).tolist() == [2, -1]


class TestSampling:
    """Test seeded sampling helpers."""

    def test_random_word_length_and_range(self, rng):
        w = random_word(rng, 4, 20)
        assert w.length == 20
        assert all(1 <= abs(letter) <= 3 for letter in w.letters)

    def test_random_pure_word_is_pure(self, rng):
        for _ in range(10):
            assert is_pure(random_pure_word(rng, 4, 3))
