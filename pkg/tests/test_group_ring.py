"""
Tests for the integral group ring: singular words, ideal forms and expansions.
"""

import pytest

from src.braids.algebra.braid_core import is_pure, pure_generator, random_pure_word, random_word
from src.braids.algebra.group_ring import (
    RingElement,
    augmentation_product,
    crossing_switches,
    expand_commutator,
    expand_ideal_form,
    move_past_sides,
    resolve,
    resolve_combination,
    ring_key,
    swap_sides,
    to_double_points,
    to_ideal_form,
)
from src.braids.algebra.subgroup_series import inverse_of, lcs_sample, leaf, level_of_commutator, product_of
from src.braids.exceptions import BraidError
from src.braids.models.schemas import BraidWord, SingularBraidWord


def word(strands, *letters):
    return BraidWord(strands=strands, letters=letters)


def random_singular(rng, strands, length, max_double_points=3):
    letters, double_points = [], 0
    for _ in range(length):
        index = int(rng.integers(1, strands))
        kind = int(rng.choice([-1, 0, 1]))
        if kind == 0:
            if double_points == max_double_points:
                kind = 1
            else:
                double_points += 1
        letters.append((index, kind))
    return SingularBraidWord(strands=strands, letters=tuple(letters))


class TestRingElement:
    """Test ring arithmetic over canonical keys."""

    def test_spelling_independent(self):
        """Test that equal braids give the same basis element."""
        assert RingElement.from_word(word(3, 1, 2, 1)) == RingElement.from_word(word(3, 2, 1, 2))

    def test_augmentation_factor(self):
        factor = RingElement.augmentation_factor(word(3, 1))
        assert factor.augmentation == 0
        assert len(factor.terms) == 2

    def test_cancellation(self):
        x = RingElement.from_word(word(3, 1))
        assert (x - x).is_zero
        assert ring_key(x - x) == "0"

    def test_multiplication(self):
        x, y = RingElement.from_word(word(3, 1)), RingElement.from_word(word(3, 2))
        assert x * y == RingElement.from_word(word(3, 1, 2))
        assert (x * 3).terms == {key: 3 for key in x.terms}

    def test_strand_mismatch(self):
        with pytest.raises(BraidError) as exc:
            RingElement.one(3) + RingElement.one(4)
        assert exc.value.code == "STRAND_MISMATCH"

    def test_words_round_trip(self, rng):
        element = RingElement.combination(3, [(2, random_word(rng, 3, 5)), (-1, random_word(rng, 3, 5))])
        assert RingElement.combination(3, element.words()) == element


class TestSingularWords:
    """Test resolution of double points and the ideal form."""

    def test_resolve_single_double_point(self):
        """Test τ = σ − σ^{-1}."""
        s = SingularBraidWord(strands=2, letters=((1, 0),))
        expected = RingElement.from_word(word(2, 1)) - RingElement.from_word(word(2, -1))
        assert resolve(s) == expected

    def test_resolve_without_double_points(self):
        s = SingularBraidWord(strands=3, letters=((1, 1), (2, -1)))
        assert resolve(s) == RingElement.from_word(word(3, 1, -2))

    def test_resolution_lies_in_the_ideal(self):
        s = SingularBraidWord(strands=3, letters=((1, 1), (2, 0), (1, -1)))
        assert resolve(s).augmentation == 0
        assert len(resolve(s).terms) == 2

    def test_singular_text(self):
        s = SingularBraidWord(strands=3, letters=((1, 1), (2, 0), (1, -1)))
        assert s.text == "S3: 1 x2 -1"
        assert s.double_points == 1

    def test_ideal_form_round_trip(self, rng):
        """Test that the factorization multiplies back to the resolution."""
        for _ in range(20):
            s = random_singular(rng, 4, 6)
            form = to_ideal_form(s)
            assert len(form.factors) == s.double_points
            assert all(is_pure(f) for f in form.factors)
            assert expand_ideal_form(form) == resolve(s)

    def test_double_points_round_trip(self, rng):
        """Test that crossing changes express Π (x_i − 1) · tail as singular words."""
        for _ in range(5):
            xs = [random_pure_word(rng, 3, 1) for _ in range(2)]
            tail = random_word(rng, 3, 3)
            assert resolve_combination(to_double_points(xs, tail)) == augmentation_product(xs, tail)

    def test_double_points_count(self):
        words = to_double_points([pure_generator(1, 2, 3), pure_generator(2, 3, 3)])
        assert all(item.word.double_points == 2 for item in words)

    def test_certified_input_follows_its_certificate(self):
        x = level_of_commutator(leaf(pure_generator(1, 2, 3)), leaf(pure_generator(2, 3, 3)))
        # one switch per leaf copy: σ1², σ2² and their inverses
        assert len(crossing_switches(x)) == 4
        assert resolve_combination(to_double_points([x])) == augmentation_product([x.word])

    def test_deep_certificate_round_trip(self):
        x = lcs_sample(3, 3, seed=2)
        assert resolve_combination(to_double_points([x])) == augmentation_product([x.word])

    def test_budget_routes_to_layered_descent(self):
        a = leaf(pure_generator(1, 2, 3))
        x = product_of([a, inverse_of(a)])
        assert x.word.letters == ()
        assert len(crossing_switches(x)) == 2
        assert crossing_switches(x, step_factor=0) == []
        assert resolve_combination(to_double_points([x])) == RingElement.zero(3)

    def test_crossing_switches_need_pure(self):
        with pytest.raises(BraidError) as exc:
            crossing_switches(word(3, 1))
        assert exc.value.code == "NOT_PURE"

    def test_double_points_need_input(self):
        with pytest.raises(BraidError) as exc:
            to_double_points([])
        assert exc.value.code == "PRECONDITION_FAILED"


class TestCommutatorExpansion:
    """Test x − 1 ∈ I^n for certified x."""

    def test_level_two(self):
        x = level_of_commutator(leaf(pure_generator(1, 2, 3)), leaf(pure_generator(2, 3, 3)))
        expansion = expand_commutator(x)
        assert expansion.level == 2
        assert expansion.min_factors >= 2
        assert expansion.ring_sum() == RingElement.augmentation_factor(x.word)

    def test_level_three_sample(self):
        x = lcs_sample(3, 3, seed=1)
        expansion = expand_commutator(x)
        assert expansion.min_factors >= 3
        assert expansion.ring_sum() == RingElement.augmentation_factor(x.word)

    def test_terms_are_ideal_products(self):
        x = lcs_sample(3, 2, seed=2)
        for term in expand_commutator(x).terms:
            assert term.ring_value().augmentation == 0


class TestLocalIdentities:
    """Test the swap and move-past identities used by relator reduction."""

    def test_swap(self, rng):
        for _ in range(5):
            x, y = random_pure_word(rng, 3, 1), random_pure_word(rng, 3, 1)
            left, right = swap_sides(x, y)
            assert left == right

    def test_move_past(self, rng):
        for _ in range(5):
            x, y = random_pure_word(rng, 3, 1), random_word(rng, 3, 4)
            left, right = move_past_sides(x, y)
            assert left == right
