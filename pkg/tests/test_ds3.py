"""
Tests for the DS_n(P_3) word families and the {a,B}-rewriting.
"""

import pytest

from src.braids.algebra.braid_core import compose, invert, is_pure, random_word
from src.braids.algebra.ds3 import (
    COMMUTATOR_RULES,
    PRIMARY_FORMS,
    commutator_rule_holds,
    ds3_words,
    matches_form,
    reassemble,
    rewrite_mod_ds,
)
from src.braids.algebra.subgroup_series import verify_certified
from src.braids.algebra.word_problem import equal
from src.braids.exceptions import BraidError
from src.braids.models.schemas import BraidWord, Ds3Form, Series


class TestLevelOne:
    """Test the shortest pure word of each form."""

    def test_all_forms_present(self):
        words = ds3_words(1)
        assert set(words) == set(Ds3Form)
        assert len(PRIMARY_FORMS) == 11

    def test_shortest_awa(self):
        assert ds3_words(1)[Ds3Form.AWA].word == BraidWord(strands=3, letters=(1, 1))

    def test_patterns_and_purity(self):
        for form, element in ds3_words(1).items():
            assert matches_form(element.word, form)
            assert is_pure(element.word)
            assert element.level == 1

    def test_base_search_exhausted(self):
        """Test that a bound too small for the D-forms fails cleanly."""
        with pytest.raises(BraidError) as exc:
            ds3_words(1, base_bound=0)
        assert exc.value.code == "BASE_SEARCH_EXHAUSTED"

    def test_bad_level(self):
        with pytest.raises(BraidError) as exc:
            ds3_words(0)
        assert exc.value.code == "PRECONDITION_FAILED"


class TestRecursion:
    """Test the level n → n+1 construction."""

    def test_level_two_forms(self):
        words = ds3_words(2)
        for form in PRIMARY_FORMS:
            element = words[form]
            assert matches_form(element.word, form)
            assert Series(element.series) == Series.DS
            assert element.level == 2
        verify_certified(words.values())

    @pytest.mark.parametrize("d_form", list(COMMUTATOR_RULES))
    def test_commutator_rules(self, d_form):
        """Test that the D-form spelling equals [x, y] in B_3."""
        assert commutator_rule_holds(1, d_form)

    @pytest.mark.slow
    def test_level_three_and_four(self):
        for n in (3, 4):
            words = ds3_words(n)
            for form in PRIMARY_FORMS:
                assert matches_form(words[form].word, form)
        assert all(commutator_rule_holds(3, d_form) for d_form in COMMUTATOR_RULES)


class TestRewriting:
    """Test rewriting B_3 words into the {a, B} alphabet."""

    def test_alphabet(self, rng):
        for _ in range(10):
            x = random_word(rng, 3, int(rng.integers(1, 13)))
            rewrite = rewrite_mod_ds(x, 2)
            assert set(rewrite.word.letters) <= {1, -2}

    def test_reassembly_is_the_rewritten_word(self, rng):
        """Test that inserting the certified elements into x spells the rewrite."""
        for _ in range(10):
            x = random_word(rng, 3, int(rng.integers(1, 13)))
            rewrite = rewrite_mod_ds(x, 2)
            assert equal(reassemble(x, rewrite.insertions), rewrite.word)

    def test_difference_is_certified(self, rng):
        x = BraidWord(strands=3, letters=(2, -1, 1, 2))
        rewrite = rewrite_mod_ds(x, 2)
        assert rewrite.difference.level == 2
        assert equal(rewrite.difference.word, compose(rewrite.word, invert(x)))
        verify_certified([rewrite.difference])

    def test_core_letters_untouched(self):
        x = BraidWord(strands=3, letters=(1, -2, 1))
        rewrite = rewrite_mod_ds(x, 2)
        assert rewrite.word == x
        assert rewrite.insertions == ()
        assert rewrite.difference is None

    def test_needs_three_strands(self):
        with pytest.raises(BraidError) as exc:
            rewrite_mod_ds(BraidWord(strands=4, letters=(1,)), 2)
        assert exc.value.code == "STRAND_MISMATCH"
