"""
Tests for certified elements of the lower central and derived series.
"""

import pytest

from src.braids.algebra.braid_core import is_pure, pure_generator, twist
from src.braids.algebra.subgroup_series import (
    certified_level,
    certify,
    conjugate_of,
    ds_commutator,
    ds_sample,
    evaluate,
    flip_element,
    identity_element,
    include_element,
    inverse_of,
    lcs_level_of,
    lcs_sample,
    leaf,
    level_of_commutator,
    product_of,
    seeded_rng,
    shift_element,
    strand_shift,
    verify_certified,
)
from src.braids.algebra.word_problem import equal, is_trivial
from src.braids.exceptions import BraidError
from src.braids.models.schemas import BraidWord, ExprCommutator, ExprLeaf, Series


@pytest.fixture
def a12():
    return leaf(pure_generator(1, 2, 3))


@pytest.fixture
def a23():
    return leaf(pure_generator(2, 3, 3))


@pytest.fixture
def a13():
    return leaf(pure_generator(1, 3, 3))


class TestCertify:
    """Test certificate checking."""

    def test_leaf_is_level_one(self, a12):
        assert a12.level == 1
        assert Series(a12.series) == Series.LCS

    def test_leaf_rejects_non_pure(self):
        with pytest.raises(BraidError) as exc:
            leaf(BraidWord(strands=3, letters=(1,)))
        assert exc.value.code == "NOT_PURE"

    def test_certify_commutator(self, a12, a23):
        """Test that a commutator of generators certifies at level 2."""
        tree = ExprCommutator(left=a12.certificate, right=a23.certificate)
        element = certify(evaluate(tree), Series.LCS, 2, tree)
        assert element.level == 2

    def test_certify_rejects_overclaimed_level(self, a12, a23):
        tree = ExprCommutator(left=a12.certificate, right=a23.certificate)
        with pytest.raises(BraidError) as exc:
            certify(evaluate(tree), Series.LCS, 3, tree)
        assert exc.value.code == "CERTIFICATE_INVALID"

    def test_certify_rejects_wrong_word(self, a12, a23):
        tree = ExprCommutator(left=a12.certificate, right=a23.certificate)
        with pytest.raises(BraidError) as exc:
            certify(a12.word, Series.LCS, 1, tree)
        assert exc.value.code == "CERTIFICATE_INVALID"

    def test_certify_rejects_non_pure(self):
        w = BraidWord(strands=3, letters=(1,))
        with pytest.raises(BraidError) as exc:
            certify(w, Series.LCS, 1, ExprLeaf(word=w))
        assert exc.value.code == "CERTIFICATE_INVALID"

    def test_certify_rejects_non_pure_leaves(self):
        """[σ1, σ2²] is pure but its left leaf is not, so it proves nothing."""
        tree = ExprCommutator(
            left=ExprLeaf(word=BraidWord(strands=3, letters=(1,))),
            right=ExprLeaf(word=BraidWord(strands=3, letters=(2, 2))),
        )
        word = evaluate(tree)
        assert is_pure(word)
        with pytest.raises(BraidError) as exc:
            certify(word, Series.LCS, 2, tree)
        assert exc.value.code == "CERTIFICATE_INVALID"
        assert "not a pure braid" in exc.value.message

    def test_certify_rejects_leaves_on_other_strands(self, a12):
        tree = ExprCommutator(left=ExprLeaf(word=pure_generator(1, 2, 4)), right=a12.certificate)
        with pytest.raises(BraidError) as exc:
            certify(a12.word, Series.LCS, 1, tree)
        assert exc.value.code == "CERTIFICATE_INVALID"

    def test_identity_lies_everywhere(self):
        e = identity_element(3, Series.DS, 5)
        assert e.level == 5
        assert is_trivial(e.word)
        assert lcs_level_of(e.certificate) > 100


class TestCertifiedArithmetic:
    """Test levels of commutators, products, inverses and conjugates."""

    def test_lcs_levels_add(self, a12, a23, a13):
        """Test [LCS_m, LCS_n] ⊂ LCS_{m+n}."""
        x = level_of_commutator(level_of_commutator(a12, a23), a13)
        assert x.level == 3
        verify_certified([x])

    def test_ds_levels(self, a12, a23, a13):
        """Test [DS_n, DS_n] ⊂ DS_{n+1}."""
        d12, d23, d13 = (leaf(e.word, Series.DS) for e in (a12, a23, a13))
        x = ds_commutator(ds_commutator(d12, d23), ds_commutator(d13, d12))
        assert x.level == 3
        assert x.lcs_level == 4
        verify_certified([x])

    def test_ds_tree_proves_lcs_level(self, a12, a23, a13):
        d12, d23, d13 = (leaf(e.word, Series.DS) for e in (a12, a23, a13))
        x = ds_commutator(ds_commutator(d12, d23), ds_commutator(d13, d12))
        assert certified_level(x.certificate, Series.LCS) == 4

    def test_product_takes_minimum(self, a12, a23):
        x = level_of_commutator(a12, a23)
        product = product_of([x, a12])
        assert product.level == 1
        verify_certified([product])

    def test_empty_product(self):
        with pytest.raises(BraidError) as exc:
            product_of([])
        assert exc.value.code == "PRECONDITION_FAILED"

    def test_mixed_series_product_is_lcs(self, a12, a23):
        d = ds_commutator(leaf(a12.word, Series.DS), leaf(a23.word, Series.DS))
        product = product_of([d, level_of_commutator(a12, a23)])
        assert Series(product.series) == Series.LCS
        assert product.level == 2

    def test_inverse_and_conjugate_keep_level(self, a12, a23):
        x = level_of_commutator(a12, a23)
        assert inverse_of(x).level == 2
        y = conjugate_of(x, BraidWord(strands=3, letters=(1, -2)))
        assert y.level == 2
        verify_certified([inverse_of(x), y])

    def test_include_element(self, a12, a23):
        x = include_element(level_of_commutator(a12, a23), 5)
        assert x.strands == 5
        verify_certified([x])

    def test_strand_shift_matches_letter_shift(self, a12, a23):
        """Test that conjugating by t_m^offset moves the support right."""
        x = level_of_commutator(a12, a23)
        shifted = strand_shift(x, 2, 5)
        assert equal(shifted.word, shift_element(x, 2, 5).word)
        verify_certified([shifted, shift_element(x, 2, 5)])

    def test_flip_element(self, a12, a23):
        x = flip_element(level_of_commutator(a12, a23))
        assert x.level == 2
        verify_certified([x])


class TestSampling:
    """Test seeded sampling of certified elements."""

    def test_lcs_sample(self):
        x = lcs_sample(4, 3, seed=5)
        assert x.level == 3
        assert is_pure(x.word)
        verify_certified([x])

    def test_lcs_sample_is_deterministic(self):
        assert lcs_sample(4, 3, seed=5) == lcs_sample(4, 3, seed=5)

    def test_lcs_sample_nontrivial(self):
        assert not is_trivial(lcs_sample(3, 2, seed=1).word)

    def test_ds_sample(self):
        x = ds_sample(3, 2, seed=2)
        assert Series(x.series) == Series.DS
        assert x.level == 2
        verify_certified([x])

    def test_bad_parameters(self):
        with pytest.raises(BraidError) as exc:
            lcs_sample(1, 2)
        assert exc.value.code == "PRECONDITION_FAILED"

    def test_seeded_streams(self):
        first = seeded_rng(3, 1).integers(0, 10 ** 9)
        assert seeded_rng(3, 1).integers(0, 10 ** 9) == first
        assert seeded_rng(3, 2).integers(0, 10 ** 9) != first

    def test_twist_is_not_pure(self):
        assert not is_pure(twist(3))
