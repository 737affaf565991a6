"""
Tests for braid-based invariants on small knots and links.
"""

from fractions import Fraction

import numpy as np
import pytest

from src.braids.algebra.braid_core import mirror, sign_flip
from src.braids.algebra.subgroup_series import lcs_sample
from src.braids.exceptions import BraidError
from src.braids.knots.closure_link import close, phi_word
from src.braids.knots.invariants import (
    alexander_conway,
    alexander_polynomial,
    battery,
    conway_from_alexander,
    determinant,
    finite_type_probe,
    jones,
    jones_of_word,
    strand_linking,
    w_series,
    w_series_from_jones,
    w_series_of_word,
)
from src.braids.knots.laurent import LaurentPoly
from src.braids.models.schemas import BraidWord


def poly(*terms, scale=1):
    return LaurentPoly.build(terms, scale=scale)


TREFOIL_JONES = poly((1, 1), (3, 1), (4, -1))
FIGURE_EIGHT_JONES = poly((-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1))


@pytest.fixture
def hopf():
    return BraidWord(strands=2, letters=(1, 1))


class TestJones:
    def test_trefoil(self, trefoil):
        assert jones_of_word(trefoil) == TREFOIL_JONES

    def test_figure_eight(self, figure_eight):
        assert jones(close(figure_eight)) == FIGURE_EIGHT_JONES

    def test_unknot(self):
        assert jones_of_word(BraidWord(strands=2, letters=(1,))) == LaurentPoly.constant(1)
        assert jones_of_word(BraidWord.empty(1)) == LaurentPoly.constant(1)

    def test_hopf_link_has_half_integer_powers(self, hopf):
        polynomial = jones_of_word(hopf)
        assert polynomial.coefficient(Fraction(1, 2)) == -1
        assert polynomial.coefficient(Fraction(5, 2)) == -1

    def test_mirror_image_reflects(self, trefoil):
        assert jones_of_word(sign_flip(trefoil)) == TREFOIL_JONES.reflected()

    def test_half_twist_conjugate_is_the_same_knot(self, figure_eight):
        assert jones_of_word(mirror(figure_eight)) == FIGURE_EIGHT_JONES


class TestAlexanderConway:
    def test_trefoil(self, trefoil):
        polynomial, conway = alexander_conway(trefoil)
        assert polynomial == poly((-1, 1), (0, -1), (1, 1))
        assert conway == (1, 0, 1)
        assert determinant(trefoil) == 3

    def test_figure_eight(self, figure_eight):
        assert alexander_polynomial(figure_eight) == poly((-1, -1), (0, 3), (1, -1))
        assert conway_from_alexander(alexander_polynomial(figure_eight)) == (1, 0, -1)
        assert determinant(figure_eight) == 5

    def test_unknot_has_trivial_conway(self):
        assert conway_from_alexander(LaurentPoly.constant(1)) == (1,)

    def test_links_are_rejected(self, hopf):
        with pytest.raises(BraidError) as exc:
            alexander_polynomial(hopf)
        assert exc.value.code == "NOT_A_KNOT"


class TestWSeries:
    def test_trefoil(self, trefoil):
        assert w_series_of_word(trefoil, 3) == [0, 0, Fraction(-3), Fraction(-6)]

    def test_figure_eight(self, figure_eight):
        w = w_series(close(figure_eight), 3)
        assert w[2] == 3
        assert w[3] == 0

    def test_jones_path_agrees(self, trefoil, figure_eight):
        for knot in (trefoil, figure_eight):
            assert w_series_from_jones(jones_of_word(knot), 4) == w_series_of_word(knot, 4)

    def test_negative_writhe_stays_exact(self):
        left_trefoil = BraidWord(strands=2, letters=(-1, -1, -1))
        w = w_series_of_word(left_trefoil, 4)
        assert all(type(x) is Fraction for x in w)
        assert w[:4] == [0, 0, Fraction(-3), Fraction(6)]
        assert w == w_series_from_jones(jones_of_word(left_trefoil), 4)

    def test_long_negative_word_matches_jones_path(self):
        word = BraidWord(strands=3, letters=(-1, -1, 2) * 13 + (-1,))
        assert close(word).is_knot
        w = w_series_of_word(word, 8)
        assert all(type(x) is Fraction for x in w)
        assert w == w_series_from_jones(jones_of_word(word), 8)

    def test_diagram_series_and_probe_are_exact(self, figure_eight):
        stabilized_left_trefoil = BraidWord(strands=3, letters=(-1, -1, -1, 2))
        for knot in (figure_eight, stabilized_left_trefoil):
            w = w_series(close(knot), 6)
            assert [type(x) for x in w] == [Fraction] * 7
            probe = finite_type_probe(knot)
            assert type(probe.w2) is Fraction
            assert type(probe.w3) is Fraction

    def test_w_series_needs_a_knot(self, hopf):
        with pytest.raises(BraidError):
            w_series(close(hopf))


class TestAggregates:
    def test_battery_of_a_knot(self, trefoil):
        result = battery(trefoil)
        assert result.components == 1
        assert result.determinant == 3
        assert result.w2 == -3
        assert result.w3 == -6
        assert result.conway_coefficient(2) == 1
        assert result.conway_coefficient(8) == 0

    def test_battery_of_a_link(self, hopf):
        result = battery(hopf)
        assert result.components == 2
        assert result.alexander is None
        with pytest.raises(BraidError):
            result.conway_coefficient(2)

    def test_probe_of_small_knots(self, trefoil, figure_eight):
        probe = finite_type_probe(trefoil)
        assert (probe.a2, probe.a4, probe.w2) == (1, 0, -3)
        assert finite_type_probe(figure_eight).a2 == -1
        assert len(probe.fingerprint) == 5

    @pytest.mark.parametrize("seed", range(3))
    def test_probe_agrees_with_battery(self, seed):
        knot = phi_word(lcs_sample(3, 2, seed=seed).word)
        probe, full = finite_type_probe(knot), battery(knot)
        assert probe.a2 == full.conway_coefficient(2)
        assert probe.a4 == full.conway_coefficient(4)
        assert probe.w2 == full.w2
        assert probe.w3 == full.w3

    def test_strand_linking(self, hopf):
        linking = strand_linking(hopf)
        assert np.array_equal(linking, np.array([[0, 1], [0, 0]]))

    def test_strand_linking_needs_a_pure_braid(self, trefoil):
        with pytest.raises(BraidError):
            strand_linking(trefoil)
