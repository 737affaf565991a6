"""
Tests for equivalence witnesses: Markov joins, chains, slides and inverses.
"""

import pytest

from src.braids.algebra.braid_core import compose, invert, is_pure, pure_generator, random_pure_word, twist
from src.braids.algebra.subgroup_series import lcs_sample, leaf, seeded_rng
from src.braids.algebra.word_problem import equal
from src.braids.exceptions import BraidError
from src.braids.knots.closure_link import markov, phi_word
from src.braids.knots.equivalence import (
    collapse,
    compose_witnesses,
    connect_witnesses,
    join_moves,
    lcs_inverse,
    lift_stabilization,
    markov_join,
    pure_presentation,
    slide,
    slide_chain,
    stabilized,
    strong_inverse,
)
from src.braids.knots.invariants import battery, finite_type_probe, jones_of_word
from src.braids.models.schemas import (
    BraidWord,
    EquivalenceWitness,
    MarkovKind,
    MarkovStep,
    Series,
    StabilizationData,
)


def word(strands, *letters):
    return BraidWord(strands=strands, letters=letters)


def closes_to(witness):
    """The braid whose closure is the far end of a witness."""
    return compose(witness.mover.word, witness.base)


@pytest.fixture
def knot_on_three():
    return compose(pure_generator(1, 3, 3), twist(3))


class TestMarkovJoin:
    @pytest.mark.parametrize("signs", [(1, 1), (1, -1), (-1, 1), (-1, -1)])
    def test_both_chains_reach_the_join(self, knot_on_three, signs):
        c1 = StabilizationData(alpha=word(3, 1, -2), sign=signs[0])
        c2 = StabilizationData(alpha=word(3, 2, 2, 1), sign=signs[1])
        d = markov_join(knot_on_three, c1, c2)
        first, second = join_moves(knot_on_three, c1, c2)
        for start, moves in ((stabilized(knot_on_three, c1), first), (stabilized(knot_on_three, c2), second)):
            end = start
            for move in moves:
                end = markov(end, move)
            assert end.strands == d.strands == 5
            assert equal(end, d)

    def test_join_keeps_the_knot(self, knot_on_three):
        c1 = StabilizationData(alpha=word(3, 2), sign=1)
        c2 = StabilizationData(alpha=word(3, -1), sign=-1)
        assert battery(markov_join(knot_on_three, c1, c2)) == battery(knot_on_three)

    def test_stabilization_data_sign(self):
        with pytest.raises(Exception):
            StabilizationData(alpha=word(2), sign=0)

    def test_lift_stabilization_strands(self):
        h = lcs_sample(3, 2, seed=1)
        lifted = lift_stabilization(h, word(3, 1), word(4, 3, 1), 1)
        assert lifted.strands == 4
        assert lifted.level == h.level
        with pytest.raises(BraidError) as exc:
            lift_stabilization(h, word(3, 1), word(3, 1), 1)
        assert exc.value.code == "STRAND_MISMATCH"


class TestComposeWitnesses:
    def test_without_moves(self, knot_on_three):
        h1, h2 = lcs_sample(3, 2, seed=1), lcs_sample(3, 3, seed=2)
        w1 = EquivalenceWitness(strands=3, base=knot_on_three, mover=h1)
        w2 = EquivalenceWitness(strands=3, base=closes_to(w1), mover=h2)
        result = compose_witnesses(w1, w2)
        assert result.base == knot_on_three
        assert result.level == 2
        assert equal(closes_to(result), closes_to(w2))

    def test_through_a_conjugation(self, knot_on_three):
        h1, h2 = lcs_sample(3, 2, seed=3), lcs_sample(3, 2, seed=4)
        g = word(3, 2, -1, 2)
        w1 = EquivalenceWitness(strands=3, base=knot_on_three, mover=h1)
        chain = [MarkovStep(kind=MarkovKind.CONJUGATE, by=g)]
        w2 = EquivalenceWitness(strands=3, base=markov(closes_to(w1), chain[0]), mover=h2)
        result = compose_witnesses(w1, w2, chain)
        assert equal(closes_to(result), closes_to(w2))

    def test_through_a_stabilization_and_back(self, knot_on_three):
        h1, h2 = lcs_sample(3, 2, seed=5), lcs_sample(3, 2, seed=6)
        w1 = EquivalenceWitness(strands=3, base=knot_on_three, mover=h1)
        chain = [MarkovStep(kind=MarkovKind.STABILIZE, sign=1), MarkovStep(kind=MarkovKind.DESTABILIZE)]
        w2 = EquivalenceWitness(strands=3, base=closes_to(w1), mover=h2)
        result = compose_witnesses(w1, w2, chain)
        assert result.strands == 4
        assert battery(result.base) == battery(knot_on_three)
        assert battery(closes_to(result)) == battery(closes_to(w2))

    def test_chain_must_end_at_the_second_base(self, knot_on_three):
        h = lcs_sample(3, 2, seed=1)
        w1 = EquivalenceWitness(strands=3, base=knot_on_three, mover=h)
        w2 = EquivalenceWitness(strands=3, base=knot_on_three, mover=h)
        with pytest.raises(BraidError) as exc:
            compose_witnesses(w1, w2)
        assert exc.value.code == "CHAIN_MISMATCH"


class TestSlide:
    @pytest.fixture
    def x(self):
        return leaf(word(2, 1, 1, 1, 1))

    @pytest.fixture
    def y(self):
        return word(2, -1, -1)

    def test_chain_ends_in_a_connected_sum(self, x, y):
        chain = slide_chain(x, y)
        assert len(chain) == 3
        assert jones_of_word(chain[-1]) == jones_of_word(phi_word(x.word)) * jones_of_word(phi_word(y))

    def test_each_witness_links_neighbours(self, x, y):
        chain = slide_chain(x, y)
        witnesses = slide(x, y)
        assert len(witnesses) == 2
        for i, witness in enumerate(witnesses):
            assert witness.base == chain[i + 1]
            assert witness.level == 2
            assert Series(witness.series) == Series.LCS
            assert jones_of_word(closes_to(witness)) == jones_of_word(chain[i])

    def test_collapse_lands_one_level_deeper(self, x):
        h = collapse(x)
        assert h.strands == 4
        assert h.lcs_level >= 2
        expected = jones_of_word(phi_word(x.word)) * jones_of_word(phi_word(invert(x.word)))
        assert jones_of_word(phi_word(h.word)) == expected

    def test_strong_inverse(self, x):
        inverse, witnesses = strong_inverse(x)
        assert inverse == compose(invert(x.word), twist(2))
        assert len(witnesses) == 2

    def test_connect_witnesses(self):
        w1 = EquivalenceWitness(strands=2, base=word(2, 1, 1, 1), mover=leaf(word(2, 1, 1)))
        w2 = EquivalenceWitness(strands=2, base=word(2, -1, -1, -1), mover=leaf(word(2, -1, -1)))
        joined = connect_witnesses(w1, w2)
        assert joined.strands == 4
        assert jones_of_word(joined.base) == jones_of_word(w1.base) * jones_of_word(w2.base)
        far = jones_of_word(closes_to(w1)) * jones_of_word(closes_to(w2))
        assert jones_of_word(closes_to(joined)) == far


class TestInverses:
    def test_pure_presentation(self, trefoil, figure_eight):
        for knot in (trefoil, figure_eight):
            p = pure_presentation(knot)
            assert is_pure(p)
            assert jones_of_word(phi_word(p)) == jones_of_word(knot)

    def test_pure_presentation_needs_a_knot(self):
        with pytest.raises(BraidError) as exc:
            pure_presentation(word(2, 1, 1))
        assert exc.value.code == "NOT_A_KNOT"

    def test_low_levels_are_trivial(self, trefoil):
        assert lcs_inverse(trefoil, 1) == BraidWord.empty(1)

    @pytest.mark.slow
    def test_inverse_cancels_w2(self, trefoil):
        inverse = lcs_inverse(trefoil, 3)
        assert finite_type_probe(trefoil).w2 + finite_type_probe(inverse).w2 == 0


@pytest.mark.slow
class TestFiniteTypeAgreement:
    """Closures of b and p·b for p in LCS_n share the invariants of order below n."""

    @pytest.fixture
    def knots(self):
        rng = seeded_rng(7)
        return [compose(random_pure_word(rng, 4, 2), twist(4)) for _ in range(25)]

    def test_order_two_at_level_three(self, knots):
        for trial, b in enumerate(knots):
            p = lcs_sample(4, 3, seed=trial)
            before, after = finite_type_probe(b), finite_type_probe(compose(p.word, b))
            assert (before.w2, before.a2) == (after.w2, after.a2), b.text

    def test_order_three_at_level_four(self, knots):
        for trial, b in enumerate(knots):
            p = lcs_sample(4, 4, seed=trial)
            assert p.lcs_level >= 4
            before, after = finite_type_probe(b), finite_type_probe(compose(p.word, b))
            assert (before.w2, before.w3, before.a2, before.a3) == (after.w2, after.w3, after.a2, after.a3), b.text
