"""
Tests for relators: closure expansion, splitting, reduction traces and beta reduction.
"""

from fractions import Fraction

import pytest

from src.braids.algebra.braid_core import pure_generator
from src.braids.algebra.relators import (
    MAX_REDUCTION_STEPS,
    BetaDecomposition,
    IntegerVectorGroup,
    ReductionKind,
    ReductionTrace,
    beta_reduce,
    composite_product,
    expansion,
    formal_combination,
    reduce_relator,
    relator_closure_sum,
    replay_step,
    replay_trace,
    resum,
    split_relator,
    vassiliev_defect,
    _Reducer,
)
from src.braids.algebra.subgroup_series import lcs_sample, leaf
from src.braids.exceptions import BraidError
from src.braids.models.schemas import BraidWord, FormalKnotSum, Relator, SignedRelator


@pytest.fixture
def order_two():
    """Length-2 relator on B2 with two level-1 factors."""
    xs = (lcs_sample(2, 1, seed=1), lcs_sample(2, 1, seed=2))
    return Relator(strands=2, xs=xs, y=BraidWord.empty(2))


@pytest.fixture
def mixed():
    """Length-2 relator on B3 whose second factor has level 2."""
    xs = (leaf(pure_generator(1, 2, 3)), lcs_sample(3, 2, seed=3))
    return Relator(strands=3, xs=xs, y=BraidWord.empty(3))


@pytest.fixture
def trace(order_two):
    return reduce_relator(order_two, 2)


class TestExpansion:
    def test_one_term_per_subset(self):
        xs = [pure_generator(1, 2, 3), pure_generator(2, 3, 3)]
        terms = expansion(xs, BraidWord.empty(3))
        assert len(terms) == 4
        assert sorted(sign for sign, _ in terms) == [-1, -1, 1, 1]

    def test_empty_subset_carries_sign_of_order(self):
        xs = [pure_generator(1, 2, 3)] * 3
        sign, word = expansion(xs, BraidWord.empty(3))[0]
        assert sign == -1
        assert word.letters == ()

    def test_defect_vanishes_below_order(self, mixed):
        assert mixed.order == 3
        for m in range(3):
            assert vassiliev_defect(mixed, m) == Fraction(0)


class TestSplit:
    def test_length_one_is_returned_unchanged(self):
        r = Relator(strands=3, xs=(lcs_sample(3, 2, seed=5),), y=BraidWord.empty(3))
        pieces = split_relator(r, 2)
        assert len(pieces) == 1
        assert pieces[0].sign == 1
        assert pieces[0].relator == r

    def test_pieces_have_length_one_and_keep_the_order(self, mixed):
        pieces = split_relator(mixed, 2)
        assert len(pieces) == 2
        for piece in pieces:
            assert piece.relator.length == 1
            assert piece.relator.order >= 2

    def test_pieces_resum_to_the_relator(self, mixed):
        total = FormalKnotSum()
        for piece in split_relator(mixed, 2):
            total = total + relator_closure_sum(piece.relator).scaled(piece.sign)
        assert total.coefficients == relator_closure_sum(mixed).coefficients

    def test_no_factor_of_required_level(self, order_two):
        with pytest.raises(BraidError) as exc:
            split_relator(order_two, 2)
        assert exc.value.code == "PRECONDITION_FAILED"


class TestReduction:
    def test_trace_is_complete_and_replays(self, trace):
        assert trace.complete
        assert replay_trace(trace)

    def test_emitted_relators_have_length_one(self, trace):
        assert trace.emitted
        for item in trace.emitted:
            assert item.relator.length == 1
            assert item.relator.order >= 2

    def test_trace_carries_the_front_factor_around(self, trace):
        kinds = {ReductionKind(step.kind) for step in trace.steps}
        assert {ReductionKind.SWAP, ReductionKind.MOVE_PAST, ReductionKind.ROTATE, ReductionKind.TERMINAL} <= kinds
        assert len(trace.terminals) >= 1

    def test_tampered_rotation_fails_replay(self, trace):
        step = next(s for s in trace.steps if ReductionKind(s.kind) == ReductionKind.ROTATE)
        tampered = step.model_copy(update={"conjugator": BraidWord.empty(step.before.strands)})
        assert replay_step(step, trace.level)
        assert not replay_step(tampered, trace.level)

    def test_order_below_level(self, order_two):
        with pytest.raises(BraidError) as exc:
            reduce_relator(order_two, 3)
        assert exc.value.code == "PRECONDITION_FAILED"

    def test_step_budget(self, order_two):
        with pytest.raises(BraidError) as exc:
            reduce_relator(order_two, 2, max_steps=1)
        assert exc.value.code == "STEP_BUDGET_EXCEEDED"

    def test_highest_level_factor_is_carried(self, mixed):
        trace = reduce_relator(mixed, 3)
        first = trace.steps[0]
        assert ReductionKind(first.kind) == ReductionKind.SWAP
        assert first.position == 0
        assert first.after.xs[0].lcs_level == 2
        assert trace.complete
        assert all(item.relator.order >= 3 for item in trace.emitted)

    def test_opposite_copies_cancel(self, order_two):
        trace = ReductionTrace(source=order_two, level=2)
        reducer = _Reducer(trace, MAX_REDUCTION_STEPS)
        reducer.push(SignedRelator(sign=1, relator=order_two))
        reducer.push(SignedRelator(sign=-1, relator=order_two))
        reducer.drain(2)
        assert trace.steps == []
        assert trace.emitted == []

    def test_three_factors_on_two_strands(self):
        xs = tuple(lcs_sample(2, 1, seed=seed) for seed in (1, 2, 3))
        trace = reduce_relator(Relator(strands=2, xs=xs, y=BraidWord.empty(2)), 3)
        assert trace.complete
        assert len(trace.steps) < MAX_REDUCTION_STEPS
        for item in trace.emitted:
            assert item.relator.length == 1
            assert item.relator.order >= 3

    def test_three_factors_on_three_strands(self):
        xs = tuple(lcs_sample(3, 1, seed=seed) for seed in (0, 1, 2))
        trace = reduce_relator(Relator(strands=3, xs=xs, y=BraidWord.empty(3)), 3)
        assert trace.complete
        assert len(trace.steps) < MAX_REDUCTION_STEPS
        assert trace.terminals
        for item in trace.emitted:
            assert item.relator.length == 1
            assert item.relator.order >= 3


@pytest.mark.slow
class TestReductionAtScale:
    """Length 3 relators of order 3 on three strands, several draws, replayed."""

    @pytest.mark.parametrize("seed", [0, 10, 20, 30])
    def test_reduction_finishes_and_replays(self, seed):
        xs = tuple(lcs_sample(3, 1, seed=seed + i) for i in range(3))
        y = lcs_sample(3, 1, seed=seed + 3).word
        trace = reduce_relator(Relator(strands=3, xs=xs, y=y), 3)
        assert len(trace.steps) < MAX_REDUCTION_STEPS
        assert trace.complete
        assert replay_trace(trace)


class TestComposites:
    def test_composite_product_resums(self):
        h1 = lcs_sample(3, 2, seed=1).word
        h2 = pure_generator(1, 2, 3)
        assert composite_product(h1, h2).resums

    def test_beta_reduce_over_integer_vectors(self):
        group = IntegerVectorGroup(2)
        terms = [(2, (1, 0)), (-1, (0, 3)), (1, (4, 4))]
        decomposition = beta_reduce(terms, group)
        assert decomposition.product == (6, 1)
        assert resum(decomposition, group) == formal_combination(terms, group)

    def test_beta_reduce_of_nothing(self):
        group = IntegerVectorGroup(3)
        decomposition = beta_reduce([], group)
        assert decomposition.product == (0, 0, 0)
        assert resum(decomposition, group) == {}

    def test_cancelling_terms(self):
        group = IntegerVectorGroup(1)
        terms = [(1, (5,)), (-1, (5,))]
        assert formal_combination(terms, group) == {}
        assert resum(beta_reduce(terms, group), group) == {}

    def test_decomposition_is_a_model(self):
        decomposition = BetaDecomposition(product=(1,), composites=[(1, (0,), (0,))])
        assert decomposition.composites[0][0] == 1
