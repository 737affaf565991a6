"""
Relators cl((x_1 − 1)⋯(x_m − 1) · y · t_N) and their reduction.

reduce_relator rewrites a relator of order ≥ n into relators of length 1
and order ≥ n plus connected-sum terms that are combinations of composite
relators. The factor of highest level is swapped to the front and then
carried once around the closure per trip:
swapped past every other factor, moved past y and rotated back to the
front conjugated by t_N. Each swap and move-past leaves behind side
relators that are reduced in turn.
"""

import heapq
import logging
from abc import ABC, abstractmethod
from enum import Enum
from fractions import Fraction
from itertools import combinations, count
from typing import Any, Dict, Generic, Hashable, List, Optional, Sequence, Tuple, TypeVar

from src.braids.algebra.braid_core import (
    compose,
    compose_all,
    conjugate,
    include,
    invert,
    twist,
    twist_power,
)
from src.braids.algebra.group_ring import move_past_sides, swap_sides
from src.braids.algebra.subgroup_series import (
    conjugate_of,
    include_element,
    leaf,
    level_of_commutator,
    product_of,
)
from src.braids.algebra.word_problem import equal
from src.braids.exceptions import BraidError
from src.braids.knots.closure_link import connected_sum
from src.braids.knots.invariants import finite_type_probe, w_series_of_word
from src.braids.models.schemas import (
    BraidsBaseModel,
    BraidWord,
    CertifiedElement,
    ExprConjugate,
    FormalKnotSum,
    KnotHandle,
    Relator,
    Series,
    SignedRelator,
)


logger = logging.getLogger("braids.algebra.relators")

MAX_REDUCTION_STEPS = 10000


# ================================================================
# CLOSURE EXPANSION
# ================================================================

def _word_product(words: Sequence[BraidWord], strands: int) -> BraidWord:
    if not words:
        return BraidWord.empty(strands)
    return compose_all(words[0], *words[1:])


def expansion(xs: Sequence[BraidWord], y: BraidWord) -> List[Tuple[int, BraidWord]]:
    """(sign, w_S · y) for every subset S of the factors of Π (x_i − 1) · y."""
    m = len(xs)
    terms = []
    for size in range(m + 1):
        for subset in combinations(range(m), size):
            word = compose(_word_product([xs[i] for i in subset], y.strands), y)
            terms.append(((-1) ** (m - size), word))
    return terms


def knot_handle(word: BraidWord) -> KnotHandle:
    """Handle for cl(word), fingerprinted by the low-order probe values."""
    return KnotHandle(word=word, fingerprint=finite_type_probe(word).fingerprint)


def relator_closure_sum(r: Relator) -> FormalKnotSum:
    """The relator as a signed sum of knots cl(w_S y t_N)."""
    t = twist(r.strands)
    total = FormalKnotSum()
    for sign, word in expansion([x.word for x in r.xs], r.y):
        total = total + FormalKnotSum.single(knot_handle(compose(word, t)), sign)
    return total


def vassiliev_defect(r: Relator, m: int) -> Fraction:
    """Σ sign · w_m over the closure expansion; zero whenever m < r.order."""
    t = twist(r.strands)
    total = Fraction(0)
    for sign, word in expansion([x.word for x in r.xs], r.y):
        total += sign * w_series_of_word(compose(word, t), m)[m]
    return total


class CompositeDecomposition(BraidsBaseModel):
    """(K1 − U) # (K2 − U) and its split into a composite relator and the unknot."""

    product: FormalKnotSum
    relator: FormalKnotSum
    unknot: FormalKnotSum

    @property
    def resums(self) -> bool:
        return (self.relator + self.unknot).coefficients == self.product.coefficients


def composite_relator(first: BraidWord, second: BraidWord) -> FormalKnotSum:
    """K1 # K2 − K1 − K2 for K_i = cl(p_i t_k)."""
    k = first.strands
    t = twist(k)
    sum_handle = knot_handle(connected_sum(first, second))
    return (
        FormalKnotSum.single(sum_handle)
        + FormalKnotSum.single(knot_handle(compose(first, t)), -1)
        + FormalKnotSum.single(knot_handle(compose(second, t)), -1)
    )


def composite_product(h1: BraidWord, h2: BraidWord) -> CompositeDecomposition:
    k = h1.strands
    identity = BraidWord.empty(k)
    product = FormalKnotSum()
    for a, sign_a in ((h1, 1), (identity, -1)):
        for b, sign_b in ((h2, 1), (identity, -1)):
            product = product + FormalKnotSum.single(knot_handle(connected_sum(a, b)), sign_a * sign_b)
    unknot = FormalKnotSum.single(knot_handle(twist(k)))
    return CompositeDecomposition(product=product, relator=composite_relator(h1, h2), unknot=unknot)


# ================================================================
# SPLITTING
# ================================================================

def split_relator(r: Relator, n: int) -> List[SignedRelator]:
    """
    Length-1 relators whose signed sum equals r, pivoting on a factor of level ≥ n.

    With w_S the ordered product of a subset of the factors before the pivot x
    and w_T of a subset after it, w_S (x − 1) w_T y = (w_S x w_S^{-1} − 1) w_S w_T y.
    """
    levels = [x.lcs_level for x in r.xs]
    if max(levels, default=0) < n:
        raise BraidError("PRECONDITION_FAILED", f"No factor of level >= {n} to split on, levels are {levels}")
    if r.length == 1:
        return [SignedRelator(sign=1, relator=r)]
    pivot = levels.index(max(levels))
    before = [x.word for x in r.xs[:pivot]]
    after = [x.word for x in r.xs[pivot + 1:]]
    pieces = []
    for sign_s, prefix in expansion(before, BraidWord.empty(r.strands)):
        for sign_t, suffix in expansion(after, r.y):
            mover = conjugate_of(r.xs[pivot], invert(prefix))
            relator = Relator(strands=r.strands, xs=(mover,), y=compose(prefix, suffix))
            pieces.append(SignedRelator(sign=sign_s * sign_t, relator=relator))
    logger.debug(f"Split a length {r.length} relator into {len(pieces)} pieces on factor {pivot}")
    return pieces


# ================================================================
# REDUCTION TRACE
# ================================================================

class ReductionKind(str, Enum):
    SWAP = "swap"
    MOVE_PAST = "move-past"
    ROTATE = "rotate"
    ACCUMULATE = "accumulate"
    TERMINAL = "terminal"
    SPLIT = "split"
    EMIT = "emit"


class TerminalPiece(BraidsBaseModel):
    """cl((t^{-K} x t^K − 1) · rest · t_N) = cl(rest · t_K) # cl((x − 1) t_K)."""

    sign: int
    left: Relator
    right: CertifiedElement
    offset: int

    def composites(self) -> List[Tuple[int, BraidWord, BraidWord]]:
        """(c, a, x) with the piece equal to Σ c · (cl(a t) # cl(x t) − cl(a t) − cl(x t))."""
        k = self.offset
        x = BraidWord.of(k, self.right.word.letters)
        return [
            (self.sign * sign, BraidWord.of(k, word.letters), x)
            for sign, word in expansion([e.word for e in self.left.xs], self.left.y)
        ]


class ReductionStep(BraidsBaseModel):
    kind: ReductionKind
    sign: int
    before: Relator
    after: Optional[Relator] = None
    side: Tuple[SignedRelator, ...] = ()
    position: Optional[int] = None
    conjugator: Optional[BraidWord] = None
    moved: Optional[BraidWord] = None
    terminal: Optional[TerminalPiece] = None
    verified: bool = True


class ReductionTrace(BraidsBaseModel):
    source: Relator
    level: int
    steps: List[ReductionStep] = []
    emitted: List[SignedRelator] = []
    terminals: List[TerminalPiece] = []

    @property
    def complete(self) -> bool:
        return all(step.verified for step in self.steps)


def _width(word: BraidWord) -> int:
    """Number of leading strands the word touches."""
    return max((abs(x) for x in word.letters), default=0) + 1


def _rotated(x: CertifiedElement, strands: int) -> CertifiedElement:
    """t^{-1} x t, spelled as a one-strand letter shift."""
    word = BraidWord.of(strands, (e + 1 if e > 0 else e - 1 for e in x.word.letters))
    tree = ExprConjugate(child=x.certificate, by=twist(strands))
    return CertifiedElement.model_construct(word=word, series=x.series, level=x.level, certificate=tree)


def _relator(strands: int, xs: Sequence[CertifiedElement], y: BraidWord) -> Relator:
    return Relator.model_construct(strands=strands, xs=tuple(xs), y=y)


def _ring_equal(sides) -> bool:
    left, right = sides
    return left.terms == right.terms


def _swap_pieces(r: Relator, position: int) -> Tuple[Relator, Relator, Relator]:
    """The swapped relator and the two side relators of one swap."""
    xs = list(r.xs)
    a, b = xs[position], xs[position + 1]
    c = level_of_commutator(a, b)
    swapped = xs[:position] + [b, a] + xs[position + 2:]
    shorter = xs[:position] + [c] + xs[position + 2:]
    longer = xs[:position] + [c, product_of([b, a])] + xs[position + 2:]
    return (
        _relator(r.strands, swapped, r.y),
        _relator(r.strands, shorter, r.y),
        _relator(r.strands, longer, r.y),
    )


def _move_past_piece(r: Relator) -> Relator:
    x = r.xs[-1]
    bracket = level_of_commutator(x, leaf(r.y, Series.LCS))
    return _relator(r.strands, list(r.xs[:-1]) + [bracket], compose(r.y, x.word))


def _terminal_checks(relator: Relator, offset: int, original: CertifiedElement) -> bool:
    """Shifted front factor commutes with the rest, and the closure is the connected sum."""
    shifted = relator.xs[0].word
    rest = [x.word for x in relator.xs[1:]] + [relator.y]
    if not all(equal(compose(word, shifted), compose(shifted, word)) for word in rest):
        return False
    m = 2 * offset
    left = BraidWord.of(offset, _word_product(rest, relator.strands).letters)
    right = BraidWord.of(offset, original.word.letters)
    combined = BraidWord.of(m, left.letters + shifted.letters + twist(m).letters)
    return equal(combined, connected_sum(left, right))


def _relator_key(r: Relator) -> Tuple:
    return (r.strands, tuple(x.word.letters for x in r.xs), r.y.letters)


def _front_position(r: Relator) -> int:
    """Index of the first factor of highest level; that factor is carried around."""
    levels = [x.lcs_level for x in r.xs]
    return levels.index(max(levels))


class _Reducer:
    """
    Work list over signed relators, appending to one trace.

    Pending relators are popped longest first and, at equal length, lowest
    order first. Every side relator is shorter, or as long and of higher
    order, than the relator that produced it, so all copies of a relator are
    merged before it is reduced and opposite copies cancel.
    """

    def __init__(self, trace: ReductionTrace, max_steps: int):
        self.trace = trace
        self.max_steps = max_steps
        self.pending: Dict[Tuple, List] = {}
        self.queue: List[Tuple[int, int, int, Tuple]] = []
        self.counter = count()

    def record(self, step: ReductionStep) -> None:
        if len(self.trace.steps) >= self.max_steps:
            logger.warning(f"Relator reduction passed {self.max_steps} steps")
            raise BraidError("STEP_BUDGET_EXCEEDED", f"Relator reduction exceeded {self.max_steps} steps")
        if not step.verified:
            logger.warning(f"Unverified {ReductionKind(step.kind).value} step at index {len(self.trace.steps)}")
        self.trace.steps.append(step)

    def push(self, item: SignedRelator) -> None:
        key = _relator_key(item.relator)
        entry = self.pending.get(key)
        if entry is not None:
            entry[0] += item.sign
            return
        self.pending[key] = [item.sign, item.relator]
        heapq.heappush(self.queue, (-item.relator.length, item.relator.order, next(self.counter), key))

    def run(self, r: Relator, n: int) -> None:
        self.push(SignedRelator(sign=1, relator=r))
        self.drain(n)

    def drain(self, n: int) -> None:
        while self.queue:
            key = heapq.heappop(self.queue)[-1]
            sign, relator = self.pending.pop(key)
            if sign == 0:
                logger.debug(f"Copies of a length {relator.length} relator cancelled")
                continue
            self.reduce(relator, sign, n)

    def reduce(self, r: Relator, sign: int, n: int) -> None:
        if r.order < n:
            raise BraidError("INCONSISTENT_DATA", f"Relator of order {r.order} reached below {n}")
        if r.length == 1:
            self.record(ReductionStep(kind=ReductionKind.EMIT, sign=sign, before=r))
            self.trace.emitted.append(SignedRelator(sign=sign, relator=r))
            return
        # Any factor of level >= n splits, which covers every relator of order >= length * n.
        if max(x.lcs_level for x in r.xs) >= n:
            pieces = split_relator(r, n)
            side = tuple(SignedRelator(sign=sign * p.sign, relator=p.relator) for p in pieces)
            self.record(ReductionStep(kind=ReductionKind.SPLIT, sign=sign, before=r, side=side))
            for item in side:
                self.push(item)
            return
        self.carry_around(r, sign)

    def swap(self, current: Relator, position: int, sign: int) -> Relator:
        swapped, shorter, longer = _swap_pieces(current, position)
        a, b = current.xs[position], current.xs[position + 1]
        side = (SignedRelator(sign=sign, relator=shorter), SignedRelator(sign=sign, relator=longer))
        self.record(ReductionStep(
            kind=ReductionKind.SWAP, sign=sign, before=current, after=swapped, side=side,
            position=position, verified=_ring_equal(swap_sides(a.word, b.word)),
        ))
        for item in side:
            self.push(item)
        return swapped

    def carry_around(self, r: Relator, sign: int) -> None:
        current = r
        for position in range(_front_position(r) - 1, -1, -1):
            current = self.swap(current, position, sign)

        original = current.xs[0]
        rest = [x.word for x in current.xs[1:]] + [current.y]
        offset = max(max(_width(word) for word in rest), _width(original.word))
        strands = max(current.strands, 2 * offset)
        t = twist(strands)
        current = _relator(strands, [include_element(x, strands) for x in current.xs], include(current.y, strands))

        for _ in range(offset):
            for position in range(current.length - 1):
                current = self.swap(current, position, sign)

            moved = _move_past_piece(current)
            x = current.xs[-1]
            self.record(ReductionStep(
                kind=ReductionKind.MOVE_PAST, sign=sign, before=current,
                side=(SignedRelator(sign=sign, relator=moved),),
                verified=_ring_equal(move_past_sides(x.word, current.y)),
            ))
            self.push(SignedRelator(sign=sign, relator=moved))

            rotated = _rotated(x, strands)
            after = _relator(strands, [rotated] + list(current.xs[:-1]), current.y)
            self.record(ReductionStep(
                kind=ReductionKind.ROTATE, sign=sign, before=current, after=after, conjugator=t,
                verified=equal(conjugate(x.word, t), rotated.word),
            ))
            current = after

        front = include(original.word, strands)
        self.record(ReductionStep(
            kind=ReductionKind.ACCUMULATE, sign=sign, before=current, moved=front,
            conjugator=twist_power(strands, offset),
            verified=equal(conjugate(front, twist_power(strands, offset)), current.xs[0].word),
        ))

        piece = TerminalPiece(
            sign=sign,
            left=_relator(strands, current.xs[1:], current.y),
            right=include_element(original, strands),
            offset=offset,
        )
        self.record(ReductionStep(
            kind=ReductionKind.TERMINAL, sign=sign, before=current, terminal=piece,
            verified=_terminal_checks(current, offset, original),
        ))
        self.trace.terminals.append(piece)


def reduce_relator(r: Relator, n: int, max_steps: int = MAX_REDUCTION_STEPS) -> ReductionTrace:
    """Trace rewriting r into length-1 relators of order ≥ n and composite-relator terms."""
    if r.order < n:
        raise BraidError("PRECONDITION_FAILED", f"Relator order {r.order} is below {n}")
    trace = ReductionTrace(source=r, level=n)
    _Reducer(trace, max_steps).run(r, n)
    logger.info(
        f"Reduced a length {r.length} order {r.order} relator in {len(trace.steps)} steps: "
        f"{len(trace.emitted)} length-1 relators, {len(trace.terminals)} connected-sum terms"
    )
    return trace


def _same_relator(left: Relator, right: Relator) -> bool:
    return (
        left.strands == right.strands
        and left.y == right.y
        and [x.word for x in left.xs] == [x.word for x in right.xs]
    )


def replay_step(step: ReductionStep, n: int) -> bool:
    """Recheck one step from its recorded relators."""
    kind = ReductionKind(step.kind)
    before = step.before
    if kind == ReductionKind.SWAP:
        swapped, shorter, longer = _swap_pieces(before, step.position)
        a, b = before.xs[step.position], before.xs[step.position + 1]
        return (
            _same_relator(swapped, step.after)
            and len(step.side) == 2
            and _same_relator(shorter, step.side[0].relator)
            and _same_relator(longer, step.side[1].relator)
            and _ring_equal(swap_sides(a.word, b.word))
        )
    if kind == ReductionKind.MOVE_PAST:
        return _same_relator(_move_past_piece(before), step.side[0].relator) and _ring_equal(
            move_past_sides(before.xs[-1].word, before.y)
        )
    if kind == ReductionKind.ROTATE:
        x = before.xs[-1].word
        return (
            [e.word for e in step.after.xs[1:]] == [e.word for e in before.xs[:-1]]
            and equal(conjugate(x, step.conjugator), step.after.xs[0].word)
        )
    if kind == ReductionKind.ACCUMULATE:
        return equal(conjugate(step.moved, step.conjugator), before.xs[0].word)
    if kind == ReductionKind.TERMINAL:
        piece = step.terminal
        return _terminal_checks(before, piece.offset, piece.right)
    if kind == ReductionKind.SPLIT:
        expected = split_relator(before, n)
        return len(expected) == len(step.side) and all(
            e.sign * step.sign == s.sign and _same_relator(e.relator, s.relator)
            for e, s in zip(expected, step.side)
        )
    return before.length == 1 and before.order >= n


def replay_trace(trace: ReductionTrace) -> bool:
    """Recheck every step; failures are logged by index."""
    ok = True
    for index, step in enumerate(trace.steps):
        if not replay_step(step, trace.level):
            logger.warning(f"Replay failed at step {index} ({ReductionKind(step.kind).value})")
            ok = False
    return ok


# ================================================================
# COMPOSITE RELATOR REDUCTION IN ABELIAN GROUPS
# ================================================================

Element = TypeVar("Element")


class AbelianGroup(ABC, Generic[Element]):
    """Effective equality and multiplication for beta_reduce."""

    @abstractmethod
    def identity(self) -> Element:
        pass

    @abstractmethod
    def multiply(self, a: Element, b: Element) -> Element:
        pass

    @abstractmethod
    def inverse(self, a: Element) -> Element:
        pass

    def key(self, a: Element) -> Hashable:
        return a


class IntegerVectorGroup(AbelianGroup[Tuple[int, ...]]):
    """Z^d under addition."""

    def __init__(self, dimension: int):
        self.dimension = dimension

    def identity(self) -> Tuple[int, ...]:
        return (0,) * self.dimension

    def multiply(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inverse(self, a):
        return tuple(-x for x in a)


class FingerprintGroup(AbelianGroup[Tuple[Fraction, ...]]):
    """Knots modulo the additive invariants w_2, w_3 and a_2, which turn # into addition."""

    def identity(self):
        return (Fraction(0),) * 3

    def multiply(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inverse(self, a):
        return tuple(-x for x in a)

    @staticmethod
    def element_of(word: BraidWord) -> Tuple[Fraction, ...]:
        probe = finite_type_probe(word)
        return (probe.w2, probe.w3, Fraction(probe.a2))


class BetaDecomposition(BraidsBaseModel):
    """s = [product] + Σ c · ([a b] − [a] − [b])."""

    product: Any
    composites: List[Tuple[int, Any, Any]] = []


def _add(combination: Dict[Hashable, List], group: AbelianGroup, element, coefficient: int) -> None:
    key = group.key(element)
    entry = combination.setdefault(key, [element, 0])
    entry[1] += coefficient
    if entry[1] == 0:
        del combination[key]


def resum(decomposition: BetaDecomposition, group: AbelianGroup) -> Dict[Hashable, int]:
    """The formal combination a decomposition stands for, keyed by group.key."""
    combination: Dict[Hashable, List] = {}
    _add(combination, group, decomposition.product, 1)
    for coefficient, a, b in decomposition.composites:
        _add(combination, group, group.multiply(a, b), coefficient)
        _add(combination, group, a, -coefficient)
        _add(combination, group, b, -coefficient)
    return {key: entry[1] for key, entry in combination.items()}


def beta_reduce(terms: Sequence[Tuple[int, Any]], group: AbelianGroup) -> BetaDecomposition:
    """
    Write Σ z_i [a_i] as [Π a_i^{z_i}] plus composite relators.

    A negative term uses −[a] = [a^{-1}] + R(a, a^{-1}) + R(1, 1); two
    positive terms merge by [a] + [b] = [ab] − R(a, b). An empty total is
    [1] + R(1, 1).
    """
    composites: List[Tuple[int, Any, Any]] = []
    one = group.identity()
    positives: List[Any] = []
    for coefficient, element in terms:
        if coefficient >= 0:
            positives.extend([element] * coefficient)
            continue
        for _ in range(-coefficient):
            composites.append((1, element, group.inverse(element)))
            composites.append((1, one, one))
            positives.append(group.inverse(element))

    if not positives:
        composites.append((1, one, one))
        return BetaDecomposition(product=one, composites=composites)

    product = positives[0]
    for element in positives[1:]:
        composites.append((-1, product, element))
        product = group.multiply(product, element)
    logger.debug(f"Beta reduction used {len(composites)} composite relators")
    return BetaDecomposition(product=product, composites=composites)


def formal_combination(terms: Sequence[Tuple[int, Any]], group: AbelianGroup) -> Dict[Hashable, int]:
    combination: Dict[Hashable, List] = {}
    for coefficient, element in terms:
        if coefficient:
            _add(combination, group, element, coefficient)
    return {key: entry[1] for key, entry in combination.items()}
