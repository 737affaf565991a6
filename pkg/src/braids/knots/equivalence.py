"""
H-equivalence witnesses: lifting movers through Markov moves, joining two
stabilizations of one braid, composing witnesses along a Markov chain,
sliding a pure braid around a closure, and inverses of knots modulo the
lower central and derived series.

A witness (b, h) relates cl(b) to cl(h · b). Conjugating both parts or
stabilizing the base (with h included) keeps it a witness; destabilizing
does not, which is why compose_witnesses first rearranges the chain so all
destabilizations come after all stabilizations.
"""

import logging
from typing import List, NamedTuple, Optional, Sequence, Tuple

from src.braids.algebra.braid_core import (
    compose,
    compose_all,
    conjugate,
    include,
    invert,
    is_pure,
    permutation_braid,
    permutation_of,
    power,
    twist,
    twist_power,
)
from src.braids.algebra.subgroup_series import (
    conjugate_of,
    ds_commutator,
    include_element,
    inverse_of,
    leaf,
    level_of_commutator,
    product_of,
    strand_shift,
)
from src.braids.algebra.word_problem import equal
from src.braids.exceptions import BraidError, require_same_strands
from src.braids.knots.closure_link import (
    connected_sum,
    destabilization,
    pure_connected_sum,
    require_knot,
    stabilize,
)
from src.braids.models.schemas import (
    BraidWord,
    CertifiedElement,
    EquivalenceWitness,
    MarkovKind,
    MarkovStep,
    Permutation,
    Series,
    StabilizationData,
)


logger = logging.getLogger("braids.knots.equivalence")


# ================================================================
# STABILIZATIONS
# ================================================================

def lift_stabilization(h: CertifiedElement, a: BraidWord, b: BraidWord, sign: int) -> CertifiedElement:
    """
    j = b a^{-1} h a b^{-1} in H_{k+1}, for y with b^{-1} y b = a^{-1} x a σ_k^{sign}.

    Then cl(j · y) is the closure of a stabilization of a conjugate of h · x.
    """
    if sign not in (1, -1):
        raise BraidError("INCONSISTENT_DATA", f"Stabilization sign must be +1 or -1, got {sign}")
    m = h.strands + 1
    if a.strands not in (h.strands, m) or b.strands != m:
        raise BraidError(
            "STRAND_MISMATCH",
            f"Lifting from B_{h.strands} needs a in B_{h.strands} or B_{m} and b in B_{m}",
        )
    return conjugate_of(include_element(h, m), compose(include(a, m), invert(b)))


def stabilized(b: BraidWord, data: StabilizationData) -> BraidWord:
    """α^{-1} b α σ_k^{sign} on k + 1 strands."""
    require_same_strands(b, data.alpha)
    return stabilize(conjugate(b, data.alpha), data.sign)


def markov_join(b: BraidWord, c1: StabilizationData, c2: StabilizationData) -> BraidWord:
    """
    A braid d on k + 2 strands whose closure is reached from both stabilizations
    of b by stabilizing once more and conjugating.

    With w = α1^{-1} b α1 and α = α1^{-1} α2 the stabilizations are w σ_k^{ε1}
    and α^{-1} w α σ_k^{ε2}, and d = α^{-1} σ_{k+1} σ_k^{ε1} w α σ_{k+1}^{-1} σ_k^{ε2}.
    """
    k = require_same_strands(b, c1.alpha, c2.alpha)
    w = conjugate(b, c1.alpha)
    alpha = compose(invert(c1.alpha), c2.alpha)
    letters = (
        invert(alpha).letters
        + (k + 1, c1.sign * k)
        + w.letters
        + alpha.letters
        + (-(k + 1), c2.sign * k)
    )
    return BraidWord.of(k + 2, letters)


class _Step(NamedTuple):
    """C(word), U(sign) or D(sign, target) on the braid in hand."""

    kind: str
    word: Optional[BraidWord] = None
    sign: int = 1
    target: Optional[BraidWord] = None


def _join_steps(w: BraidWord, alpha: BraidWord, first: int, second: int) -> Tuple[List[_Step], List[_Step]]:
    """
    Moves from w σ^{first} up to the join braid and from there down to
    α^{-1} w α σ^{second}, with σ = σ_m, τ = σ_{m+1} and m = w.strands.
    """
    m = w.strands
    up, top = m + 1, m + 2
    rises = [
        _Step("C", include(w, up)),
        _Step("C", BraidWord.of(up, alpha.letters + (m,))),
        _Step("U", sign=second),
        _Step("C", BraidWord.of(top, (-m, -(m + 1)))),
    ]
    middle = BraidWord.of(up, (m,) + w.letters + alpha.letters + (second * m,) + invert(alpha).letters + (-m,))
    falls = [
        _Step("C", BraidWord.of(top, invert(alpha).letters + (-m,) + (first * (m + 1),))),
        _Step("D", sign=first, target=middle),
        _Step("C", BraidWord.of(up, (m,) + alpha.letters)),
    ]
    return rises, falls


def _as_moves(steps: Sequence[_Step]) -> List[MarkovStep]:
    moves = []
    for step in steps:
        if step.kind == "C":
            moves.append(MarkovStep(kind=MarkovKind.CONJUGATE, by=step.word))
        elif step.kind == "U":
            moves.append(MarkovStep(kind=MarkovKind.STABILIZE, sign=step.sign))
        else:
            moves.append(MarkovStep(kind=MarkovKind.DESTABILIZE))
    return moves


def join_moves(
    b: BraidWord, c1: StabilizationData, c2: StabilizationData
) -> Tuple[List[MarkovStep], List[MarkovStep]]:
    """Markov moves taking stabilized(b, c1) and stabilized(b, c2) to braids equal to markov_join."""
    k = require_same_strands(b, c1.alpha, c2.alpha)
    w = conjugate(b, c1.alpha)
    alpha = compose(invert(c1.alpha), c2.alpha)
    first, _ = _join_steps(w, alpha, c1.sign, c2.sign)
    up, top = k + 1, k + 2
    second = [
        _Step("C", BraidWord.of(up, invert(alpha).letters + (-k,))),
        _Step("U", sign=c1.sign),
        _Step("C", BraidWord.of(top, (-c1.sign * (k + 1), k) + alpha.letters)),
    ]
    return _as_moves(first), _as_moves(second)


# ================================================================
# CHAINS
# ================================================================

def _apply(x: BraidWord, step: _Step) -> BraidWord:
    if step.kind == "C":
        require_same_strands(x, step.word)
        return conjugate(x, step.word)
    if step.kind == "U":
        return stabilize(x, step.sign)
    target = step.target
    top = stabilize(target, step.sign)
    if x.strands != top.strands or not equal(x, top):
        raise BraidError("CHAIN_MISMATCH", f"{x.text} is not {top.text}, cannot destabilize")
    return target


def _lower(start: BraidWord, chain: Sequence[MarkovStep]) -> Tuple[List[_Step], BraidWord]:
    """Internal steps for a chain; each destabilization becomes an explicit conjugation and drop."""
    x = start
    steps: List[_Step] = []
    for move in chain:
        kind = MarkovKind(move.kind)
        if kind == MarkovKind.CONJUGATE:
            if move.by is None:
                raise BraidError("INCONSISTENT_DATA", "A conjugation move needs a conjugator")
            lowered = [_Step("C", move.by)]
        elif kind == MarkovKind.STABILIZE:
            lowered = [_Step("U", sign=move.sign if move.sign is not None else 1)]
        else:
            g, w, sign = destabilization(x)
            lowered = [_Step("C", g), _Step("D", sign=sign, target=w)]
        for step in lowered:
            x = _apply(x, step)
        steps.extend(lowered)
    return steps, x


def _first_valley(steps: Sequence[_Step]) -> Optional[Tuple[int, int]]:
    """Indices (i, j) of a D at i followed by conjugations only and then a U at j."""
    for i, step in enumerate(steps):
        if step.kind != "D":
            continue
        j = i + 1
        while j < len(steps) and steps[j].kind == "C":
            j += 1
        if j < len(steps) and steps[j].kind == "U":
            return i, j
    return None


def peak_form(steps: Sequence[_Step]) -> List[_Step]:
    """
    Reorder so that no destabilization precedes a stabilization.

    Each pass replaces one D C* U by the join moves, which stabilize first;
    the number of (D, U) pairs in the wrong order drops by one per pass.
    """
    steps = list(steps)
    passes = 0
    while True:
        valley = _first_valley(steps)
        if valley is None:
            break
        i, j = valley
        w = steps[i].target
        alpha = BraidWord.empty(w.strands)
        for step in steps[i + 1: j]:
            alpha = compose(alpha, step.word)
        rises, falls = _join_steps(w, alpha, steps[i].sign, steps[j].sign)
        steps = steps[:i] + rises + falls + steps[j + 1:]
        passes += 1
    logger.debug(f"Chain in peak form after {passes} exchanges, {len(steps)} steps")
    return steps


def _climb(base: BraidWord, mover: CertifiedElement, steps: Sequence[_Step]) -> Tuple[BraidWord, CertifiedElement]:
    for step in steps:
        if step.kind == "C":
            base, mover = conjugate(base, step.word), conjugate_of(mover, step.word)
        elif step.kind == "U":
            base, mover = stabilize(base, step.sign), include_element(mover, base.strands + 1)
        else:
            raise BraidError("INCONSISTENT_DATA", "Destabilization inside the rising part of a chain")
    return base, mover


def compose_witnesses(
    w1: EquivalenceWitness, w2: EquivalenceWitness, chain: Sequence[MarkovStep] = ()
) -> EquivalenceWitness:
    """
    One witness from cl(w1.base) to cl(w2.mover · w2.base), given Markov moves
    taking w1.mover · w1.base to w2.base.

    The result's mover is the product of both lifted movers at the lower level.
    """
    start = compose(w1.mover.word, w1.base)
    lowered, end = _lower(start, chain)
    if end.strands != w2.base.strands or not equal(end, w2.base):
        raise BraidError("CHAIN_MISMATCH", f"Chain ends at {end.text}, second witness starts at {w2.base.text}")

    steps = peak_form(lowered)
    top = next((i for i, step in enumerate(steps) if step.kind == "D"), len(steps))
    rising, falling = steps[:top], steps[top:]
    if any(step.kind == "U" for step in falling):
        raise BraidError("INCONSISTENT_DATA", "Chain is not in peak form")

    base1, mover1 = _climb(w1.base, w1.mover, rising)
    reversed_falls = [
        _Step("C", invert(step.word)) if step.kind == "C" else _Step("U", sign=step.sign)
        for step in reversed(falling)
    ]
    base2, mover2 = _climb(w2.base, w2.mover, reversed_falls)
    if base1.strands != base2.strands or not equal(compose(mover1.word, base1), base2):
        raise BraidError("CHAIN_MISMATCH", "The two witnesses do not meet at the top of the chain")

    mover = product_of([mover2, mover1])
    logger.info(
        f"Composed witnesses through {len(steps)} moves on {base1.strands} strands, "
        f"mover {mover.series} level {mover.level}"
    )
    return EquivalenceWitness(strands=base1.strands, base=base1, mover=mover)


# ================================================================
# SLIDES AND CONNECTED SUMS
# ================================================================

def slide_chain(x: CertifiedElement, y: BraidWord) -> List[BraidWord]:
    """b_i = x t_{2k}^{-i} y t_{2k}^{i+1} for i = 0..k, spelled literally."""
    k = require_same_strands(x.word, y)
    m = 2 * k
    X, Y = include(x.word, m), include(y, m)
    return [
        BraidWord.of(m, X.letters + twist_power(m, -i).letters + Y.letters + twist_power(m, i + 1).letters)
        for i in range(k + 1)
    ]


def slide(x: CertifiedElement, y) -> List[EquivalenceWitness]:
    """
    Witnesses sliding y once around cl(x y t_k) until it sits beside x as a
    connected summand.

    Witness i has base b_{i+1} and mover [Y_i, x] with Y_i = t^{-i-1} y t^{i+1},
    so its two closures are cl(b_{i+1}) and cl(b_i). y is a pure braid or a
    certified element; a certified y keeps its certificate inside Y_i.
    """
    y_element = y if isinstance(y, CertifiedElement) else leaf(y, Series(x.series))
    k = require_same_strands(x.word, y_element.word)
    m = 2 * k
    X, Y = include_element(x, m), include_element(y_element, m)
    chain = slide_chain(x, y_element.word)
    witnesses = []
    for i in range(k):
        moved = conjugate_of(Y, twist_power(m, i + 1))
        if Series(x.series) == Series.DS:
            mover = ds_commutator(moved, X)
        else:
            mover = level_of_commutator(moved, X)
        witnesses.append(EquivalenceWitness(strands=m, base=chain[i + 1], mover=mover))
    logger.debug(f"Slide on {m} strands produced {len(witnesses)} witnesses at level {witnesses[-1].level if witnesses else 0}")
    return witnesses


def collapse(x: CertifiedElement) -> CertifiedElement:
    """
    h on 2k strands with cl(h t_{2k}) = cl(x t_k) # cl(x^{-1} t_k).

    Chaining the slide witnesses for y = x^{-1} gives
    b_0 = Q · g^k b_k g^{-k} with g = x t_{2k}, Q the product of the movers
    conjugated by powers of g, and b_0 = t_{2k}; so h = Q^{-1}.
    """
    m = 2 * x.strands
    g = compose(include(x.word, m), twist(m))
    witnesses = slide(x, inverse_of(x))
    factors = [conjugate_of(w.mover, power(g, -(i + 1))) for i, w in enumerate(witnesses)]
    return inverse_of(product_of(factors))


def connect_witnesses(w1: EquivalenceWitness, w2: EquivalenceWitness) -> EquivalenceWitness:
    """Connected sum of two witnesses whose bases are x_i t_k with x_i pure."""
    k = require_same_strands(w1.base, w2.base)
    m = 2 * k
    parts = [compose(w.base, invert(twist(k))) for w in (w1, w2)]
    for part in parts:
        if not is_pure(part):
            raise BraidError("NOT_PURE", f"Witness base {compose(part, twist(k)).text} is not a pure braid times t_{k}")
    mover = product_of([include_element(w1.mover, m), strand_shift(w2.mover, k, m)])
    return EquivalenceWitness(strands=m, base=connected_sum(*parts), mover=mover)


# ================================================================
# INVERSES
# ================================================================

def pure_presentation(b: BraidWord) -> BraidWord:
    """A pure p with cl(p t_k) = cl(b), by conjugating b to the permutation of t_k."""
    require_knot(b)
    k = b.strands
    t = twist(k)
    cycle, knot = permutation_of(t), permutation_of(b)
    # σ(c^i(1)) = π^i(1) gives σ^{-1} π σ = c.
    image = [0] * k
    point, target = 1, 1
    for _ in range(k):
        image[point - 1] = target
        point, target = cycle(point), knot(target)
    g = permutation_braid(Permutation(image=tuple(image)))
    p = compose(conjugate(b, g), invert(t))
    if not is_pure(p):
        raise BraidError("INCONSISTENT_DATA", f"Conjugating {b.text} did not reach the permutation of t_{k}")
    return p


def lcs_inverse(b: BraidWord, n: int) -> BraidWord:
    """
    A braid whose closure K′ makes cl(b) # K′ LCS_n-equivalent to the unknot.

    With cl(b) = cl(h t_k), the first piece is cl(h^{-1} t_k); the sum is then
    cl(h′ t_{2k}) with h′ = collapse(h) deeper in the series, and pieces are
    added until the level reaches n.
    """
    require_knot(b)
    if n <= 1:
        return BraidWord.empty(1)
    p = pure_presentation(b)
    if not p.letters:
        return BraidWord.empty(1)

    h = leaf(p, Series.LCS)
    pieces: List[BraidWord] = []
    while h.lcs_level < n:
        pieces.append(invert(h.word))
        h = collapse(h)
        logger.debug(f"Inverse piece {len(pieces)} on {pieces[-1].strands} strands, remainder level {h.lcs_level}")

    total = pieces[0]
    for piece in pieces[1:]:
        size = max(total.strands, piece.strands)
        total = pure_connected_sum(include(total, size), include(piece, size))
    result = compose_all(total, twist(total.strands))
    logger.info(f"LCS_{n} inverse of {b.text} has {len(pieces)} pieces on {result.strands} strands")
    return result


def strong_inverse(h: CertifiedElement) -> Tuple[BraidWord, List[EquivalenceWitness]]:
    """cl(h^{-1} t_k) and the slide witnesses showing cl(h t_k) # it is trivial one level deeper."""
    inverse = inverse_of(h)
    return compose(inverse.word, twist(h.strands)), slide(h, inverse)
