"""
Standard closures of braids as PD diagrams, connected sums, the φ_k map
and single Markov moves.

Strands run top to bottom. At a crossing on positions (i, i+1) the strand
entering on the left leaves on the right and vice versa. For σ_i the strand
entering on the right passes over, for σ_i^{-1} the one entering on the
left. PD quadruples start at the incoming under-strand and run
counterclockwise:

    σ_i       X[in_L, out_L, out_R, in_R]
    σ_i^{-1}  X[in_R, in_L, out_L, out_R]
"""

import logging
from itertools import combinations
from typing import Dict, List, Tuple

from src.braids.algebra.braid_core import (
    compose_all,
    free_reduce,
    invert,
    permutation_of,
    require_pure,
    shift_letters,
    twist,
    twist_power,
)
from src.braids.exceptions import BraidError, require_same_strands
from src.braids.models.schemas import BraidWord, Diagram, LinkProfile, MarkovKind, MarkovStep


logger = logging.getLogger("braids.knots.closure_link")

_LEFT, _RIGHT = 0, 1


# ================================================================
# CLOSURE
# ================================================================

def close(b: BraidWord) -> Diagram:
    """PD presentation of the standard closure, arcs numbered from 1 along each component."""
    k = b.strands
    # A source is ("top", p) or ("out", crossing, side); ends maps a source to the
    # crossing input it runs into.
    current: List[Tuple] = [("top", p) for p in range(k)]
    ends: Dict[Tuple, Tuple[int, int]] = {}
    for c, letter in enumerate(b.letters):
        i = abs(letter) - 1
        ends[current[i]] = (c, _LEFT)
        ends[current[i + 1]] = (c, _RIGHT)
        current[i] = ("out", c, _LEFT)
        current[i + 1] = ("out", c, _RIGHT)

    free_loops = 0
    for q in range(k):
        if current[q] == ("top", q):
            free_loops += 1
        else:
            ends[current[q]] = ends[("top", q)]

    labels: Dict[Tuple, int] = {}
    components: List[Tuple[int, ...]] = []
    gauss: List[Tuple[int, ...]] = []
    signs = tuple(1 if letter > 0 else -1 for letter in b.letters)
    for p in range(k):
        start = current[p]
        if start[0] == "top" or start in labels:
            continue
        arcs, code = [], []
        arc = start
        while arc not in labels:
            labels[arc] = len(labels) + 1
            arcs.append(labels[arc])
            crossing, side = ends[arc]
            over = side == _RIGHT if signs[crossing] > 0 else side == _LEFT
            code.append((crossing + 1) if over else -(crossing + 1))
            arc = ("out", crossing, _RIGHT if side == _LEFT else _LEFT)
        components.append(tuple(arcs))
        gauss.append(tuple(code))

    incoming: Dict[Tuple[int, int], int] = {end: labels[source] for source, end in ends.items() if source[0] == "out"}
    pd = []
    for c, sign in enumerate(signs):
        in_left, in_right = incoming[(c, _LEFT)], incoming[(c, _RIGHT)]
        out_left, out_right = labels[("out", c, _LEFT)], labels[("out", c, _RIGHT)]
        if sign > 0:
            pd.append((in_left, out_left, out_right, in_right))
        else:
            pd.append((in_right, in_left, out_left, out_right))

    logger.debug(f"Closed {b.length} letters in B_{k} into {len(components) + free_loops} components")
    return Diagram(
        word=b,
        pd=tuple(pd),
        signs=signs,
        components=tuple(components),
        gauss=tuple(gauss),
        free_loops=free_loops,
    )


def component_of_crossings(d: Diagram) -> Dict[int, List[int]]:
    """Crossing number (1-based) → the components passing through it, one entry per pass."""
    passes: Dict[int, List[int]] = {}
    for index, code in enumerate(d.gauss):
        for entry in code:
            passes.setdefault(abs(entry), []).append(index)
    return passes


def link_profile(b: BraidWord) -> LinkProfile:
    """Component count and the sorted pairwise linking numbers."""
    d = close(b)
    count = d.component_count
    totals = {pair: 0 for pair in combinations(range(count), 2)}
    for crossing, members in component_of_crossings(d).items():
        first, second = members
        if first != second:
            totals[(min(first, second), max(first, second))] += d.signs[crossing - 1]
    return LinkProfile(components=count, linking=tuple(sorted(total // 2 for total in totals.values())))


def is_knot(b: BraidWord) -> bool:
    return len(permutation_of(b).cycles()) == 1


def require_knot(b: BraidWord) -> None:
    if not is_knot(b):
        raise BraidError("NOT_A_KNOT", f"The closure of {b.text} has {len(permutation_of(b).cycles())} components")


# ================================================================
# CONNECTED SUMS AND φ_k
# ================================================================

def connected_sum(x: BraidWord, y: BraidWord) -> BraidWord:
    """x · t_{2k}^{-k} · y · t_{2k}^{k+1} in B_2k; closes to cl(x t_k) # cl(y t_k)."""
    k = require_same_strands(x, y)
    require_pure(x)
    require_pure(y)
    m = 2 * k
    letters = x.letters + twist_power(m, -k).letters + y.letters + twist_power(m, k + 1).letters
    return BraidWord.of(m, letters)


def pure_connected_sum(x: BraidWord, y: BraidWord) -> BraidWord:
    """The pure part x · shift_k(y) of connected_sum(x, y); cl(· t_2k) is the same knot."""
    k = require_same_strands(x, y)
    require_pure(x)
    require_pure(y)
    return BraidWord.of(2 * k, x.letters + shift_letters(y, k, 2 * k).letters)


def phi_word(p: BraidWord) -> BraidWord:
    require_pure(p)
    return BraidWord.of(p.strands, p.letters + twist(p.strands).letters)


def phi(p: BraidWord, k: int = 0) -> Diagram:
    """cl(p t_k); always a knot."""
    if k and k != p.strands:
        raise BraidError("STRAND_MISMATCH", f"phi_{k} applied to a braid on {p.strands} strands")
    return close(phi_word(p))


# ================================================================
# MARKOV MOVES
# ================================================================

def stabilize(b: BraidWord, sign: int) -> BraidWord:
    """b · σ_k^{sign} in B_{k+1}."""
    if sign not in (1, -1):
        raise BraidError("INCONSISTENT_DATA", f"Stabilization sign must be +1 or -1, got {sign}")
    k = b.strands
    return BraidWord.of(k + 1, b.letters + (sign * k,))


def destabilization(b: BraidWord) -> Tuple[BraidWord, BraidWord, int]:
    """
    Find g with g^{-1} b g = w σ_{k-1}^{sign}, w not using σ_{k-1}.

    Returns (g, w, sign) with w on k − 1 strands. Only cyclic rotations of the
    freely reduced word are tried.
    """
    k = b.strands
    if k < 2:
        raise BraidError("DESTABILIZE_PATTERN_ABSENT", "B_1 has nothing to destabilize")
    reduced = free_reduce(b)
    top = [position for position, letter in enumerate(reduced.letters) if abs(letter) == k - 1]
    if len(top) != 1:
        raise BraidError(
            "DESTABILIZE_PATTERN_ABSENT",
            f"{b.text} uses σ_{k - 1} {len(top)} times after free reduction",
        )
    position = top[0]
    letter = reduced.letters[position]
    g = BraidWord.of(k, reduced.letters[: position + 1])
    rest = reduced.letters[position + 1:] + reduced.letters[:position]
    return g, BraidWord.of(k - 1, rest), (1 if letter > 0 else -1)


def destabilize(b: BraidWord) -> BraidWord:
    return destabilization(b)[1]


def markov(b: BraidWord, move: MarkovStep) -> BraidWord:
    """Apply one Markov move; the closure is unchanged."""
    kind = MarkovKind(move.kind)
    if kind == MarkovKind.CONJUGATE:
        if move.by is None:
            raise BraidError("INCONSISTENT_DATA", "A conjugation move needs a conjugator")
        require_same_strands(b, move.by)
        return compose_all(invert(move.by), b, move.by)
    if kind == MarkovKind.STABILIZE:
        return stabilize(b, move.sign if move.sign is not None else 1)
    return destabilize(b)
