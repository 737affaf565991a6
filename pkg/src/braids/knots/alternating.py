"""
Alternating, reduced and prime braid-closure diagrams, and families of
distinct alternating knots sharing a DS_n class.

A braid word closes to an alternating diagram when every σ_i occurs with
sign (−1)^{i+1} only. A letter with the wrong sign is repaired on the strand
triple (j, j+1, j+2), j = max(i − 1, 1): there the allowed letters are a and
B (j odd) or their sign flips (j even), which is exactly what the {a,B}
rewrite produces.
"""

import logging
from typing import Dict, List, Tuple

import networkx as nx

from src.braids.algebra.braid_core import compose, invert, sign_flip
from src.braids.algebra.ds3 import DEFAULT_BASE_BOUND, ds3_words, rewrite_mod_ds
from src.braids.algebra.subgroup_series import (
    certify,
    conjugate_of,
    flip_element,
    identity_element,
    product_of,
    strand_shift,
)
from src.braids.algebra.word_problem import equal
from src.braids.exceptions import BraidError
from src.braids.knots.closure_link import close, require_knot, stabilize
from src.braids.models.schemas import (
    BraidWord,
    BraidsBaseModel,
    CertifiedElement,
    Diagram,
    Ds3Form,
    EquivalenceWitness,
    Series,
)


logger = logging.getLogger("braids.knots.alternating")

DEFAULT_PRIMALITY_ROUNDS = 4


# ================================================================
# DIAGRAM CHECKS
# ================================================================

def allowed_sign(index: int) -> int:
    return 1 if index % 2 else -1


def is_alternating(b: BraidWord) -> bool:
    return all((1 if x > 0 else -1) == allowed_sign(abs(x)) for x in b.letters)


def diagram_graph(d: Diagram) -> nx.MultiGraph:
    """Crossings as nodes, one edge per PD arc keyed by its label."""
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(d.crossing_count))
    ends: Dict[int, List[int]] = {}
    for c, crossing in enumerate(d.pd):
        for label in crossing:
            ends.setdefault(label, []).append(c)
    for label in sorted(ends):
        u, v = ends[label]
        graph.add_edge(u, v, key=label)
    return graph


def is_reduced(d: Diagram) -> bool:
    """No nugatory crossing: no kink loop and no cut vertex."""
    if d.crossing_count == 0:
        return True
    graph = diagram_graph(d)
    if nx.number_of_selfloops(graph):
        return False
    return not any(True for _ in nx.articulation_points(graph))


def is_prime(d: Diagram) -> bool:
    """
    No circle meets the diagram in two points with crossings on both sides,
    i.e. the diagram graph has neither a bridge nor a 2-edge cut.

    Parallel arcs are contracted into one weighted edge and kink loops
    dropped; the diagram is prime when the minimum cut weighs at least 3.
    """
    if d.crossing_count == 0:
        return d.free_loops <= 1
    if d.free_loops:
        return False
    if d.crossing_count == 1:
        return True
    simple = nx.Graph()
    simple.add_nodes_from(range(d.crossing_count))
    for u, v in diagram_graph(d).edges():
        if u != v:
            weight = simple.get_edge_data(u, v, default={}).get("weight", 0)
            simple.add_edge(u, v, weight=weight + 1)
    if not nx.is_connected(simple):
        return False
    cut, _ = nx.stoer_wagner(simple)
    return cut >= 3


# ================================================================
# REPAIRS
# ================================================================

def _repair(letter: int, k: int, n: int, base_bound: int) -> Tuple[Tuple[int, ...], CertifiedElement]:
    """Alternating replacement for one wrong-sign letter and the DS_n element it multiplies in."""
    index = abs(letter)
    j = max(index - 1, 1)
    local = (index - j + 1) * (1 if letter > 0 else -1)
    flipped = j % 2 == 0
    rewrite = rewrite_mod_ds(BraidWord.of(3, (-local if flipped else local,)), n, base_bound)
    word, difference = rewrite.word, rewrite.difference
    if flipped:
        word, difference = sign_flip(word), flip_element(difference)
    shifted = tuple(x + j - 1 if x > 0 else x - j + 1 for x in word.letters)
    return shifted, strand_shift(difference, j - 1, k)


def _triple_element(j: int, k: int, n: int, base_bound: int) -> CertifiedElement:
    """The awa element placed on strands j..j+2 with the alternating signs there."""
    element = ds3_words(n, base_bound)[Ds3Form.AWA]
    if j % 2 == 0:
        element = flip_element(element)
    return strand_shift(element, j - 1, k)



def alternating_word(b: BraidWord, n: int, base_bound: int = DEFAULT_BASE_BOUND) -> Tuple[BraidWord, EquivalenceWitness]:
    """
    An alternating word whose closure is DS_n-equivalent to cl(b).

    b is first stabilized up to three strands. The witness has that
    stabilized braid as base and a mover equal to word · base^{-1}.
    """
    require_knot(b)
    base = b
    while base.strands < 3:
        base = stabilize(base, allowed_sign(base.strands))
    k = base.strands

    letters: List[int] = []
    movers: List[CertifiedElement] = []
    for letter in base.letters:
        if (1 if letter > 0 else -1) == allowed_sign(abs(letter)):
            letters.append(letter)
            continue
        replacement, difference = _repair(letter, k, n, base_bound)
        movers.insert(0, conjugate_of(difference, invert(BraidWord.of(k, letters))))
        letters.extend(replacement)

    mover = product_of(movers) if movers else identity_element(k, Series.DS, n)
    logger.debug(f"Repaired {len(movers)} letters of {b.text}; alternating word has {len(letters)} letters")
    alternating = BraidWord.of(k, letters)
    return alternating, _checked_witness(base, mover, alternating)


# ================================================================
# FAMILIES
# ================================================================

class FamilyMember(BraidsBaseModel):
    """An alternating word and the witness tying it to the family's source knot."""

    word: BraidWord
    witness: EquivalenceWitness

    @property
    def diagram(self) -> Diagram:
        return close(self.word)


def _checked_witness(base: BraidWord, mover: CertifiedElement, word: BraidWord) -> EquivalenceWitness:
    """Witness with a re-checked certificate whose mover carries base to word."""
    mover = certify(mover.word, mover.series, mover.level, mover.certificate)
    if not equal(compose(mover.word, base), word):
        raise BraidError("INCONSISTENT_DATA", f"Witness mover does not carry {base.text} to {word.text}")
    return EquivalenceWitness(strands=base.strands, base=base, mover=mover)


def _usable(d: Diagram) -> bool:
    return is_reduced(d) and is_prime(d)


def family_members(
    b: BraidWord,
    n: int,
    count: int,
    base_bound: int = DEFAULT_BASE_BOUND,
    rounds: int = DEFAULT_PRIMALITY_ROUNDS,
) -> List[FamilyMember]:
    """
    ``count`` alternating, reduced, prime words, all DS_n-equivalent to cl(b).

    After the sign repairs one awa element is appended for every strand
    triple so each generator appears often and interleaved; member r carries
    r further copies of the first triple's element at the word end.

    An element e appended to word = mover · base moves the witness to
    mover · (base e base^{-1}).
    """
    if n < 2 or count < 1:
        raise BraidError("PRECONDITION_FAILED", f"alternating_family needs n >= 2 and count >= 1, got n={n}, count={count}")
    word, witness = alternating_word(b, n, base_bound)
    k, base = word.strands, witness.base
    carry = invert(base)
    letters = list(word.letters)
    appended: List[CertifiedElement] = []
    for attempt in range(rounds):
        for j in range(1, k - 1):
            element = _triple_element(j, k, n, base_bound)
            letters.extend(element.word.letters)
            appended.append(conjugate_of(element, carry))
        if _usable(close(BraidWord.of(k, letters))):
            break
        logger.debug(f"Family core of {b.text} not yet prime after round {attempt + 1}")
    else:
        logger.warning(f"No prime alternating core for {b.text} after {rounds} rounds")
        raise BraidError("PRIMALITY_NOT_REACHED", f"Alternating core of {b.text} is not reduced and prime after {rounds} rounds")

    growth = _triple_element(1, k, n, base_bound)
    moved_growth = conjugate_of(growth, carry)
    members = []
    for r in range(count):
        member_word = BraidWord.of(k, tuple(letters) + growth.word.letters * r)
        if not (is_alternating(member_word) and _usable(close(member_word))):
            raise BraidError("PRIMALITY_NOT_REACHED", f"Family member {r} of {b.text} failed the diagram checks")
        mover = product_of([witness.mover] + appended + [moved_growth] * r)
        members.append(FamilyMember(word=member_word, witness=_checked_witness(base, mover, member_word)))

    logger.info(f"Built {count} alternating DS_{n} family members for {b.text}, crossings {[m.word.length for m in members]}")
    return members


def alternating_family(b: BraidWord, n: int, count: int, base_bound: int = DEFAULT_BASE_BOUND) -> List[Diagram]:
    """Diagrams of distinct alternating knots DS_n-equivalent to cl(b)."""
    return [member.diagram for member in family_members(b, n, count, base_bound)]
