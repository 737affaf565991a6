"""
Explicit DS_n(P_3) word families and the {a,B}-rewriting.

Notation in B_3: a = σ1, b = σ2, A = a^{-1}, B = b^{-1}, d = bab = aba and
D = d^{-1}. Conjugation by d swaps a ↔ b and A ↔ B exactly, so for any
word X we have D·X = mirror(X)·D; that rule moves every D to the right.

Level 1 words are found by a shortlex search over {a,B}-cores. Level n+1
words come from level n affix-free words:

    [awa, awB] = awBD    [awa, BwB] = awaD
    [Bwa, awB] = BwBD    [Bwa, BwB] = BwaD

the d-forms are D-forms inverted and conjugated by D, and the affix-free
forms are D-form · d-form with the D d in the middle cancelled.
"""

import itertools
import logging
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from src.braids.algebra.braid_core import compose_all, invert, is_pure
from src.braids.algebra.subgroup_series import certify, conjugate_of, leaf, product_of
from src.braids.algebra.word_problem import equal
from src.braids.exceptions import BraidError
from src.braids.models.schemas import (
    BraidWord,
    CertifiedElement,
    Ds3Form,
    DsInsertion,
    DsRewrite,
    ExprCommutator,
    ExprConjugate,
    ExprInverse,
    ExprProduct,
    Series,
)


logger = logging.getLogger("braids.algebra.ds3")

A_LETTER = 1
B_LETTER = -2
CORE_ALPHABET = (A_LETTER, B_LETTER)
D_WORD = (2, 1, 2)
D_INVERSE = (-2, -1, -2)

DEFAULT_BASE_BOUND = 12

# (prefix, suffix) around the {a,B} core of each form.
FORM_AFFIXES: Dict[Ds3Form, Tuple[Tuple[int, ...], Tuple[int, ...]]] = {
    Ds3Form.AWA: ((A_LETTER,), (A_LETTER,)),
    Ds3Form.AWB: ((A_LETTER,), (B_LETTER,)),
    Ds3Form.BWA: ((B_LETTER,), (A_LETTER,)),
    Ds3Form.BWB: ((B_LETTER,), (B_LETTER,)),
    Ds3Form.AWAD: ((A_LETTER,), (A_LETTER,) + D_INVERSE),
    Ds3Form.AWBD: ((A_LETTER,), (B_LETTER,) + D_INVERSE),
    Ds3Form.BWAD: ((B_LETTER,), (A_LETTER,) + D_INVERSE),
    Ds3Form.BWBD: ((B_LETTER,), (B_LETTER,) + D_INVERSE),
    Ds3Form.DAWA: (D_WORD + (A_LETTER,), (A_LETTER,)),
    Ds3Form.DAWB: (D_WORD + (A_LETTER,), (B_LETTER,)),
    Ds3Form.DBWA: (D_WORD + (B_LETTER,), (A_LETTER,)),
    Ds3Form.DBWB: (D_WORD + (B_LETTER,), (B_LETTER,)),
}

# The eleven families; BwBD only feeds dawa.
PRIMARY_FORMS = tuple(form for form in Ds3Form if form != Ds3Form.BWBD)

# D-form ← (x form, y form) with D-form = [x, y].
COMMUTATOR_RULES = {
    Ds3Form.AWBD: (Ds3Form.AWA, Ds3Form.AWB),
    Ds3Form.AWAD: (Ds3Form.AWA, Ds3Form.BWB),
    Ds3Form.BWBD: (Ds3Form.BWA, Ds3Form.AWB),
    Ds3Form.BWAD: (Ds3Form.BWA, Ds3Form.BWB),
}

# d-form ← D-form, via D^{-1}·(D-form)^{-1}·D.
INVERSE_RULES = {
    Ds3Form.DBWB: Ds3Form.AWAD,
    Ds3Form.DAWB: Ds3Form.AWBD,
    Ds3Form.DBWA: Ds3Form.BWAD,
    Ds3Form.DAWA: Ds3Form.BWBD,
}

# affix-free ← (D-form, d-form).
PRODUCT_RULES = {
    Ds3Form.AWA: (Ds3Form.AWAD, Ds3Form.DAWA),
    Ds3Form.AWB: (Ds3Form.AWAD, Ds3Form.DAWB),
    Ds3Form.BWA: (Ds3Form.BWAD, Ds3Form.DAWA),
    Ds3Form.BWB: (Ds3Form.BWAD, Ds3Form.DAWB),
}


def _flip_inverse(letters: Sequence[int]) -> List[int]:
    """mirror(v^{-1}) for a word v in {a, B}: reversed with a ↔ B."""
    swap = {A_LETTER: B_LETTER, B_LETTER: A_LETTER}
    return [swap[x] for x in reversed(letters)]


def matches_form(word: BraidWord, form: Ds3Form) -> bool:
    """Letter-pattern check with d and D spelled out."""
    prefix, suffix = FORM_AFFIXES[Ds3Form(form)]
    letters = word.letters
    if word.strands != 3 or len(letters) < len(prefix) + len(suffix):
        return False
    if letters[: len(prefix)] != prefix or letters[len(letters) - len(suffix):] != suffix:
        return False
    core = letters[len(prefix): len(letters) - len(suffix)]
    return all(x in CORE_ALPHABET for x in core)


def core_of(word: BraidWord, form: Ds3Form) -> Tuple[int, ...]:
    prefix, suffix = FORM_AFFIXES[Ds3Form(form)]
    return word.letters[len(prefix): len(word.letters) - len(suffix)]


# ================================================================
# LEVEL 1
# ================================================================

def _base_word(form: Ds3Form, base_bound: int) -> BraidWord:
    prefix, suffix = FORM_AFFIXES[form]
    for length in range(base_bound + 1):
        for core in itertools.product(CORE_ALPHABET, repeat=length):
            word = BraidWord.of(3, prefix + core + suffix)
            if is_pure(word):
                return word
    logger.warning(f"No pure {form.value} word with core length <= {base_bound}")
    raise BraidError(
        "BASE_SEARCH_EXHAUSTED",
        f"No pure word of form {form.value} with core length <= {base_bound}",
        {"form": form.value, "base_bound": base_bound},
    )


def _level_one(base_bound: int) -> Dict[Ds3Form, CertifiedElement]:
    return {form: leaf(_base_word(form, base_bound), Series.DS) for form in Ds3Form}


# ================================================================
# RECURSION
# ================================================================

def commutator_d_form(x: Sequence[int], y: Sequence[int]) -> Tuple[int, ...]:
    """
    Letters of [x, y] spelled as a D-form, for x = u·a and y = v·B with u, v
    words in {a, B}. Uses B·A = a·D and D·a·d = b; the spelling is equal in
    B_3 to x·y·x^{-1}·y^{-1}.
    """
    core = list(x) + list(y[:-1]) + [A_LETTER] + _flip_inverse(x[:-1]) + [A_LETTER] + _flip_inverse(y[:-1])
    return tuple(core) + D_INVERSE


def _next_level(previous: Dict[Ds3Form, CertifiedElement], level: int) -> Dict[Ds3Form, CertifiedElement]:
    words: Dict[Ds3Form, CertifiedElement] = {}

    for d_form, (x_form, y_form) in COMMUTATOR_RULES.items():
        x, y = previous[x_form], previous[y_form]
        word = BraidWord.of(3, commutator_d_form(x.word.letters, y.word.letters))
        tree = ExprCommutator(left=x.certificate, right=y.certificate)
        words[d_form] = certify(word, Series.DS, level, tree)

    for small_form, d_form in INVERSE_RULES.items():
        source = words[d_form]
        # source = c·D, so D^{-1}·(c·D)^{-1}·D = d·mirror(c^{-1}).
        word = BraidWord.of(3, D_WORD + tuple(_flip_inverse(source.word.letters[:-3])))
        tree = ExprConjugate(child=ExprInverse(child=source.certificate), by=BraidWord.of(3, D_INVERSE))
        words[small_form] = certify(word, Series.DS, level, tree)

    for free_form, (d_form, small_form) in PRODUCT_RULES.items():
        left, right = words[d_form], words[small_form]
        word = BraidWord.of(3, left.word.letters[:-3] + right.word.letters[3:])
        tree = ExprProduct(factors=(left.certificate, right.certificate))
        words[free_form] = certify(word, Series.DS, level, tree)

    for form, element in words.items():
        if not matches_form(element.word, form):
            raise BraidError("CERTIFICATE_INVALID", f"Level {level} word for {form.value} breaks its pattern")
    return words


@lru_cache(maxsize=16)
def _ds3_table(n: int, base_bound: int) -> Tuple[Tuple[Ds3Form, CertifiedElement], ...]:
    if n == 1:
        table = _level_one(base_bound)
    else:
        previous = dict(_ds3_table(n - 1, base_bound))
        table = _next_level(previous, n)
    logger.info(
        f"DS_{n}(P_3) families ready; longest word has "
        f"{max(e.word.length for e in table.values())} letters"
    )
    return tuple(sorted(table.items(), key=lambda item: list(Ds3Form).index(item[0])))


def ds3_words(n: int, base_bound: int = DEFAULT_BASE_BOUND) -> Dict[Ds3Form, CertifiedElement]:
    """One DS_n(P_3)-certified word per form."""
    if n < 1:
        raise BraidError("PRECONDITION_FAILED", f"ds3_words needs n >= 1, got {n}")
    return dict(_ds3_table(n, base_bound))


def commutator_rule_holds(n: int, d_form: Ds3Form, base_bound: int = DEFAULT_BASE_BOUND) -> bool:
    """Check [x, y] = D-form at level n+1 as an exact B_3 equality."""
    x_form, y_form = COMMUTATOR_RULES[Ds3Form(d_form)]
    lower = ds3_words(n, base_bound)
    upper = ds3_words(n + 1, base_bound)
    x, y = lower[x_form].word, lower[y_form].word
    return equal(compose_all(x, y, invert(x), invert(y)), upper[Ds3Form(d_form)].word)


# ================================================================
# {a,B}-REWRITING
# ================================================================

def letter_replacement(letter: int, n: int, base_bound: int = DEFAULT_BASE_BOUND):
    """
    Replacement for A or b: c1 · mirror(letter) · c2 where c1·D is the awaD
    word and d·c2 the dawa word. Returns (letters, before, after).
    """
    words = ds3_words(n, base_bound)
    before = words[Ds3Form.AWAD]
    after = words[Ds3Form.DAWA]
    mirrored = {-1: B_LETTER, 2: A_LETTER}[letter]
    letters = before.word.letters[:-3] + (mirrored,) + after.word.letters[3:]
    return letters, before, after


def rewrite_mod_ds(x: BraidWord, n: int, base_bound: int = DEFAULT_BASE_BOUND) -> DsRewrite:
    """
    Rewrite x ∈ B_3 into letters a, B by inserting DS_n(P_3) elements
    around each A and b.
    """
    if x.strands != 3:
        raise BraidError("STRAND_MISMATCH", f"rewrite_mod_ds works in B_3, got B_{x.strands}")
    letters: List[int] = []
    insertions: List[DsInsertion] = []
    for position, letter in enumerate(x.letters):
        if letter in CORE_ALPHABET:
            letters.append(letter)
            continue
        replacement, before, after = letter_replacement(letter, n, base_bound)
        letters.extend(replacement)
        insertions.append(DsInsertion(position=position, element=before))
        insertions.append(DsInsertion(position=position + 1, element=after))
    rewritten = BraidWord.of(3, letters)
    difference = insertion_difference(x, insertions)
    logger.debug(f"Rewrote {x.length} letters into {rewritten.length} with {len(insertions)} insertions")
    return DsRewrite(source=x, word=rewritten, insertions=tuple(insertions), difference=difference)


def reassemble(source: BraidWord, insertions: Sequence[DsInsertion]) -> BraidWord:
    """The source word with every insertion placed after its recorded prefix."""
    letters: List[int] = []
    pending = list(insertions)
    cursor = 0
    for position in range(source.length + 1):
        while cursor < len(pending) and pending[cursor].position == position:
            letters.extend(pending[cursor].element.word.letters)
            cursor += 1
        if position < source.length:
            letters.append(source.letters[position])
    return BraidWord.of(source.strands, letters)


def insertion_difference(source: BraidWord, insertions: Sequence[DsInsertion]):
    """
    Certified reassembled · source^{-1} = Π P_j h_j P_j^{-1}, where P_j is the
    source prefix in front of insertion j.
    """
    if not insertions:
        return None
    pieces = []
    for insertion in insertions:
        prefix = BraidWord.of(source.strands, source.letters[: insertion.position])
        pieces.append(conjugate_of(insertion.element, invert(prefix)))
    return product_of(pieces)
