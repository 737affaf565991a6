"""
Word algebra for braid groups and free groups.

Every function here works letter-by-letter and never consults the group
relations; equality in B_k is decided by word_problem. Functions that take
"a word" accept both BraidWord and FreeWord, whose letters know their own
inverses.
"""

from typing import Iterator, List, Sequence, Tuple, TypeVar

import numpy as np

from src.braids.exceptions import BraidError, require_same_strands
from src.braids.models.schemas import BraidWord, FreeWord, Permutation


Word = TypeVar("Word", BraidWord, FreeWord)


# ================================================================
# FREE-GROUP OPERATIONS
# ================================================================

def free_reduce(w: Word) -> Word:
    """Cancel adjacent inverse pairs until none remain."""
    stack: list = []
    inverse = w.inverse_letter
    for letter in w.letters:
        if stack and stack[-1] == inverse(letter):
            stack.pop()
        else:
            stack.append(letter)
    if len(stack) == len(w.letters):
        return w
    return w.with_letters(stack)


def _check_pair(u, v) -> None:
    if isinstance(u, BraidWord) != isinstance(v, BraidWord):
        raise BraidError("STRAND_MISMATCH", "Cannot combine a braid word with a free word")
    if isinstance(u, BraidWord):
        require_same_strands(u, v)


def compose(u: Word, v: Word) -> Word:
    """Concatenate and free-reduce."""
    _check_pair(u, v)
    return free_reduce(u.with_letters(u.letters + v.letters))


def compose_all(first: Word, *rest: Word) -> Word:
    letters = list(first.letters)
    for word in rest:
        _check_pair(first, word)
        letters.extend(word.letters)
    return free_reduce(first.with_letters(letters))


def invert(w: Word) -> Word:
    inverse = w.inverse_letter
    return w.with_letters(inverse(letter) for letter in reversed(w.letters))


def power(w: Word, exponent: int) -> Word:
    base = w if exponent >= 0 else invert(w)
    return free_reduce(w.with_letters(base.letters * abs(exponent)))


def commutator(x: Word, y: Word) -> Word:
    """[x, y] = x y x^{-1} y^{-1}."""
    _check_pair(x, y)
    return compose_all(x, y, invert(x), invert(y))


def conjugate(x: Word, g: Word) -> Word:
    """g^{-1} x g."""
    _check_pair(x, g)
    return compose_all(invert(g), x, g)


# ================================================================
# BRAID-SPECIFIC OPERATIONS
# ================================================================

def permutation_of(w: BraidWord) -> Permutation:
    """Product of the transpositions (i, i+1) over the letters, signs ignored."""
    image = list(range(1, w.strands + 1))
    # Right multiplication by a transposition swaps one-line positions.
    for letter in w.letters:
        i = abs(letter) - 1
        image[i], image[i + 1] = image[i + 1], image[i]
    return Permutation.model_construct(image=tuple(image))


def is_pure(w: BraidWord) -> bool:
    return permutation_of(w).is_identity


def permutation_braid(p: Permutation) -> BraidWord:
    """A positive word w with permutation_of(w) == p, found by bubble sort."""
    image = list(p.image)
    swaps = []
    for end in range(len(image) - 1, 0, -1):
        for i in range(end):
            if image[i] > image[i + 1]:
                image[i], image[i + 1] = image[i + 1], image[i]
                swaps.append(i + 1)
    return BraidWord.of(p.size, reversed(swaps))


def require_pure(w: BraidWord, what: str = "braid") -> None:
    if not is_pure(w):
        raise BraidError("NOT_PURE", f"The {what} {w.text} is not a pure braid")


def include(w: BraidWord, m: int) -> BraidWord:
    """Add unbraided strands on the right until there are m."""
    if m < w.strands:
        raise BraidError("STRAND_MISMATCH", f"Cannot include B_{w.strands} into B_{m}")
    return BraidWord.of(m, w.letters)


def twist(k: int) -> BraidWord:
    """t_k = σ_{k-1}^{-1} ⋯ σ_1^{-1}."""
    if k < 1:
        raise BraidError("INDEX_OUT_OF_RANGE", f"twist needs k >= 1, got {k}")
    return BraidWord.of(k, range(-(k - 1), 0))


def twist_power(k: int, exponent: int) -> BraidWord:
    return power(twist(k), exponent)


def half_twist(k: int) -> BraidWord:
    """The positive half-twist Δ_k as σ_1(σ_2σ_1)⋯(σ_{k-1}⋯σ_1)."""
    letters: List[int] = []
    for top in range(1, k):
        letters.extend(range(top, 0, -1))
    return BraidWord.of(k, letters)


def pure_generator(i: int, j: int, k: int) -> BraidWord:
    """A_ij = (σ_{j-1}⋯σ_{i+1}) σ_i² (σ_{i+1}^{-1}⋯σ_{j-1}^{-1})."""
    if not 1 <= i < j <= k:
        raise BraidError("INDEX_OUT_OF_RANGE", f"pure_generator needs 1 <= i < j <= k, got ({i}, {j}, {k})")
    prefix = list(range(j - 1, i, -1))
    return BraidWord.of(k, prefix + [i, i] + [-letter for letter in reversed(prefix)])


def mirror(w: BraidWord) -> BraidWord:
    """σ_i ↦ σ_{k-i}, signs kept: conjugation by the half-twist."""
    k = w.strands
    return BraidWord.of(k, ((k - abs(x)) * (1 if x > 0 else -1) for x in w.letters))


def sign_flip(w: BraidWord) -> BraidWord:
    """σ_i^e ↦ σ_i^{-e}; an automorphism of B_k preserving P_k and its series."""
    return BraidWord.of(w.strands, (-x for x in w.letters))


def shift_letters(w: BraidWord, offset: int, m: int) -> BraidWord:
    """σ_i ↦ σ_{i+offset} in B_m; equal to conjugating the inclusion by t_m^offset."""
    if offset < 0 or w.strands + offset > m:
        raise BraidError(
            "INDEX_OUT_OF_RANGE",
            f"Cannot shift B_{w.strands} by {offset} inside B_{m}",
        )
    return BraidWord.of(m, (x + offset if x > 0 else x - offset for x in w.letters))


def crossing_strands(w: BraidWord) -> Iterator[Tuple[int, int, int]]:
    """
    Yield (left strand, right strand, sign) for each letter, strands named by
    their starting position (1-based).
    """
    positions = list(range(1, w.strands + 1))
    for letter in w.letters:
        i = abs(letter) - 1
        left, right = positions[i], positions[i + 1]
        yield left, right, (1 if letter > 0 else -1)
        positions[i], positions[i + 1] = right, left


def exponent_sums(w: BraidWord) -> np.ndarray:
    """Per-generator exponent sums; index i-1 holds σ_i's total."""
    totals = np.zeros(max(w.strands - 1, 0), dtype=np.int64)
    for letter in w.letters:
        totals[abs(letter) - 1] += 1 if letter > 0 else -1
    return totals


# ================================================================
# SAMPLING
# ================================================================

def random_word(rng: np.random.Generator, strands: int, length: int) -> BraidWord:
    """Uniform letters from {σ_i^{±1}}; no reduction applied."""
    if strands < 2 or length == 0:
        return BraidWord.empty(strands)
    indices = rng.integers(1, strands, size=length)
    signs = rng.choice(np.array([-1, 1]), size=length)
    return BraidWord.of(strands, (int(i) * int(s) for i, s in zip(indices, signs)))


def random_free_word(rng: np.random.Generator, generators: Sequence[str], length: int) -> FreeWord:
    picks = rng.integers(0, len(generators), size=length)
    signs = rng.choice(np.array([-1, 1]), size=length)
    return free_reduce(FreeWord.of((generators[int(p)], int(s)) for p, s in zip(picks, signs)))


def random_pure_word(rng: np.random.Generator, strands: int, factors: int) -> BraidWord:
    """A product of random pure generators and their inverses."""
    word = BraidWord.empty(strands)
    if strands < 2:
        return word
    for _ in range(factors):
        i = int(rng.integers(1, strands))
        j = int(rng.integers(i + 1, strands + 1))
        generator = pure_generator(i, j, strands)
        word = compose(word, generator if rng.random() < 0.5 else invert(generator))
    return word
