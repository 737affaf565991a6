"""
Word problem for B_k via the left-greedy Garside normal form.

A braid is written Δ^p · f_1 ⋯ f_r with each f_i a permutation braid and
consecutive factors left-weighted. Permutation braids are handled through
their 0-based one-line images; the rules used are

    perm(uv) = perm(u) ∘ perm(v)
    σ_i is a left divisor of f  ⇔  f^{-1}(i) > f^{-1}(i+1)
    σ_i is a right divisor of f ⇔  f(i) > f(i+1)
    σ_i^{-1} = (σ_i^{-1} Δ) Δ^{-1},   X Δ^{-1} = Δ^{-1} τ(X)

where τ is conjugation by Δ. The normal form is unique, so two words are
equal exactly when their canonical keys coincide.
"""

import logging
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from src.braids.algebra.braid_core import invert
from src.braids.exceptions import BraidError, require_same_strands
from src.braids.models.schemas import BraidWord, NormalForm


logger = logging.getLogger("braids.algebra.word_problem")

Perm = Tuple[int, ...]


# ================================================================
# PERMUTATION-BRAID PRIMITIVES
# ================================================================

@lru_cache(maxsize=None)
def _identity(k: int) -> Perm:
    return tuple(range(k))


@lru_cache(maxsize=None)
def _delta(k: int) -> Perm:
    return tuple(range(k - 1, -1, -1))


def _inverse(p: Sequence[int]) -> List[int]:
    inverse = [0] * len(p)
    for position, value in enumerate(p):
        inverse[value] = position
    return inverse


@lru_cache(maxsize=None)
def _tau(p: Perm) -> Perm:
    k = len(p)
    return tuple(k - 1 - p[k - 1 - i] for i in range(k))


def _tau_power(p: Perm, exponent: int) -> Perm:
    return _tau(p) if exponent % 2 else p


@lru_cache(maxsize=None)
def _generator(k: int, index: int) -> Perm:
    """Permutation braid σ_index (1-based index)."""
    image = list(range(k))
    image[index - 1], image[index] = image[index], image[index - 1]
    return tuple(image)


@lru_cache(maxsize=None)
def _co_generator(k: int, index: int) -> Perm:
    """Permutation braid σ_index^{-1} Δ, i.e. s_index ∘ δ."""
    image = list(range(k - 1, -1, -1))
    for position, value in enumerate(image):
        if value == index - 1:
            image[position] = index
        elif value == index:
            image[position] = index - 1
    return tuple(image)


@lru_cache(maxsize=None)
def _length(p: Perm) -> int:
    """Crossings of the permutation braid: inversions of p."""
    k = len(p)
    return sum(1 for i in range(k) for j in range(i + 1, k) if p[i] > p[j])


@lru_cache(maxsize=1 << 16)
def _merge(a: Perm, b: Perm) -> Optional[Perm]:
    """a·b when it is again a permutation braid, else None."""
    product = tuple(a[i] for i in b)
    if _length(product) == _length(a) + _length(b):
        return product
    return None


@lru_cache(maxsize=1 << 18)
def _left_weight(a: Perm, b: Perm) -> Tuple[Perm, Perm]:
    """Move left divisors of b that a can absorb across until (a, b) is left-weighted."""
    k = len(a)
    left = list(a)
    right = list(b)
    while True:
        right_inverse = _inverse(right)
        for i in range(k - 1):
            if right_inverse[i] > right_inverse[i + 1] and left[i] < left[i + 1]:
                left[i], left[i + 1] = left[i + 1], left[i]
                right[right_inverse[i]] = i + 1
                right[right_inverse[i + 1]] = i
                break
        else:
            return tuple(left), tuple(right)


def _append(factors: List[Perm], factor: Perm) -> None:
    """Append a simple factor and restore left-weightedness right to left."""
    factors.append(factor)
    j = len(factors) - 1
    while j > 0:
        pair = _left_weight(factors[j - 1], factors[j])
        if pair == (factors[j - 1], factors[j]):
            break
        factors[j - 1], factors[j] = pair
        j -= 1
    identity = _identity(len(factor))
    while factors and factors[-1] == identity:
        factors.pop()


def _finish(strands: int, shift: int, factors: List[Perm]) -> NormalForm:
    delta = _delta(strands)
    leading = 0
    while leading < len(factors) and factors[leading] == delta:
        leading += 1
    return NormalForm.model_construct(
        strands=strands,
        infimum=shift + leading,
        factors=tuple(factors[leading:]),
    )


def positive_word(p: Sequence[int]) -> List[int]:
    """A positive word for the permutation braid with image p, read left to right."""
    current = list(p)
    letters = []
    while True:
        inverse = _inverse(current)
        for i in range(len(current) - 1):
            if inverse[i] > inverse[i + 1]:
                letters.append(i + 1)
                current[inverse[i]] = i + 1
                current[inverse[i + 1]] = i
                break
        else:
            return letters


# ================================================================
# NORMAL FORM
# ================================================================

@lru_cache(maxsize=4096)
def _normal_form_cached(strands: int, letters: Tuple[int, ...]) -> NormalForm:
    if strands == 1:
        return NormalForm.model_construct(strands=1, infimum=0, factors=())
    simple: List[Perm] = []
    negatives = 0
    for letter in reversed(letters):
        if letter < 0:
            negatives += 1
            factor = _co_generator(strands, -letter)
        else:
            factor = _generator(strands, letter)
        simple.append(_tau_power(factor, negatives))
    # runs that stay permutation braids are packed before left-weighting
    packed: List[Perm] = []
    for factor in reversed(simple):
        merged = _merge(packed[-1], factor) if packed else None
        if merged is None:
            packed.append(factor)
        else:
            packed[-1] = merged
    factors: List[Perm] = []
    for factor in packed:
        _append(factors, factor)
    logger.debug(f"Normalized {len(letters)} letters in B_{strands} to {len(factors)} factors via {len(packed)} packed")
    return _finish(strands, -negatives, factors)


def normal_form(w: BraidWord) -> NormalForm:
    """Left-greedy Garside normal form of w."""
    return _normal_form_cached(w.strands, tuple(w.letters))


def canonical_key(w: BraidWord) -> str:
    return normal_form(w).key


def multiply(left: NormalForm, right: NormalForm) -> NormalForm:
    """Product of two canonical forms: Δ^a X Δ^b Y = Δ^{a+b} τ^b(X) Y."""
    if left.strands != right.strands:
        raise BraidError("STRAND_MISMATCH", f"Cannot multiply forms on {left.strands} and {right.strands} strands")
    if left.strands == 1:
        return left
    factors = [_tau_power(f, right.infimum) for f in left.factors]
    for factor in right.factors:
        _append(factors, factor)
    return _finish(left.strands, left.infimum + right.infimum, factors)


def inverse_form(nf: NormalForm) -> NormalForm:
    """Canonical form of the inverse braid."""
    return normal_form(invert(to_word(nf)))


def to_word(nf: NormalForm) -> BraidWord:
    """A word representing the canonical form (Δ powers expanded)."""
    k = nf.strands
    letters: List[int] = []
    delta_letters = positive_word(_delta(k)) if k > 1 else []
    if nf.infimum >= 0:
        letters.extend(delta_letters * nf.infimum)
    else:
        letters.extend([-x for x in reversed(delta_letters)] * (-nf.infimum))
    for factor in nf.factors:
        letters.extend(positive_word(factor))
    return BraidWord.of(k, letters)


def parse_key(key: str, strands: int) -> NormalForm:
    """Rebuild a NormalForm from its canonical key."""
    parts = key.split("|")
    if not parts[0].startswith("D^"):
        raise BraidError("PARSE_ERROR", f"Malformed canonical key: {key!r}")
    try:
        infimum = int(parts[0][2:])
        factors = []
        for part in parts[1:]:
            values = part.split(",") if strands > 9 else list(part)
            factors.append(tuple(int(v) - 1 for v in values))
    except ValueError as exc:
        raise BraidError("PARSE_ERROR", f"Malformed canonical key: {key!r}") from exc
    for factor in factors:
        if sorted(factor) != list(range(strands)):
            raise BraidError("PARSE_ERROR", f"Factor {factor} of {key!r} is not a permutation of {strands}")
    return NormalForm.model_construct(strands=strands, infimum=infimum, factors=tuple(factors))


@lru_cache(maxsize=1 << 14)
def multiply_keys(left: str, right: str, strands: int) -> str:
    return multiply(parse_key(left, strands), parse_key(right, strands)).key


# ================================================================
# EQUALITY
# ================================================================

def equal(u: BraidWord, v: BraidWord) -> bool:
    """True iff u and v are the same element of B_k."""
    require_same_strands(u, v)
    if u.letters == v.letters:
        return True
    if u.exponent_sum != v.exponent_sum:
        return False
    return normal_form(u).key == normal_form(v).key


def is_trivial(w: BraidWord) -> bool:
    return equal(w, BraidWord.empty(w.strands))
