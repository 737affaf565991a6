"""
Certified elements of the lower central and derived series of P_k.

A certificate is a commutator tree over pure leaves. Its LCS level follows
[LCS_m, LCS_n] ⊂ LCS_{m+n}; its DS level follows [DS_n, DS_n] = DS_{n+1}.
Products take the minimum; inverses and conjugates keep the child's level
because every term of either series is normal in B_k.
"""

import logging
from typing import Callable, Dict, Iterable, List, Sequence

import numpy as np

from src.braids.algebra.braid_core import (
    commutator,
    compose_all,
    conjugate,
    include,
    invert,
    is_pure,
    pure_generator,
    shift_letters,
    sign_flip,
    twist_power,
)
from src.braids.algebra.word_problem import equal, is_trivial
from src.braids.exceptions import BraidError, require_same_strands
from src.braids.models.schemas import (
    BraidWord,
    CertifiedElement,
    CommutatorExpr,
    ExprCommutator,
    ExprConjugate,
    ExprInverse,
    ExprLeaf,
    ExprProduct,
    Series,
)


logger = logging.getLogger("braids.algebra.subgroup_series")

_UNBOUNDED = 10 ** 9


def seeded_rng(seed: int, *stream: int) -> np.random.Generator:
    """Generator for one named stream of a seed; streams never overlap."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=tuple(stream)))


# ================================================================
# CERTIFICATE EVALUATION
# ================================================================

def evaluate(expr: CommutatorExpr) -> BraidWord:
    """Multiply out a certificate tree."""
    memo: Dict[int, BraidWord] = {}

    def walk(node) -> BraidWord:
        cached = memo.get(id(node))
        if cached is not None:
            return cached
        if node.kind == "leaf":
            value = node.word
        elif node.kind == "comm":
            value = commutator(walk(node.left), walk(node.right))
        elif node.kind == "prod":
            parts = [walk(child) for child in node.factors]
            value = compose_all(parts[0], *parts[1:])
        elif node.kind == "inv":
            value = invert(walk(node.child))
        else:
            value = conjugate(walk(node.child), node.by)
        memo[id(node)] = value
        return value

    return walk(expr)


def _level(expr: CommutatorExpr, combine: Callable[[int, int], int]) -> int:
    memo: Dict[int, int] = {}

    def walk(node) -> int:
        cached = memo.get(id(node))
        if cached is not None:
            return cached
        if node.kind == "leaf":
            value = 1 if node.word.letters else _UNBOUNDED
        elif node.kind == "comm":
            value = combine(walk(node.left), walk(node.right))
        elif node.kind == "prod":
            value = min((walk(child) for child in node.factors), default=_UNBOUNDED)
        else:
            value = walk(node.child)
        memo[id(node)] = value
        return value

    return walk(expr)


def lcs_level_of(expr: CommutatorExpr) -> int:
    return _level(expr, lambda m, n: m + n)


def ds_level_of(expr: CommutatorExpr) -> int:
    return _level(expr, lambda m, n: min(m, n) + 1)


def certified_level(expr: CommutatorExpr, series: Series) -> int:
    """Best level the tree proves for the series, using DS_n ⊂ LCS_{2^{n-1}}."""
    if Series(series) == Series.DS:
        return ds_level_of(expr)
    ds_level = ds_level_of(expr)
    if ds_level >= _UNBOUNDED:
        return _UNBOUNDED
    return max(lcs_level_of(expr), 2 ** (ds_level - 1))


def certificate_words(expr: CommutatorExpr) -> List[BraidWord]:
    """Leaf words of the tree, each shared node visited once."""
    seen = set()
    words: List[BraidWord] = []
    stack = [expr]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if node.kind == "leaf":
            words.append(node.word)
        elif node.kind == "comm":
            stack.extend((node.left, node.right))
        elif node.kind == "prod":
            stack.extend(node.factors)
        else:
            stack.append(node.child)
    return words


def certify(word: BraidWord, series: Series, level: int, certificate: CommutatorExpr) -> CertifiedElement:
    """Check the certificate against the word and the claimed level."""
    if not is_pure(word):
        raise BraidError("CERTIFICATE_INVALID", f"Certified word {word.text} is not pure")
    for leaf_word in certificate_words(certificate):
        if leaf_word.strands != word.strands:
            raise BraidError(
                "CERTIFICATE_INVALID",
                f"Certificate leaf {leaf_word.text} is not on {word.strands} strands",
            )
        if not is_pure(leaf_word):
            raise BraidError("CERTIFICATE_INVALID", f"Certificate leaf {leaf_word.text} is not a pure braid")
    proven = certified_level(certificate, series)
    if proven < level:
        raise BraidError(
            "CERTIFICATE_INVALID",
            f"Certificate proves {Series(series).value} level {proven}, not {level}",
        )
    if not equal(word, evaluate(certificate)):
        raise BraidError("CERTIFICATE_INVALID", f"Certificate does not evaluate to {word.text}")
    return CertifiedElement.model_construct(word=word, series=Series(series), level=level, certificate=certificate)


def leaf(word: BraidWord, series: Series = Series.LCS) -> CertifiedElement:
    """A pure word certified at level 1."""
    if not is_pure(word):
        raise BraidError("NOT_PURE", f"Leaf {word.text} is not a pure braid")
    return CertifiedElement.model_construct(
        word=word, series=Series(series), level=1, certificate=ExprLeaf(word=word)
    )


def identity_element(k: int, series: Series = Series.LCS, level: int = 1) -> CertifiedElement:
    """The trivial braid; an empty leaf lies in every term of either series."""
    word = BraidWord.empty(k)
    return CertifiedElement.model_construct(
        word=word, series=Series(series), level=level, certificate=ExprLeaf(word=word)
    )


def map_certificate(expr: CommutatorExpr, transform: Callable[[BraidWord], BraidWord]) -> CommutatorExpr:
    """Apply a letter-level group automorphism to every word in the tree."""
    memo: Dict[int, CommutatorExpr] = {}

    def walk(node):
        cached = memo.get(id(node))
        if cached is not None:
            return cached
        if node.kind == "leaf":
            value = ExprLeaf(word=transform(node.word))
        elif node.kind == "comm":
            value = ExprCommutator(left=walk(node.left), right=walk(node.right))
        elif node.kind == "prod":
            value = ExprProduct(factors=tuple(walk(child) for child in node.factors))
        elif node.kind == "inv":
            value = ExprInverse(child=walk(node.child))
        else:
            value = ExprConjugate(child=walk(node.child), by=transform(node.by))
        memo[id(node)] = value
        return value

    return walk(expr)


# ================================================================
# CERTIFIED ARITHMETIC
# ================================================================

def level_of_commutator(x: CertifiedElement, y: CertifiedElement) -> CertifiedElement:
    """[x, y] certified at LCS level m + n."""
    require_same_strands(x.word, y.word)
    tree = ExprCommutator(left=x.certificate, right=y.certificate)
    return CertifiedElement.model_construct(
        word=commutator(x.word, y.word),
        series=Series.LCS,
        level=x.lcs_level + y.lcs_level,
        certificate=tree,
    )


def ds_commutator(x: CertifiedElement, y: CertifiedElement) -> CertifiedElement:
    """[x, y] for DS-certified x, y at level min + 1."""
    require_same_strands(x.word, y.word)
    tree = ExprCommutator(left=x.certificate, right=y.certificate)
    return CertifiedElement.model_construct(
        word=commutator(x.word, y.word),
        series=Series.DS,
        level=min(x.level, y.level) + 1,
        certificate=tree,
    )


def product_of(elements: Sequence[CertifiedElement]) -> CertifiedElement:
    """Product at the minimum level; all elements must share a series."""
    if not elements:
        raise BraidError("PRECONDITION_FAILED", "Empty certified product")
    series = {Series(e.series) for e in elements}
    if len(series) != 1:
        # Mixed inputs are compared as LCS levels.
        level = min(e.lcs_level for e in elements)
        kind = Series.LCS
    else:
        kind = series.pop()
        level = min(e.level for e in elements)
    word = compose_all(elements[0].word, *(e.word for e in elements[1:]))
    return CertifiedElement.model_construct(
        word=word,
        series=kind,
        level=level,
        certificate=ExprProduct(factors=tuple(e.certificate for e in elements)),
    )


def inverse_of(x: CertifiedElement) -> CertifiedElement:
    return CertifiedElement.model_construct(
        word=invert(x.word), series=x.series, level=x.level, certificate=ExprInverse(child=x.certificate)
    )


def conjugate_of(x: CertifiedElement, g: BraidWord) -> CertifiedElement:
    """g^{-1} x g with the certificate wrapped in a conjugation node."""
    require_same_strands(x.word, g)
    return CertifiedElement.model_construct(
        word=conjugate(x.word, g),
        series=x.series,
        level=x.level,
        certificate=ExprConjugate(child=x.certificate, by=g),
    )


def include_element(x: CertifiedElement, m: int) -> CertifiedElement:
    return CertifiedElement.model_construct(
        word=include(x.word, m),
        series=x.series,
        level=x.level,
        certificate=map_certificate(x.certificate, lambda w: include(w, m)),
    )


def strand_shift(e: CertifiedElement, offset: int, m: int) -> CertifiedElement:
    """
    Include e into B_m and conjugate by t_m^offset, moving its support
    offset strands to the right. The word is spelled with shifted letters,
    which equals the conjugate.
    """
    word = shift_letters(e.word, offset, m)
    if offset == 0:
        return include_element(e, m)
    included = map_certificate(e.certificate, lambda w: include(w, m))
    tree = ExprConjugate(child=included, by=twist_power(m, offset))
    return CertifiedElement.model_construct(word=word, series=e.series, level=e.level, certificate=tree)


def shift_element(e: CertifiedElement, offset: int, m: int) -> CertifiedElement:
    """Like strand_shift but with every certificate word letter-shifted too."""
    return CertifiedElement.model_construct(
        word=shift_letters(e.word, offset, m),
        series=e.series,
        level=e.level,
        certificate=map_certificate(e.certificate, lambda w: shift_letters(w, offset, m)),
    )


def flip_element(e: CertifiedElement) -> CertifiedElement:
    """Image under σ_i ↦ σ_i^{-1}; levels are preserved."""
    return CertifiedElement.model_construct(
        word=sign_flip(e.word),
        series=e.series,
        level=e.level,
        certificate=map_certificate(e.certificate, sign_flip),
    )


# ================================================================
# SAMPLING
# ================================================================

def _random_generator(rng: np.random.Generator, k: int) -> BraidWord:
    i = int(rng.integers(1, k))
    j = int(rng.integers(i + 1, k + 1))
    generator = pure_generator(i, j, k)
    return generator if rng.random() < 0.5 else invert(generator)


def lcs_sample(k: int, n: int, seed: int = 0, attempts: int = 32) -> CertifiedElement:
    """
    Left-nested commutator [[…[g_1, g_2], …], g_n] of random pure
    generators. Trivial draws are retried when P_k has room for a
    nontrivial one.
    """
    if k < 2 or n < 1:
        raise BraidError("PRECONDITION_FAILED", f"lcs_sample needs k >= 2 and n >= 1, got k={k}, n={n}")
    rng = seeded_rng(seed, 1, k, n)
    element = None
    for attempt in range(attempts):
        element = leaf(_random_generator(rng, k))
        for _ in range(n - 1):
            element = level_of_commutator(element, leaf(_random_generator(rng, k)))
        if n == 1 or k == 2 or not is_trivial(element.word):
            break
        logger.debug(f"lcs_sample attempt {attempt} was trivial in P_{k}, redrawing")
    return element


def ds_sample(k: int, n: int, seed: int = 0, attempts: int = 32) -> CertifiedElement:
    """Balanced commutator tree of depth n − 1 over random pure generators."""
    if k < 2 or n < 1:
        raise BraidError("PRECONDITION_FAILED", f"ds_sample needs k >= 2 and n >= 1, got k={k}, n={n}")
    rng = seeded_rng(seed, 2, k, n)

    def build(level: int) -> CertifiedElement:
        if level == 1:
            return leaf(_random_generator(rng, k), Series.DS)
        return ds_commutator(build(level - 1), build(level - 1))

    element = None
    for attempt in range(attempts):
        element = build(n)
        if n == 1 or k == 2 or not is_trivial(element.word):
            break
        logger.debug(f"ds_sample attempt {attempt} was trivial in P_{k}, redrawing")
    return element


def verify_certified(elements: Iterable[CertifiedElement]) -> List[CertifiedElement]:
    """Re-run certify on each element; returns them unchanged."""
    checked = []
    for element in elements:
        certify(element.word, element.series, element.level, element.certificate)
        checked.append(element)
    return checked
