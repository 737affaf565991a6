"""
Integral group ring of B_k.

Ring elements are finite integer combinations of braids keyed by canonical
normal-form keys, so equality is exact and spelling-independent. On top of
that sit singular-word resolution, the factorization of singular words
into products of augmentation factors (p − 1), crossing-change unknotting
of pure braids, and the expansion of certified commutators into I^n.
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from pydantic import ConfigDict, Field

from src.braids.algebra.braid_core import (
    commutator,
    compose,
    compose_all,
    conjugate,
    crossing_strands,
    invert,
    require_pure,
)
from src.braids.algebra.subgroup_series import evaluate, lcs_level_of
from src.braids.algebra.word_problem import (
    canonical_key,
    is_trivial,
    multiply_keys,
    parse_key,
    to_word,
)
from src.braids.exceptions import BraidError, require_same_strands
from src.braids.models.schemas import (
    BraidsBaseModel,
    BraidWord,
    CertifiedElement,
    CommutatorExpr,
    IdealFactorization,
    SignedSingularWord,
    SingularBraidWord,
)


logger = logging.getLogger("braids.algebra.group_ring")

DEFAULT_DESCENT_STEP_FACTOR = 4


# ================================================================
# RING ELEMENTS
# ================================================================

class RingElement(BraidsBaseModel):
    """Σ c_g · g over canonical keys; zero coefficients are never stored."""

    strands: int
    terms: Dict[str, int] = Field(default_factory=dict)

    model_config = ConfigDict(frozen=False)

    @classmethod
    def zero(cls, strands: int) -> "RingElement":
        return cls(strands=strands)

    @classmethod
    def one(cls, strands: int) -> "RingElement":
        return cls.from_word(BraidWord.empty(strands))

    @classmethod
    def from_word(cls, word: BraidWord, coefficient: int = 1) -> "RingElement":
        if coefficient == 0:
            return cls(strands=word.strands)
        return cls(strands=word.strands, terms={canonical_key(word): coefficient})

    @classmethod
    def augmentation_factor(cls, word: BraidWord) -> "RingElement":
        """g − 1."""
        return cls.from_word(word) - cls.one(word.strands)

    @classmethod
    def combination(cls, strands: int, pairs: Iterable[Tuple[int, BraidWord]]) -> "RingElement":
        terms: Dict[str, int] = {}
        for coefficient, word in pairs:
            key = canonical_key(word)
            terms[key] = terms.get(key, 0) + coefficient
        return cls(strands=strands, terms={k: c for k, c in terms.items() if c})

    def _combine(self, other: "RingElement", sign: int) -> "RingElement":
        if self.strands != other.strands:
            raise BraidError("STRAND_MISMATCH", f"Ring elements on {self.strands} and {other.strands} strands")
        terms = dict(self.terms)
        for key, coefficient in other.terms.items():
            total = terms.get(key, 0) + sign * coefficient
            if total:
                terms[key] = total
            else:
                terms.pop(key, None)
        return RingElement(strands=self.strands, terms=terms)

    def __add__(self, other: "RingElement") -> "RingElement":
        return self._combine(other, 1)

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self._combine(other, -1)

    def __neg__(self) -> "RingElement":
        return RingElement(strands=self.strands, terms={k: -c for k, c in self.terms.items()})

    def __mul__(self, other: Union["RingElement", int]) -> "RingElement":
        if isinstance(other, int):
            if other == 0:
                return RingElement.zero(self.strands)
            return RingElement(strands=self.strands, terms={k: c * other for k, c in self.terms.items()})
        if self.strands != other.strands:
            raise BraidError("STRAND_MISMATCH", f"Ring elements on {self.strands} and {other.strands} strands")
        terms: Dict[str, int] = {}
        for left_key, left_coefficient in self.terms.items():
            for right_key, right_coefficient in other.terms.items():
                key = multiply_keys(left_key, right_key, self.strands)
                terms[key] = terms.get(key, 0) + left_coefficient * right_coefficient
        return RingElement(strands=self.strands, terms={k: c for k, c in terms.items() if c})

    def __rmul__(self, other: int) -> "RingElement":
        return self.__mul__(other)

    @property
    def augmentation(self) -> int:
        return sum(self.terms.values())

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> List[Tuple[str, int]]:
        return sorted(self.terms.items())

    def words(self) -> List[Tuple[int, BraidWord]]:
        """(coefficient, representative word) pairs in key order."""
        return [(c, to_word(parse_key(key, self.strands))) for key, c in self.sorted_terms()]


def ring_product(factors: Sequence[RingElement], strands: int) -> RingElement:
    result = RingElement.one(strands)
    for factor in factors:
        result = result * factor
    return result


def augmentation_product(xs: Sequence[BraidWord], tail: Optional[BraidWord] = None) -> RingElement:
    """Π (x_i − 1) · tail."""
    if not xs and tail is None:
        raise BraidError("PRECONDITION_FAILED", "Need at least one factor or a tail")
    strands = xs[0].strands if xs else tail.strands
    result = ring_product([RingElement.augmentation_factor(x) for x in xs], strands)
    if tail is not None:
        result = result * RingElement.from_word(tail)
    return result


# ================================================================
# SINGULAR WORDS
# ================================================================

def resolve(s: SingularBraidWord) -> RingElement:
    """Expand every double point τ_i = σ_i − σ_i^{-1}: 2^n signed terms."""
    partial: List[Tuple[int, List[int]]] = [(1, [])]
    for index, kind in s.letters:
        if kind == 0:
            partial = [
                branch
                for sign, letters in partial
                for branch in ((sign, letters + [index]), (-sign, letters + [-index]))
            ]
        else:
            for _, letters in partial:
                letters.append(index * kind)
    return RingElement.combination(s.strands, ((sign, BraidWord.of(s.strands, letters)) for sign, letters in partial))


def to_ideal_form(s: SingularBraidWord) -> IdealFactorization:
    """
    Write s = w_1 τ_{i_1} w_2 ⋯ τ_{i_n} w_{n+1} as Π (v_j σ_{i_j}² v_j^{-1} − 1) · v_n w_{n+1}
    with v_j = w_1 σ_{i_1}^{-1} ⋯ w_j σ_{i_j}^{-1}.
    """
    k = s.strands
    prefix = BraidWord.empty(k)
    segment: List[int] = []
    factors = []
    for index, kind in s.letters:
        if kind != 0:
            segment.append(index * kind)
            continue
        v = compose(prefix, BraidWord.of(k, segment + [-index]))
        factors.append(compose_all(v, BraidWord.of(k, (index, index)), invert(v)))
        prefix = v
        segment = []
    tail = compose(prefix, BraidWord.of(k, segment))
    return IdealFactorization(factors=tuple(factors), tail=tail)


def expand_ideal_form(form: IdealFactorization) -> RingElement:
    return augmentation_product(list(form.factors), form.tail)


# ================================================================
# CROSSING-CHANGE DESCENT
# ================================================================

CrossingSwitch = Tuple[int, Tuple[int, ...], int, Tuple[int, ...]]
_Segments = List[Tuple[Tuple[int, ...], bool]]


def _invert_segments(segments: _Segments) -> _Segments:
    return [(tuple(-l for l in reversed(letters)), is_leaf) for letters, is_leaf in reversed(segments)]


def certificate_segments(expr: CommutatorExpr) -> _Segments:
    """
    Unreduced letters of a certificate, cut into (letters, is_leaf) blocks.
    Leaf blocks are pure; the others pair up as g^{-1} ... g around a conjugated child.
    """
    memo: Dict[int, _Segments] = {}

    def walk(node) -> _Segments:
        cached = memo.get(id(node))
        if cached is not None:
            return cached
        if node.kind == "leaf":
            value = [(node.word.letters, True)]
        elif node.kind == "comm":
            left, right = walk(node.left), walk(node.right)
            value = left + right + _invert_segments(left) + _invert_segments(right)
        elif node.kind == "prod":
            value = [segment for child in node.factors for segment in walk(child)]
        elif node.kind == "inv":
            value = _invert_segments(walk(node.child))
        else:
            by = node.by.letters
            value = [(tuple(-l for l in reversed(by)), False)] + walk(node.child) + [(by, False)]
        memo[id(node)] = value
        return value

    return walk(expr)


def _layered_targets(strands: int, letters: Sequence[int]) -> List[int]:
    """Positions where the strand with the larger starting position passes over."""
    targets = []
    for position, (left, right, sign) in enumerate(crossing_strands(BraidWord.of(strands, letters))):
        over = right if sign > 0 else left
        under = left if sign > 0 else right
        if over > under:
            targets.append(position)
    return targets


def _switch_all(strands: int, letters: List[int], targets: Iterable[int]) -> List[CrossingSwitch]:
    switches = []
    for position in targets:
        letter = letters[position]
        switches.append((1 if letter > 0 else -1, tuple(letters[:position]), abs(letter), tuple(letters[position + 1:])))
        letters[position] = -letter
    if not is_trivial(BraidWord.of(strands, letters)):
        raise BraidError("INCONSISTENT_DATA", "Crossing changes did not reach the trivial braid")
    return switches


def _certified_switches(x: CertifiedElement) -> Tuple[List[int], List[int]]:
    """Letters of the certificate and the positions to switch, leaf by leaf."""
    letters: List[int] = []
    targets: List[int] = []
    for block, is_leaf in certificate_segments(x.certificate):
        if is_leaf:
            targets.extend(len(letters) + position for position in _layered_targets(x.strands, block))
        letters.extend(block)
    return letters, targets


def crossing_switches(
    x: Union[BraidWord, CertifiedElement],
    step_factor: int = DEFAULT_DESCENT_STEP_FACTOR,
) -> List[CrossingSwitch]:
    """
    Unknot a pure braid by crossing changes.

    A certified input is unknotted through its certificate: every leaf block
    is switched to the trivial braid, and the conjugating blocks then cancel.
    That path is taken while it needs at most step_factor · |x| switches;
    otherwise, and for plain words, every crossing where the strand with the
    larger starting position passes over is switched, which leaves a layered
    (hence trivial) pure braid.

    Returns (ε, u, i, v) per switch so that the word before the switch is
    u σ_i^ε v; then x − 1 = Σ ε · u τ_i v.
    """
    word = x.word if isinstance(x, CertifiedElement) else x
    require_pure(word)
    budget = step_factor * max(len(word.letters), 1)
    if isinstance(x, CertifiedElement):
        letters, targets = _certified_switches(x)
        if len(targets) <= budget:
            switches = _switch_all(word.strands, letters, targets)
            logger.debug(f"Unknotted {word.text} through its certificate with {len(switches)} crossing changes")
            return switches
        logger.debug(f"Certificate of {word.text} needs {len(targets)} switches, over its budget of {budget}")
    letters = list(word.letters)
    switches = _switch_all(word.strands, letters, _layered_targets(word.strands, letters))
    logger.debug(f"Unknotted {word.text} with {len(switches)} crossing changes")
    return switches


def to_double_points(
    xs: Sequence[Union[BraidWord, CertifiedElement]],
    tail: Optional[BraidWord] = None,
    step_factor: int = DEFAULT_DESCENT_STEP_FACTOR,
) -> List[SignedSingularWord]:
    """Signed singular words whose resolutions sum to Π (x_i − 1) · tail."""
    if not xs and tail is None:
        raise BraidError("PRECONDITION_FAILED", "Need at least one factor or a tail")
    words = [x.word if isinstance(x, CertifiedElement) else x for x in xs]
    strands = words[0].strands if words else tail.strands
    for w in words:
        require_same_strands(w, BraidWord.empty(strands))
    tail_letters = [(abs(l), 1 if l > 0 else -1) for l in (tail.letters if tail else ())]

    combined: List[Tuple[int, List[Tuple[int, int]]]] = [(1, [])]
    for x in xs:
        pieces = []
        for sign, u, index, v in crossing_switches(x, step_factor):
            letters = [(abs(l), 1 if l > 0 else -1) for l in u] + [(index, 0)] + [(abs(l), 1 if l > 0 else -1) for l in v]
            pieces.append((sign, letters))
        combined = [(s1 * s2, l1 + l2) for s1, l1 in combined for s2, l2 in pieces]
    return [
        SignedSingularWord(sign=sign, word=SingularBraidWord(strands=strands, letters=tuple(letters + tail_letters)))
        for sign, letters in combined
    ]


def resolve_combination(words: Sequence[SignedSingularWord]) -> RingElement:
    if not words:
        raise BraidError("PRECONDITION_FAILED", "Empty singular combination")
    total = RingElement.zero(words[0].word.strands)
    for item in words:
        total = total + resolve(item.word) * item.sign
    return total


# ================================================================
# COMMUTATOR EXPANSION
# ================================================================

class IdealTerm(BraidsBaseModel):
    """coefficient · Π (g_j − 1) · unit."""

    coefficient: int
    factors: Tuple[BraidWord, ...]
    unit: BraidWord

    def ring_value(self) -> RingElement:
        return augmentation_product(list(self.factors), self.unit) * self.coefficient


class IdealExpansion(BraidsBaseModel):
    element: BraidWord
    level: int
    terms: Tuple[IdealTerm, ...]

    def ring_sum(self) -> RingElement:
        total = RingElement.zero(self.element.strands)
        for term in self.terms:
            total = total + term.ring_value()
        return total

    @property
    def min_factors(self) -> int:
        return min((len(term.factors) for term in self.terms), default=0)


_Term = Tuple[int, List[BraidWord], BraidWord]


def _push_unit(factors: Sequence[BraidWord], unit: BraidWord) -> List[BraidWord]:
    """u · Π (f − 1) = Π (u f u^{-1} − 1) · u, factor by factor."""
    return [conjugate(f, invert(unit)) for f in factors]


def _expand(node: CommutatorExpr) -> List[_Term]:
    if node.kind == "leaf":
        return [(1, [node.word], BraidWord.empty(node.word.strands))]
    if node.kind == "comm":
        x, y = evaluate(node.left), evaluate(node.right)
        tail = compose(invert(x), invert(y))
        left, right = _expand(node.left), _expand(node.right)
        terms = [
            (c1 * c2, f1 + _push_unit(f2, u1), compose_all(u1, u2, tail))
            for c1, f1, u1 in left
            for c2, f2, u2 in right
        ]
        terms += [
            (-c1 * c2, f2 + _push_unit(f1, u2), compose_all(u2, u1, tail))
            for c1, f1, u1 in left
            for c2, f2, u2 in right
        ]
        return terms
    if node.kind == "prod":
        children = list(node.factors)
        terms = _expand(children[0])
        product = evaluate(children[0])
        for child in children[1:]:
            # xy − 1 = x (y − 1) + (x − 1)
            terms = [(c, _push_unit(f, product), compose(product, u)) for c, f, u in _expand(child)] + terms
            product = compose(product, evaluate(child))
        return terms
    if node.kind == "inv":
        # x^{-1} − 1 = −x^{-1} (x − 1)
        x_inverse = invert(evaluate(node.child))
        return [(-c, _push_unit(f, x_inverse), compose(x_inverse, u)) for c, f, u in _expand(node.child)]
    # g^{-1} x g − 1 = g^{-1} (x − 1) g
    g = node.by
    g_inverse = invert(g)
    return [(c, _push_unit(f, g_inverse), compose_all(g_inverse, u, g)) for c, f, u in _expand(node.child)]


def expand_commutator(x: CertifiedElement) -> IdealExpansion:
    """x − 1 as a sum of products of at least level-many augmentation factors."""
    level = lcs_level_of(x.certificate)
    terms = tuple(
        IdealTerm(coefficient=c, factors=tuple(f), unit=u) for c, f, u in _expand(x.certificate)
    )
    logger.debug(f"Expanded a level {level} certificate into {len(terms)} summands")
    return IdealExpansion(element=x.word, level=level, terms=terms)


# ================================================================
# LOCAL REWRITING IDENTITIES
# ================================================================

def swap_sides(x: BraidWord, y: BraidWord) -> Tuple[RingElement, RingElement]:
    """
    (x − 1)(y − 1) − (y − 1)(x − 1)  and  ([x, y] − 1) + ([x, y] − 1)(yx − 1).
    """
    require_same_strands(x, y)
    fx, fy = RingElement.augmentation_factor(x), RingElement.augmentation_factor(y)
    bracket = RingElement.augmentation_factor(commutator(x, y))
    left = fx * fy - fy * fx
    right = bracket + bracket * RingElement.augmentation_factor(compose(y, x))
    return left, right


def move_past_sides(x: BraidWord, y: BraidWord) -> Tuple[RingElement, RingElement]:
    """(x − 1) y − y (x − 1)  and  ([x, y] − 1) y x."""
    require_same_strands(x, y)
    fx, wy = RingElement.augmentation_factor(x), RingElement.from_word(y)
    left = fx * wy - wy * fx
    right = RingElement.augmentation_factor(commutator(x, y)) * RingElement.from_word(compose(y, x))
    return left, right


def ring_key(element: RingElement) -> str:
    if element.is_zero:
        return "0"
    return " ".join(f"{c:+d}*{key}" for key, c in element.sorted_terms())
