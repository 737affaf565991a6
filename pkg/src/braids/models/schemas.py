"""
Braid toolkit data schemas.

These Pydantic models are the value types shared by every module:
braid and free-group words, permutations, canonical forms, commutator
certificates, closure diagrams and equivalence witnesses. All of them are
immutable once built.
"""

from enum import Enum
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.braids.exceptions import BraidError


# ============================================================
# ENUMS
# ============================================================

class Series(str, Enum):
    """Which normal series of the pure braid group a certificate lives in."""
    LCS = "lcs"
    DS = "ds"


class Ds3Form(str, Enum):
    """
    Letter patterns of the DS_n(P_3) word families.

    a = σ1, B = σ2^{-1}, d = σ2σ1σ2, D = d^{-1}; w is a word in a and B.
    BWBD is auxiliary: it is the D-form paired with dawa.
    """
    AWA = "awa"
    AWB = "awB"
    BWA = "Bwa"
    BWB = "BwB"
    AWAD = "awaD"
    AWBD = "awBD"
    BWAD = "BwaD"
    BWBD = "BwBD"
    DAWA = "dawa"
    DAWB = "dawB"
    DBWA = "dBwa"
    DBWB = "dBwB"


class MarkovKind(str, Enum):
    CONJUGATE = "conjugate"
    STABILIZE = "stabilize"
    DESTABILIZE = "destabilize"


# ============================================================
# BASE MODELS
# ============================================================

class BraidsBaseModel(BaseModel):
    """Base model for immutable toolkit values."""

    model_config = ConfigDict(
        extra="ignore",
        use_enum_values=True,
        frozen=True,
        arbitrary_types_allowed=True,
    )


# ============================================================
# WORDS AND PERMUTATIONS
# ============================================================

class BraidWord(BraidsBaseModel):
    """
    A word in the Artin generators of B_k.

    Letter i > 0 is σ_i, letter -i is σ_i^{-1}. The strand count is explicit
    so inclusion into larger groups is unambiguous.
    """

    strands: int = Field(ge=1)
    letters: Tuple[int, ...] = ()

    @model_validator(mode="after")
    def _check_letters(self) -> "BraidWord":
        for letter in self.letters:
            if letter == 0 or abs(letter) >= self.strands:
                raise BraidError(
                    "INDEX_OUT_OF_RANGE",
                    f"Letter {letter} is not a generator of B_{self.strands}",
                    {"letter": letter, "strands": self.strands},
                )
        return self

    @classmethod
    def of(cls, strands: int, letters) -> "BraidWord":
        """Build without validation; callers guarantee the letters are in range."""
        return cls.model_construct(strands=strands, letters=tuple(letters))

    @classmethod
    def empty(cls, strands: int) -> "BraidWord":
        return cls.of(strands, ())

    @staticmethod
    def inverse_letter(letter: int) -> int:
        return -letter

    def with_letters(self, letters) -> "BraidWord":
        return BraidWord.of(self.strands, letters)

    @property
    def exponent_sum(self) -> int:
        return sum(1 if letter > 0 else -1 for letter in self.letters)

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def text(self) -> str:
        body = " ".join(str(letter) for letter in self.letters)
        return f"B{self.strands}: {body}".rstrip()

    def __str__(self) -> str:
        return self.text


class FreeWord(BraidsBaseModel):
    """A word in abstract free generators; letters are (generator id, ±1)."""

    letters: Tuple[Tuple[str, int], ...] = ()

    @model_validator(mode="after")
    def _check_signs(self) -> "FreeWord":
        for name, sign in self.letters:
            if sign not in (1, -1) or not name:
                raise BraidError("PARSE_ERROR", f"Bad free letter ({name!r}, {sign})")
        return self

    @classmethod
    def of(cls, letters) -> "FreeWord":
        return cls.model_construct(letters=tuple(letters))

    @staticmethod
    def inverse_letter(letter: Tuple[str, int]) -> Tuple[str, int]:
        return (letter[0], -letter[1])

    def with_letters(self, letters) -> "FreeWord":
        return FreeWord.of(letters)

    @property
    def text(self) -> str:
        return " ".join(name if sign > 0 else f"{name}^-1" for name, sign in self.letters)

    def __str__(self) -> str:
        return self.text


class Permutation(BraidsBaseModel):
    """A bijection of {1..k} in one-line notation: image[i-1] is where i goes."""

    image: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_bijection(self) -> "Permutation":
        if sorted(self.image) != list(range(1, len(self.image) + 1)):
            raise BraidError("INCONSISTENT_DATA", f"{self.image} is not a bijection of 1..{len(self.image)}")
        return self

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls.model_construct(image=tuple(range(1, k + 1)))

    @property
    def size(self) -> int:
        return len(self.image)

    @property
    def is_identity(self) -> bool:
        return all(value == position for position, value in enumerate(self.image, start=1))

    def __call__(self, point: int) -> int:
        return self.image[point - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """self ∘ other: apply other first."""
        return Permutation.model_construct(image=tuple(self.image[v - 1] for v in other.image))

    def inverse(self) -> "Permutation":
        inverse = [0] * self.size
        for position, value in enumerate(self.image, start=1):
            inverse[value - 1] = position
        return Permutation.model_construct(image=tuple(inverse))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Cycles in order of their least element, fixed points included."""
        seen = set()
        result = []
        for start in range(1, self.size + 1):
            if start in seen:
                continue
            cycle = []
            point = start
            while point not in seen:
                seen.add(point)
                cycle.append(point)
                point = self.image[point - 1]
            result.append(tuple(cycle))
        return result

    @property
    def text(self) -> str:
        return " ".join(str(v) for v in self.image)


# ============================================================
# CANONICAL FORMS AND IDENTITY REPORTS
# ============================================================

class NormalForm(BraidsBaseModel):
    """
    Left-greedy Garside form Δ^infimum · f_1 ⋯ f_r.

    Factors are 0-based one-line images of permutation braids; none is the
    identity or the full half-twist.
    """

    strands: int
    infimum: int = 0
    factors: Tuple[Tuple[int, ...], ...] = ()

    @property
    def key(self) -> str:
        separator = "" if self.strands <= 9 else ","
        parts = [f"D^{self.infimum}"]
        for factor in self.factors:
            parts.append(separator.join(str(v + 1) for v in factor))
        return "|".join(parts)

    @property
    def canonical_length(self) -> int:
        return len(self.factors)


class IdentityReport(BraidsBaseModel):
    """Outcome of evaluating both sides of one identity instance."""

    identity_id: str
    parameters: Dict[str, str] = Field(default_factory=dict)
    verdict: bool
    left_key: str
    right_key: str


# ============================================================
# CERTIFICATES
# ============================================================

class ExprLeaf(BraidsBaseModel):
    kind: Literal["leaf"] = "leaf"
    word: BraidWord


class ExprCommutator(BraidsBaseModel):
    kind: Literal["comm"] = "comm"
    left: "CommutatorExpr"
    right: "CommutatorExpr"


class ExprProduct(BraidsBaseModel):
    kind: Literal["prod"] = "prod"
    factors: Tuple["CommutatorExpr", ...]


class ExprInverse(BraidsBaseModel):
    kind: Literal["inv"] = "inv"
    child: "CommutatorExpr"


class ExprConjugate(BraidsBaseModel):
    """Evaluates to by^{-1} · child · by."""
    kind: Literal["conj"] = "conj"
    child: "CommutatorExpr"
    by: BraidWord


CommutatorExpr = Annotated[
    Union[ExprLeaf, ExprCommutator, ExprProduct, ExprInverse, ExprConjugate],
    Field(discriminator="kind"),
]

for _node in (ExprLeaf, ExprCommutator, ExprProduct, ExprInverse, ExprConjugate):
    _node.model_rebuild()


class CertifiedElement(BraidsBaseModel):
    """
    A pure braid together with a commutator tree proving it lies in
    LCS_level or DS_level of P_k.
    """

    word: BraidWord
    series: Series
    level: int = Field(ge=1)
    certificate: CommutatorExpr

    @property
    def strands(self) -> int:
        return self.word.strands

    @property
    def lcs_level(self) -> int:
        """Level usable where an LCS certificate is required (DS_n ⊂ LCS_{2^{n-1}})."""
        if self.series == Series.DS:
            return 2 ** (self.level - 1)
        return self.level


# ============================================================
# DIAGRAMS AND WITNESSES
# ============================================================

class Diagram(BraidsBaseModel):
    """
    PD presentation of a braid closure.

    Each crossing X[a,b,c,d] lists edge labels counterclockwise starting
    from the incoming under-strand. ``components`` lists each component's
    edges in orientation order; ``gauss`` gives the matching signed crossing
    sequence (+ over, - under). Components meeting no crossing are counted
    in ``free_loops``.
    """

    word: BraidWord
    pd: Tuple[Tuple[int, int, int, int], ...] = ()
    signs: Tuple[int, ...] = ()
    components: Tuple[Tuple[int, ...], ...] = ()
    gauss: Tuple[Tuple[int, ...], ...] = ()
    free_loops: int = 0

    @property
    def crossing_count(self) -> int:
        return len(self.pd)

    @property
    def component_count(self) -> int:
        return len(self.components) + self.free_loops

    @property
    def is_knot(self) -> bool:
        return self.component_count == 1

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    @property
    def pd_text(self) -> str:
        return " ".join(f"X[{a},{b},{c},{d}]" for a, b, c, d in self.pd)


class LinkProfile(BraidsBaseModel):
    """Component count with the sorted multiset of pairwise linking numbers."""

    components: int
    linking: Tuple[int, ...] = ()


class EquivalenceWitness(BraidsBaseModel):
    """K1 = closure(base), K2 = closure(mover.word · base)."""

    strands: int
    base: BraidWord
    mover: CertifiedElement

    @model_validator(mode="after")
    def _check_strands(self) -> "EquivalenceWitness":
        if not (self.base.strands == self.mover.word.strands == self.strands):
            raise BraidError(
                "STRAND_MISMATCH",
                f"Witness on {self.strands} strands has base on {self.base.strands} "
                f"and mover on {self.mover.word.strands}",
            )
        return self

    @property
    def series(self) -> str:
        return self.mover.series

    @property
    def level(self) -> int:
        return self.mover.level


class MarkovStep(BraidsBaseModel):
    """One Markov move: conjugate(by), stabilize(sign) or destabilize."""

    kind: MarkovKind
    sign: Optional[int] = None
    by: Optional[BraidWord] = None


class StabilizationData(BraidsBaseModel):
    """
    A braid c = α^{-1} · b · α · σ_k^sign on k+1 strands presented by the
    conjugator α (in B_k) and the sign of the new crossing.
    """

    alpha: BraidWord
    sign: int = Field(ge=-1, le=1)

    @model_validator(mode="after")
    def _check_sign(self) -> "StabilizationData":
        if self.sign == 0:
            raise BraidError("INCONSISTENT_DATA", "Stabilization sign must be +1 or -1")
        return self


# ============================================================
# SINGULAR WORDS
# ============================================================

class SingularBraidWord(BraidsBaseModel):
    """
    A braid word that may contain double points.

    Letters are (index, kind) with kind +1/-1 for σ_index^{±1} and 0 for the
    double point τ_index = σ_index - σ_index^{-1}.
    """

    strands: int = Field(ge=1)
    letters: Tuple[Tuple[int, int], ...] = ()

    @model_validator(mode="after")
    def _check_letters(self) -> "SingularBraidWord":
        for index, kind in self.letters:
            if not 1 <= index < self.strands or kind not in (-1, 0, 1):
                raise BraidError("INDEX_OUT_OF_RANGE", f"Bad singular letter ({index}, {kind}) in B_{self.strands}")
        return self

    @property
    def double_points(self) -> int:
        return sum(1 for _, kind in self.letters if kind == 0)

    @property
    def text(self) -> str:
        tokens = [f"x{i}" if kind == 0 else str(i * kind) for i, kind in self.letters]
        return f"S{self.strands}: {' '.join(tokens)}".rstrip()


class IdealFactorization(BraidsBaseModel):
    """Π (p_j − 1) · tail with every p_j = v_j σ² v_j^{-1} pure."""

    factors: Tuple[BraidWord, ...] = ()
    tail: BraidWord


class SignedSingularWord(BraidsBaseModel):
    sign: int
    word: SingularBraidWord


# ============================================================
# RELATORS
# ============================================================

class Relator(BraidsBaseModel):
    """closure((x_1 − 1)⋯(x_m − 1) · y · t_k) with LCS-certified x_i."""

    strands: int
    xs: Tuple[CertifiedElement, ...]
    y: BraidWord

    @model_validator(mode="after")
    def _check_strands(self) -> "Relator":
        counts = {x.word.strands for x in self.xs} | {self.y.strands, self.strands}
        if len(counts) != 1:
            raise BraidError("STRAND_MISMATCH", f"Relator parts live on different strand counts: {sorted(counts)}")
        return self

    @property
    def length(self) -> int:
        return len(self.xs)

    @property
    def order(self) -> int:
        return sum(x.lcs_level for x in self.xs)


class SignedRelator(BraidsBaseModel):
    sign: int
    relator: Relator


class KnotHandle(BraidsBaseModel):
    """A braid representative of a knot together with its invariant fingerprint."""

    word: BraidWord
    fingerprint: Tuple[str, ...]

    @property
    def key(self) -> str:
        return "/".join(self.fingerprint)


class FormalKnotSum(BraidsBaseModel):
    """Integer combination of knot handles keyed by fingerprint."""

    coefficients: Dict[str, int] = Field(default_factory=dict)
    handles: Dict[str, KnotHandle] = Field(default_factory=dict)

    def __add__(self, other: "FormalKnotSum") -> "FormalKnotSum":
        coefficients = dict(self.coefficients)
        handles = dict(self.handles)
        for key, coefficient in other.coefficients.items():
            total = coefficients.get(key, 0) + coefficient
            handles.setdefault(key, other.handles[key])
            if total:
                coefficients[key] = total
            else:
                coefficients.pop(key, None)
        return FormalKnotSum(
            coefficients=coefficients,
            handles={key: handles[key] for key in coefficients},
        )

    def scaled(self, factor: int) -> "FormalKnotSum":
        if factor == 0:
            return FormalKnotSum()
        return FormalKnotSum(
            coefficients={key: c * factor for key, c in self.coefficients.items()},
            handles=dict(self.handles),
        )

    @classmethod
    def single(cls, handle: KnotHandle, coefficient: int = 1) -> "FormalKnotSum":
        if coefficient == 0:
            return cls()
        return cls(coefficients={handle.key: coefficient}, handles={handle.key: handle})


# ============================================================
# {a,B}-REWRITES
# ============================================================

class DsInsertion(BraidsBaseModel):
    """A certified element inserted after ``position`` letters of the source word."""

    position: int = Field(ge=0)
    element: CertifiedElement


class DsRewrite(BraidsBaseModel):
    """Rewritten word, its insertions and the certified quotient word · source^{-1}."""

    source: BraidWord
    word: BraidWord
    insertions: Tuple[DsInsertion, ...] = ()
    difference: Optional[CertifiedElement] = None
