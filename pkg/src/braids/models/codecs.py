"""
Text formats for the command line and golden files.

    braid        B3: 1 -2 1
    singular     S3: 1 x2 -1
    move         conjugate B3: 2 | stabilize -1 | destabilize
    laurent      [1*t^1, 1*t^3, -1*t^4]
    ring         R3: +1*D^0|213 -1*D^0
    certificate  (c (w 3 1 1) (j (w 3 2 2) (w 3 1)))
    record       key=value lines

Certificates are s-expressions: (w k letters...) is a leaf word, (c A B) a
commutator, (p A ...) a product, (i A) an inverse and (j A W) the
conjugate W^{-1} A W. Every parser raises BraidError(PARSE_ERROR) on
malformed input and lets INDEX_OUT_OF_RANGE through for out-of-range letters.
"""

import re
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, List, Tuple

from pydantic import ValidationError

from src.braids.algebra.group_ring import RingElement, ring_key
from src.braids.algebra.subgroup_series import certify, evaluate
from src.braids.algebra.word_problem import parse_key
from src.braids.exceptions import BraidError
from src.braids.knots.laurent import LaurentPoly
from src.braids.models.schemas import (
    BraidWord,
    CertifiedElement,
    CommutatorExpr,
    ExprCommutator,
    ExprConjugate,
    ExprInverse,
    ExprLeaf,
    ExprProduct,
    MarkovKind,
    MarkovStep,
    Series,
    SingularBraidWord,
)


_WORD = re.compile(r"^\s*([BS])(\d+)\s*:(.*)$")
_TERM = re.compile(r"^([+-]?\d+)\*([A-Za-z]+)\^(-?\d+)(?:/(\d+))?$")


def _parse_error(message: str) -> BraidError:
    return BraidError("PARSE_ERROR", message)


def _build(model, **fields):
    try:
        return model(**fields)
    except ValidationError as exc:
        raise _parse_error(f"Invalid {model.__name__}: {exc.errors()[0]['msg']}") from exc


def _header(text: str, kind: str) -> Tuple[int, List[str]]:
    match = _WORD.match(text)
    if not match or match.group(1) != kind:
        raise _parse_error(f"Expected '{kind}<k>: ...', got {text!r}")
    return int(match.group(2)), match.group(3).split()


# ================================================================
# WORDS
# ================================================================

def parse_braid(text: str) -> BraidWord:
    strands, tokens = _header(text, "B")
    try:
        letters = tuple(int(token) for token in tokens)
    except ValueError as exc:
        raise _parse_error(f"Braid letters must be nonzero integers: {text!r}") from exc
    return _build(BraidWord, strands=strands, letters=letters)


def format_braid(w: BraidWord) -> str:
    return w.text


def parse_singular(text: str) -> SingularBraidWord:
    strands, tokens = _header(text, "S")
    letters = []
    for token in tokens:
        if token.startswith("x"):
            index, kind = token[1:], 0
        else:
            index, kind = token.lstrip("-"), (-1 if token.startswith("-") else 1)
        if not index.isdigit():
            raise _parse_error(f"Bad singular letter {token!r}")
        letters.append((int(index), kind))
    return _build(SingularBraidWord, strands=strands, letters=tuple(letters))


def format_move(move: MarkovStep) -> str:
    kind = MarkovKind(move.kind)
    if kind == MarkovKind.CONJUGATE:
        return f"conjugate {move.by.text}"
    if kind == MarkovKind.STABILIZE:
        return f"stabilize {move.sign}"
    return "destabilize"


def parse_move(text: str) -> MarkovStep:
    """conjugate B<k>: ..., stabilize ±1 or destabilize."""
    name, _, rest = text.strip().partition(" ")
    if name == "conjugate":
        return MarkovStep(kind=MarkovKind.CONJUGATE, by=parse_braid(rest))
    if name == "stabilize" and rest.strip() in ("1", "+1", "-1"):
        return MarkovStep(kind=MarkovKind.STABILIZE, sign=int(rest))
    if name == "destabilize" and not rest.strip():
        return MarkovStep(kind=MarkovKind.DESTABILIZE)
    raise _parse_error(f"Bad Markov move {text!r}")


# ================================================================
# LAURENT POLYNOMIALS
# ================================================================

def parse_laurent(text: str) -> LaurentPoly:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise _parse_error(f"Laurent polynomials are written [c*t^e, ...], got {text!r}")
    inner = body[1:-1].strip()
    if not inner:
        return LaurentPoly()
    parsed = []
    variable = "t"
    for part in inner.split(","):
        match = _TERM.match(part.strip())
        if not match:
            raise _parse_error(f"Bad Laurent term {part.strip()!r}")
        coefficient, variable = int(match.group(1)), match.group(2)
        exponent = Fraction(int(match.group(3)), int(match.group(4) or 1))
        parsed.append((exponent, coefficient))
    scale = lcm(*(e.denominator for e, _ in parsed))
    return LaurentPoly.build(((int(e * scale), c) for e, c in parsed), scale=scale, variable=variable)


# ================================================================
# RING ELEMENTS
# ================================================================

def format_ring(element: RingElement) -> str:
    return f"R{element.strands}: {ring_key(element)}"


def parse_ring(text: str) -> RingElement:
    match = re.match(r"^\s*R(\d+)\s*:(.*)$", text)
    if not match:
        raise _parse_error(f"Expected 'R<k>: ...', got {text!r}")
    strands, body = int(match.group(1)), match.group(2).split()
    terms: Dict[str, int] = {}
    if body == ["0"]:
        return RingElement(strands=strands)
    for token in body:
        coefficient, _, key = token.partition("*")
        try:
            value = int(coefficient)
        except ValueError as exc:
            raise _parse_error(f"Bad ring term {token!r}") from exc
        parse_key(key, strands)
        terms[key] = terms.get(key, 0) + value
    return RingElement(strands=strands, terms={k: c for k, c in terms.items() if c})


# ================================================================
# CERTIFICATES
# ================================================================

def _tokens(text: str) -> List[str]:
    return re.findall(r"\(|\)|[^\s()]+", text)


def format_expr(expr: CommutatorExpr) -> str:
    if expr.kind == "leaf":
        return _format_leaf(expr.word)
    if expr.kind == "comm":
        return f"(c {format_expr(expr.left)} {format_expr(expr.right)})"
    if expr.kind == "prod":
        return "(p " + " ".join(format_expr(child) for child in expr.factors) + ")"
    if expr.kind == "inv":
        return f"(i {format_expr(expr.child)})"
    return f"(j {format_expr(expr.child)} {_format_leaf(expr.by)})"


def _format_leaf(w: BraidWord) -> str:
    return "(w " + " ".join(str(x) for x in (w.strands,) + w.letters) + ")"


class _Reader:
    def __init__(self, text: str):
        self.tokens = _tokens(text)
        self.position = 0

    def next(self) -> str:
        if self.position >= len(self.tokens):
            raise _parse_error("Certificate ended early")
        token = self.tokens[self.position]
        self.position += 1
        return token

    def expect(self, token: str) -> None:
        found = self.next()
        if found != token:
            raise _parse_error(f"Expected {token!r} in certificate, found {found!r}")

    def peek(self) -> str:
        return self.tokens[self.position] if self.position < len(self.tokens) else ""

    def word(self) -> BraidWord:
        self.expect("(")
        self.expect("w")
        return self._word_body()

    def _word_body(self) -> BraidWord:
        numbers = []
        while self.peek() != ")":
            token = self.next()
            try:
                numbers.append(int(token))
            except ValueError as exc:
                raise _parse_error(f"Bad number {token!r} in certificate word") from exc
        self.expect(")")
        if not numbers:
            raise _parse_error("Certificate word without a strand count")
        return _build(BraidWord, strands=numbers[0], letters=tuple(numbers[1:]))

    def expr(self) -> CommutatorExpr:
        self.expect("(")
        tag = self.next()
        if tag == "w":
            return ExprLeaf(word=self._word_body())
        if tag == "c":
            node = ExprCommutator(left=self.expr(), right=self.expr())
        elif tag == "p":
            factors = []
            while self.peek() == "(":
                factors.append(self.expr())
            if not factors:
                raise _parse_error("Empty product in certificate")
            node = ExprProduct(factors=tuple(factors))
        elif tag == "i":
            node = ExprInverse(child=self.expr())
        elif tag == "j":
            node = ExprConjugate(child=self.expr(), by=self.word())
        else:
            raise _parse_error(f"Unknown certificate node {tag!r}")
        self.expect(")")
        return node


def parse_expr(text: str) -> CommutatorExpr:
    reader = _Reader(text)
    expr = reader.expr()
    if reader.peek():
        raise _parse_error(f"Trailing text after certificate: {reader.peek()!r}")
    return expr


def format_certified(e: CertifiedElement) -> Dict[str, str]:
    return {
        "word": e.word.text,
        "series": Series(e.series).value,
        "level": str(e.level),
        "certificate": format_expr(e.certificate),
    }


def parse_certified(fields: Dict[str, str], check: bool = True) -> CertifiedElement:
    """Rebuild a certified element from record fields, verifying the certificate when ``check``."""
    try:
        series = Series(fields.get("series", "lcs"))
        level = int(fields.get("level", "1"))
    except ValueError as exc:
        raise _parse_error(f"Bad series or level in {fields}") from exc
    certificate = parse_expr(fields["certificate"])
    word = parse_braid(fields["word"]) if "word" in fields else evaluate(certificate)
    if check:
        return certify(word, series, level, certificate)
    return CertifiedElement.model_construct(word=word, series=series, level=level, certificate=certificate)


# ================================================================
# RECORDS
# ================================================================

def format_record(pairs: Iterable[Tuple[str, object]]) -> str:
    lines = []
    for key, value in pairs:
        text = str(value)
        if "\n" in text or "=" in key:
            raise _parse_error(f"Record field {key!r} cannot hold a multi-line value")
        lines.append(f"{key}={text}")
    return "\n".join(lines)


def parse_record(text: str) -> Dict[str, str]:
    fields: Dict[str, str] = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        key, separator, value = line.partition("=")
        if not separator:
            raise _parse_error(f"Record line without '=': {line!r}")
        fields[key.strip()] = value
    return fields
