"""
Tests for the text formats used on the command line.
"""

import pytest

from src.braids.algebra.group_ring import resolve
from src.braids.algebra.subgroup_series import lcs_sample
from src.braids.exceptions import BraidError
from src.braids.knots.laurent import LaurentPoly
from src.braids.models.codecs import (
    format_certified,
    format_move,
    format_record,
    format_ring,
    parse_braid,
    parse_certified,
    parse_expr,
    parse_laurent,
    parse_move,
    parse_record,
    parse_ring,
    parse_singular,
)
from src.braids.models.schemas import BraidWord, MarkovKind, MarkovStep, Series


def parse_code(parser, text):
    with pytest.raises(BraidError) as exc:
        parser(text)
    return exc.value.code


class TestBraids:
    def test_parse(self):
        assert parse_braid("B3: 1 -2 1") == BraidWord(strands=3, letters=(1, -2, 1))
        assert parse_braid("  B4 :") == BraidWord.empty(4)

    def test_text(self):
        assert BraidWord(strands=3, letters=(1, -2)).text == "B3: 1 -2"
        assert BraidWord.empty(2).text == "B2:"

    @pytest.mark.parametrize("text", ["3: 1 2", "S3: 1", "B3: 1 a", "B0:"])
    def test_malformed(self, text):
        assert parse_code(parse_braid, text) == "PARSE_ERROR"

    def test_out_of_range_letters_keep_their_code(self):
        assert parse_code(parse_braid, "B3: 3") == "INDEX_OUT_OF_RANGE"
        assert parse_code(parse_braid, "B3: 0") == "INDEX_OUT_OF_RANGE"

    def test_singular(self):
        s = parse_singular("S3: 1 x2 -1")
        assert s.letters == ((1, 1), (2, 0), (1, -1))
        assert s.double_points == 1
        assert s.text == "S3: 1 x2 -1"
        assert parse_code(parse_singular, "S3: xx") == "PARSE_ERROR"
        assert parse_code(parse_singular, "S3: x3") == "INDEX_OUT_OF_RANGE"


class TestMoves:
    @pytest.mark.parametrize("text", ["conjugate B3: 2 -1", "stabilize 1", "stabilize -1", "destabilize"])
    def test_parse_and_format(self, text):
        assert format_move(parse_move(text)) == text

    def test_parsed_kinds(self):
        assert MarkovKind(parse_move("stabilize +1").kind) == MarkovKind.STABILIZE
        assert parse_move("conjugate B3: 2").by == BraidWord(strands=3, letters=(2,))
        assert format_move(MarkovStep(kind=MarkovKind.DESTABILIZE)) == "destabilize"

    @pytest.mark.parametrize("text", ["stabilize 2", "destabilize now", "rotate", "conjugate 1 2"])
    def test_malformed(self, text):
        assert parse_code(parse_move, text) == "PARSE_ERROR"


class TestLaurent:
    def test_parse(self):
        assert parse_laurent("[1*t^1, 1*t^3, -1*t^4]") == LaurentPoly.build([(1, 1), (3, 1), (4, -1)])
        assert parse_laurent("[]").is_zero

    def test_half_integer_exponents(self):
        p = parse_laurent("[-1*t^1/2, -1*t^5/2]")
        assert p.scale == 2
        assert p.text == "[-1*t^1/2, -1*t^5/2]"

    @pytest.mark.parametrize("text", ["1*t^1", "[t^2]", "[1*t^x]"])
    def test_malformed(self, text):
        assert parse_code(parse_laurent, text) == "PARSE_ERROR"


class TestRing:
    def test_format_and_parse(self):
        element = resolve(parse_singular("S3: 1 x2 -1"))
        text = format_ring(element)
        assert text.startswith("R3: ")
        assert parse_ring(text).terms == element.terms

    def test_zero(self):
        assert parse_ring("R2: 0").terms == {}

    def test_malformed(self):
        assert parse_code(parse_ring, "Q2: 1*D^0") == "PARSE_ERROR"
        assert parse_code(parse_ring, "R2: one*D^0") == "PARSE_ERROR"


class TestCertificates:
    def test_parse_expr(self):
        expr = parse_expr("(c (w 3 1 1) (j (w 3 2 2) (w 3 1)))")
        assert expr.kind == "comm"
        assert expr.right.kind == "conj"
        assert expr.right.by == BraidWord(strands=3, letters=(1,))

    @pytest.mark.parametrize("text", [
        "(c (w 3 1 1)",
        "(q (w 3 1 1))",
        "(p)",
        "(w 3 1 1) extra",
        "(w)",
        "(w 3 a)",
    ])
    def test_malformed(self, text):
        assert parse_code(parse_expr, text) == "PARSE_ERROR"

    def test_certified_fields(self):
        element = lcs_sample(3, 2, seed=7)
        fields = format_certified(element)
        assert fields["series"] == "lcs"
        assert fields["level"] == "2"
        parsed = parse_certified(fields)
        assert parsed.word == element.word
        assert Series(parsed.series) == Series.LCS

    def test_certificate_is_checked(self):
        fields = {"certificate": "(w 3 1 1)", "series": "lcs", "level": "2"}
        assert parse_code(parse_certified, fields) == "CERTIFICATE_INVALID"
        assert parse_certified(fields, check=False).level == 2

    def test_commutator_of_non_pure_words_is_rejected(self):
        fields = {"certificate": "(c (w 3 1) (w 3 2 2))", "series": "lcs", "level": "2"}
        assert parse_code(parse_certified, fields) == "CERTIFICATE_INVALID"

    def test_bad_series(self):
        fields = {"certificate": "(w 3 1 1)", "series": "upper"}
        assert parse_code(parse_certified, fields) == "PARSE_ERROR"


class TestRecords:
    def test_format_and_parse(self):
        text = format_record([("word", "B3: 1 2"), ("level", 2)])
        assert text == "word=B3: 1 2\nlevel=2"
        assert parse_record(text) == {"word": "B3: 1 2", "level": "2"}

    def test_values_may_contain_equals(self):
        assert parse_record("detail=a=b") == {"detail": "a=b"}

    def test_multi_line_values_are_rejected(self):
        with pytest.raises(BraidError):
            format_record([("text", "a\nb")])

    def test_lines_need_a_separator(self):
        assert parse_code(parse_record, "no separator") == "PARSE_ERROR"
