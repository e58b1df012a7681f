from __future__ import annotations

import pytest
from hypothesis import given

from cmcubics import GF, QQ, PolyRing
from cmcubics.grammar import ParseError, parse_document, parse_polynomial
from cmcubics.polyring import format_polynomial

from strategies import polynomials

R = PolyRing("x,y,z,w")


@given(polynomials(R))
def test_format_then_parse_round_trips(f):
    assert parse_polynomial(format_polynomial(f), R) == f


def test_precedence_and_powers():
    assert R.parse("-x^2") == -(R.var("x") ** 2)
    assert R.parse("2*x**3") == R.parse("2*x^3")
    assert R.parse("(x+y)^2 - x*(x+2*y)") == R.parse("y^2")
    assert R.parse("x/3*3") == R.var("x")


@pytest.mark.parametrize("text, column", [("x +* y", 4), ("x + q", 5), ("(x + y", 7), ("x^y", 3)])
def test_parse_errors_carry_a_column(text, column):
    with pytest.raises(ParseError) as err:
        parse_polynomial(text, R)
    assert err.value.line == 1
    assert err.value.column == column


def test_document_statements():
    doc = parse_document("""
        # comment
        ring F0 vars x,y,z,w;
        ideal z^2, z*x, z*y, x^3;
        matrix 2 x 2: z, (x + y),
                      1, w;
        vector x, y;
        obstruction x*y;
        deformation x, y;
        truncate 3;
        fitting 1;
        seed 9;
    """)
    assert doc.ring == R
    assert len(doc.ideal) == 4
    assert doc.matrices[0].shape == (2, 2)
    assert doc.matrices[0][0, 1] == R.parse("x + y")
    assert doc.vector == [R.var("x"), R.var("y")]
    assert doc.deformation == ["x", "y"]
    assert (doc.truncate, doc.fitting, doc.seed) == (3, 1, 9)


def test_field_declaration_and_override():
    text = "ring F3 vars x,y; ideal x + 4*y;"
    assert parse_document(text).ring.field == GF(3)
    assert parse_document(text).ideal[0] == PolyRing("x,y", GF(3)).parse("x + y")
    assert parse_document(text, QQ).ring.field == QQ


def test_document_errors_report_line_and_column():
    with pytest.raises(ParseError) as err:
        parse_document("ring F0 vars x,y;\nideal x,\n  y + ;")
    assert err.value.line == 3
    with pytest.raises(ParseError):
        parse_document("ideal x;")                      # no ring yet
    with pytest.raises(ParseError):
        parse_document("ring F0 vars x; matrix 2 x 2: x, x, x;")
    with pytest.raises(ParseError):
        parse_document("ring F4 vars x;")
    with pytest.raises(ParseError):
        parse_document("ring F0 vars x; frobnicate x;")


def test_data_files_parse(data_dir):
    files = sorted(data_dir.glob("*.*"))
    assert files
    for path in files:
        doc = parse_document(path.read_text())
        assert doc.ring is not None, path
