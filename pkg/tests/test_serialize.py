import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from derivkit import serialize as ser
from derivkit.algebra import diagonal_algebra, direct_sum, matrix_algebra, poly_quotient
from derivkit.errors import ParseError
from derivkit.linalg import Matrix, span_canonical
from derivkit.poly import PolynomialContext, decompose_one_variable, parse_poly, verify_certificate

from conftest import small_rationals, vectors

K = ser.Kind


@pytest.mark.parametrize("text,value", [("0", 0), ("-3", -3), ("1/2", Fraction(1, 2)), ("-7/3", Fraction(-7, 3))])
def test_canonical_rationals(text, value):
    assert ser.parse_rational(text) == value
    assert ser.rational_to_str(value) == text


@pytest.mark.parametrize("text", ["2/4", "3/1", "+1", "1/-2", "-0", "01", "0/5"])
def test_non_canonical_rationals_rejected(text):
    with pytest.raises(ser.SchemaError):
        ser.parse_rational(text)


def test_reduction_is_suggested():
    with pytest.raises(ser.SchemaError, match="'1/2'"):
        ser.parse_rational("2/4")


@pytest.mark.parametrize("bad", ["1.5", 1.5, None, True, "1/0", "x"])
def test_malformed_rationals(bad):
    with pytest.raises(ser.SchemaError):
        ser.parse_rational(bad)


@pytest.mark.parametrize("a", [matrix_algebra(3), diagonal_algebra(2), poly_quotient(parse_poly("x^3 - 2")),
                               direct_sum(matrix_algebra(2), diagonal_algebra(1))],
                         ids=["M3", "D2", "x^3-2", "M2+D1"])
def test_algebra_round_trip_byte_identical(a, tmp_path):
    path = tmp_path / "a.json"
    ser.store(a, path, K.ALGEBRA)
    text = path.read_text()
    b = ser.load(path, K.ALGEBRA)
    assert ser.dumps(b, K.ALGEBRA) == text
    assert b.structure == a.structure and b.unit == a.unit and b.generator == a.generator


def test_algebra_schema_errors_name_the_field():
    good = json.loads(ser.dumps(matrix_algebra(2), K.ALGEBRA))
    cases = [
        ({**good, "dim": 0}, "$.dim"),
        ({**good, "labels": ["a"]}, "$.labels"),
        ({**good, "structure": list(reversed(good["structure"]))}, "$.structure[1]"),
        ({**good, "unit": ["1", "0", "0", "2/2"]}, "$.unit[3]"),
        ({**good, "extra": 1}, "$"),
    ]
    for doc, where in cases:
        with pytest.raises(ser.SchemaError) as info:
            ser.algebra_from_json(doc)
        assert info.value.location == where


def test_zero_products_must_be_omitted():
    doc = {"dim": 1, "labels": ["a"], "structure": [[0, 0, ["0"]]]}
    with pytest.raises(ser.SchemaError, match="omitted"):
        ser.algebra_from_json(doc)


def test_malformed_json_reports_line_and_column():
    with pytest.raises(ParseError) as info:
        ser.loads('{"dim": 1,\n "labels": [}', K.ALGEBRA, "a.json")
    assert info.value.location.startswith("a.json:2:")


def test_missing_file():
    with pytest.raises(ParseError):
        ser.load("/nonexistent/file.json", K.ALGEBRA)


@given(vectors(4, max_size=4))
def test_subspace_round_trip(vs):
    s = span_canonical(vs, 4)
    text = ser.dumps(s, K.SUBSPACE)
    assert ser.loads(text, K.SUBSPACE) == s
    assert ser.dumps(ser.loads(text, K.SUBSPACE), K.SUBSPACE) == text


def test_subspace_must_be_reduced():
    with pytest.raises(ser.SchemaError, match="row-echelon"):
        ser.subspace_from_json({"ambient_dim": 2, "basis": [["2", "0"]]})


@given(st.lists(st.lists(small_rationals, min_size=3, max_size=3), min_size=1, max_size=3))
def test_matrix_round_trip(rows):
    m = Matrix.from_rows(rows)
    text = ser.dumps(m, K.MATRIX)
    assert ser.loads(text, K.MATRIX) == m
    assert ser.dumps(ser.loads(text, K.MATRIX), K.MATRIX) == text


def test_ragged_matrix_rejected():
    with pytest.raises(ser.SchemaError) as info:
        ser.matrix_from_json([["1", "2"], ["3"]])
    assert info.value.location == "$[1]"


def test_poly_round_trip_and_ordering():
    p = parse_poly("x^2*y - 1/3*x*y^2 + 5", ("x", "y"))
    text = ser.dumps(p, K.POLY)
    assert ser.loads(text, K.POLY) == p
    doc = json.loads(text)
    doc["terms"].reverse()
    with pytest.raises(ser.SchemaError, match="descending"):
        ser.poly_from_json(doc)


def test_certificate_round_trip_preserves_replay():
    p = parse_poly("(x - y)*(x^3*y + 2*x - y^2)", ("x", "y"))
    cert = decompose_one_variable(p)
    text = ser.dumps(cert, K.CERTIFICATE)
    back = ser.loads(text, K.CERTIFICATE)
    assert back == cert
    assert ser.dumps(back, K.CERTIFICATE) == text
    assert verify_certificate(back, PolynomialContext(), p).passed


def test_certificate_schema_errors():
    with pytest.raises(ser.SchemaError):
        ser.cert_from_json({"product": []})
    with pytest.raises(ser.SchemaError):
        ser.cert_from_json({"gen": {"variables": ["x", "y"], "terms": [[[1, 0], "1"]]}})
    with pytest.raises(ser.SchemaError) as info:
        ser.cert_from_json({"sum": [{"scale": {"c": "4/2", "child": {"sum": []}}}]})
    assert info.value.location == "$.sum[0].scale.c"
