import pytest

from biquotient.catalog import UPPER4, WINKELMANN8, YOSHINO7
from biquotient.errors import InputError, ParseError
from biquotient.lieformat import emit_lie, parse_lie


@pytest.mark.parametrize("text", [WINKELMANN8, YOSHINO7, UPPER4])
def test_emit_parse_roundtrip_is_byte_identical(text):
    once = emit_lie(parse_lie(text))
    assert emit_lie(parse_lie(once)) == once


def test_self_bracket_rejected_with_line():
    text = "algebra a dim 2\nbasis X1 X2\n[X1,X1] = X2\n"
    with pytest.raises(ParseError) as info:
        parse_lie(text)
    assert info.value.line == 3


def test_unknown_label_reports_line():
    text = "algebra a dim 2\nbasis X1 X2\n[X1,X2] = Q\n"
    with pytest.raises(ParseError) as info:
        parse_lie(text)
    assert info.value.line == 3


def test_jacobi_failure_surfaces_as_input_error():
    text = "algebra bad dim 3\nbasis X1 X2 X3\n[X1,X2] = X3\n[X1,X3] = X1\n"
    with pytest.raises(InputError, match="Jacobi"):
        parse_lie(text)


def test_subspaces_charts_and_variables():
    lf = parse_lie(UPPER4)
    assert lf.sub("h").dim == 2 and lf.sub("v").dim == 1
    assert lf.variables["E14"] == "z"
    assert [name for block in lf.charts["twoblock"] for name, _ in block] == ["y1", "y2", "y3", "z"]
