import pytest

from combinatorics.surface import polygon
from services.surface_io import (
    CurveSpec,
    document_from_triangulation,
    parse_surface,
    render_document,
)
from utils.errors import DocumentError, StringError, SurfaceError

SQUARE = """\
arc d internal   # the only diagonal
arc b1 boundary
arc b2 boundary
arc b3 boundary
arc b4 boundary

triangle +b1 +b2 -d
triangle +d +b3 +b4
curve across from 1 crosses d
curve itself arc d
"""


def test_parse_square():
    document = parse_surface(SQUARE)
    assert document.triangulation.n == 1
    assert [spec.name for spec in document.specs] == ["across", "itself"]
    assert document.curve("across").crossings == ("d",)
    assert document.curve("itself").is_arc


def test_render_is_canonical():
    text = render_document(parse_surface(SQUARE))
    assert "#" not in text
    assert text.splitlines()[5] == "triangle +b1 +b2 -d"
    assert render_document(parse_surface(text)) == text


def test_curve_spec_render():
    assert CurveSpec("g", start=0, crossings=("a", "b")).render() == "curve g from 1 crosses a b"
    assert CurveSpec("h", arc="a").render() == "curve h arc a"


@pytest.mark.parametrize("text,kind,line,column", [
    ("arc d internal\narc d boundary\n", "duplicate-arc-declaration", 2, 5),
    ("arc d\n", "syntax", 1, 1),
    ("arc d curved\n", "syntax", 1, 7),
    ("triangle +a +b\n", "syntax", 1, 1),
    ("arc a boundary\ntriangle +a +x +y\n", "unknown-arc", 2, 13),
    ("arc a boundary\narc b boundary\ntriangle +a b +a\n", "syntax", 3, 13),
    ("arc a boundary\narc b boundary\ntriangle +a +b +a\n", "duplicate-arc", 3, 16),
    ("polygon 5\n", "syntax", 1, 1),
    ("curve g from zero crosses d\n", "syntax", 1, 14),
    ("curve g via d\n", "syntax", 1, 9),
])
def test_syntax_errors(text, kind, line, column):
    with pytest.raises(DocumentError) as excinfo:
        parse_surface(text)
    assert excinfo.value.kind == kind
    assert (excinfo.value.line, excinfo.value.column) == (line, column)
    assert excinfo.value.code == f"cli.{kind}"


def test_duplicate_curve():
    with pytest.raises(DocumentError) as excinfo:
        parse_surface(SQUARE + "curve itself arc d\n")
    assert excinfo.value.kind == "duplicate-curve"
    assert excinfo.value.line == 11


def test_invalid_curve_reports_line():
    with pytest.raises(StringError) as excinfo:
        parse_surface(SQUARE + "curve bad from 1 crosses b1\n")
    assert excinfo.value.kind == "boundary-crossing"
    assert excinfo.value.message.startswith("line 11: ")


def test_invalid_triangulation():
    with pytest.raises(SurfaceError):
        parse_surface("arc d internal\narc b1 boundary\narc b2 boundary\ntriangle +d +b1 +b2\n")


def test_unknown_curve():
    with pytest.raises(DocumentError) as excinfo:
        parse_surface(SQUARE).curve("missing")
    assert "known: across, itself" in excinfo.value.message


def test_document_from_builder():
    document = document_from_triangulation(polygon(5))
    assert document.specs == ()
    assert render_document(document).startswith("arc t1 internal\narc t2 internal\narc b1 boundary\n")
