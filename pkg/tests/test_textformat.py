import pytest

from refcenter.cli import load_shipped
from refcenter.datagen import shipped_documents
from refcenter.scalar import FieldCtx
from refcenter.tensor import TypeMismatch
from refcenter.textformat import ParseError, check_spaces, parse_document, serialize_document

SMALL = """\
# kZ/2
field 1
space H 2 1 g
tensor mul : H H -> H
0 | 0 0 | 1
1 | 0 1 | 1
1 | 1 0 | 1
0 | 1 1 | 1
end
tensor unit : 1 -> H
0 |  | 1
end
role mul mul
role unit unit
"""


def test_parse_small():
    doc = parse_document(SMALL)
    assert doc.ctx is FieldCtx(1)
    assert doc.spaces["H"].basis_labels == ("1", "g")
    m = doc.role("mul")
    assert m.entries[0, 1, 1] == FieldCtx(1).one and not m.entries[1, 1, 1]


def test_round_trip_is_identity():
    doc = parse_document(SMALL)
    text = serialize_document(doc)
    again = parse_document(text)
    assert again == doc
    assert serialize_document(again) == text


@pytest.mark.parametrize("name", sorted(shipped_documents()))
def test_shipped_round_trip(name):
    doc = load_shipped(name)
    assert parse_document(serialize_document(doc)) == doc


def test_labels_may_contain_hash():
    doc = parse_document("field 1\nspace S 2 1#1 g#1\n")
    assert doc.spaces["S"].basis_labels == ("1#1", "g#1")


def test_cyclotomic_entries():
    doc = parse_document("field 4\nspace V 1\ntensor f : V -> V\n0 | 0 | 1/2*z - 3\nend\n")
    c = FieldCtx(4)
    assert doc.tensors["f"].entries[0, 0] == c.zeta(1) / 2 - 3


@pytest.mark.parametrize(
    "text,line,msg",
    [
        ("space H 2\n", 1, "field"),
        ("field 1\nspace H 2\ntensor f : H -> K\nend\n", 3, "undeclared"),
        ("field 1\nspace H 2\ntensor f : H -> H\n0 | 2 | 1\nend\n", 4, "out of range"),
        ("field 1\nspace H 2\ntensor f : H -> H\n0 | 0 | 1/0\nend\n", 4, "zero"),
        ("field 1\nspace H 2\ntensor f : H -> H\n0 | 0 | 1\n0 | 0 | 2\nend\n", 5, "duplicate"),
        ("field 1\nspace H 2\ntensor f : H -> H\n0 | 0 | 1\n", 3, "end"),
        ("field 1\nspace H 2\ntensor f : H -> H\n0 0 | 1\nend\n", 4, "out | in"),
        ("field 1\nfrobnicate\n", 2, "unknown directive"),
        ("field 1\nspace H 2\ntensor f : H -> H\nend\nrole mul f\n", 5, "role mul"),
        ("field 1\nrole mul g\n", 2, "unknown tensor"),
    ],
)
def test_parse_errors(text, line, msg):
    with pytest.raises(ParseError) as info:
        parse_document(text, source="t.txt")
    assert info.value.line == line
    assert msg in str(info.value) and f"t.txt:{line}" in str(info.value)


def test_missing_role():
    with pytest.raises(ParseError, match="missing role"):
        parse_document(SMALL).role("comul")


def test_check_spaces_names_location():
    doc = parse_document(SMALL, source="s.txt")
    H = doc.spaces["H"]
    with pytest.raises(TypeMismatch, match="s.txt:4"):
        check_spaces(doc, "mul", ((H,), (H,)))
