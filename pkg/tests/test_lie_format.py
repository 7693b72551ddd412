import pytest

from liekoszul.catalog import catalog_make
from liekoszul.errors import LieSemanticError, LieSyntaxError
from liekoszul.homology import betti_numbers
from liekoszul.lie_format import LieFile, emit_lie, parse_lie
from liekoszul.scalars import PrimeField

HEIS = """# Heisenberg
field Q
dim 3
names x y z
bracket 1 2 = 1*3
"""

EMITTED = ["abelian(3)", "heisenberg(3)", "filiform(5)", "sl2", "oscillator4", "w(3+4)",
           "X(5)", "Y(6)", "kath9_4c", "w7_twisted", "g12", "solvable9", "char3_octonion",
           "nonreduced_rank3", "coadjoint(sl2)"]


def test_heisenberg_file():
    lf = parse_lie(HEIS)
    g = lf.algebra()
    assert g.dim == 3 and tuple(g.names) == ("x", "y", "z")
    assert list(g.bracket_basis(0, 1)) == [(2, 1)]
    assert lf.bilinear_form() is None


def test_diagonal_bracket_rejected():
    with pytest.raises(LieSemanticError) as info:
        parse_lie("field Q\ndim 2\nbracket 1 1 = 1*2\n")
    assert info.value.line == 3


@pytest.mark.parametrize("text,line", [
    ("field Q\ndim 2\nbracket 2 1 = 1*1\n", 3),
    ("field Q\ndim 2\nbracket 1 2 = 1*3\n", 3),
    ("field Q\ndim 3\nbracket 1 2 = 1*3\nbracket 1 2 = 1*3\n", 4),
    ("field Q\ndim 2\ngrading free 1 torsion\nweight 1 0 0\nweight 2 1\n", 4),
    ("field Q\ndim 3\ngrading free 1 torsion\nweight 1 1\nweight 2 1\nweight 3 1\n"
     "bracket 1 2 = 1*3\n", None),
])
def test_semantic_errors(text, line):
    with pytest.raises(LieSemanticError) as info:
        parse_lie(text).algebra()
    if line is not None:
        assert info.value.line == line


@pytest.mark.parametrize("text,line", [
    ("field Q\ndim x\n", 2),
    ("field Q\ndim 2\nbracket 1 2 1*2\n", 3),
    ("field Q\ndim 2\nbracket 1 2 = 1.5*2\n", 3),
    ("field Q\ndim 2\nfrobnicate\n", 3),
    ("field R\n", 1),
])
def test_syntax_errors_carry_line(text, line):
    with pytest.raises(LieSyntaxError) as info:
        parse_lie(text)
    assert info.value.line == line


def test_jacobi_failure_is_semantic():
    text = "field Q\ndim 3\nbracket 1 2 = 1*3\nbracket 1 3 = 1*1\nbracket 2 3 = 1*2\n"
    with pytest.raises(LieSemanticError):
        parse_lie(text).algebra()


def test_prime_field_and_fractions():
    lf = parse_lie("field F 5\ndim 3\nbracket 1 2 = 1/2*3 - 1*1\n")
    g = lf.algebra()
    assert g.domain == PrimeField(5)
    assert dict(g.bracket_basis(0, 1)) == {2: 3, 0: 4}


def test_ring_table():
    text = """ring table 2
mult 1 1 = 1 0
mult 1 2 = 0 1
mult 2 2 = 0 0
unit 1 0
dim 3
bracket 1 2 = [0,1]*3
bracket 2 3 = [0,1]*1
bracket 1 3 = [0,-1]*2
"""
    g = parse_lie(text).algebra()
    assert g.domain.dim == 2 and not g.domain.is_field
    ref = catalog_make("nonreduced_rank3").algebra
    assert g.same_structure(ref)


def test_forms_are_symmetric():
    lf = parse_lie(HEIS + "form 1 3 = 2\n")
    B = lf.bilinear_form()
    assert B.matrix[0][2] == B.matrix[2][0] == 2


@pytest.mark.parametrize("name", EMITTED)
def test_round_trip(name):
    e = catalog_make(name)
    lf = LieFile.from_algebra(e.graded(), e.form)
    text = emit_lie(lf, comment=name)
    again = parse_lie(text)
    assert emit_lie(again, comment=name) == text
    g = again.algebra()
    assert g.same_structure(e.algebra)
    if e.form is not None:
        assert again.bilinear_form().matrix == e.form.matrix


def test_round_trip_preserves_graded_homology():
    e = catalog_make("w(4)")
    g = parse_lie(emit_lie(LieFile.from_algebra(e.graded("positive")))).algebra()
    assert betti_numbers(g).betti == betti_numbers(e.algebra).betti
