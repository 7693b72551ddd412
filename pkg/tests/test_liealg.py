import pytest

from liekoszul.catalog import (G12_BRACKETS, G12_NAMES, _build, catalog_make,
                               w_entry)
from liekoszul.errors import (GradingIncompatible, IndexOutOfRange,
                              JacobiFails, NotAnIdeal, NotSkew)
from liekoszul.homology import betti_numbers
from liekoszul.liealg import (Grading, abelian, all_derivations_nilpotent,
                              coadjoint_double, current_algebra,
                              derivation_algebra, direct_product,
                              double_extension, make_lie_algebra,
                              quotient_by_ideal, series, subalgebra)
from liekoszul.scalars import QQ, truncated_polynomial


def heis():
    return make_lie_algebra(QQ, 3, {(0, 1): {2: 1}}, ["x", "y", "z"])


def aff1():
    return make_lie_algebra(QQ, 2, {(0, 1): {1: 1}}, ["x", "y"])


def test_heisenberg_valid_and_nilpotent():
    s = series(heis())
    assert s.dims == [3, 1, 0] and s.nilpotency_length == 2


def test_g12_table_valid_and_sign_flip_fails():
    g = catalog_make("g12").algebra
    assert g.dim == 12 and series(g).nilpotency_length == 7
    flipped = [(a, b, {c: -x for c, x in v.items()}) if (a, b) == ("E3", "Z9") else (a, b, v)
               for a, b, v in G12_BRACKETS]
    with pytest.raises(JacobiFails) as info:
        _build(QQ, G12_NAMES, flipped)
    assert info.value.defect


def test_bad_tables_rejected():
    with pytest.raises(IndexOutOfRange):
        make_lie_algebra(QQ, 2, {(1, 0): {0: 1}})
    with pytest.raises(IndexOutOfRange):
        make_lie_algebra(QQ, 2, {(0, 1): {5: 1}})
    with pytest.raises(GradingIncompatible):
        make_lie_algebra(QQ, 3, {(0, 1): {2: 1}}, grading=Grading.from_degrees([1, 1, 1]))


def test_solvable9_center_by_metabelian():
    s = series(catalog_make("solvable9").algebra)
    assert s.solvable and not s.nilpotent and s.center_by_metabelian
    assert s.solvability_length == 3


def test_direct_products():
    p = direct_product(abelian(QQ, 2), abelian(QQ, 3))
    assert p.dim == 5 and p.is_abelian()
    w = catalog_make("w(3)").algebra
    q = direct_product(w, abelian(QQ, 1))
    assert q.dim == 6 and series(q).nilpotency_length == 3


def test_quotients():
    h = quotient_by_ideal(heis(), [[0, 0, 1]])
    assert h.dim == 2 and h.is_abelian()
    with pytest.raises(NotAnIdeal):
        quotient_by_ideal(heis(), [[1, 0, 0]])


def test_subalgebra_of_sl2():
    sl2 = catalog_make("sl2").algebra
    b = subalgebra(sl2, [0, 1])
    assert b.dim == 2 and not b.is_abelian()


def test_current_algebras():
    sl2 = catalog_make("sl2").algebra
    assert current_algebra(QQ, sl2) is sl2
    g = current_algebra(truncated_polynomial(QQ, 3), heis())
    s = series(g)
    assert g.dim == 9 and s.nilpotency_length == 2
    L = catalog_make("coadjoint(sl2)").algebra
    assert current_algebra(truncated_polynomial(QQ, 2), L).dim == 12


def test_coadjoint_double():
    assert coadjoint_double(abelian(QQ, 3)).is_abelian()
    L = coadjoint_double(catalog_make("sl2").algebra)
    assert L.dim == 6 and betti_numbers(L, up_to=3).betti == [1, 0, 0, 2]
    ref = catalog_make("coadjoint(sl2)").algebra
    assert betti_numbers(ref, up_to=3).betti == [1, 0, 0, 2]
    D = coadjoint_double(aff1())
    s = series(D)
    assert D.dim == 4 and s.solvable and not s.nilpotent


def test_double_extension_trivial():
    g, B = double_extension(abelian(QQ, 1), [[1]], [[0]])
    assert g.dim == 3 and g.is_abelian() and B.is_nondegenerate()


def test_double_extension_hyperbolic_plane():
    # skew maps of a hyperbolic plane are diag(a, -a): no nonzero nilpotent one
    h = abelian(QQ, 2)
    with pytest.raises(NotSkew):
        double_extension(h, [[0, 1], [1, 0]], [[0, 1], [0, 0]])
    # a 3-dim orthogonal space does carry a nilpotent skew map
    h3 = abelian(QQ, 3)
    form = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    D = [[0, 1, 0], [0, 0, -1], [0, 0, 0]]
    g, B = double_extension(h3, form, D)
    assert g.dim == 5 and series(g).nilpotent and B.is_invariant(g)
    h2 = abelian(QQ, 2)
    g2, B2 = double_extension(h2, [[1, 0], [0, 1]], [[0, 1], [-1, 0]])
    assert g2.dim == 4 and not series(g2).nilpotent and B2.is_invariant(g2)


def idx(name):
    return int(name[1:])


def test_double_extension_rebuilds_g12():
    ynames = ["Y1", "Y4", "Y5", "Y6", "Y7", "Y8", "Y11"]
    yb = []
    for i in (4, 5, 6, 7):
        yb.append(("Y1", f"Y{i}", {f"Y{i + 1}": (-1) ** i}))
    yb += [("Y4", "Y7", {"Y11": 1}), ("Y5", "Y6", {"Y11": -1})]
    names = ynames + ["Z3", "Z6", "Z9"]
    h = _build(QQ, names, yb)
    n = len(names)
    form = [[1 if (a[0] == b[0] and idx(a) + idx(b) == 12) else 0 for b in names] for a in names]
    Dimg = {"Y1": {"Y4": 1}, "Y4": {"Y7": 1, "Z3": 1}, "Y5": {"Y8": -1}, "Y8": {"Y11": -1},
            "Z3": {"Z6": 1}, "Z6": {"Z9": -1}, "Z9": {"Y8": -1}}
    D = [[0] * n for _ in range(n)]
    for src, img in Dimg.items():
        for tgt, c in img.items():
            D[names.index(tgt)][names.index(src)] = c
    g, B = double_extension(h, form, D, names=("E3", "E9"))
    ref = catalog_make("g12")
    order = [g.names.index(nm) for nm in G12_NAMES]
    assert g.reordered(order).same_structure(ref.algebra)
    Bm = [[B.matrix[i][j] for j in order] for i in order]
    assert Bm == ref.form.matrix


@pytest.mark.parametrize("part", ["3", "4", "5", "3+4", "3+3"])
def test_w_family_is_a_double_extension(part):
    e = w_entry(part)
    g = e.algebra
    n = g.dim - 2
    mid = list(range(1, n + 1))
    form = [[e.form.matrix[i][j] for j in mid] for i in mid]
    D = [[0] * n for _ in range(n)]
    for a, i in enumerate(mid):
        for k, c in g.bracket_basis(0, i):
            D[k - 1][a] = c
    d, B = double_extension(abelian(QQ, n), form, D, names=("x", "z"))
    assert d.renamed(g.names).same_structure(g)
    assert B.matrix == e.form.matrix


def test_derivations():
    assert len(derivation_algebra(abelian(QQ, 2))) == 4
    assert not all_derivations_nilpotent(abelian(QQ, 2)).all_nilpotent
    assert not all_derivations_nilpotent(heis()).all_nilpotent
    assert all_derivations_nilpotent(catalog_make("g12").algebra).all_nilpotent
