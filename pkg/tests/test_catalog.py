import pytest

from liekoszul.catalog import (NAMES, catalog_make, metabelian_random,
                               parse_partition, two_nilpotent_random, w_entry)
from liekoszul.errors import (BadPartition, CharacteristicMismatch,
                              DomainIsField, UnknownName)
from liekoszul.koszul import killing_module, reduced_koszul
from liekoszul.liealg import series
from liekoszul.scalars import QQ, PrimeField

ENTRIES = ["abelian(3)", "heisenberg(5)", "filiform(5)", "filiform(7)", "sl2", "oscillator4",
           "w(3)", "w(4)", "w(5)", "w(3+3)", "w(3+4)", "w(7)", "X(5)", "X(8)", "Y(6)", "Y(9)",
           "kath9_4c", "w7_twisted", "w7_y", "g12", "solvable9", "char3_octonion",
           "coadjoint(sl2)"]


def _rederive(e):
    """Recompute every expected field of an entry; returns the mismatches."""
    g = e.algebra
    s = series(g)
    got = {"dim": g.dim, "nilpotency_length": s.nilpotency_length,
           "solvability_length": s.solvability_length, "nilpotent": s.nilpotent,
           "center_by_metabelian": s.center_by_metabelian}
    if "second_derived_dim" in e.expected:
        got["second_derived_dim"] = s.derived[2].rank if len(s.derived) > 2 else 0
    if "kill_dim" in e.expected:
        got["kill_dim"] = killing_module(g, max_filtration=2).dim
    if "eta_rank" in e.expected:
        got["eta_rank"] = reduced_koszul(g).rank
    return {k: (v, got[k]) for k, v in e.expected.items() if k in got and got[k] != v}


@pytest.mark.parametrize("name", ENTRIES)
def test_entry_consistency(name):
    e = catalog_make(name)
    for key, gr in e.gradings.items():
        e.algebra.check_grading(gr)
    if e.form is not None:
        assert e.form.is_invariant(e.algebra)
        assert e.form.is_nondegenerate()
    assert _rederive(e) == {}


def test_examples():
    e = catalog_make("w(5)")
    assert e.dim == 7 and series(e.algebra).nilpotency_length == 5
    assert reduced_koszul(e.algebra).rank == 0
    x = catalog_make("X(8)")
    assert x.dim == 8 and series(x.algebra).nilpotency_length == 5
    # Carnot: degree-1 part generates
    gr = x.gradings["carnot"]
    deg1 = [i for i, w in enumerate(gr.weights) if w == (1,)]
    lcs = series(x.algebra).dims
    assert lcs[0] - lcs[1] == len(deg1)
    g = catalog_make("g12")
    assert g.dim == 12 and killing_module(g.algebra, max_filtration=2).dim == 5


def test_w7_twisted_vs_w7():
    t = series(catalog_make("w7_twisted").algebra).derived
    w = series(catalog_make("w(7)").algebra).derived
    assert t[2].rank == 2 and w[2].rank == 1


def test_small_nilpotent_entries_have_vanishing_eta():
    for name in ENTRIES:
        e = catalog_make(name)
        if e.dim <= 9 and series(e.algebra).nilpotent:
            assert reduced_koszul(e.algebra).rank == 0, name


def test_parse_partition():
    assert parse_partition("3+4") == (3, 4)
    assert parse_partition("[2]3") == (3, 3)
    assert parse_partition([5]) == (5,)
    for bad in ("2", "3+6", "0", ""):
        with pytest.raises(BadPartition):
            parse_partition(bad)


def test_w_entry_r_bounds():
    with pytest.raises(ValueError):
        w_entry("5+4", r=0)


def test_error_cases():
    with pytest.raises(UnknownName):
        catalog_make("nonsense")
    with pytest.raises(UnknownName):
        catalog_make("abelian")
    with pytest.raises(CharacteristicMismatch):
        catalog_make("char3_octonion", domain="Q")
    with pytest.raises(DomainIsField):
        catalog_make("nonreduced_rank3", domain="Q")
    with pytest.raises(ValueError):
        catalog_make("heisenberg(4)")


def test_char3_entry_over_q_when_not_strict():
    e = catalog_make("char3_octonion", domain="Q", strict=False)
    assert e.algebra.domain is QQ and e.dim == 14


def test_random_entries_are_deterministic():
    a = two_nilpotent_random(3, domain=PrimeField(5)).algebra
    b = two_nilpotent_random(3, domain=PrimeField(5)).algebra
    assert a.same_structure(b) and series(a).nilpotency_length <= 2
    m = metabelian_random(7).algebra
    assert m.same_structure(metabelian_random(7).algebra) and series(m).metabelian


def test_names_listed():
    assert "g12" in NAMES and len(NAMES) == len(set(NAMES))
