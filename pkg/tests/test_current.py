from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from liekoszul.catalog import catalog_make
from liekoszul.current import (algebra_homology, candeco_check,
                               h2_graded_report, nw_boundary_decomposition)
from liekoszul.homology import betti_numbers
from liekoszul.liealg import Grading, current_algebra, make_lie_algebra
from liekoszul.scalars import QQ, CommAlgebra, PrimeField, truncated_polynomial


def aff1():
    return make_lie_algebra(QQ, 2, {(0, 1): {1: 1}}, ["x", "y"], Grading.from_degrees([0, 1]))


def product_algebra(F, sizes):
    """Product of truncated polynomial rings ``F[t]/t^n`` for ``n`` in ``sizes``."""
    d = sum(sizes)
    mult = [[[0] * d for _ in range(d)] for _ in range(d)]
    unit = [0] * d
    off = 0
    for n in sizes:
        unit[off] = 1
        for a in range(n):
            for b in range(n):
                if a + b < n:
                    mult[off + a][off + b][off + a + b] = 1
        off += n
    return CommAlgebra(F, mult, unit)


def square_zero(F, m):
    """``F ⊕ V`` with ``V^2 = 0`` and ``dim V = m``."""
    d = m + 1
    mult = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i in range(d):
        mult[0][i][i] = mult[i][0][i] = 1
    return CommAlgebra(F, mult, [1] + [0] * m)


@pytest.mark.parametrize("N,hh1", [(1, 0), (2, 1), (3, 2), (4, 3)])
def test_truncated_algebra_homology(N, hh1):
    r = algebra_homology(truncated_polynomial(QQ, N))
    assert r.HH1 == hh1 and r.HC1 == 0
    assert r.I_A == comb(N, 2) and r.A0 == 1 and r.lambda2 == comb(N, 2)


def test_base_field():
    r = algebra_homology(QQ)
    assert (r.HH1, r.HC1, r.I_A, r.A0) == (0, 0, 0, 1)


def test_square_zero_has_cyclic_homology():
    # Lambda^2 V survives in HC_1 when V^2 = 0
    r = algebra_homology(square_zero(QQ, 2))
    assert r.HC1 == 1 and r.HH1 == r.HC1 + r.A_mod_A0


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.sampled_from([0, 5, 7]))
def test_connes_identity(sizes, p):
    F = QQ if p == 0 else PrimeField(p)
    r = algebra_homology(product_algebra(F, sizes))
    assert r.HH1 == r.HC1 + r.A_mod_A0
    assert r.HH1 == sum(n - 1 for n in sizes)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_connes_identity_square_zero(m):
    r = algebra_homology(square_zero(QQ, m))
    assert r.HH1 == r.HC1 + r.A_mod_A0


def test_candeco_trivial_ring():
    sl2 = catalog_make("sl2").algebra
    r = candeco_check(QQ, sl2)
    assert r.bijective and r.cycles_bijective and r.V1 == 0 and r.V3 == 0
    assert r.V2 == r.source_dim == 3


PAIRS = [(2, "sl2", None), (2, "heisenberg(3)", None), (2, "coadjoint(sl2)", "01")]


@pytest.mark.parametrize("N,name,key", PAIRS)
def test_candeco_and_boundaries(N, name, key):
    A = truncated_polynomial(QQ, N)
    l = catalog_make(name).graded(key)
    r = candeco_check(A, l)
    assert r.bijective and r.cycles_bijective
    assert r.source_dim == r.V1 + r.V2 + r.V3
    assert nw_boundary_decomposition(A, l).equal


def test_aff1_current_over_t3():
    A = truncated_polynomial(QQ, 3)
    assert candeco_check(A, aff1()).bijective
    rep = h2_graded_report(A, aff1())
    assert rep.all_hold and rep.h2_total == comb(3, 2)


def test_coadjoint_weights_over_t3():
    A = truncated_polynomial(QQ, 3)
    L = catalog_make("coadjoint(sl2)").graded("01")
    rep = h2_graded_report(A, L)
    assert rep.all_hold
    for w in rep.weights:
        nw = nw_boundary_decomposition(A, L, w)
        assert nw.equal and nw.splits == nw.predicted_splits
    total = sum(x.h2 for x in rep.weights.values())
    assert total == rep.h2_total == betti_numbers(current_algebra(A, L), up_to=2).betti[2]


def test_trivial_ring_reproduces_h2():
    l = catalog_make("heisenberg(3)").graded()
    rep = h2_graded_report(QQ, l)
    assert rep.h2_total == betti_numbers(l, up_to=2).betti[2]
    assert rep.all_hold
