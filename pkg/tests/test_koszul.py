import pytest
from hypothesis import given, settings, strategies as st

from liekoszul.catalog import (catalog_make, metabelian_random,
                               random_product_pairs, two_nilpotent_random)
from liekoszul.errors import FormNotInvariant
from liekoszul.homology import ChainVector, apply_boundary, cycle_space
from liekoszul.koszul import (BilinearForm, SymVector, eta_on_chain,
                              eta_representative, form_eta_pairing,
                              homogeneous_components, invariant_forms,
                              killing_module, quadrable_probe,
                              quotient_by_form_kernel, reduced_koszul,
                              t_matrix)
from liekoszul.linalg import Subspace, rank
from liekoszul.liealg import (abelian, bracket_span, direct_product,
                              lower_central_series, quotient_map, series,
                              subalgebra, whole)
from liekoszul.scalars import QQ, PrimeField


def test_t_matrix_examples():
    assert t_matrix(abelian(QQ, 3)).is_zero()
    # image spanned by x.z, y.z and z.z, leaving the 3-dim dual of the invariant forms
    assert rank(t_matrix(catalog_make("heisenberg(3)").algebra)) == 3
    assert rank(t_matrix(catalog_make("sl2").algebra)) == 5


def test_killing_module_examples():
    K = killing_module(abelian(QQ, 4))
    assert K.dim == 10 and K.filtration_dim(3) == 0
    assert killing_module(catalog_make("sl2").algebra).dim == 1
    K = killing_module(catalog_make("g12").algebra)
    assert K.dim == 5 and K.filtration_dim(3) == 2
    assert killing_module(catalog_make("filiform(5)").algebra).filtration_dim(5) == 0


def test_eta_pairings():
    e = catalog_make("g12")
    assert form_eta_pairing(e.algebra, e.form, e.chains["c"]) == -2
    s = catalog_make("solvable9")
    assert form_eta_pairing(s.algebra, s.form, s.chains["c"]) == -1
    c3 = catalog_make("char3_octonion")
    assert form_eta_pairing(c3.algebra, c3.form, c3.chains["c"]) == 1
    bad = BilinearForm(QQ, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(FormNotInvariant):
        form_eta_pairing(catalog_make("heisenberg(3)").algebra, bad, e.chains["c1"])


def test_eta_class_of_g12_cycle():
    e = catalog_make("g12")
    g = e.algebra
    K = killing_module(g, max_filtration=2)
    v = eta_on_chain(g, e.chains["c"], K)
    assert any(x != 0 for x in v)


def test_reduced_koszul_examples():
    assert reduced_koszul(catalog_make("g12").algebra).rank == 1
    assert reduced_koszul(catalog_make("w(5)").algebra).rank == 0
    assert reduced_koszul(catalog_make("char3_octonion").graded()).rank >= 1
    assert reduced_koszul(catalog_make("solvable9").algebra).rank == 1


def test_g12_koszul_concentrated_in_weight_zero():
    g = catalog_make("g12").graded()
    ranks = [reduced_koszul(g, weight=(w,)).rank for w in range(4)]
    assert ranks == [1, 0, 0, 0]


def test_invariant_forms_examples():
    assert len(invariant_forms(abelian(QQ, 3))) == 6
    assert len(invariant_forms(catalog_make("sl2").algebra)) == 1
    e = catalog_make("g12")
    forms = invariant_forms(e.algebra)
    assert len(forms) == 5
    n = e.dim

    def flat(B):
        return {i * n + j: B.matrix[i][j] for i in range(n) for j in range(n) if B.matrix[i][j]}

    S = Subspace(QQ, n * n, [flat(B) for B in forms])
    assert S.contains(flat(e.form))


def test_quadrable_examples():
    r = quadrable_probe(catalog_make("g12").algebra)
    assert r.verdict == "nondegenerate" and r.form.is_nondegenerate()
    assert quadrable_probe(catalog_make("heisenberg(3)").algebra).verdict == "degenerate-certified"
    assert quadrable_probe(abelian(QQ, 3)).quadrable is True


def test_quotient_by_form_kernel():
    e = catalog_make("w(4)")
    h, B = quotient_by_form_kernel(e.algebra, e.form)
    assert h.dim == e.dim and B.is_nondegenerate()
    heis = catalog_make("heisenberg(3)").algebra
    B = BilinearForm(QQ, [[1, 0, 0], [0, 1, 0], [0, 0, 0]])
    h, Bh = quotient_by_form_kernel(heis, B)
    assert h.dim == 2 and h.is_abelian() and Bh.is_nondegenerate()
    g = catalog_make("g12").algebra
    degenerate = [B for B in invariant_forms(g) if B.kernel()]
    h, Bh = quotient_by_form_kernel(g, degenerate[0])
    assert h.dim < 12 and Bh.is_invariant(h)


def test_homogeneous_components_of_g12_form():
    e = catalog_make("g12")
    comps = homogeneous_components(e.graded(), e.form)
    assert list(comps) == [(0,)]


# --- structural identities ----------------------------------------------------

CATALOG = ["sl2", "heisenberg(5)", "filiform(6)", "w(3)", "w(4)", "w(5)", "oscillator4",
           "solvable9", "coadjoint(sl2)", "X(5)", "Y(6)", "g12"]


@pytest.mark.parametrize("name", CATALOG)
def test_forms_dual_to_kill(name):
    g = catalog_make(name).algebra
    assert len(invariant_forms(g)) == killing_module(g, max_filtration=2).dim


@pytest.mark.parametrize("name", CATALOG)
def test_kill_mod_kill3_is_sym_square_of_abelianization(name):
    g = catalog_make(name).algebra
    K = killing_module(g)
    m = g.dim - bracket_span(g, whole(g), whole(g)).rank
    assert K.dim - K.filtration_dim(3) == m * (m + 1) // 2


@pytest.mark.parametrize("name", CATALOG)
def test_kill_filtration_quotients(name):
    g = catalog_make(name).algebra
    K = killing_module(g)
    lcs = lower_central_series(g)
    for i in range(1, 5):
        term = lcs[i] if i < len(lcs) else lcs[-1]
        h, _ = quotient_map(g, term.sparse_basis())
        assert K.dim - K.filtration_dim(i + 2) == killing_module(h, max_filtration=2).dim


@pytest.mark.parametrize("seed", range(20))
def test_metabelian_kill5_vanishes(seed):
    g = metabelian_random(seed).algebra
    assert series(g).metabelian
    assert killing_module(g).filtration_dim(5) == 0


@pytest.mark.parametrize("field", [QQ, PrimeField(5)], ids=["Q", "F5"])
@pytest.mark.parametrize("seed", range(20))
def test_two_nilpotent_reduced_koszul_vanishes(seed, field):
    g = two_nilpotent_random(seed, domain=field).algebra
    assert killing_module(g).filtration_dim(4) == 0
    assert reduced_koszul(g).rank == 0


@pytest.mark.parametrize("pair", random_product_pairs(10))
def test_direct_product_additivity(pair):
    g1, g2 = (catalog_make(nm).algebra for nm in pair)
    p = direct_product(g1, g2)
    k3 = [killing_module(x, max_filtration=3).filtration_dim(3) for x in (g1, g2, p)]
    r = [reduced_koszul(x).rank for x in (g1, g2, p)]
    assert k3[2] == k3[0] + k3[1]
    assert r[2] == r[0] + r[1]


def test_sl2_squared_splits():
    s = catalog_make("sl2").algebra
    p = direct_product(s, s)
    assert killing_module(p).filtration_dim(3) == 2
    assert reduced_koszul(p).rank == 2


def _pushforward_rank(g):
    """Rank of the image of eta-bar of the degree-0 part inside Kill(g), and of the union."""
    zero = [i for i in range(g.dim) if g.grading.is_zero(g.grading.weights[i])]
    K = killing_module(g, max_filtration=2)
    R = reduced_koszul(g, kill=K)
    imgs = []
    if len(zero) >= 3:
        g0 = subalgebra(g, zero)
        basis, cycles = cycle_space(g0, 3)
        for z in cycles:
            c = ChainVector(g.domain, g.dim, 3,
                            {tuple(zero[a] for a in basis[k]): x for k, x in z.items()})
            v = eta_on_chain(g, c, K)
            imgs.append({i: x for i, x in enumerate(v) if x != 0})
    push = Subspace(QQ, K.dim, imgs).rank
    union = Subspace(QQ, K.dim, imgs + [dict(enumerate(v)) for v in R.image]).rank
    return push, R.rank, union


@pytest.mark.parametrize("name,key", [("coadjoint(sl2)", "01"), ("w(3)", "012"),
                                      ("w(4)", "positive"), ("filiform(5)", "carnot"),
                                      ("kath9_4c", "012")])
def test_nonnegative_grading_pushforward(name, key):
    g = catalog_make(name).graded(key)
    assert all(w[0] >= 0 for w in g.grading.weights)
    push, r, union = _pushforward_rank(g)
    assert push == r == union


def test_pushforward_nontrivial_on_coadjoint():
    g = catalog_make("coadjoint(sl2)").graded("01")
    assert _pushforward_rank(g)[0] == 1


# --- hypothesis properties ------------------------------------------------------

PROPERTY_NAMES = ["sl2", "heisenberg(5)", "w(4)", "oscillator4", "solvable9", "X(5)",
                  "coadjoint(sl2)"]


def _chain(g, k, data):
    k = min(k, g.dim)
    terms = data.draw(st.lists(
        st.tuples(st.integers(-3, 3),
                  st.lists(st.integers(0, g.dim - 1), min_size=k, max_size=k, unique=True)),
        min_size=1, max_size=5))
    return ChainVector.from_terms(g, [(a, tuple(s)) for a, s in terms], degree=k)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PROPERTY_NAMES), st.data())
def test_eta_kills_boundaries(name, data):
    e = catalog_make(name)
    g = e.algebra
    x = _chain(g, 4, data)
    if x.degree < 4:
        return
    b = apply_boundary(g, x)
    K = killing_module(g, max_filtration=2)
    assert K.contains(eta_representative(g, b))
    if e.form is not None:
        assert form_eta_pairing(g, e.form, b) == 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PROPERTY_NAMES), st.data())
def test_eta_cyclic_well_defined(name, data):
    g = catalog_make(name).algebra
    i, j, k = data.draw(st.lists(st.integers(0, g.dim - 1), min_size=3, max_size=3, unique=True))
    K = killing_module(g, max_filtration=2)
    D = g.domain
    one = D.one

    def rep(a, b, c):
        return SymVector.product(g, {a: one}, g.bracket({b: one}, {c: one}))

    r1, r2, r3 = rep(i, j, k), rep(j, k, i), rep(k, i, j)
    assert K.class_of(r1) == K.class_of(r2) == K.class_of(r3)
    c = ChainVector.from_terms(g, [(1, (i, j, k))])
    assert K.class_of(eta_representative(g, c)) == K.class_of(r1)
