"""Recompute the reference facts about the catalog algebras.

Each check returns a :class:`CheckResult`; :func:`run_checks` runs the
selected tags in a fixed order.  Tags select by prefix, so ``sec6`` runs
``sec6.matrix``, ``sec6.koszul`` and ``sec6.betti``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from math import comb

from .catalog import (catalog_make, metabelian_random, random_product_pairs,
                      two_nilpotent_random, witness_chain)
from .current import (algebra_homology, candeco_check, h2_graded_report,
                      nw_boundary_decomposition)
from .homology import (ChainVector, apply_boundary, betti_numbers,
                       exterior_basis, homology_class_nonzero, weight_blocks)
from .koszul import (eta_representative, form_eta_pairing, invariant_forms,
                     killing_module, reduced_koszul)
from .liealg import (all_derivations_nilpotent, bracket_span,
                     current_algebra, direct_product, lower_central_series,
                     make_lie_algebra, quotient_map, series, whole, Grading)
from .scalars import QQ, PrimeField, truncated_polynomial


@dataclass
class CheckResult:
    tag: str
    criterion: int
    passed: bool
    lines: list = dc_field(default_factory=list)
    seconds: float = 0.0
    data: dict = dc_field(default_factory=dict)


class _Log:
    def __init__(self):
        self.lines = []
        self.ok = True

    def expect(self, cond, text):
        self.ok = self.ok and bool(cond)
        self.lines.append(("ok   " if cond else "FAIL ") + text)
        return bool(cond)

    def note(self, text):
        self.lines.append("     " + text)


def _fmt(xs):
    return "(" + ",".join(str(x) for x in xs) + ")"


# --- criterion 1: the 3-boundary matrix of g12 -----------------------------------

def boundary_matrix_in_list(g, chains, two_chains):
    """Coordinates of ``d(c_j)`` in the listed 2-chains, plus any leftover terms."""
    D = g.domain
    idx = [(g.index(a), g.index(b)) for a, b in two_chains]
    rows = [[D.zero] * len(chains) for _ in idx]
    leftover = []
    for j, c in enumerate(chains):
        bd = dict(apply_boundary(g, c).coeffs)
        for r, (a, b) in enumerate(idx):
            key, sign = ((a, b), 1) if a < b else ((b, a), -1)
            x = bd.pop(key, D.zero)
            rows[r][j] = x if sign > 0 else D.neg(x)
        if bd:
            leftover.append(j)
    return rows, leftover


def check_matrix():
    log = _Log()
    e = catalog_make("g12")
    g = e.algebra
    chains = [e.chains[f"c{i + 1}"] for i in range(8)]
    rows, leftover = boundary_matrix_in_list(g, chains, e.data["two_chains"])
    expected = [[QQ.convert(x) for x in r] for r in e.data["matrix"]]
    log.expect(not leftover, "every boundary lies in the span of the 7 listed 2-chains")
    log.expect(rows == expected, "7x8 boundary matrix matches entry-for-entry")
    for r in rows:
        log.note(" ".join(f"{str(x):>2}" for x in r))
    v = e.data["kernel"]
    prod = [sum(r[j] * v[j] for j in range(8)) for r in rows]
    log.expect(all(x == 0 for x in prod), f"kernel vector {_fmt(v)} is annihilated")
    return log, {"matrix": [[str(x) for x in r] for r in rows], "kernel": list(v)}


# --- criterion 2: Koszul nonvanishing for g12 ------------------------------------

def check_koszul():
    log = _Log()
    e = catalog_make("g12")
    g = e.algebra
    c = e.chains["c"]
    log.expect(apply_boundary(g, c).is_zero(), "d3(c) = 0")
    J = form_eta_pairing(g, e.form, c)
    log.expect(J == -2, f"J(c) = B(eta(c)) = {J}")
    K = killing_module(g)
    log.expect(K.dim == 5, f"dim Kill = {K.dim}")
    R = reduced_koszul(g, kill=killing_module(g, max_filtration=2))
    log.expect(R.rank == 1, f"reduced Koszul rank = {R.rank}")
    s = series(g)
    log.expect(s.nilpotency_length == 7, f"nilpotency length = {s.nilpotency_length}")
    try:
        g.check_grading(e.gradings["Z4"])
        graded = True
    except Exception:
        graded = False
    log.expect(graded, "Z/4 grading is compatible with the bracket")
    v = all_derivations_nilpotent(g)
    log.expect(v.all_nilpotent, f"all derivations nilpotent (Der dim {v.derivation_dim})")
    log.expect(e.form.is_invariant(g) and e.form.is_nondegenerate(),
               "scalar product is invariant and nondegenerate")
    return log, {"J": int(J), "kill_dim": K.dim, "eta_rank": R.rank,
                 "nilpotency_length": s.nilpotency_length, "derivation_dim": v.derivation_dim}


# --- criterion 3: Betti numbers of g12 ---------------------------------------------

def check_betti():
    log = _Log()
    e = catalog_make("g12")
    b = betti_numbers(e.graded("Z4")).betti
    log.expect(tuple(b[:8]) == (1, 2, 4, 9, 15, 22, 26, 22), f"b_0..b_7 = {_fmt(b[:8])}")
    log.expect(all(b[k] == b[12 - k] for k in range(13)), f"b_k = b_(12-k): {_fmt(b)}")
    return log, {"betti": b}


# --- criterion 4: the solvable 9-dimensional example ------------------------------

def check_solvable():
    log = _Log()
    e = catalog_make("solvable9")
    g = e.algebra
    g.check_jacobi()
    log.expect(True, "Jacobi identity holds")
    log.expect(e.form.is_invariant(g) and e.form.is_nondegenerate(),
               "form is invariant and nondegenerate")
    c = e.chains["c"]
    log.expect(apply_boundary(g, c).is_zero(), "d3(c) = 0")
    J = form_eta_pairing(g, e.form, c)
    log.expect(J == -1, f"B(eta(c)) = {J}")
    R = reduced_koszul(g)
    log.expect(R.rank >= 1, f"reduced Koszul rank = {R.rank}")
    s = series(g)
    log.note(f"solvability length {s.solvability_length}, nilpotent {s.nilpotent}")
    return log, {"J": int(J), "eta_rank": R.rank}


# --- criterion 5: characteristic 3 ---------------------------------------------------

def check_char3():
    log = _Log()
    e = catalog_make("char3_octonion")
    g = e.algebra
    c = e.chains["c"]
    log.expect(apply_boundary(g, c).is_zero(), "over F_3: d3(c) = 0")
    J = form_eta_pairing(g, e.form, c)
    log.expect(J == 1, f"over F_3: B(eta(c)) = {J}")
    R = reduced_koszul(e.graded())
    log.expect(R.rank >= 1, f"over F_3: reduced Koszul rank = {R.rank}")
    q = catalog_make("char3_octonion", domain=QQ, strict=False)
    bq = apply_boundary(q.algebra, q.chains["c"])
    want = ChainVector.from_terms(q.algebra, [(3, ("E0", "F0"))])
    log.expect(bq.coeffs == want.coeffs, f"over Q: d3(c) = {bq.format(q.algebra)}")
    return log, {"J": int(J), "eta_rank": R.rank, "boundary_over_Q": bq.format(q.algebra)}


# --- criterion 6: a non-reduced ground ring -------------------------------------------

def check_nonreduced():
    log = _Log()
    e = catalog_make("nonreduced_rank3")
    g = e.algebra
    c = e.chains["c"]
    log.expect(apply_boundary(g, c).is_zero(), "c = e1^e2^e3 is a 3-cycle")
    K = killing_module(g, max_filtration=2)
    rep = eta_representative(g, c)
    inside = K.contains(rep)
    log.expect(not inside, "eta(c) is not in Im(T) (base-field membership)")
    D = g.domain
    terms = " + ".join(f"{D.format(x)}*{g.names[i]}.{g.names[j]}" for (i, j), x in rep.coeffs.items())
    log.note(f"eta(c) is represented by {terms}")
    return log, {"eta_in_image": inside, "kill_dim": K.dim}


# --- criterion 7: vanishing on the catalog ---------------------------------------------

VANISHING_NAMES = ("w(3)", "w(4)", "w(5)", "w(3+3)", "w(7)", "w(3+4)", "X(8)", "Y(9)",
                   "kath9_4c", "w7_twisted", "filiform(3)", "filiform(4)", "filiform(5)",
                   "filiform(6)", "filiform(7)", "heisenberg(3)", "heisenberg(5)")
GRADED_NAMES = VANISHING_NAMES + ("abelian(3)", "sl2", "oscillator4", "solvable9",
                                  "coadjoint(sl2)", "w7_y", "X(5)", "Y(6)")


def nonzero_weight_ranks(g):
    """``{weight: rank of eta-bar}`` over the nonzero weights of ``Z_3``."""
    out = {}
    for w in sorted(weight_blocks(g, 3)):
        if g.grading.is_zero(w):
            continue
        out[w] = reduced_koszul(g, weight=w).rank
    return out


def check_vanishing():
    log = _Log()
    data = {}
    for nm in VANISHING_NAMES:
        r = reduced_koszul(catalog_make(nm).algebra).rank
        data[nm] = r
        log.expect(r == 0, f"eta-bar = 0 on {nm}")
    for nm in GRADED_NAMES:
        e = catalog_make(nm)
        for key, gr in e.gradings.items():
            if not gr.torsion_free:
                continue
            ranks = nonzero_weight_ranks(e.algebra.with_grading(gr))
            bad = {w: r for w, r in ranks.items() if r}
            log.expect(not bad, f"{nm} [{key}]: eta-bar vanishes on {len(ranks)} nonzero weights")
    return log, {"ranks": data}


# --- criterion 8: structural identities ----------------------------------------------

STRUCTURAL_NAMES = ("sl2", "heisenberg(5)", "filiform(6)", "w(3)", "w(4)", "oscillator4",
                    "solvable9", "coadjoint(sl2)", "X(5)")


def dd_zero(g, k):
    """``d_(k-1) d_k = 0`` on every basis k-chain."""
    for s in exterior_basis(g.dim, k):
        c = ChainVector(g.domain, g.dim, k, {s: g.domain.one})
        if not apply_boundary(g, apply_boundary(g, c)).is_zero():
            return False
    return True


def eta_kills_boundaries(g, K=None):
    K = K or killing_module(g, max_filtration=2)
    for s in exterior_basis(g.dim, 4):
        c = ChainVector(g.domain, g.dim, 4, {s: g.domain.one})
        if not K.contains(eta_representative(g, apply_boundary(g, c))):
            return False
    return True


def abelianization_identity(g, K=None):
    """``dim Kill - dim Kill^(3) == dim S^2(g/[g,g])``."""
    K = K or killing_module(g)
    m = g.dim - bracket_span(g, whole(g), whole(g)).rank
    return K.dim - K.filtration_dim(3) == m * (m + 1) // 2


def kill_filtration_identity(g, i, K=None):
    """``dim Kill - dim Kill^(i+2) == dim Kill(g / g^(i+1))``."""
    K = K or killing_module(g)
    lcs = lower_central_series(g)
    term = lcs[i] if i < len(lcs) else lcs[-1]
    h, _ = quotient_map(g, term.sparse_basis())
    return K.dim - K.filtration_dim(i + 2) == killing_module(h, max_filtration=2).dim


def check_structural():
    log = _Log()
    for nm in STRUCTURAL_NAMES:
        g = catalog_make(nm).algebra
        K = killing_module(g)
        log.expect(all(dd_zero(g, k) for k in (2, 3, 4)), f"{nm}: d o d = 0")
        log.expect(eta_kills_boundaries(g, K), f"{nm}: eta o d4 = 0")
        log.expect(len(invariant_forms(g)) == K.dim, f"{nm}: dim invariant forms = dim Kill = {K.dim}")
        log.expect(abelianization_identity(g, K), f"{nm}: Kill/Kill^(3) has dim of S^2(g/[g,g])")
        log.expect(all(kill_filtration_identity(g, i, K) for i in (1, 2, 3)),
                   f"{nm}: Kill - Kill^(i+2) = Kill(g/g^(i+1)) for i = 1..3")
    ok = True
    for seed in range(20):
        g = metabelian_random(seed).algebra
        ok = ok and series(g).metabelian and killing_module(g).filtration_dim(5) == 0
    log.expect(ok, "20 seeded metabelian algebras: Kill^(5) = 0")
    for F in (QQ, PrimeField(5)):
        ok = True
        for seed in range(20):
            g = two_nilpotent_random(seed, domain=F).algebra
            ok = ok and killing_module(g).filtration_dim(4) == 0 and reduced_koszul(g).rank == 0
        log.expect(ok, f"20 seeded 2-nilpotent algebras over {F.describe()}: Kill^(4) = 0, eta-bar = 0")
    ok = True
    for a, b in random_product_pairs(10):
        g1, g2 = catalog_make(a).algebra, catalog_make(b).algebra
        p = direct_product(g1, g2)
        k = [killing_module(x, max_filtration=3).filtration_dim(3) for x in (g1, g2, p)]
        r = [reduced_koszul(x).rank for x in (g1, g2, p)]
        ok = ok and k[2] == k[0] + k[1] and r[2] == r[0] + r[1]
    log.expect(ok, "10 seeded direct products: Kill^(3) and eta-bar rank are additive")
    return log, {}


# --- criterion 9: sl2 with its coadjoint module ----------------------------------------

def check_coadjoint():
    log = _Log()
    L = catalog_make("coadjoint(sl2)").graded("01")
    b = betti_numbers(L, up_to=2).betti
    log.expect(b[2] == 0, f"H2(l) = 0 (Betti numbers up to 2: {_fmt(b)})")
    for N in (2, 3):
        A = truncated_polynomial(QQ, N)
        G = current_algebra(A, L)
        c = witness_chain(G, A)
        log.expect(apply_boundary(G, c).is_zero(), f"N={N}: witness is a 2-cycle in A(x)l (dim {G.dim})")
        log.expect(homology_class_nonzero(G, c), f"N={N}: witness class is nonzero in H2")
    return log, {"betti": b}


# --- criterion 10: current algebras ----------------------------------------------------

def two_dim_nonabelian():
    """``[x, y] = y`` with ``x`` in degree 0 and ``y`` in degree 1."""
    return make_lie_algebra(QQ, 2, {(0, 1): {1: 1}}, ["x", "y"], Grading.from_degrees([0, 1]))


def current_pairs():
    A2, A3 = truncated_polynomial(QQ, 2), truncated_polynomial(QQ, 3)
    return [("Q[t]/t^2", A2, "sl2", catalog_make("sl2").graded()),
            ("Q[t]/t^2", A2, "heisenberg(3)", catalog_make("heisenberg(3)").graded()),
            ("Q[t]/t^2", A2, "coadjoint(sl2)", catalog_make("coadjoint(sl2)").graded("01")),
            ("Q[t]/t^3", A3, "aff1", two_dim_nonabelian())]


def check_current():
    log = _Log()
    data = {}
    for an, A, ln, l in current_pairs():
        cd = candeco_check(A, l)
        log.expect(cd.bijective and cd.source_dim == cd.V1 + cd.V2 + cd.V3,
                   f"{an} (x) {ln}: decomposition of Lambda^2 is bijective ({cd.source_dim} = "
                   f"{cd.V1}+{cd.V2}+{cd.V3})")
        log.expect(cd.cycles_bijective and cd.cycle_dim == cd.cycle_target_dim,
                   f"{an} (x) {ln}: 2-cycles match ({cd.cycle_dim} = {cd.cycle_target_dim})")
        nw = nw_boundary_decomposition(A, l)
        log.expect(nw.equal, f"{an} (x) {ln}: boundary pieces sum to B2 (dim {nw.B2})")
    A3 = truncated_polynomial(QQ, 3)
    L = catalog_make("coadjoint(sl2)").graded("01")
    rep = h2_graded_report(A3, L)
    for w, x in sorted(rep.weights.items()):
        failed = [c.name for c in x.checks if c.applicable and not c.holds]
        log.expect(not failed, f"Q[t]/t^3 (x) coadjoint, weight {w}: H2 = {x.h2}, identities hold"
                   + (f" except {failed}" if failed else ""))
        nw = nw_boundary_decomposition(A3, L, w)
        log.expect(nw.splits == nw.predicted_splits,
                   f"Q[t]/t^3 (x) coadjoint, weight {w}: boundary splitting "
                   f"{'holds' if nw.splits else 'fails'} as predicted")
    ah = algebra_homology(A3)
    rep = h2_graded_report(A3, two_dim_nonabelian())
    lam2 = comb(A3.dim, 2)
    log.expect(rep.all_hold, "Q[t]/t^3 (x) aff1: per-weight identities hold")
    log.expect(rep.h2_total == lam2, f"Q[t]/t^3 (x) aff1: dim H2 = {rep.h2_total} = dim Lambda^2 A")
    log.note(f"Q[t]/t^3: HH1 = {ah.HH1}, HC1 = {ah.HC1}, I_A = {ah.I_A}, A0 = {ah.A0}")
    data["aff1_h2"] = rep.h2_total
    return log, data


# --- registry ---------------------------------------------------------------------------

CHECKS = (
    ("sec6.matrix", 1, "boundary matrix of the 12-dim algebra and its kernel vector", check_matrix),
    ("sec6.koszul", 2, "nonvanishing Koszul class of the 12-dim algebra", check_koszul),
    ("sec6.betti", 3, "Betti numbers of the 12-dim algebra", check_betti),
    ("solvable", 4, "solvable 9-dim quadratic algebra", check_solvable),
    ("char3", 5, "2-nilpotent counterexample in characteristic 3", check_char3),
    ("nonreduced", 6, "rank-3 example over Q[e]/(e^2)", check_nonreduced),
    ("vanishing", 7, "vanishing of eta-bar on the graded catalog", check_vanishing),
    ("structural", 8, "structural identities", check_structural),
    ("coadjoint", 9, "H2 of sl2 with its coadjoint module, and its currents", check_coadjoint),
    ("currents", 10, "second homology of current algebras", check_current),
)


def select(only=None):
    if not only:
        return list(CHECKS)
    picked = [c for c in CHECKS if c[0] == only or c[0].startswith(only + ".")
              or c[0].startswith(only)]
    if not picked:
        raise KeyError(f"no check matches {only!r}; tags: {', '.join(c[0] for c in CHECKS)}")
    return picked


def run_check(tag, criterion, title, fn) -> CheckResult:
    t0 = time.perf_counter()
    try:
        log, data = fn()
        passed, lines = log.ok, log.lines
    except Exception as exc:  # a crash is a failed check, not a crashed run
        passed, lines, data = False, [f"FAIL raised {type(exc).__name__}: {exc}"], {}
    res = CheckResult(tag, criterion, passed, lines, time.perf_counter() - t0, data)
    res.data.setdefault("title", title)
    return res


def run_checks(only=None) -> list:
    return [run_check(*c) for c in select(only)]
