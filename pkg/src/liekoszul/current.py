"""Second homology of current algebras ``A (x) l``.

``A`` is a finite-dimensional commutative unital algebra over the field of
``l``; it sits in degree 0 for every grading.  Everything is computed over the
base field, and each dimension identity is compared with a direct
Chevalley-Eilenberg computation of ``H_2(A (x) l)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import BaseFieldMismatch, NotAField
from .homology import _boundary_of_basis, betti_numbers, chain_basis, cycle_space, wedge_sign
from .koszul import (killing_module, reduced_koszul, sym_basis, sym_block,
                     t_columns, sym_square_dim, wedge_square_dim)
from .linalg import QuotientPresentation, Subspace, check_size, kernel_of_columns
from .liealg import bracket_span, current_algebra, whole
from .scalars import CommAlgebra


def as_comm_algebra(A):
    """A field ``K`` becomes the one-dimensional algebra ``K``."""
    if A.is_field:
        return CommAlgebra(A, [[[A.one]]], [A.one], names=["1"], label=A.describe())
    return A


def _pairs(d):
    return list(itertools.combinations(range(d), 2))


def _wedge(F, u, v, pos) -> dict:
    """``u ^ v`` for coordinate tuples, over the ``i < j`` basis ``pos``."""
    out = {}
    for a, x in enumerate(u):
        if F.is_zero(x):
            continue
        for b, y in enumerate(v):
            if a == b or F.is_zero(y):
                continue
            key, s = ((a, b), F.one) if a < b else ((b, a), F.neg(F.one))
            r = pos[key]
            z = F.add(out.get(r, F.zero), F.mul(s, F.mul(x, y)))
            if F.is_zero(z):
                out.pop(r, None)
            else:
                out[r] = z
    return out


def _basis_vec(F, d, m):
    return tuple(F.one if k == m else F.zero for k in range(d))


@dataclass
class AlgebraHomologyReport:
    dim: int
    lambda2: int
    image_T: int
    image_T0: int
    HH1: int
    HC1: int
    I_A: int
    A0: int
    hh1: QuotientPresentation = dc_field(repr=False)
    hc1: QuotientPresentation = dc_field(repr=False)
    ia_basis: list = dc_field(repr=False, default_factory=list)
    a0_basis: list = dc_field(repr=False, default_factory=list)

    @property
    def A_mod_A0(self) -> int:
        return self.dim - self.A0


def algebra_homology(A) -> AlgebraHomologyReport:
    """``HH_1``, ``HC_1``, ``I_A`` and ``A_0`` of a commutative algebra."""
    A = as_comm_algebra(A)
    F, d = A.base, A.dim
    pairs = _pairs(d)
    pos = {p: i for i, p in enumerate(pairs)}
    E = [_basis_vec(F, d, m) for m in range(d)]
    t_gens, t0_gens = [], []
    for a, b, c in itertools.product(range(d), repeat=3):
        ab, bc, ca = A.mult[a][b], A.mult[b][c], A.mult[c][a]
        t = {}
        for u, v in ((ab, E[c]), (bc, E[a]), (ca, E[b])):
            for r, x in _wedge(F, u, v, pos).items():
                t[r] = F.add(t.get(r, F.zero), x)
        t = {r: x for r, x in t.items() if not F.is_zero(x)}
        t_gens.append(t)
        abc = A.mul(ab, E[c])
        t0 = dict(t)
        for r, x in _wedge(F, abc, A.unit, pos).items():
            y = F.sub(t0.get(r, F.zero), x)
            if F.is_zero(y):
                t0.pop(r, None)
            else:
                t0[r] = y
        t0_gens.append(t0)
    hc1 = QuotientPresentation(F, len(pairs), t_gens)
    hh1 = QuotientPresentation(F, len(pairs), t0_gens)
    # I_A: kernel of S^2 A -> A
    spairs = sym_basis(d)
    rows = {}
    for j, (a, b) in enumerate(spairs):
        for k, x in enumerate(A.mult[a][b]):
            if not F.is_zero(x):
                rows.setdefault(k, {})[j] = x
    ia = kernel_of_columns(F, len(spairs), rows.values())
    # A_0: kernel of a -> [a ^ 1] in HH_1
    rows = {}
    for m in range(d):
        for k, x in hh1.sparse_coordinates(_wedge(F, E[m], A.unit, pos)).items():
            rows.setdefault(k, {})[m] = x
    a0 = kernel_of_columns(F, d, rows.values())
    return AlgebraHomologyReport(
        d, len(pairs), hc1.subspace.rank, hh1.subspace.rank, hh1.quotient_dim,
        hc1.quotient_dim, len(ia), len(a0), hh1, hc1,
        [{k: x for k, x in enumerate(v) if not F.is_zero(x)} for v in ia],
        [{k: x for k, x in enumerate(v) if not F.is_zero(x)} for v in a0])


class _Layout:
    """Coordinates on ``V1 + V2 + V3amb`` for one weight block.

    ``V1 = Lambda^2 A (x) S^2 l``, ``V2 = A (x) Lambda^2 l``,
    ``V3amb = S^2 A (x) Lambda^2 l`` (which contains ``I_A (x) Lambda^2 l``).
    """

    def __init__(self, A, l, weight):
        self.A, self.l, self.weight = A, l, weight
        self.F = A.base
        d = A.dim
        self.apairs = _pairs(d)
        self.apos = {p: i for i, p in enumerate(self.apairs)}
        self.aspairs = list(sym_basis(d))
        self.aspos = {p: i for i, p in enumerate(self.aspairs)}
        self.s2 = sym_block(l, weight)
        self.s2pos = {p: i for i, p in enumerate(self.s2)}
        self.l2 = chain_basis(l, 2, weight)
        self.l2pos = {p: i for i, p in enumerate(self.l2)}
        self.n1 = len(self.apairs) * len(self.s2)
        self.n2 = d * len(self.l2)
        self.n3 = len(self.aspairs) * len(self.l2)
        self.size = self.n1 + self.n2 + self.n3
        check_size(self.size, self.size)

    def v1(self, ra, rs):
        return ra * len(self.s2) + rs

    def v2(self, m, rl):
        return self.n1 + m * len(self.l2) + rl

    def v3(self, rsa, rl):
        return self.n1 + self.n2 + rsa * len(self.l2) + rl

    def tensor(self, kind, left: dict, right: dict) -> dict:
        F = self.F
        place = {1: self.v1, 2: self.v2, 3: self.v3}[kind]
        out = {}
        for a, x in left.items():
            for b, y in right.items():
                out[place(a, b)] = F.mul(x, y)
        return out

    def phi(self, p, q) -> dict:
        """Image of ``(a_m x_i) ^ (a_m' x_j)`` under the canonical isomorphism."""
        A, F, n = self.A, self.F, self.l.dim
        m, i = divmod(p, n)
        m2, j = divmod(q, n)
        out = {}

        def add(k, x):
            y = F.add(out.get(k, F.zero), x)
            if F.is_zero(y):
                out.pop(k, None)
            else:
                out[k] = y

        if m != m2:
            sa = F.one if m < m2 else F.neg(F.one)
            add(self.v1(self.apos[(min(m, m2), max(m, m2))], self.s2pos[(min(i, j), max(i, j))]), sa)
        if i != j:
            sl = F.one if i < j else F.neg(F.one)
            rl = self.l2pos[(min(i, j), max(i, j))]
            prod = A.mult[m][m2]
            for k, x in enumerate(prod):
                if not F.is_zero(x):
                    add(self.v2(k, rl), F.mul(sl, x))
            add(self.v3(self.aspos[(min(m, m2), max(m, m2))], rl), sl)
            for k, x in enumerate(prod):
                if F.is_zero(x):
                    continue
                for u, y in enumerate(A.unit):
                    if not F.is_zero(y):
                        add(self.v3(self.aspos[(min(k, u), max(k, u))], rl),
                            F.neg(F.mul(sl, F.mul(x, y))))
        return out

    def unit_vectors(self, lo, hi):
        return [{k: self.F.one} for k in range(lo, hi)]

    def ia_lambda2(self, ia_basis):
        return [self.tensor(3, u, {r: self.F.one}) for u in ia_basis for r in range(len(self.l2))]


def _current(A, l):
    if not l.domain.is_field:
        raise NotAField("l must be defined over a field")
    A = as_comm_algebra(A)
    if A.base != l.domain:
        raise BaseFieldMismatch("A and l have different base fields")
    return A, current_algebra(A, l)


@dataclass
class CandecoReport:
    weight: object
    source_dim: int
    V1: int
    V2: int
    V3: int
    bijective: bool
    cycle_dim: int
    cycle_target_dim: int
    cycles_bijective: bool


def candeco_check(A, l, weight=None) -> CandecoReport:
    """Build the canonical map on ``Lambda^2(A (x) l)`` and test bijectivity.

    The map should be an isomorphism onto ``V1 + V2 + I_A (x) Lambda^2 l`` and
    restrict to an isomorphism of ``Z_2(A (x) l)`` onto
    ``V1 + A (x) Z_2(l) + I_A (x) Lambda^2 l``.
    """
    A, g = _current(A, l)
    alg = algebra_homology(A)
    L = _Layout(A, l, weight)
    F = L.F
    src = chain_basis(g, 2, weight)
    cols = [L.phi(p, q) for p, q in src]
    target_gens = (L.unit_vectors(0, L.n1 + L.n2) + L.ia_lambda2(alg.ia_basis))
    target = Subspace(F, L.size, target_gens)
    image = Subspace(F, L.size, cols)
    v3 = alg.I_A * len(L.l2)
    bij = (image.rank == len(src) == target.rank and target.contains_subspace(image))
    # cycles
    _, zvecs = cycle_space(g, 2, weight)
    zimg = []
    for z in zvecs:
        acc = {}
        for c, x in z.items():
            for k, y in cols[c].items():
                w = F.add(acc.get(k, F.zero), F.mul(x, y))
                if F.is_zero(w):
                    acc.pop(k, None)
                else:
                    acc[k] = w
        zimg.append(acc)
    zspace = Subspace(F, L.size, zimg)
    lbasis, lcycles = cycle_space(l, 2, weight)
    lz = []
    for m in range(A.dim):
        for z in lcycles:
            lz.append({L.v2(m, L.l2pos[lbasis[c]]): x for c, x in z.items()})
    ztarget = Subspace(F, L.size, L.unit_vectors(0, L.n1) + lz + L.ia_lambda2(alg.ia_basis))
    zbij = (zspace.rank == len(zvecs) == ztarget.rank and ztarget.contains_subspace(zspace))
    return CandecoReport(weight, len(src), L.n1, L.n2, v3, bij, len(zvecs), ztarget.rank, zbij)


@dataclass
class BoundaryDecomposition:
    weight: object
    W1: int
    W1p: int
    W3: int
    W12: int
    total: int
    B2: int
    equal: bool
    splits: bool
    kill3: int = 0
    eta_rank: int = 0

    @property
    def predicted_splits(self) -> bool:
        return self.kill3 == self.eta_rank

    @property
    def coupled_cocycles(self) -> bool:
        """True when ``B_2`` does not split along the canonical decomposition."""
        return not self.splits


def _homogeneous_basis(l, space, weight):
    """Basis vectors of a homogeneous subspace of ``l`` with their weights."""
    out = []
    for v in space.sparse_basis():
        w = l.grading.weights[next(iter(v))] if l.grading is not None else None
        out.append((v, w))
    return out


def nw_boundary_decomposition(A, l, weight=None) -> BoundaryDecomposition:
    """Compare ``W1 + W1' + W3 + W12`` with ``B_2(A (x) l)`` inside the canonical decomposition."""
    A, g = _current(A, l)
    alg = algebra_homology(A)
    L = _Layout(A, l, weight)
    F, n, d = L.F, l.dim, A.dim
    gr = l.grading
    target = gr.normalize(weight) if weight is not None else None

    def ok(w):
        return target is None or w == target

    # W1 = Lambda^2 A (x) l.S^2 l
    _, tcols = t_columns(l, weight)
    W1 = [L.tensor(1, {ra: F.one}, t) for ra in range(len(L.apairs)) for t in tcols]
    # W1' = T0(A^3) (x) (l * [l, l])
    derived = _homogeneous_basis(l, bracket_span(l, whole(l), whole(l)), weight)
    lsq = []
    for a in range(n):
        for v, wv in derived:
            if gr is not None and not ok(gr.add(gr.weights[a], wv)):
                continue
            sv = {}
            for k, x in v.items():
                key = (a, k) if a <= k else (k, a)
                sv[L.s2pos[key]] = F.add(sv.get(L.s2pos[key], F.zero), x)
            sv = {k: x for k, x in sv.items() if not F.is_zero(x)}
            if sv:
                lsq.append(sv)
    t0 = alg.hh1.subspace.sparse_basis()
    W1p = [L.tensor(1, u, s) for u in t0 for s in lsq]
    # W3 = I_A (x) (l ^ [l, l])
    lwedge = []
    for a in range(n):
        for v, wv in derived:
            if gr is not None and not ok(gr.add(gr.weights[a], wv)):
                continue
            wv2 = {}
            for k, x in v.items():
                if k == a:
                    continue
                key, s = ((a, k), x) if a < k else ((k, a), F.neg(x))
                r = L.l2pos[key]
                wv2[r] = F.add(wv2.get(r, F.zero), s)
            wv2 = {k: x for k, x in wv2.items() if not F.is_zero(x)}
            if wv2:
                lwedge.append(wv2)
    W3 = [L.tensor(3, {L.aspos[p]: x for p, x in _sym_to_pairs(alg, u).items()}, w)
          for u in alg.ia_basis for w in lwedge]
    # W12 = Im f
    W12 = []
    l2full = {p: i for i, p in enumerate(chain_basis(l, 2, weight))}
    for m in range(d):
        a1 = _wedge(F, _basis_vec(F, d, m), A.unit, L.apos)
        for i, j in itertools.combinations(range(n), 2):
            for k in range(n):
                if gr is not None and not ok(gr.total((i, j, k))):
                    continue
                vec = {}
                # f1 = (a ^ 1) (x) ([x_i, x_j] * x_k)
                s2 = {}
                for r, x in l.bracket_basis(i, j):
                    key = (r, k) if r <= k else (k, r)
                    s2[L.s2pos[key]] = F.add(s2.get(L.s2pos[key], F.zero), x)
                s2 = {r: x for r, x in s2.items() if not F.is_zero(x)}
                for key, x in L.tensor(1, a1, s2).items():
                    vec[key] = F.add(vec.get(key, F.zero), x)
                # f2 = -a (x) d_3(x_i ^ x_j ^ x_k); the sign matches the boundary
                # convention used throughout
                if k not in (i, j):
                    sgn, s = wedge_sign((i, j, k))
                    for t, c in _boundary_of_basis(l, s).items():
                        key = L.v2(m, l2full[t])
                        vec[key] = F.sub(vec.get(key, F.zero), F.mul(F.convert(sgn), c))
                vec = {r: x for r, x in vec.items() if not F.is_zero(x)}
                if vec:
                    W12.append(vec)
    # B_2 directly
    _, btgt, bcols = _boundary_cols(g, weight)
    img = []
    phis = [L.phi(p, q) for p, q in btgt]
    for col in bcols:
        acc = {}
        for r, x in col.items():
            for k, y in phis[r].items():
                z = F.add(acc.get(k, F.zero), F.mul(x, y))
                if F.is_zero(z):
                    acc.pop(k, None)
                else:
                    acc[k] = z
        img.append(acc)
    B2 = Subspace(F, L.size, img)
    total = Subspace(F, L.size, W1 + W1p + W3 + W12)
    equal = total == B2
    # splitting: B2 is the sum of its intersections with V1, V2, V3
    splits = sum(_intersection_dim(B2, lo, hi, L.size)
                 for lo, hi in ((0, L.n1), (L.n1, L.n1 + L.n2), (L.n1 + L.n2, L.size))) == B2.rank
    K = killing_module(l, max_filtration=3, weight=weight)
    eta = reduced_koszul(l, weight=weight, kill=K).rank
    return BoundaryDecomposition(
        weight, Subspace(F, L.size, W1).rank, Subspace(F, L.size, W1p).rank,
        Subspace(F, L.size, W3).rank, Subspace(F, L.size, W12).rank,
        total.rank, B2.rank, equal, splits, K.filtration_dim(3), eta)


def _sym_to_pairs(alg, u):
    # ia_basis vectors are indexed by the S^2 A pair list
    d = alg.dim
    sp = sym_basis(d)
    return {sp[k]: x for k, x in u.items()}


def _boundary_cols(g, weight):
    from .homology import boundary_columns
    return boundary_columns(g, 3, weight)


def _intersection_dim(S: Subspace, lo, hi, size) -> int:
    """``dim(S n V)`` for the coordinate block ``V = [lo, hi)``."""
    F = S.field
    proj = [{k: x for k, x in v.items() if not lo <= k < hi} for v in S.sparse_basis()]
    return S.rank - Subspace(F, size, proj).rank


@dataclass
class IdentityCheck:
    name: str
    applicable: bool
    lhs: int | None = None
    rhs: int | None = None

    @property
    def holds(self):
        return (not self.applicable) or self.lhs == self.rhs


@dataclass
class WeightReport:
    weight: object
    h2: int
    h2_l: int
    h1_sym: int
    h1_wedge: int
    kill: int
    kill3: int
    eta_rank: int
    kernel: int = 0
    checks: list = dc_field(default_factory=list)

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


@dataclass
class CurrentH2Report:
    algebra: AlgebraHomologyReport
    weights: dict

    @property
    def all_hold(self) -> bool:
        return all(c.holds for w in self.weights.values() for c in w.checks)

    @property
    def h2_total(self) -> int:
        return sum(w.h2 for w in self.weights.values())


def _weights(l):
    if l.grading is None:
        return [None]
    gr = l.grading
    return sorted({gr.add(gr.weights[i], gr.weights[j])
                   for i, j in sym_basis(l.dim)})


def _h1_dims(l):
    """Dimensions of ``H_1(l)`` per weight (``l / [l, l]``)."""
    if l.grading is None:
        return {None: betti_numbers(l, up_to=1).betti[1]}
    out = {}
    for w in sorted(set(l.grading.weights)):
        out[w] = betti_numbers(l, up_to=1, weight=w).betti[1]
    return out


def h2_graded_report(A, l, weights=None) -> CurrentH2Report:
    """Per-weight ``dim H_2(A (x) l)`` together with the dimension identities."""
    A, g = _current(A, l)
    alg = algebra_homology(A)
    gr = l.grading
    h1 = _h1_dims(l)
    ws = _weights(l) if weights is None else [gr.normalize(w) for w in weights]
    out = {}
    for w in ws:
        h2 = betti_numbers(g, up_to=2, weight=w).betti[2] if w is not None else \
            betti_numbers(g, up_to=2).betti[2]
        h2l = betti_numbers(l, up_to=2, weight=w).betti[2] if w is not None else \
            betti_numbers(l, up_to=2).betti[2]
        K = killing_module(l, max_filtration=3, weight=w)
        kill, kill3 = K.dim, K.filtration_dim(3)
        eta = reduced_koszul(l, weight=w, kill=K).rank
        s2h1 = sym_square_dim(h1, gr, w)
        l2h1 = wedge_square_dim(h1, gr, w)
        ker = h2 - A.dim * h2l
        r = WeightReport(w, h2, h2l, s2h1, l2h1, kill, kill3, eta, ker)
        # surjectivity onto A (x) H_2(l)
        r.checks.append(IdentityCheck("surjective", True, int(h2 >= A.dim * h2l), 1))
        # iterated extension: total dimension of the five subfactors
        r.checks.append(IdentityCheck(
            "iterated", True, h2,
            alg.HC1 * kill3 + alg.A_mod_A0 * (kill3 - eta) + alg.lambda2 * s2h1
            + alg.I_A * l2h1 + A.dim * h2l))
        r.checks.append(IdentityCheck(
            "kernel_when_s2h1_zero", s2h1 == 0, ker, alg.A_mod_A0 * (kill - eta) + alg.HC1 * kill))
        r.checks.append(IdentityCheck(
            "kernel_when_s2h1_zero_alt", s2h1 == 0, ker, alg.HC1 * eta + alg.HH1 * (kill - eta)))
        r.checks.append(IdentityCheck(
            "h2_when_s2h1_and_eta_zero", s2h1 == 0 and eta == 0, h2, alg.HH1 * kill + A.dim * h2l))
        r.checks.append(IdentityCheck(
            "eta0_kernel", eta == 0, ker,
            alg.image_T0 * s2h1 + alg.HH1 * kill + alg.I_A * l2h1))
        r.checks.append(IdentityCheck(
            "h2_when_kill3_zero", kill3 == 0, h2,
            alg.lambda2 * s2h1 + A.dim * h2l + alg.I_A * l2h1))
        if A.dim >= 2:
            cond = alg.HH1 == 0 or kill == 0 or (eta == kill and alg.HC1 == 0)
            r.checks.append(IdentityCheck(
                "vanishing", True, int(h2 == 0), int(s2h1 == 0 and h2l == 0 and cond)))
            r.checks.append(IdentityCheck(
                "kernel_vanishing", True, int(ker == 0), int(s2h1 == 0 and cond)))
        out[w] = r
    return CurrentH2Report(alg, out)
