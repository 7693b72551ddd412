"""Symmetric squares, the Killing module and the Koszul map.

``S^2 g`` has basis ``e_i * e_j`` for ``i <= j`` (lex order) with no
normalising factor, so ``x * y = sum_{i,j} x_i y_j e_i * e_j`` with the pair
sorted.  The map

    T((x ^ y) (x) z) = x * [y, z] - y * [z, x]

has cokernel ``Kill(g)``.  The chain-level Koszul map sends ``e_i ^ e_j ^ e_k``
(``i < j < k``) to ``e_i * [e_j, e_k]``; composed with the projection to
``Kill(g)`` it does not depend on the chosen slot.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .errors import FormNotInvariant, NotAField, NotGraded
from .homology import ChainVector, chain_basis, cycle_space
from .linalg import (ExactMatrix, QuotientPresentation, Subspace, check_size,
                     determinant, kernel_of_columns, restrict_columns,
                     restrict_vector)
from .liealg import (Grading, _as_vector, lower_central_series, quotient_map,
                     span)


@lru_cache(maxsize=None)
def sym_basis(n: int) -> tuple:
    return tuple(itertools.combinations_with_replacement(range(n), 2))


@lru_cache(maxsize=None)
def sym_index(n: int) -> dict:
    return {p: i for i, p in enumerate(sym_basis(n))}


def sym_product(domain, u, v) -> dict:
    """``u * v`` in ``S^2`` as ``{(i, j): coefficient}`` with ``i <= j``."""
    u, v = _as_vector(domain, u), _as_vector(domain, v)
    out = {}
    for i, a in u.items():
        for j, b in v.items():
            key = (i, j) if i <= j else (j, i)
            y = domain.add(out.get(key, domain.zero), domain.mul(a, b))
            if domain.is_zero(y):
                out.pop(key, None)
            else:
                out[key] = y
    return out


class SymVector:
    """An element of ``S^2 g`` (sparse over pairs ``i <= j``)."""

    __slots__ = ("domain", "n", "coeffs")

    def __init__(self, domain, n: int, coeffs=None):
        self.domain = domain
        self.n = n
        self.coeffs = {}
        for (i, j), c in (coeffs or {}).items():
            key = (i, j) if i <= j else (j, i)
            y = domain.add(self.coeffs.get(key, domain.zero), domain.convert(c))
            if domain.is_zero(y):
                self.coeffs.pop(key, None)
            else:
                self.coeffs[key] = y

    @classmethod
    def product(cls, g, u, v):
        return cls(g.domain, g.dim, sym_product(g.domain, u, v))

    def to_list(self):
        idx = sym_index(self.n)
        out = [self.domain.zero] * len(idx)
        for p, c in self.coeffs.items():
            out[idx[p]] = c
        return out

    def __eq__(self, other):
        return isinstance(other, SymVector) and self.n == other.n and self.coeffs == other.coeffs

    def __repr__(self):
        terms = " + ".join(f"{self.domain.format(c)}*e{i + 1}.e{j + 1}" for (i, j), c in
                           sorted(self.coeffs.items()))
        return f"SymVector({terms or '0'})"


def sym_block(g, weight=None) -> list:
    """Pairs ``(i, j)``, ``i <= j``, optionally restricted to one weight."""
    pairs = sym_basis(g.dim)
    if weight is None:
        return list(pairs)
    if g.grading is None:
        raise NotGraded("weight given but algebra carries no grading")
    w = g.grading.normalize(weight)
    gr = g.grading
    return [p for p in pairs if gr.add(gr.weights[p[0]], gr.weights[p[1]]) == w]


def _t_generator(g, a, b, c) -> dict:
    """``T((e_a ^ e_b) (x) e_c)`` in S^2 coordinates."""
    D = g.domain
    out = {}
    for k, x in g.bracket_basis(b, c):
        key = (a, k) if a <= k else (k, a)
        out[key] = D.add(out.get(key, D.zero), x)
    for k, x in g.bracket_basis(c, a):
        key = (b, k) if b <= k else (k, b)
        out[key] = D.sub(out.get(key, D.zero), x)
    return {p: x for p, x in out.items() if not D.is_zero(x)}


def t_columns(g, weight=None, restrict: bool = True):
    """Columns of T on basis triples ``(a < b, c)`` of the requested weight.

    Returns ``(pairs, columns)`` where ``pairs`` indexes the target rows.
    """
    pairs = sym_block(g, weight)
    pos = {p: i for i, p in enumerate(pairs)}
    gr = g.grading
    target = gr.normalize(weight) if weight is not None else None
    cols = []
    for a, b in itertools.combinations(range(g.dim), 2):
        for c in range(g.dim):
            if target is not None and gr.total((a, b, c)) != target:
                continue
            col = {pos[p]: x for p, x in _t_generator(g, a, b, c).items()}
            cols.append(col)
    if restrict:
        cols = restrict_columns(g.domain, cols)
    return pairs, cols


def t_matrix(g, weight=None) -> ExactMatrix:
    """Matrix of ``T : Lambda^2 g (x) g -> S^2 g`` over the base field."""
    pairs, cols = t_columns(g, weight)
    d = g.domain.dim
    check_size(len(pairs) * d, len(cols))
    return ExactMatrix.from_columns(g.domain.base, len(pairs) * d, cols)


def _flatten_sym(g, sv: dict, pairs) -> dict:
    pos = {p: i for i, p in enumerate(pairs)}
    return restrict_vector(g.domain, {pos[p]: x for p, x in sv.items()})


def _r_vector(g, flat: dict) -> dict:
    """Inverse of flattening for a vector of the restricted algebra."""
    D = g.domain
    if D.is_field:
        return dict(flat)
    d, F = D.dim, D.base
    acc = {}
    for idx, x in flat.items():
        i, l = divmod(idx, d)
        acc.setdefault(i, [F.zero] * d)[l] = x
    return {i: D.from_coords(v) for i, v in acc.items()}


@dataclass
class KillingModule:
    """``Kill(g)`` (or one weight component) as a quotient of ``S^2 g``.

    Coordinates live in the flattened base-field space over ``pairs``.
    ``filtration[i]`` is the dimension of ``Kill^(i)`` for ``i >= 2``; beyond
    the last listed index the dimension stays constant.
    """

    algebra: object
    weight: object
    pairs: list
    quotient: QuotientPresentation
    filtration: dict = dc_field(default_factory=dict)
    filtration_spaces: dict = dc_field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return self.quotient.quotient_dim

    def filtration_dim(self, i: int) -> int:
        if i <= 2:
            return self.dim
        top = max(self.filtration)
        return self.filtration[min(i, top)]

    def flatten(self, sv: dict) -> dict:
        return _flatten_sym(self.algebra, sv, self.pairs)

    def class_of(self, sv) -> tuple:
        """Canonical coordinates of the class of an S^2 element."""
        if isinstance(sv, SymVector):
            sv = sv.coeffs
        return self.quotient.coordinates(self.flatten(sv))

    def contains(self, sv) -> bool:
        """True when the S^2 element lies in the image of T."""
        if isinstance(sv, SymVector):
            sv = sv.coeffs
        return self.quotient.contains(self.flatten(sv))


def killing_module(g, max_filtration=None, weight=None) -> KillingModule:
    """Killing module with its filtration ``Kill^(i)`` (image of ``g (x) g^(i-1)``)."""
    pairs, cols = t_columns(g, weight)
    F = g.domain.base
    ambient = len(pairs) * g.domain.dim
    Q = QuotientPresentation(F, ambient, cols)
    K = KillingModule(g, weight, pairs, Q)
    K.filtration[2] = Q.quotient_dim
    lcs = lower_central_series(g)  # over the base field
    gr = g.grading
    target = gr.normalize(weight) if weight is not None else None
    top = len(lcs) + 1 if max_filtration is None else max_filtration
    for i in range(3, top + 1):
        term = lcs[i - 2] if i - 2 < len(lcs) else lcs[-1]
        gens = list(cols)
        for flat in term.sparse_basis():
            v = _r_vector(g, flat)
            for a in range(g.dim):
                if target is not None:
                    wv = gr.weights[next(iter(v))]
                    if gr.add(gr.weights[a], wv) != target:
                        continue
                sv = sym_product(g.domain, {a: g.domain.one}, v)
                if sv:
                    gens.append(_flatten_sym(g, sv, pairs))
        S = Subspace(F, ambient, gens)
        K.filtration[i] = S.rank - Q.subspace.rank
        K.filtration_spaces[i] = S
        if K.filtration[i] == 0 and max_filtration is None:
            break
    return K


def _eta_generator(g, s) -> dict:
    i, j, k = s
    D = g.domain
    out = {}
    for m, x in g.bracket_basis(j, k):
        key = (i, m) if i <= m else (m, i)
        out[key] = D.add(out.get(key, D.zero), x)
    return {p: x for p, x in out.items() if not D.is_zero(x)}


def eta_representative(g, chain: ChainVector) -> SymVector:
    """Chain-level Koszul map: ``S^2`` representative of ``eta(chain)``."""
    if chain.degree != 3:
        from .errors import DegreeMismatch
        raise DegreeMismatch("the Koszul map is defined on 3-chains")
    D = g.domain
    acc = {}
    for s, a in chain.coeffs.items():
        for p, x in _eta_generator(g, s).items():
            y = D.add(acc.get(p, D.zero), D.mul(a, x))
            if D.is_zero(y):
                acc.pop(p, None)
            else:
                acc[p] = y
    return SymVector(D, g.dim, acc)


def eta_on_chain(g, chain: ChainVector, kill: KillingModule | None = None) -> tuple:
    """Coordinates of ``eta(chain)`` in ``Kill(g)``."""
    kill = kill or killing_module(g, max_filtration=2)
    return kill.class_of(eta_representative(g, chain))


@dataclass
class KoszulImage:
    rank: int
    image: list
    kill: KillingModule
    cycle_dim: int


def reduced_koszul(g, weight=None, kill: KillingModule | None = None) -> KoszulImage:
    """Image of ``Z_3`` (of the given weight) in ``Kill(g)``."""
    if kill is None or kill.weight != weight:
        kill = killing_module(g, max_filtration=2, weight=weight)
    basis, cycles = cycle_space(g, 3, weight)
    D = g.domain
    F = D.base
    pos = {p: i for i, p in enumerate(kill.pairs)}
    eta_cols = restrict_columns(D, [{pos[p]: x for p, x in _eta_generator(g, s).items()}
                                    for s in basis])
    images = []
    for z in cycles:
        acc = {}
        for col, a in z.items():
            for r, x in eta_cols[col].items():
                y = F.add(acc.get(r, F.zero), F.mul(a, x))
                if F.is_zero(y):
                    acc.pop(r, None)
                else:
                    acc[r] = y
        c = kill.quotient.sparse_coordinates(acc)
        if c:
            images.append(c)
    S = Subspace(F, kill.dim, images)
    return KoszulImage(S.rank, S.basis(), kill, len(cycles))


# --- invariant forms ------------------------------------------------------------

class BilinearForm:
    """Symmetric bilinear form on ``F^n`` given by its Gram matrix."""

    def __init__(self, field, matrix):
        self.field = field
        M = [[field.convert(x) for x in r] for r in matrix]
        n = len(M)
        if any(len(r) != n for r in M):
            raise ValueError("form matrix must be square")
        for i in range(n):
            for j in range(i):
                if M[i][j] != M[j][i]:
                    raise ValueError("form matrix must be symmetric")
        self.n = n
        self.matrix = M

    @classmethod
    def from_pairs(cls, field, n: int, pairs: dict):
        M = [[field.zero] * n for _ in range(n)]
        for (i, j), c in pairs.items():
            c = field.convert(c)
            M[i][j] = c
            M[j][i] = c
        return cls(field, M)

    def __call__(self, u, v):
        F = self.field
        u, v = _as_vector(F, u), _as_vector(F, v)
        acc = F.zero
        for i, a in u.items():
            row = self.matrix[i]
            for j, b in v.items():
                if not F.is_zero(row[j]):
                    acc = F.add(acc, F.mul(F.mul(a, b), row[j]))
        return acc

    def on_sym(self, sv) -> object:
        """Value on ``S^2``: ``B(e_i * e_j) = B(e_i, e_j)``."""
        F = self.field
        coeffs = sv.coeffs if isinstance(sv, SymVector) else sv
        acc = F.zero
        for (i, j), c in coeffs.items():
            acc = F.add(acc, F.mul(c, self.matrix[i][j]))
        return acc

    def kernel(self) -> list:
        F = self.field
        rows = [{j: x for j, x in enumerate(r) if not F.is_zero(x)} for r in self.matrix]
        return kernel_of_columns(F, self.n, rows)

    def is_nondegenerate(self) -> bool:
        return not self.kernel()

    def is_invariant(self, g) -> bool:
        F = self.field
        n = g.dim
        for x, y, z in itertools.product(range(n), repeat=3):
            acc = F.zero
            for k, c in g.bracket_basis(x, y):
                acc = F.add(acc, F.mul(c, self.matrix[k][z]))
            for k, c in g.bracket_basis(x, z):
                acc = F.add(acc, F.mul(c, self.matrix[y][k]))
            if not F.is_zero(acc):
                return False
        return True

    def __add__(self, other):
        F = self.field
        return BilinearForm(F, [[F.add(a, b) for a, b in zip(r, s)]
                                for r, s in zip(self.matrix, other.matrix)])

    def scale(self, c):
        F = self.field
        c = F.convert(c)
        return BilinearForm(F, [[F.mul(c, a) for a in r] for r in self.matrix])

    def __eq__(self, other):
        return isinstance(other, BilinearForm) and self.matrix == other.matrix

    def __repr__(self):
        return f"BilinearForm(n={self.n})"


def invariant_forms(g) -> list:
    """Basis of the symmetric bilinear forms with ``B([x,y],z) + B(y,[x,z]) = 0``."""
    if not g.domain.is_field:
        raise NotAField("invariant forms are computed over a field")
    F, n = g.domain, g.dim
    idx = sym_index(n)

    def var(a, b):
        return idx[(a, b) if a <= b else (b, a)]

    rows = []
    for x, y, z in itertools.product(range(n), repeat=3):
        eq = {}
        for k, c in g.bracket_basis(x, y):
            u = var(k, z)
            eq[u] = F.add(eq.get(u, F.zero), c)
        for k, c in g.bracket_basis(x, z):
            u = var(y, k)
            eq[u] = F.add(eq.get(u, F.zero), c)
        eq = {u: c for u, c in eq.items() if not F.is_zero(c)}
        if eq:
            rows.append(eq)
    basis = kernel_of_columns(F, len(idx), rows)
    forms = []
    for v in basis:
        M = [[F.zero] * n for _ in range(n)]
        for (a, b), u in idx.items():
            M[a][b] = M[b][a] = v[u]
        forms.append(BilinearForm(F, M))
    return forms


def form_eta_pairing(g, B: BilinearForm, chain: ChainVector):
    """``sum c * B(e_i, [e_j, e_k])`` over the terms of a 3-chain."""
    if not B.is_invariant(g):
        raise FormNotInvariant("the form is not invariant")
    F = B.field
    acc = F.zero
    for (i, j, k), c in chain.coeffs.items():
        acc = F.add(acc, F.mul(c, B({i: F.one}, g.bracket({j: F.one}, {k: F.one}))))
    return acc


def homogeneous_components(g, B: BilinearForm) -> dict:
    """Split ``B`` by the weight ``wt(e_i) + wt(e_j)`` of its nonzero entries."""
    if g.grading is None:
        raise NotGraded("algebra carries no grading")
    gr, F, n = g.grading, B.field, B.n
    comps = {}
    for i in range(n):
        for j in range(n):
            x = B.matrix[i][j]
            if F.is_zero(x):
                continue
            w = gr.add(gr.weights[i], gr.weights[j])
            M = comps.setdefault(w, [[F.zero] * n for _ in range(n)])
            M[i][j] = x
    return {w: BilinearForm(F, M) for w, M in sorted(comps.items())}


SAMPLE_VALUES = (-2, -1, 0, 1, 2, 3, 5, 7)


@dataclass
class QuadrableResult:
    """``verdict`` is ``"nondegenerate"``, ``"degenerate-certified"`` or ``"unknown"``."""

    verdict: str
    form: BilinearForm | None = None
    attempts: int = 0

    @property
    def quadrable(self):
        return {"nondegenerate": True, "degenerate-certified": False}.get(self.verdict)


def _combine(F, forms, coeffs):
    n = forms[0].n
    M = [[F.zero] * n for _ in range(n)]
    for B, c in zip(forms, coeffs):
        c = F.convert(c)
        if F.is_zero(c):
            continue
        for i in range(n):
            for j in range(n):
                if not F.is_zero(B.matrix[i][j]):
                    M[i][j] = F.add(M[i][j], F.mul(c, B.matrix[i][j]))
    return BilinearForm(F, M)


def quadrable_probe(g, attempts: int = 200, seed: int = 0, grid_budget: int = 20000) -> QuadrableResult:
    """Look for a nondegenerate invariant form.

    Random combinations of a basis of invariant forms are tried first.  If
    all are degenerate, ``det(sum c_i B_i)`` (degree at most ``n`` in each
    ``c_i``) is evaluated on the grid ``{0..n}^s``; vanishing there proves it is
    identically zero.  When the grid is too large, or the field has too few
    elements for it, the answer is ``unknown``.
    """
    if not g.domain.is_field:
        raise NotAField("quadrability is decided over a field")
    F, n = g.domain, g.dim
    if n == 0:
        return QuadrableResult("nondegenerate", BilinearForm(F, []))
    forms = invariant_forms(g)
    s = len(forms)
    if s == 0:
        return QuadrableResult("degenerate-certified")
    rng = random.Random(seed)
    for t in range(1, attempts + 1):
        coeffs = [rng.choice(SAMPLE_VALUES) for _ in range(s)]
        B = _combine(F, forms, coeffs)
        if not F.is_zero(determinant(F, B.matrix)):
            return QuadrableResult("nondegenerate", B, t)
    if F.characteristic and F.characteristic <= n:
        return QuadrableResult("unknown", None, attempts)
    if (n + 1) ** s > grid_budget:
        return QuadrableResult("unknown", None, attempts)
    for coeffs in itertools.product(range(n + 1), repeat=s):
        B = _combine(F, forms, coeffs)
        if not F.is_zero(determinant(F, B.matrix)):
            return QuadrableResult("nondegenerate", B, attempts)
    return QuadrableResult("degenerate-certified", None, attempts)


def quotient_by_form_kernel(g, B: BilinearForm):
    """``(g / ker B, induced form)``; the kernel of an invariant form is an ideal."""
    if not B.is_invariant(g):
        raise FormNotInvariant("the form is not invariant")
    F = B.field
    ker = B.kernel()
    h, P = quotient_map(g, ker)
    Ispace = span(g, ker)
    pivots = set(Ispace.pivots)
    comp = [c for c in range(g.dim) if c not in pivots]
    M = [[B.matrix[a][b] for b in comp] for a in comp]
    return h, BilinearForm(F, M)


def sym_square_dim(dims: dict, grading: Grading | None = None, weight=None) -> int:
    """Dimension of ``S^2 V`` (or its weight component) for ``V = sum V_w``."""
    return _square_dim(dims, grading, weight, symmetric=True)


def wedge_square_dim(dims: dict, grading: Grading | None = None, weight=None) -> int:
    return _square_dim(dims, grading, weight, symmetric=False)


def _square_dim(dims, grading, weight, symmetric):
    ws = sorted(w for w, d in dims.items() if d)
    total = 0
    for a, wa in enumerate(ws):
        for wb in ws[a:]:
            if weight is not None and grading.add(wa, wb) != grading.normalize(weight):
                continue
            if wa == wb:
                d = dims[wa]
                total += d * (d + 1) // 2 if symmetric else d * (d - 1) // 2
            else:
                total += dims[wa] * dims[wb]
    return total
