"""Lie algebras given by structure constants, with gradings and constructions.

Basis vectors are indexed from 0.  Vectors are sparse dicts ``{index: scalar}``
(dense lists are accepted wherever a vector is expected).  Bracket tables list
``[e_i, e_j]`` for ``i < j`` only; the rest follows by antisymmetry.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import (BaseFieldMismatch, DomainMismatch, FormDegenerate,
                     FormNotInvariant, GradingGroupMismatch,
                     GradingIncompatible, IndexOutOfRange, JacobiFails,
                     NotADerivation, NotAField, NotAnIdeal, NotSkew)
from .linalg import (Subspace, kernel_of_columns, sparse_vector)
from .scalars import make_domain


# --- gradings ---------------------------------------------------------------

@dataclass(frozen=True)
class Grading:
    """Weights in ``Z^free_rank x Z/m_1 x ... x Z/m_s`` for each basis vector."""

    free_rank: int
    torsion: tuple
    weights: tuple

    def __post_init__(self):
        torsion = tuple(int(m) for m in self.torsion)
        if any(m < 2 for m in torsion):
            raise ValueError("torsion moduli must be at least 2")
        object.__setattr__(self, "torsion", torsion)
        object.__setattr__(self, "weights", tuple(self.normalize(w) for w in self.weights))

    @classmethod
    def from_degrees(cls, degrees):
        """A Z-grading from a list of integer degrees."""
        return cls(1, (), tuple((int(d),) for d in degrees))

    @classmethod
    def trivial(cls, n: int):
        return cls(0, (), tuple(() for _ in range(n)))

    @property
    def group(self):
        return (self.free_rank, self.torsion)

    @property
    def arity(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def torsion_free(self) -> bool:
        return not self.torsion

    @property
    def zero(self):
        return tuple(0 for _ in range(self.arity))

    def normalize(self, w) -> tuple:
        if isinstance(w, int):
            w = (w,)
        w = tuple(int(x) for x in w)
        if len(w) != self.arity:
            raise ValueError(f"weight {w} does not have arity {self.arity}")
        d = self.free_rank
        return w[:d] + tuple(x % m for x, m in zip(w[d:], self.torsion))

    def add(self, a, b) -> tuple:
        d = self.free_rank
        s = tuple(x + y for x, y in zip(a, b))
        return s[:d] + tuple(x % m for x, m in zip(s[d:], self.torsion))

    def neg(self, a) -> tuple:
        return self.normalize(tuple(-x for x in a))

    def total(self, indices) -> tuple:
        w = self.zero
        for i in indices:
            w = self.add(w, self.weights[i])
        return w

    def is_zero(self, w) -> bool:
        return self.normalize(w) == self.zero


# --- Lie algebras -------------------------------------------------------------

def _as_vector(domain, v) -> dict:
    if isinstance(v, dict):
        out = {}
        for k, x in v.items():
            x = domain.convert(x)
            if not domain.is_zero(x):
                out[k] = x
        return out
    return sparse_vector(domain, v)


def _axpy(domain, acc: dict, a, v: dict) -> None:
    """acc += a * v in place."""
    for k, x in v.items():
        y = domain.add(acc.get(k, domain.zero), domain.mul(a, x))
        if domain.is_zero(y):
            acc.pop(k, None)
        else:
            acc[k] = y


class LieAlgebra:
    """A Lie algebra over a scalar domain, free of rank ``dim``.

    Use :func:`make_lie_algebra` to build a validated instance.
    """

    def __init__(self, domain, dim: int, brackets: dict, names=None, grading=None):
        self.domain = domain
        self.dim = dim
        self.names = tuple(names) if names is not None else tuple(f"e{i + 1}" for i in range(dim))
        if len(self.names) != dim or len(set(self.names)) != dim:
            raise ValueError("names must be distinct, one per basis vector")
        self.grading = grading
        self._brackets = {}
        table = [[() for _ in range(dim)] for _ in range(dim)]
        neg = domain.neg
        for (i, j), vec in brackets.items():
            vec = {k: c for k, c in vec.items() if not domain.is_zero(c)}
            if not vec:
                continue
            self._brackets[(i, j)] = dict(sorted(vec.items()))
            table[i][j] = tuple(sorted(vec.items()))
            table[j][i] = tuple((k, neg(c)) for k, c in sorted(vec.items()))
        self._table = table
        self._index = {nm: i for i, nm in enumerate(self.names)}

    # structure ---------------------------------------------------------------
    @property
    def structure_constants(self) -> dict:
        """``{(i, j): {k: c}}`` for ``i < j`` with nonzero brackets."""
        return {key: dict(v) for key, v in self._brackets.items()}

    @property
    def field(self):
        return self.domain.base

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise IndexOutOfRange(f"no basis vector named {name!r}") from None

    def bracket_basis(self, i: int, j: int):
        """``[e_i, e_j]`` as a tuple of ``(k, c)`` pairs."""
        return self._table[i][j]

    def bracket(self, u, v) -> dict:
        D = self.domain
        u, v = _as_vector(D, u), _as_vector(D, v)
        acc = {}
        for i, a in u.items():
            row = self._table[i]
            for j, b in v.items():
                ab = None
                for k, c in row[j]:
                    if ab is None:
                        ab = D.mul(a, b)
                    y = D.add(acc.get(k, D.zero), D.mul(ab, c))
                    if D.is_zero(y):
                        acc.pop(k, None)
                    else:
                        acc[k] = y
        return acc

    def basis_vector(self, i: int) -> dict:
        return {i: self.domain.one}

    def vector(self, terms) -> dict:
        """Build a vector from ``{name_or_index: coefficient}``."""
        out = {}
        for key, c in terms.items():
            i = self.index(key) if isinstance(key, str) else key
            _axpy(self.domain, out, self.domain.convert(c), {i: self.domain.one})
        return out

    def jacobi_defect(self, i: int, j: int, k: int) -> dict:
        e = self.basis_vector
        acc = {}
        one = self.domain.one
        _axpy(self.domain, acc, one, self.bracket(e(i), self.bracket(e(j), e(k))))
        _axpy(self.domain, acc, one, self.bracket(e(j), self.bracket(e(k), e(i))))
        _axpy(self.domain, acc, one, self.bracket(e(k), self.bracket(e(i), e(j))))
        return acc

    def check_jacobi(self) -> None:
        for i, j, k in itertools.combinations(range(self.dim), 3):
            d = self.jacobi_defect(i, j, k)
            if d:
                raise JacobiFails((i, j, k), d)

    def check_grading(self, grading=None) -> None:
        gr = grading if grading is not None else self.grading
        if gr is None:
            return
        if len(gr.weights) != self.dim:
            raise GradingIncompatible(None, "grading has the wrong number of weights")
        for (i, j), vec in self._brackets.items():
            w = gr.add(gr.weights[i], gr.weights[j])
            for k in vec:
                if gr.weights[k] != w:
                    raise GradingIncompatible((i, j))

    def is_abelian(self) -> bool:
        return not self._brackets

    def weight_of(self, v):
        """Weight of a homogeneous nonzero vector, None if inhomogeneous."""
        if self.grading is None:
            raise ValueError("algebra is not graded")
        ws = {self.grading.weights[k] for k in _as_vector(self.domain, v)}
        return ws.pop() if len(ws) == 1 else None

    # derived algebras ---------------------------------------------------------
    def with_grading(self, grading):
        if grading is not None:
            self.check_grading(grading)
        return LieAlgebra(self.domain, self.dim, self._brackets, self.names, grading)

    def renamed(self, names):
        return LieAlgebra(self.domain, self.dim, self._brackets, names, self.grading)

    def reordered(self, order):
        """Same algebra on the basis ``(e_order[0], e_order[1], ...)``."""
        order = list(order)
        if sorted(order) != list(range(self.dim)):
            raise ValueError("order must be a permutation of the basis indices")
        pos = {old: new for new, old in enumerate(order)}
        D = self.domain
        br = {}
        for (i, j), vec in self._brackets.items():
            a, b = pos[i], pos[j]
            v = {pos[k]: c for k, c in vec.items()}
            if a > b:
                a, b = b, a
                v = {k: D.neg(c) for k, c in v.items()}
            br[(a, b)] = v
        gr = None
        if self.grading is not None:
            gr = Grading(self.grading.free_rank, self.grading.torsion,
                         tuple(self.grading.weights[o] for o in order))
        return LieAlgebra(D, self.dim, br, [self.names[o] for o in order], gr)

    def restrict_scalars(self):
        """The same algebra viewed over the base field (basis ``a_m * e_i``)."""
        D = self.domain
        if D.is_field:
            return self
        F, d = D.base, D.dim
        basis = [tuple(F.one if l == m else F.zero for l in range(d)) for m in range(d)]
        br = {}
        n = self.dim
        for i, j in itertools.product(range(n), repeat=2):
            vec = self._table[i][j]
            if not vec:
                continue
            for m, p in itertools.product(range(d), repeat=2):
                a, b = i * d + m, j * d + p
                if a >= b:
                    continue
                ab = D.mul(basis[m], basis[p])
                out = {}
                for k, c in vec:
                    for l, x in enumerate(D.coords(D.mul(ab, c))):
                        if not F.is_zero(x):
                            out[k * d + l] = F.add(out.get(k * d + l, F.zero), x)
                if out:
                    br[(a, b)] = out
        names = []
        for nm in self.names:
            for an in D.names:
                names.append(nm if an == "1" else f"{an}*{nm}")
        gr = None
        if self.grading is not None:
            gr = Grading(self.grading.free_rank, self.grading.torsion,
                         tuple(w for w in self.grading.weights for _ in range(d)))
        return LieAlgebra(F, n * d, br, names, gr)

    def same_structure(self, other) -> bool:
        return (self.domain == other.domain and self.dim == other.dim
                and self._brackets == other._brackets)

    def __eq__(self, other):
        return (isinstance(other, LieAlgebra) and self.same_structure(other)
                and self.names == other.names and self.grading == other.grading)

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self._brackets))))

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, domain={self.domain.describe()})"


def make_lie_algebra(domain, n: int, table, names=None, grading=None, check: bool = True) -> LieAlgebra:
    """Validated Lie algebra from a bracket table.

    ``table`` maps ``(i, j)`` with ``0 <= i < j < n`` to the coordinates of
    ``[e_i, e_j]``: either a dict ``{k: c}`` or a length-``n`` sequence.
    Jacobi is checked on every basis triple, and the grading (if any) on every
    nonzero bracket.
    """
    domain = make_domain(domain)
    br = {}
    items = table.items() if isinstance(table, dict) else table
    for key, vec in items:
        i, j = key
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRange(f"bracket index ({i}, {j}) outside 0..{n - 1}")
        if i >= j:
            raise IndexOutOfRange(f"bracket entries need i < j, got ({i}, {j})")
        if isinstance(vec, dict):
            v = {}
            for k, c in vec.items():
                if not 0 <= k < n:
                    raise IndexOutOfRange(f"bracket ({i}, {j}) has output index {k}")
                c = domain.convert(c)
                if not domain.is_zero(c):
                    v[k] = c
        else:
            if len(vec) != n:
                raise IndexOutOfRange(f"bracket ({i}, {j}) vector has length {len(vec)}")
            v = sparse_vector(domain, vec)
        if (i, j) in br:
            raise ValueError(f"bracket ({i}, {j}) given twice")
        br[(i, j)] = v
    g = LieAlgebra(domain, n, br, names, None)
    if check:
        g.check_jacobi()
    if grading is not None:
        if len(grading.weights) != n:
            raise GradingIncompatible(None, "grading has the wrong number of weights")
        g.check_grading(grading)
        g = LieAlgebra(domain, n, br, names, grading)
    return g


def abelian(domain, n: int) -> LieAlgebra:
    return make_lie_algebra(domain, n, {})


# --- subspaces and series -----------------------------------------------------

def _require_field(g):
    if not g.domain.is_field:
        raise NotAField("this operation needs a field; use restrict_scalars() first")


def _field_algebra(g):
    return g if g.domain.is_field else g.restrict_scalars()


def span(g, vectors) -> Subspace:
    return Subspace(g.domain, g.dim, [_as_vector(g.domain, v) for v in vectors])


def whole(g) -> Subspace:
    return span(g, [g.basis_vector(i) for i in range(g.dim)])


def bracket_span(g, U: Subspace, V: Subspace) -> Subspace:
    """``[U, V]`` as a subspace."""
    vs = []
    for u in U.sparse_basis():
        for v in V.sparse_basis():
            w = g.bracket(u, v)
            if w:
                vs.append(w)
    return Subspace(g.domain, g.dim, vs)


def center(g) -> Subspace:
    g = _field_algebra(g)
    F, n = g.domain, g.dim
    # v central iff sum_i v_i c_{ij}^k = 0 for all j, k
    rows = {}
    for i in range(n):
        for j in range(n):
            for k, c in g.bracket_basis(i, j):
                rows.setdefault((j, k), {})[i] = c
    return Subspace(F, n, kernel_of_columns(F, n, rows.values()))


@dataclass
class SeriesReport:
    kind: str
    terms: list
    dims: list
    nilpotent: bool
    solvable: bool
    metabelian: bool
    nilpotency_length: int | None
    solvability_length: int | None
    center_by_metabelian: bool = False
    lower_central: list = dc_field(default_factory=list, repr=False)
    derived: list = dc_field(default_factory=list, repr=False)


def lower_central_series(g) -> list:
    """``[g^(1), g^(2), ...]`` stopping at zero or at the first repeated term.

    Later terms equal the last one listed.
    """
    g = _field_algebra(g)
    terms = [whole(g)]
    G = terms[0]
    while terms[-1].rank:
        nxt = bracket_span(g, G, terms[-1])
        if nxt.rank == terms[-1].rank:
            break
        terms.append(nxt)
    return terms


def _term(terms, i):
    return terms[i] if i < len(terms) else terms[-1]


def derived_series(g) -> list:
    """``[D^0, D^1, ...]`` ending with the first repeated or zero term."""
    g = _field_algebra(g)
    terms = [whole(g)]
    while terms[-1].rank:
        nxt = bracket_span(g, terms[-1], terms[-1])
        if nxt.rank == terms[-1].rank:
            break
        terms.append(nxt)
    return terms


def series(g, kind: str = "lower_central") -> SeriesReport:
    if kind not in ("lower_central", "derived"):
        raise ValueError("kind must be 'lower_central' or 'derived'")
    h = _field_algebra(g)
    lcs = lower_central_series(h)
    der = derived_series(h)
    nilpotent = lcs[-1].rank == 0
    # g^(k+1) = 0 with lcs[k] = g^(k+1)
    nil_len = (len(lcs) - 1) if nilpotent else None
    solvable = der[-1].rank == 0
    sol_len = (len(der) - 1) if solvable else None
    metabelian = solvable and sol_len <= 2
    cbm = bracket_span(h, whole(h), _term(der, 2)).rank == 0
    terms = lcs if kind == "lower_central" else der
    return SeriesReport(kind, terms, [t.rank for t in terms], nilpotent, solvable,
                        metabelian, nil_len, sol_len, cbm, lcs, der)


def lower_central_term(g, i: int) -> Subspace:
    """``g^(i)`` for ``i >= 1`` (``g^(1) = g``)."""
    return _term(lower_central_series(g), i - 1)


# --- constructions -------------------------------------------------------------

def direct_product(g1: LieAlgebra, g2: LieAlgebra) -> LieAlgebra:
    if g1.domain != g2.domain:
        raise DomainMismatch("factors live over different domains")
    n1 = g1.dim
    br = dict(g1.structure_constants)
    for (i, j), v in g2.structure_constants.items():
        br[(i + n1, j + n1)] = {k + n1: c for k, c in v.items()}
    names = list(g1.names) + list(g2.names)
    if len(set(names)) != len(names):
        names = [f"{nm}_1" for nm in g1.names] + [f"{nm}_2" for nm in g2.names]
    gr = None
    if g1.grading is not None and g2.grading is not None:
        if g1.grading.group != g2.grading.group:
            raise GradingGroupMismatch("factors are graded by different groups")
        gr = Grading(g1.grading.free_rank, g1.grading.torsion,
                     g1.grading.weights + g2.grading.weights)
    return LieAlgebra(g1.domain, n1 + g2.dim, br, names, gr)


def quotient_map(g, generators):
    """Quotient by the ideal spanned by ``generators``.

    Returns ``(h, P)`` where ``P[c]`` is the image of ``e_c`` in ``h`` as a
    sparse dict.  The basis of ``h`` is the image of the lex-first complement:
    the ``e_c`` with ``c`` not a pivot column of the ideal's echelon basis.
    """
    g = _field_algebra(g)
    F, n = g.domain, g.dim
    I = span(g, generators)
    for i in range(n):
        for v in I.sparse_basis():
            w = g.bracket(g.basis_vector(i), v)
            if w and not I.contains(w):
                raise NotAnIdeal((i, v))
    pivots = set(I.pivots)
    comp = [c for c in range(n) if c not in pivots]
    pos = {c: a for a, c in enumerate(comp)}

    def project(v):
        return {pos[k]: x for k, x in I.reduce(v).items()}

    br = {}
    for a, b in itertools.combinations(range(len(comp)), 2):
        w = project(g.bracket(g.basis_vector(comp[a]), g.basis_vector(comp[b])))
        if w:
            br[(a, b)] = w
    gr = None
    if g.grading is not None:
        homogeneous = all(len({g.grading.weights[k] for k in v}) == 1 for v in I.sparse_basis())
        if homogeneous:
            gr = Grading(g.grading.free_rank, g.grading.torsion,
                         tuple(g.grading.weights[c] for c in comp))
    h = LieAlgebra(F, len(comp), br, [g.names[c] for c in comp], gr)
    P = [project(g.basis_vector(c)) for c in range(n)]
    return h, P


def quotient_by_ideal(g, generators) -> LieAlgebra:
    return quotient_map(g, generators)[0]


def subalgebra(g, indices) -> LieAlgebra:
    """Subalgebra spanned by the basis vectors ``e_i`` for ``i`` in ``indices``."""
    idx = sorted(indices)
    pos = {c: a for a, c in enumerate(idx)}
    br = {}
    for a, b in itertools.combinations(range(len(idx)), 2):
        vec = g.bracket_basis(idx[a], idx[b])
        out = {}
        for k, c in vec:
            if k not in pos:
                raise ValueError("the chosen basis vectors do not span a subalgebra")
            out[pos[k]] = c
        if out:
            br[(a, b)] = out
    gr = None
    if g.grading is not None:
        gr = Grading(g.grading.free_rank, g.grading.torsion,
                     tuple(g.grading.weights[i] for i in idx))
    return LieAlgebra(g.domain, len(idx), br, [g.names[i] for i in idx], gr)


def current_algebra(A, l: LieAlgebra) -> LieAlgebra:
    """``A (x) l`` with ``[a x, b y] = ab [x, y]``; basis ``a_m * x_i`` at ``m*n + i``."""
    if not l.domain.is_field:
        raise NotAField("the Lie algebra must be defined over a field")
    if A.is_field:
        if A != l.domain:
            raise BaseFieldMismatch("A and l have different fields")
        return l
    if A.base != l.domain:
        raise BaseFieldMismatch("A and l have different base fields")
    F, d, n = A.base, A.dim, l.dim
    br = {}
    for m, p in itertools.product(range(d), repeat=2):
        prod = A.mult[m][p]
        if all(F.is_zero(x) for x in prod):
            continue
        for i, j in itertools.product(range(n), repeat=2):
            a, b = m * n + i, p * n + j
            if a >= b:
                continue
            vec = l.bracket_basis(i, j)
            out = {}
            for q, x in enumerate(prod):
                if F.is_zero(x):
                    continue
                for k, c in vec:
                    key = q * n + k
                    y = F.add(out.get(key, F.zero), F.mul(x, c))
                    if F.is_zero(y):
                        out.pop(key, None)
                    else:
                        out[key] = y
            if out:
                br[(a, b)] = out
    names = []
    for an in A.names:
        for nm in l.names:
            names.append(nm if an == "1" else f"{an}*{nm}")
    gr = None
    if l.grading is not None:
        gr = Grading(l.grading.free_rank, l.grading.torsion, l.grading.weights * d)
    return LieAlgebra(F, d * n, br, names, gr)


def coadjoint_double(g: LieAlgebra) -> LieAlgebra:
    """``g`` semidirect its coadjoint module ``g*``; ``g*`` has the dual basis.

    ``(x . xi)(y) = -xi([x, y])``, graded with ``g`` in degree 0 and ``g*`` in 1.
    """
    _require_field(g)
    F, n = g.domain, g.dim
    br = dict(g.structure_constants)
    for i in range(n):
        for k in range(n):
            for j, c in g.bracket_basis(i, k):
                # [e_i, phi_j] has phi_k coefficient -c_{ik}^j
                key = (i, n + j)
                v = br.setdefault(key, {})
                y = F.sub(v.get(n + k, F.zero), c)
                if F.is_zero(y):
                    v.pop(n + k, None)
                else:
                    v[n + k] = y
    br = {k: v for k, v in br.items() if v}
    names = list(g.names) + [f"{nm}*" for nm in g.names]
    gr = Grading(1, (), tuple((0,) for _ in range(n)) + tuple((1,) for _ in range(n)))
    return make_lie_algebra(F, 2 * n, br, names, gr)


def _form_matrix(form):
    return form.matrix if hasattr(form, "matrix") else form


def double_extension(h: LieAlgebra, form, D, names=("e", "f")):
    """Double extension of a quadratic algebra ``(h, form)`` by a skew derivation.

    ``D[k][i]`` is the ``e_k`` coefficient of ``D(e_i)``.  The result has basis
    ``(e, h_0, ..., h_{n-1}, f)`` with ``[e, x] = Dx``,
    ``[x, y] = [x, y]_h + <Dx, y> f``, ``f`` central, ``<e, f> = 1``.
    Returns ``(algebra, form)``.
    """
    from .koszul import BilinearForm

    _require_field(h)
    F, n = h.domain, h.dim
    Bm = [[F.convert(x) for x in r] for r in _form_matrix(form)]
    Dm = [[F.convert(x) for x in r] for r in D]
    B = BilinearForm(F, Bm)
    if not B.is_nondegenerate():
        raise FormDegenerate("the form on h is degenerate")
    if not B.is_invariant(h):
        raise FormNotInvariant("the form on h is not invariant")

    def Dv(v):
        out = {}
        for i, a in v.items():
            for k in range(n):
                if not F.is_zero(Dm[k][i]):
                    _axpy(F, out, F.mul(a, Dm[k][i]), {k: F.one})
        return out

    for i in range(n):
        for j in range(n):
            ei, ej = h.basis_vector(i), h.basis_vector(j)
            lhs = Dv(h.bracket(ei, ej))
            rhs = h.bracket(Dv(ei), ej)
            _axpy(F, rhs, F.one, h.bracket(ei, Dv(ej)))
            _axpy(F, lhs, F.neg(F.one), rhs)
            if lhs:
                raise NotADerivation(f"D fails the Leibniz rule on ({i}, {j})")
            s = F.add(B(Dv(ei), ej), B(ei, Dv(ej)))
            if not F.is_zero(s):
                raise NotSkew(f"<D e_{i}, e_{j}> + <e_{i}, D e_{j}> != 0")
    N = n + 2
    br = {}
    for i in range(n):
        img = {k + 1: c for k, c in Dv(h.basis_vector(i)).items()}
        if img:
            br[(0, i + 1)] = img
    for i, j in itertools.combinations(range(n), 2):
        out = {k + 1: c for k, c in h.bracket_basis(i, j)}
        c = B(Dv(h.basis_vector(i)), h.basis_vector(j))
        if not F.is_zero(c):
            out[N - 1] = c
        if out:
            br[(i + 1, j + 1)] = out
    all_names = [names[0]] + list(h.names) + [names[1]]
    g = make_lie_algebra(F, N, br, all_names)
    M = [[F.zero] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            M[i + 1][j + 1] = Bm[i][j]
    M[0][N - 1] = M[N - 1][0] = F.one
    G = BilinearForm(F, M)
    if not G.is_invariant(g):
        raise FormNotInvariant("double extension form is not invariant")
    return g, G


def derivation_algebra(g) -> list:
    """Basis of Der(g) as ``n x n`` matrices ``D[k][i]`` (``e_k`` coefficient of ``D e_i``)."""
    _require_field(g)
    F, n = g.domain, g.dim
    rows = []
    var = lambda k, i: k * n + i  # noqa: E731
    for i, j in itertools.combinations(range(n), 2):
        eq = {}
        # D[e_i, e_j]
        for k, c in g.bracket_basis(i, j):
            for m in range(n):
                key = (m, var(m, k))
                eq[key] = F.add(eq.get(key, F.zero), c)
        # -[D e_i, e_j] - [e_i, D e_j]
        for k in range(n):
            for m, c in g.bracket_basis(k, j):
                key = (m, var(k, i))
                eq[key] = F.sub(eq.get(key, F.zero), c)
            for m, c in g.bracket_basis(i, k):
                key = (m, var(k, j))
                eq[key] = F.sub(eq.get(key, F.zero), c)
        by_m = {}
        for (m, u), c in eq.items():
            if not F.is_zero(c):
                by_m.setdefault(m, {})[u] = c
        rows.extend(by_m.values())
    basis = kernel_of_columns(F, n * n, rows)
    return [[[v[var(k, i)] for i in range(n)] for k in range(n)] for v in basis]


@dataclass
class NilpotencyVerdict:
    """Outcome of the Engel flag computation on Der(g).

    ``flag`` lists the dimensions of the invariant flag built so far; when
    ``all_nilpotent`` is False the flag stalls at ``flag[-1] < dim``.
    """

    all_nilpotent: bool
    flag: list
    derivation_dim: int


def all_derivations_nilpotent(g) -> NilpotencyVerdict:
    """Decide whether every derivation of ``g`` is nilpotent.

    Builds ``0 = V_0 < V_1 < ...`` with ``V_{i+1} = {v : D v in V_i for all D}``;
    all derivations are nilpotent exactly when the flag reaches ``g``.
    """
    _require_field(g)
    F, n = g.domain, g.dim
    ders = derivation_algebra(g)
    V = Subspace(F, n)
    flag = [0]
    while V.rank < n:
        from .linalg import QuotientPresentation
        Q = QuotientPresentation(F, n, V.sparse_basis())
        rows = {}
        for t, Dm in enumerate(ders):
            for c in range(n):
                img = {k: Dm[k][c] for k in range(n) if not F.is_zero(Dm[k][c])}
                for q, x in Q.sparse_coordinates(img).items():
                    rows.setdefault((t, q), {})[c] = x
        W = Subspace(F, n, kernel_of_columns(F, n, rows.values()))
        if W.rank == V.rank:
            return NilpotencyVerdict(False, flag, len(ders))
        V = W
        flag.append(V.rank)
    return NilpotencyVerdict(True, flag, len(ders))
