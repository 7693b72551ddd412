"""Chevalley-Eilenberg chains, boundaries and Betti numbers.

The basis of ``Lambda^k g`` is the list of increasing ``k``-tuples of basis
indices in lexicographic order.  A wedge of an arbitrary tuple is brought to
that basis by sorting, picking up the sign of the permutation; a repeated
index gives zero.  The boundary is

    d(x_1 ^ ... ^ x_k) = sum_{i<j} (-1)^(i+j) [x_i, x_j] ^ x_1 ^ ..^x_i^..^x_j^.. ^ x_k
"""
from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import comb

from .errors import DegreeMismatch, NotACycle, NotGraded
from .linalg import (ExactMatrix, Subspace, check_size, kernel_of_columns,
                     rank_of_vectors, restrict_columns, restrict_vector)


@lru_cache(maxsize=None)
def exterior_basis(n: int, k: int) -> tuple:
    return tuple(itertools.combinations(range(n), k))


@lru_cache(maxsize=None)
def exterior_index(n: int, k: int) -> dict:
    return {s: i for i, s in enumerate(exterior_basis(n, k))}


def wedge_sign(indices):
    """``(sign, sorted_tuple)`` for ``e_{i1} ^ ... ^ e_{ik}``; ``(0, None)`` on repeats."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    # insertion sort counting transpositions
    for a in range(1, len(idx)):
        b = a
        while b > 0 and idx[b - 1] > idx[b]:
            idx[b - 1], idx[b] = idx[b], idx[b - 1]
            sign = -sign
            b -= 1
    return sign, tuple(idx)


class ChainVector:
    """An element of ``Lambda^k g`` with exact coefficients (sparse storage)."""

    __slots__ = ("domain", "n", "degree", "coeffs")

    def __init__(self, domain, n: int, degree: int, coeffs=None):
        self.domain = domain
        self.n = n
        self.degree = degree
        out = {}
        for s, c in (coeffs or {}).items():
            s = tuple(s)
            if len(s) != degree:
                raise DegreeMismatch(f"term {s} does not have degree {degree}")
            c = domain.convert(c)
            if not domain.is_zero(c):
                out[s] = c
        self.coeffs = dict(sorted(out.items()))

    @classmethod
    def zero(cls, g, degree: int):
        return cls(g.domain, g.dim, degree)

    @classmethod
    def from_terms(cls, g, terms, degree=None):
        """Build from ``[(coefficient, (i1, ..., ik)), ...]``.

        Indices may be ints or basis names; the tuple need not be sorted.
        A dict ``{tuple: coefficient}`` is accepted too.
        """
        D = g.domain
        items = [(c, s) for s, c in terms.items()] if isinstance(terms, dict) else list(terms)
        if degree is None:
            if not items:
                raise DegreeMismatch("cannot infer the degree of an empty chain")
            degree = len(items[0][1])
        acc = {}
        for c, s in items:
            s = tuple(g.index(x) if isinstance(x, str) else x for x in s)
            if len(s) != degree:
                raise DegreeMismatch(f"term {s} does not have degree {degree}")
            sign, key = wedge_sign(s)
            if sign == 0:
                continue
            c = D.convert(c)
            if sign < 0:
                c = D.neg(c)
            acc[key] = D.add(acc.get(key, D.zero), c)
        return cls(D, g.dim, degree, acc)

    def coefficient(self, s):
        return self.coeffs.get(tuple(s), self.domain.zero)

    def to_list(self) -> list:
        idx = exterior_index(self.n, self.degree)
        out = [self.domain.zero] * len(idx)
        for s, c in self.coeffs.items():
            out[idx[s]] = c
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other):
        if (self.n, self.degree) != (other.n, other.degree) or self.domain != other.domain:
            raise DegreeMismatch("chains live in different spaces")

    def __add__(self, other):
        self._check(other)
        D = self.domain
        acc = dict(self.coeffs)
        for s, c in other.coeffs.items():
            acc[s] = D.add(acc.get(s, D.zero), c)
        return ChainVector(D, self.n, self.degree, acc)

    def __neg__(self):
        D = self.domain
        return ChainVector(D, self.n, self.degree, {s: D.neg(c) for s, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        D = self.domain
        a = D.convert(a)
        return ChainVector(D, self.n, self.degree, {s: D.mul(a, c) for s, c in self.coeffs.items()})

    def __rmul__(self, a):
        return self.scale(a)

    def __eq__(self, other):
        return (isinstance(other, ChainVector) and self.degree == other.degree
                and self.n == other.n and self.coeffs == other.coeffs)

    def weight(self, g):
        """Weight of a homogeneous chain (None if inhomogeneous or zero)."""
        if g.grading is None:
            raise NotGraded("algebra carries no grading")
        ws = {g.grading.total(s) for s in self.coeffs}
        return ws.pop() if len(ws) == 1 else None

    def format(self, g=None) -> str:
        if not self.coeffs:
            return "0"
        D = self.domain
        parts = []
        for s, c in self.coeffs.items():
            names = [g.names[i] for i in s] if g is not None else [f"e{i + 1}" for i in s]
            parts.append(f"{D.format(c)}*" + "^".join(names))
        return " + ".join(parts)

    def __repr__(self):
        return f"ChainVector(degree={self.degree}, {self.format()})"


def _boundary_of_basis(g, s) -> dict:
    D = g.domain
    out = {}
    k = len(s)
    for p in range(k):
        for q in range(p + 1, k):
            vec = g.bracket_basis(s[p], s[q])
            if not vec:
                continue
            negative = (p + q) % 2 == 1
            rest = s[:p] + s[p + 1:q] + s[q + 1:]
            for m, c in vec:
                pos = bisect_left(rest, m)
                if pos < len(rest) and rest[pos] == m:
                    continue
                key = rest[:pos] + (m,) + rest[pos:]
                if negative ^ (pos % 2 == 1):
                    c = D.neg(c)
                y = D.add(out.get(key, D.zero), c)
                if D.is_zero(y):
                    out.pop(key, None)
                else:
                    out[key] = y
    return out


def apply_boundary(g, chain: ChainVector) -> ChainVector:
    if chain.degree < 1:
        raise DegreeMismatch("boundary needs a chain of degree at least 1")
    if chain.n != g.dim:
        raise DegreeMismatch("chain does not belong to this algebra")
    D = g.domain
    acc = {}
    for s, a in chain.coeffs.items():
        for key, c in _boundary_of_basis(g, s).items():
            acc[key] = D.add(acc.get(key, D.zero), D.mul(a, c))
    return ChainVector(D, g.dim, chain.degree - 1, acc)


def weight_blocks(g, k: int) -> dict:
    """``{weight: [k-subsets of that weight]}`` in lex order within each block."""
    if g.grading is None:
        raise NotGraded("algebra carries no grading")
    blocks = {}
    for s in exterior_basis(g.dim, k):
        blocks.setdefault(g.grading.total(s), []).append(s)
    return blocks


def chain_basis(g, k: int, weight=None) -> list:
    if weight is None:
        return list(exterior_basis(g.dim, k))
    if g.grading is None:
        raise NotGraded("weight given but algebra carries no grading")
    w = g.grading.normalize(weight)
    return weight_blocks(g, k).get(w, [])


def boundary_columns(g, k: int, weight=None, restrict: bool = True):
    """Columns of ``d_k`` on the (weight-restricted) basis.

    Returns ``(source_basis, target_basis, columns)``; column ``j`` is a sparse
    dict over target positions.  With ``restrict`` the columns are flattened
    to base-field coordinates (target position ``r`` becomes ``r*d + l``).
    """
    src = chain_basis(g, k, weight)
    tgt = chain_basis(g, k - 1, weight) if k >= 1 else []
    pos = {s: i for i, s in enumerate(tgt)}
    cols = []
    for s in src:
        b = _boundary_of_basis(g, s) if k >= 1 else {}
        cols.append({pos[t]: c for t, c in b.items()})
    if restrict:
        cols = restrict_columns(g.domain, cols)
    return src, tgt, cols


def boundary_matrix(g, k: int, weight=None) -> ExactMatrix:
    """Matrix of ``d_k : Lambda^k -> Lambda^(k-1)`` over the base field."""
    if not 0 <= k <= g.dim:
        raise DegreeMismatch(f"degree {k} outside 0..{g.dim}")
    src, tgt, cols = boundary_columns(g, k, weight)
    d = g.domain.dim
    check_size(len(tgt) * d, len(src) * d)
    return ExactMatrix.from_columns(g.domain.base, len(tgt) * d, cols)


def boundary_rank(g, k: int, weight=None) -> int:
    if k < 1 or k > g.dim:
        return 0
    src, tgt, cols = boundary_columns(g, k, weight)
    d = g.domain.dim
    check_size(len(tgt) * d, len(src) * d)
    return rank_of_vectors(g.domain.base, cols)


def cycle_space(g, k: int, weight=None):
    """``(basis, cycles)``: cycles are sparse base-field vectors over ``basis``."""
    src, tgt, cols = boundary_columns(g, k, weight)
    d = g.domain.dim
    F = g.domain.base
    if k == 0 or not tgt:
        vecs = [{i: F.one} for i in range(len(src) * d)]
        return src, vecs
    rows = {}
    for j, col in enumerate(cols):
        for r, x in col.items():
            rows.setdefault(r, {})[j] = x
    ker = kernel_of_columns(F, len(src) * d, rows.values())
    return src, [{i: x for i, x in enumerate(v) if not F.is_zero(x)} for v in ker]


def boundary_space(g, k: int, weight=None):
    """``(basis, B_k)`` with ``B_k`` a Subspace of the flattened chain space."""
    basis = chain_basis(g, k, weight)
    d = g.domain.dim
    if k + 1 > g.dim:
        return basis, Subspace(g.domain.base, len(basis) * d)
    _, tgt, cols = boundary_columns(g, k + 1, weight)
    return tgt, Subspace(g.domain.base, len(tgt) * d, cols)


def flatten_chain(g, chain: ChainVector, basis) -> dict:
    pos = {s: i for i, s in enumerate(basis)}
    v = {}
    for s, c in chain.coeffs.items():
        if s not in pos:
            raise ValueError(f"chain term {s} is outside the chosen basis block")
        v[pos[s]] = c
    return restrict_vector(g.domain, v)


@dataclass
class DegreeData:
    degree: int
    chain_dim: int
    boundary_rank: int
    cycle_dim: int
    boundary_dim: int
    betti: int


@dataclass
class HomologyReport:
    degrees: list
    weight: object = None
    per_weight: dict = dc_field(default_factory=dict)

    @property
    def betti(self) -> list:
        return [d.betti for d in self.degrees]

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d.degree * d.betti for d in self.degrees)


def _ranks(g, top: int, weight=None) -> dict:
    return {k: boundary_rank(g, k, weight) for k in range(1, top + 1)}


def betti_numbers(g, up_to=None, weight=None) -> HomologyReport:
    """Betti numbers ``b_0..b_up_to`` over the base field.

    With ``weight`` only the homogeneous component of that weight is used.
    For a graded algebra without ``weight`` every weight block is computed
    separately and summed; the blocks are kept in ``per_weight``.
    """
    n = g.dim
    up_to = n if up_to is None else min(up_to, n)
    d = g.domain.dim
    if weight is not None:
        if g.grading is None:
            raise NotGraded("weight given but algebra carries no grading")
        weight = g.grading.normalize(weight)
        dims = {k: len(chain_basis(g, k, weight)) * d for k in range(up_to + 2)}
        ranks = _ranks(g, min(up_to + 1, n), weight)
        return HomologyReport(_assemble(dims, ranks, up_to), weight)
    if g.grading is not None:
        per = {}
        total_dims = {k: 0 for k in range(up_to + 2)}
        total_ranks = {k: 0 for k in range(1, min(up_to + 1, n) + 1)}
        weights = set()
        for k in range(up_to + 2):
            if k <= n:
                weights |= set(weight_blocks(g, k))
        for w in sorted(weights):
            dims = {k: len(chain_basis(g, k, w)) * d for k in range(up_to + 2)}
            ranks = _ranks(g, min(up_to + 1, n), w)
            per[w] = [x.betti for x in _assemble(dims, ranks, up_to)]
            for k in total_dims:
                total_dims[k] += dims[k]
            for k in total_ranks:
                total_ranks[k] += ranks[k]
        return HomologyReport(_assemble(total_dims, total_ranks, up_to), None,
                              {w: b for w, b in per.items() if any(b)})
    dims = {k: comb(n, k) * d for k in range(up_to + 2)}
    ranks = _ranks(g, min(up_to + 1, n))
    return HomologyReport(_assemble(dims, ranks, up_to))


def _assemble(dims, ranks, up_to):
    out = []
    for k in range(up_to + 1):
        rk = ranks.get(k, 0)
        rk1 = ranks.get(k + 1, 0)
        z = dims[k] - rk
        out.append(DegreeData(k, dims[k], rk, z, rk1, z - rk1))
    return out


def homology_class_nonzero(g, cycle: ChainVector, weight=None) -> bool:
    """True iff the cycle is not a boundary."""
    if cycle.degree >= 1 and not apply_boundary(g, cycle).is_zero():
        raise NotACycle("the chain is not a cycle")
    if cycle.is_zero():
        return False
    if weight is None and g.grading is not None:
        weight = cycle.weight(g)
    elif weight is not None:
        if g.grading is None:
            raise NotGraded("weight given but algebra carries no grading")
        weight = g.grading.normalize(weight)
        if cycle.weight(g) != weight:
            raise ValueError("cycle is not homogeneous of the requested weight")
    basis, B = boundary_space(g, cycle.degree, weight)
    return not B.contains(flatten_chain(g, cycle, basis))


def wedge_vectors(domain, vectors) -> dict:
    """``v_1 ^ ... ^ v_k`` for sparse vectors, as ``{sorted tuple: coefficient}``."""
    cur = {(): domain.one}
    for v in vectors:
        nxt = {}
        for s, a in cur.items():
            for i, x in v.items():
                pos = bisect_left(s, i)
                if pos < len(s) and s[pos] == i:
                    continue
                key = s[:pos] + (i,) + s[pos:]
                c = domain.mul(a, x)
                if (len(s) - pos) % 2:
                    c = domain.neg(c)
                y = domain.add(nxt.get(key, domain.zero), c)
                if domain.is_zero(y):
                    nxt.pop(key, None)
                else:
                    nxt[key] = y
        cur = nxt
    return cur


def push_chain(h, images, chain: ChainVector) -> ChainVector:
    """Image of a chain under the map sending ``e_c`` to ``images[c]`` in ``h``."""
    D = h.domain
    acc = {}
    for s, a in chain.coeffs.items():
        for key, c in wedge_vectors(D, [images[i] for i in s]).items():
            acc[key] = D.add(acc.get(key, D.zero), D.mul(a, c))
    return ChainVector(D, h.dim, chain.degree, acc)
