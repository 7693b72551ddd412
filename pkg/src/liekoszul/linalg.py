"""Exact linear algebra over Q and F_p.

Public matrices are dense (:class:`ExactMatrix`); elimination internally walks
sparse rows so that the many zeros of boundary matrices cost nothing.

Over Q rows are scaled to primitive integer vectors and eliminated without
division (each step is ``a*row - b*pivot_row`` followed by removal of the
content), which keeps intermediate growth in check.  Over F_p pivot rows are
normalised to a leading 1 and reduced modulo p.  The pivot of a row is always
its first nonzero column, so every echelon form and every basis reported here
is deterministic.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DimensionMismatch, TooLarge

MAX_ENTRIES = 5_000_000


def set_size_limit(n: int) -> int:
    """Change the dense-size guard; returns the previous limit."""
    global MAX_ENTRIES
    old, MAX_ENTRIES = MAX_ENTRIES, int(n)
    return old


def check_size(rows: int, cols: int) -> None:
    if rows * cols > MAX_ENTRIES:
        raise TooLarge(f"{rows}x{cols} matrix exceeds the limit of {MAX_ENTRIES} entries")


def sparse_vector(field, v) -> dict:
    """Nonzero entries of ``v`` (list, tuple or dict) as ``{index: scalar}``."""
    items = v.items() if isinstance(v, dict) else enumerate(v)
    out = {}
    for k, x in items:
        x = field.convert(x)
        if not field.is_zero(x):
            out[k] = x
    return out


def dense_vector(field, v: dict, n: int) -> list:
    out = [field.zero] * n
    for k, x in v.items():
        out[k] = x
    return out


class ExactMatrix:
    """Dense matrix with exact entries from a base field."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, rows: int, cols: int, entries=None):
        check_size(rows, cols)
        self.field = field
        self.rows, self.cols = rows, cols
        if entries is None:
            self.entries = [[field.zero] * cols for _ in range(rows)]
        else:
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise DimensionMismatch("entry table does not match the declared shape")
            self.entries = [[field.convert(x) for x in r] for r in entries]

    @classmethod
    def from_rows(cls, field, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, field, nrows: int, columns):
        """Build from a list of columns, each a dense list or a sparse dict."""
        M = cls(field, nrows, len(columns))
        for j, col in enumerate(columns):
            items = col.items() if isinstance(col, dict) else enumerate(col)
            for i, x in items:
                if not 0 <= i < nrows:
                    raise DimensionMismatch(f"row index {i} out of range")
                M.entries[i][j] = field.convert(x)
        return M

    @classmethod
    def identity(cls, field, n: int):
        M = cls(field, n, n)
        for i in range(n):
            M.entries[i][i] = field.one
        return M

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return list(self.entries[i])

    def column(self, j):
        return [r[j] for r in self.entries]

    def transpose(self):
        T = ExactMatrix(self.field, self.cols, self.rows)
        for i, r in enumerate(self.entries):
            for j, x in enumerate(r):
                T.entries[j][i] = x
        return T

    def sparse_rows(self):
        F = self.field
        return [{j: x for j, x in enumerate(r) if not F.is_zero(x)} for r in self.entries]

    def is_zero(self) -> bool:
        F = self.field
        return all(F.is_zero(x) for r in self.entries for x in r)

    def apply(self, v):
        """Matrix times a column vector (list or dict); returns a list."""
        F = self.field
        v = sparse_vector(F, v)
        out = [F.zero] * self.rows
        for i, r in enumerate(self.entries):
            acc = F.zero
            for j, x in v.items():
                y = r[j]
                if not F.is_zero(y):
                    acc = F.add(acc, F.mul(x, y))
            out[i] = acc
        return out

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        F = self.field
        out = ExactMatrix(F, self.rows, other.cols)
        other_rows = other.sparse_rows()
        for i, r in enumerate(self.entries):
            acc = {}
            for k, x in enumerate(r):
                if F.is_zero(x):
                    continue
                for j, y in other_rows[k].items():
                    acc[j] = F.add(acc.get(j, F.zero), F.mul(x, y))
            for j, x in acc.items():
                out.entries[i][j] = x
        return out

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and self.field == other.field
                and self.shape == other.shape and self.entries == other.entries)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols} over {self.field.describe()})"


# --- elimination core -------------------------------------------------------

def _primitive(row: dict) -> dict:
    """Divide an integer row by its content; make the leading entry positive."""
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if row[min(row)] < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


def _integer_row(row: dict) -> dict:
    den = 1
    for v in row.values():
        d = v.denominator
        if den % d:
            den = den * d // gcd(den, d)
    return _primitive({k: int(v * den) for k, v in row.items()})


class _Echelon:
    """Incremental row echelon form; pivot of a row is its first nonzero column."""

    def __init__(self, field):
        self.field = field
        self.rational = field.characteristic == 0
        self.pivots = {}  # column -> row

    def _reduce(self, row: dict):
        pivots = self.pivots
        if self.rational:
            while row:
                c = min(row)
                prow = pivots.get(c)
                if prow is None:
                    return row, c
                a, b = prow[c], row[c]
                g = gcd(a, b)
                a, b = a // g, b // g
                new = {k: a * v for k, v in row.items()} if a != 1 else dict(row)
                for k, v in prow.items():
                    nv = new.get(k, 0) - b * v
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
                row = _primitive(new) if new else new
            return row, None
        p = self.field.p
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                return row, c
            b = row[c]
            new = dict(row)
            for k, v in prow.items():
                nv = (new.get(k, 0) - b * v) % p
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            row = new
        return row, None

    def add(self, row: dict) -> bool:
        """Insert a sparse row of field elements; True if it raised the rank."""
        if self.rational:
            row = {k: v for k, v in row.items() if v}
            if not row:
                return False
            row = _integer_row(row)
        else:
            p = self.field.p
            row = {k: v % p for k, v in row.items() if v % p}
            if not row:
                return False
        row, c = self._reduce(row)
        if c is None:
            return False
        if not self.rational:
            p = self.field.p
            inv = pow(row[c], -1, p)
            row = {k: v * inv % p for k, v in row.items()}
        self.pivots[c] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rref(self) -> dict:
        """Fully reduced rows with leading 1, as ``{pivot: {col: scalar}}``."""
        out = {}
        for c in sorted(self.pivots, reverse=True):
            prow = self.pivots[c]
            if self.rational:
                lead = prow[c]
                row = {k: Fraction(v, lead) for k, v in prow.items()}
                for k in [k for k in row if k != c and k in out]:
                    f = row[k]
                    for kk, vv in out[k].items():
                        nv = row.get(kk, 0) - f * vv
                        if nv:
                            row[kk] = nv
                        else:
                            row.pop(kk, None)
            else:
                p = self.field.p
                row = dict(prow)
                for k in [k for k in row if k != c and k in out]:
                    f = row[k]
                    for kk, vv in out[k].items():
                        nv = (row.get(kk, 0) - f * vv) % p
                        if nv:
                            row[kk] = nv
                        else:
                            row.pop(kk, None)
            out[c] = row
        return dict(sorted(out.items()))


def rank_of_vectors(field, vectors) -> int:
    """Dimension of the span of the given vectors (lists or sparse dicts)."""
    E = _Echelon(field)
    for v in vectors:
        E.add(v if isinstance(v, dict) else sparse_vector(field, v))
    return E.rank


def rank(M: ExactMatrix) -> int:
    return rank_of_vectors(M.field, M.sparse_rows())


def rank_nullspace(M: ExactMatrix):
    """Return ``(rank, basis)`` where ``basis`` spans the kernel of ``M``.

    The kernel basis has one vector per non-pivot column ``f`` of the reduced
    row echelon form: it is 1 at ``f``, 0 at the other free columns.
    """
    F = M.field
    E = _Echelon(F)
    for r in M.sparse_rows():
        E.add(r)
    R = E.rref()
    return E.rank, _kernel_from_rref(F, R, M.cols)


def _kernel_from_rref(F, R: dict, ncols: int):
    pivots = set(R)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = [F.zero] * ncols
        v[f] = F.one
        for c, row in R.items():
            x = row.get(f)
            if x is not None:
                v[c] = F.neg(x)
        basis.append(v)
    return basis


def nullspace(M: ExactMatrix):
    return rank_nullspace(M)[1]


def kernel_of_columns(field, ncols: int, rows) -> list:
    """Kernel basis of the matrix given by sparse ``rows`` with ``ncols`` columns."""
    E = _Echelon(field)
    for r in rows:
        E.add(r)
    return _kernel_from_rref(field, E.rref(), ncols)


def solve(M: ExactMatrix, b):
    """One solution ``x`` of ``M x = b`` as a list, or None if inconsistent."""
    F = M.field
    b = list(b) if not isinstance(b, dict) else dense_vector(F, b, M.rows)
    if len(b) != M.rows:
        raise DimensionMismatch("right-hand side has the wrong length")
    E = _Echelon(F)
    n = M.cols
    for r, rhs in zip(M.sparse_rows(), b):
        rhs = F.convert(rhs)
        row = dict(r)
        if not F.is_zero(rhs):
            row[n] = rhs
        E.add(row)
    R = E.rref()
    if n in R:
        return None
    x = [F.zero] * n
    for c, row in R.items():
        x[c] = row.get(n, F.zero)
    return x


def determinant(field, rows) -> object:
    """Determinant of a square matrix given as a list of rows."""
    n = len(rows)
    A = [[field.convert(x) for x in r] for r in rows]
    det = field.one
    for c in range(n):
        piv = next((r for r in range(c, n) if not field.is_zero(A[r][c])), None)
        if piv is None:
            return field.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = field.neg(det)
        det = field.mul(det, A[c][c])
        inv = field.inv(A[c][c])
        for r in range(c + 1, n):
            if field.is_zero(A[r][c]):
                continue
            f = field.mul(A[r][c], inv)
            A[r] = [field.sub(x, field.mul(f, y)) for x, y in zip(A[r], A[c])]
    return det


class Subspace:
    """Span of a set of vectors in ``field^dim`` kept in reduced echelon form."""

    def __init__(self, field, dim: int, generators=()):
        self.field = field
        self.dim = dim
        E = _Echelon(field)
        for v in generators:
            v = v if isinstance(v, dict) else sparse_vector(field, v)
            if v and max(v) >= dim:
                raise DimensionMismatch(f"generator index {max(v)} exceeds ambient dimension {dim}")
            E.add(v)
        self._rows = E.rref()
        self.pivots = tuple(self._rows)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def basis(self):
        """Reduced echelon basis as dense lists."""
        return [dense_vector(self.field, r, self.dim) for r in self._rows.values()]

    def sparse_basis(self):
        return [dict(r) for r in self._rows.values()]

    def reduce(self, v) -> dict:
        """Canonical representative of ``v`` modulo the subspace (sparse)."""
        F = self.field
        v = dict(v) if isinstance(v, dict) else sparse_vector(F, v)
        if v and max(v) >= self.dim:
            raise DimensionMismatch("vector does not live in the ambient space")
        for c, row in self._rows.items():
            x = v.get(c)
            if x is None:
                continue
            for k, y in row.items():
                nv = F.sub(v.get(k, F.zero), F.mul(x, y))
                if F.is_zero(nv):
                    v.pop(k, None)
                else:
                    v[k] = nv
        return v

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def __contains__(self, v):
        return self.contains(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.sparse_basis())

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.dim == other.dim
                and self.field == other.field and self._rows == other._rows)

    def __repr__(self):
        return f"Subspace(rank {self.rank} in dim {self.dim})"


class QuotientPresentation:
    """The quotient ``field^ambient_dim / span(generators)``.

    Canonical coordinates of a class are the entries of its reduced
    representative at the non-pivot columns.
    """

    def __init__(self, field, ambient_dim: int, generators=()):
        self.field = field
        self.ambient_dim = ambient_dim
        self.subspace = Subspace(field, ambient_dim, generators)
        pivots = set(self.subspace.pivots)
        self.free_columns = tuple(c for c in range(ambient_dim) if c not in pivots)
        self._free_index = {c: i for i, c in enumerate(self.free_columns)}

    @property
    def quotient_dim(self) -> int:
        return self.ambient_dim - self.subspace.rank

    @property
    def image_basis(self):
        return self.subspace.basis()

    def reduce(self, v) -> list:
        return dense_vector(self.field, self.subspace.reduce(v), self.ambient_dim)

    def coordinates(self, v) -> tuple:
        F = self.field
        out = [F.zero] * self.quotient_dim
        for k, x in self.subspace.reduce(v).items():
            out[self._free_index[k]] = x
        return tuple(out)

    def sparse_coordinates(self, v) -> dict:
        return {self._free_index[k]: x for k, x in self.subspace.reduce(v).items()}

    def contains(self, v) -> bool:
        """True when ``v`` lies in the subspace being quotiented out."""
        return self.subspace.contains(v)

    def __repr__(self):
        return f"QuotientPresentation(dim {self.quotient_dim} = {self.ambient_dim} - {self.subspace.rank})"


def quotient(field, ambient_dim: int, generators) -> QuotientPresentation:
    gens = list(generators)
    for g in gens:
        if not isinstance(g, dict) and len(g) != ambient_dim:
            raise DimensionMismatch(f"generator of length {len(g)} in ambient dimension {ambient_dim}")
    return QuotientPresentation(field, ambient_dim, gens)


def restrict_columns(domain, columns) -> list:
    """Restriction of scalars for sparse columns over ``domain``.

    Column ``j`` (a dict ``{row: a}``) of an A-linear map becomes the ``d``
    base-field columns ``j*d + m`` with entries ``(a e_m)_l`` at rows
    ``row*d + l``.  Over a field the columns are returned unchanged.
    """
    if domain.is_field:
        return columns
    F, d = domain.base, domain.dim
    out = []
    for col in columns:
        mats = {r: domain.mul_matrix(a) for r, a in col.items()}
        for m in range(d):
            new = {}
            for r, M in mats.items():
                for l in range(d):
                    x = M[l][m]
                    if not F.is_zero(x):
                        new[r * d + l] = x
            out.append(new)
    return out


def restrict_vector(domain, v) -> dict:
    """Flatten a sparse vector over ``domain`` to base-field coordinates."""
    if domain.is_field:
        return dict(v)
    F, d = domain.base, domain.dim
    out = {}
    for r, a in v.items():
        for l, x in enumerate(domain.coords(a)):
            if not F.is_zero(x):
                out[r * d + l] = x
    return out


def restrict_scalars(domain, matrix) -> ExactMatrix:
    """Base-field matrix of an A-linear map between free A-modules.

    ``matrix`` is a list of rows of domain elements (or an ExactMatrix when
    ``domain`` is a field, in which case it is returned as is).  A map of
    rank-``c`` to rank-``r`` free modules becomes an ``(r d) x (c d)`` matrix.
    """
    if domain.is_field:
        if isinstance(matrix, ExactMatrix):
            return matrix
        return ExactMatrix.from_rows(domain, matrix)
    rows = [list(r) for r in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    columns = []
    for j in range(ncols):
        col = {}
        for i in range(nrows):
            a = domain.convert(rows[i][j])
            if not domain.is_zero(a):
                col[i] = a
        columns.append(col)
    return ExactMatrix.from_columns(domain.base, nrows * domain.dim,
                                    restrict_columns(domain, columns))
