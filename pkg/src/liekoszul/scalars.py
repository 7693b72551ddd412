"""Exact coefficient domains.

Three kinds of domain are supported:

* ``Rationals``: elements are :class:`fractions.Fraction`;
* ``PrimeField(p)`` for an odd prime ``p``: elements are ints in ``range(p)``;
* ``CommAlgebra``: a finite-dimensional commutative unital algebra over one of
  the two fields above, given by structure constants; elements are tuples of
  base-field coordinates.

Every domain exposes the same small arithmetic protocol (``zero``, ``one``,
``add``, ``sub``, ``neg``, ``mul``, ``is_zero``, ``convert``, ``coords``) so
that the Lie algebra code can be written once.
"""
from __future__ import annotations

import itertools
import re
from fractions import Fraction

from .errors import (EvenCharacteristic, NoUnit, NonAssociative,
                     NonCommutative, NotAField, NotPrime)

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text) -> Fraction:
    """Parse an integer or ``a/b`` literal into a Fraction."""
    if isinstance(text, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    text = str(text).strip()
    if not _RATIONAL.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Rationals:
    """The field of rational numbers."""

    characteristic = 0
    dim = 1
    is_field = True
    zero = Fraction(0)
    one = Fraction(1)

    @property
    def base(self):
        return self

    def convert(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        return parse_rational(x)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def is_zero(self, a) -> bool:
        return a == 0

    def coords(self, a):
        return (a,)

    def from_coords(self, coords):
        (a,) = coords
        return a

    def mul_matrix(self, a):
        return [[a]]

    def format(self, a) -> str:
        return str(a)

    def describe(self) -> str:
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"


class PrimeField:
    """The field with ``p`` elements, ``p`` an odd prime."""

    dim = 1
    is_field = True

    def __init__(self, p: int):
        p = int(p)
        if p == 2:
            raise EvenCharacteristic("characteristic 2 is not supported")
        if not _is_prime(p):
            raise NotPrime(f"{p} is not a prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    @property
    def base(self):
        return self

    def convert(self, x) -> int:
        if isinstance(x, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(x, int):
            return x % self.p
        q = parse_rational(x)
        if q.denominator % self.p == 0:
            raise ZeroDivisionError(f"{q} has no image in F_{self.p}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def coords(self, a):
        return (a,)

    def from_coords(self, coords):
        (a,) = coords
        return a

    def mul_matrix(self, a):
        return [[a]]

    def format(self, a) -> str:
        # symmetric representative, so that -1 prints as -1
        a %= self.p
        return str(a - self.p if a > self.p // 2 else a)

    def describe(self) -> str:
        return f"F {self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


QQ = Rationals()


class CommAlgebra:
    """Commutative associative unital algebra with basis ``e_0..e_{d-1}``.

    ``mult[i][j]`` is the coordinate vector of ``e_i * e_j``; ``unit`` is the
    coordinate vector of ``1``.  The axioms are checked exhaustively.
    """

    is_field = False

    def __init__(self, base, mult, unit, names=None, label=None):
        if not getattr(base, "is_field", False):
            raise NotAField("the base of a CommAlgebra must be Q or F_p")
        self.base = base
        d = len(mult)
        if d < 1:
            raise ValueError("a CommAlgebra needs at least one basis vector")
        if any(len(mult[i]) != d or any(len(v) != d for v in mult[i]) for i in range(d)):
            raise ValueError("multiplication table has the wrong shape")
        self.dim = d
        self.characteristic = base.characteristic
        self.mult = tuple(
            tuple(tuple(base.convert(c) for c in mult[i][j]) for j in range(d))
            for i in range(d))
        self.unit = tuple(base.convert(c) for c in unit)
        if len(self.unit) != d:
            raise ValueError("unit vector has the wrong length")
        self.names = tuple(names) if names else tuple(f"a{i}" for i in range(d))
        self.label = label
        self.zero = tuple(base.zero for _ in range(d))
        self.one = self.unit
        self._check_axioms()
        self._basis_matrices = [self._left_matrix(self._basis(i)) for i in range(d)]

    def _basis(self, i):
        return tuple(self.base.one if k == i else self.base.zero for k in range(self.dim))

    def _check_axioms(self):
        d, F = self.dim, self.base
        for i, j in itertools.combinations(range(d), 2):
            if self.mult[i][j] != self.mult[j][i]:
                raise NonCommutative(f"e{i}*e{j} != e{j}*e{i}")
        for i, j, k in itertools.product(range(d), repeat=3):
            left = self.mul(self.mult[i][j], self._basis(k))
            right = self.mul(self._basis(i), self.mult[j][k])
            if any(not F.is_zero(F.sub(x, y)) for x, y in zip(left, right)):
                raise NonAssociative(f"(e{i}e{j})e{k} != e{i}(e{j}e{k})")
        for i in range(d):
            if self.mul(self.unit, self._basis(i)) != self._basis(i):
                raise NoUnit(f"unit vector does not fix e{i}")

    def _left_matrix(self, a):
        # column m holds the coordinates of a * e_m
        d = self.dim
        cols = [self.mul(a, self._basis(m)) for m in range(d)]
        return [[cols[m][r] for m in range(d)] for r in range(d)]

    def convert(self, x):
        if isinstance(x, (tuple, list)):
            if len(x) != self.dim:
                raise ValueError("coordinate vector has the wrong length")
            return tuple(self.base.convert(c) for c in x)
        c = self.base.convert(x)
        return tuple(self.base.mul(c, u) for u in self.unit)

    def from_int(self, n: int):
        return self.convert(n)

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        F, d = self.base, self.dim
        out = [F.zero] * d
        for i, x in enumerate(a):
            if F.is_zero(x):
                continue
            for j, y in enumerate(b):
                if F.is_zero(y):
                    continue
                xy = F.mul(x, y)
                for k, c in enumerate(self.mult[i][j]):
                    if not F.is_zero(c):
                        out[k] = F.add(out[k], F.mul(xy, c))
        return tuple(out)

    def is_zero(self, a) -> bool:
        return all(self.base.is_zero(x) for x in a)

    def coords(self, a):
        return tuple(a)

    def from_coords(self, coords):
        return tuple(coords)

    def mul_matrix(self, a):
        """Matrix of multiplication by ``a`` in the base-field basis."""
        F, d = self.base, self.dim
        out = [[F.zero] * d for _ in range(d)]
        for i, x in enumerate(a):
            if F.is_zero(x):
                continue
            M = self._basis_matrices[i]
            for r in range(d):
                for c in range(d):
                    if not F.is_zero(M[r][c]):
                        out[r][c] = F.add(out[r][c], F.mul(x, M[r][c]))
        return out

    def format(self, a) -> str:
        return "[" + ",".join(self.base.format(x) for x in a) + "]"

    def describe(self) -> str:
        if self.label:
            return self.label
        return f"table {self.dim}" + ("" if self.base == QQ else f" over {self.base.describe()}")

    def __eq__(self, other):
        return (isinstance(other, CommAlgebra) and other.base == self.base
                and other.mult == self.mult and other.unit == self.unit)

    def __hash__(self):
        return hash((self.base, self.mult, self.unit))

    def __repr__(self):
        return f"CommAlgebra({self.describe()} over {self.base.describe()})"


def truncated_polynomial(base, N: int) -> CommAlgebra:
    """``base[t]/(t^N)`` with basis ``1, t, ..., t^(N-1)``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    F = base
    mult = [[[F.one if (i + j == k) else F.zero for k in range(N)] for j in range(N)]
            for i in range(N)]
    unit = [F.one if k == 0 else F.zero for k in range(N)]
    names = ["1", "t"] + [f"t^{k}" for k in range(2, N)]
    return CommAlgebra(F, mult, unit, names=names[:N],
                       label=f"truncated {F.describe()} {N}")


def _parse_field(tokens):
    if tokens[:1] == ["Q"]:
        return QQ, tokens[1:]
    if tokens[:1] == ["F"] and len(tokens) >= 2:
        try:
            p = int(tokens[1])
        except ValueError:
            raise ValueError(f"bad prime {tokens[1]!r}") from None
        return PrimeField(p), tokens[2:]
    raise ValueError(f"unknown field description {' '.join(tokens)!r}")


def make_domain(desc):
    """Build a domain from a description.

    Accepted strings: ``"Q"``, ``"F 7"``, ``"truncated Q 2"``,
    ``"truncated F 3 4"``, optionally prefixed with ``field`` / ``ring``.
    A dict with keys ``base``, ``mult``, ``unit`` (and optional ``names``)
    describes a CommAlgebra by structure constants.  Existing domains are
    returned unchanged.
    """
    if isinstance(desc, (Rationals, PrimeField, CommAlgebra)):
        return desc
    if isinstance(desc, dict):
        base = make_domain(desc.get("base", "Q"))
        if not base.is_field:
            raise NotAField("CommAlgebra base must be a field")
        return CommAlgebra(base, desc["mult"], desc["unit"], names=desc.get("names"))
    tokens = str(desc).split()
    if tokens[:1] in (["field"], ["ring"]):
        tokens = tokens[1:]
    if tokens[:1] == ["truncated"]:
        base, rest = _parse_field(tokens[1:])
        if len(rest) != 1:
            raise ValueError(f"bad truncated-polynomial description {desc!r}")
        return truncated_polynomial(base, int(rest[0]))
    field, rest = _parse_field(tokens)
    if rest:
        raise ValueError(f"trailing tokens in domain description {desc!r}")
    return field
