"""The line-oriented ``.lie`` text format.

Indices in files are 1-based; everything returned by :func:`parse_lie` is
0-based like the rest of the package.  Example::

    # Heisenberg algebra
    field Q
    dim 3
    names x y z
    bracket 1 2 = 1*3

Ring coefficients are written ``[c1,...,cd]`` in the basis of the ring; a
plain rational is read as that multiple of the unit.
"""
from __future__ import annotations

import re
from fractions import Fraction
from dataclasses import dataclass, field as dc_field

from .errors import (GradingIncompatible, JacobiFails, LieKoszulError,
                     LieSemanticError, LieSyntaxError)
from .koszul import BilinearForm
from .liealg import Grading, make_lie_algebra
from .scalars import QQ, CommAlgebra, PrimeField, truncated_polynomial

_INT = re.compile(r"^[+-]?\d+$")
_RAT = re.compile(r"^[+-]?\d+(/\d+)?$")
_NAME = re.compile(r"^[^\s#]+$")


@dataclass
class LieFile:
    domain: object
    dim: int
    brackets: dict
    names: tuple | None = None
    grading: Grading | None = None
    form: dict | None = None
    lines: dict = dc_field(default_factory=dict, compare=False, repr=False)

    def algebra(self, check: bool = True):
        """Build the validated Lie algebra; failures become LieSemanticError."""
        try:
            return make_lie_algebra(self.domain, self.dim, self.brackets,
                                    names=self.names, grading=self.grading, check=check)
        except JacobiFails as exc:
            raise LieSemanticError(None, str(exc)) from None
        except GradingIncompatible as exc:
            line = self.lines.get(("bracket",) + tuple(exc.pair)) if exc.pair else None
            raise LieSemanticError(line, str(exc)) from None

    def bilinear_form(self):
        if self.form is None:
            return None
        return BilinearForm.from_pairs(self.domain, self.dim, self.form)

    @classmethod
    def from_algebra(cls, g, form=None, grading=None):
        """Wrap an algebra (plus an optional BilinearForm) for emission."""
        D = g.domain
        pairs = None
        if form is not None:
            pairs = {(i, j): form.matrix[i][j] for i in range(g.dim) for j in range(i, g.dim)
                     if not D.is_zero(form.matrix[i][j])}
        default = tuple(f"e{i + 1}" for i in range(g.dim))
        names = None if tuple(g.names) == default else tuple(g.names)
        return cls(D, g.dim, dict(g.structure_constants), names,
                   grading if grading is not None else g.grading, pairs)


# --- scalars -------------------------------------------------------------------

def _base_scalar(F, tok, line):
    if not _RAT.match(tok):
        raise LieSyntaxError(line, f"expected a rational number, got {tok!r}")
    num, _, den = tok.partition("/")
    if den and int(den) == 0:
        raise LieSemanticError(line, "zero denominator")
    if isinstance(F, PrimeField) and den and int(den) % F.p == 0:
        raise LieSemanticError(line, f"denominator {den} is not invertible mod {F.p}")
    return F.convert(Fraction(int(num), int(den) if den else 1))


def _scalar(D, tok, line):
    if tok.startswith("[") or tok.startswith("-[") or tok.startswith("+["):
        sign = -1 if tok[0] == "-" else 1
        body = tok.lstrip("+-")
        if not body.endswith("]"):
            raise LieSyntaxError(line, f"unterminated ring coefficient {tok!r}")
        if not isinstance(D, CommAlgebra):
            raise LieSemanticError(line, "bracketed coefficients need a ring domain")
        parts = [p.strip() for p in body[1:-1].split(",")]
        if len(parts) != D.dim:
            raise LieSemanticError(line, f"ring coefficient needs {D.dim} entries, got {len(parts)}")
        v = tuple(_base_scalar(D.base, p, line) for p in parts)
        return D.neg(v) if sign < 0 else v
    if isinstance(D, CommAlgebra):
        return D.convert(_base_scalar(D.base, tok, line))
    return _base_scalar(D, tok, line)


def _format_scalar(D, c) -> str:
    if isinstance(D, CommAlgebra):
        return "[" + ",".join(D.base.format(x) for x in c) + "]"
    return D.format(c)


# --- parsing -------------------------------------------------------------------

def _index(tok, n, line, what="index"):
    if not _INT.match(tok):
        raise LieSyntaxError(line, f"expected an integer {what}, got {tok!r}")
    i = int(tok)
    if not 1 <= i <= n:
        raise LieSemanticError(line, f"{what} {i} outside 1..{n}")
    return i - 1


def _field(tokens, line):
    if tokens == ["Q"]:
        return QQ
    if len(tokens) == 2 and tokens[0] == "F" and _INT.match(tokens[1]):
        try:
            return PrimeField(int(tokens[1]))
        except LieKoszulError as exc:
            raise LieSemanticError(line, str(exc)) from None
    raise LieSyntaxError(line, f"expected 'Q' or 'F <p>', got {' '.join(tokens)!r}")


def _terms(rhs, line):
    """Split ``c1*k1 + c2*k2 - c3*k3`` into (coefficient, index) tokens."""
    text = rhs.replace(" ", "")
    if not text:
        raise LieSyntaxError(line, "empty right-hand side")
    out = []
    pos = 0
    pat = re.compile(r"([+-]?)(\[[^\]]*\]|[0-9]+(?:/[0-9]+)?)\*([0-9]+)")
    while pos < len(text):
        m = pat.match(text, pos)
        if not m or (pos > 0 and not m.group(1)):
            raise LieSyntaxError(line, f"cannot parse term at {text[pos:]!r}")
        sign, coef, idx = m.groups()
        if sign == "-":
            coef = "-" + coef
        out.append((coef, idx))
        pos = m.end()
    return out


def parse_lie(text: str) -> LieFile:
    """Parse ``.lie`` text; errors carry 1-based line numbers."""
    domain = None
    ring_table = None
    dim = None
    names = None
    grading_decl = None
    weights = {}
    brackets = {}
    form = {}
    lines = {}

    def need_dim(line):
        if dim is None:
            raise LieSemanticError(line, "'dim' must come before this line")

    def finish_ring(line):
        nonlocal domain, ring_table
        if ring_table is None:
            return
        d, base, mult, unit = ring_table
        if unit is None:
            raise LieSemanticError(line, "ring table has no 'unit' line")
        table = [[mult.get((min(i, j), max(i, j)), [base.zero] * d) for j in range(d)]
                 for i in range(d)]
        try:
            domain = CommAlgebra(base, table, unit)
        except LieKoszulError as exc:
            raise LieSemanticError(line, f"ring table: {exc}") from None
        ring_table = None

    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        tok = body.split()
        kw = tok[0]
        if ring_table is not None and kw not in ("mult", "unit"):
            finish_ring(ln)
        if kw in ("field", "ring"):
            if domain is not None or ring_table is not None:
                raise LieSemanticError(ln, "domain declared twice")
            if kw == "field":
                domain = _field(tok[1:], ln)
            elif len(tok) >= 3 and tok[1] == "truncated":
                base = _field(tok[2:-1], ln)
                if not _INT.match(tok[-1]) or int(tok[-1]) < 1:
                    raise LieSyntaxError(ln, "truncation order must be a positive integer")
                domain = truncated_polynomial(base, int(tok[-1]))
            elif len(tok) >= 3 and tok[1] == "table":
                if not _INT.match(tok[2]) or int(tok[2]) < 1:
                    raise LieSyntaxError(ln, "ring table size must be a positive integer")
                base = QQ
                if len(tok) > 3:
                    if tok[3] != "over":
                        raise LieSyntaxError(ln, "expected 'over <field>' after the table size")
                    base = _field(tok[4:], ln)
                ring_table = (int(tok[2]), base, {}, None)
            else:
                raise LieSyntaxError(ln, "expected 'ring truncated ...' or 'ring table ...'")
        elif kw in ("mult", "unit"):
            if ring_table is None:
                raise LieSemanticError(ln, f"'{kw}' outside a ring table")
            d, base, mult, unit = ring_table
            if kw == "unit":
                coeffs = tok[1:]
                if len(coeffs) != d:
                    raise LieSemanticError(ln, f"unit needs {d} coordinates")
                ring_table = (d, base, mult, [_base_scalar(base, c, ln) for c in coeffs])
            else:
                if len(tok) < 4 or tok[3] != "=":
                    raise LieSyntaxError(ln, "expected 'mult <i> <j> = <c1> ... <cd>'")
                i, j = _index(tok[1], d, ln), _index(tok[2], d, ln)
                if i > j:
                    raise LieSemanticError(ln, "mult lines need i <= j")
                if len(tok) - 4 != d:
                    raise LieSemanticError(ln, f"mult needs {d} coordinates")
                if (i, j) in mult:
                    raise LieSemanticError(ln, f"mult {i + 1} {j + 1} given twice")
                mult[(i, j)] = [_base_scalar(base, c, ln) for c in tok[4:]]
        elif kw == "dim":
            if domain is None:
                raise LieSemanticError(ln, "declare the field or ring before 'dim'")
            if dim is not None:
                raise LieSemanticError(ln, "dim declared twice")
            if len(tok) != 2 or not _INT.match(tok[1]) or int(tok[1]) < 0:
                raise LieSyntaxError(ln, "expected 'dim <n>'")
            dim = int(tok[1])
        elif kw == "names":
            need_dim(ln)
            if len(tok) - 1 != dim:
                raise LieSemanticError(ln, f"expected {dim} names, got {len(tok) - 1}")
            if len(set(tok[1:])) != dim:
                raise LieSemanticError(ln, "names must be distinct")
            names = tuple(tok[1:])
        elif kw == "grading":
            need_dim(ln)
            if len(tok) < 4 or tok[1] != "free" or tok[3] != "torsion" or not _INT.match(tok[2]):
                raise LieSyntaxError(ln, "expected 'grading free <d> torsion <m1> ... <ms>'")
            if any(not _INT.match(t) or int(t) < 2 for t in tok[4:]):
                raise LieSemanticError(ln, "torsion moduli must be integers >= 2")
            grading_decl = (int(tok[2]), tuple(int(t) for t in tok[4:]), ln)
        elif kw == "weight":
            need_dim(ln)
            if grading_decl is None:
                raise LieSemanticError(ln, "'weight' before 'grading'")
            if len(tok) < 2:
                raise LieSyntaxError(ln, "expected 'weight <index> <t1> ...'")
            i = _index(tok[1], dim, ln)
            arity = grading_decl[0] + len(grading_decl[1])
            if len(tok) - 2 != arity:
                raise LieSemanticError(ln, f"weight needs {arity} entries, got {len(tok) - 2}")
            if any(not _INT.match(t) for t in tok[2:]):
                raise LieSyntaxError(ln, "weights must be integers")
            if i in weights:
                raise LieSemanticError(ln, f"weight of {i + 1} given twice")
            weights[i] = tuple(int(t) for t in tok[2:])
        elif kw in ("bracket", "form"):
            need_dim(ln)
            if len(tok) < 5 or tok[3] != "=":
                raise LieSyntaxError(ln, f"expected '{kw} <i> <j> = ...'")
            i, j = _index(tok[1], dim, ln), _index(tok[2], dim, ln)
            rhs = body.split("=", 1)[1]
            if kw == "bracket":
                if i == j:
                    raise LieSemanticError(ln, f"diagonal bracket [{i + 1}, {j + 1}] is always zero")
                if i > j:
                    raise LieSemanticError(ln, "bracket lines need i < j")
                if (i, j) in brackets:
                    raise LieSemanticError(ln, f"bracket {i + 1} {j + 1} given twice")
                vec = {}
                for coef, idx in _terms(rhs, ln):
                    k = _index(idx, dim, ln, "output index")
                    c = _scalar(domain, coef, ln)
                    vec[k] = domain.add(vec.get(k, domain.zero), c)
                brackets[(i, j)] = {k: c for k, c in vec.items() if not domain.is_zero(c)}
                lines[("bracket", i, j)] = ln
            else:
                if i > j:
                    raise LieSemanticError(ln, "form lines need i <= j")
                if (i, j) in form:
                    raise LieSemanticError(ln, f"form {i + 1} {j + 1} given twice")
                vals = rhs.split()
                if len(vals) != 1:
                    raise LieSyntaxError(ln, "expected a single form coefficient")
                form[(i, j)] = _scalar(domain, vals[0], ln)
        else:
            raise LieSyntaxError(ln, f"unknown keyword {kw!r}")

    last = len(text.splitlines()) + 1
    finish_ring(last)
    if domain is None:
        raise LieSemanticError(None, "no 'field' or 'ring' line")
    if dim is None:
        raise LieSemanticError(None, "no 'dim' line")
    grading = None
    if grading_decl is not None:
        free, tors, gl = grading_decl
        missing = [i + 1 for i in range(dim) if i not in weights]
        if missing:
            raise LieSemanticError(gl, f"no weight given for basis index {missing[0]}")
        grading = Grading(free, tors, tuple(weights[i] for i in range(dim)))
    return LieFile(domain, dim, brackets, names, grading, form or None, lines)


# --- emission ------------------------------------------------------------------

def _emit_domain(D) -> list:
    if not isinstance(D, CommAlgebra):
        return [f"field {D.describe()}"]
    if D.label and D.label.startswith("truncated"):
        N = D.dim
        if D == truncated_polynomial(D.base, N):
            return [f"ring truncated {D.base.describe()} {N}"]
    F = D.base
    head = f"ring table {D.dim}" + ("" if F == QQ else f" over {F.describe()}")
    out = [head]
    for i in range(D.dim):
        for j in range(i, D.dim):
            v = D.mult[i][j]
            if not D.is_zero(v):
                out.append(f"mult {i + 1} {j + 1} = " + " ".join(F.format(x) for x in v))
    out.append("unit " + " ".join(F.format(x) for x in D.unit))
    return out


def emit_lie(lf: LieFile, comment: str | None = None) -> str:
    """Canonical text for ``lf``; ``parse_lie(emit_lie(x))`` equals ``x``."""
    D = lf.domain
    out = []
    if comment:
        out.extend("# " + c for c in comment.splitlines())
    out.extend(_emit_domain(D))
    out.append(f"dim {lf.dim}")
    if lf.names is not None:
        bad = [nm for nm in lf.names if not _NAME.match(nm)]
        if bad:
            raise ValueError(f"name {bad[0]!r} cannot be written to a .lie file")
        out.append("names " + " ".join(lf.names))
    G = lf.grading
    if G is not None:
        out.append(f"grading free {G.free_rank} torsion" + "".join(f" {m}" for m in G.torsion))
        for i, w in enumerate(G.weights):
            out.append(f"weight {i + 1}" + "".join(f" {x}" for x in w))
    for (i, j) in sorted(lf.brackets):
        vec = lf.brackets[(i, j)]
        if not vec:
            continue
        terms = []
        for k in sorted(vec):
            c = _format_scalar(D, vec[k])
            if terms:
                terms.append(f"- {c[1:]}*{k + 1}" if c.startswith("-") and not isinstance(D, CommAlgebra)
                             else f"+ {c}*{k + 1}")
            else:
                terms.append(f"{c}*{k + 1}")
        out.append(f"bracket {i + 1} {j + 1} = " + " ".join(terms))
    if lf.form:
        for (i, j) in sorted(lf.form):
            c = lf.form[(i, j)]
            if not D.is_zero(c):
                out.append(f"form {i + 1} {j + 1} = {_format_scalar(D, c)}")
    return "\n".join(out) + "\n"
