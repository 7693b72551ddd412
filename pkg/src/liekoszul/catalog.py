"""Named example algebras with their forms, gradings and distinguished chains.

``catalog_make("w(3+4)")``, ``catalog_make("X", m=8)`` and
``catalog_make("g12")`` all return a :class:`CatalogEntry`.  Expected facts
are stored in ``entry.expected`` and are re-derived by the test-suite.
"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field as dc_field

from .errors import (BadPartition, CharacteristicMismatch, DomainIsField,
                     UnknownName)
from .homology import ChainVector
from .koszul import BilinearForm
from .liealg import Grading, make_lie_algebra
from .scalars import QQ, PrimeField, make_domain, truncated_polynomial


@dataclass
class CatalogEntry:
    name: str
    params: dict
    algebra: object
    form: BilinearForm | None = None
    gradings: dict = dc_field(default_factory=dict)
    expected: dict = dc_field(default_factory=dict)
    chains: dict = dc_field(default_factory=dict)
    data: dict = dc_field(default_factory=dict)

    @property
    def dim(self):
        return self.algebra.dim

    def graded(self, key=None):
        """The algebra carrying one of the attached gradings (the first by default)."""
        if not self.gradings:
            return self.algebra
        key = key if key is not None else next(iter(self.gradings))
        return self.algebra.with_grading(self.gradings[key])


def _build(domain, names, brackets, grading=None, check=True):
    """Brackets given as ``(a, b, {c: coeff})`` with basis names."""
    D = make_domain(domain)
    idx = {nm: i for i, nm in enumerate(names)}
    table = {}
    for a, b, vec in brackets:
        i, j = idx[a], idx[b]
        flip = i > j
        if flip:
            i, j = j, i
        out = table.setdefault((i, j), {})
        for c, x in vec.items():
            x = D.neg(D.convert(x)) if flip else D.convert(x)
            out[idx[c]] = D.add(out.get(idx[c], D.zero), x)
    return make_lie_algebra(D, len(names), table, names, grading, check=check)


def _form(domain, names, pairs):
    idx = {nm: i for i, nm in enumerate(names)}
    return BilinearForm.from_pairs(domain, len(names),
                                   {(idx[a], idx[b]): c for a, b, c in pairs})


def _z(*ws):
    """Integer grading weights as 1-tuples."""
    return tuple((w,) for w in ws)


def _attach(entry, key, grading):
    entry.algebra.check_grading(grading)
    entry.gradings[key] = grading


# --- small standard algebras ---------------------------------------------------

def abelian_entry(n: int, domain=QQ):
    names = [f"a{i + 1}" for i in range(n)]
    g = make_lie_algebra(domain, n, {}, names, Grading(1, (), _z(*[1] * n)))
    e = CatalogEntry(f"abelian({n})", {"n": n}, g)
    e.gradings["carnot"] = g.grading
    e.expected.update(dim=n, nilpotency_length=1 if n else 0,
                      kill_dim=n * (n + 1) // 2, eta_rank=0)
    return e


def heisenberg_entry(n: int, domain=QQ):
    if n < 3 or n % 2 == 0:
        raise ValueError("the Heisenberg algebra has odd dimension >= 3")
    k = (n - 1) // 2
    names = [f"x{i}" for i in range(1, k + 1)] + [f"y{i}" for i in range(1, k + 1)] + ["z"]
    br = [(f"x{i}", f"y{i}", {"z": 1}) for i in range(1, k + 1)]
    gr = Grading(1, (), _z(*([1] * (2 * k) + [2])))
    g = _build(domain, names, br, gr)
    e = CatalogEntry(f"heisenberg({n})", {"n": n}, g)
    e.gradings["carnot"] = gr
    e.expected.update(dim=n, nilpotency_length=2, eta_rank=0)
    return e


def filiform_entry(n: int, domain=QQ):
    """Standard filiform ``L_n``: ``[e1, e_i] = e_{i+1}`` for ``2 <= i < n``."""
    if n < 3:
        raise ValueError("filiform algebras need n >= 3")
    names = [f"e{i}" for i in range(1, n + 1)]
    br = [("e1", f"e{i}", {f"e{i + 1}": 1}) for i in range(2, n)]
    gr = Grading(1, (), _z(1, *range(1, n)))
    g = _build(domain, names, br, gr)
    e = CatalogEntry(f"filiform({n})", {"n": n}, g)
    e.gradings["carnot"] = gr
    e.expected.update(dim=n, nilpotency_length=n - 1, metabelian=True, eta_rank=0)
    return e


def sl2_entry(domain=QQ):
    names = ["e", "h", "f"]
    br = [("h", "e", {"e": 2}), ("h", "f", {"f": -2}), ("e", "f", {"h": 1})]
    gr = Grading(1, (), _z(1, 0, -1))
    g = _build(domain, names, br, gr)
    e = CatalogEntry("sl2", {}, g, _form(g.domain, names, [("e", "f", 1), ("h", "h", 2)]))
    e.gradings["root"] = gr
    e.expected.update(dim=3, kill_dim=1)
    return e


def oscillator_entry(domain=QQ):
    """``[t, p] = q``, ``[t, q] = -p``, ``[p, q] = z``."""
    names = ["t", "p", "q", "z"]
    br = [("t", "p", {"q": 1}), ("t", "q", {"p": -1}), ("p", "q", {"z": 1})]
    g = _build(domain, names, br)
    form = _form(g.domain, names, [("t", "z", 1), ("p", "p", 1), ("q", "q", 1)])
    e = CatalogEntry("oscillator4", {}, g, form)
    e.expected.update(dim=4, solvability_length=3)
    return e


# --- w(lambda) -----------------------------------------------------------------

def parse_partition(text) -> tuple:
    """``"3+4"``, ``"3,4"``, ``"[2]3"`` or a sequence of ints."""
    if isinstance(text, int):
        parts = [text]
    elif isinstance(text, (list, tuple)):
        parts = [int(x) for x in text]
    else:
        parts = []
        for chunk in re.split(r"[+,\s]+|⊕", str(text).strip()):
            if not chunk:
                continue
            m = re.fullmatch(r"\[(\d+)\](\d+)", chunk)
            if m:
                parts += [int(m.group(2))] * int(m.group(1))
            else:
                parts.append(int(chunk))
    if not parts or any(p < 1 for p in parts):
        raise BadPartition(f"bad partition {text!r}")
    bad = [p for p in parts if p % 4 == 2]
    if bad:
        raise BadPartition(f"part {bad[0]} is congruent to 2 mod 4")
    return tuple(parts)


def w_entry(partition, domain=QQ, r=None):
    """Double extension of an orthogonal space by a nilpotent skew map.

    Basis ``x, e_{i,j}, f_{k,l}, z``; odd parts give e-blocks and parts
    divisible by 4 give f-blocks, each in the order they appear.  Signs:
    ``D e_{ij} = (-1)^(i+j) e_{i,j+1}``, ``D f_{kl} = (-1)^(k+l) f_{k,l+2}``
    and ``[u, v] = <Du, v> z`` on the orthogonal space.
    """
    parts = parse_partition(partition)
    a = [p for p in parts if p % 2 == 1]
    b = [p for p in parts if p % 4 == 0]
    names = ["x"]
    D = {}
    pair = {}
    for i, ai in enumerate(a, 1):
        for j in range(1, ai + 1):
            names.append(f"e{i},{j}")
            if j < ai:
                D[f"e{i},{j}"] = (f"e{i},{j + 1}", (-1) ** (i + j))
            pair[f"e{i},{j}"] = f"e{i},{ai + 1 - j}"
    for k, bk in enumerate(b, 1):
        for l in range(1, bk + 1):
            names.append(f"f{k},{l}")
            if l <= bk - 2:
                D[f"f{k},{l}"] = (f"f{k},{l + 2}", (-1) ** (k + l))
            pair[f"f{k},{l}"] = f"f{k},{bk + 1 - l}"
    names.append("z")
    br = [("x", u, {v: s}) for u, (v, s) in D.items()]
    V = names[1:-1]
    for u, v in itertools.combinations(V, 2):
        # <Du, v>
        if u in D and pair[D[u][0]] == v:
            br.append((u, v, {"z": D[u][1]}))
    g = _build(domain, names, br)
    form = _form(g.domain, names, [("x", "z", 1)] + [(u, pair[u], 1) for u in V if u <= pair[u]])
    label = "+".join(str(p) for p in parts)
    e = CatalogEntry(f"w({label})", {"partition": parts, "r": r}, g, form)
    nil = max([*a, *(bk // 2 for bk in b)]) if parts else 1
    e.expected.update(dim=len(names), nilpotency_length=nil, eta_rank=0,
                      center_by_metabelian=True)
    deg012 = [0] + [1] * len(V) + [2]
    _attach(e, "012", Grading(1, (), _z(*deg012)))
    if len(set(parts)) == 1:
        n = parts[0]
        degs = [1]
        for nm in V:
            j = int(nm.split(",")[1])
            degs.append(j if n % 2 else (j + 1) // 2)
        degs.append(n if n % 2 else n // 2)
        _attach(e, "carnot", Grading(1, (), _z(*degs)))
    if r is None:
        r = max([ai - 1 for ai in a] + [bk // 2 - 1 for bk in b] + [1])
    else:
        for ai in a:
            if r < ai - 1:
                raise ValueError(f"r = {r} is below a_i - 1 = {ai - 1}")
        for bk in b:
            if r < bk // 2 - 1:
                raise ValueError(f"r = {r} is below b_k/2 - 1 = {bk // 2 - 1}")
    degs = [2]
    for nm in V:
        blk, j = nm[1:].split(",")
        blk, j = int(blk), int(j)
        if nm[0] == "e":
            degs.append(r - a[blk - 1] + 2 * j)
        else:
            degs.append(r - b[blk - 1] // 2 + 2 * ((j + 1) // 2))
    degs.append(2 * r)
    _attach(e, "positive", Grading(1, (), _z(*degs)))
    e.data["r"] = r
    return e


# --- X(3k-1) and Y(3k) -----------------------------------------------------------

def _res(n):
    """Residue of ``n`` mod 3 in ``{-1, 0, 1}``."""
    return ((n + 1) % 3) - 1


def _t_family(lo, hi, pair_sum, domain, label, params):
    """Span of ``T_lo..T_hi`` modulo higher terms, ``[T_n, T_m] = (r(m) - r(n)) T_{n+m}``."""
    names = [f"T{n}" for n in range(lo, hi + 1)]
    br = []
    for n, m in itertools.combinations(range(lo, hi + 1), 2):
        c = _res(m) - _res(n)
        if c and n + m <= hi:
            br.append((f"T{n}", f"T{m}", {f"T{n + m}": c}))
    g = _build(domain, names, br)
    pairs = []
    for n in range(lo, hi + 1):
        m = pair_sum - n
        if n <= m and lo <= m <= hi:
            pairs.append((f"T{n}", f"T{m}", 1 if n % 3 == 0 else -2))
    e = CatalogEntry(label, params, g, _form(g.domain, names, pairs))
    # Z^2 grading by (n, i) with T_{3n+i}
    _attach(e, "Z2", Grading(2, (), tuple(((t - _res(t)) // 3, _res(t)) for t in range(lo, hi + 1))))
    return e


def x_entry(m: int, domain=QQ):
    if m < 2 or m % 3 != 2:
        raise ValueError("X(m) needs m = 3k - 1 >= 2")
    k = (m + 1) // 3
    e = _t_family(1, m, 3 * k, domain, f"X({m})", {"m": m})
    degs = []
    for t in range(1, m + 1):
        i = (t + 2) // 3
        degs.append(2 * i if t % 3 == 0 else 2 * i - 1)
    _attach(e, "carnot", Grading(1, (), _z(*degs)))
    e.gradings = {"carnot": e.gradings["carnot"], "Z2": e.gradings["Z2"]}
    e.expected.update(dim=m, nilpotency_length=max(2 * k - 1, 1), eta_rank=0)
    return e


def y_entry(m: int, domain=QQ):
    if m < 3 or m % 3 != 0:
        raise ValueError("Y(m) needs m = 3k >= 3")
    k = m // 3
    e = _t_family(2, 3 * k + 1, 3 * k + 3, domain, f"Y({m})", {"m": m})
    _attach(e, "carnot", Grading(1, (), _z(*[(t + 1) // 3 for t in range(2, 3 * k + 2)])))
    e.gradings = {"carnot": e.gradings["carnot"], "Z2": e.gradings["Z2"]}
    e.expected.update(dim=m, nilpotency_length=k, eta_rank=0)
    return e


# --- dimension 9 examples ----------------------------------------------------------

def kath9_entry(domain=QQ):
    names = [f"X{i}" for i in range(1, 10)]
    coeffs = {(1, 2): -1, (2, 3): 1, (1, 3): 1, (1, 6): -1, (3, 6): 1,
              (2, 5): -1, (3, 5): 1, (2, 7): -1, (1, 7): 1}
    br = [(f"X{i}", f"X{j}", {f"X{i + j}": c}) for (i, j), c in coeffs.items()]
    g = _build(domain, names, br)
    form = _form(g.domain, names, [(f"X{i}", f"X{10 - i}", 1) for i in range(1, 6)])
    e = CatalogEntry("kath9_4c", {}, g, form)
    _attach(e, "indices", Grading(1, (), _z(*range(1, 10))))
    five = {1: 1, 2: 1, 3: 2, 4: 3, 5: 3, 6: 3, 7: 4, 8: 5, 9: 5}
    _attach(e, "five", Grading(1, (), _z(*[five[i] for i in range(1, 10)])))
    three = {2: 0, 6: 0, 1: 1, 3: 1, 5: 1, 7: 1, 9: 1, 4: 2, 8: 2}
    _attach(e, "012", Grading(1, (), _z(*[three[i] for i in range(1, 10)])))
    e.expected.update(dim=9, nilpotency_length=5, eta_rank=0)
    return e


def w7y_entry(domain=QQ, twisted=True):
    """``w(7)`` on ``Y1, Y3..Y9, Y11``, optionally with the three extra brackets."""
    idx = [1, 3, 4, 5, 6, 7, 8, 9, 11]
    names = [f"Y{i}" for i in idx]
    br = []
    for i in range(3, 9):
        br.append(("Y1", f"Y{i}", {f"Y{i + 1}": (-1) ** i}))
        if i < 11 - i:
            br.append((f"Y{i}", f"Y{11 - i}", {"Y11": (-1) ** i}))
    if twisted:
        br += [("Y3", "Y4", {"Y7": 1}), ("Y3", "Y5", {"Y8": -1}), ("Y4", "Y5", {"Y9": 1})]
    g = _build(domain, names, br)
    form = _form(g.domain, names, [(f"Y{i}", f"Y{12 - i}", 1) for i in idx if i <= 12 - i])
    e = CatalogEntry("w7_twisted" if twisted else "w7_y", {"twisted": twisted}, g, form)
    _attach(e, "indices", Grading(1, (), _z(*idx)))
    e.expected.update(dim=9, nilpotency_length=7, eta_rank=0,
                      second_derived_dim=2 if twisted else 1)
    return e


# --- the 12-dimensional algebra ------------------------------------------------------

G12_NAMES = ["E3", "E9", "Y1", "Y4", "Y5", "Y6", "Y7", "Y8", "Y11", "Z3", "Z6", "Z9"]

G12_BRACKETS = [
    ("Y1", "Y4", {"Y5": 1}), ("Y1", "Y5", {"Y6": -1}), ("Y1", "Y6", {"Y7": 1}),
    ("Y1", "Y7", {"Y8": -1}), ("Y4", "Y7", {"Y11": 1}), ("Y5", "Y6", {"Y11": -1}),
    ("E3", "Y1", {"Y4": 1}), ("E3", "Y4", {"Y7": 1, "Z3": 1}), ("E3", "Y5", {"Y8": -1}),
    ("E3", "Y8", {"Y11": -1}), ("E3", "Z3", {"Z6": 1}), ("E3", "Z6", {"Z9": -1}),
    ("E3", "Z9", {"Y8": -1}),
    ("Y1", "Y8", {"E9": 1}), ("Y4", "Y5", {"E9": 1}), ("Z3", "Z6", {"E9": 1}),
    ("Y4", "Z9", {"E9": 1}),
]

G12_CHAINS = [("E3", "Y1", "Y8"), ("E3", "Y4", "Y5"), ("E3", "Y4", "Z9"), ("Y1", "Y4", "Y7"),
              ("E3", "Z3", "Z6"), ("Y1", "Y6", "Y5"), ("Y1", "Y4", "Z3"), ("E3", "Z6", "Y7")]
G12_CYCLE = (2, 4, -3, 1, -3, -3, 4, 3)
G12_TWO_CHAINS = [("E3", "E9"), ("Y1", "Y11"), ("Y4", "Y8"), ("Y5", "Y7"), ("Z3", "Z9"),
                  ("Z3", "Y5"), ("Z9", "Y7")]
G12_MATRIX = (
    (1, 1, 1, 0, 1, 0, 0, 0),
    (1, 0, 0, 1, 0, 1, 0, 0),
    (-1, 1, 1, 1, 0, 0, 0, 0),
    (0, 1, 0, -1, 0, 1, 0, 0),
    (0, 0, -1, 0, 1, 0, 0, 0),
    (0, -1, 0, 0, 0, 0, 1, 0),
    (0, 0, 1, 0, 0, 0, 0, 1),
)
G12_BETTI = (1, 2, 4, 9, 15, 22, 26, 22, 15, 9, 4, 2, 1)


def _index_of(name):
    return int(re.sub(r"\D", "", name))


def g12_entry(domain=QQ):
    g = _build(domain, G12_NAMES, G12_BRACKETS)
    pairs = [(a, b, 1) for a in G12_NAMES for b in G12_NAMES
             if a[0] == b[0] and _index_of(a) + _index_of(b) == 12 and a <= b]
    e = CatalogEntry("g12", {}, g, _form(g.domain, G12_NAMES, pairs))
    _attach(e, "Z4", Grading(0, (4,), tuple((_index_of(n) % 4,) for n in G12_NAMES)))
    e.chains = {f"c{i + 1}": ChainVector.from_terms(g, [(1, s)]) for i, s in enumerate(G12_CHAINS)}
    e.chains["c"] = ChainVector.from_terms(g, list(zip(G12_CYCLE, G12_CHAINS)))
    e.data.update(two_chains=G12_TWO_CHAINS, matrix=G12_MATRIX, kernel=G12_CYCLE,
                  pairings=(1, 1, 1, 1, 1, 1, 0, 0), betti=G12_BETTI)
    e.expected.update(dim=12, nilpotency_length=7, kill_dim=5, eta_rank=1, pairing=-2,
                      betti=G12_BETTI)
    return e


# --- the solvable 9-dimensional algebra -------------------------------------------------

def solvable9_entry(domain=QQ):
    names = ["x", "y", "z", "y'", "x'", "u1", "u-1", "v1", "v-1"]
    br = [("x", "y", {"z": 1}), ("z", "x", {"y'": 1}), ("y", "z", {"x'": 1}),
          ("x", "u1", {"u1": 1}), ("x", "u-1", {"u-1": -1}),
          ("y", "v1", {"v1": 1}), ("y", "v-1", {"v-1": -1}),
          ("u1", "u-1", {"x'": 1}), ("v1", "v-1", {"y'": 1})]
    gr = Grading(2, (), ((0, 0),) * 5 + ((1, 0), (-1, 0), (0, 1), (0, -1)))
    g = _build(domain, names, br, gr)
    form = _form(g.domain, names, [("x", "x'", 1), ("y", "y'", 1), ("z", "z", 1),
                                   ("u1", "u-1", 1), ("v1", "v-1", 1)])
    e = CatalogEntry("solvable9", {}, g, form)
    e.gradings["cartan"] = gr
    e.chains["c"] = ChainVector.from_terms(
        g, [(1, ("x", "y", "z")), (-1, ("u1", "u-1", "x")), (-1, ("v1", "v-1", "y"))])
    e.expected.update(dim=9, solvability_length=3, center_by_metabelian=True,
                      nilpotent=False, pairing=-1, second_derived_dim=2)
    return e


# --- 2-nilpotent examples in positive characteristic or over rings ---------------------

OCTONION = {
    (-3, 0): {-3: -1}, (-3, 1): {-2: 1}, (-3, 2): {-1: -1}, (-3, 3): {0: 1},
    (-2, -1): {-3: -1}, (-2, 0): {-2: 1}, (-2, 2): {0: -1}, (-2, 3): {1: 1},
    (-1, 0): {-1: 1}, (-1, 1): {0: -1}, (-1, 3): {2: -1},
    (0, 1): {1: 1}, (0, 2): {2: 1}, (0, 3): {3: -1},
    (1, 2): {3: 1},
}


def octonion_product(i, j) -> dict:
    """``f(e_i, e_j)`` as ``{k: coeff}``."""
    if i == j:
        return {}
    if i < j:
        return dict(OCTONION.get((i, j), {}))
    return {k: -c for k, c in OCTONION.get((j, i), {}).items()}


def free_two_step(domain, V_names, W_names, f, grading=None):
    """``g(V, W, f)``: ``[(v, w), (v', w')] = (0, f(v, v'))``."""
    names = list(V_names) + list(W_names)
    br = []
    for a, b in itertools.combinations(V_names, 2):
        vec = f(a, b)
        if vec:
            br.append((a, b, vec))
    return _build(domain, names, br, grading)


def char3_octonion_entry(domain=None, strict=True):
    domain = make_domain(domain) if domain is not None else PrimeField(3)
    if strict and domain.characteristic != 3:
        raise CharacteristicMismatch(
            "the distinguished 3-chain is a cycle only in characteristic 3; pass strict=False")
    rng = range(-3, 4)
    V = [f"E{i}" for i in rng]
    W = [f"F{i}" for i in rng]

    def f(a, b):
        return {f"F{k}": c for k, c in octonion_product(int(a[1:]), int(b[1:])).items()}

    gr = Grading(2, (), tuple((i, 1) for i in rng) + tuple((i, 2) for i in rng))
    g = free_two_step(domain, V, W, f, gr)
    names = V + W
    form = _form(g.domain, names, [(f"E{i}", f"F{-i}", 1) for i in rng])
    e = CatalogEntry("char3_octonion", {"strict": strict}, g, form)
    e.gradings["Z2"] = gr
    e.chains["c"] = ChainVector.from_terms(g, [
        (1, ("E0", "E1", "E-1")), (1, ("E0", "E2", "E-2")), (1, ("E0", "E-3", "E3")),
        (-1, ("E1", "E2", "E-3")), (-1, ("E-1", "E-2", "E3"))])
    e.expected.update(dim=14, nilpotency_length=2, pairing=1)
    return e


def nonreduced_entry(domain=None, t=None):
    """``[e_i, e_{i+1}] = t e_{i+2}`` (indices mod 3) over a ring with ``t^2 = 0``."""
    R = make_domain(domain) if domain is not None else truncated_polynomial(QQ, 2)
    if R.is_field:
        raise DomainIsField("this example needs a ring with a nonzero nilpotent")
    if t is None:
        if "t" not in R.names:
            raise ValueError("supply t, a nonzero element with t^2 = 0")
        t = tuple(R.base.one if nm == "t" else R.base.zero for nm in R.names)
    t = R.convert(t)
    if R.is_zero(t) or not R.is_zero(R.mul(t, t)):
        raise ValueError("t must be nonzero with t^2 = 0")
    names = ["e1", "e2", "e3"]
    br = [("e1", "e2", {"e3": t}), ("e2", "e3", {"e1": t}), ("e3", "e1", {"e2": t})]
    gr = Grading(0, (2, 2, 2), ((0, 1, 1), (1, 0, 1), (1, 1, 0)))
    g = _build(R, names, br, gr)
    e = CatalogEntry("nonreduced_rank3", {"t": t}, g)
    e.gradings["Z2^3"] = gr
    e.chains["c"] = ChainVector.from_terms(g, [(1, ("e1", "e2", "e3"))])
    e.expected.update(dim=3, nilpotency_length=2)
    return e


# --- sl2 with its coadjoint module ---------------------------------------------------------

def coadjoint_sl2_entry(domain=QQ):
    """``sl2`` with basis ``e1, e0, e-1`` and the dual basis ``E-1, E0, E1`` of its dual.

    The coadjoint action gives ``[e_s, E_-s] = s E0`` for ``s = +-1``.
    """
    names = ["e1", "e0", "e-1", "E1", "E0", "E-1"]
    br = [("e0", "e1", {"e1": 1}), ("e0", "e-1", {"e-1": -1}), ("e1", "e-1", {"e0": 1}),
          ("e0", "E1", {"E1": 1}), ("e0", "E-1", {"E-1": -1}),
          ("e1", "E0", {"E1": -1}), ("e-1", "E0", {"E-1": 1}),
          ("e1", "E-1", {"E0": 1}), ("e-1", "E1", {"E0": -1})]
    g = _build(domain, names, br)
    form = _form(g.domain, names, [("e1", "E-1", 1), ("e0", "E0", 1), ("e-1", "E1", 1)])
    e = CatalogEntry("coadjoint(sl2)", {}, g, form)
    _attach(e, "01", Grading(1, (), _z(0, 0, 0, 1, 1, 1)))
    _attach(e, "Z2", Grading(2, (), ((1, 0), (0, 0), (-1, 0), (1, 1), (0, 1), (-1, 1))))
    e.expected.update(dim=6, h2=0)
    return e


def witness_chain(current, A):
    """``t e1 ^ E-1 - e1 ^ t E-1`` in ``A (x) coadjoint(sl2)``."""
    tname = "t" if "t" in A.names else A.names[1]
    return ChainVector.from_terms(current, [(1, (f"{tname}*e1", "E-1")),
                                            (-1, ("e1", f"{tname}*E-1"))])


# --- seeded random families (test plumbing) ------------------------------------------------

def _rand(rng, lo=-2, hi=2):
    return rng.randint(lo, hi)


def two_nilpotent_random(seed=0, dims=(4, 3), domain=QQ):
    """Random alternating ``V x V -> W``; 2-nilpotent with the ``{1, 2}`` grading."""
    m, k = dims
    rng = random.Random(seed)
    V = [f"v{i}" for i in range(1, m + 1)]
    W = [f"w{i}" for i in range(1, k + 1)]
    table = {}
    for a, b in itertools.combinations(V, 2):
        table[(a, b)] = {w: _rand(rng) for w in W}
    gr = Grading(1, (), _z(*([1] * m + [2] * k)))
    g = free_two_step(domain, V, W, lambda a, b: table[(a, b)], gr)
    e = CatalogEntry(f"two_nilpotent_random({seed},{m},{k})", {"seed": seed, "dims": dims}, g)
    e.gradings["12"] = gr
    return e


def metabelian_random(seed=0, dim_v=4, domain=QQ):
    """``span(x1, x2) + V`` with ``V`` abelian, ``[x1, x2] = w`` and ``[x_i, v] = A_i v``.

    ``A_1, A_2`` are polynomials in one random matrix, so they commute and
    the Jacobi identity holds.
    """
    rng = random.Random(seed)
    F = make_domain(domain)
    n = dim_v
    M = [[_rand(rng, -1, 1) for _ in range(n)] for _ in range(n)]

    def mat_mul(P, Q):
        return [[sum(P[i][k] * Q[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    powers = [[[int(i == j) for j in range(n)] for i in range(n)], M]
    powers.append(mat_mul(M, M))
    A = []
    for _ in range(2):
        cs = [_rand(rng, -1, 1) for _ in powers]
        A.append([[sum(c * P[i][j] for c, P in zip(cs, powers)) for j in range(n)]
                  for i in range(n)])
    names = ["x1", "x2"] + [f"v{i}" for i in range(1, n + 1)]
    w = {f"v{i + 1}": _rand(rng) for i in range(n)}
    br = [("x1", "x2", w)]
    for s in range(2):
        for j in range(n):
            br.append((names[s], f"v{j + 1}", {f"v{i + 1}": A[s][i][j] for i in range(n)}))
    g = _build(F, names, br)
    e = CatalogEntry(f"metabelian_random({seed},{n})", {"seed": seed, "dim_v": n}, g)
    e.expected.update(metabelian=True)
    return e


SMALL = ("sl2", "heisenberg(3)", "heisenberg(5)", "filiform(4)", "filiform(5)", "w(3)",
         "w(4)", "oscillator4", "abelian(2)", "X(5)")


def random_product_pairs(count=10, seed=0):
    """Seeded pairs of small catalog names for direct-product tests."""
    rng = random.Random(seed)
    return [(rng.choice(SMALL), rng.choice(SMALL)) for _ in range(count)]


# --- registry -------------------------------------------------------------------------------

NAMES = ("abelian(n)", "heisenberg(2k+1)", "filiform(n)", "sl2", "oscillator4",
         "w(partition)", "X(3k-1)", "Y(3k)", "kath9_4c", "w7_twisted", "g12", "solvable9",
         "char3_octonion", "nonreduced_rank3", "coadjoint(sl2)",
         "two_nilpotent_random(seed,m,k)", "metabelian_random(seed,n)")


def _ints(arg):
    return [int(x) for x in re.split(r"[,\s]+", arg.strip()) if x]


def catalog_make(name: str, domain=None, **params) -> CatalogEntry:
    """Build a catalog entry; arguments may be inlined, e.g. ``"w(3+4)"``."""
    m = re.fullmatch(r"\s*([A-Za-z0-9_]+)\s*(?:\((.*)\))?\s*", name)
    if not m:
        raise UnknownName(f"cannot parse catalog name {name!r}")
    base, arg = m.group(1), m.group(2)
    dom = {} if domain is None else {"domain": make_domain(domain)}
    try:
        if base == "abelian":
            return abelian_entry(int(arg) if arg else params["n"], **dom)
        if base == "heisenberg":
            return heisenberg_entry(int(arg) if arg else params.get("n", 3), **dom)
        if base == "filiform":
            return filiform_entry(int(arg) if arg else params["n"], **dom)
        if base == "sl2" and not arg:
            return sl2_entry(**dom)
        if base == "oscillator4":
            return oscillator_entry(**dom)
        if base == "w":
            part = arg if arg else params["partition"]
            return w_entry(part, r=params.get("r"), **dom)
        if base == "X":
            return x_entry(int(arg) if arg else params["m"], **dom)
        if base == "Y":
            return y_entry(int(arg) if arg else params["m"], **dom)
        if base in ("kath9_4c", "kath9"):
            return kath9_entry(**dom)
        if base == "w7_twisted":
            return w7y_entry(twisted=params.get("twisted", True), **dom)
        if base == "w7_y":
            return w7y_entry(twisted=False, **dom)
        if base == "g12":
            return g12_entry(**dom)
        if base == "solvable9":
            return solvable9_entry(**dom)
        if base == "char3_octonion":
            return char3_octonion_entry(domain, strict=params.get("strict", True))
        if base == "nonreduced_rank3":
            return nonreduced_entry(domain, params.get("t"))
        if base == "coadjoint" and (arg or "sl2").strip() == "sl2":
            return coadjoint_sl2_entry(**dom)
        if base == "two_nilpotent_random":
            vals = _ints(arg) if arg else [params.get("seed", 0), *params.get("dims", (4, 3))]
            return two_nilpotent_random(vals[0], tuple(vals[1:3]) or (4, 3), **dom)
        if base == "metabelian_random":
            vals = _ints(arg) if arg else [params.get("seed", 0), params.get("dim_v", 4)]
            return metabelian_random(vals[0], vals[1] if len(vals) > 1 else 4, **dom)
    except KeyError as exc:
        raise UnknownName(f"{name!r} needs parameter {exc.args[0]!r}") from None
    raise UnknownName(f"unknown catalog entry {name!r}")
