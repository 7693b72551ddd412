"""Command-line front end: ``liekoszul <command> ...`` (or ``python -m liekoszul``).

Exit codes: 0 success, 1 a verification failed, 2 bad input.
Files may be given as ``catalog:<name>`` instead of a path.
"""
from __future__ import annotations

import argparse
import json
import sys

from .catalog import NAMES, catalog_make
from .errors import LieKoszulError, UnknownName
from .homology import ChainVector, betti_numbers, cycle_space
from .koszul import (eta_on_chain, invariant_forms, killing_module,
                     quadrable_probe, reduced_koszul)
from .lie_format import LieFile, emit_lie, parse_lie
from .liealg import series
from .scalars import make_domain


class InputError(Exception):
    pass


# --- loading ----------------------------------------------------------------------

def load(source):
    """``(algebra, form or None, label)`` from a path or ``catalog:<name>``."""
    if source.startswith("catalog:"):
        e = catalog_make(source[len("catalog:"):])
        return e.graded(), e.form, e.name
    try:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    lf = parse_lie(text)
    return lf.algebra(), lf.bilinear_form(), source


def parse_weight(text, g):
    if text is None:
        return None
    if g.grading is None:
        raise InputError("--weight given but the algebra has no grading")
    try:
        w = tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise InputError(f"bad weight {text!r}") from None
    if len(w) != g.grading.arity:
        raise InputError(f"weight needs {g.grading.arity} entries")
    return g.grading.normalize(w)


def _scalar(D, x):
    return D.format(x)


def _wstr(w):
    return "none" if w is None else ",".join(str(x) for x in w)


# --- commands -------------------------------------------------------------------------

def cmd_check(args):
    g, B, label = load(args.file)
    rep = {"source": label, "dim": g.dim, "domain": g.domain.describe(), "jacobi": True,
           "graded": g.grading is not None}
    lines = [f"{label}: Lie algebra of dimension {g.dim} over {g.domain.describe()}",
             "Jacobi identity: holds"]
    if g.grading is not None:
        G = g.grading
        lines.append(f"grading by Z^{G.free_rank}" + "".join(f" x Z/{m}" for m in G.torsion)
                     + ": compatible")
    if g.domain.is_field:
        s = series(g)
        rep.update(nilpotent=s.nilpotent, nilpotency_length=s.nilpotency_length,
                   solvable=s.solvable, solvability_length=s.solvability_length,
                   lower_central_dims=s.dims)
        lines.append("nilpotent: " + (f"yes, length {s.nilpotency_length}" if s.nilpotent else "no"))
        lines.append("solvable: " + (f"yes, length {s.solvability_length}" if s.solvable else "no"))
    if B is not None:
        inv = B.is_invariant(g)
        nd = B.is_nondegenerate() if g.domain.is_field else None
        rep.update(form_invariant=inv, form_nondegenerate=nd)
        lines.append(f"declared form: {'invariant' if inv else 'NOT invariant'}"
                     + ("" if nd is None else f", {'nondegenerate' if nd else 'degenerate'}"))
    return rep, lines, 0


def cmd_betti(args):
    g, _, label = load(args.file)
    w = parse_weight(args.weight, g)
    b = betti_numbers(g, weight=w).betti
    rep = {"source": label, "weight": w, "betti": b}
    return rep, [f"Betti numbers (degrees 0..{len(b) - 1}): " + " ".join(map(str, b))], 0


def cmd_kill(args):
    g, _, label = load(args.file)
    K = killing_module(g, max_filtration=args.filtration)
    top = args.filtration if args.filtration is not None else max(K.filtration)
    filt = {i: K.filtration_dim(i) for i in range(2, top + 1)}
    rep = {"source": label, "kill_dim": K.dim, "filtration": {str(i): d for i, d in filt.items()}}
    lines = [f"dim Kill: {K.dim}"]
    lines += [f"dim Kill^({i}): {d}" for i, d in filt.items() if i >= 3]
    if args.witness:
        reps = []
        d = g.domain.dim
        for col in K.quotient.free_columns:
            p, m = K.pairs[col // d], col % d
            term = f"{g.names[p[0]]}.{g.names[p[1]]}" + (f" (ring basis {m})" if d > 1 else "")
            reps.append(term)
        rep["basis"] = reps
        lines.append("basis of Kill (classes of): " + ", ".join(reps))
    return rep, lines, 0


def _koszul_witness(g, w, kill):
    """A 3-cycle whose Koszul class is nonzero, or None."""
    if not g.domain.is_field:
        return None
    basis, cycles = cycle_space(g, 3, w)
    for z in cycles:
        c = ChainVector(g.domain, g.dim, 3, {basis[k]: x for k, x in z.items()})
        if any(not g.domain.is_zero(x) for x in eta_on_chain(g, c, kill)):
            return c
    return None


def cmd_koszul(args):
    g, _, label = load(args.file)
    w = parse_weight(args.weight, g)
    R = reduced_koszul(g, weight=w)
    rep = {"source": label, "weight": w, "rank": R.rank, "kill_dim": R.kill.dim,
           "cycle_dim": R.cycle_dim}
    lines = [f"reduced Koszul rank: {R.rank}",
             f"dim Kill{'' if w is None else ' (weight ' + _wstr(w) + ')'}: {R.kill.dim}",
             f"dim Z_3: {R.cycle_dim}"]
    if args.witness and R.rank:
        c = _koszul_witness(g, w, R.kill)
        if c is not None:
            txt = c.format(g)
            rep["witness"] = txt
            lines.append(f"cycle with nonzero class: {txt}")
    return rep, lines, 0


def _matrix_lines(D, M):
    return ["  [" + " ".join(_scalar(D, x) for x in row) + "]" for row in M]


def cmd_forms(args):
    g, _, label = load(args.file)
    forms = invariant_forms(g)
    rep = {"source": label, "dim": len(forms)}
    lines = [f"dim invariant symmetric forms: {len(forms)}"]
    if args.witness:
        rep["forms"] = [[[_scalar(g.domain, x) for x in r] for r in B.matrix] for B in forms]
        for k, B in enumerate(forms, start=1):
            lines.append(f"form {k}:")
            lines += _matrix_lines(g.domain, B.matrix)
    return rep, lines, 0


def cmd_quadrable(args):
    g, _, label = load(args.file)
    q = quadrable_probe(g)
    rep = {"source": label, "verdict": q.verdict, "quadrable": q.quadrable}
    lines = [f"quadrable: {q.verdict}"]
    if args.witness and q.form is not None:
        rep["form"] = [[_scalar(g.domain, x) for x in r] for r in q.form.matrix]
        lines.append("nondegenerate invariant form:")
        lines += _matrix_lines(g.domain, q.form.matrix)
    return rep, lines, 0


def cmd_current_h2(args):
    from .current import h2_graded_report
    g, _, label = load(args.file)
    try:
        A = make_domain(args.ring)
    except (ValueError, LieKoszulError) as exc:
        raise InputError(f"bad ring {args.ring!r}: {exc}") from None
    rep_obj = h2_graded_report(A, g)
    ah = rep_obj.algebra
    rep = {"source": label, "ring": A.describe(), "h2_total": rep_obj.h2_total,
           "all_hold": rep_obj.all_hold,
           "algebra": {"HH1": ah.HH1, "HC1": ah.HC1, "I_A": ah.I_A, "A0": ah.A0},
           "weights": []}
    lines = [f"ring {A.describe()}: HH1 {ah.HH1}, HC1 {ah.HC1}, I_A {ah.I_A}, A0 {ah.A0}"]
    for w, x in sorted(rep_obj.weights.items(), key=lambda kv: (kv[0] is None, kv[0] or ())):
        bad = [c.name for c in x.checks if not c.holds]
        rep["weights"].append({"weight": w, "h2": x.h2, "kill": x.kill, "kill3": x.kill3,
                               "eta_rank": x.eta_rank,
                               "checks": {c.name: c.holds for c in x.checks if c.applicable}})
        lines.append(f"weight {_wstr(w)}: dim H2 = {x.h2}, identities "
                     + ("hold" if not bad else "FAIL: " + ", ".join(bad)))
    lines.append(f"dim H2 total: {rep_obj.h2_total}")
    return rep, lines, 0 if rep_obj.all_hold else 1


def cmd_catalog(args):
    if args.action == "list":
        return {"names": list(NAMES)}, list(NAMES), 0
    if not args.name:
        raise InputError("catalog emit needs a name")
    e = catalog_make(args.name)
    text = emit_lie(LieFile.from_algebra(e.graded(), e.form), comment=e.name)
    return {"name": e.name, "text": text}, text.rstrip("\n").splitlines(), 0


def cmd_verify(args):
    from .verify import run_checks, select
    try:
        select(args.only)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    results = run_checks(args.only)
    lines = []
    for r in results:
        lines.append(f"[{'PASS' if r.passed else 'FAIL'}] {r.tag} (criterion {r.criterion}): "
                     f"{r.data.get('title', '')}")
        lines += ["    " + ln for ln in r.lines]
    ok = all(r.passed for r in results)
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    rep = {"passed": ok, "checks": [{"tag": r.tag, "criterion": r.criterion, "passed": r.passed,
                                     "lines": r.lines} for r in results]}
    return rep, lines, 0 if ok else 1


# --- argument parsing ---------------------------------------------------------------

def build_parser():
    def flags(default):
        c = argparse.ArgumentParser(add_help=False)
        c.add_argument("--json", action="store_true", default=default,
                       help="machine-readable output")
        c.add_argument("--witness", action="store_true", default=default,
                       help="print exact vectors")
        return c

    # subcommands suppress their defaults so flags given before the command survive
    common = flags(argparse.SUPPRESS)
    p = argparse.ArgumentParser(prog="liekoszul", parents=[flags(False)],
                                description="Exact homology and Koszul maps of Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, file=True):
        s = sub.add_parser(name, parents=[common], help=help_text)
        if file:
            s.add_argument("file", help="a .lie file or catalog:<name>")
        s.set_defaults(fn=fn)
        return s

    add("check", cmd_check, "validate a file and summarize the algebra")
    add("betti", cmd_betti, "Betti numbers").add_argument("--weight")
    add("kill", cmd_kill, "Killing module and its filtration").add_argument(
        "--filtration", type=int, metavar="K")
    add("koszul", cmd_koszul, "rank of the reduced Koszul map").add_argument("--weight")
    add("forms", cmd_forms, "invariant symmetric bilinear forms")
    add("quadrable", cmd_quadrable, "search for a nondegenerate invariant form")
    add("current-h2", cmd_current_h2, "H2 of A (x) l per weight").add_argument(
        "--ring", required=True, help='e.g. "truncated Q 3"')
    s = add("catalog", cmd_catalog, "list or emit catalog algebras", file=False)
    s.add_argument("action", choices=["list", "emit"])
    s.add_argument("name", nargs="?")
    add("verify-paper", cmd_verify, "recompute all reference facts", file=False).add_argument(
        "--only", metavar="TAG")
    return p


def _jsonable(x):
    if isinstance(x, tuple):
        return list(x)
    return str(x)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if getattr(args, "filtration", None) is not None and args.filtration < 2:
        print("error: --filtration must be at least 2", file=sys.stderr)
        return 2
    try:
        rep, lines, code = args.fn(args)
    except (InputError, UnknownName, LieKoszulError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownName) and exc.args else str(exc)
        if args.json:
            print(json.dumps({"error": msg, "type": type(exc).__name__}, sort_keys=True))
        print(f"error: {msg}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(rep, sort_keys=True, indent=2, default=_jsonable))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
