"""Command line interface: ``qhtpy <command> ...``.

Exit codes: 0 when every requested check passes, 1 on a mismatch, 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .abelian import AbelianGroupClass
from .cache import ResultCache

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload, text: str | None = None):
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text if text is not None else json.dumps(payload, sort_keys=True, indent=2))


def _ints(text: str) -> list[int]:
    """``3,5,7`` or ``1..3``."""
    out = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


# --- quandle ------------------------------------------------------------------------

def cmd_quandle(args) -> int:
    from .quandle import (connected_components, inn_structure_check, inner_group,
                          quandle_from_spec, regularity)
    X = quandle_from_spec(args.spec)
    comps = connected_components(X)
    info = {"spec": args.spec, "order": X.n, "components": len(comps)}
    ok = True
    if X.alexander is not None:
        reg = regularity(X.alexander)
        info.update({"e": reg.e, "connected": reg.connected, "regular": reg.regular})
    if args.inn:
        if X.alexander is not None and info.get("connected"):
            rep = inn_structure_check(X.alexander)
            info.update({"inn_order": rep.order, "semidirect_law": rep.passed,
                         "witness": rep.witness})
            ok = rep.passed
        else:
            info["inn_order"] = inner_group(X).order
    if args.table:
        info["table"] = X.table.tolist()
    text = "\n".join(f"{k}: {v}" for k, v in info.items())
    _emit(args, info, text)
    return EXIT_OK if ok else EXIT_MISMATCH


# --- homology -----------------------------------------------------------------------

def cmd_homology(args) -> int:
    from .chains import build_complex, homology, homology_json
    from .quandle import inner_action, point_action, quandle_from_spec, self_action
    X = quandle_from_spec(args.spec)
    Y = {"pt": point_action, "X": self_action, "Inn": inner_action}[args.coefficients](X)
    degrees = _ints(args.degree)
    C = build_complex(X, Y, args.variant, n_max=args.n_max or max(degrees) + 1)
    records = []
    for n in degrees:
        if args.prime:
            records.append({"quandle": args.spec, "variant": args.variant,
                            "coefficients": args.coefficients, "degree": n,
                            "prime": args.prime, "dimension": homology(C, n, args.prime)})
        else:
            records.append(homology_json(C, n, args.spec))
    expected_ok = True
    if args.expect:
        want = AbelianGroupClass.parse(args.expect)
        got = homology(C, degrees[-1])
        expected_ok = got == want
    lines = []
    for r in records:
        if "dimension" in r:
            lines.append(f"dim H_{r['degree']}^{args.variant}(F_{args.prime}) = {r['dimension']}")
        else:
            g = AbelianGroupClass.from_diagonal(r["rank"], r["torsion"])
            lines.append(f"H_{r['degree']}^{args.variant} = {g}")
    _emit(args, records if len(records) > 1 else records[0], "\n".join(lines))
    return EXIT_OK if expected_ok else EXIT_MISMATCH


# --- homotopy -----------------------------------------------------------------------

def cmd_homotopy(args) -> int:
    from . import homotopy as ht
    if args.target == "ranks":
        r2, r3 = ht.rational_ranks(int(args.spec))
        _emit(args, {"components": int(args.spec), "pi2_rank": r2, "pi3Q_rank": r3},
              f"rank pi2(BQX) = {r2}\nrank pi3Q(BX) = {r3}")
        return EXIT_OK
    if args.target == "dihedral-power":
        h = int(args.spec)
        d = ht.dihedral_power_formula(h)
        _emit(args, {"h": h, "dim": d}, f"dim pi2(BQX) (x) F_p = {d}")
        return EXIT_OK
    fn = {"pi2q": ht.pi2_BQ, "pi2": ht.pi2_BX, "pi3q": ht.pi3Q}[args.target]
    store = ResultCache()
    try:
        res = fn(args.spec, ht.QuandleHomologyCache(args.spec, store if store.enabled else None))
    except (ht.NotRegular, ht.EvenOrderWithNonzeroH2, ht.HypothesisFailed) as exc:
        _emit(args, {"target": args.target, "refused": type(exc).__name__, "reason": str(exc)},
              f"refused: {exc}")
        return EXIT_MISMATCH
    _emit(args, res.to_json(), f"{res.target} = {res.value}   [{res.derivation}]")
    return EXIT_OK


# --- cocycles -----------------------------------------------------------------------

def _field_and_omega(args):
    from .ffield import parse_field
    text = args.field_opt or args.field
    if not text:
        raise UsageError("cocycles needs a field, e.g. --field gf:3^2:t^2+1")
    F = parse_field(text)
    return F, F.parse(args.omega)


def cmd_cocycles(args) -> int:
    from .cocycles import build_I, evaluate, field_quandle, is_cocycle
    F, w = _field_and_omega(args)
    rep = build_I(F, w)
    if args.action == "list":
        lines = [f"b2 = {rep.b2}, b3 = {rep.b3}, |I| = {rep.size}"]
        for m in rep.members:
            poly = str(m.polynomial) if m.explicit else f"(case {m.case}, no explicit polynomial)"
            lines.append(f"  {m.label}: {poly}")
        _emit(args, rep.to_json(), "\n".join(lines))
        return EXIT_OK
    X = field_quandle(F, w)
    if args.action == "verify":
        results = []
        for m in rep.explicit_members():
            chk = is_cocycle(m.polynomial, X)
            results.append({"member": m.label, "cocycle": chk.ok, "witness": chk.witness})
        ok = all(r["cocycle"] for r in results)
        lines = [f"{r['member']}: {'ok' if r['cocycle'] else 'FAIL ' + str(r['witness'])}" for r in results]
        _emit(args, {"results": results, "passed": ok}, "\n".join(lines))
        return EXIT_OK if ok else EXIT_MISMATCH
    # eval
    member = next((m for m in rep.members if m.label == args.member), None)
    if member is None or not member.explicit:
        raise UsageError(f"no explicit member {args.member!r}")
    triple = [F.parse(t) for t in args.triple.split(",")]
    if len(triple) != 3:
        raise UsageError("--triple needs three field elements")
    v = evaluate(member.polynomial, X, triple)
    _emit(args, {"member": member.label, "triple": args.triple, "value": F.format(v)}, F.format(v))
    return EXIT_OK


# --- links --------------------------------------------------------------------------

def _load_cocycle(ref: str, X):
    """``theta`` (dihedral quandle of prime order), a member label of the cocycle
    basis, ``2:<a>,<b>`` for the 2-cocycle ``U0^a U1^b``, or a JSON file."""
    from .cocycles import UPolynomial, build_I, theta
    from .ffield import parse_field
    from .links import FieldValues, polynomial_table, polynomial_table_2
    spec = X.alexander
    if spec is None or spec.fq is None:
        raise UsageError("state sums need a quandle of the form gf:<p>^<h>:omega=<w>")
    F, w = spec.fq, spec.omega
    if Path(ref).exists():
        data = json.loads(Path(ref).read_text())
        f = UPolynomial.from_json(parse_field(data["field"]), data["terms"])
        if f.field != F:
            raise UsageError("cocycle file is over a different field")
        deg = int(data.get("degree", 3))
    elif ref == "theta":
        if F.h != 1 or w != F.neg(1):
            raise UsageError("theta needs the dihedral quandle gf:<p>:omega=-1")
        f, deg = theta(F.p), 3
    elif ref.startswith("2:"):
        a, b = (int(s) for s in ref[2:].split(","))
        f, deg = UPolynomial.monomial(F, a, b, 0), 2
    else:
        rep = build_I(F, w)
        member = next((m for m in rep.members if m.label == ref and m.explicit), None)
        if member is None:
            raise UsageError(f"unknown cocycle {ref!r}")
        f, deg = member.polynomial, 3
    table = polynomial_table(f) if deg == 3 else polynomial_table_2(f)
    return deg, table, FieldValues(F)


def cmd_link(args) -> int:
    from .links import (coloring_count, coloring_count_linear, cocycle_invariant_2,
                        load_diagram, shadow_colorings, shadow_invariant_3, NotACocycle)
    from .quandle import quandle_from_spec
    X = quandle_from_spec(args.quandle)
    D = load_diagram(args.diagram)
    if args.action == "color":
        n = coloring_count(X, D)
        out = {"diagram": D.name or args.diagram, "quandle": args.quandle, "colorings": n,
               "shadow_colorings": len(shadow_colorings(X, D))}
        ok = True
        if X.alexander is not None:
            lin = coloring_count_linear(X, D)
            out["colorings_linear"] = lin
            ok = lin == n
        _emit(args, out, "\n".join(f"{k}: {v}" for k, v in out.items()))
        return EXIT_OK if ok else EXIT_MISMATCH
    if not args.cocycle:
        raise UsageError("link invariant needs --cocycle")
    deg, table, group = _load_cocycle(args.cocycle, X)
    try:
        if deg == 2:
            S = cocycle_invariant_2(D, X, table, group)
        else:
            S = shadow_invariant_3(D, X, table, group)
    except NotACocycle as exc:
        _emit(args, {"error": "NotACocycle", "reason": str(exc)}, f"not a cocycle: {exc}")
        return EXIT_MISMATCH
    _emit(args, {"diagram": D.name or args.diagram, "quandle": args.quandle,
                 "cocycle": args.cocycle, "state_sum": S.to_json()}, str(S))
    return EXIT_OK


# --- checks -------------------------------------------------------------------------

def cmd_check(args) -> int:
    from . import checks
    name = args.name
    if name == "splitting":
        rep = checks.splitting_report(args.spec, primes=tuple(_ints(args.primes or "")))
    elif name == "covering-shift":
        rep = checks.covering_shift_check(args.spec, tuple(_ints(args.degrees or "1,2")))
    elif name == "quandle-shift":
        rep = checks.quandle_shift_check(args.spec, tuple(_ints(args.degrees or "1,2")))
    elif name == "u-coordinates":
        rep = checks.u_coordinate_check(args.spec, max(_ints(args.degrees or "2")))
    elif name == "torsion":
        rep = checks.torsion_annihilation_check(args.spec, tuple(_ints(args.degrees or "1..3")))
    elif name == "late-degenerate":
        try:
            rep = checks.late_degenerate_check(args.spec)
        except checks.HypothesisFailed as exc:
            _emit(args, {"check": name, "skipped": True, "reason": str(exc)}, f"skipped: {exc}")
            return EXIT_OK
    else:
        raise UsageError(f"unknown check {name!r}")
    lines = [f"{'ok  ' if it['ok'] else 'FAIL'} {it['check']}" + (f"  ({it['lhs']})" if it["lhs"] else "")
             for it in rep.items]
    _emit(args, rep.to_json(), "\n".join(lines))
    return EXIT_OK if rep.passed else EXIT_MISMATCH


# --- tables -------------------------------------------------------------------------

def cmd_tables(args) -> int:
    from . import tables
    store = ResultCache()
    if args.which == "table1":
        rows = tables.table1(store if store.enabled else None)
        ok = all(r.passed for r in rows)
        _emit(args, {"rows": [r.to_json() for r in rows], "passed": ok}, tables.render_table(rows))
        return EXIT_OK if ok else EXIT_MISMATCH
    primes = _ints(args.primes)
    degrees = _ints(args.degrees)
    omegas = args.omega.split(",") if args.omega else None
    records = tables.sweep(primes, degrees, omegas, store)
    if args.json:
        print(json.dumps(records, sort_keys=True, indent=2))
    else:
        for r in records:
            flags = f"  [{', '.join(r['flags'])}]" if r["flags"] else ""
            print(f"q={r['q']} omega={r['omega']}: b2={r['b2']} b3={r['b3']} "
                  f"dim pi2 (x) F_p={r['pi2_dim_mod_p']}{flags}")
    if store.corrupted:
        print(f"recomputed {len(store.corrupted)} corrupted cache entries", file=sys.stderr)
    return EXIT_OK


# --- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qhtpy", description="Quandle homology and homotopy computations")
    ap.add_argument("--json", action="store_true", help="machine readable output")
    # also accept --json after the subcommand without clobbering the global flag
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quandle", parents=[common], help="structure of a quandle")
    p.add_argument("spec")
    p.add_argument("--inn", action="store_true", help="enumerate Inn(X) and check the semidirect law")
    p.add_argument("--table", action="store_true")
    p.set_defaults(func=cmd_quandle)

    p = sub.add_parser("homology", parents=[common], help="rack/quandle homology")
    p.add_argument("spec")
    p.add_argument("--variant", choices=["R", "D", "Q", "L"], default="Q")
    p.add_argument("--degree", default="2,3", help="e.g. 2,3 or 1..4")
    p.add_argument("--coefficients", choices=["pt", "X", "Inn"], default="pt")
    p.add_argument("--prime", type=int, default=None)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--expect", default=None, help="expected group in the last degree")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("homotopy", parents=[common], help="homotopy groups from homology")
    p.add_argument("target", choices=["pi2q", "pi2", "pi3q", "ranks", "dihedral-power"])
    p.add_argument("spec", help="quandle spec, or a number for ranks / dihedral-power")
    p.set_defaults(func=cmd_homotopy)

    p = sub.add_parser("cocycles", parents=[common], help="explicit 3-cocycles of F_q[T]/(T - omega)")
    p.add_argument("action", choices=["list", "verify", "eval"])
    p.add_argument("field", nargs="?", default=None, help="gf:<p>^<h>[:<modulus>]")
    p.add_argument("--field", dest="field_opt", default=None, help="same as the positional field")
    p.add_argument("--omega", required=True)
    p.add_argument("--member", default=None)
    p.add_argument("--triple", default=None)
    p.set_defaults(func=cmd_cocycles)

    p = sub.add_parser("link", parents=[common], help="colourings and state sums of link diagrams")
    p.add_argument("action", choices=["color", "invariant"])
    p.add_argument("--quandle", required=True)
    p.add_argument("--diagram", required=True, help="builtin name or PD file")
    p.add_argument("--cocycle", default=None)
    p.set_defaults(func=cmd_link)

    p = sub.add_parser("check", parents=[common], help="consistency identities between complexes")
    p.add_argument("name", choices=["splitting", "covering-shift", "quandle-shift", "u-coordinates",
                                    "torsion", "late-degenerate"])
    p.add_argument("spec")
    p.add_argument("--degrees", default=None)
    p.add_argument("--primes", default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("tables", parents=[common], help="table reproduction and sweeps")
    p.add_argument("which", choices=["table1", "sweep"])
    p.add_argument("--primes", default="3")
    p.add_argument("--degrees", default="1..2")
    p.add_argument("--omega", default=None, help="comma separated omega values")
    p.set_defaults(func=cmd_tables)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
