"""Command-line front end.

Every operation of the package is reachable through a subcommand, with
deterministic text, JSON, or DOT output.  Exit status: 0 on success, 1 on
domain errors (bad q, unparsable monomial, violated preconditions), 2 when
--strict is given and any produced answer was cap-limited rather than
stability-verified.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import checks as checks_mod
from .engine import (CapPolicy, Clone, clone_to_json, equal, generate, join,
                     meet, member, subset)
from .errors import MonocloneError
from .fields import FieldParam
from .hasse import diagram_to_dot, diagram_to_json, node_label
from .lattice import (ascending_chain, atoms, coatoms, divisor_interval,
                      enumerate_lattice, idempotent_interval,
                      lattice_is_finite, single_generator)
from .minorset import minorset_to_json, phi_minor
from .monomials import monomial_to_json, parse_monomial
from .semiaffine import (enumerate_semiaffine_lattice, fiber,
                         linear_clone_to_json, linear_closure, parse_form,
                         phi_affine)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _cap_policy(args, fp) -> CapPolicy | None:
    cap = args.cap
    if cap is None:
        env = os.environ.get("MONOCLONE_CAP")
        cap = int(env) if env else None
    if cap is None:
        return None
    return CapPolicy(per_residue_cap=max(cap, 2 * fp.modulus))


def _parse_gens(args, fp, attr="monomials"):
    texts = getattr(args, attr)
    return [parse_monomial(t, fp) for t in texts]


def _print_clone(clone: Clone, args, out) -> bool:
    if args.format == "json":
        out.write(_dump_json(clone_to_json(clone)))
    else:
        out.write(f"clone over F_{clone.fp.q}, cap {clone.cap.per_residue_cap}, "
                  f"{'stable' if clone.stable else 'cap-limited'}\n")
        out.write("generators: " + node_label(clone) + "\n")
        out.write(f"members ({len(clone.members)}):\n")
        for m in clone.sorted_members():
            out.write(f"  {m}\n")
    return not clone.stable


def cmd_closure(args, out):
    fp = FieldParam.from_q(args.q)
    clone = generate(_parse_gens(args, fp), fp, _cap_policy(args, fp))
    return _print_clone(clone, args, out)


def cmd_member(args, out):
    fp = FieldParam.from_q(args.q)
    target = parse_monomial(args.monomial, fp)
    clone = generate([parse_monomial(t, fp) for t in args.inside], fp,
                     _cap_policy(args, fp))
    result = member(target, clone)
    if args.format == "json":
        out.write(_dump_json({"member": result.value,
                              "confidence": result.confidence}))
    else:
        out.write(("true" if result.value else "false") + "\n")
    return result.confidence != "exact"


def _two_clones(args, fp):
    cap = _cap_policy(args, fp)
    left = generate([parse_monomial(t, fp) for t in args.left], fp, cap)
    right = generate([parse_monomial(t, fp) for t in args.right], fp, cap)
    return left, right


def cmd_compare(args, out):
    fp = FieldParam.from_q(args.q)
    left, right = _two_clones(args, fp)
    eq = equal(left, right)
    lr = subset(left, right)
    rl = subset(right, left)
    if eq.value:
        verdict = "equal"
    elif lr.value:
        verdict = "left < right"
    elif rl.value:
        verdict = "right < left"
    else:
        verdict = "incomparable"
    unstable = eq.confidence != "exact"
    if args.format == "json":
        out.write(_dump_json({"verdict": verdict, "confidence": eq.confidence}))
    else:
        out.write(verdict + "\n")
    return unstable


def cmd_join(args, out):
    fp = FieldParam.from_q(args.q)
    left, right = _two_clones(args, fp)
    return _print_clone(join(left, right), args, out)


def cmd_meet(args, out):
    fp = FieldParam.from_q(args.q)
    left, right = _two_clones(args, fp)
    return _print_clone(meet(left, right), args, out)


def _print_diagram(dia, args, out, extra=None):
    if args.format == "dot":
        out.write(diagram_to_dot(dia))
    elif args.format == "json":
        payload = diagram_to_json(dia, lambda g: str(g))
        if extra:
            payload.update(extra)
        out.write(_dump_json(payload))
    else:
        kind = "complete" if dia.complete else "partial"
        out.write(f"{dia.node_count()} clones ({kind} enumeration)\n")
        for i, node in enumerate(dia.nodes):
            covers = ", ".join(str(j) for j in dia.covers_of(i)) or "-"
            out.write(f"  [{i}] <{node_label(node)}> size {len(node.members)}"
                      f" covered-by {covers}\n")
        if extra:
            for k, v in extra.items():
                out.write(f"{k}: {v}\n")
    return any(not getattr(n, "stable", True) for n in dia.nodes)


def cmd_lattice(args, out):
    fp = FieldParam.from_q(args.q)
    dia = enumerate_lattice(fp, width_bound=args.width_bound,
                            cap=_cap_policy(args, fp))
    extra = {"finite": lattice_is_finite(fp)}
    if dia.chain_witness:
        extra["chain_witness"] = ", ".join(str(m) for m in dia.chain_witness)
    return _print_diagram(dia, args, out, extra)


def cmd_atoms(args, out):
    fp = FieldParam.from_q(args.q)
    result = atoms(fp, _cap_policy(args, fp))
    if args.format == "json":
        out.write(_dump_json({"atoms": [clone_to_json(c) for c in result]}))
    else:
        for c in result:
            out.write(f"<{node_label(c)}>\n")
    return any(not c.stable for c in result)


def cmd_coatoms(args, out):
    fp = FieldParam.from_q(args.q)
    descriptors = coatoms(fp)
    if args.format == "json":
        payload = []
        for d in descriptors:
            entry = {"kind": d.kind}
            if d.kind == "interval":
                entry["prime"] = d.prime
            else:
                entry["prime_indices"] = list(d.D)
                entry["primes"] = [fp.primes[i - 1] for i in d.D]
            payload.append(entry)
        out.write(_dump_json({"count": len(descriptors), "coatoms": payload}))
    else:
        out.write(f"{len(descriptors)} coatoms\n")
        for d in descriptors:
            out.write(f"  {d.label(fp)}\n")
    return False


def cmd_interval(args, out):
    fp = FieldParam.from_q(args.q)
    di = divisor_interval(fp, _cap_policy(args, fp))
    if args.format == "json":
        out.write(_dump_json({
            "divisors": list(di.divisors),
            "anti_isomorphic": di.anti_isomorphic,
            "exact": di.exact,
            "inclusions": [[a, b, di.inclusions[(a, b)]]
                           for a in di.divisors for b in di.divisors],
        }))
    else:
        out.write(f"divisors of {fp.modulus}: "
                  + " ".join(map(str, di.divisors)) + "\n")
        out.write("inclusion matches divisibility: "
                  f"{di.anti_isomorphic}\n")
    return not di.exact


def cmd_chain(args, out):
    fp = FieldParam.from_q(args.q)
    chain = ascending_chain(fp, args.length, _cap_policy(args, fp))
    if args.format == "json":
        out.write(_dump_json({"chain": [clone_to_json(c) for c in chain]}))
    else:
        out.write(" < ".join(f"<{node_label(c)}>" for c in chain) + "\n")
    return any(not c.stable for c in chain)


def cmd_idempotent(args, out):
    fp = FieldParam.from_q(args.q)
    dia = idempotent_interval(fp, _cap_policy(args, fp),
                              width_bound=args.width_bound)
    return _print_diagram(dia, args, out)


def cmd_single_gen(args, out):
    fp = FieldParam.from_q(args.q)
    m1 = parse_monomial(args.m1, fp)
    m2 = parse_monomial(args.m2, fp)
    m = single_generator(m1, m2, fp)
    if args.format == "json":
        out.write(_dump_json(monomial_to_json(m, fp)))
    else:
        out.write(str(m) + "\n")
    return False


def cmd_phi(args, out):
    fp = FieldParam.from_q(args.q)
    clone = generate(_parse_gens(args, fp), fp, _cap_policy(args, fp))
    lc = phi_affine(clone)
    if args.format == "json":
        out.write(_dump_json(linear_clone_to_json(lc)))
    else:
        out.write(f"linear clone over Z_{lc.modulus}, "
                  f"{'stable' if lc.stable else 'cap-limited'}\n")
        for f in lc.sorted_members():
            out.write(f"  {f}\n")
    return not lc.stable


def cmd_semiaffine_lattice(args, out):
    modulus = args.modulus if args.modulus is not None else args.q - 1
    if modulus < 1:
        raise MonocloneError("modulus must be positive")
    dia = enumerate_semiaffine_lattice(modulus)
    if args.format == "json":
        payload = diagram_to_json(dia, lambda g: str(g))
        payload["modulus"] = modulus
        out.write(_dump_json(payload))
        return False
    return _print_diagram(dia, args, out, {"modulus": modulus})


def cmd_fiber(args, out):
    fp = FieldParam.from_q(args.q)
    dia = enumerate_lattice(fp)
    if args.forms:
        forms = [parse_form(t, fp.modulus) for t in args.forms]
        lc = linear_closure(forms, fp.modulus)
        hits = fiber(lc, fp, diagram=dia)
        payload = {"fiber": [node_label(c) for c in hits]}
    else:
        sa = enumerate_semiaffine_lattice(fp.modulus)
        payload = {"fibers": [
            {"linear": node_label(node),
             "clones": [node_label(c) for c in fiber(node, fp, diagram=dia)]}
            for node in sa.nodes]}
    if args.format == "json":
        out.write(_dump_json(payload))
    else:
        if "fiber" in payload:
            for label in payload["fiber"]:
                out.write(f"<{label}>\n")
        else:
            for row in payload["fibers"]:
                out.write(f"<{row['linear']}> <- "
                          + ", ".join(f"<{c}>" for c in row["clones"]) + "\n")
    return False


def cmd_minorset(args, out):
    fp = FieldParam.from_q(args.q)
    clone = generate(_parse_gens(args, fp), fp, _cap_policy(args, fp))
    s = phi_minor(clone)
    if args.format == "json":
        out.write(_dump_json(minorset_to_json(s)))
    else:
        out.write(f"{len(s.points)} points, bound {s.bound}\n")
        for p in sorted(s.points):
            out.write("  " + " ".join(map(str, p)) + "\n")
    return not clone.stable


def cmd_check(args, out):
    results = checks_mod.run_battery_for_q(args.q)
    failures = 0
    for r in results:
        out.write(r.line() + "\n")
        failures += 0 if r.ok else 1
    out.write(f"{len(results)} checks, {failures} failures\n")
    if failures:
        raise MonocloneError(f"{failures} property checks failed")
    return False


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monoclone",
        description="clones of monomial functions over F_q")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, q_required=True):
        p.add_argument("--q", type=int, required=q_required,
                       help="field size (prime power)")
        p.add_argument("--format", choices=("text", "json", "dot"),
                       default="text")
        p.add_argument("--cap", type=int, default=None,
                       help="per-residue count cap override")
        p.add_argument("--strict", action="store_true",
                       help="exit 2 when a result is cap-limited")
        return p

    p = common(sub.add_parser("closure", help="close a generator set"))
    p.add_argument("monomials", nargs="+")
    p.set_defaults(func=cmd_closure)

    p = common(sub.add_parser("member", help="decide membership"))
    p.add_argument("monomial")
    p.add_argument("--in", dest="inside", action="append", required=True,
                   help="generator of the clone (repeatable)")
    p.set_defaults(func=cmd_member)

    for verb, fn in (("compare", cmd_compare), ("join", cmd_join),
                     ("meet", cmd_meet)):
        p = common(sub.add_parser(verb))
        p.add_argument("--left", action="append", required=True)
        p.add_argument("--right", action="append", required=True)
        p.set_defaults(func=fn)

    p = common(sub.add_parser("lattice", help="enumerate the clone lattice"))
    p.add_argument("--width-bound", type=int, default=None)
    p.set_defaults(func=cmd_lattice)

    p = common(sub.add_parser("atoms"))
    p.set_defaults(func=cmd_atoms)
    p = common(sub.add_parser("coatoms"))
    p.set_defaults(func=cmd_coatoms)
    p = common(sub.add_parser("interval", help="divisor interval at the top"))
    p.set_defaults(func=cmd_interval)

    p = common(sub.add_parser("chain", help="strictly ascending chain"))
    p.add_argument("length", type=int)
    p.set_defaults(func=cmd_chain)

    p = common(sub.add_parser("idempotent", help="idempotent interval"))
    p.add_argument("--width-bound", type=int, default=None)
    p.set_defaults(func=cmd_idempotent)

    p = common(sub.add_parser("single-gen"))
    p.add_argument("m1")
    p.add_argument("m2")
    p.set_defaults(func=cmd_single_gen)

    p = common(sub.add_parser("phi", help="linear-form image of a clone"))
    p.add_argument("monomials", nargs="+")
    p.set_defaults(func=cmd_phi)

    p = common(sub.add_parser("semiaffine-lattice"), q_required=False)
    p.add_argument("--modulus", type=int, default=None)
    p.set_defaults(func=cmd_semiaffine_lattice)

    p = common(sub.add_parser("fiber"))
    p.add_argument("forms", nargs="*",
                   help="linear forms like 'y1+2*y2' (empty: all fibers)")
    p.set_defaults(func=cmd_fiber)

    p = common(sub.add_parser("minorset"))
    p.add_argument("monomials", nargs="+")
    p.set_defaults(func=cmd_minorset)

    p = common(sub.add_parser("check", help="run the property battery"))
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "q", None) is None and args.verb == "semiaffine-lattice" \
            and args.modulus is None:
        print("error: semiaffine-lattice needs --modulus or --q",
              file=sys.stderr)
        return 1
    try:
        unstable = args.func(args, sys.stdout)
    except MonocloneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.strict and unstable:
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
