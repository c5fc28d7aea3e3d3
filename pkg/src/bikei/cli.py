"""Command-line interface: ``bikei <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (failed axiom, invalid
cocycle, exceeded guard) and 2 on a usage or parse error.
"""

import argparse
import json
import sys

from .algebra import enumerate_bikei, load_bikei, render_bikei, verify_axioms
from .chain_complex import boundary_matrix, degenerate_generators, render_matrix
from .diagram import MOVES, apply_move, find_sites, load_diagram, render_diagram
from .errors import DomainError, GuardExceeded, ParseError
from .homology import (
    Cocycle2,
    bikei_cohomology,
    bikei_homology,
    is_cocycle_2,
    load_cocycle,
    mochizuki_cocycle,
    render_cocycle,
)
from .invariant import cocycle_invariant, enumerate_colorings

__all__ = ["main", "run"]


class UsageError(Exception):
    pass


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit one JSON object per result")
    p.add_argument("--max-elements", type=int, default=4, metavar="N", help="largest bikei order to enumerate (4)")
    p.add_argument("--max-degree", type=int, default=4, metavar="N", help="largest chain degree (4)")
    p.add_argument("--max-nodes", type=int, default=10**7, metavar="N", help="search node budget (10^7)")
    return p


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="bikei", description="Finite bikei, their homology and cocycle invariants.")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("check", parents=[common], help="verify the bikei axioms")
    p.add_argument("bikei")

    p = sub.add_parser("enum", parents=[common], help="bikei of order n up to isomorphism")
    p.add_argument("n", type=int)

    p = sub.add_parser("hom", parents=[common], help="integral homology H_n")
    p.add_argument("bikei")
    p.add_argument("-n", "--degree", type=int, default=2)
    p.add_argument("--biquandle", action="store_true", help="use adjacent-repeat degeneracies only")
    p.add_argument("--dump", action="store_true", help="print the boundary and degenerate matrices")

    p = sub.add_parser("cohom", parents=[common], help="cohomology H^n with Z/N coefficients")
    p.add_argument("bikei")
    p.add_argument("-n", "--degree", type=int, default=2)
    p.add_argument("-N", "--modulus", type=int, required=True)
    p.add_argument("--biquandle", action="store_true")

    p = sub.add_parser("cocycles", parents=[common], help="2-cocycle class representatives, or check one")
    p.add_argument("bikei")
    p.add_argument("-N", "--modulus", type=int)
    p.add_argument("--check", metavar="COCYCLE", help="validate this cocycle file instead")

    p = sub.add_parser("mochizuki", parents=[common], help="linear cocycle a x - a y on Z/N")
    for name in ("N", "s", "t", "a"):
        p.add_argument(name, type=int)

    p = sub.add_parser("color", parents=[common], help="list the colorings of a diagram")
    p.add_argument("--bikei", required=True)
    p.add_argument("--diagram", required=True)

    p = sub.add_parser("invariant", parents=[common], help="cocycle-enhanced counting invariant")
    p.add_argument("--bikei", required=True)
    p.add_argument("--cocycle", required=True)
    p.add_argument("--diagram", required=True)

    p = sub.add_parser("scan-conjecture", parents=[common], help="free rank of H^2 over Z for small bikei")
    p.add_argument("--max-n", type=int, default=3)

    p = sub.add_parser("move", parents=[common], help="apply a Reidemeister move")
    p.add_argument("--diagram", required=True)
    p.add_argument("--move", required=True, choices=MOVES)
    p.add_argument("--site", help="comma-separated site; omit to list the sites")
    p.add_argument("--variant", type=int, default=0, choices=range(4))
    return parser


def _site(text, move):
    try:
        values = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"bad site {text!r}") from None
    if move in ("R1_insert", "R1_remove"):
        if len(values) != 1:
            raise UsageError(f"{move} takes a single site value")
        return values[0]
    return values


# each handler returns (text, json_payload, status)


def _check(args):
    report = verify_axioms(load_bikei(args.bikei))
    payload = {"valid": report.valid, "violations": [{"axiom": t, "witness": list(w)} for t, w in report.violations]}
    return report.describe() + "\n", payload, 0 if report.valid else 1


def _enum(args):
    found = enumerate_bikei(args.n, args.max_elements, args.max_nodes)
    text = f"# order {args.n}: {len(found)} isomorphism classes\n"
    text += "\n".join(render_bikei(X) for X in found)
    payload = {"n": args.n, "classes": [[list(r) for r in X.matrix()] for X in found]}
    return text, payload, 0


def _hom(args):
    X = load_bikei(args.bikei)
    kind = "biquandle" if args.biquandle else "bikei"
    n = args.degree
    shape = bikei_homology(X, n, kind, args.max_degree)
    text = f"H_{n} = {shape}\n"
    payload = {"degree": n, "kind": kind, "group": str(shape), **shape.as_dict()}
    if args.dump:
        parts = [f"# boundary C_{n} -> C_{n - 1}", render_matrix(boundary_matrix(X, n, args.max_degree))]
        parts += [f"# boundary C_{n + 1} -> C_{n}", render_matrix(boundary_matrix(X, n + 1, args.max_degree + 1))]
        parts += [f"# degenerate generators of C_{n}", render_matrix(degenerate_generators(X, n, kind, args.max_degree).matrix)]
        text += "\n".join(p.rstrip("\n") for p in parts) + "\n"
    return text, payload, 0


def _cohom(args):
    X = load_bikei(args.bikei)
    kind = "biquandle" if args.biquandle else "bikei"
    res = bikei_cohomology(X, args.degree, args.modulus, kind, args.max_degree)
    text = f"H^{args.degree}(X; Z/{args.modulus}) = {res.group}\n"
    for order, rep in zip(res.orders, res.cocycle_basis):
        text += f"order {order}: {' '.join(map(str, rep))}\n"
    payload = {
        "degree": args.degree,
        "modulus": args.modulus,
        "group": str(res.group),
        "generators": [{"order": o, "values": list(r)} for o, r in zip(res.orders, res.cocycle_basis)],
    }
    return text, payload, 0


def _cocycles(args):
    X = load_bikei(args.bikei)
    if args.check:
        phi = load_cocycle(args.check, X)
        check = is_cocycle_2(X, phi)
        payload = {
            "valid": check.valid,
            "violations": [{"condition": c, "witness": list(w), "value": v} for c, w, v in check.violations],
        }
        return check.describe() + "\n", payload, 0 if check.valid else 1
    if args.modulus is None:
        raise UsageError("cocycles needs --modulus or --check")
    res = bikei_cohomology(X, 2, args.modulus, "bikei", args.max_degree)
    blocks = [f"# H^2(X; Z/{args.modulus}) = {res.group}"]
    for order, rep in zip(res.orders, res.cocycle_basis):
        phi = Cocycle2.from_flat(X, args.modulus, rep)
        blocks.append(f"# generator of order {order}\n" + render_cocycle(phi).rstrip("\n"))
    payload = {
        "modulus": args.modulus,
        "group": str(res.group),
        "generators": [{"order": o, "values": list(r)} for o, r in zip(res.orders, res.cocycle_basis)],
    }
    return "\n".join(blocks) + "\n", payload, 0


def _mochizuki(args):
    phi = mochizuki_cocycle(args.N, args.s, args.t, args.a)
    return render_cocycle(phi), {"modulus": phi.modulus, "values": [list(r) for r in phi.values]}, 0


def _color(args):
    X = load_bikei(args.bikei)
    D = load_diagram(args.diagram)
    cols = enumerate_colorings(D, X, args.max_nodes)
    lines = [f"count = {len(cols)}"]
    lines.extend(" ".join(f"{a}={c}" for a, c in zip(col.ids, col.colors)) for col in cols)
    payload = {"count": len(cols), "colorings": [col.as_dict() for col in cols]}
    return "\n".join(lines) + "\n", payload, 0


def _invariant(args):
    X = load_bikei(args.bikei)
    phi = load_cocycle(args.cocycle, X)
    D = load_diagram(args.diagram)
    value = cocycle_invariant(D, X, phi, args.max_nodes)
    payload = {
        "count": value.count,
        "poly": value.polynomial(),
        "multiset": {str(w): m for w, m in value.multiplicities.items()},
    }
    return value.serialize(), payload, 0


def _scan(args):
    if args.max_n > args.max_elements:
        raise GuardExceeded(f"--max-n {args.max_n} exceeds --max-elements {args.max_elements}")
    rows = []
    for n in range(1, args.max_n + 1):
        for k, X in enumerate(enumerate_bikei(n, args.max_elements, args.max_nodes), 1):
            # free rank of H^2 over Z equals that of H_2
            shape = bikei_homology(X, 2, "bikei", args.max_degree)
            rows.append((f"{n}.{k}", shape.free_rank, str(shape)))
    lines = ["# id free_rank_H2 H_2"]
    lines.extend(f"{i} {r} {g}" for i, r, g in rows)
    nonzero = sum(1 for _, r, _ in rows if r)
    lines.append(f"# {len(rows)} bikei scanned, {nonzero} with nonzero free rank")
    payload = {"rows": [{"id": i, "free_rank": r, "H_2": g} for i, r, g in rows]}
    return "\n".join(lines) + "\n", payload, 0


def _move(args):
    D = load_diagram(args.diagram)
    if args.site is None:
        sites = find_sites(D, args.move)
        text = "".join(f"{s if isinstance(s, int) else ','.join(map(str, s))}\n" for s in sites)
        return text, {"move": args.move, "sites": [s if isinstance(s, int) else list(s) for s in sites]}, 0
    D2 = apply_move(D, args.move, _site(args.site, args.move), args.variant)
    text = render_diagram(D2)
    return text, {"diagram": text}, 0


HANDLERS = {
    "check": _check,
    "enum": _enum,
    "hom": _hom,
    "cohom": _cohom,
    "cocycles": _cocycles,
    "mochizuki": _mochizuki,
    "color": _color,
    "invariant": _invariant,
    "scan-conjecture": _scan,
    "move": _move,
}


def run(argv=None, out=None, err=None):
    """Run one command; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, payload, status = HANDLERS[args.command](args)
    except (ParseError, UsageError, OSError) as exc:
        err.write(f"bikei {args.command}: error: {exc}\n")
        return 2
    except (DomainError, GuardExceeded) as exc:
        err.write(f"bikei {args.command}: {exc}\n")
        return 1
    if args.json:
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(text)
    return status


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
