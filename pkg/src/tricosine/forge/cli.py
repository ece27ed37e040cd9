"""forge: build, verify and search the catalog from the command line.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from ..cocycle import ModuleAction, b1_basis, noninner_cocycles
from ..mono import CapExceeded, gl_generators
from ..spherecode import (association_scheme_check, binary_automorphism_group, cosine_set,
                          distance_distribution, fraction_str, min_distance,
                          monomial_automorphism_order, nonlinearity_witness)
from . import catalog, io, optimism
from .search import SUBGROUP_PRESETS, SearchConfig, procedure51_search

OK, USAGE, FAILED, CAP = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _print_checks(res) -> None:
    for c in res.checks:
        print(f"{'PASS' if c.ok else 'FAIL'}  {c.label}" + (f"  [{c.detail}]" if c.detail else ""))


def cmd_build(args) -> int:
    if args.entry not in catalog.CATALOG:
        print(f"unknown entry {args.entry}; choose from {', '.join(catalog.CATALOG)}", file=sys.stderr)
        return USAGE
    res = catalog.build_entry(args.entry)
    print(f"entry {res.name}")
    if res.code is not None:
        print(f"vectors {len(res.code)}  dimension {res.code.dim}  norm^2 {res.code.norm_sq}")
        print("cosines " + " ".join(fraction_str(q) for q in cosine_set(res.code)))
    if "table_note" in res.construction:
        print("note: " + res.construction["table_note"])
    _print_checks(res)
    if args.out:
        if res.code is not None:
            io.write_code(res.code, args.out, args.format, res.construction)
        elif res.binary is not None:
            with open(args.out, "w") as fh:
                fh.write(io.binary_to_text(res.binary))
    return OK if res.ok else FAILED


def cmd_verify(args) -> int:
    rep = catalog.verify_table1()
    for r in rep.rows:
        line = f"{r.status:22s} {r.name:40s} n={r.size:<5d} computed {{{', '.join(map(str, r.computed))}}}"
        if r.printed is not None and r.printed != r.computed:
            line += f"  printed {{{', '.join(map(str, r.printed))}}}"
        print(line)
    return OK if rep.ok else FAILED


def _cohomology_action(preset: str) -> ModuleAction:
    if preset == "gl32-std3":
        return ModuleAction.linear(gl_generators(3), 3)
    if preset == "gl32-trivial":
        return ModuleAction.trivial(gl_generators(3))
    return optimism.gl42_action()


def cmd_cohomology(args) -> int:
    m = _cohomology_action(args.preset)
    z1 = m.z1_space().dim
    b1 = m.b1_space().dim
    print(f"group order {m.order}  module dim {m.n}")
    print(f"dim Z1 = {z1}  dim B1 = {b1}  dim H1 = {z1 - b1}")
    ker = Counter(f.kernel_order() for _, f in noninner_cocycles(m))
    for order, count in sorted(ker.items()):
        print(f"noninner cocycles with kernel order {order}: {count}")
    inner = Counter(f.kernel_order() for f in b1_basis(m))
    print("inner basis kernel orders " + " ".join(str(k) for k in sorted(inner.elements())))
    return OK


def cmd_search(args) -> int:
    if args.d != 4:
        print("subgroup presets are defined for d = 4", file=sys.stderr)
        return USAGE
    cfg = SearchConfig(args.d, SUBGROUP_PRESETS[args.subgroup](), args.max_cosines,
                       args.antipodal, jobs=args.jobs, name=args.subgroup)
    res = procedure51_search(cfg)
    for h in res.hits:
        print(json.dumps({"orbits": list(h.orbits), "size": h.size,
                          "cosines": [fraction_str(q) for q in h.cosines],
                          "antipodal": h.antipodal}), flush=True)
    return OK


def cmd_binary(args) -> int:
    b = optimism.build_bc16()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(io.binary_to_text(b))
    else:
        sys.stdout.write(io.binary_to_text(b))
    md = min_distance(b)
    dist = distance_distribution(b)
    wit = nonlinearity_witness(b)
    print(f"# length {b.length} size {len(b)} min distance {md}", file=sys.stderr)
    print(f"# distance distribution {dist}", file=sys.stderr)
    print(f"# nonlinearity witness {wit[0]:04x} + {wit[1]:04x} = {wit[0] ^ wit[1]:04x}"
          if wit else "# linear", file=sys.stderr)
    ok = md == 6 and wit is not None
    if args.aut or args.signed:
        aut = binary_automorphism_group(b, args.budget)
        print(f"# automorphism group order {aut.order} ({aut.nodes} nodes)", file=sys.stderr)
        for g in aut.generators:
            print("# gen " + " ".join(map(str, g)), file=sys.stderr)
        ok = ok and aut.order == 40320
        if args.signed:
            order = monomial_automorphism_order(optimism.build_opticode(), aut.order, args.budget)
            print(f"# signed permutation symmetries of OPTICODE: {order}", file=sys.stderr)
            ok = ok and order == optimism.build_optigroup().order
    return OK if ok else FAILED


def cmd_scheme(args) -> int:
    code = io.read_code(args.codefile)
    rep = association_scheme_check(code)
    print("relations (inner products): " + " ".join(map(str, rep.relations)))
    if not rep.is_scheme:
        a, b, c, x, y, cnt = rep.violation
        print(f"not a scheme: p[{c}][{a}][{b}] not constant (pair {x},{y} has {cnt})")
        return FAILED
    print("association scheme; intersection numbers p^c_ab:")
    for c, table in rep.intersection_numbers.items():
        for a, row in table.items():
            print(f"  c={c} a={a}: " + " ".join(str(row[b]) for b in sorted(row)))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="forge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="build a catalog entry")
    b.add_argument("entry")
    b.add_argument("--out")
    b.add_argument("--format", choices=["json", "csv"], default="json")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="compare the catalog with the published cosine table")
    v.add_argument("what", choices=["table1"])
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("cohomology", help="Z1/B1/H1 for a preset module")
    c.add_argument("preset", choices=["gl32-std3", "gl32-trivial", "gl42-m6"])
    c.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("search", help="few-cosine orbit unions")
    s.add_argument("--d", type=int, default=4)
    s.add_argument("--subgroup", choices=sorted(SUBGROUP_PRESETS), default="nsc")
    s.add_argument("--max-cosines", type=int, default=3)
    s.add_argument("--antipodal", choices=["include", "exclude"], default="exclude")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_search)

    n = sub.add_parser("binary", help="the (16,256,6) code")
    n.add_argument("which", choices=["nordstrom"])
    n.add_argument("--aut", action="store_true", help="run the automorphism backtrack")
    n.add_argument("--signed", action="store_true",
                   help="also count signed-permutation symmetries of the spherical code")
    n.add_argument("--budget", type=int, default=10**8, help="backtrack node budget")
    n.add_argument("--out")
    n.set_defaults(func=cmd_binary)

    sc = sub.add_parser("scheme", help="association-scheme check of a code file")
    sc.add_argument("codefile")
    sc.set_defaults(func=cmd_scheme)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as e:
        print(f"resource cap exceeded: {e}", file=sys.stderr)
        return CAP
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
