"""Command-line front end.

Three subcommands: `compute` runs one spec and reports the group,
`table` sweeps a grid of specs, `verify` runs the internal consistency
suite.  Exit codes: 0 success/match, 2 invalid spec, 3 unstable
sampling, 4 computed group differs from the closed form, 5 failed
verification.
"""

import argparse
import json
import sys

from .catalog import build_catalog, parse_relations, verify_catalog
from .certify import descent_check, functionals_for, lower_bound, oracle
from .chains import (
    ChainSpace,
    boundary1,
    cycle_lattice,
    expected_boundary,
    kernel_generator_list,
    rewrite_relation_all,
)
from .engine import compute_h1
from .errors import SpecInvalid, UnstableSampling
from .intlin import Echelon, IntMatrix
from .surface import SurfaceSpec, build_representation

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNSTABLE = 3
EXIT_MISMATCH = 4
EXIT_VERIFY = 5

RECORD_FIELDS = (
    "genus", "boundary", "punctures", "k", "flavor", "torsion", "free_rank",
    "generators", "lower_bound", "oracle", "match", "samples", "seed", "ms",
)


def make_spec(args):
    k = getattr(args, "k", None)
    if args.flavor == "pm+":
        k = None  # always n; an explicit --k is ignored for this flavor
    elif args.flavor == "pmk" and k is None:
        k = 0
    return SurfaceSpec.make(
        args.genus, args.boundary, args.punctures, k, args.flavor
    )


def run_record(spec, samples, seed, extra_relations=None):
    """One spec end to end: engine, certificate, oracle comparison."""
    result = compute_h1(
        spec, samples=samples, seed=seed, extra_relations=extra_relations
    )
    bound = lower_bound(spec, result)
    expected = oracle(spec)
    return {
        "genus": spec.g,
        "boundary": spec.s,
        "punctures": spec.n,
        "k": spec.k,
        "flavor": spec.flavor,
        "torsion": list(result.invariants.torsion),
        "free_rank": result.invariants.free_rank,
        "generators": [name for name, _ in result.named_basis],
        "lower_bound": bound,
        "oracle": len(expected.torsion),
        "match": result.invariants == expected,
        "samples": samples,
        "seed": seed,
        "ms": result.ms,
    }


def record_json(record):
    return json.dumps({f: record[f] for f in RECORD_FIELDS})


def record_text(record):
    torsion = " + ".join("Z_%d" % t for t in record["torsion"]) or "0"
    if record["free_rank"]:
        torsion += " + Z^%d" % record["free_rank"]
    lines = [
        "N_{%d,%d}^%d  flavor=%s  k=%d"
        % (record["genus"], record["boundary"], record["punctures"],
           record["flavor"], record["k"]),
        "H_1 = %s" % torsion,
        "basis: %s" % (", ".join(record["generators"]) or "(none)"),
        "lower bound %d, expected exponent %d, %s"
        % (record["lower_bound"], record["oracle"],
           "match" if record["match"] else "MISMATCH"),
        "%d samples, seed %d, %d ms"
        % (record["samples"], record["seed"], record["ms"]),
    ]
    return "\n".join(lines)


def cmd_compute(args):
    try:
        spec = make_spec(args)
    except SpecInvalid as exc:
        print("invalid spec: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    extra = None
    if args.relations:
        with open(args.relations, encoding="utf-8") as handle:
            extra = parse_relations(handle.read())
    try:
        record = run_record(spec, args.samples, args.seed, extra)
    except UnstableSampling as exc:
        print("unstable sampling: %s" % exc, file=sys.stderr)
        return EXIT_UNSTABLE
    out = record_json(record) if args.format == "json" else record_text(record)
    print(out)
    return EXIT_OK if record["match"] else EXIT_MISMATCH


def _parse_range(text, fallback):
    if text is None:
        return fallback
    if "-" in text.lstrip("-"):
        lo, hi = text.split("-", 1)
        return range(int(lo), int(hi) + 1)
    return range(int(text), int(text) + 1)


def grid_specs(args):
    genus = _parse_range(args.genus, range(3, 10))
    boundary = _parse_range(args.boundary, range(0, 4))
    if args.flavor == "m":
        punctures = _parse_range(args.punctures, range(2, 4))
    else:
        punctures = _parse_range(args.punctures, range(0, 4))
    for g in genus:
        for s in boundary:
            for n in punctures:
                if args.flavor == "m":
                    if n >= 2:
                        yield SurfaceSpec.make(g, s, n, flavor="m")
                    continue
                if s + n < 1:
                    continue
                if args.flavor == "pm+":
                    yield SurfaceSpec.make(g, s, n, flavor="pm+")
                    continue
                ks = _parse_range(args.k, range(0, n + 1))
                for k in ks:
                    if k <= n:
                        yield SurfaceSpec.make(
                            g, s, n, k, "pm+" if k == n else "pmk"
                        )


def cmd_table(args):
    records = []
    errors = []
    for spec in grid_specs(args):
        try:
            records.append(run_record(spec, args.samples, args.seed))
        except (SpecInvalid, UnstableSampling) as exc:
            errors.append("(%d,%d,%d,%d,%s): %s"
                          % (spec.g, spec.s, spec.n, spec.k, spec.flavor, exc))
    matched = sum(1 for r in records if r["match"])
    if args.format == "json":
        print(json.dumps(
            {"rows": [{f: r[f] for f in RECORD_FIELDS} for r in records],
             "matched": matched, "total": len(records)}
        ))
    else:
        sep = "," if args.format == "csv" else " | "
        head = sep.join(RECORD_FIELDS)
        if args.format == "markdown":
            head = "| " + head + " |"
        print(head)
        if args.format == "markdown":
            print("|" + "---|" * len(RECORD_FIELDS))
        for r in records:
            cells = []
            for f in RECORD_FIELDS:
                v = r[f]
                if isinstance(v, list):
                    v = " ".join(str(x) for x in v)
                cells.append(str(v))
            line = sep.join(cells)
            if args.format == "markdown":
                line = "| " + line + " |"
            print(line)
        print("# matched %d of %d" % (matched, len(records)))
    for err in errors:
        print("error %s" % err, file=sys.stderr)
    if errors or matched != len(records):
        return EXIT_MISMATCH
    return EXIT_OK


def verify_spec(spec):
    """All consistency checks for one spec; returns a list of failures."""
    failures = []
    rep = build_representation(spec)
    ident = IntMatrix.identity(spec.d)
    for gen in spec.generators():
        mat = rep.psi(gen)
        if mat.det() not in (1, -1):
            failures.append("det psi(%s) not a unit" % gen.name)
        if mat @ rep.psi(gen, -1) != ident:
            failures.append("psi(%s) inverse wrong" % gen.name)
        if gen.kind in "udsv" and mat @ mat != ident:
            failures.append("psi(%s) is not an involution" % gen.name)

    space = ChainSpace(spec, rep)
    for gen in space.gens:
        for i in range(1, spec.d + 1):
            if space._bcol[gen][i - 1] != expected_boundary(spec, gen, i):
                failures.append(
                    "boundary of %s_(x)_xi_%d disagrees with the closed form"
                    % (gen.name, i)
                )

    lattice = cycle_lattice(space)
    listed = Echelon(
        dict(chain) for _, chain in kernel_generator_list(space)
    )
    if not lattice.echelon.same_lattice(listed):
        failures.append("cycle lattice differs from the explicit family")

    catalog = build_catalog(spec, space)
    report = verify_catalog(space, catalog, lattice)
    failures.extend(report.failures)

    for entry in catalog:
        if entry.kind != "word":
            continue
        for i, vec in enumerate(rewrite_relation_all(space, entry.lhs, entry.rhs)):
            if boundary1(space, vec) or not lattice.contains(vec):
                failures.append(
                    "%s rewritten at xi_%d is not a cycle" % (entry.rid, i + 1)
                )

    from .engine import build_relation_system

    system = build_relation_system(spec)
    for functional in functionals_for(spec):
        drep = descent_check(system, functional)
        failures.extend(drep.failures)
    return failures


def fault_checks(spec):
    """The deliberately flipped signs must be caught; returns failures
    of the checks-about-checks."""
    failures = []
    for variant in ("e", "s"):
        if variant == "e" and spec.s + spec.n - 1 < 3:
            continue
        if variant == "s" and (spec.flavor != "m" or spec.s + spec.n < 3):
            continue
        caught = False
        try:
            rep = build_representation(spec, sign_variant=variant)
            ident = IntMatrix.identity(spec.d)
            for gen in spec.generators():
                if gen.kind in "udsv" and rep.psi(gen) @ rep.psi(gen) != ident:
                    caught = True
            space = ChainSpace(spec, rep)
            for gen in space.gens:
                for i in range(1, spec.d + 1):
                    if space._bcol[gen][i - 1] != expected_boundary(spec, gen, i):
                        caught = True
        except Exception:
            caught = True
        if not caught:
            failures.append("sign variant %r went undetected" % variant)
    return failures


def cmd_verify(args):
    if args.all:
        specs = []
        for g in range(3, 10):
            for s in range(4):
                for n in range(4):
                    if s + n >= 1:
                        for k in range(n + 1):
                            specs.append(SurfaceSpec.make(
                                g, s, n, k, "pm+" if k == n else "pmk"
                            ))
                    if n >= 2:
                        specs.append(SurfaceSpec.make(g, s, n, flavor="m"))
    else:
        if args.genus is None:
            print("need --genus (or --all)", file=sys.stderr)
            return EXIT_INVALID
        try:
            specs = [make_spec(args)]
        except SpecInvalid as exc:
            print("invalid spec: %s" % exc, file=sys.stderr)
            return EXIT_INVALID
    total = 0
    for spec in specs:
        failures = verify_spec(spec) + fault_checks(spec)
        total += len(failures)
        tag = "(%d,%d,%d,%d,%s)" % (spec.g, spec.s, spec.n, spec.k, spec.flavor)
        if failures:
            for f in failures:
                print("FAIL %s %s" % (tag, f))
        else:
            print("ok   %s" % tag)
    if total:
        print("%d check(s) failed" % total, file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _add_spec_flags(parser, required=True):
    parser.add_argument("--genus", type=int, required=required)
    parser.add_argument("--boundary", type=int, default=0)
    parser.add_argument("--punctures", type=int, default=0)
    parser.add_argument("--flavor", choices=("pm+", "pmk", "m"),
                        default="pm+")
    parser.add_argument("--k", type=int, default=None)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mcgtwist",
        description="Twisted first homology of mapping class groups of "
                    "non-orientable surfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("compute", help="compute one spec")
    _add_spec_flags(pc)
    pc.add_argument("--samples", type=int, default=17)
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--format", choices=("json", "text"), default="text")
    pc.add_argument("--relations", metavar="FILE", default=None,
                    help="extra word relations, one `lhs = rhs` per line")
    pc.set_defaults(func=cmd_compute)

    pt = sub.add_parser("table", help="sweep a grid of specs")
    pt.add_argument("--genus", default=None, help="value or range like 3-9")
    pt.add_argument("--boundary", default=None)
    pt.add_argument("--punctures", default=None)
    pt.add_argument("--k", default=None)
    pt.add_argument("--flavor", choices=("pm+", "pmk", "m"), default="pmk")
    pt.add_argument("--samples", type=int, default=17)
    pt.add_argument("--seed", type=int, default=0)
    pt.add_argument("--format", choices=("markdown", "csv", "json"),
                    default="markdown")
    pt.set_defaults(func=cmd_table)

    pv = sub.add_parser("verify", help="run the consistency suite")
    _add_spec_flags(pv, required=False)
    pv.add_argument("--all", action="store_true",
                    help="verify the whole default grid")
    pv.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
