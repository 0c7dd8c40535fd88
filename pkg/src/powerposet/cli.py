"""Command-line front door: validate, compute, verify, catalog.

``verify`` runs a campaign of law checks over a set of instances and
emits one JSON record per (instance, check) pair on stdout, sorted by
instance then check, with a human summary on stderr.  Identical
configuration (including the seed) yields byte-identical record
streams; wall-clock timing therefore only ever appears in the summary.

Exit codes: 0 all passed, 1 verified failure (first witness on
stderr), 2 order-axiom violation in the input, 3 parse error, 4 cap
exceeded without a sampling fallback.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional, Sequence

from . import algebras, commutativity, powerdomains, topology
from .caps import SizeCapExceeded
from .catalog import CATALOG, catalog_poset, chain
from .documents import ParseError, load_document, mask_label, to_dot
from .poset import (
    MonotoneMap,
    Poset,
    PosetError,
    enumerate_labeled_posets,
    generate_monotone_maps,
    is_complete_lattice,
    is_distributive_lattice,
    is_frame,
    is_lattice,
)
from .report import FAIL, PASS, SAMPLE, SKIP, VerificationReport
from .topology import scott_space

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_AXIOM = 2
EXIT_PARSE = 3
EXIT_CAP = 4

ALL_CHECKS = [
    "monad-laws-H",
    "monad-laws-Q",
    "iso",
    "dist-law-phi",
    "dist-law-psi",
    "composite-monad",
    "rho-identities",
    "monad-morphisms",
    "kc",
    "consonance",
    "kz",
    "algebras-H",
    "algebras-Q",
    "algebras-QH",
    "universal-property",
]

# law strings for skip records, where the checker never got to run
CHECK_LAWS = {
    "monad-laws-H": powerdomains.LAW_MONAD,
    "monad-laws-Q": powerdomains.LAW_MONAD,
    "iso": commutativity.LAW_ISO,
    "dist-law-phi": commutativity.LAW_DIST,
    "dist-law-psi": commutativity.LAW_DIST,
    "composite-monad": commutativity.LAW_COMPOSITE,
    "rho-identities": commutativity.LAW_RHO,
    "monad-morphisms": commutativity.LAW_MORPHISM,
    "kc": topology.LAW_KC,
    "consonance": topology.LAW_CONSONANCE,
    "kz": algebras.LAW_KZ,
    "algebras-H": algebras.LAW_H_ALGEBRA,
    "algebras-Q": algebras.LAW_Q_ALGEBRA,
    "algebras-QH": algebras.LAW_QH_ALGEBRA,
    "universal-property": powerdomains.LAW_UNIVERSAL,
}


def _functoriality_pairs(p: Poset) -> list[tuple[MonotoneMap, MonotoneMap]]:
    c2, c3 = chain(2), chain(3)
    fs = generate_monotone_maps(p, c2, limit=2)
    gs = generate_monotone_maps(c2, c3, limit=1)
    return [(f, g) for f in fs for g in gs]


def _naturality_maps(p: Poset) -> list[MonotoneMap]:
    out = [MonotoneMap.identity(p)]
    out.extend(generate_monotone_maps(p, chain(2), limit=2))
    return out


def _run_check(
    check: str,
    p: Poset,
    mode: str,
    samples: int,
    seed: Optional[int],
    cap: Optional[int],
) -> VerificationReport:
    if check in ("monad-laws-H", "monad-laws-Q"):
        tag = check[-1]
        return powerdomains.verify_monad_laws(
            tag, p, mode=mode, sample_count=samples, seed=seed,
            map_pairs=_functoriality_pairs(p), cap=cap,
        )
    if check == "iso":
        return commutativity.verify_iso(p, cap)
    if check in ("dist-law-phi", "dist-law-psi"):
        return commutativity.verify_distributive_law(
            check.rsplit("-", 1)[1], p, naturality_maps=_naturality_maps(p), cap=cap
        )
    if check == "composite-monad":
        return commutativity.composite_monad(p, cap).report
    if check == "rho-identities":
        return commutativity.verify_rho_identities(p, cap)
    if check == "monad-morphisms":
        first = commutativity.verify_monad_morphism("Q-unit-H", p, cap)
        second = commutativity.verify_monad_morphism("theta-H", p, cap)
        merged = VerificationReport(
            "monad-morphisms",
            first.law,
            PASS if first.passed and second.passed else FAIL,
            first.mode,
            first.points + second.points,
            witness=first.witness or second.witness,
            details={"lambdas": ["Q-unit-H", "theta-H"]},
        )
        return merged
    if check == "kc":
        return topology.check_KC(scott_space(p))
    if check == "consonance":
        return topology.check_consonance(
            scott_space(p), sample_count=samples,
            seed=seed if mode == SAMPLE else None,
        )
    if check == "kz":
        return algebras.check_KZ(p, cap)
    if check == "algebras-H":
        return algebras.check_H_algebra_characterization(p, cap)
    if check == "algebras-Q":
        maps = algebras.enumerate_structure_maps("Q", p, cap)
        if not maps:
            return VerificationReport(
                "algebras-Q", algebras.LAW_Q_ALGEBRA, PASS, points=1,
                details={"admits": False, "count": 0},
            )
        rep = algebras.check_Q_algebra_necessities(p, maps[0], cap)
        rep.details.update({"admits": True, "count": len(maps)})
        return rep
    if check == "algebras-QH":
        return algebras.check_QH_algebra_theorems(p, cap)
    if check == "universal-property":
        points = 0
        single = chain(1)
        probes = [
            ("into-singleton", single, MonotoneMap(p, single, (0,) * p.n)),
            ("into-own-hoare", powerdomains.hoare(p, cap).as_poset,
             powerdomains.eta(p, cap)),
        ]
        maximal = next((i for i in range(p.n) if p.up[i] == 1 << i), None)
        if maximal is not None:
            c2 = chain(2)
            image = tuple(1 if p.leq(maximal, x) else 0 for x in range(p.n))
            probes.append(("into-chain2", c2, MonotoneMap(p, c2, image)))
        names = []
        for name, target, f in probes:
            rep = powerdomains.check_universal_property(p, target, f, cap)
            points += rep.points
            if not rep.passed:
                return rep
            names.append(name)
        return VerificationReport(
            "universal-property", powerdomains.LAW_UNIVERSAL, PASS,
            points=points, details={"probes": names},
        )
    raise ValueError(f"unknown check: {check!r}")


def _instances(args) -> list[tuple[str, Poset]]:
    if args.generate is not None:
        n = args.generate
        out = []
        for i, p in enumerate(enumerate_labeled_posets(n, allow_large=args.allow_large)):
            out.append((f"n{n}-{i:03d}", p))
        return out
    if args.input:
        doc = load_document(args.input)
        return [(doc.name, doc.to_poset())]
    if args.catalog == "all":
        return sorted(CATALOG.items())
    return [(args.catalog, catalog_poset(args.catalog))]


def cmd_verify(args) -> int:
    checks = ALL_CHECKS if args.checks == "all" else args.checks.split(",")
    for c in checks:
        if c not in ALL_CHECKS:
            print(f"unknown check {c!r}; known: {','.join(ALL_CHECKS)}", file=sys.stderr)
            return EXIT_PARSE
    if args.mode == SAMPLE and args.seed is None:
        print("sample mode requires an explicit --seed", file=sys.stderr)
        return EXIT_PARSE
    try:
        instances = _instances(args)
    except (ParseError, KeyError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PosetError as exc:
        print(f"axiom violation: {exc}", file=sys.stderr)
        return EXIT_AXIOM

    started = time.monotonic()
    records: list[VerificationReport] = []
    for name, p in sorted(instances):
        for check in sorted(checks):
            try:
                rep = _run_check(check, p, args.mode, args.samples, args.seed, args.cap)
            except SizeCapExceeded as exc:
                rep = VerificationReport(
                    check, CHECK_LAWS[check], SKIP, args.mode, 0, seed=args.seed,
                    witness={"reason": str(exc), "cap": exc.cap},
                )
            records.append(rep.with_instance(name))
    records.sort(key=lambda r: (r.instance, r.check))
    elapsed = time.monotonic() - started

    stream = sys.stdout if args.format == "records" else None
    if stream is not None:
        for rep in records:
            stream.write(rep.to_line() + "\n")

    npass = sum(1 for r in records if r.verdict == PASS)
    nfail = sum(1 for r in records if r.verdict == FAIL)
    nskip = sum(1 for r in records if r.verdict == SKIP)
    partial = sum(1 for r in records if r.details.get("skipped"))
    summary_target = sys.stderr if args.format == "records" else sys.stdout
    print(
        f"instances: {len(instances)}  records: {len(records)}  "
        f"pass: {npass}  fail: {nfail}  skip: {nskip}  wall: {elapsed:.2f}s",
        file=summary_target,
    )
    first_fail = next((r for r in records if r.verdict == FAIL), None)
    if first_fail is not None:
        print(
            f"first failure: {first_fail.instance}/{first_fail.check} "
            f"witness={first_fail.witness}",
            file=sys.stderr,
        )
        return EXIT_FAIL
    if nskip or partial:
        return EXIT_CAP
    return EXIT_PASS


def _load_single(args) -> tuple[str, Poset]:
    if args.input:
        doc = load_document(args.input)
        return doc.name, doc.to_poset()
    return args.catalog, catalog_poset(args.catalog)


def cmd_validate(args) -> int:
    try:
        name, p = _load_single(args)
    except (ParseError, KeyError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PosetError as exc:
        print(f"axiom violation: {exc}", file=sys.stderr)
        return EXIT_AXIOM
    lattice = is_lattice(p)
    print(f"poset: {name}")
    print(f"size: {p.n}")
    covers = ", ".join(f"{p.label(i)} < {p.label(j)}" for i, j in p.covers())
    print(f"covers: {covers if covers else '(none)'}")
    print(f"lattice: {'yes' if lattice else 'no'}")
    print(f"complete lattice: {'yes' if is_complete_lattice(p) else 'no'}")
    if lattice:
        print(f"distributive: {'yes' if is_distributive_lattice(p) else 'no'}")
        print(f"frame: {'yes' if is_frame(p) else 'no'}")
    return EXIT_PASS


def cmd_compute(args) -> int:
    try:
        name, p = _load_single(args)
    except (ParseError, KeyError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PosetError as exc:
        print(f"axiom violation: {exc}", file=sys.stderr)
        return EXIT_AXIOM

    base_labels = [p.label(i) for i in range(p.n)]
    try:
        if args.construction in ("H", "Q"):
            hp = (powerdomains.hoare if args.construction == "H" else powerdomains.smyth)(
                p, args.cap
            )
            towers = [(args.construction, hp)]
        elif args.construction == "QH":
            inner = powerdomains.hoare(p, args.cap)
            outer = powerdomains.smyth(inner.as_poset, args.cap)
            towers = [("H", inner), ("QH", outer)]
        else:  # HQ
            inner = powerdomains.smyth(p, args.cap)
            outer = powerdomains.hoare(inner.as_poset, args.cap)
            towers = [("Q", inner), ("HQ", outer)]
    except SizeCapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP

    level_labels = {0: base_labels}
    for depth, (tag, hp) in enumerate(towers, start=1):
        inner_labels = level_labels[depth - 1]
        labels = [mask_label(m, inner_labels) for m in hp.elements]
        level_labels[depth] = labels
        print(f"construction {tag}({name}): size {len(hp)}, order {hp.kind}")
        for i, lab in enumerate(labels):
            print(f"  {i}: {lab}")

    if args.construction in ("HQ", "QH"):
        try:
            f = commutativity.phi_component(p, args.cap)
            g = commutativity.psi_component(p, args.cap)
        except SizeCapExceeded as exc:
            print(f"cap exceeded: {exc}", file=sys.stderr)
            return EXIT_CAP
        print("phi table (down-set family of compacts -> compact family of closed sets):")
        for i, v in enumerate(f.image):
            print(f"  {i} -> {v}")
        print("psi table (inverse direction):")
        for i, v in enumerate(g.image):
            print(f"  {i} -> {v}")

    if args.export_dot:
        tag, hp = towers[-1]
        text = to_dot(hp.as_poset, level_labels[len(towers)])
        with open(args.export_dot, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote diagram to {args.export_dot}", file=sys.stderr)
    return EXIT_PASS


def cmd_catalog(_args) -> int:
    for name, p in CATALOG.items():
        flags = []
        if is_lattice(p):
            flags.append("lattice")
            if is_frame(p):
                flags.append("frame")
        print(f"{name:<12} size {p.n:<3} {' '.join(flags)}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powerposet",
        description="power constructions on finite posets, with law verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_source(sp, with_generate=False):
        group = sp.add_mutually_exclusive_group(required=True)
        group.add_argument("--catalog", help="built-in poset name" + (" or 'all'" if with_generate else ""))
        group.add_argument("--input", help="path to a poset document (JSON)")
        if with_generate:
            group.add_argument(
                "--generate", type=int, metavar="N",
                help="all labelled posets on N elements",
            )

    sp = sub.add_parser("validate", help="check the order axioms and summarize")
    add_source(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("compute", help="build a power construction and print it")
    add_source(sp)
    sp.add_argument("--construction", required=True, choices=["H", "Q", "HQ", "QH"])
    sp.add_argument("--cap", type=int, default=None, help="carrier size cap")
    sp.add_argument("--export-dot", metavar="PATH", help="write the cover diagram as DOT")
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("verify", help="run law checks over instances")
    add_source(sp, with_generate=True)
    sp.add_argument("--checks", default="all", help="comma-separated subset, or 'all'")
    sp.add_argument("--mode", choices=["exhaustive", "sample"], default="exhaustive")
    sp.add_argument("--samples", type=int, default=10_000, help="sample count per sweep")
    sp.add_argument("--seed", type=int, default=None, help="sampling seed (required for sample mode)")
    sp.add_argument("--cap", type=int, default=None, help="carrier size cap override")
    sp.add_argument("--format", choices=["records", "summary"], default="records")
    sp.add_argument(
        "--allow-large", action="store_true",
        help="accept the exponential cost of generating posets past the cap",
    )
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("catalog", help="list the built-in posets")
    sp.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
