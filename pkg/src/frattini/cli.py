"""Command-line front door.

Subcommands:

* ``frattini classify`` -- classify one group as S or NS and write the report
* ``frattini search``   -- exhaustive cohomological-triviality search on a module
* ``frattini verify``   -- replay the full verification suite

Exit codes: 0 success, 1 a verification check failed, 2 argument or config
parse error, 3 domain precondition violated (e.g. abelian input), 4 a search
guard was exceeded (raise it with the FRATTINI_GUARD_OVERRIDE env var).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import catalog, classifier, verification
from .abelian import FinAbGroup, ModuleShapeError
from .autsearch import SearchGuardError, classify_ct_actions
from .groups import DomainError, GroupConstructionError

EXIT_CHECK_FAILURE = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_GUARD = 4


def _descriptor_from_args(args) -> catalog.FamilyDescriptor:
    if args.config:
        with open(args.config) as fh:
            return catalog.parse_group_config(fh.read())
    if not args.family:
        raise catalog.DescriptorError("need --family or --config")
    if "(" in args.family:
        return catalog.parse_compact(args.family)
    keys = ("p", "order", "rank", "alpha", "beta", "gamma", "r", "m", "n")
    params = {k: getattr(args, k) for k in keys if getattr(args, k) is not None}
    if args.components:
        comps = tuple(catalog.parse_compact(c)
                      for c in catalog._split_args(args.components))
        return catalog.FamilyDescriptor(args.family, components=comps)
    return catalog.FamilyDescriptor(args.family, **params)


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_classify(args) -> int:
    desc = _descriptor_from_args(args)
    G = catalog.build(desc)
    report = classifier.classify(G, descriptor=desc.compact())
    _write_json(args.out, report.to_json_dict())
    print(f"{desc.compact()}: {report.verdict}-group, H0 order "
          f"{report.h0_order}, class {report.nilpotency_class}, "
          f"coclass {report.coclass}  [{args.out}]")
    return 0


def cmd_search(args) -> int:
    exponents = tuple(int(x) for x in args.type.split(","))
    M = FinAbGroup(args.p, exponents)
    report = classify_ct_actions(M, rank_min=args.rank, jobs=args.jobs)
    _write_json(args.out, report.to_json_dict())
    print(f"{M.describe()} rank>={args.rank}: {report.hit_count} hits over "
          f"{report.examined} subgroups  [{args.out}]")
    return 0


def cmd_verify(args) -> int:
    only = args.only or None
    result = verification.run_suite(only=only, jobs=args.jobs)
    os.makedirs(args.out_dir, exist_ok=True)
    json_path = os.path.join(args.out_dir, "verification.json")
    md_path = os.path.join(args.out_dir, "verification.md")
    verification.write_suite_outputs(result, json_path, md_path)
    for c in result.checks:
        print(f"[{c.status:>7}] {c.name} ({c.elapsed:.2f}s) {c.detail}")
    print(f"overall: {'pass' if result.ok else 'fail'}  [{json_path}]")
    return 0 if result.ok else EXIT_CHECK_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frattini",
        description="S/NS verdicts and cohomological-triviality searches "
                    "for finite p-groups")
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("classify", help="classify one group as S or NS")
    pc.add_argument("--family", help="family tag or compact descriptor, "
                    "e.g. dihedral or metacyclic(2,5,4,5,11)")
    pc.add_argument("--config", help="plain-text key=value group spec file")
    for key in ("p", "order", "rank", "alpha", "beta", "gamma", "r", "m", "n"):
        pc.add_argument(f"--{key}", type=int)
    pc.add_argument("--components",
                    help="comma-separated compact descriptors for direct-product")
    pc.add_argument("--out", default="frattini-classifier.json")
    pc.set_defaults(fn=cmd_classify)

    ps = sub.add_parser("search", help="search a module for cohomologically "
                        "trivial elementary abelian actions")
    ps.add_argument("--p", type=int, required=True)
    ps.add_argument("--type", required=True,
                    help="comma-separated exponent list, e.g. 2,1 for Z/p^2 x Z/p")
    ps.add_argument("--rank", type=int, default=2,
                    help="minimum acting rank (default 2)")
    ps.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    ps.add_argument("--out", default="frattini-search.json")
    ps.set_defaults(fn=cmd_search)

    pv = sub.add_parser("verify", help="run the full verification suite")
    pv.add_argument("--only", action="append", choices=verification.CHECK_NAMES,
                    help="run only the named check (repeatable)")
    pv.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    pv.add_argument("--out-dir", default=".")
    pv.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SearchGuardError as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (catalog.DescriptorError, GroupConstructionError,
            ModuleShapeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, ValueError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
