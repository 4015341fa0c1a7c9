"""Command-line front end.

Every command prints one JSON document.  Keys appear in a fixed order and
group orders are decimal strings, so a report is byte-for-byte reproducible.

Exit codes: 0 success, 1 parse or validation error, 2 resource limit hit.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .ample import detect_ample
from .fixtures import FIXTURE_NAMES, GroupFileError, fixture, format_group_file, read_group_file
from .limits import Limits, ResourceLimitError, limits_scope
from .oracle import brute_normaliser
from .perm import PermutationError
from .pipeline import classify_and_normalise, normaliser_report
from .stabchain import Group
from .structure import minimal_normal_subgroups, socle


def _group_summary(g: Group) -> dict:
    return {"degree": g.degree, "order": str(g.order()),
            "generators": [str(x) for x in g.generators]}


def _load(path: str) -> Group:
    try:
        return read_group_file(path)
    except OSError as exc:
        raise GroupFileError(f"{path}: {exc.strerror or exc}") from None
    except GroupFileError as exc:
        raise GroupFileError(f"{path}: {exc}") from None


def _load_pair(args) -> tuple[Group, Group | None]:
    h = _load(args.group)
    k = _load(args.within) if args.within else None
    if k is not None and k.degree != h.degree:
        raise GroupFileError(f"degree mismatch: H has {h.degree}, K has {k.degree}")
    return h, k


def cmd_classify(args) -> dict:
    h = _load(args.group)
    res = classify_and_normalise(h)
    n = res.normaliser
    return {
        "degree": h.degree,
        "order": str(h.order()),
        "verdict": res.verdict,
        "class": res.group_class,
        "reason": res.reason,
        "path": res.path,
        "normaliser_order": None if n is None else str(n.order()),
        "normaliser_generators": None if n is None else [str(x) for x in n.generators],
        "witness": res.witness,
    }


def cmd_normalizer(args) -> dict:
    h, k = _load_pair(args)
    rep = normaliser_report(h, k)
    return {
        "degree": h.degree,
        "order": str(h.order()),
        "within": "Sym" if k is None else str(k.order()),
        "path": rep.path,
        "structural_path": rep.path != "fallback-backtrack",
        "normaliser_order": str(rep.group.order()),
        "normaliser_generators": [str(x) for x in rep.group.generators],
    }


def cmd_socle(args) -> dict:
    h = _load(args.group)
    if h.is_trivial():
        mins: list[Group] = []
        soc = h
    else:
        mins = minimal_normal_subgroups(h)
        soc = socle(h)
    return {
        "degree": h.degree,
        "order": str(h.order()),
        "socle": _group_summary(soc),
        "minimal_normal_subgroups": [_group_summary(m) for m in mins],
    }


def cmd_ample(args) -> dict:
    h = _load(args.group)
    cert = None if h.is_trivial() else detect_ample(h)
    return {
        "degree": h.degree,
        "order": str(h.order()),
        "ample": cert is not None,
        "certificate": None if cert is None else cert.as_dict(),
    }


def cmd_oracle(args) -> dict:
    h, k = _load_pair(args)
    if k is None:
        raise GroupFileError("oracle normalizer needs --in K")
    n = brute_normaliser(h, k)
    return {
        "degree": h.degree,
        "order": str(h.order()),
        "within": str(k.order()),
        "normaliser_order": str(n.order()),
        "normaliser_generators": [str(x) for x in n.generators],
    }


def _add_limit_flags(p: argparse.ArgumentParser, default) -> None:
    p.add_argument("--enum-limit", type=int, default=default, metavar="N",
                   help="max elements enumerated explicitly (env PERMNORM_ENUM_LIMIT)")
    p.add_argument("--coset-limit", type=int, default=default, metavar="N",
                   help="max cosets swept (env PERMNORM_COSET_LIMIT)")
    p.add_argument("--backtrack-limit", type=int, default=default, metavar="N",
                   help="max search nodes (env PERMNORM_BACKTRACK_LIMIT)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permnorm",
                                     description="Normalisers of permutation groups.")
    _add_limit_flags(parser, None)
    # limit flags may also follow the subcommand; SUPPRESS keeps them from
    # clobbering values given before it
    common = argparse.ArgumentParser(add_help=False)
    _add_limit_flags(common, argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common],
                       help="decide primitivity of N_Sym(n)(H) and compute it when primitive")
    p.add_argument("group", help="group file for H")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("normalizer", parents=[common], help="compute N_K(H), K defaults to Sym(n)")
    p.add_argument("group")
    p.add_argument("--in", dest="within", metavar="K", help="group file for K")
    p.set_defaults(func=cmd_normalizer)

    p = sub.add_parser("socle", parents=[common], help="socle and minimal normal subgroups")
    p.add_argument("group")
    p.set_defaults(func=cmd_socle)

    p = sub.add_parser("ample", parents=[common], help="product-action certificate, if any")
    p.add_argument("group")
    p.set_defaults(func=cmd_ample)

    p = sub.add_parser("oracle", parents=[common], help="brute-force ground truth")
    osub = p.add_subparsers(dest="oracle_command", required=True)
    q = osub.add_parser("normalizer", parents=[common])
    q.add_argument("group")
    q.add_argument("--in", dest="within", metavar="K", required=True)
    q.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a fixture group file to standard output")
    p.add_argument("name", help="one of: " + ", ".join(FIXTURE_NAMES))
    p.set_defaults(func=None)
    return parser


def run_cli(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        limits = Limits.from_env()
    except ValueError as exc:
        print(f"error: bad limit in environment: {exc}", file=stderr)
        return 1
    overrides = {"enum_limit": args.enum_limit, "coset_limit": args.coset_limit,
                 "backtrack_limit": args.backtrack_limit}
    if any(v is not None and v < 1 for v in overrides.values()):
        print("error: limits must be positive", file=stderr)
        return 1
    try:
        with limits_scope(limits, **overrides):
            if args.func is None:
                g = fixture(args.name)
                stdout.write(format_group_file(g, args.name))
                return 0
            report = args.func(args)
    except ResourceLimitError as exc:
        print(f"error: resource limit exceeded: {exc}", file=stderr)
        return 2
    except (GroupFileError, PermutationError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    stdout.write(json.dumps(report, indent=2) + "\n")
    return 0


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
