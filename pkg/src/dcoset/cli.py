"""Command-line interface.

Exit status: 0 success (a ``false`` membership answer included), 2 usage or
format error, 3 when ``separate``/``hall`` is asked to separate a member,
4 when ``verify`` rejects a certificate.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import certify
from .completion import complete, hall_witness
from .double_coset import member, separability_witness
from .errors import DcosetError, IsMember, MalformedCertificate, MemberAlready
from .graph import LabeledGraph, pullback, recognized_basis, subgroup_core, to_dot
from .words import format_list, format_word, max_letter, parse, parse_list

EXIT_USAGE = 2
EXIT_MEMBER = 3
EXIT_INVALID = 4


class UsageError(Exception):
    pass


def dumps(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode()


def _emit(data: bytes, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(data.decode())
    else:
        Path(out).write_bytes(data)


def _resolve_rank(args, *texts: str) -> int:
    inferred = max(1, max_letter(parse(w) for t in texts for w in t.split(",")))
    if args.rank is None:
        return inferred
    if args.rank < inferred:
        raise UsageError(f"--rank {args.rank} is smaller than letters used (rank {inferred})")
    return args.rank


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load_graph(path: str) -> LabeledGraph:
    """Graph JSON, or any document carrying one under "cover"."""
    data = _load_json(path)
    if "cover" in data:
        data = data["cover"]
    try:
        return LabeledGraph.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: not a graph: {exc}") from exc


def cmd_reduce(args) -> int:
    rank = _resolve_rank(args, args.word)
    print(format_word(parse(args.word, rank)))
    return 0


def _instance(args):
    rank = _resolve_rank(args, args.H, args.g, args.K, args.f)
    H = subgroup_core(parse_list(args.H, rank), rank)
    K = subgroup_core(parse_list(args.K, rank), rank)
    return H, parse(args.g, rank), K, parse(args.f, rank)


def cmd_member(args) -> int:
    print("true" if member(*_instance(args)) else "false")
    return 0


def cmd_hall(args) -> int:
    rank = _resolve_rank(args, args.H, args.f)
    H = subgroup_core(parse_list(args.H, rank), rank)
    try:
        m = hall_witness(H, parse(args.f, rank))
    except MemberAlready as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MEMBER
    _emit(dumps(m.to_json()), args.output)
    return 0


def cmd_separate(args) -> int:
    try:
        cert = separability_witness(*_instance(args))
    except IsMember as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MEMBER
    _emit(certify.encode(cert), args.output)
    return 0


def cmd_verify(args) -> int:
    try:
        cert = certify.decode(Path(args.file).read_bytes())
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    ok = certify.verify_certificate(cert)
    print("VALID" if ok else "INVALID")
    return 0 if ok else EXIT_INVALID


def cmd_index(args) -> int:
    print(_load_graph(args.file).n)
    return 0


def cmd_intersect(args) -> int:
    rank = _resolve_rank(args, args.A, args.B)
    a = subgroup_core(parse_list(args.A, rank), rank)
    b = subgroup_core(parse_list(args.B, rank), rank)
    print(format_list(recognized_basis(pullback(a.core, b.core))))
    return 0


def cmd_basis(args) -> int:
    g = _load_graph(args.file)
    if not g.is_folded:
        raise UsageError("basis needs a folded graph")
    print(format_list(recognized_basis(g)))
    return 0


def cmd_complete(args) -> int:
    report = complete(_load_graph(args.file))
    _emit(dumps(report.to_json()), args.output)
    return 0


def cmd_dot(args) -> int:
    sys.stdout.write(to_dot(_load_graph(args.file)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dcoset", description="Double cosets in free groups.")
    p.add_argument("--rank", type=int, default=None, help="rank of the free group (default: inferred)")
    sub = p.add_subparsers(dest="command", required=True)

    def instance(sp):
        sp.add_argument("-H", required=True, help="generators of H, comma-separated")
        sp.add_argument("-g", default="1")
        sp.add_argument("-K", required=True, help="generators of K, comma-separated")
        sp.add_argument("-f", required=True)

    sp = sub.add_parser("reduce")
    sp.add_argument("word")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("member")
    instance(sp)
    sp.set_defaults(func=cmd_member)

    sp = sub.add_parser("hall")
    sp.add_argument("-H", required=True)
    sp.add_argument("-f", required=True)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_hall)

    sp = sub.add_parser("separate")
    instance(sp)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_separate)

    sp = sub.add_parser("verify")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("index")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_index)

    sp = sub.add_parser("intersect")
    sp.add_argument("-A", required=True)
    sp.add_argument("-B", required=True)
    sp.set_defaults(func=cmd_intersect)

    sp = sub.add_parser("basis")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("complete")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_complete)

    sp = sub.add_parser("dot")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_dot)
    return p


def _with_rank_anywhere(argv: list[str]) -> list[str]:
    """Let --rank appear after the subcommand too."""
    out, rank = [], []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a == "--rank" and i + 1 < len(argv):
            rank = [a, argv[i + 1]]
            i += 2
            continue
        if a.startswith("--rank="):
            rank = [a]
        else:
            out.append(a)
        i += 1
    return rank + out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_with_rank_anywhere(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, MalformedCertificate, DcosetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


run = main


if __name__ == "__main__":
    sys.exit(main())
