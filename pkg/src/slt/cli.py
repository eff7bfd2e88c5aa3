"""``slt`` command line: check, lighten, traces, verify, emit-scribble.

Exit status is 0 on success, 1 when diagnostics were reported (or a
verification failed) and 2 on usage or I/O errors.  Results go to stdout,
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from pathlib import Path
from typing import Optional

from .core import Code, Diagnostic, Program, SltError, well_formed
from .lightener import DEFAULT_PREFIX, FreshNamer, apply_site, lighten_fully
from .redundancy import parse_path, site_at
from .scribble import emit, render_document
from .semantics import lang_eq, traces
from .syntax import ParseError, parse, print_program

OK, DIAGNOSTICS, USAGE = 0, 1, 2

_COLOURS = {"error": "\033[31m", "warning": "\033[33m"}


class _Exit(Exception):
    def __init__(self, status: int):
        self.status = status


def _use_colour(stream) -> bool:
    mode = os.environ.get("SLT_COLOR", "auto")
    return mode != "never" and hasattr(stream, "isatty") and stream.isatty()


def report(diags: list[Diagnostic], filename: str, stream=None) -> None:
    stream = stream or sys.stderr
    colour = _use_colour(stream)
    for d in diags:
        line = d.format(filename)
        if colour and d.severity in _COLOURS:
            line = _COLOURS[d.severity] + line + "\033[0m"
        print(line, file=stream)


def load(path: str) -> Program:
    """Read, parse and check ``path``; reports and raises ``_Exit`` on failure."""
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        report([Diagnostic(Code.IO_ERROR, f"cannot read file: {e.strerror or e}")], path)
        raise _Exit(USAGE) from None
    try:
        prog = parse(data)
    except ParseError as e:
        report(e.diagnostics, path)
        raise _Exit(DIAGNOSTICS) from None
    diags = well_formed(*prog)
    if diags:
        report(diags, path)
        if any(d.severity == "error" for d in diags):
            raise _Exit(DIAGNOSTICS)
    return prog


def cmd_check(args) -> int:
    load(args.file)
    return OK


def cmd_lighten(args) -> int:
    prog = load(args.file)
    try:
        if args.at is None:
            out = lighten_fully(*prog, prefix=args.prefix, dedup=args.dedup)
        else:
            owner, _, path = args.at.rpartition(":")
            owner = owner or None
            if owner is not None and owner not in prog.decls:
                raise SltError(Diagnostic(Code.SITE_STALE, f"no declaration named {owner}"))
            target = prog.main if owner is None else prog.decls[owner]
            site = site_at(target, parse_path(path))
            namer = FreshNamer(args.prefix, taken=set(prog.decls))
            out = apply_site(*prog, owner, site, namer)
    except SltError as e:
        report([e.diagnostic], args.file)
        return DIAGNOSTICS
    check = lang_eq(*prog, *out)
    if not check:
        report(
            [Diagnostic(Code.LANG_MISMATCH, f"lightening changed the trace language (witness: {check.witness})")],
            args.file,
        )
        return DIAGNOSTICS
    sys.stdout.write(print_program(*out))
    return OK


def cmd_traces(args) -> int:
    prog = load(args.file)
    for line in traces(*prog).lines():
        print(line)
    return OK


def cmd_verify(args) -> int:
    first = load(args.file1)
    second = load(args.file2)
    result = lang_eq(*first, *second)
    if result:
        return OK
    where = args.file1 if result.only_in == 1 else args.file2
    print(f"only-in: {where} {result.witness}")
    return DIAGNOSTICS


def _protocol_name(path: str) -> str:
    stem = re.sub(r"\W", "_", Path(path).stem)
    return stem if re.match(r"[A-Za-z_]", stem) else "P_" + stem


def cmd_emit_scribble(args) -> int:
    prog = load(args.file)
    docs = emit(args.name or _protocol_name(args.file), *prog)
    if args.out_dir is None:
        sys.stdout.write(render_document(docs))
        return OK
    try:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for doc in docs:
            (out / f"{doc.name}.scr").write_text(doc.render(), encoding="utf-8")
    except OSError as e:
        report([Diagnostic(Code.IO_ERROR, f"cannot write to {args.out_dir}: {e.strerror or e}")], args.file)
        return USAGE
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slt", description="Lighten multiparty global session types.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="parse and check well-formedness")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("lighten", help="remove redundant interactions")
    s.add_argument("file")
    s.add_argument("--prefix", default=DEFAULT_PREFIX, help="fresh declaration name prefix (default L)")
    s.add_argument("--dedup", action="store_true", help="share fresh declarations with equal bodies")
    s.add_argument(
        "--at",
        metavar="[DECL:]PATH",
        help="eliminate only the site at PATH (labels joined by '/', <root> for the top)",
    )
    s.set_defaults(func=cmd_lighten)

    s = sub.add_parser("traces", help="list the trace language")
    s.add_argument("file")
    s.set_defaults(func=cmd_traces)

    s = sub.add_parser("verify", help="compare the trace languages of two files")
    s.add_argument("file1")
    s.add_argument("file2")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("emit-scribble", help="render Scribble-style protocols")
    s.add_argument("file")
    s.add_argument("--out-dir", help="write one <protocol>.scr per protocol here")
    s.add_argument("--name", help="protocol name for main (default: file stem)")
    s.set_defaults(func=cmd_emit_scribble)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "prefix", None) is not None and not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", args.prefix):
        print(f"slt: invalid --prefix {args.prefix!r}", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except _Exit as e:
        return e.status


if __name__ == "__main__":
    sys.exit(main())
