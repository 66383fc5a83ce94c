"""
Command-line interface.

Exit status: 0 success, 1 domain failure or malformed input (one diagnostic
line on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import docs
from .bandword import BandwordError, MoveError, analyze
from .core import EspalierError, fmt_edge, validate
from .normalize import NormalizeError, classify, extract_basket, reduce_c, to_star
from .render import render_fence
from .verify import verify_trace

RENDER_HELP = (
    "Draw the charged fence diagram of a bandword. Rows run bottom to top in "
    "word order (the first band is the lowest row, matching increasing handle "
    "heights); each crossbar joins the wires of its band and carries its charge "
    "at the right end."
)


class DomainError(Exception):
    pass


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    return p.read_text()


def _load(path: str):
    return docs.load_text_or_json(_read(path))


def _bandword(doc):
    b, edges = docs.bandword_from_doc(doc)
    return b, docs.espalier_for(b, edges)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    doc = _load(args.input)
    if isinstance(doc, dict) and "edges" in doc and "word" not in doc:
        vs, es = docs.raw_espalier(doc)
        problems = validate(vs, es)
        if problems:
            raise DomainError("; ".join(str(p) for p in problems))
        print("ok: espalier")
        return 0
    b, edges = docs.bandword_from_doc(doc)
    if edges is not None:
        problems = validate(b.vertices, edges)
        if problems:
            raise DomainError("; ".join(str(p) for p in problems))
        t = docs.espalier_for(b, edges)
        stray = sorted(b.supports() - t.edges)
        if stray:
            raise DomainError(f"band support {fmt_edge(stray[0])} is not an espalier edge")
        print("ok: bandword over espalier")
    else:
        print("ok: embedded band representation")
    return 0


def cmd_analyze(args) -> int:
    doc = _load(args.input)
    b, edges = docs.bandword_from_doc(doc)
    t = docs.espalier_for(b, edges) if edges is not None else None
    print(docs.dumps(docs.report_to_doc(analyze(b, t))))
    return 0


def cmd_classify(args) -> int:
    b, t = _bandword(_load(args.input))
    c = classify(b, t)
    print(docs.dumps(docs.classification_to_doc(c, emit_trace=args.emit_trace, espalier=t)))
    return 0


def cmd_normalize(args) -> int:
    b, t = _bandword(_load(args.input))
    s = to_star(b, t)
    r = reduce_c(s.word, s.espalier)
    trace = s.trace.then(r.trace)
    doc = {
        "basket": docs.basket_to_doc(extract_basket(r.word)),
        "word": docs.bandword_to_doc(r.word, r.espalier),
        "trace": docs.trace_to_doc(trace, t),
    }
    print(docs.dumps(doc))
    return 0


def cmd_verify_trace(args) -> int:
    trace = docs.trace_from_doc(_load(args.input))
    v = verify_trace(trace)
    if not v:
        raise DomainError(f"step {v.step}: {v.reason}")
    print(f"ok: {len(trace)} steps verified")
    return 0


def cmd_render(args) -> int:
    doc = _load(args.input)
    b, _ = docs.bandword_from_doc(doc)
    _emit(render_fence(b, args.format), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="espalier", description="Bandword surfaces over espaliers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, description=None):
        p = sub.add_parser(name, help=help_text, description=description or help_text)
        p.add_argument("input", nargs="?", default="-", help="document path, or - for stdin (default)")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check an espalier or bandword document")
    add("analyze", cmd_analyze, "print the invariant report as JSON")
    p = add("classify", cmd_classify, "classify as fibered, compressible or disconnected")
    p.add_argument("--emit-trace", action="store_true", help="include the verified move trace for fibered results")
    add("normalize", cmd_normalize, "rewrite a homogeneous bandword to its Hopf-plumbed basket, with trace")
    add("verify-trace", cmd_verify_trace, "replay and check a move trace; exit 1 on the first bad step")
    p = add("render", cmd_render, "draw a charged fence diagram", RENDER_HELP)
    p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    p.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")
    return parser


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"espalier: {exc}", file=sys.stderr)
        return 2
    except (DomainError, docs.DocumentError, EspalierError, BandwordError, MoveError, NormalizeError) as exc:
        print(f"espalier {args.command}: {' '.join(str(exc).split())}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
