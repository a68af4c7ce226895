"""Command-line front end: convert, inflect, flatten, compile, stats,
lookup, tag, search, validate, serve.

Every subcommand is a thin composition of library calls.  Diagnostics go
to stderr; data goes to files or stdout, so identical inputs and flags
produce byte-identical outputs.  Timing lines ("elapsed_ms=<n>") go to
stderr to keep data outputs deterministic.

Exit codes: 0 success, 1 data/validation error, 2 usage error.
"""

import argparse
import sys
import time
from pathlib import Path

from . import annotate, dela, fsa, inflect, masks, xmlio
from .model import Lexicon, LexiconError

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE_ERROR = 2

FORMATS = ("delaf", "delas", "xml")
FORMAT_KINDS = {"delaf": "wordform", "delas": "lemma"}


def _read_lexicon(path: str, fmt: str) -> Lexicon:
    data = Path(path).read_bytes()
    if fmt == "delaf":
        return dela.parse_delaf(data.decode("utf-8"))
    if fmt == "delas":
        return dela.parse_delas(data.decode("utf-8"))
    return xmlio.parse_lexicon(data)


def _write_lexicon(lexicon: Lexicon, path: str, fmt: str) -> None:
    if fmt == "delaf":
        data = dela.write_delaf(lexicon).encode("utf-8")
    elif fmt == "delas":
        data = dela.write_delas(lexicon).encode("utf-8")
    else:
        data = xmlio.write_lexicon(lexicon)
    Path(path).write_bytes(data)


def _sniff_format(path: str, text_format: str) -> str:
    """Distinguish an XML lexicon from a DELA text file by the leading '<'."""
    data = Path(path).read_bytes()
    head = data.lstrip(b"\xef\xbb\xbf \t\r\n")
    return "xml" if head.startswith(b"<") else text_format


def _expect_kind(lexicon: Lexicon, kind: str, path: str) -> Lexicon:
    if lexicon.kind != kind:
        raise LexiconError(f"{path}: expected a {kind} lexicon, found {lexicon.kind}")
    return lexicon


def _load_paradigms(path: str) -> inflect.ParadigmSet:
    return inflect.parse_paradigms(Path(path).read_text("utf-8"))


def _cmd_convert(args, stdout, stderr) -> int:
    lexicon = _read_lexicon(args.input, args.src)
    if args.dst in FORMAT_KINDS:
        _expect_kind(lexicon, FORMAT_KINDS[args.dst], args.input)
    _write_lexicon(lexicon, args.output, args.dst)
    return EXIT_OK


def _cmd_inflect(args, stdout, stderr) -> int:
    paradigms = _load_paradigms(args.paradigms)
    lexicon = _read_lexicon(args.input, _sniff_format(args.input, "delas"))
    _expect_kind(lexicon, "lemma", args.input)
    mixed = inflect.expand_lexicon(lexicon, paradigms)
    Path(args.output).write_bytes(xmlio.write_lexicon(mixed))
    return EXIT_OK


def _cmd_flatten(args, stdout, stderr) -> int:
    lexicon = xmlio.parse_lexicon(Path(args.input).read_bytes())
    _expect_kind(lexicon, "mixed", args.input)
    Path(args.output).write_bytes(xmlio.write_lexicon(inflect.flatten(lexicon)))
    return EXIT_OK


def _cmd_compile(args, stdout, stderr) -> int:
    lexicon = _read_lexicon(args.input, _sniff_format(args.input, "delaf"))
    _expect_kind(lexicon, "wordform", args.input)
    started = time.perf_counter()
    compiled = fsa.compile(lexicon)
    data = fsa.write_binary(compiled)
    print(f"elapsed_ms={int((time.perf_counter() - started) * 1000)}", file=stderr)
    Path(args.output).write_bytes(data)
    return EXIT_OK


def _cmd_stats(args, stdout, stderr) -> int:
    compiled = fsa.read_binary(Path(args.index).read_bytes())
    s = fsa.stats(compiled)
    print(
        f"state_count={s.state_count} transition_count={s.transition_count} "
        f"key_count={s.key_count} analysis_count={s.analysis_count} "
        f"serialized_bytes={s.serialized_bytes}",
        file=stdout,
    )
    return EXIT_OK


def _cmd_lookup(args, stdout, stderr) -> int:
    compiled = fsa.read_binary(Path(args.index).read_bytes())
    for tag in annotate.lookup(compiled, args.form, args.case):
        print(dela.format_analysis(tag.lemma, tag.pos, tag.features), file=stdout)
    return EXIT_OK


def _cmd_tag(args, stdout, stderr) -> int:
    compiled = fsa.read_binary(Path(args.index).read_bytes())
    text = Path(args.input).read_text("utf-8")
    started = time.perf_counter()
    annotated = annotate.tag_corpus(compiled, text, args.case)
    data = annotate.write_annotated(annotated)
    print(f"elapsed_ms={int((time.perf_counter() - started) * 1000)}", file=stderr)
    Path(args.output).write_bytes(data)
    return EXIT_OK


def _cmd_search(args, stdout, stderr) -> int:
    compiled = fsa.read_binary(Path(args.index).read_bytes())
    text = Path(args.input).read_text("utf-8")
    patterns = []
    for line in Path(args.patterns).read_text("utf-8").split("\n"):
        if not line.strip() or line.startswith("#"):
            continue
        patterns.append(masks.parse_pattern_line(line))
    annotated = annotate.tag_corpus(compiled, text, args.case)
    for pattern in patterns:
        for span in masks.search(pattern, annotated):
            surface = " ".join(
                annotated[i].token.surface
                for i in range(span.first_token, span.last_token + 1)
            )
            print(f"{span.first_token} {span.last_token} {surface}", file=stdout)
    return EXIT_OK


def _cmd_validate(args, stdout, stderr) -> int:
    issues = xmlio.validate(Path(args.input).read_bytes())
    for issue in issues:
        print(f"{issue.line}:{issue.column}: {issue.severity}: {issue.message}", file=stdout)
    return EXIT_OK if not issues else EXIT_DATA_ERROR


def _cmd_serve(args, stdout, stderr) -> int:
    import uvicorn

    from .service import build_server_app

    static_dir = Path(args.static) if args.static else None
    app = build_server_app(args.lexicon, args.paradigms, static_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def _add_case_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--case",
        choices=("exact", "smart"),
        default="smart",
        help="case policy at lookup time (default: smart)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lexkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    convert = sub.add_parser("convert", help="convert between lexicon formats")
    convert.add_argument("--from", dest="src", required=True, choices=FORMATS)
    convert.add_argument("--to", dest="dst", required=True, choices=FORMATS)
    convert.add_argument("input")
    convert.add_argument("output")
    convert.set_defaults(func=_cmd_convert)

    inflect_cmd = sub.add_parser("inflect", help="lemma lexicon -> mixed XML")
    inflect_cmd.add_argument("--paradigms", required=True)
    inflect_cmd.add_argument("input")
    inflect_cmd.add_argument("output")
    inflect_cmd.set_defaults(func=_cmd_inflect)

    flatten_cmd = sub.add_parser("flatten", help="mixed XML -> wordform XML")
    flatten_cmd.add_argument("input")
    flatten_cmd.add_argument("output")
    flatten_cmd.set_defaults(func=_cmd_flatten)

    compile_cmd = sub.add_parser("compile", help="wordform lexicon -> binary index")
    compile_cmd.add_argument("input")
    compile_cmd.add_argument("output")
    compile_cmd.set_defaults(func=_cmd_compile)

    stats_cmd = sub.add_parser("stats", help="print index statistics")
    stats_cmd.add_argument("index")
    stats_cmd.set_defaults(func=_cmd_stats)

    lookup_cmd = sub.add_parser("lookup", help="look up one form in an index")
    lookup_cmd.add_argument("index")
    lookup_cmd.add_argument("form")
    _add_case_flag(lookup_cmd)
    lookup_cmd.set_defaults(func=_cmd_lookup)

    tag_cmd = sub.add_parser("tag", help="tag a text file against an index")
    tag_cmd.add_argument("index")
    tag_cmd.add_argument("input")
    tag_cmd.add_argument("output")
    _add_case_flag(tag_cmd)
    tag_cmd.set_defaults(func=_cmd_tag)

    search_cmd = sub.add_parser("search", help="search mask patterns in a tagged text")
    search_cmd.add_argument("index")
    search_cmd.add_argument("input")
    search_cmd.add_argument("patterns")
    _add_case_flag(search_cmd)
    search_cmd.set_defaults(func=_cmd_search)

    validate_cmd = sub.add_parser("validate", help="validate an XML lexicon")
    validate_cmd.add_argument("input")
    validate_cmd.set_defaults(func=_cmd_validate)

    serve_cmd = sub.add_parser("serve", help="run the management service")
    serve_cmd.add_argument("--lexicon", required=True)
    serve_cmd.add_argument("--paradigms", required=True)
    serve_cmd.add_argument("--port", type=int, default=8000)
    serve_cmd.add_argument("--host", default="127.0.0.1")
    serve_cmd.add_argument("--static", default="frontend/dist")
    serve_cmd.set_defaults(func=_cmd_serve)

    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE_ERROR
    try:
        return args.func(args, stdout, stderr)
    except LexiconError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DATA_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DATA_ERROR


def main() -> None:
    sys.exit(run())
