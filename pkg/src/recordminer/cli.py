"""Command line interface.

Subcommands: extract (page -> record report), eval (corpus -> scores),
overlay (page -> SVG of the geometry), fetch (URL -> verbatim snapshot).
Exit codes: 0 success, 1 usage error, 2 pipeline error, 3 I/O or network
error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from . import __version__
from .config import (ENV_CONFIG, OUTPUT_FORMATS, CliConfig, load_config,
                     parse_ratio)
from .dom import parse_html
from .errors import (FetchError, InputNotFound, NoChildren, RecordMinerError,
                     UsageError)
from .evaluation import CorpusResult, evaluate_corpus
from .fetch import fetch_url, save_snapshot
from .layout import layout_document
from .overlay import render_overlay
from .records import ExtractionResult, FieldTagSet, RecordKind, extract_all

REPORT_SCHEMA = 1


class _ArgumentParser(argparse.ArgumentParser):
    """argparse that reports usage problems instead of exiting."""

    def error(self, message: str):
        raise UsageError(message)


def _add_shared_flags(parser: argparse.ArgumentParser,
                      formats: tuple[str, ...] | None = None) -> None:
    parser.add_argument("--config", metavar="PATH",
                        help=f"key=value config file (default: ${ENV_CONFIG})")
    parser.add_argument("--nested-ratio", metavar="R",
                        help="field-count ratio marking a record nested (default 1.4)")
    parser.add_argument("--field-tags", metavar="TAGS",
                        help="comma-separated field tags (default td,tr,a)")
    parser.add_argument("--viewport", metavar="PX", type=int,
                        help="viewport width in pixels (default 1024)")
    parser.add_argument("--timeout", metavar="SECONDS", type=float,
                        help="network timeout for URL inputs (default 15)")
    if formats:
        parser.add_argument("--format", choices=formats,
                            help=f"output format (default {formats[0]})")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="recordminer",
                             description="Extract data records from HTML pages "
                                         "by page geometry.")
    parser.add_argument("--version", action="version",
                        version=f"recordminer {__version__}")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")

    p_extract = subparsers.add_parser(
        "extract", help="extract the data region and records from one page")
    p_extract.add_argument("input",
                           help="HTML file path, http(s) URL, or - for stdin")
    _add_shared_flags(p_extract, formats=OUTPUT_FORMATS)
    p_extract.set_defaults(func=cmd_extract)

    p_eval = subparsers.add_parser(
        "eval", help="score extraction against an annotated corpus directory")
    p_eval.add_argument("corpus", help="directory of page.html/page.truth.json pairs")
    _add_shared_flags(p_eval, formats=("table", "json"))
    p_eval.set_defaults(func=cmd_eval)

    p_overlay = subparsers.add_parser(
        "overlay", help="render the page geometry as SVG")
    p_overlay.add_argument("input",
                           help="HTML file path, http(s) URL, or - for stdin")
    _add_shared_flags(p_overlay)
    p_overlay.set_defaults(func=cmd_overlay)

    p_fetch = subparsers.add_parser(
        "fetch", help="save a page snapshot plus metadata sidecar")
    p_fetch.add_argument("url", help="http(s) URL to fetch")
    p_fetch.add_argument("out", help="file to write the body bytes to")
    p_fetch.add_argument("--config", metavar="PATH")
    p_fetch.add_argument("--timeout", metavar="SECONDS", type=float)
    p_fetch.add_argument("--user-agent", metavar="UA")
    p_fetch.set_defaults(func=cmd_fetch)

    return parser


def _build_config(args: argparse.Namespace) -> CliConfig:
    config_path = getattr(args, "config", None) or os.environ.get(ENV_CONFIG)
    cfg = load_config(config_path)
    if getattr(args, "nested_ratio", None) is not None:
        cfg = replace(cfg, nested_ratio=parse_ratio(args.nested_ratio))
    if getattr(args, "field_tags", None) is not None:
        try:
            cfg = replace(cfg, field_tags=FieldTagSet.from_csv(args.field_tags))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if getattr(args, "viewport", None) is not None:
        if args.viewport <= 0:
            raise UsageError(f"viewport must be positive, got {args.viewport}")
        cfg = replace(cfg, layout=replace(cfg.layout, viewport_width=args.viewport))
    if getattr(args, "timeout", None) is not None:
        if args.timeout <= 0:
            raise UsageError(f"timeout must be positive, got {args.timeout}")
        cfg = replace(cfg, fetch_timeout=args.timeout)
    if getattr(args, "format", None) is not None and args.format in OUTPUT_FORMATS:
        cfg = replace(cfg, output_format=args.format)
    return cfg


def _read_input(spec: str, cfg: CliConfig) -> tuple[bytes, str]:
    if spec == "-":
        return sys.stdin.buffer.read(), "<stdin>"
    if spec.startswith(("http://", "https://")):
        result = fetch_url(spec, timeout=cfg.fetch_timeout,
                           user_agent=cfg.user_agent)
        return result.body, spec
    path = Path(spec)
    if not path.is_file():
        raise InputNotFound(f"input file not found: {spec}")
    return path.read_bytes(), spec


def _record_payload(record) -> dict:
    assumed = record.kind is RecordKind.UNDETERMINED
    return {
        "node": record.node,
        "rect": record.rect.to_dict(),
        "kind": "flat" if assumed else record.kind.value,
        "kind_assumed": assumed,
        "field_count": record.field_count,
        "items": [{"node": item.source_node, "tag": item.tag,
                   "text": item.text, "empty": item.empty}
                  for item in record.items],
    }


def build_report(source: str, result: ExtractionResult, timing_ms: int) -> dict:
    region = result.region
    return {
        "schema": REPORT_SCHEMA,
        "source": source,
        "timing_ms": timing_ms,
        "region": {
            "node": region.container_node,
            "rect": region.rect.to_dict(),
            "avg_child_height": region.avg_child_height,
            "kept_children": list(region.kept_children),
        },
        "records": [_record_payload(r) for r in result.records],
    }


def _emit_error(exc: RecordMinerError) -> None:
    payload: dict = {
        "schema": REPORT_SCHEMA,
        "error": {
            "kind": type(exc).__name__,
            "stage": exc.stage,
            "message": str(exc),
        },
    }
    if isinstance(exc, FetchError):
        payload["error"]["fetch_kind"] = exc.kind
        if exc.status is not None:
            payload["error"]["status"] = exc.status
    print(json.dumps(payload, indent=2))


def cmd_extract(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    try:
        data, source = _read_input(args.input, cfg)
        start = time.monotonic()
        doc = parse_html(data)
        result = extract_all(doc, cfg.layout, cfg.field_tags, cfg.nested_ratio)
        timing_ms = int((time.monotonic() - start) * 1000)
        report = build_report(source, result, timing_ms)
    except FetchError as exc:
        _emit_error(exc)
        return 3
    except RecordMinerError as exc:
        _emit_error(exc)
        return 2
    if cfg.output_format == "ndjson":
        meta = {"schema": REPORT_SCHEMA, "type": "meta",
                "source": report["source"], "timing_ms": report["timing_ms"],
                "region": report["region"]}
        print(json.dumps(meta))
        for record in report["records"]:
            print(json.dumps(dict(record, type="record")))
    else:
        print(json.dumps(report, indent=2))
    return 0


def _format_metric(value: Fraction) -> str:
    return f"{float(value):.4f}"


def _render_eval_table(result: CorpusResult) -> str:
    width = max([len("TOTAL")] + [len(p.page_id) for p in result.pages]) + 2
    lines = [f"{'page':<{width}}{'cor':>5}{'wr':>8}{'nt':>5}{'et':>5}"
             f"{'recall':>9}{'precision':>11}"]
    for page in result.pages:
        wr = f"{page.false_positives}/{page.misses}"
        lines.append(f"{page.page_id:<{width}}{page.counts.ec:>5}{wr:>8}"
                     f"{page.counts.nt:>5}{page.counts.et:>5}"
                     f"{_format_metric(page.metrics.recall):>9}"
                     f"{_format_metric(page.metrics.precision):>11}"
                     + (f"  ! {page.error}" if page.error else ""))
    pooled = result.pooled_counts
    wr = f"{pooled.et - pooled.ec}/{pooled.nt - pooled.ec}"
    lines.append(f"{'TOTAL':<{width}}{pooled.ec:>5}{wr:>8}{pooled.nt:>5}"
                 f"{pooled.et:>5}{_format_metric(result.pooled.recall):>9}"
                 f"{_format_metric(result.pooled.precision):>11}")
    return "\n".join(lines)


def _eval_json(result: CorpusResult) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "pages": [{
            "page_id": p.page_id,
            "ec": p.counts.ec,
            "et": p.counts.et,
            "nt": p.counts.nt,
            "false_positives": p.false_positives,
            "misses": p.misses,
            "recall": float(p.metrics.recall),
            "precision": float(p.metrics.precision),
            "error": p.error,
        } for p in result.pages],
        "pooled": {
            "ec": result.pooled_counts.ec,
            "et": result.pooled_counts.et,
            "nt": result.pooled_counts.nt,
            "recall": float(result.pooled.recall),
            "precision": float(result.pooled.precision),
        },
    }


def cmd_eval(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        print(f"recordminer eval: corpus directory not found: {corpus}",
              file=sys.stderr)
        return 2
    try:
        result = evaluate_corpus(corpus, layout_config=cfg.layout,
                                 field_tags=cfg.field_tags,
                                 nested_ratio=cfg.nested_ratio)
    except RecordMinerError as exc:
        print(f"recordminer eval: {exc}", file=sys.stderr)
        return 2
    if getattr(args, "format", None) == "json":
        print(json.dumps(_eval_json(result), indent=2))
    else:
        print(_render_eval_table(result))
    return 0


def cmd_overlay(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    try:
        data, _source = _read_input(args.input, cfg)
        doc = parse_html(data)
        tree = layout_document(doc, cfg.layout)
        region = records = None
        try:
            result = extract_all(doc, cfg.layout, cfg.field_tags,
                                 cfg.nested_ratio)
            region, records = result.region, result.records
        except NoChildren:
            pass  # an empty page still gets its outline drawing
    except FetchError as exc:
        _emit_error(exc)
        return 3
    except RecordMinerError as exc:
        _emit_error(exc)
        return 2
    sys.stdout.write(render_overlay(tree, region, records))
    return 0


def cmd_fetch(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    timeout = args.timeout if args.timeout is not None else cfg.fetch_timeout
    if timeout <= 0:
        raise UsageError(f"timeout must be positive, got {timeout}")
    user_agent = args.user_agent if args.user_agent is not None else cfg.user_agent
    try:
        result = fetch_url(args.url, timeout=timeout, user_agent=user_agent)
    except FetchError as exc:
        print(f"recordminer fetch: {exc} (kind={exc.kind})", file=sys.stderr)
        return 3
    try:
        sidecar = save_snapshot(result, args.out)
    except OSError as exc:
        print(f"recordminer fetch: cannot write snapshot: {exc}", file=sys.stderr)
        return 3
    print(f"{args.out} ({len(result.body)} bytes, status {result.status}, "
          f"meta {sidecar.name})")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "func", None) is None:
            parser.print_usage(sys.stderr)
            return 1
        return args.func(args)
    except UsageError as exc:
        print(f"recordminer: {exc}", file=sys.stderr)
        return 1
    except FetchError as exc:
        print(f"recordminer: {exc}", file=sys.stderr)
        return 3
    except RecordMinerError as exc:
        print(f"recordminer: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"recordminer: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
