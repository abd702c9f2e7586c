"""Scoring extracted records against hand-written annotations.

A truth file is JSON::

    {"schema": 1, "page_id": "shop1", "records": [
        {"selector": [1, 0], "kind": "flat", "field_count": 5},
        ...]}

``selector`` is a path of element-child indexes starting at body (text
nodes are not counted).  A truth record matches an extracted record when
both resolve to the same node, or, as a fallback for near-miss nodes,
when their rectangles overlap with IoU >= 0.8.  Matching is one-to-one
and greedy in document order.  Recall is Ec/Nt and precision Ec/Et,
computed as exact rationals; corpus scores pool the counts before
dividing (micro-average).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .dom import Document, parse_html
from .errors import (DuplicateSelector, EmptyCorpus, RecordMinerError,
                     SchemaError, SelectorResolutionError)
from .layout import LayoutConfig, LayoutTree, Rect
from .records import (DEFAULT_FIELD_TAGS, DEFAULT_NESTED_RATIO, DataRecord,
                      FieldTagSet, extract_all)

_KINDS = ("flat", "nested")


@dataclass(frozen=True)
class TruthRecord:
    selector: tuple[int, ...]
    kind: str
    field_count: int | None = None


@dataclass
class GroundTruth:
    page_id: str
    records: list[TruthRecord]


@dataclass(frozen=True)
class MatchCounts:
    ec: int  # correctly extracted
    et: int  # total extracted
    nt: int  # total true records

    def __post_init__(self) -> None:
        if not (0 <= self.ec <= min(self.et, self.nt)):
            raise ValueError(
                f"inconsistent counts: ec={self.ec} et={self.et} nt={self.nt}")


@dataclass(frozen=True)
class Metrics:
    recall: Fraction
    precision: Fraction


def load_ground_truth(path: str | Path) -> GroundTruth:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise SchemaError(f"cannot read truth file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"truth file {path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise SchemaError(f"truth file {path}: top level must be an object")
    if payload.get("schema") != 1:
        raise SchemaError(f"truth file {path}: unsupported schema "
                          f"{payload.get('schema')!r}")
    page_id = payload.get("page_id")
    if not isinstance(page_id, str) or not page_id:
        raise SchemaError(f"truth file {path}: page_id must be a non-empty string")
    raw_records = payload.get("records")
    if not isinstance(raw_records, list):
        raise SchemaError(f"truth file {path}: records must be a list")
    seen: set[tuple[int, ...]] = set()
    records: list[TruthRecord] = []
    for pos, entry in enumerate(raw_records):
        where = f"truth file {path}, record {pos}"
        if not isinstance(entry, dict):
            raise SchemaError(f"{where}: must be an object")
        selector = entry.get("selector")
        if (not isinstance(selector, list) or
                not all(isinstance(i, int) and not isinstance(i, bool) and i >= 0
                        for i in selector)):
            raise SchemaError(f"{where}: selector must be a list of "
                              f"non-negative integers")
        kind = entry.get("kind")
        if kind not in _KINDS:
            raise SchemaError(f"{where}: kind must be one of {_KINDS}")
        field_count = entry.get("field_count")
        if field_count is not None and (not isinstance(field_count, int)
                                        or isinstance(field_count, bool)
                                        or field_count < 0):
            raise SchemaError(f"{where}: field_count must be a non-negative "
                              f"integer when present")
        key = tuple(selector)
        if key in seen:
            raise DuplicateSelector(f"{where}: selector {selector} appears twice")
        seen.add(key)
        records.append(TruthRecord(key, kind, field_count))
    return GroundTruth(page_id, records)


def resolve_selector(doc: Document, selector: tuple[int, ...] | list[int]) -> int:
    """Node id reached by following element-child indexes from body."""
    node = doc.body
    for depth, index in enumerate(selector):
        elements = node.element_children()
        if index >= len(elements):
            raise SelectorResolutionError(
                f"selector {list(selector)}: index {index} at depth {depth} "
                f"out of range ({len(elements)} element children)")
        node = elements[index]
    return node.node_id


def _iou_matches(a: Rect, b: Rect) -> bool:
    # IoU >= 0.8 compared exactly: 5 * intersection >= 4 * union
    overlap_w = min(a.right, b.right) - max(a.left, b.left)
    overlap_h = min(a.bottom, b.bottom) - max(a.top, b.top)
    inter = overlap_w * overlap_h if overlap_w > 0 and overlap_h > 0 else 0
    union = a.area + b.area - inter
    return union > 0 and 5 * inter >= 4 * union


def match_records(extracted: list[DataRecord], truth: GroundTruth,
                  tree: LayoutTree) -> MatchCounts:
    """One-to-one matching of truth records to extracted records."""
    doc = tree.document
    resolved = [resolve_selector(doc, t.selector) for t in truth.records]
    truth_order = sorted(range(len(resolved)), key=lambda i: resolved[i])
    ex_order = sorted(extracted, key=lambda r: r.node)
    matched_truth: set[int] = set()
    matched_nodes: set[int] = set()
    ec = 0
    for i in truth_order:  # exact node identity first
        for record in ex_order:
            if record.node == resolved[i] and record.node not in matched_nodes:
                matched_truth.add(i)
                matched_nodes.add(record.node)
                ec += 1
                break
    for i in truth_order:  # geometric fallback for the remainder
        if i in matched_truth:
            continue
        truth_rect = tree.rects.get(resolved[i])
        if truth_rect is None:
            continue
        for record in ex_order:
            if record.node in matched_nodes:
                continue
            if _iou_matches(truth_rect, record.rect):
                matched_truth.add(i)
                matched_nodes.add(record.node)
                ec += 1
                break
    return MatchCounts(ec, len(extracted), len(truth.records))


def compute_metrics(counts: MatchCounts) -> Metrics:
    recall = Fraction(counts.ec, counts.nt) if counts.nt else Fraction(1)
    precision = Fraction(counts.ec, counts.et) if counts.et else Fraction(1)
    return Metrics(recall, precision)


@dataclass
class PageOutcome:
    page_id: str
    counts: MatchCounts
    metrics: Metrics
    error: str | None = None

    @property
    def false_positives(self) -> int:
        return self.counts.et - self.counts.ec

    @property
    def misses(self) -> int:
        return self.counts.nt - self.counts.ec


@dataclass
class CorpusResult:
    pages: list[PageOutcome]
    pooled_counts: MatchCounts
    pooled: Metrics


def evaluate_page(html_path: str | Path, truth_path: str | Path, *,
                  layout_config: LayoutConfig | None = None,
                  field_tags: FieldTagSet = DEFAULT_FIELD_TAGS,
                  nested_ratio=DEFAULT_NESTED_RATIO) -> PageOutcome:
    """Extract one page and score it against its annotation.

    Failures in parsing, layout or extraction score the page as
    (0, 0, Nt) with the error recorded; a broken truth file raises.
    """
    truth = load_ground_truth(truth_path)
    nt = len(truth.records)
    try:
        data = Path(html_path).read_bytes()
        doc = parse_html(data)
        result = extract_all(doc, layout_config, field_tags, nested_ratio)
        counts = match_records(result.records, truth, result.tree)
        return PageOutcome(truth.page_id, counts, compute_metrics(counts))
    except (RecordMinerError, OSError) as exc:
        counts = MatchCounts(0, 0, nt)
        return PageOutcome(truth.page_id, counts, compute_metrics(counts),
                           error=str(exc))


def evaluate_corpus(corpus_dir: str | Path, *,
                    layout_config: LayoutConfig | None = None,
                    field_tags: FieldTagSet = DEFAULT_FIELD_TAGS,
                    nested_ratio=DEFAULT_NESTED_RATIO) -> CorpusResult:
    """Score every page/annotation pair in a directory and pool the counts."""
    corpus = Path(corpus_dir)
    pages = sorted(corpus.glob("*.html"))
    if not pages:
        raise EmptyCorpus(f"no pages found in {corpus}")
    outcomes: list[PageOutcome] = []
    for page in pages:
        page_id = page.name[:-len(".html")]
        truth_path = page.with_name(page_id + ".truth.json")
        if not truth_path.exists():
            counts = MatchCounts(0, 0, 0)
            outcomes.append(PageOutcome(page_id, counts, compute_metrics(counts),
                                        error="truth file missing"))
            continue
        try:
            outcomes.append(evaluate_page(page, truth_path,
                                          layout_config=layout_config,
                                          field_tags=field_tags,
                                          nested_ratio=nested_ratio))
        except SchemaError as exc:
            counts = MatchCounts(0, 0, 0)
            outcomes.append(PageOutcome(page_id, counts, compute_metrics(counts),
                                        error=str(exc)))
    pooled_counts = MatchCounts(sum(o.counts.ec for o in outcomes),
                                sum(o.counts.et for o in outcomes),
                                sum(o.counts.nt for o in outcomes))
    return CorpusResult(outcomes, pooled_counts, compute_metrics(pooled_counts))
