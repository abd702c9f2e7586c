"""Geometric data-region and record extraction from HTML listing pages."""

from .dom import Document, DomNode, find_body, parse_html, serialize
from .layout import (LayoutConfig, LayoutTree, Rect, layout_document, rect_area,
                     rect_of)
from .region import (DataRegion, filter_data_region, find_container,
                     find_max_rect, mine_region)
from .records import (DEFAULT_FIELD_TAGS, DEFAULT_NESTED_RATIO, DataItem,
                      DataRecord, ExtractionResult, FieldTagSet, RecordKind,
                      classify_records, count_fields, extract_all,
                      extract_data_items, extract_data_records)
from .evaluation import (CorpusResult, GroundTruth, MatchCounts, Metrics,
                         PageOutcome, TruthRecord, compute_metrics,
                         evaluate_corpus, evaluate_page, load_ground_truth,
                         match_records, resolve_selector)
from . import errors

__version__ = "0.1.0"

__all__ = [
    "Document", "DomNode", "find_body", "parse_html", "serialize",
    "LayoutConfig", "LayoutTree", "Rect", "layout_document", "rect_area",
    "rect_of",
    "DataRegion", "filter_data_region", "find_container", "find_max_rect",
    "mine_region",
    "DEFAULT_FIELD_TAGS", "DEFAULT_NESTED_RATIO", "DataItem", "DataRecord",
    "ExtractionResult", "FieldTagSet", "RecordKind", "classify_records",
    "count_fields", "extract_all", "extract_data_items", "extract_data_records",
    "CorpusResult", "GroundTruth", "MatchCounts", "Metrics", "PageOutcome",
    "TruthRecord", "compute_metrics", "evaluate_corpus", "evaluate_page",
    "load_ground_truth", "match_records", "resolve_selector",
    "errors",
    "__version__",
]
