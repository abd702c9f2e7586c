"""Record extraction and flat/nested classification.

Region children become records by the same height-vs-average test used
for region filtering.  Records are then told apart structurally: the
field count of a record is the number of field-tag elements in its
subtree, and a record carrying at least ``nested_ratio`` times the
fields of its neighbour is classified Nested while the neighbour is
Flat.  Near-equal counts defer to the following records and default to
Flat when never resolved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .dom import Document, DomNode, ELEMENT, TEXT, iter_nodes
from .errors import NoChildren
from .layout import LayoutConfig, LayoutTree, Rect, layout_document
from .region import DataRegion, filter_data_region, find_container, find_max_rect

DEFAULT_NESTED_RATIO = Fraction(7, 5)


class RecordKind(Enum):
    FLAT = "flat"
    NESTED = "nested"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class FieldTagSet:
    """Element tags treated as data fields."""

    tags: frozenset[str] = frozenset({"td", "tr", "a"})

    def __post_init__(self) -> None:
        if not self.tags:
            raise ValueError("field tag set must not be empty")
        object.__setattr__(self, "tags", frozenset(t.lower() for t in self.tags))

    @classmethod
    def from_csv(cls, csv: str) -> "FieldTagSet":
        tags = frozenset(t.strip().lower() for t in csv.split(",") if t.strip())
        return cls(tags)

    def __contains__(self, tag: str) -> bool:
        return tag in self.tags

    def __iter__(self):
        return iter(sorted(self.tags))


DEFAULT_FIELD_TAGS = FieldTagSet()


@dataclass
class DataItem:
    source_node: int
    tag: str
    text: str

    @property
    def empty(self) -> bool:
        return not self.text


@dataclass
class DataRecord:
    node: int
    rect: Rect
    field_count: int = 0
    kind: RecordKind = RecordKind.UNDETERMINED
    items: list[DataItem] = field(default_factory=list)


@dataclass
class ExtractionResult:
    region: DataRegion
    records: list[DataRecord]
    tree: LayoutTree


def extract_data_records(tree: LayoutTree, region: DataRegion) -> list[DataRecord]:
    """One record per kept region child at or above their average height."""
    if not region.kept_children:
        raise NoChildren("region has no kept children", stage="records")
    heights = [tree.rects[nid].height for nid in region.kept_children]
    avg = sum(heights) // len(heights)
    return [DataRecord(nid, tree.rects[nid])
            for nid, h in zip(region.kept_children, heights) if h >= avg]


def count_fields(doc: Document, record_node: int,
                 fields: FieldTagSet = DEFAULT_FIELD_TAGS) -> int:
    """Number of field-tag elements in the record subtree, itself included."""
    node = doc.node(record_node)
    count = 0
    for el in iter_nodes(node):
        if el.kind == ELEMENT and el.tag in fields:
            count += 1
    return count


def _ratio_parts(ratio) -> tuple[int, int]:
    if isinstance(ratio, Fraction):
        frac = ratio
    elif isinstance(ratio, float):
        frac = Fraction(str(ratio))
    else:
        frac = Fraction(ratio)
    if frac <= 1:
        raise ValueError(f"nested ratio must exceed 1, got {ratio}")
    return frac.numerator, frac.denominator


def classify_records(records: list[DataRecord],
                     nested_ratio=DEFAULT_NESTED_RATIO) -> list[DataRecord]:
    """Assign Flat or Nested to each record by pairwise field-count ratio.

    Comparisons are exact rational arithmetic, so classification is scale
    invariant in the counts.  A single record stays Undetermined.
    """
    num, den = _ratio_parts(nested_ratio)
    n = len(records)
    if n < 2:
        return records
    counts = [r.field_count for r in records]
    kinds: list[RecordKind | None] = [None] * n
    while True:
        pending = [i for i in range(n) if kinds[i] is None]
        if not pending:
            break
        head = pending[0]
        chain = [head]
        resolved = False
        for j in pending[1:]:
            a, b = counts[head], counts[j]
            if a == b:
                chain.append(j)
            elif b * den >= a * num:
                # later record dominates: it is Nested, the chain is Flat
                kinds[j] = RecordKind.NESTED
                for k in chain:
                    kinds[k] = RecordKind.FLAT
                resolved = True
                break
            elif a * den >= b * num:
                kinds[head] = RecordKind.NESTED
                kinds[j] = RecordKind.FLAT
                resolved = True
                break
            else:
                chain.append(j)  # within ratio both ways: defer
        if not resolved:
            for k in chain:
                kinds[k] = RecordKind.FLAT
    for record, kind in zip(records, kinds):
        record.kind = kind
    return records


def _normalized_text(node: DomNode) -> str:
    parts: list[str] = []
    stack = [node]
    while stack:
        current = stack.pop()
        if current.kind == TEXT:
            parts.append(current.text)
            continue
        if current.tag in ("script", "style"):
            continue  # code and styling are not data
        for child in reversed(current.children):
            stack.append(child)
    return " ".join("".join(parts).split())


def extract_data_items(doc: Document, record: DataRecord,
                       fields: FieldTagSet = DEFAULT_FIELD_TAGS) -> list[DataItem]:
    """One item per field-tag element under the record, document order.

    Items with empty text are kept so the item count always equals the
    record's field count.
    """
    node = doc.node(record.node)
    items: list[DataItem] = []
    for el in iter_nodes(node):
        if el.kind == ELEMENT and el.tag in fields:
            items.append(DataItem(el.node_id, el.tag, _normalized_text(el)))
    return items


def extract_all(doc: Document, config: LayoutConfig | None = None,
                fields: FieldTagSet = DEFAULT_FIELD_TAGS,
                nested_ratio=DEFAULT_NESTED_RATIO) -> ExtractionResult:
    """Full pipeline: layout, region mining, records, classification, items."""
    tree = layout_document(doc, config)
    region = filter_data_region(tree, find_container(tree, find_max_rect(tree)))
    records = extract_data_records(tree, region)
    for record in records:
        record.field_count = count_fields(doc, record.node, fields)
    classify_records(records, nested_ratio)
    for record in records:
        record.items = extract_data_items(doc, record, fields)
    return ExtractionResult(region, records, tree)
