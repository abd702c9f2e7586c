import random
from fractions import Fraction

import pytest

from recordminer.dom import parse_html
from recordminer.errors import NoChildren
from recordminer.layout import LayoutConfig, Rect, layout_document
from recordminer.records import (
    DataRecord,
    FieldTagSet,
    RecordKind,
    classify_records,
    count_fields,
    extract_all,
    extract_data_items,
    extract_data_records,
)
from recordminer.region import DataRegion, mine_region
from support import random_page

FLAT_ROW_7 = ('<tr style="height:36px"><td>t1</td><td>t2</td>'
              "<td><a>l1</a></td><td><a>l2</a></td></tr>")
NESTED_ROW_12 = ('<tr style="height:36px"><td>n1</td>'
                 "<td><table><tr><td>i1</td><td>i2</td></tr>"
                 "<tr><td>i3</td><td>i4</td></tr></table></td>"
                 "<td><a>n2</a><a>n3</a></td></tr>")


def records_with_counts(counts):
    return [DataRecord(i, Rect(0, 0, 10, 10), field_count=c)
            for i, c in enumerate(counts)]


def kinds_for(counts, ratio=Fraction(7, 5)):
    return [r.kind for r in classify_records(records_with_counts(counts), ratio)]


F, N, U = RecordKind.FLAT, RecordKind.NESTED, RecordKind.UNDETERMINED


def test_field_tag_set():
    tags = FieldTagSet.from_csv(" td, TR ,a ")
    assert list(tags) == ["a", "td", "tr"]
    assert "tr" in tags and "div" not in tags
    with pytest.raises(ValueError):
        FieldTagSet(frozenset())
    with pytest.raises(ValueError):
        FieldTagSet.from_csv(" , ")


def test_records_repeat_the_height_filter():
    markup = ('<div style="width:800px;height:500px">'
              + "".join(f'<div style="width:800px;height:{h}px">x</div>'
                        for h in (120, 118, 122, 124))
              + "</div>")
    doc = parse_html(markup)
    tree = layout_document(doc)
    outer = doc.body.element_children()[0]
    region = DataRegion(outer.node_id,
                        [c.node_id for c in outer.element_children()],
                        tree.rects[outer.node_id], 121)
    records = extract_data_records(tree, region)
    # second averaging pass: (120+118+122+124)//4 = 121 keeps 122 and 124
    assert [r.rect.height for r in records] == [122, 124]
    assert [r.node for r in records] == region.kept_children[2:]
    assert all(r.kind is U and r.field_count == 0 for r in records)


def test_records_require_kept_children():
    doc = parse_html("<div>x</div>")
    tree = layout_document(doc)
    empty = DataRegion(doc.body.node_id, [], tree.rects[doc.body.node_id], 0)
    with pytest.raises(NoChildren) as err:
        extract_data_records(tree, empty)
    assert err.value.stage == "records"


def test_count_fields_flat_row():
    doc = parse_html("<table><tr><td>a</td><td>b</td>"
                     "<td><a href=x>c</a></td></tr></table>")
    tr = next(n for n in doc.nodes if n.is_element and n.tag == "tr")
    # the row itself + 3 cells + 1 link
    assert count_fields(doc, tr.node_id) == 5


def test_count_fields_nested_row():
    doc = parse_html(f"<table>{NESTED_ROW_12}</table>")
    tr = next(n for n in doc.nodes if n.is_element and n.tag == "tr")
    # 3 rows + 7 cells + 2 links across both table levels
    assert count_fields(doc, tr.node_id) == 12


def test_count_fields_custom_tags():
    doc = parse_html("<ul><li>a</li><li><a>b</a></li></ul>")
    ul = next(n for n in doc.nodes if n.is_element and n.tag == "ul")
    assert count_fields(doc, ul.node_id, FieldTagSet(frozenset({"li"}))) == 2
    assert count_fields(doc, ul.node_id, FieldTagSet(frozenset({"ul", "li"}))) == 3


def test_count_fields_is_additive_over_children():
    rng = random.Random(71)
    fields = FieldTagSet()
    for _ in range(25):
        doc = parse_html(random_page(rng))
        for node in doc.nodes:
            if not node.is_element:
                continue
            total = count_fields(doc, node.node_id)
            parts = sum(count_fields(doc, c.node_id)
                        for c in node.element_children())
            assert total == parts + (1 if node.tag in fields else 0)


def test_classify_pair_above_ratio():
    assert kinds_for([12, 7]) == [N, F]
    assert kinds_for([7, 12]) == [F, N]


def test_classify_equal_counts_all_flat():
    assert kinds_for([5, 5, 5]) == [F, F, F]


def test_classify_equal_chain_resolved_by_later_record():
    assert kinds_for([7, 7, 12]) == [F, F, N]
    assert kinds_for([10, 10, 14]) == [F, F, N]


def test_classify_head_dominates_and_chain_restarts():
    # 14 beats 10, then the deferred second 14 stands alone and defaults
    assert kinds_for([14, 14, 10]) == [N, F, F]


def test_classify_ratio_boundary_is_inclusive():
    assert kinds_for([14, 10]) == [N, F]   # 14/10 is exactly the ratio
    assert kinds_for([13, 10]) == [F, F]   # 13/10 falls short


def test_classify_zero_counts():
    assert kinds_for([0, 5]) == [F, N]
    assert kinds_for([5, 0]) == [N, F]
    assert kinds_for([0, 0]) == [F, F]


def test_classify_scale_invariance():
    base = kinds_for([12, 7, 7, 10])
    for k in (2, 3, 10):
        assert kinds_for([12 * k, 7 * k, 7 * k, 10 * k]) == base


def test_classify_accepts_float_and_int_ratios():
    assert kinds_for([14, 10], ratio=1.4) == [N, F]
    assert kinds_for([20, 10], ratio=2) == [N, F]
    assert kinds_for([19, 10], ratio=2) == [F, F]


def test_classify_rejects_ratios_at_or_below_one():
    for bad in (1, 1.0, Fraction(1, 1), 0.5):
        with pytest.raises(ValueError):
            classify_records(records_with_counts([3, 4]), bad)


def test_classify_single_record_stays_undetermined():
    records = classify_records(records_with_counts([42]))
    assert records[0].kind is U


def test_items_match_field_order_and_normalization():
    doc = parse_html("<div><td> Compaq  <b>Presario</b> 5000 </td>"
                     "<td></td></div>")
    div = doc.body.element_children()[0]
    record = DataRecord(div.node_id, Rect(0, 0, 1, 1))
    items = extract_data_items(doc, record)
    assert [(i.tag, i.text) for i in items] == [
        ("td", "Compaq Presario 5000"), ("td", "")]
    assert [i.empty for i in items] == [False, True]
    assert len(items) == count_fields(doc, div.node_id)


def test_items_skip_script_and_style_text():
    doc = parse_html("<div><td>x<script>var a;</script>y</td></div>")
    div = doc.body.element_children()[0]
    items = extract_data_items(doc, DataRecord(div.node_id, Rect(0, 0, 1, 1)))
    assert items[0].text == "xy"


def test_item_count_equals_field_count_on_random_pages():
    rng = random.Random(73)
    for _ in range(20):
        doc = parse_html(random_page(rng))
        record = DataRecord(doc.body.node_id, Rect(0, 0, 1, 1))
        items = extract_data_items(doc, record)
        assert len(items) == count_fields(doc, doc.body.node_id)
        assert [i.source_node for i in items] == sorted(i.source_node for i in items)


def test_extract_all_uniform_table():
    row = '<tr><td>Book</td><td>Ann</td><td><a href="#">buy</a></td></tr>'
    doc = parse_html(f"<h1>shop</h1><table>{row * 4}</table><p>foot</p>")
    result = extract_all(doc)
    assert doc.nodes[result.region.container_node].tag == "table"
    assert len(result.records) == 4
    assert [r.field_count for r in result.records] == [5, 5, 5, 5]
    assert [r.kind for r in result.records] == [F, F, F, F]
    first = result.records[0].items
    # subtree preorder; row text concatenates cell texts without separators
    assert [(i.tag, i.text) for i in first] == [
        ("tr", "BookAnnbuy"), ("td", "Book"), ("td", "Ann"),
        ("td", "buy"), ("a", "buy")]


def test_extract_all_mixed_flat_and_nested():
    doc = parse_html("<h1>shop</h1><table>"
                     + FLAT_ROW_7 * 3 + NESTED_ROW_12
                     + "</table><p>foot</p>")
    result = extract_all(doc)
    assert [r.field_count for r in result.records] == [7, 7, 7, 12]
    assert [r.kind for r in result.records] == [F, F, F, N]
    assert all(len(r.items) == r.field_count for r in result.records)


def test_extract_all_single_survivor_is_undetermined():
    rows = "".join(f'<tr style="height:{h}px"><td>r</td></tr>'
                   for h in (54, 36, 18))
    doc = parse_html(f"<h1>t</h1><table>{rows}</table><p>f</p>")
    result = extract_all(doc)
    # region filter avg (108//3=36) keeps 54 and 36; the record pass avg
    # (90//2=45) keeps only the tall one
    assert len(result.region.kept_children) == 2
    assert len(result.records) == 1
    assert result.records[0].kind is U


def test_extract_all_honours_custom_field_tags():
    row = "<tr><td>a</td><td>b</td></tr>"
    doc = parse_html(f"<table>{row * 3}</table>")
    result = extract_all(doc, fields=FieldTagSet(frozenset({"td"})))
    assert [r.field_count for r in result.records] == [2, 2, 2]


def test_extract_all_matches_mine_region():
    doc = parse_html("<table>" + "<tr><td>x</td></tr>" * 5 + "</table>")
    region = mine_region(doc)
    result = extract_all(doc)
    assert result.region.container_node == region.container_node
    assert result.region.kept_children == region.kept_children


def test_extract_all_respects_layout_config():
    row = "<tr><td>aaaaaaaaaa bbbbbbbbbb cccccccccc</td></tr>"
    doc = parse_html(f"<table>{row * 3}</table>")
    wide = extract_all(doc)
    narrow = extract_all(doc, config=LayoutConfig(viewport_width=120))
    assert len(wide.records) == len(narrow.records) == 3
    # 80px words cannot share a 120px line, so each row wraps to 3 lines
    assert narrow.records[0].rect.height == 54
    assert wide.records[0].rect.height == 18
