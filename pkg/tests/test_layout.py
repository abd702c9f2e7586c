import random

import pytest

from recordminer.dom import parse_html
from recordminer.errors import NotAnElement, UnknownNode
from recordminer.layout import (
    BLOCK_TAGS,
    LayoutConfig,
    Rect,
    layout_document,
    rect_area,
    rect_of,
)
from support import random_page


def layout(markup, **cfg):
    doc = parse_html(markup)
    tree = layout_document(doc, LayoutConfig(**cfg) if cfg else None)
    return doc, tree


def rect_by_tag(doc, tree, tag, index=0):
    hits = [n for n in doc.nodes if n.is_element and n.tag == tag]
    return tree.rects[hits[index].node_id]


def test_rect_validation_and_helpers():
    r = Rect(3, 4, 10, 20)
    assert (r.right, r.bottom, r.area) == (13, 24, 200)
    assert rect_area(r) == 200
    assert r.to_dict() == {"left": 3, "top": 4, "width": 10, "height": 20}
    with pytest.raises(ValueError):
        Rect(0, 0, -1, 5)
    with pytest.raises(ValueError):
        LayoutConfig(viewport_width=0)


def test_single_text_block():
    doc, tree = layout("<body><div>0123456789</div></body>")
    assert rect_by_tag(doc, tree, "div") == Rect(0, 0, 1024, 18)
    assert rect_by_tag(doc, tree, "body") == Rect(0, 0, 1024, 18)


def test_blocks_stack_vertically():
    doc, tree = layout("<div>a</div><div>b</div><div>c</div>")
    tops = [rect_by_tag(doc, tree, "div", i).top for i in range(3)]
    assert tops == [0, 18, 36]
    assert rect_by_tag(doc, tree, "body").height == 54


def test_block_gap():
    doc, tree = layout("<div>a</div><div>b</div>", block_gap=5)
    assert rect_by_tag(doc, tree, "div", 1).top == 23
    assert rect_by_tag(doc, tree, "body").height == 41


def test_table_row_splits_evenly():
    doc, tree = layout("<table><tr><td>a</td><td>b</td></tr></table>")
    assert rect_by_tag(doc, tree, "td", 0) == Rect(0, 0, 512, 18)
    assert rect_by_tag(doc, tree, "td", 1) == Rect(512, 0, 512, 18)
    assert rect_by_tag(doc, tree, "tr") == Rect(0, 0, 1024, 18)
    assert rect_by_tag(doc, tree, "table") == Rect(0, 0, 1024, 18)


def test_row_split_remainder_goes_to_last_cell():
    doc, tree = layout("<table><tr><td>a</td><td>b</td><td>c</td></tr></table>")
    cells = [rect_by_tag(doc, tree, "td", i) for i in range(3)]
    # 1024 // 3 = 341, remainder 1 widens the last cell
    assert [c.width for c in cells] == [341, 341, 342]
    assert [c.left for c in cells] == [0, 341, 682]
    assert cells[-1].right == 1024


def test_fixed_width_cell_shrinks_flex_share():
    doc, tree = layout(
        '<table><tr><td width=100>a</td><td>b</td><td>c</td></tr></table>')
    cells = [rect_by_tag(doc, tree, "td", i) for i in range(3)]
    # (1024 - 100) // 2 = 462 for each flexible cell
    assert [(c.left, c.width) for c in cells] == [(0, 100), (100, 462), (562, 462)]


def test_cells_stretch_to_row_height():
    row = "<tr><td>" + "alpha12345 " * 7 + "</td><td>x</td></tr>"
    doc, tree = layout(f"<table>{row}</table>")
    # 512px cell fits 5 ten-char words per line, so 7 words wrap to 2 lines
    assert rect_by_tag(doc, tree, "td", 0).height == 36
    assert rect_by_tag(doc, tree, "td", 1).height == 36
    assert rect_by_tag(doc, tree, "tr").height == 36


def test_row_height_override_stretches_cells():
    doc, tree = layout(
        '<table><tr style="height:50px"><td>a</td><td>b</td></tr></table>')
    assert rect_by_tag(doc, tree, "tr").height == 50
    assert rect_by_tag(doc, tree, "td", 0).height == 50
    assert rect_by_tag(doc, tree, "td", 1).height == 50


def test_percent_widths_floor_against_parent():
    doc, tree = layout(
        '<div style="width:50%"><div style="width:33%">x</div></div>')
    outer = rect_by_tag(doc, tree, "div", 0)
    inner = rect_by_tag(doc, tree, "div", 1)
    assert outer.width == 512          # 1024 * 50 // 100
    assert inner.width == 168          # 512 * 33 // 100


def test_style_wins_over_width_attribute():
    doc, tree = layout('<table><tr><td width=100 style="width:200px">a</td>'
                       "<td>b</td></tr></table>")
    assert rect_by_tag(doc, tree, "td", 0).width == 200


def test_width_attribute_ignored_on_div():
    doc, tree = layout('<div width=100>x</div>')
    assert rect_by_tag(doc, tree, "div").width == 1024


def test_image_default_and_attr_size():
    doc, tree = layout("<img>")
    assert rect_by_tag(doc, tree, "img") == Rect(0, 0, 100, 100)
    doc, tree = layout('<img width=50 height=30>')
    assert rect_by_tag(doc, tree, "img") == Rect(0, 0, 50, 30)
    doc, tree = layout('<img width=50>')
    assert rect_by_tag(doc, tree, "img") == Rect(0, 0, 50, 100)


def test_images_flow_inline():
    doc, tree = layout("<div><img><img></div>")
    first = rect_by_tag(doc, tree, "img", 0)
    second = rect_by_tag(doc, tree, "img", 1)
    assert (first.left, second.left) == (0, 100)
    assert rect_by_tag(doc, tree, "div").height == 100


def test_greedy_word_wrap():
    # 1024px line fits 11 ten-char words (80px word, 8px space)
    words = "abcdefghij " * 22
    doc, tree = layout(f"<div>{words.strip()}</div>")
    assert rect_by_tag(doc, tree, "div").height == 36


def test_overlong_word_hard_breaks():
    doc, tree = layout("<div>" + "x" * 300 + "</div>")
    # 1024 // 8 = 128 chars per line: 300 chars need 3 lines
    assert rect_by_tag(doc, tree, "div").height == 54


def test_br_forces_line_break():
    doc, tree = layout("<div>a<br>b</div>")
    assert rect_by_tag(doc, tree, "div").height == 36
    doc, tree = layout("<div>a<br><br>b</div>")
    assert rect_by_tag(doc, tree, "div").height == 54


def test_inline_span_bbox():
    doc, tree = layout("<div>aaaa <b>bbbb</b> cccc</div>")
    b = rect_by_tag(doc, tree, "b")
    # 4 chars at x=40 (word + space before it)
    assert b == Rect(40, 0, 32, 18)


def test_empty_inline_is_zero_at_flow_point():
    doc, tree = layout("<div><span></span></div>")
    assert rect_by_tag(doc, tree, "span") == Rect(0, 0, 0, 0)
    assert rect_by_tag(doc, tree, "div") == Rect(0, 0, 1024, 0)


def test_display_none_zeroes_subtree():
    doc, tree = layout('<div style="display:none"><p>x</p></div><div>y</div>')
    assert rect_by_tag(doc, tree, "div", 0) == Rect(0, 0, 0, 0)
    assert rect_by_tag(doc, tree, "p") == Rect(0, 0, 0, 0)
    assert rect_by_tag(doc, tree, "div", 1).top == 0


def test_script_and_style_are_zero_size():
    doc, tree = layout("<body><div>a</div><script>var x;</script><div>b</div></body>")
    assert rect_by_tag(doc, tree, "script").area == 0
    assert rect_by_tag(doc, tree, "div", 1).top == 18


def test_inline_wrapper_with_block_child_becomes_block():
    doc, tree = layout("<span><div>x</div></span>")
    assert rect_by_tag(doc, tree, "span") == Rect(0, 0, 1024, 18)
    assert rect_by_tag(doc, tree, "div") == Rect(0, 0, 1024, 18)


def test_body_ignores_size_overrides():
    doc, tree = layout('<body style="width:50px;height:9px"><div>x</div></body>')
    assert rect_by_tag(doc, tree, "body") == Rect(0, 0, 1024, 18)


def test_custom_config_dimensions():
    doc, tree = layout("<div>0123456789</div>",
                       viewport_width=500, line_height=20, char_width=10)
    assert rect_by_tag(doc, tree, "div") == Rect(0, 0, 500, 20)
    assert rect_by_tag(doc, tree, "body").height == 20


def test_rect_of_errors():
    doc, tree = layout("<div>x</div>")
    text_id = next(n.node_id for n in doc.nodes if not n.is_element)
    with pytest.raises(NotAnElement):
        rect_of(tree, text_id)
    with pytest.raises(UnknownNode):
        rect_of(tree, len(doc.nodes) + 5)


def test_every_element_gets_an_integer_rect():
    rng = random.Random(41)
    for _ in range(30):
        doc, tree = layout(random_page(rng))
        for node in doc.nodes:
            if not node.is_element:
                assert node.node_id not in tree.rects
                continue
            r = rect_of(tree, node.node_id)
            for v in (r.left, r.top, r.width, r.height):
                assert type(v) is int
            assert r.left >= 0 and r.top >= 0


def test_block_children_do_not_overlap_vertically():
    rng = random.Random(43)
    for _ in range(30):
        doc, tree = layout(random_page(rng))
        for node in doc.nodes:
            if not node.is_element:
                continue
            prev_bottom = None
            for child in node.element_children():
                if child.tag not in BLOCK_TAGS:
                    prev_bottom = None
                    continue
                r = tree.rects[child.node_id]
                if prev_bottom is not None and r.area > 0:
                    assert r.top >= prev_bottom
                if r.area > 0:
                    prev_bottom = r.bottom


def test_row_cells_partition_row_width():
    rng = random.Random(47)
    pages = [random_page(rng) for _ in range(40)]
    pages.append("<table><tr>" + "<td>w</td>" * 7 + "</tr></table>")
    for markup in pages:
        doc, tree = layout(markup)
        for node in doc.nodes:
            if not node.is_element or node.tag != "tr":
                continue
            row = tree.rects[node.node_id]
            cells = [tree.rects[c.node_id] for c in node.element_children()]
            if not cells or row.area == 0:
                continue
            assert cells[0].left == row.left
            for a, b in zip(cells, cells[1:]):
                assert a.right == b.left
            assert cells[-1].right == row.right
            assert all(c.height == row.height for c in cells)


def test_layout_is_deterministic():
    rng = random.Random(53)
    for _ in range(20):
        markup = random_page(rng)
        doc = parse_html(markup)
        assert layout_document(doc).rects == layout_document(doc).rects
        again = parse_html(markup)
        assert layout_document(again).rects == layout_document(doc).rects
