"""Deterministic box-model approximation.

Assigns every element one integer rectangle under a fixed-width viewport
with uniform glyph metrics.  Block elements take their parent's full
width and stack vertically; inline content flows left to right and wraps
at the parent width; table cells split the row width.  All arithmetic is
integer-only so identical input yields byte-identical geometry.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dom import Document, DomNode, ELEMENT, TEXT, iter_elements
from .errors import NotAnElement, UnknownNode

BLOCK_TAGS = frozenset({
    "div", "p", "table", "tr", "ul", "ol", "li",
    "h1", "h2", "h3", "h4", "h5", "h6", "form", "body",
})
CELL_TAGS = frozenset({"td", "th"})
ZERO_TAGS = frozenset({"script", "style", "head"})


@dataclass(frozen=True)
class Rect:
    left: int
    top: int
    width: int
    height: int

    def __post_init__(self) -> None:
        if self.width < 0 or self.height < 0:
            raise ValueError(f"negative rect dimensions: {self.width}x{self.height}")

    @property
    def area(self) -> int:
        return self.width * self.height

    @property
    def right(self) -> int:
        return self.left + self.width

    @property
    def bottom(self) -> int:
        return self.top + self.height

    def to_dict(self) -> dict[str, int]:
        return {"left": self.left, "top": self.top,
                "width": self.width, "height": self.height}


def rect_area(rect: Rect) -> int:
    return rect.width * rect.height


@dataclass(frozen=True)
class LayoutConfig:
    viewport_width: int = 1024
    line_height: int = 18
    char_width: int = 8
    default_image_size: tuple[int, int] = (100, 100)
    block_gap: int = 0

    def __post_init__(self) -> None:
        if self.viewport_width <= 0 or self.line_height <= 0 or self.char_width <= 0:
            raise ValueError("viewport_width, line_height and char_width must be positive")
        w, h = self.default_image_size
        if w < 0 or h < 0 or self.block_gap < 0:
            raise ValueError("default_image_size and block_gap must be non-negative")


@dataclass
class LayoutTree:
    document: Document
    rects: dict[int, Rect]
    config: LayoutConfig


def rect_of(tree: LayoutTree, node_id: int) -> Rect:
    node = tree.document.node(node_id)  # raises UnknownNode
    if node.kind != ELEMENT:
        raise NotAnElement(f"node {node_id} is a text node")
    return tree.rects[node_id]


def _parse_len(value: str | None, basis: int | None) -> int | None:
    """Pixel count from a width/height value; percentages resolve on basis."""
    if not value:
        return None
    value = value.strip().lower()
    percent = value.endswith("%")
    if percent:
        value = value[:-1]
    elif value.endswith("px"):
        value = value[:-2]
    try:
        number = int(value)
    except ValueError:
        try:
            number = int(float(value))
        except ValueError:
            return None
    if number < 0:
        return None
    if percent:
        if basis is None:
            return None
        return basis * number // 100
    return number


class _Engine:
    def __init__(self, doc: Document, config: LayoutConfig):
        self.doc = doc
        self.cfg = config
        self.rects: dict[int, Rect] = {}
        self._blockish: dict[int, bool] = {}

    def run(self) -> dict[int, Rect]:
        root = self.doc.root
        body = self.doc.body
        for child in root.children:
            if child.kind == ELEMENT and child is not body:
                self._zero_subtree(child, 0, 0)
        # page geometry is pinned by the viewport: body ignores overrides
        body_h = self._flow_children(body.children, 0, 0, self.cfg.viewport_width)
        self.rects[body.node_id] = Rect(0, 0, self.cfg.viewport_width, body_h)
        self.rects[root.node_id] = Rect(0, 0, self.cfg.viewport_width, body_h)
        for el in iter_elements(root):  # safety net: no element without a rect
            if el.node_id not in self.rects:
                self.rects[el.node_id] = Rect(0, 0, 0, 0)
        return self.rects

    # -- classification -------------------------------------------------

    def _is_blockish(self, node: DomNode) -> bool:
        cached = self._blockish.get(node.node_id)
        if cached is not None:
            return cached
        if node.tag in BLOCK_TAGS or node.tag in CELL_TAGS:
            result = True
        elif node.tag in ZERO_TAGS:
            result = False
        else:
            # an inline container holding block content behaves as a block
            result = any(self._is_blockish(c) for c in node.children
                         if c.kind == ELEMENT)
        self._blockish[node.node_id] = result
        return result

    def _overrides(self, node: DomNode, avail: int) -> tuple[int | None, int | None, bool]:
        """Explicit width/height in px and the display:none flag."""
        w = h = None
        hidden = False
        style = node.attributes.get("style")
        if style:
            for part in style.split(";"):
                name, _, value = part.partition(":")
                name = name.strip().lower()
                value = value.strip()
                if not value:
                    continue
                if name == "display" and value.lower() == "none":
                    hidden = True
                elif name == "width" and w is None:
                    w = _parse_len(value, avail)
                elif name == "height" and h is None:
                    h = _parse_len(value, None)
        if node.tag == "img" or node.tag in CELL_TAGS:
            if w is None:
                w = _parse_len(node.attributes.get("width"), avail)
            if h is None:
                h = _parse_len(node.attributes.get("height"), None)
        return w, h, hidden

    def _zero_subtree(self, node: DomNode, left: int, top: int) -> None:
        for el in iter_elements(node):
            self.rects[el.node_id] = Rect(left, top, 0, 0)

    # -- block stacking -------------------------------------------------

    def _block(self, node: DomNode, left: int, top: int, avail: int) -> int:
        w_ov, h_ov, hidden = self._overrides(node, avail)
        if hidden:
            self._zero_subtree(node, left, top)
            return 0
        width = w_ov if w_ov is not None else avail
        if node.tag == "tr":
            return self._row(node, left, top, width, h_ov)
        content_h = self._flow_children(node.children, left, top, width)
        height = h_ov if h_ov is not None else content_h
        self.rects[node.node_id] = Rect(left, top, width, height)
        return height

    def _row(self, tr: DomNode, left: int, top: int, width: int,
             h_ov: int | None) -> int:
        specs: list[tuple[DomNode, int | None, int | None]] = []
        for cell in tr.children:
            if cell.kind != ELEMENT:
                continue
            cw, ch, hidden = self._overrides(cell, width)
            if hidden:
                self._zero_subtree(cell, left, top)
                continue
            specs.append((cell, cw, ch))
        if not specs:
            row_h = h_ov if h_ov is not None else 0
            self.rects[tr.node_id] = Rect(left, top, width, row_h)
            return row_h
        fixed = sum(w for _, w, _ in specs if w is not None)
        flex_count = sum(1 for _, w, _ in specs if w is None)
        remaining = max(width - fixed, 0)
        share = remaining // flex_count if flex_count else 0
        widths: list[int] = []
        flex_seen = 0
        for _, w, _ in specs:
            if w is not None:
                widths.append(w)
            else:
                flex_seen += 1
                if flex_seen == flex_count:  # leftover pixels go to the last cell
                    widths.append(remaining - share * (flex_count - 1))
                else:
                    widths.append(share)
        x = left
        placements: list[tuple[DomNode, int, int]] = []
        heights: list[int] = []
        for (cell, _, ch), cell_w in zip(specs, widths):
            content_h = self._flow_children(cell.children, x, top, cell_w)
            heights.append(ch if ch is not None else content_h)
            placements.append((cell, x, cell_w))
            x += cell_w
        row_h = h_ov if h_ov is not None else max(heights)
        for cell, cx, cw in placements:  # cells stretch to the row height
            self.rects[cell.node_id] = Rect(cx, top, cw, row_h)
        self.rects[tr.node_id] = Rect(left, top, width, row_h)
        return row_h

    def _flow_children(self, children: list[DomNode], left: int, top: int,
                       width: int) -> int:
        y = top
        gap = self.cfg.block_gap
        need_gap = False
        run: list[DomNode] = []

        def flush_run() -> None:
            nonlocal y, need_gap
            if not run:
                return
            start = y + gap if need_gap else y
            flow = _InlineFlow(self, left, start, width)
            for item in run:
                flow.flow(item)
            flow.finish()
            run.clear()
            if flow.placed_anything:
                y = flow.y
                need_gap = True

        for child in children:
            if child.kind == TEXT:
                if child.text.strip() or run:
                    run.append(child)
                continue
            if child.tag in ZERO_TAGS:
                self._zero_subtree(child, left, top)
                continue
            if self._is_blockish(child):
                flush_run()
                start = y + gap if need_gap else y
                h = self._block(child, left, start, width)
                y = start + h
                need_gap = True
            else:
                run.append(child)
        flush_run()
        return y - top


class _InlineFlow:
    """Left-to-right line filler with greedy word wrap."""

    def __init__(self, eng: _Engine, left: int, top: int, width: int):
        self.eng = eng
        self.left = left
        self.top = top
        self.width = max(width, 0)
        self.x = left
        self.y = top
        self.line_h = 0
        self.line_used = False
        self.pending_space = False
        self.placed_anything = False
        # open inline elements: [node, x0, y0, x1, y1, placed]
        self.boxes: list[list] = []

    def flow(self, node: DomNode) -> None:
        if node.kind == TEXT:
            self._text(node.text)
            return
        tag = node.tag
        if tag in ZERO_TAGS:
            self.eng._zero_subtree(node, self.left, self.top)
            return
        w_ov, h_ov, hidden = self.eng._overrides(node, self.width)
        if hidden:
            self.eng._zero_subtree(node, self.left, self.top)
            return
        if tag == "br":
            self.eng.rects[node.node_id] = Rect(self.x, self.y, 0, 0)
            self._line_break(force=True)
            return
        if tag == "img":
            dw, dh = self.eng.cfg.default_image_size
            w = w_ov if w_ov is not None else dw
            h = h_ov if h_ov is not None else dh
            x0, y0 = self._place(w, h)
            self.eng.rects[node.node_id] = Rect(x0, y0, w, h)
            return
        if tag in VOID_INLINE:
            self.eng.rects[node.node_id] = Rect(self.x, self.y, 0, 0)
            return
        self._open(node)
        for child in node.children:
            self.flow(child)
        self._close(node, w_ov, h_ov)

    # -- text ------------------------------------------------------------

    def _text(self, s: str) -> None:
        if not s:
            return
        words = s.split()
        if not words:
            self.pending_space = True
            return
        if s[0] in " \t\r\n\f\v":
            self.pending_space = True
        for i, word in enumerate(words):
            if i:
                self.pending_space = True
            self._word(len(word))
        if s[-1] in " \t\r\n\f\v":
            self.pending_space = True

    def _word(self, n_chars: int) -> None:
        cw = self.eng.cfg.char_width
        cap = max(1, self.width // cw)
        while n_chars > cap:  # hard-break words wider than the line
            self._fit(cap)
            self.pending_space = False
            n_chars -= cap
        self._fit(n_chars)

    def _fit(self, n_chars: int) -> None:
        cw = self.eng.cfg.char_width
        lh = self.eng.cfg.line_height
        w = n_chars * cw
        space = cw if (self.pending_space and self.line_used) else 0
        if self.line_used and (self.x - self.left) + space + w > self.width:
            self._line_break()
            space = 0
        x0 = self.x + space
        self._mark(x0, self.y, w, lh)
        self.x = x0 + w
        self.pending_space = False

    def _place(self, w: int, h: int) -> tuple[int, int]:
        cw = self.eng.cfg.char_width
        space = cw if (self.pending_space and self.line_used) else 0
        if self.line_used and (self.x - self.left) + space + w > self.width:
            self._line_break()
            space = 0
        x0 = self.x + space
        self._mark(x0, self.y, w, h)
        self.x = x0 + w
        self.pending_space = False
        return x0, self.y

    # -- lines and boxes --------------------------------------------------

    def _mark(self, x0: int, y0: int, w: int, h: int) -> None:
        self.placed_anything = True
        self.line_used = True
        if h > self.line_h:
            self.line_h = h
        for box in self.boxes:
            if not box[5]:
                box[1], box[2], box[3], box[4], box[5] = x0, y0, x0 + w, y0 + h, True
            else:
                box[1] = min(box[1], x0)
                box[2] = min(box[2], y0)
                box[3] = max(box[3], x0 + w)
                box[4] = max(box[4], y0 + h)

    def _line_break(self, force: bool = False) -> None:
        if self.line_used:
            self.y += self.line_h
        elif force:
            self.y += self.eng.cfg.line_height
            self.placed_anything = True
        self.x = self.left
        self.line_h = 0
        self.line_used = False
        self.pending_space = False

    def finish(self) -> None:
        if self.line_used:
            self.y += self.line_h
            self.line_used = False
            self.line_h = 0

    def _open(self, node: DomNode) -> None:
        self.boxes.append([node, 0, 0, 0, 0, False])

    def _close(self, node: DomNode, w_ov: int | None, h_ov: int | None) -> None:
        box = self.boxes.pop()
        if box[5]:
            x0, y0 = box[1], box[2]
            w, h = box[3] - box[1], box[4] - box[2]
        else:
            x0, y0, w, h = self.x, self.y, 0, 0
        if w_ov is not None:
            w = w_ov
        if h_ov is not None:
            h = h_ov
        self.eng.rects[node.node_id] = Rect(x0, y0, w, h)


VOID_INLINE = frozenset({
    "hr", "input", "area", "base", "col", "embed", "param",
    "source", "track", "wbr", "link", "meta",
})


def layout_document(doc: Document, config: LayoutConfig | None = None) -> LayoutTree:
    """Assign a rectangle to every element of the document."""
    cfg = config if config is not None else LayoutConfig()
    engine = _Engine(doc, cfg)
    return LayoutTree(doc, engine.run(), cfg)
