"""Tolerant HTML parsing into a positioned-ready element tree.

Legacy listing pages are full of unclosed cells, stray close tags and
missing structure, so the parser never rejects malformed markup: unclosed
elements close at their parent boundary, stray close tags are dropped,
and an ``html`` root with a single ``body`` is always present.  Node ids
are assigned in document order (preorder) after the tree is built.
"""

from __future__ import annotations

from .errors import EmptyInput, EncodingError, UnknownNode

ELEMENT = "element"
TEXT = "text"

VOID_TAGS = frozenset({
    "area", "base", "br", "col", "embed", "hr", "img", "input",
    "link", "meta", "param", "source", "track", "wbr",
})

# Content is captured verbatim up to the matching close tag.
RAW_TEXT_TAGS = frozenset({"script", "style"})

# Metadata tags appearing before any body content go into a synthesized head.
HEAD_ONLY_TAGS = frozenset({"base", "link", "meta", "title", "style", "script"})

# Opening one of these closes an open sibling of the mapped tags first.
_SIBLING_CLOSERS = {
    "li": frozenset({"li"}),
    "p": frozenset({"p"}),
    "option": frozenset({"option"}),
    "dd": frozenset({"dd", "dt"}),
    "dt": frozenset({"dd", "dt"}),
    "td": frozenset({"td", "th"}),
    "th": frozenset({"td", "th"}),
    "tr": frozenset({"tr", "td", "th"}),
}

_WS = " \t\r\n\f"

_NAMED_ENTITIES = {"amp": "&", "lt": "<", "gt": ">", "quot": '"'}
_TEXT_ENTITIES = dict(_NAMED_ENTITIES, apos="'", nbsp=" ")


class DomNode:
    """One node of the parsed tree: an element or a run of character data."""

    __slots__ = ("kind", "tag", "attributes", "text", "children",
                 "node_id", "parent_id")

    def __init__(self, kind: str, tag: str = "",
                 attributes: dict[str, str] | None = None, text: str = ""):
        self.kind = kind
        self.tag = tag
        self.attributes: dict[str, str] = attributes if attributes is not None else {}
        self.text = text
        self.children: list[DomNode] = []
        self.node_id = -1
        self.parent_id: int | None = None

    @property
    def is_element(self) -> bool:
        return self.kind == ELEMENT

    def element_children(self) -> list[DomNode]:
        return [c for c in self.children if c.kind == ELEMENT]

    def __repr__(self) -> str:
        if self.kind == TEXT:
            return f"Text({self.text!r})"
        return f"<{self.tag} #{self.node_id}>"


class Document:
    """Parsed page with a synthetic ``html`` root and a guaranteed body."""

    __slots__ = ("root", "source_length", "nodes", "_body_id")

    def __init__(self, root: DomNode, source_length: int):
        self.root = root
        self.source_length = source_length
        self.nodes: list[DomNode] = []
        self._body_id = -1
        self._index()

    def _index(self) -> None:
        # Preorder ids: strictly increasing in document order.
        nodes: list[DomNode] = []
        stack: list[tuple[DomNode, int | None]] = [(self.root, None)]
        while stack:
            node, parent_id = stack.pop()
            node.node_id = len(nodes)
            node.parent_id = parent_id
            nodes.append(node)
            for child in reversed(node.children):
                stack.append((child, node.node_id))
        self.nodes = nodes
        for node in nodes:
            if node.kind == ELEMENT and node.tag == "body":
                self._body_id = node.node_id
                break

    def node(self, node_id: int) -> DomNode:
        if not 0 <= node_id < len(self.nodes):
            raise UnknownNode(f"no node with id {node_id}")
        return self.nodes[node_id]

    @property
    def body(self) -> DomNode:
        return self.nodes[self._body_id]


def find_body(doc: Document) -> DomNode:
    """The unique body element of the document."""
    return doc.body


def iter_nodes(root: DomNode):
    """All nodes under ``root`` (inclusive), in document order."""
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        for child in reversed(node.children):
            stack.append(child)


def iter_elements(root: DomNode):
    for node in iter_nodes(root):
        if node.kind == ELEMENT:
            yield node


def _expand_entities(s: str, table: dict[str, str]) -> str:
    if "&" not in s:
        return s
    out: list[str] = []
    i, n = 0, len(s)
    while i < n:
        amp = s.find("&", i)
        if amp == -1:
            out.append(s[i:])
            break
        out.append(s[i:amp])
        semi = s.find(";", amp + 1, amp + 12)
        if semi == -1:
            out.append("&")
            i = amp + 1
            continue
        name = s[amp + 1:semi]
        if name.startswith("#"):
            digits = name[1:]
            base = 10
            if digits[:1] in ("x", "X"):
                digits, base = digits[1:], 16
            try:
                code = int(digits, base)
            except ValueError:
                code = -1
            if 0 <= code < 0x110000 and not 0xD800 <= code <= 0xDFFF:
                out.append(chr(code))
                i = semi + 1
                continue
        elif name in table:
            out.append(table[name])
            i = semi + 1
            continue
        out.append("&")
        i = amp + 1
    return "".join(out)


def _parse_attributes(s: str) -> dict[str, str]:
    attrs: dict[str, str] = {}
    i, n = 0, len(s)
    while i < n:
        while i < n and s[i] in _WS:
            i += 1
        if i >= n:
            break
        if s[i] == "/":
            i += 1
            continue
        start = i
        while i < n and s[i] not in _WS and s[i] not in "=/":
            i += 1
        name = s[start:i].lower()
        while i < n and s[i] in _WS:
            i += 1
        value = ""
        if i < n and s[i] == "=":
            i += 1
            while i < n and s[i] in _WS:
                i += 1
            if i < n and s[i] in "\"'":
                quote = s[i]
                i += 1
                start = i
                while i < n and s[i] != quote:
                    i += 1
                value = s[start:i]
                i += 1
            else:
                start = i
                while i < n and s[i] not in _WS:
                    i += 1
                value = s[start:i]
        if name and name not in attrs:  # first occurrence wins
            attrs[name] = _expand_entities(value, _NAMED_ENTITIES)
    return attrs


def _parse_tag(raw: str) -> tuple[str, dict[str, str], bool]:
    raw = raw.strip()
    self_closing = raw.endswith("/")
    if self_closing:
        raw = raw[:-1]
    i, n = 0, len(raw)
    while i < n and raw[i] not in _WS and raw[i] != "/":
        i += 1
    tag = raw[:i].lower()
    return tag, _parse_attributes(raw[i:]), self_closing


def _find_tag_end(text: str, start: int) -> int:
    # ">" inside quoted attribute values does not end the tag
    quote = ""
    for j in range(start + 1, len(text)):
        c = text[j]
        if quote:
            if c == quote:
                quote = ""
        elif c in "\"'":
            quote = c
        elif c == ">":
            return j
    return -1


class _TreeBuilder:
    def __init__(self) -> None:
        self.root = DomNode(ELEMENT, "html")
        self.head: DomNode | None = None
        self.body: DomNode | None = None
        self.stack: list[DomNode] = [self.root]

    def _head_open(self) -> bool:
        return self.head is not None and self.head in self.stack

    def _open_body(self) -> None:
        if self.body is None:
            self.body = DomNode(ELEMENT, "body")
            self.root.children.append(self.body)
        if self.body not in self.stack:
            del self.stack[1:]
            self.stack.append(self.body)

    def _ensure_head(self) -> DomNode:
        if self.head is None:
            self.head = DomNode(ELEMENT, "head")
            self.root.children.append(self.head)
        return self.head

    def top_tag(self) -> str:
        top = self.stack[-1]
        return top.tag if top is not self.root else ""

    def _append(self, node: DomNode, push: bool) -> None:
        self.stack[-1].children.append(node)
        if push:
            self.stack.append(node)

    def add_text(self, data: str) -> None:
        if not data:
            return
        if self.stack[-1] is self.root:
            if not data.strip():
                return  # inter-element whitespace outside head/body
            self._open_body()
        elif self.stack[-1] is self.head and not data.strip():
            return
        parent = self.stack[-1]
        expanded = _expand_entities(data, _TEXT_ENTITIES)
        if parent.children and parent.children[-1].kind == TEXT:
            parent.children[-1].text += expanded
        else:
            parent.children.append(DomNode(TEXT, text=expanded))

    def add_raw_text(self, data: str) -> None:
        if data:
            self.stack[-1].children.append(DomNode(TEXT, text=data))

    def open_tag(self, tag: str, attrs: dict[str, str], self_closing: bool) -> None:
        if not tag:
            return
        if tag == "html":
            for k, v in attrs.items():
                self.root.attributes.setdefault(k, v)
            return
        if tag == "head":
            if self.head is None and self.body is None:
                self.head = DomNode(ELEMENT, "head", dict(attrs))
                self.root.children.append(self.head)
                self.stack.append(self.head)
            return
        if tag == "body":
            if self.body is None:
                if self._head_open():
                    del self.stack[1:]
                self.body = DomNode(ELEMENT, "body", dict(attrs))
                self.root.children.append(self.body)
                self.stack.append(self.body)
            else:
                # duplicate body: demote to a plain container
                self.open_tag("div", attrs, self_closing)
            return
        if self._head_open() and tag not in HEAD_ONLY_TAGS:
            del self.stack[1:]  # body content ends the head
        if self.stack[-1] is self.root:
            if tag in HEAD_ONLY_TAGS and self.body is None:
                self.stack.append(self._ensure_head())
            else:
                self._open_body()
        # a sibling of equal rank implies the close of the open one
        closers = _SIBLING_CLOSERS.get(tag)
        if closers:
            while (len(self.stack) > 1 and self.stack[-1].tag in closers
                   and self.stack[-1] not in (self.head, self.body)):
                self.stack.pop()
        node = DomNode(ELEMENT, tag, attrs)
        push = not self_closing and tag not in VOID_TAGS
        self._append(node, push)
        # metadata elements do not hold the head open once they close
        if not push and self.stack[-1] is self.head:
            self.stack.pop()

    def close_tag(self, tag: str) -> None:
        if not tag:
            return
        if tag == "html":
            del self.stack[1:]
            return
        if tag == "body":
            if self.body is not None and self.body in self.stack:
                del self.stack[self.stack.index(self.body):]
            return
        if tag == "head":
            if self._head_open():
                del self.stack[self.stack.index(self.head):]
            return
        for idx in range(len(self.stack) - 1, 0, -1):
            node = self.stack[idx]
            if node is self.head or node is self.body:
                break
            if node.tag == tag:
                del self.stack[idx:]
                return
        # stray close tag: dropped

    def finish(self, source_length: int) -> Document:
        if self.body is None:
            self.body = DomNode(ELEMENT, "body")
            self.root.children.append(self.body)
        return Document(self.root, source_length)


def _scan(text: str, builder: _TreeBuilder) -> None:
    lowered = text.lower()
    i, n = 0, len(text)
    while i < n:
        lt = text.find("<", i)
        if lt == -1:
            builder.add_text(text[i:])
            break
        if lt > i:
            builder.add_text(text[i:lt])
        nxt = text[lt + 1] if lt + 1 < n else ""
        if text.startswith("<!--", lt):
            end = text.find("-->", lt + 4)
            i = n if end == -1 else end + 3
            continue
        if nxt in ("!", "?"):
            end = text.find(">", lt)  # doctype / declaration / PI: discarded
            i = n if end == -1 else end + 1
            continue
        if not (nxt.isalpha() or nxt == "/"):
            builder.add_text("<")
            i = lt + 1
            continue
        gt = _find_tag_end(text, lt)
        if gt == -1:
            builder.add_text(text[lt:])  # dangling tag at EOF: literal text
            break
        raw = text[lt + 1:gt]
        i = gt + 1
        if raw.startswith("/"):
            builder.close_tag(_parse_tag(raw[1:])[0])
            continue
        tag, attrs, self_closing = _parse_tag(raw)
        builder.open_tag(tag, attrs, self_closing)
        if tag in RAW_TEXT_TAGS and builder.top_tag() == tag:
            end = lowered.find("</" + tag, i)
            if end == -1:
                builder.add_raw_text(text[i:])
                builder.close_tag(tag)
                i = n
            else:
                builder.add_raw_text(text[i:end])
                builder.close_tag(tag)
                close_gt = text.find(">", end)
                i = n if close_gt == -1 else close_gt + 1


def parse_html(data: bytes | str, encoding: str = "utf-8") -> Document:
    """Parse markup into a Document.

    ``data`` may be text or raw bytes; ``encoding`` is the decode hint for
    bytes ("utf-8" or "latin-1"), falling back to lossy decoding rather
    than failing on bad byte sequences.  Raises EmptyInput for empty or
    whitespace-only input and EncodingError for an unusable hint.
    """
    if isinstance(data, (bytes, bytearray, memoryview)):
        raw = bytes(data)
        try:
            text = raw.decode(encoding)
        except UnicodeDecodeError:
            text = raw.decode(encoding, errors="replace")
        except LookupError:
            raise EncodingError(f"unknown encoding hint: {encoding!r}") from None
        source_length = len(raw)
    elif isinstance(data, str):
        text = data
        source_length = len(data.encode("utf-8", errors="replace"))
    else:
        raise TypeError(f"expected bytes or str, got {type(data).__name__}")
    if not text.strip():
        raise EmptyInput("input is empty or whitespace-only")
    builder = _TreeBuilder()
    _scan(text, builder)
    return builder.finish(source_length)


def _escape_text(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _escape_attr(s: str) -> str:
    return _escape_text(s).replace('"', "&quot;")


def serialize(doc: Document) -> str:
    """Render the tree back to markup.

    Reparsing the result yields a tree isomorphic to the original.
    """
    out: list[str] = []

    def write(node: DomNode) -> None:
        if node.kind == TEXT:
            out.append(_escape_text(node.text))
            return
        attrs = "".join(f' {k}="{_escape_attr(v)}"'
                        for k, v in node.attributes.items())
        out.append(f"<{node.tag}{attrs}>")
        if node.tag in VOID_TAGS:
            return
        if node.tag in RAW_TEXT_TAGS:
            for child in node.children:
                if child.kind == TEXT:
                    out.append(child.text)
        else:
            for child in node.children:
                write(child)
        out.append(f"</{node.tag}>")

    write(doc.root)
    return "".join(out)
