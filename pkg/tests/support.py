"""Shared test helpers: expected-tree builders and random page generators."""

from __future__ import annotations

import random

from recordminer.dom import ELEMENT, TEXT, DomNode


def el(tag: str, *children, **attrs) -> DomNode:
    node = DomNode(ELEMENT, tag, {k.replace("_", "-"): v for k, v in attrs.items()})
    for child in children:
        node.children.append(child)
    return node


def txt(text: str) -> DomNode:
    return DomNode(TEXT, text=text)


def same_tree(a: DomNode, b: DomNode) -> bool:
    if a.kind != b.kind:
        return False
    if a.kind == TEXT:
        return a.text == b.text
    if a.tag != b.tag or dict(a.attributes) != dict(b.attributes):
        return False
    if len(a.children) != len(b.children):
        return False
    return all(same_tree(x, y) for x, y in zip(a.children, b.children))


def outline(node: DomNode, depth: int = 0) -> str:
    pad = "  " * depth
    if node.kind == TEXT:
        return f"{pad}{node.text!r}"
    attrs = "".join(f" {k}={v!r}" for k, v in node.attributes.items())
    lines = [f"{pad}<{node.tag}{attrs}>"]
    lines.extend(outline(c, depth + 1) for c in node.children)
    return "\n".join(lines)


_TAG_POOL = ["div", "p", "span", "b", "i", "a", "ul", "li", "table", "tr",
             "td", "em", "h2", "form", "font"]
_WORDS = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta",
          "theta", "iota", "kappa", "price", "total", "item", "offer"]


def random_page(rng: random.Random, max_depth: int = 4) -> str:
    """Random but well-formed-ish markup for determinism properties."""

    def node(depth: int) -> str:
        if depth >= max_depth or rng.random() < 0.35:
            return " ".join(rng.choice(_WORDS)
                            for _ in range(rng.randint(1, 6)))
        tag = rng.choice(_TAG_POOL)
        inner = "".join(node(depth + 1) for _ in range(rng.randint(0, 4)))
        if tag == "table":
            rows = "".join(
                "<tr>" + "".join(f"<td>{rng.choice(_WORDS)}</td>"
                                 for _ in range(rng.randint(1, 4))) + "</tr>"
                for _ in range(rng.randint(1, 4)))
            return f"<table>{rows}</table>"
        if tag in ("ul",):
            items = "".join(f"<li>{rng.choice(_WORDS)}</li>"
                            for _ in range(rng.randint(1, 5)))
            return f"<ul>{items}</ul>"
        if tag in ("tr", "td", "li"):
            tag = "div"
        return f"<{tag}>{inner}</{tag}>"

    body = "".join(node(0) for _ in range(rng.randint(1, 5)))
    return f"<body>{body}</body>"


def random_bytes(rng: random.Random, max_len: int = 300) -> bytes:
    n = rng.randint(0, max_len)
    if rng.random() < 0.5:
        # markup-flavored noise hits more parser states than raw bytes
        pieces = []
        for _ in range(n // 8 + 1):
            pieces.append(rng.choice([
                "<", ">", "</", "<div", "<td>", "='", '="', "&amp;", "&#",
                "<!--", "-->", "<!", "<script>", "</script>", "<p a=b>",
                "x", " ", "\n", "/", "&", ";", '"', "'", "<body>", "<BR>",
            ]))
        return "".join(pieces)[:n].encode("utf-8", errors="replace")
    return bytes(rng.randrange(256) for _ in range(n))
