"""Data-region mining over the laid-out page.

The main content block of a listing page is found purely geometrically:
take the largest direct child of body, descend to the smallest element
still covering more than half of it, then keep only the children at or
above the average child height.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dom import Document, DomNode, ELEMENT
from .errors import NoChildren
from .layout import LayoutConfig, LayoutTree, Rect, layout_document


@dataclass
class DataRegion:
    container_node: int
    kept_children: list[int]
    rect: Rect
    avg_child_height: int


def find_max_rect(tree: LayoutTree) -> int:
    """Node id of the largest-area direct element child of body.

    Ties keep the earliest child in document order.  Raises NoChildren
    when body has no element children.
    """
    best_id = -1
    best_area = -1
    for child in tree.document.body.children:
        if child.kind != ELEMENT:
            continue
        area = tree.rects[child.node_id].area
        if area > best_area:
            best_area = area
            best_id = child.node_id
    if best_id < 0:
        raise NoChildren("body has no element children")
    return best_id


def _descendant_elements(node: DomNode):
    # depth-first, document order, excluding node itself
    stack = list(reversed(node.children))
    while stack:
        current = stack.pop()
        if current.kind == ELEMENT:
            yield current
        for child in reversed(current.children):
            stack.append(child)


def find_container(tree: LayoutTree, max_rect_node: int) -> int:
    """Smallest descendant covering more than half of the anchor node.

    Scans all element descendants in document order and returns the one
    with minimal area strictly above half the anchor's area; ties keep
    the earliest.  Falls back to the anchor itself when no descendant
    qualifies.
    """
    anchor = tree.document.node(max_rect_node)
    anchor_area = tree.rects[max_rect_node].area
    best_id = -1
    best_area = -1
    for desc in _descendant_elements(anchor):
        area = tree.rects[desc.node_id].area
        if 2 * area > anchor_area:
            if best_id < 0 or area < best_area:
                best_area = area
                best_id = desc.node_id
    return best_id if best_id >= 0 else max_rect_node


def filter_data_region(tree: LayoutTree, container: int) -> DataRegion:
    """Keep the container children at or above the average child height.

    The average is the integer division of the summed heights by the
    child count.  Raises NoChildren for a container without element
    children.
    """
    node = tree.document.node(container)
    children = node.element_children()
    if not children:
        raise NoChildren(f"container {container} has no element children")
    heights = [tree.rects[c.node_id].height for c in children]
    avg = sum(heights) // len(children)
    kept = [c.node_id for c, h in zip(children, heights) if h >= avg]
    return DataRegion(container, kept, tree.rects[container], avg)


def mine_region(doc: Document, config: LayoutConfig | None = None) -> DataRegion:
    """Lay out the page and run the full region-mining chain."""
    tree = layout_document(doc, config)
    return filter_data_region(tree, find_container(tree, find_max_rect(tree)))
