"""SVG overlay rendering of page geometry.

Draws one outline per element, the mined container with a heavier
stroke, and shaded record boxes.  Output depends only on the layout and
extraction passed in, so identical input produces identical markup.
"""

from __future__ import annotations

from .layout import LayoutTree
from .records import DataRecord
from .region import DataRegion

_STYLE = ("rect.el{fill:none;stroke:#b0b0b0;stroke-width:1}"
          "rect.record{fill:#fb8c00;fill-opacity:0.25;stroke:#e65100;stroke-width:1}"
          "rect.region{fill:none;stroke:#1565c0;stroke-width:2}")


def render_overlay(tree: LayoutTree, region: DataRegion | None = None,
                   records: list[DataRecord] | None = None) -> str:
    width = tree.config.viewport_width
    body_rect = tree.rects[tree.document.body.node_id]
    height = max(body_rect.height, 1)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}"'
        f' width="{width}" height="{height}">',
        f"<style>{_STYLE}</style>",
    ]
    for node_id in sorted(tree.rects):
        r = tree.rects[node_id]
        lines.append(f'<rect class="el" data-node="{node_id}" x="{r.left}" '
                     f'y="{r.top}" width="{r.width}" height="{r.height}"/>')
    if records:
        for record in records:
            r = record.rect
            lines.append(f'<rect class="record" data-node="{record.node}" '
                         f'x="{r.left}" y="{r.top}" width="{r.width}" '
                         f'height="{r.height}"/>')
    if region is not None:
        r = region.rect
        lines.append(f'<rect class="region" data-node="{region.container_node}" '
                     f'x="{r.left}" y="{r.top}" width="{r.width}" '
                     f'height="{r.height}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
