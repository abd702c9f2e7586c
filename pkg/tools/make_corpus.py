#!/usr/bin/env python3
"""Regenerate the annotated corpus under tests/fixtures/corpus.

Every page is fully determined by fixed word pools and page indexes, so
rerunning the script always reproduces the same bytes.  The layout
arithmetic behind each page (which child wins the region scan, which
rows survive the height filter, every field count) is worked out by
hand in the comments; the corpus integrity tests re-verify it.
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

# exactly 10 characters each: at the default 8px glyph width these words
# make line wrapping predictable (80px word, 8px space)
TEN = ["accessible", "background", "calculated", "dependable", "electronic",
       "friendship", "generation", "horizontal", "importance", "journalism",
       "laboratory", "mechanical", "newsletter", "operations", "particular",
       "reasonable", "strawberry", "television", "underwater", "vegetables",
       "waterproof"]

TITLES = ["Atlas of Maps", "Basic Cooking", "City Walks", "Desert Flora",
          "Early Radio", "Field Guide", "Garden Year", "Harbor Lights",
          "Inland Seas", "Jade Carving", "Kite Design", "Lake Fishing"]

NAMES = ["Alice Mori", "Ben Carver", "Carol Diaz", "Dan Okafor", "Eve Lindh",
         "Frank Soto", "Grace Chen", "Hugo Brandt", "Iris Nakai", "Jack Reyes",
         "Kara Holst", "Liam Dunne"]

PRODUCTS = ["Desk Lamp", "Oak Shelf", "Tin Clock", "Wool Rug", "Jute Mat",
            "Ash Chair", "Zinc Bin", "Elm Stool", "Cork Board", "Iron Hook"]


def words(start: int, count: int) -> str:
    return " ".join(TEN[(start + k) % len(TEN)] for k in range(count))


def page_shell(title: str, body: str) -> str:
    return (f"<html><head><title>{title}</title></head>"
            f"<body>{body}</body></html>")


def flat_table_page(stem: str, rows: int, *, shop: str) -> tuple[str, dict]:
    # one-line rows: tr + 3 td + a = 5 fields, all heights 18
    markup = [f"<h1>{shop}</h1><table>"]
    for i in range(rows):
        markup.append(f'<tr><td>{TITLES[i % len(TITLES)]}</td>'
                      f"<td>{NAMES[i % len(NAMES)]}</td>"
                      f'<td><a href="/item/{i}">buy</a></td></tr>')
    markup.append(f"</table><p>(c) 2003 {shop}</p>")
    truth = {"schema": 1, "page_id": stem,
             "records": [{"selector": [1, i], "kind": "flat", "field_count": 5}
                         for i in range(rows)]}
    return page_shell(shop, "".join(markup)), truth


def product_div(i: int, *, cls: str = "offer") -> str:
    # a(18) + description div(18) + span(18) stack to 54px
    name = PRODUCTS[i % len(PRODUCTS)]
    return (f'<div class="{cls}"><a href="/offer/{i}">{name}</a>'
            f"<div>{words(i, 3)}</div>"
            f"<span>${9 + i}.95</span></div>")


def divs_frame(listing: str, shop: str) -> str:
    # wrapper children: nav 18 + banner 60 + listing + pagination 18 +
    # footer 18; the listing needs more than 114px to own over half of
    # the wrapper, which any 2+ product listing clears
    return page_shell(shop, (
        '<div class="page">'
        f"<div>home | catalog | about {shop}</div>"
        '<div><img src="banner.gif" width="468" height="60"></div>'
        f'<div class="listing">{listing}</div>'
        "<div>1 2 3 next</div>"
        f"<div>contact {shop}</div>"
        "</div>"))


def flat_divs_page(stem: str, count: int, *, shop: str) -> tuple[str, dict]:
    listing = "".join(product_div(i) for i in range(count))
    listing += '<p><a href="/more">more offers</a></p>'
    # child heights: count * 54 then 18; the average floors below 54,
    # so the trailing paragraph is filtered and every product kept
    truth = {"schema": 1, "page_id": stem,
             "records": [{"selector": [0, 2, i], "kind": "flat",
                          "field_count": 1}
                         for i in range(count)]}
    return divs_frame(listing, shop), truth


def flat_row_4col(i: int) -> str:
    # author cell holds four 10-char words: a 256px cell fits three per
    # line, so the cell wraps to 2 lines and the row is 36px tall
    return (f"<tr><td>{TITLES[i % len(TITLES)]}</td>"
            f"<td>{words(i, 4)}</td>"
            f'<td><a href="/buy/{i}">buy</a></td>'
            f'<td><a href="/info/{i}">info</a></td></tr>')


def nested_row(i: int) -> str:
    # 3 outer cells; the middle one holds a 2x2 table (two 18px rows =
    # 36px, matching the flat rows); fields: 3 tr + 7 td + 2 a = 12
    return (f"<tr><td>{TITLES[i % len(TITLES)]}</td>"
            "<td><table>"
            f"<tr><td>cloth {10 + i}.50</td><td>in stock</td></tr>"
            f"<tr><td>paper {5 + i}.25</td><td>reprint</td></tr>"
            "</table></td>"
            f'<td><a href="/buy/{i}">buy</a> <a href="/info/{i}">info</a>'
            "</td></tr>")


def nested_page(stem: str, rows: int, nested_at: int, *,
                shop: str) -> tuple[str, dict]:
    body_rows = [nested_row(i) if i == nested_at else flat_row_4col(i)
                 for i in range(rows)]
    markup = (f"<h1>{shop}</h1><table>{''.join(body_rows)}</table>"
              f"<p>(c) 2003 {shop}</p>")
    truth = {"schema": 1, "page_id": stem, "records": [
        {"selector": [1, i],
         "kind": "nested" if i == nested_at else "flat",
         "field_count": 12 if i == nested_at else 7}
        for i in range(rows)]}
    return page_shell(shop, markup), truth


def mal_table_unclosed(stem: str, rows: int, *, shop: str) -> tuple[str, dict]:
    # cells and rows never closed; sibling tags imply the closes
    markup = [f"<h1>{shop}</h1><TABLE>"]
    for i in range(rows):
        markup.append(f"<TR><TD>{TITLES[i % len(TITLES)]}"
                      f"<TD>{NAMES[i % len(NAMES)]}"
                      f"<TD><a href=/item/{i}>buy</a>")
    markup.append(f"</TABLE><p>(c) 2003 {shop}")
    truth = {"schema": 1, "page_id": stem,
             "records": [{"selector": [1, i], "kind": "flat", "field_count": 5}
                         for i in range(rows)]}
    return page_shell(shop, "".join(markup)), truth


def mal_table_stray(stem: str, rows: int, *, shop: str) -> tuple[str, dict]:
    # stray close tags inside cells are dropped without moving content
    markup = [f"<h1>{shop}</h1><table border=1 width=100%>"]
    for i in range(rows):
        markup.append(f"<tr><td>{TITLES[i % len(TITLES)]}</span></td>"
                      f"<td>{NAMES[i % len(NAMES)]}</dd></td>"
                      f"<td><a href=/item/{i} class=buy>buy</a></em></td></tr>")
    markup.append(f"</table><p>(c) 2003 {shop}</p>")
    truth = {"schema": 1, "page_id": stem,
             "records": [{"selector": [1, i], "kind": "flat", "field_count": 5}
                         for i in range(rows)]}
    return page_shell(shop, "".join(markup)), truth


def mal_list_page(stem: str, count: int, *, shop: str) -> tuple[str, dict]:
    items = "".join(f"<li>{PRODUCTS[i % len(PRODUCTS)]} "
                    f"<a href=/l/{i}>view</a>" for i in range(count))
    markup = (f"<h1>{shop}</h1><ul>{items}</ul>"
              f"<div>all prices include tax</div>")
    truth = {"schema": 1, "page_id": stem,
             "records": [{"selector": [1, i], "kind": "flat", "field_count": 1}
                         for i in range(count)]}
    return page_shell(shop, markup), truth


def list_page(stem: str, count: int, *, shop: str) -> tuple[str, dict]:
    # 15 inline words per item: 11 fit the first 1024px line, so every
    # item wraps to 2 lines (36px)
    items = "".join(
        f'<li><a href="/r/{i}">{TEN[i % len(TEN)]}</a> {words(i + 1, 14)}</li>'
        for i in range(count))
    markup = (f"<h1>{shop}</h1><ul>{items}</ul>"
              f"<div>updated weekly by {shop}</div>")
    truth = {"schema": 1, "page_id": stem,
             "records": [{"selector": [1, i], "kind": "flat", "field_count": 1}
                         for i in range(count)]}
    return page_shell(shop, markup), truth


def tall_row(i: int, lead_words: int) -> str:
    # 341px cells fit three 10-char words per line: 7 words -> 3 lines
    # (54px), 4 words -> 2 lines (36px), 1 word -> 1 line (18px)
    return (f"<tr><td>{words(i, lead_words)}</td>"
            f"<td>{NAMES[i % len(NAMES)]}</td>"
            f'<td><a href="/item/{i}">buy</a></td></tr>')


def tall_single_page(stem: str, *, shop: str) -> tuple[str, dict]:
    # heights 54/36/18: the region filter (avg 36) keeps the first two,
    # the record filter (avg 45) keeps only the 54px row
    rows = [tall_row(0, 7), tall_row(1, 4), tall_row(2, 1)]
    markup = (f"<h1>{shop}</h1><table>{''.join(rows)}</table>"
              f"<p>(c) 2003 {shop}</p>")
    truth = {"schema": 1, "page_id": stem,
             "records": [{"selector": [1, 0], "kind": "flat",
                          "field_count": 5}]}
    return page_shell(shop, markup), truth


def short_miss_page(stem: str, *, shop: str) -> tuple[str, dict]:
    # heights 54/54/54/36 average to 49: the last true record is lost
    rows = [tall_row(i, 7) for i in range(3)] + [tall_row(3, 4)]
    markup = (f"<h1>{shop}</h1><table>{''.join(rows)}</table>"
              f"<p>(c) 2003 {shop}</p>")
    truth = {"schema": 1, "page_id": stem,
             "records": [{"selector": [1, i], "kind": "flat", "field_count": 5}
                         for i in range(4)]}
    return page_shell(shop, markup), truth


def ad_equal_page(stem: str, *, shop: str) -> tuple[str, dict]:
    # a sponsor box shaped exactly like a product (54px, one link) is
    # extracted as a sixth record: one false positive by construction
    listing = "".join(product_div(i) for i in range(5))
    listing += ('<div class="sponsor"><a href="http://ads.example/click">'
                "Sponsored</a><div>limited time offer inside</div>"
                "<span>ad</span></div>")
    listing += '<p><a href="/more">more offers</a></p>'
    truth = {"schema": 1, "page_id": stem,
             "records": [{"selector": [0, 2, i], "kind": "flat",
                          "field_count": 1}
                         for i in range(5)]}
    return divs_frame(listing, shop), truth


def ad_wide_page(stem: str, rows: int, *, shop: str) -> tuple[str, dict]:
    # a full-width banner div precedes the table; the table still wins
    # the body scan (144px beats 60px at equal width)
    table, truth = flat_table_page(stem, rows, shop=shop)
    table_body = table.split("<body>")[1].split("</body>")[0]
    no_heading = table_body.replace(f"<h1>{shop}</h1>", "", 1)
    markup = ('<div class="banner"><img src="top.gif" width="468" '
              'height="60"></div>' + no_heading)
    return page_shell(shop, markup), truth


def build_pages() -> list[tuple[str, str, dict]]:
    pages: list[tuple[str, str, dict]] = []

    def add(stem: str, built: tuple[str, dict]) -> None:
        markup, truth = built
        assert truth["page_id"] == stem
        pages.append((stem, markup, truth))

    add("01_table_r4", flat_table_page("01_table_r4", 4, shop="Inkwell Books"))
    add("02_table_r5", flat_table_page("02_table_r5", 5, shop="Page Turner"))
    add("03_table_r7", flat_table_page("03_table_r7", 7, shop="Quiet Corner"))
    add("04_table_r10", flat_table_page("04_table_r10", 10, shop="Dog Ear"))
    add("05_table_r12", flat_table_page("05_table_r12", 12, shop="Spine Lane"))
    add("06_divs_n6", flat_divs_page("06_divs_n6", 6, shop="Ware House"))
    add("07_divs_n8", flat_divs_page("07_divs_n8", 8, shop="Oddments"))
    add("08_divs_n10", flat_divs_page("08_divs_n10", 10, shop="Curios"))
    add("09_nested_r5", nested_page("09_nested_r5", 5, 4, shop="Twin Press"))
    add("10_nested_r6", nested_page("10_nested_r6", 6, 2, shop="Two Rivers"))
    add("11_nested_r7", nested_page("11_nested_r7", 7, 0, shop="Split Oak"))
    add("12_mal_table_r5",
        mal_table_unclosed("12_mal_table_r5", 5, shop="Loose Leaf"))
    add("13_mal_table_r6",
        mal_table_stray("13_mal_table_r6", 6, shop="Torn Cover"))
    add("14_mal_list_n5", mal_list_page("14_mal_list_n5", 5, shop="Odd Lots"))
    add("15_list_n6", list_page("15_list_n6", 6, shop="Long Form"))
    add("16_list_n8", list_page("16_list_n8", 8, shop="Week Notes"))
    add("17_tall_single", tall_single_page("17_tall_single", shop="One Off"))
    add("18_short_miss", short_miss_page("18_short_miss", shop="Near Miss"))
    add("19_ad_equal", ad_equal_page("19_ad_equal", shop="Mixed Bag"))
    add("20_ad_wide", ad_wide_page("20_ad_wide", 8, shop="Top Banner"))

    assert len(pages) == 20
    assert all(len(word) == 10 for word in TEN)
    return pages


def write_corpus(out_dir: Path) -> list[str]:
    out_dir.mkdir(parents=True, exist_ok=True)
    stems = []
    for stem, markup, truth in build_pages():
        (out_dir / f"{stem}.html").write_text(markup, encoding="utf-8")
        (out_dir / f"{stem}.truth.json").write_text(
            json.dumps(truth, indent=2) + "\n", encoding="utf-8")
        stems.append(stem)
    return stems


def main() -> int:
    default_out = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "corpus"
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=default_out,
                        help=f"output directory (default {default_out})")
    args = parser.parse_args()
    stems = write_corpus(args.out)
    print(f"wrote {len(stems)} pages to {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
