"""Segment tree over policy HTML or plain text.

Output is the document-tree JSON interchange shape:

    {"source_id": str,
     "segments": [{"id": int, "kind": "HEADING|LISTITEM|TEXT",
                   "text": str, "parent": int | null}]}

Parent links: a LISTITEM points at the text or heading introducing its
list (the enclosing item for nested lists), a TEXT at its nearest
heading, a HEADING at the nearest higher-level heading. Downstream
consumers rebuild list-split sentences by prefixing a segment with its
ancestors' texts, so the parent links are the load-bearing part.
"""

import re
from dataclasses import dataclass
from html.parser import HTMLParser

HEADING = "HEADING"
LISTITEM = "LISTITEM"
TEXT = "TEXT"

_VOID = {
    "area", "base", "br", "col", "embed", "hr", "img", "input",
    "link", "meta", "param", "source", "track", "wbr",
}

# Containers that never carry policy prose.
_DROP = {
    "script", "style", "noscript", "template", "svg", "iframe",
    "nav", "aside", "footer", "form", "button", "select", "table",
}

_HEADING_LEVEL = {f"h{i}": i for i in range(1, 7)}

_BLOCK = set(_HEADING_LEVEL) | {
    "p", "div", "section", "article", "main", "body", "html",
    "ul", "ol", "li", "blockquote", "pre", "dt", "dd", "dl",
    "header", "figure", "figcaption", "address", "details", "summary",
}

_BULLET = re.compile(r"^(?:[-–—•·◦▪*●○‣⁃]|\d{1,3}[.)])\s+")

# Line separator standing in for <br>. Raw newlines inside a block are
# soft source wraps and must not split the block into segments; only
# explicit breaks (and real newlines in bare text) do.
_HARD_BREAK = " "


@dataclass(frozen=True)
class Segment:
    id: int
    kind: str
    text: str
    parent: int | None


class _Elem:
    __slots__ = ("tag", "children")

    def __init__(self, tag):
        self.tag = tag
        self.children = []  # _Elem or str


class _Parser(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = _Elem("#root")
        self.open = [self.root]
        self.dropping = 0

    def handle_starttag(self, tag, attrs):
        if self.dropping:
            if tag in _DROP and tag not in _VOID:
                self.dropping += 1
            return
        if tag in _DROP:
            self.dropping = 1
            return
        if tag == "br":
            self.open[-1].children.append(_HARD_BREAK)
            return
        if tag in _VOID:
            return
        # implicit closes for unclosed <li> and <p>
        if tag == "li":
            while len(self.open) > 1 and self.open[-1].tag in ("li", "p"):
                self.open.pop()
        elif tag in _BLOCK and self.open[-1].tag == "p":
            self.open.pop()
        node = _Elem(tag)
        self.open[-1].children.append(node)
        self.open.append(node)

    def handle_endtag(self, tag):
        if self.dropping:
            if tag in _DROP:
                self.dropping -= 1
            return
        if tag in _VOID:
            return
        for i in range(len(self.open) - 1, 0, -1):
            if self.open[i].tag == tag:
                del self.open[i:]
                return

    def handle_data(self, data):
        if not self.dropping and data:
            self.open[-1].children.append(data)


def _text_len(node):
    return sum(
        len(c.strip()) if isinstance(c, str) else _text_len(c)
        for c in node.children
    )


def _pick_content(root):
    """Largest main, else largest article, else everything."""
    for tag in ("main", "article"):
        found = []
        stack = [root]
        while stack:
            for c in stack.pop().children:
                if isinstance(c, _Elem):
                    if c.tag == tag:
                        found.append(c)
                    stack.append(c)
        if found:
            return max(found, key=_text_len)
    return root


def _inline_text(node):
    """Node text without nested lists; <br> line breaks kept."""
    parts = []
    for c in node.children:
        if isinstance(c, str):
            parts.append(c)
        elif c.tag not in ("ul", "ol"):
            parts.append(_inline_text(c))
    return "".join(parts)


def _squash(text):
    return re.sub(r"\s+", " ", text).strip()


class _Rows:
    def __init__(self):
        self.rows = []  # [kind, text, parent]
        self.headings = []  # (level, row index)
        self.last_anchor = None  # last TEXT or HEADING row

    def add(self, kind, text, parent):
        text = _squash(text)
        if not text:
            return None
        self.rows.append([kind, text, parent])
        idx = len(self.rows) - 1
        if kind != LISTITEM:
            self.last_anchor = idx
        return idx

    def heading_parent(self):
        return self.headings[-1][1] if self.headings else None

    def add_heading(self, level, text):
        while self.headings and self.headings[-1][0] >= level:
            self.headings.pop()
        idx = self.add(HEADING, text, self.heading_parent())
        if idx is not None:
            self.headings.append((level, idx))

    def add_text_lines(self, raw, split_newlines=False):
        seps = _HARD_BREAK + ("\n" if split_newlines else "")
        for line in re.split(f"[{seps}]", raw):
            self.add(TEXT, line, self.heading_parent())


def _has_block_child(node):
    return any(isinstance(c, _Elem) and c.tag in _BLOCK for c in node.children)


def _walk(node, rows):
    loose = []

    def flush():
        if loose:
            rows.add_text_lines("".join(loose), split_newlines=True)
            loose.clear()

    for child in node.children:
        if isinstance(child, str):
            loose.append(child)
            continue
        flush()
        tag = child.tag
        if tag in _HEADING_LEVEL:
            rows.add_heading(_HEADING_LEVEL[tag], _inline_text(child))
        elif tag in ("ul", "ol"):
            _walk_list(child, rows, rows.last_anchor)
        elif tag in ("p", "blockquote", "pre", "dt", "dd", "li"):
            rows.add_text_lines(_inline_text(child))
            _nested_lists(child, rows, rows.last_anchor)
        elif _has_block_child(child):
            _walk(child, rows)
        else:
            rows.add_text_lines(_inline_text(child))
    flush()


def _nested_lists(node, rows, parent):
    for child in node.children:
        if isinstance(child, _Elem) and child.tag in ("ul", "ol"):
            _walk_list(child, rows, parent)


def _walk_list(list_node, rows, parent):
    for child in list_node.children:
        if not isinstance(child, _Elem):
            continue
        if child.tag == "li":
            idx = rows.add(LISTITEM, _inline_text(child), parent)
            _nested_lists(child, rows, idx if idx is not None else parent)
        elif child.tag in ("ul", "ol"):
            _walk_list(child, rows, parent)


def _plain_bullets(rows):
    """Runs of 2+ bullet-prefixed TEXT rows become list items."""
    i = 0
    while i < len(rows):
        if rows[i][0] == TEXT and _BULLET.match(rows[i][1]):
            j = i
            while j < len(rows) and rows[j][0] == TEXT and _BULLET.match(rows[j][1]):
                j += 1
            if j - i >= 2:
                parent = next(
                    (k for k in range(i - 1, -1, -1) if rows[k][0] != LISTITEM),
                    None,
                )
                for k in range(i, j):
                    rows[k][0] = LISTITEM
                    rows[k][1] = _BULLET.sub("", rows[k][1], count=1)
                    rows[k][2] = parent
            i = j
        else:
            i += 1


def build_tree(html: str, source_id: str) -> list[Segment]:
    parser = _Parser()
    try:
        parser.feed(html or "")
        parser.close()
    except Exception:
        return []
    rows = _Rows()
    _walk(_pick_content(parser.root), rows)
    _plain_bullets(rows.rows)
    return [
        Segment(id=i, kind=kind, text=text, parent=parent)
        for i, (kind, text, parent) in enumerate(rows.rows)
    ]


def ancestors(segments: list[Segment], segment_id: int) -> list[Segment]:
    """Parent chain, nearest first; defensive against parent cycles."""
    chain = []
    seen = set()
    parent = segments[segment_id].parent
    while parent is not None and parent not in seen:
        seen.add(parent)
        chain.append(segments[parent])
        parent = segments[parent].parent
    return chain


def tree_to_json_obj(source_id: str, segments: list[Segment]) -> dict:
    return {
        "source_id": source_id,
        "segments": [
            {"id": s.id, "kind": s.kind, "text": s.text, "parent": s.parent}
            for s in segments
        ],
    }
