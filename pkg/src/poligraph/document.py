"""Document model: simplified segment tree over policy HTML or plain text.

A policy document is reduced to an ordered list of segments (HEADING,
LISTITEM, TEXT) with parent links:

- a LISTITEM's parent is the segment immediately preceding its list
  (normally a TEXT or HEADING; the enclosing LISTITEM when lists nest),
- a TEXT's parent is the nearest enclosing heading,
- a HEADING's parent is the nearest higher-level heading.

Sentences are then read off each segment at several context depths: the
segment text alone, the text prefixed by its parent, by its grandparent,
and so on (see enumerate_text_variants). Context variants recover
sentences that HTML splits across a lead-in paragraph and list items,
e.g. "We collect the following personal information:" + "Location".
"""

import re
from dataclasses import dataclass
from enum import Enum
from html.parser import HTMLParser

from .errors import UnknownSegmentError


class SegmentKind(str, Enum):
    HEADING = "HEADING"
    LISTITEM = "LISTITEM"
    TEXT = "TEXT"


@dataclass(frozen=True)
class Segment:
    id: int
    kind: SegmentKind
    text: str
    parent: int | None


@dataclass(frozen=True)
class TextVariant:
    segment: int
    depth: int
    text: str


@dataclass
class DocumentTree:
    source_id: str
    segments: list[Segment]

    def segment(self, segment_id: int) -> Segment:
        if not 0 <= segment_id < len(self.segments):
            raise UnknownSegmentError(f"unknown segment {segment_id!r}")
        return self.segments[segment_id]

    def ancestors(self, segment_id: int) -> list[Segment]:
        """Parent chain from nearest ancestor outward."""
        chain = []
        seen = set()
        parent = self.segment(segment_id).parent
        while parent is not None and parent not in seen:
            seen.add(parent)
            seg = self.segment(parent)
            chain.append(seg)
            parent = seg.parent
        return chain

    def to_json_obj(self) -> dict:
        return {
            "source_id": self.source_id,
            "segments": [
                {
                    "id": s.id,
                    "kind": s.kind.value,
                    "text": s.text,
                    "parent": s.parent,
                }
                for s in self.segments
            ],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "DocumentTree":
        segments = [
            Segment(
                id=int(s["id"]),
                kind=SegmentKind(s["kind"]),
                text=s["text"],
                parent=None if s["parent"] is None else int(s["parent"]),
            )
            for s in obj["segments"]
        ]
        return cls(source_id=obj["source_id"], segments=segments)


def enumerate_text_variants(tree: DocumentTree, segment_id: int) -> list[TextVariant]:
    """All context variants of a segment, ordered by increasing depth.

    Depth k prepends the k nearest ancestors' texts (outermost first),
    joined by single spaces. A LISTITEM under a TEXT under a HEADING
    yields exactly 3 variants.
    """
    seg = tree.segment(segment_id)
    chain = tree.ancestors(segment_id)
    variants = [TextVariant(segment=segment_id, depth=0, text=seg.text)]
    for depth in range(1, len(chain) + 1):
        prefix = [a.text for a in reversed(chain[:depth])]
        variants.append(
            TextVariant(
                segment=segment_id,
                depth=depth,
                text=" ".join(prefix + [seg.text]),
            )
        )
    return variants


# ---------------------------------------------------------------------------
# HTML parsing

_VOID_TAGS = {
    "area", "base", "br", "col", "embed", "hr", "img", "input",
    "link", "meta", "param", "source", "track", "wbr",
}

# Subtrees that never hold policy prose. Tables are out of scope too.
_DROP_TAGS = {
    "script", "style", "noscript", "template", "svg", "iframe",
    "nav", "aside", "footer", "form", "button", "select", "table",
}

_HEADING_TAGS = {"h1": 1, "h2": 2, "h3": 3, "h4": 4, "h5": 5, "h6": 6}

_BLOCK_TAGS = set(_HEADING_TAGS) | {
    "p", "div", "section", "article", "main", "body", "html",
    "ul", "ol", "li", "blockquote", "pre", "dt", "dd", "dl",
    "header", "figure", "figcaption", "address", "details", "summary",
}

_BULLET_RE = re.compile(r"^(?:[-–—•·◦▪*●○‣⁃]|\d{1,3}[.)])\s+")


class _Node:
    __slots__ = ("tag", "children")

    def __init__(self, tag: str):
        self.tag = tag
        self.children: list = []  # _Node or str


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = _Node("#root")
        self.stack = [self.root]
        self.drop_depth = 0

    def handle_starttag(self, tag, attrs):
        if self.drop_depth:
            if tag in _DROP_TAGS and tag not in _VOID_TAGS:
                self.drop_depth += 1
            return
        if tag in _DROP_TAGS:
            self.drop_depth = 1
            return
        if tag == "br":
            self.stack[-1].children.append("\n")
            return
        if tag in _VOID_TAGS:
            return
        # HTML allows unclosed <p> and <li>; close them implicitly.
        if tag == "li":
            while len(self.stack) > 1 and self.stack[-1].tag not in ("ul", "ol", "#root"):
                if self.stack[-1].tag in ("li", "p"):
                    self.stack.pop()
                else:
                    break
        elif tag in _BLOCK_TAGS and self.stack[-1].tag == "p":
            self.stack.pop()
        node = _Node(tag)
        self.stack[-1].children.append(node)
        self.stack.append(node)

    def handle_endtag(self, tag):
        if self.drop_depth:
            if tag in _DROP_TAGS:
                self.drop_depth -= 1
            return
        if tag in _VOID_TAGS:
            return
        for i in range(len(self.stack) - 1, 0, -1):
            if self.stack[i].tag == tag:
                del self.stack[i:]
                return
        # Stray close tag: ignore.

    def handle_data(self, data):
        if self.drop_depth:
            return
        if data:
            self.stack[-1].children.append(data)


def _has_block_child(node: _Node) -> bool:
    return any(isinstance(c, _Node) and c.tag in _BLOCK_TAGS for c in node.children)


def _subtree_text_len(node: _Node) -> int:
    total = 0
    for c in node.children:
        if isinstance(c, str):
            total += len(c.strip())
        else:
            total += _subtree_text_len(c)
    return total


def _find_all(node: _Node, tag: str, out: list):
    for c in node.children:
        if isinstance(c, _Node):
            if c.tag == tag:
                out.append(c)
            _find_all(c, tag, out)


def _main_content(root: _Node) -> _Node:
    """Largest <main>, else largest <article>, else the whole tree."""
    for tag in ("main", "article"):
        found: list[_Node] = []
        _find_all(root, tag, found)
        if found:
            return max(found, key=_subtree_text_len)
    return root


def _inline_text(node: _Node) -> str:
    """Text of a node ignoring nested lists; keeps explicit line breaks."""
    parts = []
    for c in node.children:
        if isinstance(c, str):
            parts.append(c)
        elif c.tag in ("ul", "ol"):
            continue
        else:
            parts.append(_inline_text(c))
    return "".join(parts)


def _clean(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip()


class _Emitter:
    def __init__(self):
        self.rows: list[dict] = []  # kind, text, parent (index into rows)
        self.heading_stack: list[tuple[int, int]] = []  # (level, row index)
        self.last_text_or_heading: int | None = None

    def current_heading(self) -> int | None:
        return self.heading_stack[-1][1] if self.heading_stack else None

    def emit(self, kind: SegmentKind, text: str, parent: int | None) -> int | None:
        text = _clean(text)
        if not text:
            return None
        idx = len(self.rows)
        self.rows.append({"kind": kind, "text": text, "parent": parent})
        if kind in (SegmentKind.TEXT, SegmentKind.HEADING):
            self.last_text_or_heading = idx
        return idx

    def emit_heading(self, level: int, text: str) -> int | None:
        while self.heading_stack and self.heading_stack[-1][0] >= level:
            self.heading_stack.pop()
        idx = self.emit(SegmentKind.HEADING, text, self.current_heading())
        if idx is not None:
            self.heading_stack.append((level, idx))
        return idx

    def emit_text_block(self, raw: str):
        # A block may hold several lines (from <br> or plain text input);
        # each non-empty line is its own segment.
        for line in raw.split("\n"):
            self.emit(SegmentKind.TEXT, line, self.current_heading())


def _walk(node: _Node, em: _Emitter):
    loose: list[str] = []

    def flush_loose():
        if loose:
            em.emit_text_block("".join(loose))
            loose.clear()

    for child in node.children:
        if isinstance(child, str):
            loose.append(child)
            continue
        tag = child.tag
        if tag in _HEADING_TAGS:
            flush_loose()
            em.emit_heading(_HEADING_TAGS[tag], _inline_text(child))
        elif tag in ("ul", "ol"):
            flush_loose()
            _walk_list(child, em, em.last_text_or_heading)
        elif tag == "li":
            # li outside a list: treat as text
            flush_loose()
            em.emit_text_block(_inline_text(child))
            _walk_lists_within(child, em, em.last_text_or_heading)
        elif tag in ("p", "blockquote", "pre", "dt", "dd"):
            flush_loose()
            em.emit_text_block(_inline_text(child))
        elif _has_block_child(child):
            flush_loose()
            _walk(child, em)
        else:
            flush_loose()
            em.emit_text_block(_inline_text(child))
    flush_loose()


def _walk_lists_within(node: _Node, em: _Emitter, list_parent: int | None):
    for child in node.children:
        if isinstance(child, _Node) and child.tag in ("ul", "ol"):
            _walk_list(child, em, list_parent)


def _walk_list(list_node: _Node, em: _Emitter, list_parent: int | None):
    for child in list_node.children:
        if not isinstance(child, _Node):
            continue
        if child.tag == "li":
            idx = em.emit(SegmentKind.LISTITEM, _inline_text(child), list_parent)
            # Nested lists hang off their enclosing item.
            inner_parent = idx if idx is not None else list_parent
            _walk_lists_within(child, em, inner_parent)
        elif child.tag in ("ul", "ol"):
            _walk_list(child, em, list_parent)


def _apply_plain_list_heuristic(rows: list[dict]):
    """Turn runs of >=2 bullet-prefixed TEXT rows into LISTITEM rows."""
    i = 0
    while i < len(rows):
        if rows[i]["kind"] is SegmentKind.TEXT and _BULLET_RE.match(rows[i]["text"]):
            j = i
            while (
                j < len(rows)
                and rows[j]["kind"] is SegmentKind.TEXT
                and _BULLET_RE.match(rows[j]["text"])
            ):
                j += 1
            if j - i >= 2:
                parent = None
                for k in range(i - 1, -1, -1):
                    if rows[k]["kind"] in (SegmentKind.TEXT, SegmentKind.HEADING):
                        parent = k
                        break
                for k in range(i, j):
                    rows[k]["kind"] = SegmentKind.LISTITEM
                    rows[k]["text"] = _BULLET_RE.sub("", rows[k]["text"], count=1)
                    rows[k]["parent"] = parent
            i = j
        else:
            i += 1


def build_document_tree(html: str, source_id: str) -> DocumentTree:
    """Parse HTML (or plain text) into a DocumentTree.

    Boilerplate containers (nav, aside, footer, script, style, tables)
    are dropped and the largest text-bearing main/article subtree is
    kept when one exists. Plain-text bullet lists ("1. Name") become
    LISTITEM segments. Unparsable input yields an empty tree.
    """
    builder = _TreeBuilder()
    try:
        builder.feed(html or "")
        builder.close()
    except Exception:
        return DocumentTree(source_id=source_id, segments=[])
    content = _main_content(builder.root)
    em = _Emitter()
    _walk(content, em)
    _apply_plain_list_heuristic(em.rows)
    segments = [
        Segment(id=i, kind=row["kind"], text=row["text"], parent=row["parent"])
        for i, row in enumerate(em.rows)
    ]
    return DocumentTree(source_id=source_id, segments=segments)
