"""Symbol streams and context patterns.

A pattern reads ``LEFT ~ SLOT ~ RIGHT``.  Context symbols are merged POS
categories (``IN``, ``NNPS*``), double-quoted punctuation literals
(``","``), the known-entity marker ``ORG`` and the document boundaries
``^`` and ``$``.  Slot items are categories, with a trailing ``%`` when
they may repeat.
"""
from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .corpus import SpanKind, TaggedDocument, TaggedToken

MAX_CONTEXT = 5
ORG = "ORG"
BEGIN = "^"
END = "$"
DEFAULT_MERGES = {"NNP": "NNPS*", "NNPS": "NNPS*"}


class PatternSyntaxError(ValueError):
    pass


class CategoryMergeMap:
    """Maps raw POS tags to merged categories; unmapped tags map to themselves."""

    def __init__(self, mapping: Mapping[str, str] | None = None):
        self.mapping = dict(DEFAULT_MERGES if mapping is None else mapping)

    def __call__(self, tag: str) -> str:
        return self.mapping.get(tag, tag)

    def __eq__(self, other):
        return isinstance(other, CategoryMergeMap) and self.mapping == other.mapping

    def __repr__(self):
        return f"CategoryMergeMap({self.mapping!r})"

    @classmethod
    def parse(cls, text: str) -> CategoryMergeMap:
        """Build from ``"NNP=NNPS*,NNPS=NNPS*"``-style text."""
        mapping = {}
        for item in filter(None, (s.strip() for s in text.split(","))):
            tag, sep, cat = item.partition("=")
            if not sep or not tag or not cat:
                raise ValueError(f"bad merge entry {item!r}")
            mapping[tag] = cat
        return cls(mapping)


@dataclass(frozen=True)
class Category:
    symbol: str

    def __post_init__(self):
        if not self.symbol:
            raise ValueError("empty category")


@dataclass(frozen=True)
class Literal:
    text: str

    def __post_init__(self):
        if not self.text:
            raise ValueError("empty literal")


@dataclass(frozen=True)
class EntityRef:
    pass


@dataclass(frozen=True)
class Boundary:
    kind: str

    def __post_init__(self):
        if self.kind not in ("begin", "end"):
            raise ValueError(f"unknown boundary kind {self.kind!r}")


Symbol = Union[Category, Literal, EntityRef, Boundary]

ENTITY = EntityRef()
STREAM_BEGIN = Boundary("begin")
STREAM_END = Boundary("end")


@dataclass(frozen=True)
class SlotItem:
    category: str
    repeated: bool = False

    def __post_init__(self):
        if not self.category:
            raise ValueError("empty slot category")


@dataclass(frozen=True)
class Pattern:
    left: tuple[Symbol, ...]
    slot: tuple[SlotItem, ...]
    right: tuple[Symbol, ...]

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "slot", tuple(self.slot))
        object.__setattr__(self, "right", tuple(self.right))
        if not self.slot:
            raise ValueError("empty slot")
        for side, context, boundary in (
            ("left", self.left, STREAM_BEGIN),
            ("right", self.right, STREAM_END),
        ):
            if not 1 <= len(context) <= MAX_CONTEXT:
                raise ValueError(f"{side} context length {len(context)} outside 1..{MAX_CONTEXT}")
            outer = 0 if side == "left" else len(context) - 1
            for i, sym in enumerate(context):
                if not isinstance(sym, (Category, Literal, EntityRef, Boundary)):
                    raise ValueError(f"not a pattern symbol: {sym!r}")
                if isinstance(sym, Boundary) and (sym != boundary or i != outer):
                    raise ValueError(f"misplaced boundary in {side} context")

    @property
    def context_length(self) -> int:
        return len(self.left) + len(self.right)

    def __str__(self) -> str:
        return format_pattern(self)


@dataclass(frozen=True)
class StreamItem:
    symbol: Symbol
    start: int
    end: int
    # merged category of a single token item; None for entities and boundaries
    category: str | None = None


@dataclass(frozen=True)
class SymbolStream:
    items: tuple[StreamItem, ...]

    def __len__(self) -> int:
        return len(self.items)

    def __getitem__(self, i):
        return self.items[i]

    @property
    def symbols(self) -> tuple[Symbol, ...]:
        return tuple(item.symbol for item in self.items)

    def token_span(self, start: int, end: int) -> tuple[int, int]:
        """Token range covered by stream items ``[start, end)``."""
        return self.items[start].start, self.items[end - 1].end


def token_symbol(token: TaggedToken, merge: CategoryMergeMap) -> Symbol:
    if token.is_punctuation:
        return Literal(token.surface)
    return Category(merge(token.pos))


def to_symbol_stream(
    doc: TaggedDocument,
    span_kind: SpanKind = "gold",
    merge: CategoryMergeMap | None = None,
    spans=None,
) -> SymbolStream:
    """Generalize ``doc`` to symbols, collapsing each entity span to ``ORG``.

    ``spans`` overrides the document's spans of ``span_kind`` when given.
    """
    merge = merge or CategoryMergeMap()
    if spans is None:
        spans = doc.spans(span_kind)
    starts = {s.start: s.end for s in spans}
    items = [StreamItem(STREAM_BEGIN, 0, 0)]
    i = 0
    while i < len(doc.tokens):
        if i in starts:
            items.append(StreamItem(ENTITY, i, starts[i]))
            i = starts[i]
            continue
        tok = doc.tokens[i]
        items.append(StreamItem(token_symbol(tok, merge), i, i + 1, merge(tok.pos)))
        i += 1
    items.append(StreamItem(STREAM_END, len(doc.tokens), len(doc.tokens)))
    return SymbolStream(tuple(items))


def make_slot(entity_tokens: Sequence[TaggedToken], merge: CategoryMergeMap | None = None) -> tuple[SlotItem, ...]:
    """Run-length collapse the merged categories of an entity's tokens."""
    if not entity_tokens:
        raise ValueError("entity has no tokens")
    merge = merge or CategoryMergeMap()
    cats = [merge(tok.pos) for tok in entity_tokens]
    slot = []
    i = 0
    while i < len(cats):
        j = i
        while j < len(cats) and cats[j] == cats[i]:
            j += 1
        slot.append(SlotItem(cats[i], repeated=j - i > 1))
        i = j
    return tuple(slot)


def _contexts(symbols: Sequence[Symbol], min_ctx: int, max_ctx: int, reverse: bool) -> set:
    """Context tuples of length min_ctx..max_ctx read away from the entity.

    A context that runs into the stream edge stops at the boundary symbol,
    so every requested length beyond it yields the same maximal context.
    """
    seq = list(reversed(symbols)) if reverse else list(symbols)
    out = set()
    for n in range(min_ctx, max_ctx + 1):
        ctx = seq[:n]
        out.add(tuple(reversed(ctx)) if reverse else tuple(ctx))
    return out


def occurrence_patterns(
    stream: SymbolStream,
    index: int,
    slot: tuple[SlotItem, ...],
    min_ctx: int = 1,
    max_ctx: int = MAX_CONTEXT,
) -> set[Pattern]:
    """Distinct patterns around the entity item at ``stream[index]``."""
    symbols = stream.symbols
    lefts = _contexts(symbols[:index], min_ctx, max_ctx, reverse=True)
    rights = _contexts(symbols[index + 1:], min_ctx, max_ctx, reverse=False)
    return {Pattern(l, slot, r) for l in lefts for r in rights}


def generate_patterns(
    docs: Iterable[TaggedDocument],
    span_kind: SpanKind = "gold",
    merge: CategoryMergeMap | None = None,
    min_ctx: int = 1,
    max_ctx: int = MAX_CONTEXT,
) -> Counter[Pattern]:
    """Patterns around every entity occurrence, counted by occurrences.

    Each occurrence contributes at most 1 to a pattern's count, even when
    several requested context lengths collapse onto the same edge context.
    """
    if not 1 <= min_ctx <= max_ctx <= MAX_CONTEXT:
        raise ValueError(f"need 1 <= min_ctx <= max_ctx <= {MAX_CONTEXT}")
    merge = merge or CategoryMergeMap()
    counts: Counter[Pattern] = Counter()
    for doc in docs:
        stream = to_symbol_stream(doc, span_kind, merge)
        for index, item in enumerate(stream.items):
            if item.symbol != ENTITY:
                continue
            slot = make_slot(doc.tokens[item.start:item.end], merge)
            counts.update(occurrence_patterns(stream, index, slot, min_ctx, max_ctx))
    return counts


# -- text form ---------------------------------------------------------------

_BARE_CATEGORY = re.compile(r"[A-Za-z0-9_.,:;!?*()\[\]{}<>/|+=&@'`-]+")
_RESERVED = {ORG, BEGIN, END, "~"}
_TOKEN = re.compile(r'c?"(?:[^"\\]|\\.)*"%?|\S+')


def _quote(text: str) -> str:
    return json.dumps(text, ensure_ascii=False)


def _format_category(cat: str) -> str:
    if _BARE_CATEGORY.fullmatch(cat) and cat not in _RESERVED:
        return cat
    return "c" + _quote(cat)


def format_symbol(sym: Symbol) -> str:
    if isinstance(sym, Category):
        return _format_category(sym.symbol)
    if isinstance(sym, Literal):
        return _quote(sym.text)
    if isinstance(sym, EntityRef):
        return ORG
    return BEGIN if sym.kind == "begin" else END


def format_slot_item(item: SlotItem) -> str:
    return _format_category(item.category) + ("%" if item.repeated else "")


def format_pattern(p: Pattern) -> str:
    return " ~ ".join(
        " ".join(parts)
        for parts in (
            [format_symbol(s) for s in p.left],
            [format_slot_item(s) for s in p.slot],
            [format_symbol(s) for s in p.right],
        )
    )


def _unquote(token: str) -> str:
    try:
        text = json.loads(token)
    except json.JSONDecodeError:
        raise PatternSyntaxError(f"bad quoted symbol {token}") from None
    if not isinstance(text, str) or not text:
        raise PatternSyntaxError(f"bad quoted symbol {token}")
    return text


def _parse_category(token: str) -> str:
    if token.startswith('c"'):
        return _unquote(token[1:])
    if _BARE_CATEGORY.fullmatch(token) and token not in _RESERVED:
        return token
    raise PatternSyntaxError(f"unknown symbol form {token!r}")


def _parse_symbol(token: str) -> Symbol:
    if token == ORG:
        return ENTITY
    if token == BEGIN:
        return STREAM_BEGIN
    if token == END:
        return STREAM_END
    if token.startswith('"'):
        return Literal(_unquote(token))
    return Category(_parse_category(token))


def _parse_slot_item(token: str) -> SlotItem:
    repeated = token.endswith("%")
    if repeated:
        token = token[:-1]
    return SlotItem(_parse_category(token), repeated)


def split_comment(line: str) -> tuple[list[str], str]:
    """Tokenize a pattern line, separating any trailing ``#`` comment."""
    tokens = []
    for m in _TOKEN.finditer(line):
        if m.group().startswith("#"):
            return tokens, line[m.start() + 1:].strip()
        tokens.append(m.group())
    return tokens, ""


def parse_pattern(text: str) -> Pattern:
    tokens, _ = split_comment(text)
    marks = [i for i, t in enumerate(tokens) if t == "~"]
    if len(marks) != 2:
        raise PatternSyntaxError(f"expected LEFT ~ SLOT ~ RIGHT, got {text!r}")
    a, b = marks
    left, slot, right = tokens[:a], tokens[a + 1:b], tokens[b + 1:]
    if not slot:
        raise PatternSyntaxError("empty slot")
    for side, ctx in (("left", left), ("right", right)):
        if not 1 <= len(ctx) <= MAX_CONTEXT:
            raise PatternSyntaxError(f"{side} context must hold 1..{MAX_CONTEXT} symbols")
    try:
        return Pattern(
            tuple(_parse_symbol(t) for t in left),
            tuple(_parse_slot_item(t) for t in slot),
            tuple(_parse_symbol(t) for t in right),
        )
    except PatternSyntaxError:
        raise
    except ValueError as e:
        raise PatternSyntaxError(str(e)) from None


def parse_comment(comment: str) -> dict[str, str]:
    fields = {}
    for part in comment.split():
        key, sep, value = part.partition("=")
        if sep:
            fields[key] = value
    return fields


def parse_pattern_file(text: str) -> list[tuple[Pattern, dict[str, str]]]:
    """Patterns in file order, each with its ``key=value`` comment fields."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        tokens, comment = split_comment(line)
        if not tokens:
            continue
        try:
            pattern = parse_pattern(line)
        except PatternSyntaxError as e:
            raise PatternSyntaxError(f"line {lineno}: {e}") from None
        out.append((pattern, parse_comment(comment)))
    return out


def format_pattern_file(rows: Iterable[tuple[Pattern, Mapping[str, object]]]) -> str:
    lines = []
    for pattern, fields in rows:
        line = format_pattern(pattern)
        if fields:
            line += "  # " + " ".join(f"{k}={v}" for k, v in fields.items())
        lines.append(line)
    return "".join(line + "\n" for line in lines)
