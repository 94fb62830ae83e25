"""Apply patterns to symbol streams and pull out candidate entities."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import EntityLexicon, Surface, TaggedDocument, annotate_with_lexicon
from .patterns import CategoryMergeMap, Pattern, SlotItem, StreamItem, SymbolStream, to_symbol_stream


@dataclass(frozen=True, order=True)
class Extraction:
    doc_id: str
    start: int
    end: int
    surface: Surface
    pattern_id: str

    @property
    def span(self) -> tuple[str, int, int]:
        return self.doc_id, self.start, self.end

    @property
    def record(self) -> tuple[str, tuple[int, int], tuple[str, ...]]:
        """The ``(doc_id, (start, end), surface)`` form the metrics expect."""
        return self.doc_id, (self.start, self.end), self.surface

    def to_line(self) -> str:
        return "\t".join(
            [self.doc_id, str(self.start), str(self.end), " ".join(self.surface), self.pattern_id]
        )

    @classmethod
    def from_line(cls, line: str) -> Extraction:
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 5:
            raise ValueError(f"expected 5 tab-separated columns, got {len(parts)}")
        doc_id, start, end, surface, pattern_id = parts
        return cls(doc_id, int(start), int(end), tuple(surface.split(" ")), pattern_id)


def _slot_ends(items: Sequence[StreamItem], pos: int, slot: Sequence[SlotItem]) -> set[int]:
    """Every end position at which ``slot`` can consume ``items[pos:end]``."""
    reachable = {pos}
    n = len(items)
    for slot_item in slot:
        nxt = set()
        for q in reachable:
            k = q
            while k < n and items[k].category == slot_item.category:
                k += 1
                nxt.add(k)
                if not slot_item.repeated:
                    break
        if not nxt:
            return nxt
        reachable = nxt
    return reachable


def _context_at(symbols, start: int, context) -> bool:
    return 0 <= start and start + len(context) <= len(symbols) and (
        tuple(symbols[start:start + len(context)]) == context
    )


class StreamIndex:
    """A symbol stream indexed by (preceding symbol, slot-start category)."""

    def __init__(self, stream: SymbolStream):
        self.stream = stream
        self.symbols = stream.symbols
        self.positions: dict[tuple, list[int]] = {}
        items = stream.items
        for p in range(1, len(items)):
            if items[p].category is not None:
                self.positions.setdefault((self.symbols[p - 1], items[p].category), []).append(p)

    def match(self, pattern: Pattern) -> list[tuple[int, int]]:
        items = self.stream.items
        symbols = self.symbols
        left, right = pattern.left, pattern.right
        out = []
        for p in self.positions.get((left[-1], pattern.slot[0].category), ()):
            if not _context_at(symbols, p - len(left), left):
                continue
            for end in sorted(_slot_ends(items, p, pattern.slot), reverse=True):
                if _context_at(symbols, end, right):
                    out.append((p, end))
                    break
        return out


def match_pattern(pattern: Pattern, stream: SymbolStream | StreamIndex) -> list[tuple[int, int]]:
    """Stream item ranges ``[start, end)`` filled by the pattern's slot.

    At most one range per start position: the longest one whose right
    context also matches.
    """
    if not isinstance(stream, StreamIndex):
        stream = StreamIndex(stream)
    return stream.match(pattern)


def pattern_spans(pattern: Pattern, index: StreamIndex) -> list[tuple[int, int]]:
    """Token spans extracted by ``pattern``."""
    return [index.stream.token_span(s, e) for s, e in index.match(pattern)]


def collapsed_index(doc: TaggedDocument, lexicon: EntityLexicon, merge: CategoryMergeMap | None = None) -> StreamIndex:
    annotated = annotate_with_lexicon(doc, lexicon)
    return StreamIndex(to_symbol_stream(annotated, "predicted", merge))


def extract_entities(
    patterns: Sequence[Pattern],
    doc: TaggedDocument,
    lexicon: EntityLexicon,
    merge: CategoryMergeMap | None = None,
    pattern_ids: Sequence[str] | None = None,
) -> list[Extraction]:
    """Run ``patterns`` over ``doc`` with known entities collapsed to ``ORG``.

    A span found by several patterns is reported once, attributed to the
    first pattern in list order.  Results are sorted by span.
    """
    if pattern_ids is None:
        pattern_ids = [str(p) for p in patterns]
    index = collapsed_index(doc, lexicon, merge)
    found: dict[tuple[int, int], str] = {}
    for pattern, pid in zip(patterns, pattern_ids):
        for span in pattern_spans(pattern, index):
            found.setdefault(span, pid)
    return [
        Extraction(doc.id, s, e, doc.surface(s, e), pid)
        for (s, e), pid in sorted(found.items())
    ]


LEXICON_ID = "lexicon"


def lexicon_extractions(doc: TaggedDocument, lexicon: EntityLexicon) -> list[Extraction]:
    annotated = annotate_with_lexicon(doc, lexicon)
    return [
        Extraction(doc.id, s.start, s.end, doc.surface(s.start, s.end), LEXICON_ID)
        for s in annotated.predicted_spans
    ]


def predict(
    patterns: Sequence[Pattern],
    docs: Iterable[TaggedDocument],
    lexicon: EntityLexicon,
    merge: CategoryMergeMap | None = None,
    pattern_ids: Sequence[str] | None = None,
    include_lexicon: bool = True,
) -> list[Extraction]:
    """Lexicon hits plus pattern extractions over ``docs``, in document order."""
    out = []
    for doc in docs:
        found = lexicon_extractions(doc, lexicon) if include_lexicon else []
        found += extract_entities(patterns, doc, lexicon, merge, pattern_ids)
        out.extend(sorted(found, key=lambda x: (x.start, x.end)))
    return out


def format_extractions(extractions: Iterable[Extraction]) -> str:
    return "".join(x.to_line() + "\n" for x in extractions)


def parse_extractions(text: str) -> list[Extraction]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            out.append(Extraction.from_line(line))
        except ValueError as e:
            raise ValueError(f"line {lineno}: {e}") from None
    return out
