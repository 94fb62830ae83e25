"""POS-tagged documents with entity annotations.

Corpus files hold one document per ``#doc <id>`` header followed by one
``surface<TAB>pos<TAB>bio`` line per token, where bio is ``O``, ``B-ORG``
or ``I-ORG``.  Lexicon files hold one entity per line, tokens separated by
single spaces.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Literal, Sequence

SpanKind = Literal["gold", "predicted"]
Surface = tuple[str, ...]

DOC_HEADER = "#doc"
BIO_TAGS = ("O", "B-ORG", "I-ORG")


class CorpusFormatError(ValueError):
    """Raised when a corpus or lexicon file cannot be parsed."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    pos: str

    def __post_init__(self):
        if not self.surface or "\t" in self.surface or "\n" in self.surface:
            raise ValueError(f"invalid token surface {self.surface!r}")
        if not self.pos or "\t" in self.pos or "\n" in self.pos:
            raise ValueError(f"invalid POS tag {self.pos!r}")

    @property
    def is_punctuation(self) -> bool:
        # Penn-style convention: punctuation tokens carry themselves as tag.
        return self.pos == self.surface


@dataclass(frozen=True, order=True)
class EntitySpan:
    start: int
    end: int
    kind: SpanKind = "gold"

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise ValueError(f"invalid span [{self.start}, {self.end})")
        if self.kind not in ("gold", "predicted"):
            raise ValueError(f"unknown span kind {self.kind!r}")


def _check_spans(spans: Sequence[EntitySpan], length: int, kind: str) -> None:
    last_end = 0
    for span in sorted(spans):
        if span.kind != kind:
            raise ValueError(f"{span} stored among {kind} spans")
        if span.end > length:
            raise ValueError(f"{span} exceeds document length {length}")
        if span.start < last_end:
            raise ValueError(f"overlapping {kind} spans near {span}")
        last_end = span.end


@dataclass(frozen=True)
class TaggedDocument:
    id: str
    tokens: tuple[TaggedToken, ...]
    gold_spans: tuple[EntitySpan, ...] = ()
    predicted_spans: tuple[EntitySpan, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "gold_spans", tuple(sorted(self.gold_spans)))
        object.__setattr__(
            self, "predicted_spans", tuple(sorted(self.predicted_spans))
        )
        _check_spans(self.gold_spans, len(self.tokens), "gold")
        _check_spans(self.predicted_spans, len(self.tokens), "predicted")

    def __len__(self) -> int:
        return len(self.tokens)

    def spans(self, kind: SpanKind) -> tuple[EntitySpan, ...]:
        if kind == "gold":
            return self.gold_spans
        if kind == "predicted":
            return self.predicted_spans
        raise ValueError(f"unknown span kind {kind!r}")

    def surface(self, start: int, end: int) -> Surface:
        return tuple(tok.surface for tok in self.tokens[start:end])

    def with_predicted(self, spans: Iterable[EntitySpan]) -> TaggedDocument:
        return replace(self, predicted_spans=tuple(spans))


@dataclass(frozen=True)
class EntityLexicon:
    """The evolving list of known entity names."""

    entries: frozenset[Surface] = field(default_factory=frozenset)

    def __post_init__(self):
        entries = frozenset(tuple(e) for e in self.entries)
        for entry in entries:
            if not entry or not all(entry):
                raise ValueError(f"empty lexicon entry {entry!r}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_strings(cls, names: Iterable[str]) -> EntityLexicon:
        return cls(frozenset(tuple(name.split(" ")) for name in names))

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, surface: object) -> bool:
        return surface in self.entries

    def __iter__(self):
        return iter(sorted(self.entries))

    def __or__(self, other: EntityLexicon) -> EntityLexicon:
        return EntityLexicon(self.entries | other.entries)

    def union(self, surfaces: Iterable[Surface]) -> EntityLexicon:
        return EntityLexicon(self.entries | frozenset(surfaces))

    @cached_property
    def _lengths_by_first(self) -> dict[str, list[int]]:
        index: dict[str, set[int]] = {}
        for entry in self.entries:
            index.setdefault(entry[0], set()).add(len(entry))
        return {k: sorted(v, reverse=True) for k, v in index.items()}

    def longest_match(self, words: Sequence[str], pos: int) -> int:
        """Length of the longest entry starting at ``words[pos]``, or 0."""
        for n in self._lengths_by_first.get(words[pos], ()):
            if pos + n <= len(words) and tuple(words[pos:pos + n]) in self.entries:
                return n
        return 0


def annotate_with_lexicon(doc: TaggedDocument, lexicon: EntityLexicon) -> TaggedDocument:
    """Replace predicted spans with every lexicon occurrence.

    Scans left to right; at each position the longest entry wins and the
    matched tokens are skipped.
    """
    words = [tok.surface for tok in doc.tokens]
    spans = []
    i = 0
    while i < len(words):
        n = lexicon.longest_match(words, i)
        if n:
            spans.append(EntitySpan(i, i + n, "predicted"))
            i += n
        else:
            i += 1
    return doc.with_predicted(spans)


def _spans_from_bio(tags: list[str], linenos: list[int]) -> list[EntitySpan]:
    spans = []
    start = None
    for i, tag in enumerate(tags):
        if tag == "I-ORG":
            if start is None:
                raise CorpusFormatError("I-ORG without preceding B-ORG", linenos[i])
            continue
        if start is not None:
            spans.append(EntitySpan(start, i, "gold"))
            start = None
        if tag == "B-ORG":
            start = i
    if start is not None:
        spans.append(EntitySpan(start, len(tags), "gold"))
    return spans


def parse_corpus(text: str) -> list[TaggedDocument]:
    docs: list[TaggedDocument] = []
    seen: set[str] = set()
    doc_id: str | None = None
    tokens: list[TaggedToken] = []
    tags: list[str] = []
    linenos: list[int] = []

    def flush():
        if doc_id is not None:
            spans = _spans_from_bio(tags, linenos)
            docs.append(TaggedDocument(doc_id, tuple(tokens), tuple(spans)))

    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if "\t" not in line and line.split(maxsplit=1)[0] == DOC_HEADER:
            flush()
            parts = line.split()
            if len(parts) != 2:
                raise CorpusFormatError("expected '#doc <id>' header", lineno)
            doc_id = parts[1]
            if doc_id in seen:
                raise CorpusFormatError(f"duplicate document id {doc_id!r}", lineno)
            seen.add(doc_id)
            tokens, tags, linenos = [], [], []
            continue
        if doc_id is None:
            raise CorpusFormatError("token line before any '#doc' header", lineno)
        parts = line.split("\t")
        if len(parts) != 3:
            raise CorpusFormatError(
                f"expected surface<TAB>pos<TAB>bio, got {len(parts)} columns", lineno
            )
        surface, pos, bio = parts
        if bio not in BIO_TAGS:
            raise CorpusFormatError(f"unknown BIO tag {bio!r}", lineno)
        try:
            tokens.append(TaggedToken(surface, pos))
        except ValueError as e:
            raise CorpusFormatError(str(e), lineno) from None
        tags.append(bio)
        linenos.append(lineno)
    flush()
    return docs


def serialize_corpus(docs: Iterable[TaggedDocument], span_kind: SpanKind = "gold") -> str:
    lines = []
    for doc in docs:
        lines.append(f"{DOC_HEADER} {doc.id}")
        bio = ["O"] * len(doc)
        for span in doc.spans(span_kind):
            bio[span.start] = "B-ORG"
            for i in range(span.start + 1, span.end):
                bio[i] = "I-ORG"
        for tok, tag in zip(doc.tokens, bio):
            lines.append(f"{tok.surface}\t{tok.pos}\t{tag}")
    return "".join(line + "\n" for line in lines)


def parse_lexicon(text: str) -> EntityLexicon:
    names = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        if "\t" in line:
            raise CorpusFormatError("tab in lexicon entry", lineno)
        name = line.strip()
        if "  " in name:
            raise CorpusFormatError("tokens must be separated by single spaces", lineno)
        names.append(name)
    return EntityLexicon.from_strings(names)


def serialize_lexicon(lexicon: EntityLexicon) -> str:
    return "".join(" ".join(entry) + "\n" for entry in lexicon)


def gold_surfaces(docs: Iterable[TaggedDocument]) -> EntityLexicon:
    """Distinct gold entity names of ``docs``, as a lexicon."""
    return EntityLexicon(
        frozenset(doc.surface(s.start, s.end) for doc in docs for s in doc.gold_spans)
    )
