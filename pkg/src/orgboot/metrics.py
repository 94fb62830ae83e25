"""Precision and recall over distinct names (simple) and occurrences (multiple).

Both countings use exact matching: a name is correct only if its full
token sequence is a gold name, an occurrence only if its span equals a
gold span.  Empty denominators score 1.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Hashable, Iterable

from .corpus import Surface, TaggedDocument

SpanRecord = tuple  # (doc_id, (start, end), surface)


def _ratio(num: int, den: int) -> float:
    return num / den if den else 1.0


def simple_metrics(extracted: Iterable[Surface], gold: Iterable[Surface]) -> tuple[float, float]:
    """(R, P) over distinct surface forms."""
    extracted, gold = set(map(tuple, extracted)), set(map(tuple, gold))
    hit = len(extracted & gold)
    return _ratio(hit, len(gold)), _ratio(hit, len(extracted))


def _occurrence_keys(spans: Iterable[SpanRecord]) -> set[Hashable]:
    keys = set()
    for doc_id, span, *_ in spans:
        start, end = span
        keys.add((doc_id, start, end))
    return keys


def multiple_metrics(extracted_spans: Iterable[SpanRecord], gold_spans: Iterable[SpanRecord]) -> tuple[float, float]:
    """(MR, MP) over occurrences identified by (doc, start, end)."""
    extracted, gold = _occurrence_keys(extracted_spans), _occurrence_keys(gold_spans)
    hit = len(extracted & gold)
    return _ratio(hit, len(gold)), _ratio(hit, len(extracted))


@dataclass(frozen=True)
class MetricsReport:
    R: float
    P: float
    MR: float
    MP: float
    distinct_gold: int
    distinct_extracted: int
    distinct_correct: int
    gold_occurrences: int
    extracted_occurrences: int
    correct_occurrences: int

    @classmethod
    def from_records(cls, extracted: Iterable[SpanRecord], gold: Iterable[SpanRecord]) -> MetricsReport:
        extracted, gold = list(extracted), list(gold)
        ext_names = {tuple(r[2]) for r in extracted}
        gold_names = {tuple(r[2]) for r in gold}
        ext_keys, gold_keys = _occurrence_keys(extracted), _occurrence_keys(gold)
        R, P = simple_metrics(ext_names, gold_names)
        MR, MP = multiple_metrics(extracted, gold)
        return cls(
            R, P, MR, MP,
            distinct_gold=len(gold_names),
            distinct_extracted=len(ext_names),
            distinct_correct=len(ext_names & gold_names),
            gold_occurrences=len(gold_keys),
            extracted_occurrences=len(ext_keys),
            correct_occurrences=len(ext_keys & gold_keys),
        )

    def to_text(self) -> str:
        fields = asdict(self)
        head = " ".join(f"{k}={fields[k]:.4f}" for k in ("R", "P", "MR", "MP"))
        counts = "\n".join(f"{k}={v}" for k, v in fields.items() if isinstance(v, int))
        return head + "\n" + counts + "\n"

    @classmethod
    def from_text(cls, text: str) -> MetricsReport:
        fields: dict[str, float | int] = {}
        for part in text.split():
            key, _, value = part.partition("=")
            fields[key] = float(value) if key in ("R", "P", "MR", "MP") else int(value)
        return cls(**fields)


def gold_records(docs: Iterable[TaggedDocument]) -> list[SpanRecord]:
    return [
        (doc.id, (s.start, s.end), doc.surface(s.start, s.end))
        for doc in docs
        for s in doc.gold_spans
    ]


def evaluate(extracted: Iterable[SpanRecord], docs: Iterable[TaggedDocument]) -> MetricsReport:
    """Score extraction records against the gold spans of ``docs``.

    Records for documents outside ``docs`` are ignored.
    """
    docs = list(docs)
    ids = {doc.id for doc in docs}
    extracted = [r for r in extracted if r[0] in ids]
    return MetricsReport.from_records(extracted, gold_records(docs))
