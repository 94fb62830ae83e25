"""Pattern scoring, filtering, ranking and the lexicon bootstrap."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .corpus import EntityLexicon, TaggedDocument, annotate_with_lexicon
from .matcher import StreamIndex, collapsed_index, pattern_spans
from .metrics import multiple_metrics
from .patterns import CategoryMergeMap, Pattern, format_pattern, format_pattern_file, to_symbol_stream

log = logging.getLogger(__name__)

SpanKey = tuple[str, int, int]


@dataclass(frozen=True)
class LearnerConfig:
    min_correct: int = 2
    min_ratio: float = 0.1
    stop_recall: float = 0.6
    stop_precision: float = 0.6
    min_ctx: int = 1
    max_ctx: int = 5
    # judge pattern firings by seed-lexicon membership instead of gold spans
    weak_supervision: bool = False

    def __post_init__(self):
        if self.min_correct < 1:
            raise ValueError("min_correct must be >= 1")
        for name in ("min_ratio", "stop_recall", "stop_precision"):
            if not 0 <= getattr(self, name) <= 1:
                raise ValueError(f"{name} must lie in [0, 1]")
        if not 1 <= self.min_ctx <= self.max_ctx <= 5:
            raise ValueError("need 1 <= min_ctx <= max_ctx <= 5")


@dataclass(frozen=True)
class ScoredPattern:
    pattern: Pattern
    correct: int
    incorrect: int

    @property
    def score(self) -> Fraction:
        return Fraction(self.correct, self.incorrect + 1)

    @property
    def ratio(self) -> Fraction:
        fired = self.correct + self.incorrect
        return Fraction(self.correct, fired) if fired else Fraction(0)

    @property
    def id(self) -> str:
        return format_pattern(self.pattern)

    def comment(self) -> dict[str, object]:
        return {
            "count": self.correct + self.incorrect,
            "correct": self.correct,
            "incorrect": self.incorrect,
            "score": f"{float(self.score):.4f}",
        }


def _gold_keys(docs: Iterable[TaggedDocument]) -> set[SpanKey]:
    return {(d.id, s.start, s.end) for d in docs for s in d.gold_spans}


def score_patterns(
    patterns: Iterable[Pattern],
    training_docs: Sequence[TaggedDocument],
    lexicon: EntityLexicon,
    merge: CategoryMergeMap | None = None,
    weak_supervision: bool = False,
) -> list[ScoredPattern]:
    """Count correct and incorrect firings of each pattern over ``training_docs``.

    By default known entities are collapsed to ``ORG`` and a firing is
    correct when its span is exactly a gold span.  With
    ``weak_supervision`` the streams are left uncollapsed and a firing is
    correct when its span is exactly a lexicon occurrence.
    """
    if weak_supervision:
        reference = set()
        indices = []
        for doc in training_docs:
            annotated = annotate_with_lexicon(doc, lexicon)
            reference |= {(doc.id, s.start, s.end) for s in annotated.predicted_spans}
            indices.append((doc.id, StreamIndex(to_symbol_stream(doc, merge=merge, spans=()))))
    else:
        reference = _gold_keys(training_docs)
        indices = [(doc.id, collapsed_index(doc, lexicon, merge)) for doc in training_docs]

    scored = []
    for pattern in patterns:
        correct = incorrect = 0
        for doc_id, index in indices:
            for start, end in pattern_spans(pattern, index):
                if (doc_id, start, end) in reference:
                    correct += 1
                else:
                    incorrect += 1
        scored.append(ScoredPattern(pattern, correct, incorrect))
    return scored


def filter_patterns(scored: Iterable[ScoredPattern], cfg: LearnerConfig) -> list[ScoredPattern]:
    """Drop patterns with too few correct or too many incorrect firings."""
    min_ratio = Fraction(cfg.min_ratio).limit_denominator(10**9)
    return [s for s in scored if s.correct >= cfg.min_correct and s.ratio >= min_ratio]


def _rank_key(s: ScoredPattern):
    # incorrect only separates zero-score duplicates; it keeps the order total
    return (-s.score, -s.correct, s.pattern.context_length, s.id, s.incorrect)


def rank_patterns(filtered: Iterable[ScoredPattern]) -> list[ScoredPattern]:
    """Best first: score, then correct count, then shorter context, then text."""
    return sorted(filtered, key=_rank_key)


@dataclass(frozen=True)
class TraceRecord:
    iteration: int
    pattern_id: str
    lexicon_size: int
    MR: float
    MP: float

    def to_line(self) -> str:
        return f"{self.iteration}\t{self.pattern_id}\t{self.lexicon_size}\t{self.MR:.4f}\t{self.MP:.4f}"


@dataclass
class BootstrapResult:
    selected: list[ScoredPattern]
    lexicon: EntityLexicon
    trace: list[TraceRecord]
    rejected: list[ScoredPattern] = field(default_factory=list)
    # cumulative occurrences (doc_id, start, end) predicted on the training docs
    predicted: set[SpanKey] = field(default_factory=set)

    @property
    def patterns(self) -> list[Pattern]:
        return [s.pattern for s in self.selected]


def format_trace(trace: Iterable[TraceRecord]) -> str:
    return "".join(r.to_line() + "\n" for r in trace)


def format_selected(selected: Iterable[ScoredPattern]) -> str:
    return format_pattern_file((s.pattern, s.comment()) for s in selected)


def _lexicon_keys(docs: Sequence[TaggedDocument], lexicon: EntityLexicon) -> set[SpanKey]:
    keys = set()
    for doc in docs:
        for s in annotate_with_lexicon(doc, lexicon).predicted_spans:
            keys.add((doc.id, s.start, s.end))
    return keys


def _measure(predicted: set[SpanKey], gold: set[SpanKey]) -> tuple[float, float]:
    return multiple_metrics(
        ((d, (s, e)) for d, s, e in predicted), ((d, (s, e)) for d, s, e in gold)
    )


def bootstrap(
    ranked: Sequence[ScoredPattern],
    train_docs: Sequence[TaggedDocument],
    seed_lexicon: EntityLexicon,
    cfg: LearnerConfig = LearnerConfig(),
    merge: CategoryMergeMap | None = None,
) -> BootstrapResult:
    """Admit ranked patterns one by one, growing the lexicon as they fire.

    The predicted set is cumulative: lexicon occurrences and pattern
    extractions, once admitted, stay predicted.  Names extracted at an
    iteration join the lexicon used by the next one.  A pattern that would
    push occurrence precision below ``cfg.stop_precision`` is skipped; the
    loop ends once occurrence recall reaches ``cfg.stop_recall``.
    """
    docs = list(train_docs)
    by_id = {d.id: d for d in docs}
    gold = _gold_keys(docs)
    lexicon = seed_lexicon
    committed = _lexicon_keys(docs, lexicon)
    MR, MP = _measure(committed, gold)
    result = BootstrapResult([], lexicon, [TraceRecord(0, "-", len(lexicon), MR, MP)], [], committed)
    if not ranked or MR >= cfg.stop_recall:
        return result

    def run(pattern: Pattern, indices) -> set[SpanKey]:
        return {(doc_id, s, e) for doc_id, index in indices for s, e in pattern_spans(pattern, index)}

    indexed_entries = None
    indices: list[tuple[str, StreamIndex]] = []
    selected_hits: set[SpanKey] = set()
    lexicon_hits: set[SpanKey] = set()
    for i, candidate in enumerate(ranked, 1):
        if lexicon.entries != indexed_entries:
            indices = [(d.id, collapsed_index(d, lexicon, merge)) for d in docs]
            selected_hits = set()
            for s in result.selected:
                selected_hits |= run(s.pattern, indices)
            lexicon_hits = _lexicon_keys(docs, lexicon)
            indexed_entries = lexicon.entries
        new_hits = run(candidate.pattern, indices)
        tentative = committed | lexicon_hits | selected_hits | new_hits
        MR, MP = _measure(tentative, gold)
        if MP < cfg.stop_precision:
            log.debug("iteration %d: reject %s (MP=%.4f)", i, candidate.id, MP)
            result.rejected.append(candidate)
            continue
        committed = tentative
        selected_hits |= new_hits
        result.selected.append(candidate)
        lexicon = lexicon.union(by_id[d].surface(s, e) for d, s, e in selected_hits)
        result.trace.append(TraceRecord(i, candidate.id, len(lexicon), MR, MP))
        log.debug("iteration %d: admit %s (MR=%.4f MP=%.4f)", i, candidate.id, MR, MP)
        if MR >= cfg.stop_recall:
            break
    result.lexicon = lexicon
    result.predicted = committed
    return result


@dataclass
class LearnResult:
    scored: list[ScoredPattern]
    ranked: list[ScoredPattern]
    bootstrap: BootstrapResult


def learn(
    candidates: Iterable[Pattern],
    scoring_docs: Sequence[TaggedDocument],
    train_docs: Sequence[TaggedDocument],
    seed_lexicon: EntityLexicon,
    cfg: LearnerConfig = LearnerConfig(),
    merge: CategoryMergeMap | None = None,
) -> LearnResult:
    """Score candidates on ``scoring_docs`` (L+A), then bootstrap over ``train_docs`` (A)."""
    scored = score_patterns(candidates, scoring_docs, seed_lexicon, merge, cfg.weak_supervision)
    ranked = rank_patterns(filter_patterns(scored, cfg))
    log.info("%d candidates, %d kept after filtering", len(scored), len(ranked))
    return LearnResult(scored, ranked, bootstrap(ranked, train_docs, seed_lexicon, cfg, merge))
