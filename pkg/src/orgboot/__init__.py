"""Bootstrapped pattern induction for organisation names in POS-tagged text."""
from .corpus import (
    EntityLexicon,
    EntitySpan,
    TaggedDocument,
    TaggedToken,
    annotate_with_lexicon,
    gold_surfaces,
    parse_corpus,
    parse_lexicon,
    serialize_corpus,
    serialize_lexicon,
)
from .learner import (
    LearnerConfig,
    ScoredPattern,
    bootstrap,
    filter_patterns,
    learn,
    rank_patterns,
    score_patterns,
)
from .matcher import Extraction, extract_entities, match_pattern, predict
from .metrics import MetricsReport, evaluate, multiple_metrics, simple_metrics
from .patterns import (
    CategoryMergeMap,
    Pattern,
    SlotItem,
    format_pattern,
    generate_patterns,
    make_slot,
    parse_pattern,
    to_symbol_stream,
)
from .splitter import SplitSpec, make_split

__version__ = "0.1.0"
