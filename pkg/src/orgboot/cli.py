"""Command-line pipeline: split, seed-lexicon, generate, learn, extract, eval, sweep.

Exit codes: 0 on success, 1 on usage errors, 2 on missing or invalid data.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .corpus import (
    CorpusFormatError,
    TaggedDocument,
    annotate_with_lexicon,
    gold_surfaces,
    parse_corpus,
    parse_lexicon,
    serialize_lexicon,
)
from .learner import LearnerConfig, format_selected, format_trace, learn
from .matcher import format_extractions, parse_extractions, predict
from .metrics import evaluate
from .patterns import (
    MAX_CONTEXT,
    CategoryMergeMap,
    PatternSyntaxError,
    format_pattern_file,
    generate_patterns,
    parse_pattern_file,
)
from .splitter import SplitSpec, make_split
from .synthetic import corpus_text

log = logging.getLogger("orgboot")

DEFAULT_THRESHOLDS = "0.4:0.7,0.6:0.6,0.7:0.4"


class DataError(Exception):
    """Bad or missing input data; reported with exit status 2."""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# -- argument types ------------------------------------------------------------

def _unit(text: str) -> float:
    value = float(text)
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"{text} is not in [0, 1]")
    return value


def _ctx(text: str) -> int:
    value = int(text)
    if not 1 <= value <= MAX_CONTEXT:
        raise argparse.ArgumentTypeError(f"context length must be 1..{MAX_CONTEXT}")
    return value


def _sizes(text: str) -> tuple[int, int, int]:
    try:
        sizes = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad sizes {text!r}") from None
    if len(sizes) != 3 or min(sizes) < 0:
        raise argparse.ArgumentTypeError("sizes must be three non-negative integers nL,nA,nB")
    return sizes


def _thresholds(text: str) -> list[tuple[float, float]]:
    pairs = []
    for item in text.split(","):
        recall, sep, precision = item.partition(":")
        if not sep:
            raise argparse.ArgumentTypeError(f"expected RECALL:PRECISION, got {item!r}")
        pairs.append((_unit(recall), _unit(precision)))
    return pairs


def _merge(text: str) -> CategoryMergeMap:
    try:
        return CategoryMergeMap.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


# -- io helpers ----------------------------------------------------------------

def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise DataError(f"cannot read {path}: {e.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise DataError(f"cannot write {path}: {e.strerror}") from None


def _load_corpus(path: str) -> list[TaggedDocument]:
    try:
        return parse_corpus(_read(path))
    except CorpusFormatError as e:
        raise DataError(f"{path}: {e}") from None


def _load_lexicon(path: str):
    try:
        return parse_lexicon(_read(path))
    except CorpusFormatError as e:
        raise DataError(f"{path}: {e}") from None


def _load_patterns(path: str):
    try:
        return [p for p, _ in parse_pattern_file(_read(path))]
    except PatternSyntaxError as e:
        raise DataError(f"{path}: {e}") from None


def _load_split(path: str) -> SplitSpec:
    try:
        return SplitSpec.from_text(_read(path))
    except ValueError as e:
        raise DataError(f"{path}: {e}") from None


def _select(docs: list[TaggedDocument], split_path: str | None, subset: str | None) -> list[TaggedDocument]:
    """Documents of ``subset`` (e.g. ``L+A``) in split order, or all documents."""
    if split_path is None:
        if subset is not None:
            raise UsageError("--subset requires --split")
        return docs
    split = _load_split(split_path)
    by_id = {d.id: d for d in docs}
    try:
        ids = split.subset(subset or "L+A+B")
    except ValueError as e:
        raise UsageError(str(e)) from None
    missing = [i for i in ids if i not in by_id]
    if missing:
        raise DataError(f"split names documents absent from the corpus: {' '.join(missing[:5])}")
    return [by_id[i] for i in ids]


def _learner_config(args, **overrides) -> LearnerConfig:
    fields = dict(
        min_correct=args.min_correct,
        min_ratio=args.min_ratio,
        stop_recall=args.stop_recall,
        stop_precision=args.stop_precision,
        weak_supervision=args.weak_supervision,
    )
    fields.update(overrides)
    return LearnerConfig(**fields)


# -- commands ------------------------------------------------------------------

def cmd_synthetic(args) -> None:
    _write(args.output, corpus_text(args.seed))


def cmd_split(args) -> None:
    docs = _load_corpus(args.corpus)
    try:
        split = make_split([d.id for d in docs], args.sizes, args.seed)
    except ValueError as e:
        raise UsageError(str(e)) from None
    _write(args.output, split.to_text())


def cmd_seed_lexicon(args) -> None:
    docs = _select(_load_corpus(args.corpus), args.split, args.subset)
    _write(args.output, serialize_lexicon(gold_surfaces(docs)))


def cmd_generate(args) -> None:
    docs = _select(_load_corpus(args.corpus), args.split, args.subset)
    lexicon = _load_lexicon(args.lexicon)
    if args.min_ctx > args.max_ctx:
        raise UsageError("--min-ctx exceeds --max-ctx")
    annotated = [annotate_with_lexicon(d, lexicon) for d in docs]
    counts = generate_patterns(annotated, "predicted", args.merge, args.min_ctx, args.max_ctx)
    rows = sorted(counts.items(), key=lambda kv: (-kv[1], str(kv[0])))
    _write(args.output, format_pattern_file((p, {"count": n}) for p, n in rows))


def _learn(args, corpus, cfg, lexicon=None, candidates=None):
    score_docs = _select(corpus, args.split, args.score_subset)
    train_docs = _select(corpus, args.split, args.train_subset)
    if lexicon is None:
        lexicon = _load_lexicon(args.lexicon)
    if candidates is None:
        candidates = _load_patterns(args.patterns)
    return learn(candidates, score_docs, train_docs, lexicon, cfg, args.merge)


def cmd_learn(args) -> None:
    result = _learn(args, _load_corpus(args.corpus), _learner_config(args))
    boot = result.bootstrap
    _write(args.out_patterns, format_selected(boot.selected))
    if args.out_lexicon:
        _write(args.out_lexicon, serialize_lexicon(boot.lexicon))
    if args.out_trace:
        _write(args.out_trace, format_trace(boot.trace))
    log.info("selected %d of %d ranked patterns; lexicon %d entries",
             len(boot.selected), len(result.ranked), len(boot.lexicon))


def cmd_extract(args) -> None:
    docs = _select(_load_corpus(args.corpus), args.split, args.subset)
    patterns = _load_patterns(args.patterns)
    lexicon = _load_lexicon(args.lexicon)
    found = predict(patterns, docs, lexicon, args.merge, include_lexicon=not args.no_lexicon_hits)
    _write(args.output, format_extractions(found))


def cmd_eval(args) -> None:
    docs = _select(_load_corpus(args.corpus), args.split, args.subset)
    try:
        extractions = parse_extractions(_read(args.extractions))
    except ValueError as e:
        raise DataError(f"{args.extractions}: {e}") from None
    _write(args.output, evaluate([x.record for x in extractions], docs).to_text())


SWEEP_HEADER = "stop_recall\tstop_precision\tMR\tMP\tR\tP\tpatterns\n"


def cmd_sweep(args) -> None:
    corpus = _load_corpus(args.corpus)
    if args.lexicon:
        lexicon = _load_lexicon(args.lexicon)
    else:
        lexicon = gold_surfaces(_select(corpus, args.split, "L"))
    if args.patterns:
        candidates = _load_patterns(args.patterns)
    else:
        annotated = [annotate_with_lexicon(d, lexicon) for d in _select(corpus, args.split, "L+A")]
        candidates = list(generate_patterns(annotated, "predicted", args.merge))
    test_docs = _select(corpus, args.split, args.eval_subset)
    lines = [SWEEP_HEADER]
    for recall, precision in args.thresholds:
        cfg = _learner_config(args, stop_recall=recall, stop_precision=precision)
        boot = _learn(args, corpus, cfg, lexicon, candidates).bootstrap
        found = predict(boot.patterns, test_docs, boot.lexicon, args.merge)
        report = evaluate([x.record for x in found], test_docs)
        lines.append(
            f"{recall:.2f}\t{precision:.2f}\t{report.MR:.4f}\t{report.MP:.4f}"
            f"\t{report.R:.4f}\t{report.P:.4f}\t{len(boot.selected)}\n"
        )
    _write(args.output, "".join(lines))


# -- parser --------------------------------------------------------------------

def _add_learner_flags(p) -> None:
    p.add_argument("--stop-recall", type=_unit, default=0.6)
    p.add_argument("--stop-precision", type=_unit, default=0.6)
    p.add_argument("--min-correct", type=int, default=2)
    p.add_argument("--min-ratio", type=_unit, default=0.1)
    p.add_argument("--weak-supervision", action="store_true",
                   help="judge pattern firings by seed-lexicon membership")
    p.add_argument("--score-subset", default=None, help="documents for pattern scoring (default L+A)")
    p.add_argument("--train-subset", default=None, help="documents for the bootstrap (default A)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="orgboot", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, func, help, output=True):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        if output:
            p.add_argument("-o", "--output", default=None, help="output file (default stdout)")
        return p

    def corpus_args(p, subset_default=None):
        p.add_argument("--corpus", required=True)
        p.add_argument("--split", default=None, help="split file from the split command")
        p.add_argument("--subset", default=subset_default, help="L, A, B or a sum like L+A")

    p = command("synthetic", cmd_synthetic, "write the bundled synthetic corpus")
    p.add_argument("--seed", type=int, default=7)

    p = command("split", cmd_split, "random L/A/B partition of the corpus documents")
    p.add_argument("--corpus", required=True)
    p.add_argument("--sizes", type=_sizes, default=(4, 8, 8))
    p.add_argument("--seed", type=int, default=0)

    p = command("seed-lexicon", cmd_seed_lexicon, "distinct gold names of a subset")
    corpus_args(p)

    p = command("generate", cmd_generate, "candidate patterns around lexicon occurrences")
    corpus_args(p)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--min-ctx", type=_ctx, default=1)
    p.add_argument("--max-ctx", type=_ctx, default=MAX_CONTEXT)

    p = command("learn", cmd_learn, "score, rank and bootstrap candidate patterns", output=False)
    p.add_argument("--corpus", required=True)
    p.add_argument("--split", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--patterns", required=True)
    p.add_argument("--out-patterns", "--output", "-o", dest="out_patterns", default=None)
    p.add_argument("--out-lexicon", default=None)
    p.add_argument("--out-trace", default=None)
    _add_learner_flags(p)

    p = command("extract", cmd_extract, "apply patterns and lexicon to documents")
    corpus_args(p)
    p.add_argument("--patterns", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--no-lexicon-hits", action="store_true",
                   help="report pattern extractions only")

    p = command("eval", cmd_eval, "score extractions against gold spans")
    corpus_args(p)
    p.add_argument("--extractions", required=True)

    p = command("sweep", cmd_sweep, "learn, extract and evaluate per threshold pair")
    p.add_argument("--corpus", required=True)
    p.add_argument("--split", required=True)
    p.add_argument("--lexicon", default=None, help="seed lexicon (default: gold names of L)")
    p.add_argument("--patterns", default=None, help="candidate patterns (default: generated from L+A)")
    p.add_argument("--thresholds", type=_thresholds, default=_thresholds(DEFAULT_THRESHOLDS),
                   help="RECALL:PRECISION pairs, comma separated")
    p.add_argument("--eval-subset", default="B")
    _add_learner_flags(p)

    for name in ("generate", "learn", "extract", "sweep"):
        sub.choices[name].add_argument(
            "--merge", type=_merge, default=CategoryMergeMap(),
            help="tag merges, e.g. 'NNP=NNPS*,NNPS=NNPS*'")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(name)s: %(message)s",
    )
    if getattr(args, "score_subset", "unset") is None:
        args.score_subset = "L+A"
    if getattr(args, "train_subset", "unset") is None:
        args.train_subset = "A"
    try:
        args.func(args)
    except UsageError as e:
        print(f"orgboot: error: {e}", file=sys.stderr)
        return 1
    except DataError as e:
        print(f"orgboot: error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
