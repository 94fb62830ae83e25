"""Random generators and brute-force oracles shared by the test modules."""
from __future__ import annotations

import random
from itertools import combinations

from hypothesis import strategies as st

from orgboot.corpus import EntitySpan, TaggedDocument, TaggedToken
from orgboot.patterns import (
    ENTITY,
    STREAM_BEGIN,
    STREAM_END,
    Category,
    CategoryMergeMap,
    Literal,
    Pattern,
    SlotItem,
)

MERGE = CategoryMergeMap()

WORDS = {
    "IN": ["by", "with", "of", "in"],
    "NNP": ["Texas", "Alpha", "Inria", "FT"],
    "NNPS": ["Instruments", "Labs"],
    "CD": ["2005", "12"],
    "DT": ["the", "a"],
    ",": [","],
    ".": ["."],
}
TAGS = list(WORDS)


def doc_from_pairs(pairs, gold=(), predicted=(), doc_id="d"):
    """Document from ``"surface/TAG"`` strings or (surface, tag) pairs."""
    tokens = []
    for p in pairs:
        if isinstance(p, str):
            surface, _, tag = p.rpartition("/")
        else:
            surface, tag = p
        tokens.append(TaggedToken(surface, tag))
    return TaggedDocument(
        doc_id,
        tuple(tokens),
        tuple(EntitySpan(s, e, "gold") for s, e in gold),
        tuple(EntitySpan(s, e, "predicted") for s, e in predicted),
    )


def random_spans(rng: random.Random, n: int, kind: str, density: float = 0.25, max_len: int = 3):
    spans = []
    i = 0
    while i < n:
        if rng.random() < density:
            length = rng.randint(1, min(max_len, n - i))
            spans.append(EntitySpan(i, i + length, kind))
            i += length + rng.randint(0, 2)
        else:
            i += 1
    return spans


def random_document(rng: random.Random, max_len: int = 30, doc_id: str = "d") -> TaggedDocument:
    n = rng.randint(0, max_len)
    tokens = []
    for _ in range(n):
        tag = rng.choice(TAGS)
        tokens.append(TaggedToken(rng.choice(WORDS[tag]), tag))
    return TaggedDocument(
        doc_id,
        tuple(tokens),
        tuple(random_spans(rng, n, "gold")),
        tuple(random_spans(rng, n, "predicted")),
    )


CONTEXT_SYMBOLS = [Category("IN"), Category("NNPS*"), Category("CD"), Category("DT"),
                   Literal(","), Literal("."), ENTITY]
SLOT_CATEGORIES = ["NNPS*", "NNPS*", "IN", "CD", "DT", ","]


def _random_context(rng: random.Random, boundary, outer_first: bool):
    n = rng.choice([1, 1, 1, 2, 2, 3, 5])
    ctx = [rng.choice(CONTEXT_SYMBOLS) for _ in range(n)]
    if rng.random() < 0.2:
        if outer_first:
            ctx[0] = boundary
        else:
            ctx[-1] = boundary
    return tuple(ctx)


def random_pattern(rng: random.Random) -> Pattern:
    slot = tuple(
        SlotItem(rng.choice(SLOT_CATEGORIES), rng.random() < 0.5)
        for _ in range(rng.choice([1, 1, 2, 3]))
    )
    return Pattern(
        _random_context(rng, STREAM_BEGIN, True),
        slot,
        _random_context(rng, STREAM_END, False),
    )


# -- hypothesis strategies ------------------------------------------------------

surfaces = st.text(
    alphabet=st.characters(blacklist_categories=("Cs", "Cc", "Zl", "Zp")), min_size=1, max_size=6
).filter(lambda s: s.strip() == s)
tags = st.sampled_from(["IN", "NNP", "NNPS", ",", "CD", "DT", "$", "-LRB-"])


@st.composite
def documents(draw, doc_id=None):
    n = draw(st.integers(0, 12))
    toks = tuple(TaggedToken(draw(surfaces), draw(tags)) for _ in range(n))
    cuts = sorted(set(draw(st.lists(st.integers(0, n), max_size=6))))
    spans = [EntitySpan(a, b) for a, b in zip(cuts[::2], cuts[1::2]) if a < b]
    if doc_id is None:
        doc_id = draw(st.from_regex(r"[A-Za-z0-9_.-]{1,8}", fullmatch=True))
    return TaggedDocument(doc_id, toks, tuple(spans))


@st.composite
def corpora(draw):
    n = draw(st.integers(0, 4))
    return [draw(documents(doc_id=f"doc{i}")) for i in range(n)]


# -- oracles -------------------------------------------------------------------

def _consumable(symbol, category: str, merge: CategoryMergeMap) -> bool:
    if isinstance(symbol, Category):
        return symbol.symbol == category
    if isinstance(symbol, Literal):
        return merge(symbol.text) == category
    return False


def _slot_fits(region, slot, merge) -> bool:
    """Try every way of cutting ``region`` into one piece per slot item."""
    n, m = len(region), len(slot)
    if n < m:
        return False
    for cuts in combinations(range(1, n), m - 1):
        bounds = (0,) + cuts + (n,)
        if all(
            (b - a == 1 or item.repeated)
            and all(_consumable(sym, item.category, merge) for sym in region[a:b])
            for item, a, b in zip(slot, bounds, bounds[1:])
        ):
            return True
    return False


def oracle_matches(pattern: Pattern, symbols, merge: CategoryMergeMap = MERGE):
    """Longest slot region per start position, by exhaustive enumeration."""
    symbols = list(symbols)
    n = len(symbols)
    left, right = list(pattern.left), list(pattern.right)
    best = {}
    for left_start in range(n):
        slot_start = left_start + len(left)
        if symbols[left_start:slot_start] != left:
            continue
        for slot_end in range(slot_start + 1, n + 1):
            if symbols[slot_end:slot_end + len(right)] != right:
                continue
            if _slot_fits(symbols[slot_start:slot_end], pattern.slot, merge):
                best[slot_start] = max(best.get(slot_start, 0), slot_end)
    return sorted(best.items())


def local_pattern(rng: random.Random, stream) -> Pattern | None:
    """A pattern read off ``stream`` at a random position, then perturbed."""
    items = stream.items
    starts = [i for i, it in enumerate(items) if it.category is not None]
    if not starts:
        return None
    p = rng.choice(starts)
    end = p + 1
    while end < len(items) - 1 and items[end].category is not None and rng.random() < 0.6:
        end += 1
    cats = [it.category for it in items[p:end]]
    slot = []
    for cat in cats:
        if slot and slot[-1].category == cat:
            slot[-1] = SlotItem(cat, True)
        else:
            slot.append(SlotItem(cat, rng.random() < 0.3))
    symbols = [it.symbol for it in items]
    left = symbols[max(0, p - rng.randint(1, 3)):p]
    right = symbols[end:end + rng.randint(1, 3)]
    if rng.random() < 0.3:
        side = left if rng.random() < 0.5 else right
        side[rng.randrange(len(side))] = rng.choice(CONTEXT_SYMBOLS)
    if rng.random() < 0.2:
        k = rng.randrange(len(slot))
        slot[k] = SlotItem(slot[k].category, not slot[k].repeated)
    return Pattern(tuple(left), tuple(slot), tuple(right))


def mixed_pattern(rng: random.Random, stream) -> Pattern:
    if rng.random() < 0.5:
        p = local_pattern(rng, stream)
        if p is not None:
            return p
    return random_pattern(rng)


# -- suite-wide records ---------------------------------------------------------

# MR sequence of every bootstrap run made during the session (filled by conftest)
BOOTSTRAP_RUNS: list[list[float]] = []
# acceptance criterion number -> (passed, detail)
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def mr_non_decreasing(values) -> bool:
    return all(a <= b for a, b in zip(values, values[1:]))
