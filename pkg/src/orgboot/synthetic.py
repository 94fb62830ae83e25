"""A small synthetic corpus of telegraphic collaboration reports.

Each document mixes partner sentences (organisation names in recurring
contexts) with distractor sentences that place people, cities, months and
conference names in similar positions.  Most partners are specific to one
document, a few recur across documents.
"""
from __future__ import annotations

import random
from importlib import resources

from .corpus import EntitySpan, TaggedDocument, TaggedToken, parse_corpus, serialize_corpus
from .splitter import SplitSpec

# (surface, tag) pairs; {ORG} marks an entity slot, other braces fill with NNP distractors
TEMPLATES = [
    (4, "We/PRP collaborate/VBP with/IN {ORG} on/IN {TOPIC} ./."),
    (3, "This/DT work/NN is/VBZ funded/VBN by/IN {ORG} ./."),
    (3, "Partners/NNS :/: {ORG} ,/, {ORG} and/CC {ORG} ./."),
    (2, "A/DT contract/NN with/IN {ORG} started/VBD in/IN {MONTH} {YEAR} ./."),
    (2, "Our/PRP$ software/NN is/VBZ used/VBN by/IN {ORG} and/CC {ORG} ./."),
    (2, "{ORG} is/VBZ a/DT partner/NN of/IN the/DT {TOPIC} project/NN ./."),
    (2, "Joint/JJ work/NN with/IN {ORG} ,/, {ORG} and/CC {ORG} on/IN {TOPIC} ./."),
    (3, "The/DT meeting/NN was/VBD held/VBN in/IN {CITY} ./."),
    (3, "We/PRP collaborate/VBP with/IN {PERSON} on/IN {TOPIC} ./."),
    (2, "{PERSON} visited/VBD the/DT team/NN in/IN {MONTH} ./."),
    (2, "Results/NNS were/VBD presented/VBN at/IN {CONF} in/IN {CITY} ./."),
    (2, "Invited/VBN talks/NNS :/: {PERSON} ,/, {PERSON} and/CC {PERSON} ./."),
    (1, "This/DT work/NN is/VBZ supported/VBN by/IN {PERSON} ./."),
]

TOPIC = ["grid/NN computing/NN", "model/NN checking/NN", "image/NN analysis/NN",
         "compilation/NN", "wireless/JJ networks/NNS", "proof/NN assistants/NNS"]
MONTH = ["January/NNP", "March/NNP", "May/NNP", "June/NNP", "September/NNP", "November/NNP"]
YEAR = ["2004/CD", "2005/CD", "2006/CD"]
CITY = ["Paris/NNP", "Nancy/NNP", "Grenoble/NNP", "Boston/NNP", "Kyoto/NNP",
        "Lisbon/NNP", "Montreal/NNP", "Prague/NNP"]
CONF = ["ICALP/NNP", "POPL/NNP", "SIGCOMM/NNP", "CAV/NNP", "ECCV/NNP"]
FIRST = ["Jean", "Marie", "Paul", "Anne", "Pierre", "Claire", "Luc", "Sophie", "Marc", "Julie"]
LAST = ["Martin", "Bernard", "Dubois", "Laurent", "Girard", "Moreau", "Fontaine", "Roux"]

ORG_SHAPES = [
    ["{A}/NNP"],
    ["{A}/NNP", "{B}/NNPS"],
    ["{A}/NNP", "{B}/NNP", "{C}/NNP"],
    ["University/NNP", "of/IN", "{A}/NNP"],
    ["{A}/NNP", "Research/NNP"],
]
SYLLABLES = ["ka", "lo", "mir", "ta", "ve", "dro", "sen", "bra", "qui", "nor",
             "zel", "pha", "tor", "vi", "gan", "rel", "mo", "stu", "lex", "fi"]
ORG_SUFFIX = ["Systems", "Labs", "Networks", "Technologies", "Industries", "Telecom"]


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    for item in text.split():
        surface, _, tag = item.rpartition("/")
        out.append((surface, tag))
    return out


def _word(rng: random.Random, used: set[str]) -> str:
    while True:
        word = "".join(rng.sample(SYLLABLES, rng.choice((2, 3)))).capitalize()
        if word not in used:
            used.add(word)
            return word


def make_org_names(rng: random.Random, n: int) -> list[list[tuple[str, str]]]:
    """``n`` organisation names whose distinctive words are never reused."""
    used: set[str] = set()
    names = []
    for _ in range(n):
        shape = rng.choice(ORG_SHAPES)
        text = " ".join(shape).format(
            A=_word(rng, used), B=rng.choice(ORG_SUFFIX), C=_word(rng, used)
        )
        names.append(_tokens(text))
    return names


def _fill(rng: random.Random, name: str) -> list[tuple[str, str]]:
    if name == "PERSON":
        return [(rng.choice(FIRST), "NNP"), (rng.choice(LAST), "NNP")]
    return _tokens(rng.choice({"TOPIC": TOPIC, "MONTH": MONTH, "YEAR": YEAR,
                               "CITY": CITY, "CONF": CONF}[name]))


def make_document(
    rng: random.Random,
    doc_id: str,
    partners: list[list[tuple[str, str]]],
    n_sentences: int,
) -> TaggedDocument:
    weights = [w for w, _ in TEMPLATES]
    tokens: list[TaggedToken] = []
    spans: list[EntitySpan] = []
    for _ in range(n_sentences):
        _, template = rng.choices(TEMPLATES, weights)[0]
        orgs = iter(rng.sample(partners, template.count("{ORG}")))
        for item in template.split():
            if item.startswith("{"):
                name = item[1:-1]
                if name == "ORG":
                    start = len(tokens)
                    tokens += [TaggedToken(s, t) for s, t in next(orgs)]
                    spans.append(EntitySpan(start, len(tokens)))
                    continue
                tokens += [TaggedToken(s, t) for s, t in _fill(rng, name)]
            else:
                surface, tag = _tokens(item)[0]
                tokens.append(TaggedToken(surface, tag))
    return TaggedDocument(doc_id, tuple(tokens), tuple(spans))


def build_corpus(
    seed: int = 7,
    n_docs: int = 20,
    n_shared: int = 6,
    n_own: int = 8,
    n_sentences: int = 24,
) -> list[TaggedDocument]:
    """Documents sharing ``n_shared`` partners, each with ``n_own`` of its own."""
    rng = random.Random(seed)
    names = make_org_names(rng, n_shared + n_docs * n_own)
    shared, own = names[:n_shared], names[n_shared:]
    docs = []
    for k in range(n_docs):
        partners = rng.sample(shared, 2) + own[k * n_own:(k + 1) * n_own]
        docs.append(make_document(rng, f"report{k + 1:02d}", partners, n_sentences))
    return docs


def corpus_text(seed: int = 7) -> str:
    return serialize_corpus(build_corpus(seed))


def _data(name: str) -> str:
    return resources.files("orgboot").joinpath("data", name).read_text(encoding="utf-8")


def bundled_corpus() -> list[TaggedDocument]:
    """The committed corpus, generated with ``corpus_text(seed=7)``."""
    return parse_corpus(_data("synthetic_corpus.tsv"))


def bundled_split() -> SplitSpec:
    """The committed 4/8/8 split of the bundled corpus (seed 1)."""
    return SplitSpec.from_text(_data("synthetic_split.txt"))
