"""Seeded L/A/B document splits.

The permutation is a Fisher-Yates shuffle driven by SplitMix64, so a given
seed yields the same split in any language:

    state += 0x9E3779B97F4A7C15
    z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)                       (all arithmetic mod 2**64)

For i = n-1 down to 1, j is drawn uniformly from [0, i] by rejection:
draw x until x < 2**64 - (2**64 mod (i+1)), then j = x mod (i+1); swap
items i and j.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound)."""
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next()
            if x < limit:
                return x % bound


def permute(items: Sequence, seed: int) -> list:
    out = list(items)
    rng = SplitMix64(seed)
    for i in range(len(out) - 1, 0, -1):
        j = rng.below(i + 1)
        out[i], out[j] = out[j], out[i]
    return out


@dataclass(frozen=True)
class SplitSpec:
    L: tuple[str, ...]
    A: tuple[str, ...]
    B: tuple[str, ...]
    seed: int

    def __post_init__(self):
        ids = self.L + self.A + self.B
        if len(set(ids)) != len(ids):
            raise ValueError("L, A and B must be pairwise disjoint")

    def subset(self, name: str) -> tuple[str, ...]:
        """Ids of one subset; ``"L+A"``-style names concatenate subsets."""
        out: tuple[str, ...] = ()
        for part in name.split("+"):
            if part not in ("L", "A", "B"):
                raise ValueError(f"unknown subset {part!r}")
            out += getattr(self, part)
        return out

    def to_text(self) -> str:
        return "".join(
            f"{name}:{''.join(' ' + i for i in ids)}\n"
            for name, ids in (("L", self.L), ("A", self.A), ("B", self.B))
        ) + f"seed: {self.seed}\n"

    @classmethod
    def from_text(cls, text: str) -> SplitSpec:
        fields: dict[str, str] = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            key, sep, value = line.partition(":")
            if not sep or key.strip() not in ("L", "A", "B", "seed"):
                raise ValueError(f"line {lineno}: expected 'L:', 'A:', 'B:' or 'seed:'")
            fields[key.strip()] = value
        missing = {"L", "A", "B", "seed"} - fields.keys()
        if missing:
            raise ValueError(f"split file lacks {', '.join(sorted(missing))}")
        return cls(
            tuple(fields["L"].split()),
            tuple(fields["A"].split()),
            tuple(fields["B"].split()),
            int(fields["seed"]),
        )


def make_split(doc_ids: Sequence[str], sizes: tuple[int, int, int], seed: int) -> SplitSpec:
    n_l, n_a, n_b = sizes
    if min(sizes) < 0 or n_l + n_a + n_b != len(doc_ids):
        raise ValueError(f"sizes {sizes} do not partition {len(doc_ids)} documents")
    order = permute(doc_ids, seed)
    return SplitSpec(
        tuple(order[:n_l]), tuple(order[n_l:n_l + n_a]), tuple(order[n_l + n_a:]), seed
    )
