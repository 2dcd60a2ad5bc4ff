"""Isomorph-free generation of trees and tanglegrams of a given size."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

from .tanglegram import Tanglegram, inverse
from .trees import Tree, automorphisms, compose, is_caterpillar, leaf

__all__ = [
    "DEFAULT_CEILING",
    "EnumerationTable",
    "enumerate_trees",
    "enumerate_tanglegrams",
    "enumerate_caterpillar_tanglegrams",
    "matchings_for_pair",
    "enumeration_table",
]

# Largest size enumerated without an explicit override (n! matchings per tree pair).
DEFAULT_CEILING = 7
HARD_CEILING = 8


@lru_cache(maxsize=None)
def _trees(n: int) -> tuple[Tree, ...]:
    if n == 1:
        return (leaf(),)
    found = set()
    for a in range(1, n // 2 + 1):
        for i, t1 in enumerate(_trees(a)):
            rest = _trees(n - a)
            # equal halves: unordered pairs only
            start = i if a == n - a else 0
            for t2 in rest[start:]:
                found.add(compose(t1, t2))
    return tuple(sorted(found))


def enumerate_trees(n: int) -> list[Tree]:
    """All trees with ``n`` leaves, each once, in canonical order."""
    if n < 1:
        raise ValueError("tree size must be at least 1")
    return list(_trees(n))


@lru_cache(maxsize=None)
def matchings_for_pair(left: Tree, right: Tree) -> tuple[tuple[int, ...], ...]:
    """Canonical matchings of ``(left, right)``, one per isomorphism class.

    Permutations are visited in lexicographic order; the first member of an
    unseen orbit ``{b . s . a^-1}`` is the orbit minimum, i.e. the canonical
    matching.
    """
    n = left.size
    left_invs = [inverse(a) for a in automorphisms(left)]
    right_auts = automorphisms(right)
    seen: set[tuple[int, ...]] = set()
    reps = []
    for s in permutations(range(n)):
        if s in seen:
            continue
        reps.append(s)
        for a_inv in left_invs:
            base = [s[a_inv[k]] for k in range(n)]
            for b in right_auts:
                seen.add(tuple(b[x] for x in base))
    return tuple(reps)


def _check_size(n: int, ceiling: int | None) -> None:
    if n < 1:
        raise ValueError("tanglegram size must be at least 1")
    limit = DEFAULT_CEILING if ceiling is None else ceiling
    if n > limit:
        raise ValueError(f"size {n} exceeds the enumeration ceiling {limit}")
    if n > HARD_CEILING:
        raise ValueError(f"size {n} is beyond what exhaustive enumeration supports")


def _pair_tanglegrams(pair: tuple[Tree, Tree]) -> list[Tanglegram]:
    left, right = pair
    return [Tanglegram(left, right, s) for s in matchings_for_pair(left, right)]


def _generate(pairs: list[tuple[Tree, Tree]], workers: int | None) -> list[Tanglegram]:
    if workers and workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            chunks = list(pool.map(_pair_tanglegrams, pairs))
    else:
        chunks = [_pair_tanglegrams(p) for p in pairs]
    out: dict[Tanglegram, None] = {}
    for chunk in chunks:
        for t in chunk:
            out[t] = None
    return sorted(out)


@lru_cache(maxsize=None)
def _tanglegrams(n: int) -> tuple[Tanglegram, ...]:
    trees = _trees(n)
    return tuple(_generate([(a, b) for a in trees for b in trees], None))


def enumerate_tanglegrams(
    n: int, *, ceiling: int | None = None, workers: int | None = None
) -> list[Tanglegram]:
    """All tanglegrams of size ``n`` up to isomorphism, sorted by canonical code."""
    _check_size(n, ceiling)
    if workers and workers > 1:
        trees = _trees(n)
        return _generate([(a, b) for a in trees for b in trees], workers)
    return list(_tanglegrams(n))


@lru_cache(maxsize=None)
def _caterpillar_tanglegrams(n: int) -> tuple[Tanglegram, ...]:
    trees = _trees(n)
    pairs = [(a, b) for a in trees for b in trees if is_caterpillar(a) or is_caterpillar(b)]
    return tuple(_generate(pairs, None))


def enumerate_caterpillar_tanglegrams(n: int, *, ceiling: int | None = None) -> list[Tanglegram]:
    """Tanglegrams of size ``n`` with a caterpillar on at least one side.

    Generated from the qualifying tree pairs only; this is the same list as
    filtering :func:`enumerate_tanglegrams`, without paying for the rest.
    """
    _check_size(n, ceiling)
    return list(_caterpillar_tanglegrams(n))


@dataclass(frozen=True)
class EnumerationTable:
    size: int
    trees: tuple[Tree, ...]
    tanglegrams: tuple[Tanglegram, ...] = field(repr=False)

    @property
    def counts(self) -> tuple[int, int]:
        return len(self.trees), len(self.tanglegrams)


def enumeration_table(n: int, *, ceiling: int | None = None) -> EnumerationTable:
    return EnumerationTable(n, tuple(enumerate_trees(n)), tuple(enumerate_tanglegrams(n, ceiling=ceiling)))
