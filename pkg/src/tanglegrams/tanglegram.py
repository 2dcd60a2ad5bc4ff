"""Tanglegrams: two trees plus a perfect matching of their leaves.

The matching is stored as a permutation ``matching[i] = j`` meaning left
leaf ``i`` is matched to right leaf ``j`` (canonical leaf indices of each
tree).  Relabelling by tree automorphisms ``a`` of the left and ``b`` of the
right tree turns ``matching`` into ``b . matching . a^-1``; the canonical
matching is the lexicographically smallest permutation in that orbit.
Left and right are never exchanged.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .trees import Multideck, Tree, automorphisms, delete_leaf, induced_subtree_map

__all__ = [
    "Tanglegram",
    "TanglegramMultideck",
    "make_tanglegram",
    "canonical_code",
    "canonical_matching",
    "relabel",
    "induced_subtanglegram",
    "delete_pair",
    "tanglegram_multideck",
    "deck",
    "inverse",
]

TanglegramMultideck = Multideck


def inverse(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


@lru_cache(maxsize=1 << 18)
def canonical_matching(left: Tree, right: Tree, matching: tuple[int, ...]) -> tuple[int, ...]:
    best = None
    n = len(matching)
    right_auts = automorphisms(right)
    for a in automorphisms(left):
        a_inv = inverse(a)
        base = [matching[a_inv[k]] for k in range(n)]
        for b in right_auts:
            cand = tuple(b[x] for x in base)
            if best is None or cand < best:
                best = cand
    return best


class Tanglegram:
    """Canonical tanglegram ``(left, right, matching)``.

    The constructor validates its input and stores the canonical matching, so
    two instances compare equal exactly when the tanglegrams are isomorphic.
    """

    __slots__ = ("left", "right", "matching", "_code", "_hash")

    def __init__(self, left: Tree, right: Tree, matching: Iterable[int]):
        matching = tuple(int(x) for x in matching)
        if left.size != right.size:
            raise ValueError(f"tree sizes differ: {left.size} vs {right.size}")
        if len(matching) != left.size:
            raise ValueError(f"matching has length {len(matching)}, expected {left.size}")
        if sorted(matching) != list(range(left.size)):
            raise ValueError(f"matching {matching} is not a bijection")
        self.left = left
        self.right = right
        self.matching = canonical_matching(left, right, matching)
        self._code = (left.key, right.key, self.matching)
        self._hash = hash(self._code)

    @property
    def size(self) -> int:
        return self.left.size

    @property
    def code(self) -> tuple:
        return self._code

    def mirror(self) -> "Tanglegram":
        """Swap the two sides; not an isomorphism, a different tanglegram in general."""
        return Tanglegram(self.right, self.left, inverse(self.matching))

    def __eq__(self, other):
        if not isinstance(other, Tanglegram):
            return NotImplemented
        return self._code == other._code

    def __lt__(self, other: "Tanglegram") -> bool:
        return self._code < other._code

    def __le__(self, other: "Tanglegram") -> bool:
        return self._code <= other._code

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        return (Tanglegram, (self.left, self.right, self.matching))

    def __repr__(self) -> str:
        from .textio import format_tanglegram

        return f"Tanglegram({format_tanglegram(self)})"


def make_tanglegram(left: Tree, right: Tree, matching: Iterable[int]) -> Tanglegram:
    return Tanglegram(left, right, matching)


def canonical_code(t: Tanglegram) -> tuple:
    return t.code


def relabel(t: Tanglegram, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """The (generally non-canonical) matching seen after relabelling by automorphisms ``a``, ``b``."""
    a_inv = inverse(a)
    return tuple(b[t.matching[a_inv[k]]] for k in range(t.size))


def induced_subtanglegram(t: Tanglegram, keep: Iterable[int]) -> Tanglegram:
    """Subtanglegram induced by the matching edges of the left leaves in ``keep``.

    Edges are named by their left endpoint: edge ``i`` joins left leaf ``i``
    and right leaf ``t.matching[i]``.
    """
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("cannot induce a tanglegram on an empty edge set")
    left, lmap = induced_subtree_map(t.left, keep)
    right, rmap = induced_subtree_map(t.right, [t.matching[i] for i in keep])
    sub = [0] * len(keep)
    for i in keep:
        sub[lmap[i]] = rmap[t.matching[i]]
    return Tanglegram(left, right, sub)


def delete_pair(t: Tanglegram, i: int) -> Tanglegram:
    """``T - vu`` for the edge at left leaf ``i``."""
    left, lmap = delete_leaf(t.left, i)
    right, rmap = delete_leaf(t.right, t.matching[i])
    sub = [0] * (t.size - 1)
    for k in range(t.size):
        if k != i:
            sub[lmap[k]] = rmap[t.matching[k]]
    return Tanglegram(left, right, sub)


@lru_cache(maxsize=1 << 17)
def tanglegram_multideck(t: Tanglegram) -> Multideck:
    if t.size < 2:
        raise ValueError("multideck needs a tanglegram with at least 2 leaves")
    return Multideck.from_cards((delete_pair(t, i) for i in range(t.size)), t.size)


def deck(t: Tanglegram) -> frozenset:
    return tanglegram_multideck(t).support()
