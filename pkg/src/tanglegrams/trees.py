"""Unlabeled rooted binary trees in canonical form.

Every :class:`Tree` is interned: two structurally isomorphic trees are the
same Python object, so ``==`` and ``hash`` are exact and cheap.  The two
children of an internal node are ordered by the total order on
:attr:`Tree.key` (size first, then child keys), which means the smaller
maximal pending subtree always comes first.

Leaves are indexed ``0..n-1`` left to right in the canonical form.  For a
caterpillar ``C_n`` this makes leaf ``k`` the leaf at distance ``k + 1`` from
the root, with the two deepest leaves at indices ``n - 2`` and ``n - 1``.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "Tree",
    "Stripping",
    "TreeType",
    "Multideck",
    "TreeMultideck",
    "leaf",
    "compose",
    "caterpillar",
    "is_caterpillar",
    "stripping",
    "classify",
    "maximal_pending_subtrees",
    "induced_subtree",
    "induced_subtree_map",
    "delete_leaf",
    "automorphisms",
    "leaf_depths",
    "tree_multideck",
    "tree_deck",
    "tree_from_multideck",
    "strippable_leaf_labeling",
    "parse_newick",
    "parse_newick_positions",
    "to_newick",
]


class Tree:
    """An immutable, interned, canonically ordered rooted binary tree."""

    __slots__ = ("children", "size", "key", "_hash", "__weakref__")

    _interned: dict = {}

    children: tuple["Tree", "Tree"] | tuple[()]
    size: int
    key: tuple

    def __new__(cls, *args, **kwargs):  # pragma: no cover - guarded constructor
        raise TypeError("use leaf() and compose() to build trees")

    @classmethod
    def _intern(cls, children: tuple) -> "Tree":
        if children:
            a, b = children
            if b.key < a.key:
                a, b = b, a
            key = (a.size + b.size, a.key, b.key)
            children = (a, b)
        else:
            key = (1,)
        found = cls._interned.get(key)
        if found is not None:
            return found
        obj = object.__new__(cls)
        obj.children = children
        obj.size = key[0]
        obj.key = key
        obj._hash = hash(key)
        cls._interned[key] = obj
        return obj

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def __eq__(self, other):
        if not isinstance(other, Tree):
            return NotImplemented
        return self is other or self.key == other.key

    def __lt__(self, other: "Tree") -> bool:
        return self.key < other.key

    def __le__(self, other: "Tree") -> bool:
        return self.key <= other.key

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        return (parse_newick, (to_newick(self),))

    def __repr__(self) -> str:
        return f"Tree({to_newick(self)})"


@dataclass(frozen=True)
class Stripping:
    """``tree == (C_1 +)^count core`` with ``core`` non-strippable."""

    count: int
    core: Tree

    def recompose(self) -> Tree:
        t = self.core
        for _ in range(self.count):
            t = compose(leaf(), t)
        return t


class TreeType(enum.IntEnum):
    TYPE0 = 0  # caterpillar
    TYPE1 = 1  # strippable, not a caterpillar
    TYPE2 = 2  # neither


class Multideck:
    """Multiset of size ``parent_size - 1`` cards with positive multiplicities.

    Cards are canonical values (``Tree`` or ``Tanglegram``), so the mapping
    is keyed by canonical code.  Equality and hashing ignore insertion order.
    """

    __slots__ = ("parent_size", "_items", "_hash")

    def __init__(self, entries, parent_size: int):
        counts = Counter()
        items = entries.items() if hasattr(entries, "items") else entries
        for card, mult in items:
            if mult < 1:
                raise ValueError(f"multiplicity must be positive, got {mult}")
            counts[card] += mult
        for card in counts:
            if card.size != parent_size - 1:
                raise ValueError(
                    f"card of size {card.size} in a multideck of parent size {parent_size}"
                )
        if sum(counts.values()) != parent_size:
            raise ValueError(
                f"multiplicities sum to {sum(counts.values())}, expected {parent_size}"
            )
        self.parent_size = parent_size
        self._items = tuple(sorted(counts.items()))
        self._hash = hash((parent_size, self._items))

    @classmethod
    def from_cards(cls, cards: Iterable, parent_size: int) -> "Multideck":
        return cls(Counter(cards), parent_size)

    def items(self):
        return self._items

    def cards(self) -> list:
        """Distinct cards in canonical order."""
        return [c for c, _ in self._items]

    def support(self) -> frozenset:
        return frozenset(c for c, _ in self._items)

    def __getitem__(self, card) -> int:
        for c, m in self._items:
            if c == card:
                return m
        raise KeyError(card)

    def get(self, card, default: int = 0) -> int:
        try:
            return self[card]
        except KeyError:
            return default

    def __contains__(self, card) -> bool:
        return any(c == card for c, _ in self._items)

    def __iter__(self):
        return iter(self.cards())

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other):
        if not isinstance(other, Multideck):
            return NotImplemented
        return self.parent_size == other.parent_size and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{c!r}: {m}" for c, m in self._items)
        return f"Multideck(n={self.parent_size}, {{{body}}})"


# Kept as distinct names to mirror the two kinds of card.
TreeMultideck = Multideck


# ---------------------------------------------------------------- building


def leaf() -> Tree:
    return Tree._intern(())


def compose(t1: Tree, t2: Tree) -> Tree:
    """``t1 (+) t2``: join both roots under a new root.  Commutative."""
    return Tree._intern((t1, t2))


@lru_cache(maxsize=None)
def caterpillar(n: int) -> Tree:
    if n < 1:
        raise ValueError("caterpillar size must be at least 1")
    t = leaf()
    for _ in range(n - 1):
        t = compose(leaf(), t)
    return t


def is_caterpillar(t: Tree) -> bool:
    return t is caterpillar(t.size)


@lru_cache(maxsize=None)
def stripping(t: Tree) -> Stripping:
    count = 0
    while t.size >= 2 and t.children[0].is_leaf:
        count += 1
        t = t.children[1]
    return Stripping(count, t)


def classify(t: Tree) -> TreeType:
    if is_caterpillar(t):
        return TreeType.TYPE0
    if stripping(t).count > 0:
        return TreeType.TYPE1
    return TreeType.TYPE2


def maximal_pending_subtrees(t: Tree) -> tuple[Tree, Tree]:
    """Return ``(T1, T2)`` with ``T1 (+) T2 == t`` and ``|T1| <= |T2|``."""
    if t.is_leaf:
        raise ValueError("a single leaf has no maximal pending subtrees")
    return t.children


# -------------------------------------------------------- leaf-level access


@lru_cache(maxsize=None)
def leaf_depths(t: Tree) -> tuple[int, ...]:
    """Root distance of each leaf, by canonical leaf index."""
    if t.is_leaf:
        return (0,)
    a, b = t.children
    return tuple(d + 1 for d in leaf_depths(a) + leaf_depths(b))


def _induce(t: Tree, offset: int, keep) -> tuple[Tree | None, list[int]]:
    if t.is_leaf:
        return (t, [offset]) if offset in keep else (None, [])
    a, b = t.children
    ta, la = _induce(a, offset, keep)
    tb, lb = _induce(b, offset + a.size, keep)
    if ta is None:
        return tb, lb
    if tb is None:
        return ta, la
    if tb.key < ta.key:
        ta, tb, la, lb = tb, ta, lb, la
    return compose(ta, tb), la + lb


def induced_subtree_map(t: Tree, keep: Iterable[int]) -> tuple[Tree, dict[int, int]]:
    """Induced tree ``t[keep]`` plus the map old leaf index -> new leaf index."""
    keep = set(keep)
    if not keep:
        raise ValueError("cannot induce a tree on an empty leaf set")
    bad = [k for k in keep if not 0 <= k < t.size]
    if bad:
        raise ValueError(f"leaf indices out of range for size {t.size}: {sorted(bad)}")
    sub, order = _induce(t, 0, keep)
    return sub, {old: new for new, old in enumerate(order)}


def induced_subtree(t: Tree, keep: Iterable[int]) -> Tree:
    return induced_subtree_map(t, keep)[0]


@lru_cache(maxsize=None)
def delete_leaf(t: Tree, index: int) -> tuple[Tree, tuple[int, ...]]:
    """Remove one leaf; the map sends each old index to its new one (-1 for the removed leaf)."""
    if t.size < 2:
        raise ValueError("cannot delete the only leaf")
    sub, mapping = induced_subtree_map(t, (k for k in range(t.size) if k != index))
    return sub, tuple(mapping.get(k, -1) for k in range(t.size))


@lru_cache(maxsize=None)
def automorphisms(t: Tree) -> tuple[tuple[int, ...], ...]:
    """Leaf permutations induced by root-preserving automorphisms of ``t``.

    Each permutation ``p`` sends leaf ``k`` to leaf ``p[k]``; the identity
    comes first.
    """
    if t.is_leaf:
        return ((0,),)
    a, b = t.children
    s = a.size
    auts_a, auts_b = automorphisms(a), automorphisms(b)
    out = [x + tuple(s + y for y in q) for x in auts_a for q in auts_b]
    if a is b:
        out += [tuple(s + y for y in x) + q for x in auts_a for q in auts_b]
    return tuple(out)


# ------------------------------------------------------------------- decks


@lru_cache(maxsize=None)
def tree_multideck(t: Tree) -> Multideck:
    if t.size < 2:
        raise ValueError("multideck needs a tree with at least 2 leaves")
    return Multideck.from_cards((delete_leaf(t, k)[0] for k in range(t.size)), t.size)


def tree_deck(t: Tree) -> frozenset:
    return tree_multideck(t).support()


@lru_cache(maxsize=None)
def _trees_by_multideck(n: int) -> dict[Multideck, list[Tree]]:
    from .enumeration import enumerate_trees

    table: dict[Multideck, list[Tree]] = {}
    for t in enumerate_trees(n):
        table.setdefault(tree_multideck(t), []).append(t)
    return table


def tree_from_multideck(d: Multideck) -> Tree:
    """Find the unique tree whose multideck is ``d`` by exhaustive search."""
    n = d.parent_size
    if n < 5:
        raise ValueError(f"trees are only multideck-reconstructable for n >= 5, got {n}")
    for card in d.cards():
        if not isinstance(card, Tree):
            raise TypeError(f"expected tree cards, got {type(card).__name__}")
    found = _trees_by_multideck(n).get(d, [])
    if not found:
        raise ValueError("no tree has this multideck")
    if len(found) > 1:
        raise RuntimeError(f"{len(found)} trees share a multideck at n={n}")
    return found[0]


def strippable_leaf_labeling(t: Tree) -> list[int]:
    """Leaf indices of ``v_1, v_2, ...`` ordered by distance to the root.

    For a caterpillar all ``n`` leaves are labelled; of the two deepest
    leaves the smaller index becomes ``v_{n-1}``.
    """
    if is_caterpillar(t):
        return list(range(t.size))
    count = stripping(t).count
    if count == 0:
        raise ValueError("tree is neither strippable nor a caterpillar")
    # the stripped C_1 always sorts first, so strippable leaves lead the order
    return list(range(count))


# ------------------------------------------------------------------ newick


def _parse_nested(text: str, pos: int = 0):
    """Parse nested parentheses into (structure, next position); leaves are label strings."""
    while pos < len(text) and text[pos].isspace():
        pos += 1
    if pos >= len(text):
        raise ValueError("unexpected end of newick string")
    if text[pos] == "(":
        left, pos = _parse_nested(text, pos + 1)
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text) or text[pos] != ",":
            raise ValueError(f"expected ',' at position {pos} in {text!r}")
        right, pos = _parse_nested(text, pos + 1)
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text) or text[pos] != ")":
            raise ValueError(f"expected ')' at position {pos} in {text!r} (binary trees only)")
        return (left, right), pos + 1
    start = pos
    while pos < len(text) and text[pos] not in "(),;" and not text[pos].isspace():
        pos += 1
    label = text[start:pos]
    if not label:
        raise ValueError(f"empty leaf at position {start} in {text!r}")
    return label, pos


def _canonicalize_nested(node) -> tuple[Tree, list[int]]:
    if isinstance(node, int):
        return leaf(), [node]
    ta, la = _canonicalize_nested(node[0])
    tb, lb = _canonicalize_nested(node[1])
    if tb.key < ta.key:
        ta, tb, la, lb = tb, ta, lb, la
    return compose(ta, tb), la + lb


def parse_newick_positions(text: str) -> tuple[Tree, list[int], list[str]]:
    """Parse ``text`` into the canonical tree, the written position of each
    canonical leaf, and the leaf labels in written order."""
    text = text.strip().rstrip(";").strip()
    node, pos = _parse_nested(text)
    if text[pos:].strip():
        raise ValueError(f"trailing characters in newick string: {text[pos:]!r}")
    written: list[str] = []

    def number(x):
        if isinstance(x, str):
            written.append(x)
            return len(written) - 1
        return (number(x[0]), number(x[1]))

    tree, positions = _canonicalize_nested(number(node))
    return tree, positions, written


def parse_newick(text: str) -> Tree:
    """Parse a binary newick string (any child order, any leaf labels)."""
    return parse_newick_positions(text)[0]


def to_newick(t: Tree, labels: Sequence[str] | None = None) -> str:
    """Serialize in canonical child order; leaves are ``*`` unless labels are given."""
    it = iter(labels) if labels is not None else None

    def rec(x: Tree) -> str:
        if x.is_leaf:
            return str(next(it)) if it is not None else "*"
        a, b = x.children
        return f"({rec(a)},{rec(b)})"

    return rec(t)
