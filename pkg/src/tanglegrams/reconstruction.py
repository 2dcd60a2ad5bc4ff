"""Reconstruction of tanglegrams from their multidecks.

When one side is a caterpillar the tanglegram is recovered by reading
feature counts off the cards, in the manner of a constructive case
analysis:

* both sides caterpillars: :func:`reconstruct_cat_cat`
* left caterpillar, right strippable but not a caterpillar: :func:`reconstruct_cat_type1`
* left caterpillar, right neither: :func:`reconstruct_cat_type2`

Each procedure decides its case from card counts, singles out one to three
cards whose deleted pair it can place, and lifts every such card back to the
size-``n`` tanglegrams it could have come from.  The lifts are intersected and
the survivors are checked against the full multideck; exactly one must
remain.  Nothing about the hidden parent is used except the two trees, which
the multideck determines on its own.

Conventions for a caterpillar ``C_m`` on a card: ``v'_k`` is the leaf at
canonical index ``k - 1``; the two deepest leaves may be labelled either way,
and features are evaluated under the labelling most favourable to them.
"""

from __future__ import annotations

import enum
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache, partial
from typing import Callable, Iterable, Sequence

from .enumeration import enumerate_caterpillar_tanglegrams, enumerate_tanglegrams
from .tanglegram import Tanglegram, inverse, tanglegram_multideck
from .trees import (
    Multideck,
    Tree,
    TreeType,
    automorphisms,
    caterpillar,
    classify,
    delete_leaf,
    is_caterpillar,
    stripping,
    tree_from_multideck,
)

__all__ = [
    "Method",
    "ReconstructionResult",
    "CardView",
    "InconsistentMultideck",
    "AmbiguousMultideck",
    "UniquenessReport",
    "RoundtripReport",
    "reconstruct_trees",
    "reconstruct_cat_cat",
    "reconstruct_cat_type1",
    "reconstruct_cat_type2",
    "reconstruct",
    "oracle_search",
    "mirror_multideck",
    "verify_multideck_uniqueness",
    "roundtrip_report",
]


class InconsistentMultideck(ValueError):
    """The input is not the multideck of any tanglegram the procedure covers."""


class AmbiguousMultideck(ValueError):
    """Several tanglegrams share the multideck; ``candidates`` lists them."""

    def __init__(self, message: str, candidates: Sequence[Tanglegram] = ()):
        super().__init__(message)
        self.candidates = list(candidates)


class Method(str, enum.Enum):
    CAT_CAT = "CatCat"
    CAT_TYPE1 = "CatType1"
    CAT_TYPE2 = "CatType2"
    ORACLE_SEARCH = "OracleSearch"
    SMALL_CASE_TABLE = "SmallCaseTable"


@dataclass(frozen=True)
class ReconstructionResult:
    tanglegram: Tanglegram
    method: Method
    self_check: bool

    def mirror(self) -> "ReconstructionResult":
        return ReconstructionResult(self.tanglegram.mirror(), self.method, self.self_check)


# ------------------------------------------------------------------ cards


@dataclass(frozen=True)
class CardView:
    """A card seen through the distance-to-root labelling of its left caterpillar.

    ``left_labelings`` holds both admissible labellings; each lists the card's
    left leaf index for ``v'_1 .. v'_m``.
    """

    card: Tanglegram
    multiplicity: int
    left_labelings: tuple[tuple[int, ...], ...] | None = field(default=None)

    @classmethod
    def of(cls, card: Tanglegram, multiplicity: int) -> "CardView":
        labelings = None
        if is_caterpillar(card.left):
            labelings = tuple(_caterpillar_orders(card.size))
        return cls(card, multiplicity, labelings)

    @property
    def m(self) -> int:
        return self.card.size

    def partner(self, k: int) -> int:
        """Right leaf matched to ``v'_k`` (``k <= m - 2``, where the labelling is forced)."""
        return self.card.matching[k - 1]

    def sequences(self, classify_right: Callable[[int], str]) -> set[str]:
        """Classes of the partners of ``v'_m, v'_{m-1}, ..., v'_1`` (deepest first)."""
        tau = self.card.matching
        return {
            "".join(classify_right(tau[lab[k]]) for k in reversed(range(self.m)))
            for lab in self.left_labelings
        }


def _caterpillar_orders(m: int) -> list[tuple[int, ...]]:
    base = list(range(m))
    if m < 2:
        return [tuple(base)]
    swapped = base[:-2] + [base[-1], base[-2]]
    return [tuple(base), tuple(swapped)]


def _views(d: Multideck) -> list[CardView]:
    return [CardView.of(card, mult) for card, mult in d.items()]


def _count(views: Iterable[CardView], pred) -> int:
    return sum(v.multiplicity for v in views if pred(v))


def _argmin(views: list[CardView], key) -> tuple[int, list[CardView]]:
    values = [key(v) for v in views]
    best = min(values)
    return best, [v for v, x in zip(views, values) if x == best]


# ---------------------------------------------------------------- lifting


def _lift(
    card: Tanglegram,
    left: Tree,
    right: Tree,
    left_positions: Iterable[int],
    right_positions: Iterable[int] | None = None,
    accept: Callable[[Sequence[int], int, int], bool] | None = None,
) -> set[Tanglegram]:
    """All ``(left, right, s)`` whose card ``T - v_p u`` equals ``card``, for
    ``p`` in ``left_positions`` and ``u`` in ``right_positions``.

    ``accept(s, p, u)`` may veto a candidate using properties of the parent.
    """
    n = left.size
    if right_positions is None:
        right_positions = range(n)
    right_positions = list(right_positions)
    tau = card.matching
    found: set[Tanglegram] = set()
    card_orbit = {
        tuple(b[tau[a_inv[k]]] for k in range(n - 1))
        for a_inv in (inverse(a) for a in automorphisms(card.left))
        for b in automorphisms(card.right)
    }
    for p in set(left_positions):
        sub_left, lmap = delete_leaf(left, p)
        if sub_left is not card.left:
            continue
        for u in right_positions:
            sub_right, rmap = delete_leaf(right, u)
            if sub_right is not card.right:
                continue
            back = inverse([x for x in rmap if x >= 0])  # card right -> rank among remaining
            remaining = [y for y in range(n) if y != u]
            for t in card_orbit:
                s = [0] * n
                s[p] = u
                for x in range(n):
                    if x != p:
                        s[x] = remaining[back[t[lmap[x]]]]
                if accept is None or accept(s, p, u):
                    found.add(Tanglegram(left, right, s))
    return found


def _select(candidates: set[Tanglegram], d: Multideck) -> Tanglegram:
    survivors = sorted(c for c in candidates if tanglegram_multideck(c) == d)
    if not survivors:
        raise InconsistentMultideck("no tanglegram consistent with the identified cards")
    if len(survivors) > 1:
        raise AmbiguousMultideck(
            f"{len(survivors)} completions agree with the multideck", survivors
        )
    return survivors[0]


def _merge(d: Multideck, *lifts: set[Tanglegram]) -> Tanglegram:
    merged = set(lifts[0])
    for other in lifts[1:]:
        merged &= other
    return _select(merged, d)


def _deepest_positions(n: int, index: int) -> set[int]:
    """Leaf index ``index`` of ``C_n``, widened to both deepest leaves when it is one of them."""
    return {n - 2, n - 1} if index >= n - 2 else {index}


# ------------------------------------------------------------- trees first


def reconstruct_trees(d: Multideck) -> tuple[Tree, Tree]:
    """Recover ``(L, R)`` from the left and right projections of the cards."""
    n = d.parent_size
    if n < 5:
        raise ValueError(f"tree reconstruction needs n >= 5, got {n}")
    lefts: Counter = Counter()
    rights: Counter = Counter()
    for card, mult in d.items():
        lefts[card.left] += mult
        rights[card.right] += mult
    try:
        return (
            tree_from_multideck(Multideck(lefts, n)),
            tree_from_multideck(Multideck(rights, n)),
        )
    except ValueError as exc:
        raise InconsistentMultideck(f"card projections are not tree multidecks: {exc}") from exc


def mirror_multideck(d: Multideck) -> Multideck:
    return Multideck({card.mirror(): mult for card, mult in d.items()}, d.parent_size)


def _require(d: Multideck, left_ok, right_ok, what: str) -> tuple[Tree, Tree]:
    if d.parent_size < 5:
        raise ValueError(f"caterpillar reconstruction needs n >= 5, got {d.parent_size}")
    left, right = reconstruct_trees(d)
    if not (left_ok(left) and right_ok(right)):
        raise ValueError(f"multideck does not describe {what}")
    return left, right


def _finish(t: Tanglegram, d: Multideck, method: Method) -> ReconstructionResult:
    ok = tanglegram_multideck(t) == d
    if not ok:
        raise InconsistentMultideck("reconstruction does not reproduce the input multideck")
    return ReconstructionResult(t, method, ok)


# ------------------------------------------------ caterpillar / caterpillar


def _right_labels(m: int) -> list[tuple[int, ...]]:
    """Both distance-to-root labellings of a right ``C_m``: label (1-based) per leaf index."""
    return [inverse(order) for order in _caterpillar_orders(m)]


def _label_rows(v: CardView) -> list[list[int]]:
    """Right label of the partner of ``v'_1 .. v'_m`` under each of the four labellings."""
    tau = v.card.matching
    rows = []
    for lab in v.left_labelings:
        for rl in _right_labels(v.m):
            rows.append([rl[tau[lab[k]]] + 1 for k in range(v.m)])
    return rows


def _run(row: list[int], step: int, start: int | None = None) -> int:
    first = row[0] if start is None else start
    p = 0
    while p < len(row) and row[p] == first + step * p:
        p += 1
    return p


def _prefix_run(v: CardView) -> int:
    """Longest ``p`` with ``v'_k`` matched to ``u'_k`` for all ``k <= p``."""
    return max(_run(row, 1, 1) for row in _label_rows(v))


def _increasing_run(v: CardView) -> int:
    return max(_run(row, 1) for row in _label_rows(v))


def _decreasing_run(v: CardView) -> int:
    return max(_run(row, -1) for row in _label_rows(v))


def _cherry_run(v: CardView) -> int:
    """Longest ``p`` with ``v'_k`` matched to ``u'_{m+1-k}`` for ``k <= p``."""
    return max(_run(row, -1, v.m) for row in _label_rows(v))


def _in_cherry(v: CardView, k: int) -> bool:
    return v.partner(k) >= v.m - 2


def _collapsed_label(v: CardView, k: int) -> int:
    """Label of the partner of ``v'_k``, with the right cherry read as ``u'_{m-1}``."""
    return min(v.partner(k), v.m - 2) + 1


@lru_cache(maxsize=None)
def _small_case_table(n: int) -> dict[Multideck, tuple[Tanglegram, ...]]:
    """Direct lookup for ``(C_n, C_n, s)`` with ``v_1`` matched into the right cherry."""
    cat = caterpillar(n)
    table: dict[Multideck, list[Tanglegram]] = {}
    for t in enumerate_caterpillar_tanglegrams(n):
        if t.left is cat and t.right is cat and t.matching[0] >= n - 2:
            table.setdefault(tanglegram_multideck(t), []).append(t)
    return {k: tuple(v) for k, v in table.items()}


def _cat_cat_cherry(views: list[CardView], d: Multideck, cat: Tree) -> Tanglegram:
    """``v_1`` matched to the right cherry, ``n >= 6``."""
    n = d.parent_size
    cherry = {n - 2, n - 1}

    def lift(v: CardView, left_positions) -> Tanglegram:
        return _select(_lift(v.card, cat, cat, left_positions, cherry), d)

    not_in_cherry = [v for v in views if not _in_cherry(v, 1)]
    count_not = _count(not_in_cherry, lambda v: True)
    if count_not == 1:
        # v_2 matched below u_{n-2}: the lone card is T - v_1 u_n
        return lift(not_in_cherry[0], {0})
    if count_not != 0:
        raise InconsistentMultideck("v'_1 leaves the cherry on too many cards")

    both = [v for v in views if _in_cherry(v, 1) and _in_cherry(v, 2)]
    count_both = _count(both, lambda v: True)
    if count_both == n:
        # v_k matched to u_{n-k+1} for k <= m; the m shortest runs are T - v_k u_{n-k+1}
        _, shortest = _argmin(views, _cherry_run)
        return lift(shortest[0], {0})
    if count_both == n - 2:
        # T - v_1 and T - v_2 are the cards with v'_2 outside the cherry
        return lift(next(v for v in views if not _in_cherry(v, 2)), {0})
    if count_both == 3:
        # T - v_1, T - v_2, T - v_3 are the cards with v'_1, v'_2 in the cherry
        return lift(both[0], {0})
    if count_both == 1:
        # u_{n-1} matched to some v_k, k > 3: the lone card is T - v_k u_{n-1}
        special = both[0]
        rest = [v for v in views if v is not special]
        options = []
        for v in rest:
            tau = v.card.matching
            other = [x for x in range(v.m) if x != 0 and tau[x] >= v.m - 2]
            if len(other) != 1:
                raise InconsistentMultideck("cherry partner count is off on a card")
            x = other[0] + 1
            options.append((v.multiplicity, {x} if x < v.m - 1 else {v.m - 1, v.m}))
        ks = [k for k in range(4, n + 1) if _k_fits(k, n, options)]
        if not ks:
            raise InconsistentMultideck("no position k explains the cherry partners")
        positions = set()
        for k in ks:
            positions |= _deepest_positions(n, k - 1)
        return lift(special, positions)
    raise InconsistentMultideck(f"unexpected cherry count {count_both}")


def _k_fits(k: int, n: int, options) -> bool:
    """Can ``n - k`` cards read ``k`` and ``k - 1`` cards read ``k - 1``?"""
    only_k = only_prev = either = 0
    for mult, labels in options:
        has_k, has_prev = k in labels, (k - 1) in labels
        if has_k and has_prev:
            either += mult
        elif has_k:
            only_k += mult
        elif has_prev:
            only_prev += mult
        else:
            return False
    return only_k <= n - k and only_prev <= k - 1 and only_k + only_prev + either == n - 1


def reconstruct_cat_cat(d: Multideck) -> ReconstructionResult:
    """Both trees caterpillars."""
    n = d.parent_size
    cat = caterpillar(n) if n >= 1 else None
    _require(d, lambda t: t is cat, lambda t: t is cat, "(C_n, C_n, s)")
    views = _views(d)

    def lift(v: CardView, right_index: int) -> Tanglegram:
        return _select(_lift(v.card, cat, cat, {0}, _deepest_positions(n, right_index)), d)

    in_cherry = _count(views, lambda v: _in_cherry(v, 1))
    if in_cherry >= n - 1:
        if n == 5:
            found = _small_case_table(n).get(d, ())
            if not found:
                raise InconsistentMultideck("not in the n=5 cherry-case table")
            if len(found) > 1:
                raise AmbiguousMultideck(
                    f"{len(found)} cherry-case tanglegrams share this multideck", found
                )
            return _finish(found[0], d, Method.SMALL_CASE_TABLE)
        return _finish(_cat_cat_cherry(views, d, cat), d, Method.CAT_CAT)
    if in_cherry > 3:
        raise InconsistentMultideck(f"{in_cherry} cards put v'_1 in the cherry")

    top = _count(views, lambda v: v.partner(1) == 0)
    if top >= n - 1:
        # v_1 u_1: the m shortest matched prefixes are the cards T - v_k u_k, k <= m
        _, shortest = _argmin(views, _prefix_run)
        return _finish(lift(shortest[0], 0), d, Method.CAT_CAT)
    if top > 2:
        raise InconsistentMultideck(f"{top} cards match v'_1 to u'_1")

    # v_1 u_i with 1 < i < n - 1: read the partners of v'_1
    partners = Counter()
    for v in views:
        partners[_collapsed_label(v, 1)] += v.multiplicity
    labels = sorted(partners)
    if len(labels) == 2:
        a, b = labels
        if b != a + 1:
            raise InconsistentMultideck("two partner labels that are not consecutive")
        i = b
        if partners[a] == i - 1:  # v_2 u_{i+1}
            run = _increasing_run
        elif partners[a] == i:  # v_2 u_{i-1}
            run = _decreasing_run
        else:
            raise InconsistentMultideck("partner multiplicities fit neither j = i + 1 nor j = i - 1")
        _, shortest = _argmin(views, run)
        return _finish(lift(shortest[0], i - 1), d, Method.CAT_CAT)
    if len(labels) == 3:
        a, b, c = labels
        if b == a + 1 and c == b + 1:
            if partners[c] == 1:  # j = i + 2
                i, odd = b, c
            else:  # j = i - 2
                i, odd = c, a
        elif b == a + 1:
            i, odd = b, c
        elif c == b + 1:
            i, odd = c, a
        else:
            raise InconsistentMultideck("no consecutive pair among the partner labels")
        card = next(v for v in views if _collapsed_label(v, 1) == odd)
        return _finish(lift(card, i - 1), d, Method.CAT_CAT)
    raise InconsistentMultideck(f"v'_1 has {len(labels)} distinct partners")


# --------------------------------------------- caterpillar / type 1 and 2


def _first_run(seq: str) -> int:
    p = 1
    while p < len(seq) and seq[p] == seq[0]:
        p += 1
    return p


def _matches(seq: str, head: str, a: int, tail: str, b: int) -> bool:
    """``seq`` starts ``head^a tail^b`` and the next symbol (if any) is not ``tail``."""
    if seq[:a] != head * a or seq[a : a + b] != tail * b or len(seq) < a + b:
        return False
    return a + b == len(seq) or seq[a + b] != tail


def _two_run_case(
    views: list[CardView],
    d: Multideck,
    classes: Callable[[CardView], Callable[[int], str]],
    lift_a: Callable[[CardView, set[int]], set[Tanglegram]],
    lift_b: Callable[[CardView, set[int]], set[Tanglegram]],
    alphabet: str,
    head: str | None,
) -> Tanglegram:
    """Bottom leaves ``v_n .. v_{n-s}`` share a class, then ``v_{n-s-1} .. v_{n-t}`` share the other.

    ``alphabet`` holds the two class symbols; ``head`` fixes the class of the
    bottom run, or ``None`` when only equality of classes is meaningful.
    """
    n = d.parent_size

    def first(v: CardView) -> int:
        best = 0
        for seq in v.sequences(classes(v)):
            if head is None or seq[0] == head:
                best = max(best, _first_run(seq))
        return best

    s, shortest = _argmin(views, first)
    if s == 0 or sum(v.multiplicity for v in shortest) != s + 1:
        raise InconsistentMultideck("bottom run does not shrink on exactly s + 1 cards")
    card_a = shortest[0]
    # with s = 1 the deepest pair of card A is unordered, so t can read two ways
    runs_t = {
        s + _first_run(q[s:])
        for q in card_a.sequences(classes(card_a))
        if len(q) > s and _first_run(q) == s and (head is None or q[0] == head)
    }
    if not runs_t:
        raise InconsistentMultideck("no second run after the bottom run")

    def is_b(v: CardView, t: int) -> bool:
        for seq in v.sequences(classes(v)):
            h = seq[0] if head is None else head
            other = alphabet.replace(h, "")
            if _matches(seq, h, s + 1, other, t - s - 1):
                return True
        return False

    lift_1 = lift_a(card_a, set(range(n - 1 - s, n)))
    candidates: set[Tanglegram] = set()
    for t in sorted(runs_t):
        for card_b in (v for v in views if is_b(v, t)):
            candidates |= lift_1 & lift_b(card_b, set(range(n - t - 1, n - s - 1)))
    if not candidates:
        raise InconsistentMultideck("no card removes a leaf from the second run")
    return _select(candidates, d)


def reconstruct_cat_type1(d: Multideck) -> ReconstructionResult:
    """Left a caterpillar, right strippable with core ``Q`` of size at least 4."""
    n = d.parent_size
    cat, right = _require(
        d, is_caterpillar, lambda t: classify(t) is TreeType.TYPE1, "(C_n, type-1 tree, s)"
    )
    i, core = stripping(right).count, stripping(right).core
    strip = set(range(i))
    in_q = set(range(i, n))
    views = _views(d)

    @lru_cache(maxsize=None)
    def peel(card: Tanglegram) -> int:
        st = stripping(card.right)
        return i - 1 if (st.count == i - 1 and st.core is core) else i

    def classes(v: CardView) -> Callable[[int], str]:
        k = peel(v.card)
        return lambda r: "S" if r < k else "Q"

    def q_removed(v: CardView) -> bool:
        return peel(v.card) == i

    def lift_into(positions_right):
        def go(v: CardView, left_positions) -> set[Tanglegram]:
            return _lift(v.card, cat, right, left_positions, positions_right)

        return go

    def bottom_q(v: CardView) -> int:
        seq = next(iter(v.sequences(classes(v))))
        return seq[:2].count("Q")

    both = _count(views, lambda v: bottom_q(v) == 2)
    one = _count(views, lambda v: bottom_q(v) == 1)
    none = _count(views, lambda v: bottom_q(v) == 0)

    if both >= n - 2:
        t = _two_run_case(views, d, classes, lift_into(in_q), lift_into(strip), "QS", "Q")
        return _finish(t, d, Method.CAT_TYPE1)
    if none >= n - 2:
        t = _two_run_case(views, d, classes, lift_into(strip), lift_into(in_q), "QS", "S")
        return _finish(t, d, Method.CAT_TYPE1)
    if one < n - 2:
        raise InconsistentMultideck("bottom-pair counts match no case")

    # one of v_n, v_{n-1} in Q; call it v_n
    everywhere = set(range(n))
    if both == 1:
        # v_{n-2} in Q: the lone card is T - v_{n-1}, all of Q present
        card_1 = next(v for v in views if bottom_q(v) == 2)
        card_2 = next((v for v in views if q_removed(v)), None)
        if card_2 is None:
            raise InconsistentMultideck("no card with a leaf of Q removed")
        t = _merge(
            d,
            _lift(card_1.card, cat, right, {n - 2, n - 1}, strip),
            _lift(card_2.card, cat, right, everywhere, in_q),
        )
        return _finish(t, d, Method.CAT_TYPE1)
    if both != 0:
        raise InconsistentMultideck("too many cards with both deepest leaves in Q")

    # v_{n-2} strippable: v_{n-1} .. v_{n-t} strippable, v_{n-t-1} in Q
    def s_after_q(v: CardView) -> int:
        best = 0
        for seq in v.sequences(classes(v)):
            if seq[0] == "Q" and len(seq) > 1 and seq[1] == "S":
                best = max(best, _first_run(seq[1:]))
        return best

    runs = {v: s_after_q(v) for v in views}
    present = [r for r in runs.values() if r > 0]
    if not present:
        raise InconsistentMultideck("no card shows v'_{n-1} in Q above strippable leaves")
    t = min(present) + 1
    card_2 = next((v for v in views if runs[v] == t - 1 and not q_removed(v)), None)
    card_1 = next((v for v in views if runs[v] >= t and q_removed(v)), None)
    if card_1 is None or card_2 is None:
        raise InconsistentMultideck("cards required for the strippable run are missing")
    result = _merge(
        d,
        _lift(card_1.card, cat, right, everywhere, in_q),
        _lift(card_2.card, cat, right, set(range(n - t - 1, n)), strip),
    )
    return _finish(result, d, Method.CAT_TYPE1)


def reconstruct_cat_type2(d: Multideck) -> ReconstructionResult:
    """Left a caterpillar, right ``R_1 (+) R_2`` with both parts of size at least 2."""
    n = d.parent_size
    cat, right = _require(
        d, is_caterpillar, lambda t: classify(t) is TreeType.TYPE2, "(C_n, type-2 tree, s)"
    )
    split = right.children[0].size

    def side(r: int) -> int:
        return 0 if r < split else 1

    views = _views(d)

    def classes(v: CardView) -> Callable[[int], str]:
        cut = v.card.right.children[0].size
        return lambda r: "a" if r < cut else "b"

    def same_bottom(v: CardView) -> bool:
        seq = next(iter(v.sequences(classes(v))))
        return seq[0] == seq[1]

    together = _count(views, same_bottom)

    if together >= n - 2:
        # v_n .. v_{n-s} in R_i, v_{n-s-1} .. v_{n-t} in the other part
        def deep_partner(s: Sequence[int], p: int) -> int:
            q = n - 2 if p == n - 1 else n - 1
            return side(s[q])

        def lift_a(v: CardView, left_positions) -> set[Tanglegram]:
            return _lift(
                v.card, cat, right, left_positions,
                accept=lambda s, p, u: side(u) == deep_partner(s, p),
            )

        def lift_b(v: CardView, left_positions) -> set[Tanglegram]:
            return _lift(
                v.card, cat, right, left_positions,
                accept=lambda s, p, u: side(u) != side(s[n - 1]),
            )

        t = _two_run_case(views, d, classes, lift_a, lift_b, "ab", None)
        return _finish(t, d, Method.CAT_TYPE2)
    if together != 1:
        raise InconsistentMultideck(f"{together} cards keep the deepest pair together")

    # v_n in R_i; v_{n-1} .. v_{n-t} in R_{3-i}; v_{n-t-1} in R_i
    card_1 = next(v for v in views if same_bottom(v))
    seq_1 = next(iter(card_1.sequences(classes(card_1))))
    t = _first_run(seq_1)
    run_side = seq_1[0]
    cut_1 = card_1.card.right.children[0].size
    r = cut_1 if run_side == "a" else card_1.m - cut_1

    def odd_then_run(v: CardView) -> list[tuple[str, int]]:
        out = []
        for seq in v.sequences(classes(v)):
            if seq[0] != seq[1]:
                out.append((seq[1], _first_run(seq[1:])))
        return out

    def part_size(v: CardView, label: str) -> int:
        cut = v.card.right.children[0].size
        return cut if label == "a" else v.m - cut

    # card 2 drops a leaf of R_i other than v_n, so the run below it can grow past t
    cards_2 = [
        v for v in views if not same_bottom(v)
        and any(k >= t and part_size(v, lab) == r for lab, k in odd_then_run(v))
    ]
    cards_3 = [
        v for v in views if not same_bottom(v)
        and any(k == t - 1 and part_size(v, lab) == r - 1 for lab, k in odd_then_run(v))
    ]
    if not cards_2 or not cards_3:
        raise InconsistentMultideck("cards required for the mixed bottom pair are missing")
    lift_1 = _lift(card_1.card, cat, right, {n - 2, n - 1})
    candidates: set[Tanglegram] = set()
    for c2 in cards_2:
        lift_2 = lift_1 & _lift(
            c2.card, cat, right, set(range(0, n - t - 1)),
            accept=lambda s, p, u: side(u) != side(s[n - 3]),
        )
        if not lift_2:
            continue
        for c3 in cards_3:
            candidates |= lift_2 & _lift(c3.card, cat, right, set(range(n - t - 1, n)))
    result = _select(candidates, d)
    return _finish(result, d, Method.CAT_TYPE2)


# -------------------------------------------------------------- dispatch


def reconstruct(d: Multideck) -> ReconstructionResult:
    """Reconstruct from a multideck of size ``n >= 5``.

    Caterpillar-sided inputs go through the case analyses (mirrored when only
    the right tree is a caterpillar); anything else falls back to exhaustive
    search.
    """
    n = d.parent_size
    if n < 5:
        raise ValueError(f"reconstruction needs n >= 5, got {n}")
    left, right = reconstruct_trees(d)
    if is_caterpillar(left):
        kind = classify(right)
        if kind is TreeType.TYPE0:
            return reconstruct_cat_cat(d)
        if kind is TreeType.TYPE1:
            return reconstruct_cat_type1(d)
        return reconstruct_cat_type2(d)
    if is_caterpillar(right):
        try:
            return reconstruct(mirror_multideck(d)).mirror()
        except AmbiguousMultideck as exc:
            raise AmbiguousMultideck(str(exc), [t.mirror() for t in exc.candidates]) from None
    matches = oracle_search(d)
    if not matches:
        raise InconsistentMultideck("no tanglegram has this multideck")
    if len(matches) > 1:
        raise AmbiguousMultideck(f"{len(matches)} tanglegrams share this multideck", matches)
    return _finish(matches[0], d, Method.ORACLE_SEARCH)


# ------------------------------------------------------- oracle & checks


@lru_cache(maxsize=None)
def _multideck_index(n: int, ceiling: int | None) -> dict[Multideck, tuple[Tanglegram, ...]]:
    index: dict[Multideck, list[Tanglegram]] = {}
    for t in enumerate_tanglegrams(n, ceiling=ceiling):
        index.setdefault(tanglegram_multideck(t), []).append(t)
    return {k: tuple(v) for k, v in index.items()}


def oracle_search(d: Multideck, *, ceiling: int | None = None) -> list[Tanglegram]:
    """Every tanglegram of size ``d.parent_size`` whose multideck is ``d``."""
    if d.parent_size < 2:
        raise ValueError("multidecks exist only for n >= 2")
    return list(_multideck_index(d.parent_size, ceiling).get(d, ()))


@dataclass
class UniquenessReport:
    n: int
    variant: str
    caterpillar_only: bool
    checked: int
    collisions: list[tuple[Tanglegram, ...]]

    @property
    def ok(self) -> bool:
        return not self.collisions


def verify_multideck_uniqueness(
    n: int,
    caterpillar_only: bool = True,
    *,
    use_decks: bool = False,
    ceiling: int | None = None,
) -> UniquenessReport:
    """Group all size-``n`` tanglegrams by multideck (or deck) and report shared ones.

    With ``caterpillar_only`` only groups containing a tanglegram with a
    caterpillar side are reported; the comparison is still against every
    tanglegram of size ``n``.
    """
    if n < 2:
        raise ValueError("multidecks exist only for n >= 2")
    groups: dict = {}
    everything = enumerate_tanglegrams(n, ceiling=ceiling)
    for t in everything:
        d = tanglegram_multideck(t)
        key = d.support() if use_decks else d
        groups.setdefault(key, []).append(t)
    collisions = []
    for members in groups.values():
        if len(members) < 2:
            continue
        if caterpillar_only and not any(
            is_caterpillar(t.left) or is_caterpillar(t.right) for t in members
        ):
            continue
        collisions.append(tuple(sorted(members)))
    collisions.sort()
    checked = sum(
        1 for t in everything
        if not caterpillar_only or is_caterpillar(t.left) or is_caterpillar(t.right)
    )
    return UniquenessReport(n, "deck" if use_decks else "multideck", caterpillar_only, checked, collisions)


@dataclass
class RoundtripReport:
    n: int
    total: int = 0
    recovered: int = 0
    oracle_agreements: int = 0
    oracle_checked: int = 0
    methods: Counter = field(default_factory=Counter)
    failures: list[tuple[Tanglegram, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.recovered == self.total and self.oracle_agreements == self.oracle_checked


def _roundtrip_one(t: Tanglegram, check_oracle: bool, ceiling: int | None):
    d = tanglegram_multideck(t)
    try:
        res = reconstruct(d)
    except ValueError as exc:
        return t, None, f"{type(exc).__name__}: {exc}", None
    agrees = None
    if check_oracle:
        agrees = oracle_search(d, ceiling=ceiling) == [res.tanglegram]
    return t, res, None, agrees


def roundtrip_report(
    n: int,
    *,
    check_oracle: bool = False,
    ceiling: int | None = None,
    workers: int | None = None,
) -> RoundtripReport:
    """Reconstruct every caterpillar tanglegram of size ``n`` from its own multideck."""
    report = RoundtripReport(n)
    todo = enumerate_caterpillar_tanglegrams(n, ceiling=ceiling)
    job = partial(_roundtrip_one, check_oracle=check_oracle, ceiling=ceiling)
    if workers and workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            outcomes = list(pool.map(job, todo, chunksize=256))
    else:
        outcomes = map(job, todo)
    for t, res, error, agrees in outcomes:
        report.total += 1
        if agrees is not None:
            report.oracle_checked += 1
            report.oracle_agreements += agrees
        if res is None:
            report.failures.append((t, error))
            continue
        report.methods[res.method] += 1
        if res.tanglegram == t and res.self_check:
            report.recovered += 1
        else:
            report.failures.append((t, f"returned {res.tanglegram!r}"))
    return report
