"""Independent reference implementations used by the tests.

Nothing here imports the package.  Trees are nested tuples whose leaves are
labels; a tanglegram is a pair of such trees over the same label set, with
equal labels matched.  Isomorphism goes through networkx.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import permutations

import networkx as nx
from networkx.algorithms.graph_hashing import weisfeiler_lehman_graph_hash


@lru_cache(maxsize=None)
def wedderburn_etherington(n: int) -> int:
    """Number of unlabelled rooted binary trees with n leaves."""
    if n <= 1:
        return n
    total = 0
    for a in range(1, (n - 1) // 2 + 1):
        total += wedderburn_etherington(a) * wedderburn_etherington(n - a)
    if n % 2 == 0:
        h = wedderburn_etherington(n // 2)
        total += h * (h + 1) // 2
    return total


# ------------------------------------------------------------------ shapes


def shape_string(t) -> str:
    """AHU-style string; equal strings iff isomorphic rooted trees."""
    if not isinstance(t, tuple):
        return "()"
    return "(" + "".join(sorted(shape_string(c) for c in t)) + ")"


@lru_cache(maxsize=None)
def shapes(n: int) -> tuple:
    """One nested-tuple tree per isomorphism class, leaves labelled 0..n-1 left to right."""
    if n == 1:
        return (0,)
    out = {}
    for a in range(1, n):
        for x in shapes(a):
            for y in shapes(n - a):
                t = (x, y)
                out.setdefault(shape_string(t), t)
    return tuple(_label(t) for t in out.values())


def _label(t, counter=None):
    counter = [0] if counter is None else counter
    if not isinstance(t, tuple):
        counter[0] += 1
        return counter[0] - 1
    return tuple(_label(c, counter) for c in t)


def leaves(t) -> list:
    if not isinstance(t, tuple):
        return [t]
    return [x for c in t for x in leaves(c)]


def clusters(t) -> frozenset:
    out = set()

    def walk(s):
        ls = frozenset(leaves(s))
        out.add(ls)
        if isinstance(s, tuple):
            for c in s:
                walk(c)

    walk(t)
    return frozenset(out)


def automorphisms(t) -> list[dict]:
    """Leaf permutations preserving the cluster system, by brute force."""
    ls = leaves(t)
    cl = clusters(t)
    found = []
    for image in permutations(ls):
        f = dict(zip(ls, image))
        if all(frozenset(f[x] for x in c) in cl for c in cl):
            found.append(f)
    return found


def restrict(t, keep):
    """Induced subtree on the leaves in ``keep``; unary vertices vanish."""
    if not isinstance(t, tuple):
        return t if t in keep else None
    kids = [r for r in (restrict(c, keep) for c in t) if r is not None]
    if not kids:
        return None
    if len(kids) == 1:
        return kids[0]
    return tuple(kids)


# ------------------------------------------------------------- tanglegrams


def relabel(t, f):
    if not isinstance(t, tuple):
        return f[t]
    return tuple(relabel(c, f) for c in t)


def tanglegram_graph(left, right) -> nx.Graph:
    g = nx.Graph()

    def add(t, side, name, is_root):
        if isinstance(t, tuple):
            g.add_node(name, kind=f"{side}-{'root' if is_root else 'inner'}")
            for k, c in enumerate(t):
                child = name + (k,)
                add(c, side, child, False)
                g.add_edge(name, child if isinstance(c, tuple) else (side, c))
        else:
            g.add_node((side, t), kind=f"{side}-leaf")

    add(left, "L", ("L", "node"), True)
    add(right, "R", ("R", "node"), True)
    for x in leaves(left):
        g.add_edge(("L", x), ("R", x))
    return g


class IsoClasses:
    """Buckets graphs by WL hash and resolves collisions with an exact test."""

    def __init__(self):
        self._buckets: dict[str, list[tuple[nx.Graph, int]]] = {}
        self.size = 0

    def index(self, g: nx.Graph) -> int:
        h = weisfeiler_lehman_graph_hash(g, node_attr="kind")
        bucket = self._buckets.setdefault(h, [])
        for other, idx in bucket:
            if nx.is_isomorphic(g, other, node_match=lambda a, b: a["kind"] == b["kind"]):
                return idx
        bucket.append((g, self.size))
        self.size += 1
        return self.size - 1


def tanglegrams(n: int, classes: IsoClasses | None = None):
    """(left, right) representatives of every size-n tanglegram class."""
    classes = IsoClasses() if classes is None else classes
    reps = {}
    for left in shapes(n):
        for right in shapes(n):
            for perm in permutations(range(n)):
                r = relabel(right, dict(zip(range(n), perm)))
                idx = classes.index(tanglegram_graph(left, r))
                reps.setdefault(idx, (left, r))
    return list(reps.values())


def card(left, right, x):
    keep = set(leaves(left)) - {x}
    return restrict(left, keep), restrict(right, keep)


def multideck_key(left, right, classes: IsoClasses) -> tuple:
    counts = Counter(
        classes.index(tanglegram_graph(*card(left, right, x))) for x in leaves(left)
    )
    return tuple(sorted(counts.items()))


def is_caterpillar(t) -> bool:
    while isinstance(t, tuple):
        a, b = t
        if isinstance(a, tuple) and isinstance(b, tuple):
            return False
        t = a if isinstance(a, tuple) else b
    return True


def burnside_count(n: int) -> int:
    """Tanglegram classes of size n counted as orbits of matchings, pair by pair."""
    total = 0
    for left in shapes(n):
        auts_l = automorphisms(left)
        for right in shapes(n):
            auts_r = automorphisms(right)
            fixed = 0
            for sigma in permutations(range(n)):
                for a in auts_l:
                    for b in auts_r:
                        if all(b[sigma[x]] == sigma[a[x]] for x in range(n)):
                            fixed += 1
            assert fixed % (len(auts_l) * len(auts_r)) == 0
            total += fixed // (len(auts_l) * len(auts_r))
    return total
