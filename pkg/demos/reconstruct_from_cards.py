"""
Reconstruction from the multideck
=================================

Hand the reconstructor only the cards and check what comes back.
"""

from collections import Counter

from tanglegrams import (
    AmbiguousMultideck,
    format_tanglegram,
    reconstruct,
    tanglegram_multideck,
)
from tanglegrams.enumeration import enumerate_caterpillar_tanglegrams
from tanglegrams.reconstruction import verify_multideck_uniqueness

# every caterpillar tanglegram on six leaves comes back from its cards
methods = Counter()
for t in enumerate_caterpillar_tanglegrams(6):
    res = reconstruct(tanglegram_multideck(t))
    assert res.tanglegram == t
    methods[res.method.value] += 1
print(dict(methods))

# on five leaves three pairs of caterpillar tanglegrams share their cards
report = verify_multideck_uniqueness(5, caterpillar_only=True)
for a, b in report.collisions:
    print(format_tanglegram(a, "labels"), "  vs  ", format_tanglegram(b, "labels"))
    try:
        reconstruct(tanglegram_multideck(a))
    except AmbiguousMultideck as exc:
        print("  ->", exc)
