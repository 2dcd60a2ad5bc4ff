"""
Do plain decks suffice?
=======================

Drop the multiplicities and count how many tanglegrams still share a deck.
This is data, not a claim: the sizes reachable by exhaustive search are small.
"""

from tanglegrams.reconstruction import verify_multideck_uniqueness

for n in range(4, 7):
    multi = verify_multideck_uniqueness(n, caterpillar_only=False)
    plain = verify_multideck_uniqueness(n, caterpillar_only=False, use_decks=True)
    print(f"n={n}: {multi.checked} tanglegrams, "
          f"{len(multi.collisions)} shared multidecks, {len(plain.collisions)} shared decks")
