"""
Trees, strippings and the three types
=====================================

Build a few rooted binary trees, peel off their single leaves, and sort
them into types.
"""

from tanglegrams import caterpillar, classify, compose, leaf, stripping, to_newick, tree_multideck
from tanglegrams.enumeration import enumerate_trees

# compose() joins two trees under a new root; the result is canonical, so
# argument order does not matter
cherry = compose(leaf(), leaf())
print(to_newick(compose(cherry, caterpillar(3))), to_newick(compose(caterpillar(3), cherry)))

# the three trees on five leaves: one of each type
for t in enumerate_trees(5):
    s = stripping(t)
    print(f"{to_newick(t):24} type={classify(t).name}  stripped={s.count}  core={to_newick(s.core)}")

# every card of a caterpillar is the next smaller caterpillar
print(tree_multideck(caterpillar(6)))

# counts of trees per size
print([len(enumerate_trees(n)) for n in range(1, 11)])
