"""Rooted binary trees, tanglegrams, their (multi)decks, and reconstruction."""

from .enumeration import (
    EnumerationTable,
    enumerate_caterpillar_tanglegrams,
    enumerate_tanglegrams,
    enumerate_trees,
    enumeration_table,
)
from .reconstruction import (
    AmbiguousMultideck,
    InconsistentMultideck,
    Method,
    ReconstructionResult,
    oracle_search,
    reconstruct,
    reconstruct_cat_cat,
    reconstruct_cat_type1,
    reconstruct_cat_type2,
    reconstruct_trees,
    roundtrip_report,
    verify_multideck_uniqueness,
)
from .tanglegram import (
    Tanglegram,
    TanglegramMultideck,
    canonical_code,
    deck,
    delete_pair,
    induced_subtanglegram,
    make_tanglegram,
    tanglegram_multideck,
)
from .textio import (
    ParseError,
    format_multideck,
    format_tanglegram,
    parse_multideck,
    parse_tanglegram,
)
from .trees import (
    Multideck,
    Stripping,
    Tree,
    TreeMultideck,
    TreeType,
    caterpillar,
    classify,
    compose,
    induced_subtree,
    is_caterpillar,
    leaf,
    maximal_pending_subtrees,
    parse_newick,
    stripping,
    strippable_leaf_labeling,
    to_newick,
    tree_deck,
    tree_from_multideck,
    tree_multideck,
)

__version__ = "0.1.0"
