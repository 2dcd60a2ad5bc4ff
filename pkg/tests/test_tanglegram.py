import pytest
from hypothesis import given
from hypothesis import strategies as st

from tanglegrams.enumeration import enumerate_tanglegrams, enumerate_trees
from tanglegrams.tanglegram import (
    Tanglegram,
    deck,
    delete_pair,
    induced_subtanglegram,
    inverse,
    make_tanglegram,
    relabel,
    tanglegram_multideck,
)
from tanglegrams.textio import parse_tanglegram
from tanglegrams.trees import automorphisms, caterpillar, compose, leaf, tree_multideck

C2 = caterpillar(2)

SAMPLE = "((1,(2,3)),(4,5)) | (1,(2,(5,(3,4)))) | id"


def tanglegrams_up_to(n):
    return st.integers(2, n).flatmap(lambda k: st.sampled_from(enumerate_tanglegrams(k)))


def test_size_one_and_cherry():
    one = make_tanglegram(leaf(), leaf(), [0])
    assert one.size == 1 and one.matching == (0,)
    assert make_tanglegram(C2, C2, [0, 1]) == make_tanglegram(C2, C2, [1, 0])


def test_validation():
    with pytest.raises(ValueError):
        Tanglegram(C2, caterpillar(3), [0, 1])
    with pytest.raises(ValueError):
        Tanglegram(C2, C2, [0, 0])
    with pytest.raises(ValueError):
        Tanglegram(C2, C2, [0])


def test_two_size_three_classes():
    c3 = caterpillar(3)
    from itertools import permutations

    codes = {Tanglegram(c3, c3, p).code for p in permutations(range(3))}
    assert len(codes) == 2


def test_sides_are_not_interchangeable():
    a = caterpillar(4)
    b = compose(C2, C2)
    t = Tanglegram(a, b, [0, 1, 2, 3])
    assert t.mirror() != t
    assert t.mirror().mirror() == t


def test_size_four_codes_distinct():
    codes = [t.code for t in enumerate_tanglegrams(4)]
    assert len(codes) == len(set(codes)) == 13


@given(tanglegrams_up_to(6), st.data())
def test_code_invariant_under_automorphisms(t, data):
    a = data.draw(st.sampled_from(automorphisms(t.left)))
    b = data.draw(st.sampled_from(automorphisms(t.right)))
    assert Tanglegram(t.left, t.right, relabel(t, a, b)) == t


@given(tanglegrams_up_to(6))
def test_canonical_is_idempotent(t):
    again = Tanglegram(t.left, t.right, t.matching)
    assert again.code == t.code and again.matching == t.matching


def test_induced_subtanglegram_edges():
    t = parse_tanglegram(SAMPLE)
    assert induced_subtanglegram(t, range(5)) == t
    assert induced_subtanglegram(t, [2]) == make_tanglegram(leaf(), leaf(), [0])
    with pytest.raises(ValueError):
        induced_subtanglegram(t, [])


@given(tanglegrams_up_to(6), st.data())
def test_delete_pair_is_induced_on_the_rest(t, data):
    i = data.draw(st.integers(0, t.size - 1))
    rest = [k for k in range(t.size) if k != i]
    card = delete_pair(t, i)
    assert card == induced_subtanglegram(t, rest)
    assert card.size == t.size - 1


def test_sample_multideck():
    t = parse_tanglegram(SAMPLE)
    d = tanglegram_multideck(t)
    expected = {
        parse_tanglegram("((1,2),(3,4)) | (1,(4,(2,3))) | id"): 2,
        parse_tanglegram("((1,2),(3,4)) | (1,(2,(3,4))) | id"): 1,
        parse_tanglegram("(4,(1,(2,3))) | (1,(2,(3,4))) | id"): 2,
    }
    assert dict(d.items()) == expected
    assert len(deck(t)) == 3


def test_size_two_deck():
    t = make_tanglegram(C2, C2, [0, 1])
    assert dict(tanglegram_multideck(t).items()) == {make_tanglegram(leaf(), leaf(), [0]): 2}
    assert len(deck(t)) == 1
    with pytest.raises(ValueError):
        tanglegram_multideck(make_tanglegram(leaf(), leaf(), [0]))


def test_deck_never_larger_than_size_five():
    for t in enumerate_tanglegrams(5):
        assert len(deck(t)) <= 5


@given(tanglegrams_up_to(6))
def test_cards_project_to_tree_cards(t):
    d = tanglegram_multideck(t)
    assert sum(m for _, m in d.items()) == t.size
    left_cards = tree_multideck(t.left).support()
    right_cards = tree_multideck(t.right).support()
    for card in d.cards():
        assert card.left in left_cards and card.right in right_cards
        assert Tanglegram(card.left, card.right, card.matching) == card


def test_inverse():
    p = (2, 0, 3, 1)
    assert inverse(inverse(p)) == p
    assert [p[x] for x in inverse(p)] == [0, 1, 2, 3]


def test_every_tree_pair_reachable():
    pairs = {(t.left, t.right) for t in enumerate_tanglegrams(5)}
    trees = enumerate_trees(5)
    assert pairs == {(a, b) for a in trees for b in trees}
