import pytest

from tanglegrams.enumeration import enumerate_tanglegrams
from tanglegrams.tanglegram import tanglegram_multideck
from tanglegrams.textio import (
    ParseError,
    format_multideck,
    format_tanglegram,
    parse_multideck,
    parse_tanglegram,
)


@pytest.mark.parametrize("n", range(1, 7))
def test_round_trip_both_formats(n):
    for t in enumerate_tanglegrams(n):
        assert parse_tanglegram(format_tanglegram(t)) == t
        assert parse_tanglegram(format_tanglegram(t, "labels")) == t


def test_perm_output_is_canonical_text():
    t = parse_tanglegram("((1,2),3) | (1,(2,3)) | id")
    assert format_tanglegram(t) == "(*,(*,*)) | (*,(*,*)) | p=[1,0,2]"


def test_label_and_perm_forms_agree():
    a = parse_tanglegram("((1,2),(3,(4,5))) | (5,(4,(3,(1,2)))) | id")
    b = parse_tanglegram(format_tanglegram(a, "labels"))
    assert a == b


def test_written_order_does_not_matter():
    a = parse_tanglegram("((a,b),c) | (c,(a,b)) | id")
    b = parse_tanglegram("(c,(b,a)) | ((b,a),c) | id")
    assert a == b


def test_perm_indices_are_written_positions():
    # left leaf written first goes to the right leaf written last
    t = parse_tanglegram("(*,(*,*)) | (*,(*,*)) | p=[2,1,0]")
    u = parse_tanglegram("(x,(y,z)) | (z,(y,x)) | id")
    assert t == u


@pytest.mark.parametrize(
    "line",
    [
        "(1,2) | (1,2)",
        "(1,2) | (1,(2,3)) | id",
        "(1,2) | (1,3) | id",
        "(1,1) | (1,1) | id",
        "(*,*) | (*,*) | p=[0,0]",
        "(*,*) | (*,*) | q=[0,1]",
        "(*,* | (*,*) | id",
    ],
)
def test_malformed_lines(line):
    with pytest.raises(ParseError):
        parse_tanglegram(line)


def test_multideck_round_trip():
    for t in enumerate_tanglegrams(5)[::7]:
        d = tanglegram_multideck(t)
        text = format_multideck(d)
        assert text.startswith("n=5\n")
        assert parse_multideck(text) == d
        assert parse_multideck(format_multideck(d, "labels")) == d


def test_multideck_comments_and_blanks():
    text = """
    # cards of the sample tanglegram
    n=5

    2 ((1,2),(3,4)) | (1,(4,(2,3))) | id
    1 ((1,2),(3,4)) | (1,(2,(3,4))) | id
    2 (4,(1,(2,3))) | (1,(2,(3,4))) | id
    """
    d = parse_multideck(text)
    assert d.parent_size == 5 and len(d) == 3


@pytest.mark.parametrize(
    "text",
    [
        "",
        "5\n2 (*,*) | (*,*) | id",
        "n=3\nx (*,*) | (*,*) | p=[0,1]",
        "n=3\n2 (*,*) | (*,*) | p=[0,1]",
        "n=3\n3 (*,(*,*)) | (*,(*,*)) | p=[0,1,2]",
    ],
)
def test_malformed_multidecks(text):
    with pytest.raises(ParseError):
        parse_multideck(text)
