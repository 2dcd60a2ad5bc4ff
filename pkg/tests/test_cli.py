import io
import subprocess
import sys

import pytest

from tanglegrams.cli import EXIT_AMBIGUOUS, EXIT_INCONSISTENT, EXIT_OK, EXIT_PARSE, EXIT_VERIFY, main
from tanglegrams.textio import parse_multideck, parse_tanglegram

SAMPLE = "((1,(2,3)),(4,5)) | (1,(2,(5,(3,4)))) | id\n"


def run(argv, stdin=""):
    out = io.StringIO()
    old = sys.stdin
    sys.stdin = io.StringIO(stdin)
    try:
        code = main(argv, out)
    finally:
        sys.stdin = old
    return code, out.getvalue()


@pytest.fixture
def sample(tmp_path):
    p = tmp_path / "sample.txt"
    p.write_text(SAMPLE)
    return str(p)


def test_multideck_of_sample(sample):
    code, out = run(["multideck", sample])
    lines = out.splitlines()
    assert code == EXIT_OK and lines[0] == "n=5"
    assert sorted(int(ln.split()[0]) for ln in lines[1:]) == [1, 2, 2]


def test_reconstruct_from_multideck(sample):
    _, deck_text = run(["multideck", sample])
    code, out = run(["reconstruct"], deck_text)
    line, method = out.splitlines()
    assert code == EXIT_OK
    assert parse_tanglegram(line) == parse_tanglegram(SAMPLE)
    assert method == "method=CatType2"


def test_deck_lists_distinct_cards(sample):
    code, out = run(["deck", sample, "--format", "labels"])
    assert code == EXIT_OK and len(out.splitlines()) == 4


def test_canon_trees_and_tanglegrams():
    code, out = run(["canon"], "((a,b),c)\n((1,2),3) | (1,(2,3)) | id\n")
    assert code == EXIT_OK
    assert out.splitlines() == ["(*,(*,*))", "(*,(*,*)) | (*,(*,*)) | p=[1,0,2]"]


def test_enumerate_size_four():
    code, out = run(["enumerate", "--size", "4"])
    lines = out.splitlines()
    assert code == EXIT_OK and len(lines) == 14 and lines[-1] == "13"


def test_enumerate_caterpillar_only():
    _, out = run(["enumerate", "-n", "5", "--caterpillar-only"])
    assert out.splitlines()[-1] == "87"


def test_verify_collisions_exit_code():
    code, out = run(["verify", "--size", "5", "--caterpillar-only"])
    assert code == EXIT_VERIFY and "collisions=3" in out
    code, out = run(["verify", "--size", "6", "--caterpillar-only"])
    assert code == EXIT_OK and "collisions=0" in out


def test_verify_out_of_scope_is_data():
    code, out = run(["verify", "--size", "4"])
    assert code == EXIT_OK and "collisions=4" in out
    code, _ = run(["verify", "--size", "5", "--caterpillar-only", "--deck-variant"])
    assert code == EXIT_OK


def test_roundtrip_verb():
    code, out = run(["roundtrip", "--size", "6"])
    assert code == EXIT_OK and out.splitlines()[-1] == "PASS"
    assert "oracle agreement=858/858" in out
    code, out = run(["roundtrip", "--size", "5", "--no-oracle"])
    assert code == EXIT_VERIFY and out.count("FAIL ") == 6


def test_parse_error_exit():
    assert run(["reconstruct"], "n=5\n2 (*,* | x | id\n")[0] == EXIT_PARSE
    assert run(["canon"], "((*,*)\n")[0] == EXIT_PARSE
    assert run(["multideck", "/nonexistent/file"])[0] == EXIT_PARSE


def test_inconsistent_exit():
    text = (
        "n=6\n"
        "4 (*,(*,(*,(*,*)))) | (*,(*,(*,(*,*)))) | p=[0,1,2,3,4]\n"
        "2 (*,(*,(*,(*,*)))) | (*,(*,(*,(*,*)))) | p=[0,1,3,2,4]\n"
    )
    assert run(["reconstruct"], text)[0] == EXIT_INCONSISTENT


def test_ambiguous_exit():
    t = parse_tanglegram("(*,(*,(*,(*,*)))) | (*,(*,(*,(*,*)))) | p=[3,2,4,0,1]")
    _, deck_text = run(["multideck"], "(*,(*,(*,(*,*)))) | (*,(*,(*,(*,*)))) | p=[3,2,4,0,1]\n")
    assert parse_multideck(deck_text).parent_size == t.size
    assert run(["reconstruct"], deck_text)[0] == EXIT_AMBIGUOUS


def test_usage_error_exit():
    with pytest.raises(SystemExit) as info:
        run(["enumerate"])
    assert info.value.code == 2


def test_deterministic_output():
    assert run(["enumerate", "-n", "5"]) == run(["enumerate", "-n", "5"])


def test_module_entry_point(sample):
    proc = subprocess.run(
        [sys.executable, "-m", "tanglegrams", "multideck", sample], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.startswith("n=5")
