"""Line-oriented text formats.

Tanglegram line::

    NEWICK_L | NEWICK_R | MATCHING

``MATCHING`` is either ``id`` (leaves carrying equal labels are matched) or
``p=[j0,j1,...]`` (the ``k``-th leaf of the left tree, as written, is matched
to the ``j_k``-th leaf of the right tree, as written).  The default output is
the canonical form with ``*`` leaves and ``p=[...]`` over canonical indices.

Multideck file::

    n=<size>
    <multiplicity> <tanglegram line>
    ...

Blank lines and lines starting with ``#`` are ignored on input.
"""

from __future__ import annotations

import re
from typing import Iterable, TextIO

from .tanglegram import Tanglegram, inverse
from .trees import Multideck, parse_newick_positions, to_newick

__all__ = [
    "ParseError",
    "format_tanglegram",
    "parse_tanglegram",
    "format_multideck",
    "parse_multideck",
    "read_multideck",
]


class ParseError(ValueError):
    """Malformed tree, tanglegram or multideck text."""


_PERM = re.compile(r"^p\s*=\s*\[([\d\s,]*)\]$")


def format_tanglegram(t: Tanglegram, fmt: str = "perm") -> str:
    if fmt == "perm":
        perm = ",".join(str(j) for j in t.matching)
        return f"{to_newick(t.left)} | {to_newick(t.right)} | p=[{perm}]"
    if fmt == "labels":
        left_labels = [str(i + 1) for i in range(t.size)]
        inv = inverse(t.matching)
        right_labels = [str(inv[j] + 1) for j in range(t.size)]
        return f"{to_newick(t.left, left_labels)} | {to_newick(t.right, right_labels)} | id"
    raise ValueError(f"unknown format {fmt!r}")


def parse_tanglegram(line: str) -> Tanglegram:
    parts = [p.strip() for p in line.split("|")]
    if len(parts) != 3:
        raise ParseError(f"expected 'LEFT | RIGHT | MATCHING', got {line!r}")
    try:
        left, lpos, llabels = parse_newick_positions(parts[0])
        right, rpos, rlabels = parse_newick_positions(parts[1])
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    n = left.size
    if right.size != n:
        raise ParseError(f"tree sizes differ: {n} vs {right.size}")
    r_canon = inverse(rpos)  # written position -> canonical index
    matching_text = parts[2]
    if matching_text == "id":
        if len(set(llabels)) != n or set(llabels) != set(rlabels):
            raise ParseError("'id' matching needs the same distinct labels on both trees")
        r_at = {lab: r_canon[k] for k, lab in enumerate(rlabels)}
        matching = [r_at[llabels[lpos[i]]] for i in range(n)]
    else:
        m = _PERM.match(matching_text.replace(" ", ""))
        if not m:
            raise ParseError(f"matching must be 'id' or 'p=[...]', got {matching_text!r}")
        try:
            written = [int(x) for x in m.group(1).split(",") if x.strip()]
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        if sorted(written) != list(range(n)):
            raise ParseError(f"p={written} is not a permutation of 0..{n - 1}")
        matching = [r_canon[written[lpos[i]]] for i in range(n)]
    return Tanglegram(left, right, matching)


def format_multideck(d: Multideck, fmt: str = "perm") -> str:
    lines = [f"n={d.parent_size}"]
    for card, mult in d.items():
        lines.append(f"{mult} {format_tanglegram(card, fmt)}")
    return "\n".join(lines) + "\n"


def _content_lines(lines: Iterable[str]):
    for raw in lines:
        line = raw.strip()
        if line and not line.startswith("#"):
            yield line


def parse_multideck(text: str | Iterable[str]) -> Multideck:
    lines = list(_content_lines(text.splitlines() if isinstance(text, str) else text))
    if not lines:
        raise ParseError("empty multideck")
    head = re.fullmatch(r"n\s*=\s*(\d+)", lines[0])
    if not head:
        raise ParseError(f"multideck must start with 'n=<size>', got {lines[0]!r}")
    n = int(head.group(1))
    entries = []
    for line in lines[1:]:
        mult, _, rest = line.partition(" ")
        if not mult.isdigit():
            raise ParseError(f"expected '<multiplicity> <tanglegram>', got {line!r}")
        entries.append((parse_tanglegram(rest), int(mult)))
    try:
        return Multideck(entries, n)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def read_multideck(fh: TextIO) -> Multideck:
    return parse_multideck(fh.read())
