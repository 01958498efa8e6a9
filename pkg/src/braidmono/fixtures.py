"""Canned example data: the arrangements and diagrams every test reproduces.

Diagrams for the two Falk sextic sections and the Falk-Sturmfels pair are
stored as the printed vertex-set sequences of their monodromy generators,
which determine the unbraided diagrams; the two MacLane diagrams store the
local-index/braid table verbatim, with the minus diagram obtained by crossing
reversal.  The published generator vectors and the Falk-Sturmfels equivalence
witness are kept alongside for the acceptance suite to check against.
"""

from __future__ import annotations

import re

from .braid import BraidWord, half_twist, parse_braid
from .markov import EquivalenceWitness
from .wiring import BraidedWiringDiagram, conjugate_diagram, make_diagram, unbraided_from_vertex_sets

FALK_A_VERTEX_SETS: tuple[tuple[int, ...], ...] = (
    (1, 2, 3), (4, 5, 6), (1, 6), (2, 6), (3, 6),
    (1, 5), (2, 5), (3, 5), (1, 4), (2, 4), (3, 4),
)

FALK_A2_VERTEX_SETS: tuple[tuple[int, ...], ...] = (
    (1, 2, 3), (1, 4, 5), (2, 5), (3, 5), (2, 4),
    (3, 4), (1, 6), (2, 6), (3, 6), (4, 6), (5, 6),
)

FS_PLUS_VERTEX_SETS: tuple[tuple[int, ...], ...] = (
    (1, 2, 3), (1, 4), (1, 5, 6), (1, 7), (1, 8, 9),
    (2, 4, 6), (2, 5, 7, 9), (4, 9), (3, 6, 9), (3, 4, 7),
    (2, 8), (3, 5), (3, 8), (4, 5, 8), (6, 7, 8),
)

FS_MINUS_VERTEX_SETS: tuple[tuple[int, ...], ...] = (
    (6, 7), (5, 7), (2, 3), (2, 4, 7), (2, 5, 6),
    (2, 8), (1, 3, 7), (1, 4, 6), (1, 5, 8), (4, 8),
    (1, 2, 9), (3, 6, 8), (3, 4, 5, 9), (6, 9), (7, 8, 9),
)

# Published generator vectors, in the braid-word grammar.
FALK_A_PRINTED: tuple[str, ...] = (
    "A[1,2,3]", "A[4,5,6]", "A[1,6]^{{4,5}}", "A[2,6]^{{4,5}}", "A[3,6]^{{4,5}}",
    "A[1,5]^{{4}}", "A[2,5]^{{4}}", "A[3,5]^{{4}}", "A[1,4]", "A[2,4]", "A[3,4]",
)

FALK_A2_PRINTED: tuple[str, ...] = (
    "A[1,2,3]", "A[1,4,5]", "A[2,5]^{{4}}", "A[3,5]^{{4}}", "A[2,4]",
    "A[3,4]", "A[1,6]", "A[2,6]", "A[3,6]", "A[4,6]", "A[5,6]",
)

FS_PLUS_PRINTED: tuple[str, ...] = (
    "A[1,2,3]", "A[1,4]", "A[1,5,6]", "A[1,7]", "A[1,8,9]",
    "A[2,4,6]^{{5}}", "A[2,5,7,9]^{{8}}", "A[4,9]^{{5,7,8}}",
    "A[3,6,9]^{{4,5,7,8}}", "A[3,4,7]^{{5}}",
    "A[2,8]", "A[3,5]", "A[3,8]", "A[4,5,8]", "A[6,7,8]",
)

FS_MINUS_PRINTED: tuple[str, ...] = (
    "A[6,7]", "A[5,7]^{{6}}", "A[2,3]", "A[2,4,7]^{{5,6}}", "A[2,5,6]",
    "A[2,8]", "A[1,3,7]^{{2,4,5,6}}", "A[1,4,6]^{{2,5}}", "A[1,5,8]^{{2}}",
    "A[4,8]^{{5}}", "A[1,2,9]", "A[3,6,8]^{{4,5}}", "A[3,4,5,9]", "A[6,9]", "A[7,8,9]",
)

MACLANE_PLUS_PRINTED: tuple[str, ...] = (
    "A[4,5,6]", "A[3,6]", "A[1,2,6]", "A[1,3,4]",
    "A[2,5]^{A[3,5] A[4,5] A[5,7]}", "A[4,7]", "A[1,5,7]",
    "A[2,3,7]^{A[4,7] A[5,7] A[3,4]}",
)

MACLANE_MINUS_PRINTED: tuple[str, ...] = (
    "A[4,5,6]", "A[3,6]", "A[1,2,6]", "A[1,3,4]",
    "A[2,5]", "A[4,7]^{A[5,7]}", "A[1,5,7]", "A[2,3,7]^{A[5,7]}",
)

# MacLane local-index/braid table: ((low, size), braid-after-vertex).
_MACLANE_TABLE: tuple[tuple[tuple[int, int], str], ...] = (
    ((4, 3), "1"),
    ((3, 2), "1"),
    ((1, 3), "s4 s5^-1"),
    ((3, 3), "s3^-1 s2 s5 s3 s4"),
    ((4, 2), "s2^-1 s3 s4^-1"),
    ((6, 2), "s3^-1"),
    ((4, 3), "1"),
    ((2, 3), "1"),
)


def falk_a_diagram() -> BraidedWiringDiagram:
    return unbraided_from_vertex_sets(6, FALK_A_VERTEX_SETS)


def falk_a2_diagram() -> BraidedWiringDiagram:
    return unbraided_from_vertex_sets(6, FALK_A2_VERTEX_SETS)


def fs_diagram(sign: str) -> BraidedWiringDiagram:
    sets = FS_PLUS_VERTEX_SETS if sign == "+" else FS_MINUS_VERTEX_SETS
    return unbraided_from_vertex_sets(9, sets)


def maclane_diagram(sign: str) -> BraidedWiringDiagram:
    plus = make_diagram(
        7,
        [block for block, _ in _MACLANE_TABLE],
        [parse_braid(word, 7) for _, word in _MACLANE_TABLE],
    )
    return plus if sign == "+" else conjugate_diagram(plus)


def pencil_diagram(n: int) -> BraidedWiringDiagram:
    if n < 2:
        raise ValueError("a pencil needs at least 2 lines")
    return make_diagram(n, [(1, n)])


def fs_witness() -> EquivalenceWitness:
    """The printed pair certifying lambda+ o psi = conj_phi o lambda-."""
    row = BraidWord(15, tuple(range(1, 15)))
    psi = (
        row * row * row * row
        * BraidWord(15, (6,))
        * half_twist(range(3, 7), 15)
        * BraidWord(15, (6, 10, 11, 12, 13))
        * half_twist(range(7, 11), 15)
        * BraidWord(15, (10,))
        * half_twist(range(11, 16), 15)
        * BraidWord(15, (4, 5, 6, 9, 10))
        * half_twist(range(6, 10), 15)
        * BraidWord(15, (5, 11))
    )
    back_row = BraidWord(9, tuple(range(8, 0, -1)))
    phi = back_row * back_row * back_row * back_row * BraidWord(9, (3, 4, 3, 2, 5, 6))
    return EquivalenceWitness(psi, phi)


# Sheared sections of the small pencils xy(x-y) and xy(x-1): the vertical line
# x = 0 (and x = 1) becomes z = x (z = x - 1) under x -> x + z.
EXAMPLE_73A_FILE = """\
field 1
1 0 0 0
0 0 0 0
1/2 0 0 0
"""

EXAMPLE_73B_FILE = """\
field 1
1 0 0 0
0 0 0 0
1 0 -1 0
"""

# The deconed MacLane arrangement in the projected coordinates u = 3y + z,
# fiber v = z, over Q(i sqrt 3); the minus file is its complex conjugate.
MACLANE_PLUS_FILE = """\
field -3
1 0 0 0
0 0 0 0
1 0 -3 0
0 0 1 0
5/26 -3/26 0 0
5/26 -3/26 3/13 6/13
-1/14 -3/14 15/14 3/14
"""


def maclane_arrangement_file(sign: str) -> str:
    if sign == "+":
        return MACLANE_PLUS_FILE
    lines = []
    for lineno, raw in enumerate(MACLANE_PLUS_FILE.splitlines()):
        if lineno == 0:
            lines.append(raw)
            continue
        a0, a1, b0, b1 = raw.split()
        lines.append(f"{a0} {_neg(a1)} {b0} {_neg(b1)}")
    return "\n".join(lines) + "\n"


def _neg(frac: str) -> str:
    if frac == "0":
        return frac
    return frac[1:] if frac.startswith("-") else f"-{frac}"


_PENCIL = re.compile(r"pencil\((\d+)\)$")

DIAGRAM_FIXTURES = ("falkA", "falkA2", "fs_plus", "fs_minus", "maclane_plus", "maclane_minus")
ARRANGEMENT_FIXTURES = ("example73a", "example73b")


def fixture_diagram(name: str) -> BraidedWiringDiagram:
    if name == "falkA":
        return falk_a_diagram()
    if name == "falkA2":
        return falk_a2_diagram()
    if name == "fs_plus":
        return fs_diagram("+")
    if name == "fs_minus":
        return fs_diagram("-")
    if name == "maclane_plus":
        return maclane_diagram("+")
    if name == "maclane_minus":
        return maclane_diagram("-")
    m = _PENCIL.match(name)
    if m:
        return pencil_diagram(int(m.group(1)))
    raise KeyError(f"no diagram fixture named {name!r}")


def fixture_arrangement_text(name: str) -> str:
    if name == "example73a":
        return EXAMPLE_73A_FILE
    if name == "example73b":
        return EXAMPLE_73B_FILE
    if name == "maclane_plus":
        return maclane_arrangement_file("+")
    if name == "maclane_minus":
        return maclane_arrangement_file("-")
    raise KeyError(f"no arrangement fixture named {name!r}")
