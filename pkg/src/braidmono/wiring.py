"""Braided wiring diagrams: vertex events, intermediate braids, derived states.

A diagram on n wires is an alternating sequence of vertex events and
intermediate braids, read off along an admissible path of decreasing real
part.  The state Pi_k maps heights (1 = bottom) to wire labels just before
vertex k; it satisfies the recursion

    Pi_{k+1} = Pi_k o rev_{I_k} o perm(beta_{k,k+1}),

where rev reverses the contiguous local block I_k of the vertex.  Diagrams are
depicted right to left but their braid words are written left to right, so the
first letter of an intermediate braid is the crossing nearest the *next*
vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .braid import BraidWord, Permutation, epsilon, format_braid, parse_braid, perm


class DiagramError(ValueError):
    """Structurally invalid braided wiring diagram."""


@dataclass(frozen=True)
class VertexEvent:
    """A vertex occupying the contiguous heights low .. low+size-1."""

    low: int
    size: int

    def __post_init__(self) -> None:
        if self.size < 2:
            raise DiagramError(f"vertex needs >= 2 wires, got size {self.size}")
        if self.low < 1:
            raise DiagramError(f"vertex low height {self.low} < 1")

    @property
    def high(self) -> int:
        return self.low + self.size - 1

    def heights(self) -> range:
        return range(self.low, self.high + 1)


@dataclass(frozen=True)
class BraidedWiringDiagram:
    """n wires; an initial braid; s vertices with a braid after each.

    ``braids[k]`` follows ``vertices[k]``; the last entry is the trailing
    braid after the final vertex, which never influences the monodromy.
    """

    n: int
    initial_braid: BraidWord
    vertices: tuple[VertexEvent, ...]
    braids: tuple[BraidWord, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DiagramError("need at least one wire")
        if len(self.braids) != len(self.vertices):
            raise DiagramError(
                f"{len(self.vertices)} vertices need {len(self.vertices)} braids, "
                f"got {len(self.braids)}"
            )
        for b in (self.initial_braid, *self.braids):
            if b.strands != self.n:
                raise DiagramError(f"braid on {b.strands} strands in an n={self.n} diagram")

    @property
    def s(self) -> int:
        return len(self.vertices)

    def is_unbraided(self) -> bool:
        return not self.initial_braid.letters and all(not b.letters for b in self.braids)


def make_diagram(
    n: int,
    vertices: Iterable[tuple[int, int]],
    braids: Sequence[BraidWord | None] | None = None,
    initial: BraidWord | None = None,
) -> BraidedWiringDiagram:
    """Convenience constructor from (low, size) pairs; missing braids are trivial."""
    vs = tuple(VertexEvent(low, size) for low, size in vertices)
    trivial = BraidWord.identity(n)
    if braids is None:
        bs = tuple(trivial for _ in vs)
    else:
        padded = list(braids) + [None] * (len(vs) - len(braids))
        bs = tuple(b if b is not None else trivial for b in padded)
    w = BraidedWiringDiagram(n, initial or trivial, vs, bs)
    validate(w)
    return w


def _reverse_block(state: tuple[int, ...], v: VertexEvent) -> tuple[int, ...]:
    lo, hi = v.low - 1, v.high  # 0-indexed slice bounds
    return state[:lo] + state[lo:hi][::-1] + state[hi:]


def _apply_braid(state: tuple[int, ...], b: BraidWord) -> tuple[int, ...]:
    tau = perm(b)
    return tuple(state[tau.images[h] - 1] for h in range(len(state)))


def states(w: BraidedWiringDiagram) -> list[Permutation]:
    """The derived states Pi_1 .. Pi_{s+1}, as height -> wire maps."""
    state = _apply_braid(tuple(range(1, w.n + 1)), w.initial_braid)
    out = [Permutation(state)]
    for v, b in zip(w.vertices, w.braids):
        if v.high > w.n:
            raise DiagramError(f"vertex block {v.low}..{v.high} exceeds n={w.n}")
        state = _apply_braid(_reverse_block(state, v), b)
        out.append(Permutation(state))
    return out


def validate(w: BraidedWiringDiagram) -> list[Permutation]:
    """Check all diagram invariants; return the state sequence on success."""
    return states(w)


def local_index(w: BraidedWiringDiagram, k: int) -> range:
    """The local height range I_k of the k-th vertex (1-indexed)."""
    if not 1 <= k <= w.s:
        raise DiagramError(f"vertex index {k} out of range 1..{w.s}")
    return w.vertices[k - 1].heights()


def vertex_sets(w: BraidedWiringDiagram) -> list[tuple[int, ...]]:
    """The wire-label sets V_k = Pi_k(I_k), sorted ascending."""
    sts = states(w)
    return [
        sts[k].apply_set(w.vertices[k].heights())
        for k in range(w.s)
    ]


def vertex_wires_by_height(w: BraidedWiringDiagram) -> list[tuple[int, ...]]:
    """The incident wires of each vertex in bottom-to-top order at its state."""
    sts = states(w)
    return [
        tuple(sts[k].images[h - 1] for h in w.vertices[k].heights())
        for k in range(w.s)
    ]


def conjugate_diagram(w: BraidedWiringDiagram) -> BraidedWiringDiagram:
    """Reverse every crossing of the initial and intermediate braids."""
    return replace(
        w,
        initial_braid=epsilon(w.initial_braid),
        braids=tuple(epsilon(b) for b in w.braids),
    )


def j_set(w: BraidedWiringDiagram, k: int) -> tuple[int, ...]:
    """The Cordovil-Fachada set J_k = (Vbar_k - V_k) n U_k of an unbraided diagram.

    Vbar_k is the label interval spanned by V_k and U_k the labels of the
    wires above the vertex at state Pi_k.
    """
    if not w.is_unbraided():
        raise DiagramError("J-sets are only defined for unbraided diagrams")
    if not 1 <= k <= w.s:
        raise DiagramError(f"vertex index {k} out of range 1..{w.s}")
    sts = states(w)
    state = sts[k - 1]
    v = w.vertices[k - 1]
    vset = set(state.images[h - 1] for h in v.heights())
    above = set(state.images[h - 1] for h in range(v.high + 1, w.n + 1))
    interval = set(range(min(vset), max(vset) + 1))
    return tuple(sorted((interval - vset) & above))


def unbraided_from_vertex_sets(
    n: int, sets: Iterable[Iterable[int]]
) -> BraidedWiringDiagram:
    """Build the unbraided diagram whose k-th vertex joins the given wire labels.

    At each step the labels must sit at contiguous heights of the running
    state; this is how printed vertex-set sequences determine a diagram.
    """
    state = list(range(1, n + 1))
    vertices: list[tuple[int, int]] = []
    for k, labels in enumerate(sets, start=1):
        wanted = set(labels)
        heights = sorted(state.index(i) + 1 for i in wanted)
        if heights != list(range(heights[0], heights[0] + len(heights))):
            raise DiagramError(
                f"vertex {k} wires {sorted(wanted)} are at non-contiguous heights {heights}"
            )
        lo = heights[0]
        vertices.append((lo, len(heights)))
        state[lo - 1 : lo - 1 + len(heights)] = state[lo - 1 : lo - 1 + len(heights)][::-1]
    return make_diagram(n, vertices)


# --- file format ---------------------------------------------------------------
#
#   n=<int>
#   initial="<braid word>"        (optional)
#   v <low> <size>
#   b "<braid word>"              (optional between vertices, and after the last)


def serialize(w: BraidedWiringDiagram) -> str:
    lines = [f"n={w.n}"]
    if w.initial_braid.letters:
        lines.append(f'initial="{format_braid(w.initial_braid)}"')
    for v, b in zip(w.vertices, w.braids):
        lines.append(f"v {v.low} {v.size}")
        if b.letters:
            lines.append(f'b "{format_braid(b)}"')
    return "\n".join(lines) + "\n"


def parse(text: str) -> BraidedWiringDiagram:
    n: int | None = None
    initial: BraidWord | None = None
    vertices: list[tuple[int, int]] = []
    braids: list[BraidWord] = []

    def fail(lineno: int, msg: str) -> DiagramError:
        return DiagramError(f"line {lineno}: {msg}")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("n="):
            try:
                n = int(line[2:])
            except ValueError:
                raise fail(lineno, f"bad wire count {line[2:]!r}") from None
        elif line.startswith("initial="):
            if n is None:
                raise fail(lineno, "initial braid before the n= header")
            if vertices:
                raise fail(lineno, "initial braid after the first vertex")
            initial = parse_braid(_unquote(line[len("initial="):], lineno), n)
        elif line.startswith("v "):
            if n is None:
                raise fail(lineno, "vertex before the n= header")
            parts = line.split()
            if len(parts) != 3:
                raise fail(lineno, f"expected 'v <low> <size>', got {line!r}")
            try:
                low, size = int(parts[1]), int(parts[2])
            except ValueError:
                raise fail(lineno, f"bad vertex numbers in {line!r}") from None
            if size < 2:
                raise fail(lineno, f"vertex of size {size} < 2")
            vertices.append((low, size))
            braids.append(BraidWord.identity(n))
        elif line.startswith("b "):
            if n is None or not vertices:
                raise fail(lineno, "braid line before the first vertex")
            if braids[-1].letters:
                raise fail(lineno, "two braid lines after one vertex")
            braids[-1] = parse_braid(_unquote(line[2:], lineno), n)
        else:
            raise fail(lineno, f"unrecognized line {line!r}")
    if n is None:
        raise DiagramError("missing n= header")
    w = BraidedWiringDiagram(
        n,
        initial or BraidWord.identity(n),
        tuple(VertexEvent(low, size) for low, size in vertices),
        tuple(braids),
    )
    validate(w)
    return w


def _unquote(text: str, lineno: int) -> str:
    text = text.strip()
    if len(text) < 2 or text[0] != '"' or text[-1] != '"':
        raise DiagramError(f"line {lineno}: braid word must be double-quoted")
    return text[1:-1]
