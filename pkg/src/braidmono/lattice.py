"""Intersection lattices of line arrangements, as vertex-to-lines maps.

Only the rank-two data is stored: the ordered list of vertex sets (which
lines pass through each multiple point).  Isomorphism is a pair of
permutations (pi on vertices, rho on lines) with V'_{pi(k)} = rho(V_k); the
exhaustive backtracking search is exact at these sizes, so a None answer is a
proof of non-isomorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .braid import Permutation


@dataclass(frozen=True)
class VertexMap:
    """n lines; vertex k passes through the line subset sets[k-1]."""

    n: int
    sets: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for vset in self.sets:
            if len(vset) < 2:
                raise ValueError(f"vertex set {vset} has fewer than 2 lines")
            if len(set(vset)) != len(vset) or any(not 1 <= i <= self.n for i in vset):
                raise ValueError(f"bad vertex set {vset} for n={self.n}")

    @property
    def s(self) -> int:
        return len(self.sets)

    def check_geometric(self) -> None:
        """Two points determine a line: distinct vertices share at most one."""
        for a, b in itertools.combinations(self.sets, 2):
            if len(set(a) & set(b)) > 1:
                raise ValueError(f"vertex sets {a} and {b} share two lines")
        if len(set(self.sets)) != len(self.sets):
            raise ValueError("duplicate vertex sets")


def lattice_of(source) -> VertexMap:
    """The vertex map of a diagram, a tagged monodromy list, or an arrangement."""
    from .extract import Arrangement, incidence_sets
    from .monodromy import MonodromyList
    from .wiring import BraidedWiringDiagram, vertex_sets

    if isinstance(source, BraidedWiringDiagram):
        return VertexMap(source.n, tuple(vertex_sets(source)))
    if isinstance(source, MonodromyList):
        if not all(source.vertex_sets):
            raise ValueError("monodromy list lacks vertex-set tags")
        return VertexMap(source.strands, tuple(tuple(sorted(v)) for v in source.vertex_sets))
    if isinstance(source, Arrangement):
        return VertexMap(source.n, tuple(incidence_sets(source)))
    raise TypeError(f"no lattice for {type(source).__name__}")


def line_profile(v: VertexMap, line: int) -> tuple[int, ...]:
    """Sorted multiset of the sizes of the vertices through one line."""
    return tuple(sorted(len(s) for s in v.sets if line in s))


@dataclass(frozen=True)
class LatticeProfile:
    """Isomorphism-invariant fingerprint; inequality proves non-isomorphism."""

    n: int
    s: int
    vertex_sizes: tuple[int, ...]
    line_profiles: tuple[tuple[int, ...], ...]
    collinear_multiple_pairs: int

    def __str__(self) -> str:
        return (
            f"n={self.n} s={self.s}\n"
            f"vertex sizes: {list(self.vertex_sizes)}\n"
            f"line profiles: {[list(p) for p in self.line_profiles]}\n"
            f"pairs of multiple points sharing a line: {self.collinear_multiple_pairs}"
        )


def lattice_invariants(v: VertexMap) -> LatticeProfile:
    multiple = [set(s) for s in v.sets if len(s) >= 3]
    shared = sum(
        1 for a, b in itertools.combinations(multiple, 2) if a & b
    )
    return LatticeProfile(
        v.n,
        v.s,
        tuple(sorted(len(s) for s in v.sets)),
        tuple(sorted(line_profile(v, i) for i in range(1, v.n + 1))),
        shared,
    )


def _pair_profile(v: VertexMap, a: int, b: int) -> tuple[int, ...]:
    return tuple(sorted(len(s) for s in v.sets if a in s and b in s))


def lattice_isomorphic(
    v1: VertexMap, v2: VertexMap
) -> tuple[Permutation, Permutation] | None:
    """A witnessing (pi, rho) with V2_{pi(k)} = rho(V1_k), or None.

    rho is built line by line: candidates must match line profiles, and every
    assigned pair must match pair profiles.  At a full assignment the mapped
    vertex multiset is matched against V2 to read off pi.
    """
    if v1.n != v2.n or v1.s != v2.s:
        return None
    if lattice_invariants(v1) != lattice_invariants(v2):
        return None
    n = v1.n
    profiles1 = {i: line_profile(v1, i) for i in range(1, n + 1)}
    profiles2 = {i: line_profile(v2, i) for i in range(1, n + 1)}
    # assign rarest-profile lines first
    freq: dict[tuple[int, ...], int] = {}
    for p in profiles1.values():
        freq[p] = freq.get(p, 0) + 1
    order = sorted(range(1, n + 1), key=lambda i: (freq[profiles1[i]], profiles1[i], i))
    assignment: dict[int, int] = {}
    used: set[int] = set()

    def extend(pos: int) -> tuple[Permutation, Permutation] | None:
        if pos == n:
            rho = Permutation(tuple(assignment[i] for i in range(1, n + 1)))
            mapped = [tuple(sorted(rho(i) for i in s)) for s in v1.sets]
            remaining: dict[tuple[int, ...], list[int]] = {}
            for idx, s in enumerate(v2.sets, start=1):
                remaining.setdefault(s, []).append(idx)
            pi_images = []
            for s in mapped:
                bucket = remaining.get(s)
                if not bucket:
                    return None
                pi_images.append(bucket.pop(0))
            return Permutation(tuple(pi_images)), rho
        line = order[pos]
        for cand in range(1, n + 1):
            if cand in used or profiles2[cand] != profiles1[line]:
                continue
            if any(
                _pair_profile(v1, line, other) != _pair_profile(v2, cand, assignment[other])
                for other in assignment
            ):
                continue
            assignment[line] = cand
            used.add(cand)
            found = extend(pos + 1)
            if found is not None:
                return found
            del assignment[line]
            used.remove(cand)
        return None

    return extend(0)


# --- file format -----------------------------------------------------------------

def serialize(v: VertexMap) -> str:
    lines = [f"# n = {v.n}"]
    for s in v.sets:
        lines.append(",".join(map(str, s)))
    return "\n".join(lines) + "\n"


def parse(text: str) -> VertexMap:
    n: int | None = None
    sets: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("n") and "=" in body:
                n = int(body.split("=", 1)[1])
            continue
        try:
            sets.append(tuple(sorted(int(x) for x in line.split(","))))
        except ValueError:
            raise ValueError(f"line {lineno}: bad vertex line {line!r}") from None
    if n is None:
        n = max((max(s) for s in sets), default=0)
    return VertexMap(n, tuple(sets))
