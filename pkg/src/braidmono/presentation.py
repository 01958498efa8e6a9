"""Fundamental-group presentations of arrangement complements.

Three routes to the same group: relations t_i = lambda_k(t_i) read off the
monodromy generators; the meridian-sweep algorithm that tracks conjugated
generators through vertices and crossings; and, for unbraided diagrams, the
closed-form conjugators gamma_k.  Abelianization (integer Smith form) and
counts of homomorphisms to small symmetric groups serve as cheap
isomorphism-invariant fingerprints for comparing the outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .braid import artin_act
from .freegroup import FreeEndo, FreeWord, concat_reduce, format_word, invert_letters, parse_word
from .monodromy import MonodromyList
from .wiring import BraidedWiringDiagram, DiagramError, j_set, states, vertex_wires_by_height


@dataclass(frozen=True)
class Presentation:
    """Generators t_1..t_rank and relators (words that equal 1)."""

    rank: int
    relators: tuple[FreeWord, ...]
    families: tuple[int, ...]  # originating vertex per relator; 0 when unknown

    def __post_init__(self) -> None:
        if len(self.families) != len(self.relators):
            raise ValueError("one family tag per relator required")
        for r in self.relators:
            if r.rank != self.rank:
                raise ValueError("relator rank mismatch")


def _family_presentation(rank: int, families: Sequence[tuple[int, list[FreeWord]]]) -> Presentation:
    relators: list[FreeWord] = []
    tags: list[int] = []
    for k, words in families:
        for w in words:
            if w.is_identity():
                continue
            relators.append(w)
            tags.append(k)
    return Presentation(rank, tuple(relators), tuple(tags))


def braid_presentation(m: MonodromyList) -> Presentation:
    """Relators lambda_k(t_i) t_i^-1 for i in V_k minus its largest label."""
    if not all(m.vertex_sets):
        raise ValueError("monodromy generators must be tagged with vertex sets")
    families = []
    for k in range(1, m.s + 1):
        vset = m.vertex_sets[k - 1]
        lam = m.values[k - 1]
        words = []
        for i in vset[:-1]:
            image = artin_act(lam, FreeWord.generator(m.strands, i))
            words.append(image * FreeWord.generator(m.strands, i).inverse())
        families.append((k, words))
    return _family_presentation(m.strands, families)


@dataclass(frozen=True)
class MeridianTable:
    """The meridians x_i(k) about each wire at each state, and y_i(k) just
    after vertex k; rows are states (1-based k), columns wires."""

    n: int
    x: tuple[tuple[FreeWord, ...], ...]
    y: tuple[tuple[FreeWord, ...], ...]

    def x_at(self, k: int, i: int) -> FreeWord:
        return self.x[k - 1][i - 1]

    def y_at(self, k: int, i: int) -> FreeWord:
        return self.y[k - 1][i - 1]


def meridians(w: BraidedWiringDiagram) -> MeridianTable:
    """Track the meridian generators through every vertex and braid.

    At a vertex the wires entering at heights j..j+r-1 (bottom to top, words
    g_1..g_r) leave with y-meridians g_1..g_{l} g_{l+1} (g_1..g_l)^-1; a
    braid letter conjugates adjacent meridians the same way the Artin action
    does.  x_i(k+1) is computed as psi_k applied to the braid image of t_q,
    where wire i sits at height q at state k+1.
    """
    n = w.n
    sts = states(w)
    by_height = vertex_wires_by_height(w)
    x_rows: list[tuple[FreeWord, ...]] = [
        tuple(FreeWord.generator(n, i) for i in range(1, n + 1))
    ]
    y_rows: list[tuple[FreeWord, ...]] = []
    for k in range(1, w.s + 1):
        xrow = x_rows[-1]
        incident = by_height[k - 1]  # wires bottom-to-top at the vertex
        y: list[FreeWord] = list(xrow)
        prefix = FreeWord.identity(n)
        for wire in incident:
            y[wire - 1] = prefix * xrow[wire - 1] * prefix.inverse()
            prefix = prefix * xrow[wire - 1]
        y_rows.append(tuple(y))
        # psi_k: t_q -> y-meridian of the wire at height q after the block flip
        v = w.vertices[k - 1]
        state = sts[k - 1]
        heights = list(range(1, n + 1))
        for h in v.heights():
            heights[h - 1] = v.low + v.high - h
        psi = FreeEndo(
            n, tuple(y[state.images[heights[q - 1] - 1] - 1].letters for q in range(1, n + 1))
        )
        braid = w.braids[k - 1]
        nxt = sts[k]
        new_x: list[FreeWord | None] = [None] * n
        for q in range(1, n + 1):
            i = nxt.images[q - 1]
            new_x[i - 1] = psi(artin_act(braid, FreeWord.generator(n, q)))
        x_rows.append(tuple(word for word in new_x if word is not None))
    return MeridianTable(n, tuple(x_rows), tuple(y_rows))


def _cyclic_family(rank: int, gens: Sequence[FreeWord]) -> list[FreeWord]:
    """The r-1 relators equating consecutive cyclic products of g_1..g_r."""
    r = len(gens)
    products = []
    for p in range(r):
        word = FreeWord.identity(rank)
        for t in range(r):
            word = word * gens[(p + t) % r]
        products.append(word)
    return [products[p] * products[p + 1].inverse() for p in range(r - 1)]


def arvola_presentation(w: BraidedWiringDiagram) -> Presentation:
    """Relator families [x_{i_1}(k), ..., x_{i_r}(k)] from the meridian sweep."""
    table = meridians(w)
    by_height = vertex_wires_by_height(w)
    families = []
    for k in range(1, w.s + 1):
        gens = [table.x_at(k, i) for i in by_height[k - 1]]
        families.append((k, _cyclic_family(w.n, gens)))
    return _family_presentation(w.n, families)


def _z_word(J: Sequence[int], i: int, hi: int) -> tuple[int, ...]:
    if not J or i < J[0] or i in J or i > hi:
        return ()
    if i > J[-1]:
        return tuple(J)
    return tuple(j for j in J if j < i)


def randell_conjugator(J: Sequence[int], hi: int, n: int) -> FreeEndo:
    """gamma_J: each generator conjugated by its own z-prefix of t_J."""
    js = sorted(J)
    images = []
    for i in range(1, n + 1):
        z = _z_word(js, i, hi)
        images.append(concat_reduce(z, (i,), invert_letters(z)))
    return FreeEndo(n, tuple(images))


def randell_presentation(w: BraidedWiringDiagram, conjugated_form: bool = False) -> Presentation:
    """The unbraided-diagram specialization with conjugators gamma_k.

    The default (family) form lists [gamma_k(t_{i_1}), ..., gamma_k(t_{i_r})]
    over the sorted vertex set.  The conjugated form instead emits
    gamma_k(t_V t_i t_V^-1) gamma_k(t_i)^-1 for every non-maximal i in V_k.
    """
    if not w.is_unbraided():
        raise DiagramError("the Randell specialization needs an unbraided diagram")
    from .wiring import vertex_sets

    vsets = vertex_sets(w)
    families = []
    for k in range(1, w.s + 1):
        vset = vsets[k - 1]
        gamma = randell_conjugator(j_set(w, k), max(vset), w.n)
        if conjugated_form:
            t_v = FreeWord.make(w.n, vset)
            words = []
            for i in vset[:-1]:
                lhs = gamma(t_v * FreeWord.generator(w.n, i) * t_v.inverse())
                words.append(lhs * gamma(FreeWord.generator(w.n, i)).inverse())
        else:
            gens = [gamma(FreeWord.generator(w.n, i)) for i in vset]
            words = _cyclic_family(w.n, gens)
        families.append((k, words))
    return _family_presentation(w.n, families)


# --- invariants -------------------------------------------------------------------

def smith_normal_form(rows: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal entries of the integer Smith normal form (nonzero ones)."""
    mat = [list(r) for r in rows]
    if not mat or not mat[0]:
        return []
    m, n = len(mat), len(mat[0])
    diag: list[int] = []
    top = 0
    while top < min(m, n):
        # find the smallest nonzero pivot in the remaining block
        pivot = None
        for r in range(top, m):
            for c in range(top, n):
                if mat[r][c] != 0 and (pivot is None or abs(mat[r][c]) < abs(mat[pivot[0]][pivot[1]])):
                    pivot = (r, c)
        if pivot is None:
            break
        r0, c0 = pivot
        mat[top], mat[r0] = mat[r0], mat[top]
        for r in range(m):
            mat[r][top], mat[r][c0] = mat[r][c0], mat[r][top]
        p = mat[top][top]
        dirty = False
        for r in range(top + 1, m):
            if mat[r][top] % p != 0:
                dirty = True
            q = mat[r][top] // p
            if q:
                for c in range(top, n):
                    mat[r][c] -= q * mat[top][c]
        for c in range(top + 1, n):
            if mat[top][c] % p != 0:
                dirty = True
            q = mat[top][c] // p
            if q:
                for r in range(top, m):
                    mat[r][c] -= q * mat[r][top]
        if dirty or any(mat[r][top] for r in range(top + 1, m)) or any(
            mat[top][c] for c in range(top + 1, n)
        ):
            continue  # refine the same corner again
        # enforce divisibility by folding any bad entry into the corner
        bad = None
        for r in range(top + 1, m):
            for c in range(top + 1, n):
                if mat[r][c] % p != 0:
                    bad = r
                    break
            if bad is not None:
                break
        if bad is not None:
            for c in range(top, n):
                mat[top][c] += mat[bad][c]
            continue
        diag.append(abs(p))
        top += 1
    return [d for d in diag if d != 0]


def abelianization(p: Presentation) -> tuple[int, tuple[int, ...]]:
    """Free rank and torsion coefficients of the abelianized group."""
    rows = [r.exponent_sums() for r in p.relators]
    diag = smith_normal_form(rows) if rows else []
    torsion = tuple(d for d in diag if d > 1)
    return p.rank - len(diag), torsion


_HOM_BUDGETS = {3: 9, 4: 6}
_CHUNK_SIZE = 1 << 20


def _sym_tables(k: int) -> tuple[np.ndarray, np.ndarray, int]:
    perms = []
    import itertools as it

    for p in it.permutations(range(k)):
        perms.append(p)
    order = len(perms)
    index = {p: i for i, p in enumerate(perms)}
    mul = np.zeros((order, order), dtype=np.int16)
    inv = np.zeros(order, dtype=np.int16)
    for a, pa in enumerate(perms):
        for b, pb in enumerate(perms):
            mul[a, b] = index[tuple(pa[pb[i]] for i in range(k))]
        inv[a] = index[tuple(sorted(range(k), key=lambda i: pa[i]))]
    return mul, inv, order


def hom_count(p: Presentation, k: int, budget: int = 500_000_000) -> int:
    """Number of homomorphisms of the presented group into Sym(k).

    Enumerates all generator tuples (not up to conjugacy), vectorized over
    chunks of the tuple space; raises when k! ** rank exceeds the budget.
    """
    if k < 1 or k > 4:
        raise ValueError("hom_count supports Sym(1)..Sym(4)")
    if p.rank > _HOM_BUDGETS.get(k, 0):
        raise ValueError(f"rank {p.rank} exceeds the Sym({k}) budget")
    mul, inv, order = _sym_tables(k)
    total = order ** p.rank
    if total > budget:
        raise ValueError(f"{total} tuples exceed the budget {budget}")
    relators = [r.letters for r in p.relators if r.letters]
    if not relators:
        return total
    count = 0
    for start in range(0, total, _CHUNK_SIZE):
        stop = min(start + _CHUNK_SIZE, total)
        idx = np.arange(start, stop, dtype=np.int64)
        digits = [
            ((idx // (order ** g)) % order).astype(np.int16) for g in range(p.rank)
        ]
        ok = np.ones(stop - start, dtype=bool)
        for letters in relators:
            acc = np.zeros(stop - start, dtype=np.int16)  # identity has index 0
            for x in letters:
                g = digits[abs(x) - 1]
                factor = g if x > 0 else inv[g]
                acc = mul[acc, factor]
            ok &= acc == 0
            if not ok.any():
                break
        count += int(ok.sum())
    return count


def tietze_simplify(p: Presentation, eliminate_generators: bool = False) -> Presentation:
    """Cheap cleanups: free and cyclic reduction, dropping empty and duplicate
    relators, and (optionally) eliminating a generator defined by a relator."""
    seen: set[tuple[int, ...]] = set()
    relators: list[FreeWord] = []
    tags: list[int] = []
    for r, tag in zip(p.relators, p.families):
        w = r.cyclically_reduced()
        if w.is_identity() or w.letters in seen:
            continue
        seen.add(w.letters)
        relators.append(w)
        tags.append(tag)
    result = Presentation(p.rank, tuple(relators), tuple(tags))
    if not eliminate_generators:
        return result
    return _eliminate(result)


def _eliminate(p: Presentation) -> Presentation:
    for idx, r in enumerate(p.relators):
        for pos, x in enumerate(r.letters):
            g = abs(x)
            rest = r.letters[pos + 1 :] + r.letters[:pos]
            if any(abs(y) == g for y in rest):
                continue
            # r says g = replacement (inverse of rest, oriented by the sign of x)
            repl = invert_letters(rest) if x > 0 else tuple(rest)
            images = []
            for i in range(1, p.rank + 1):
                if i == g:
                    images.append(repl)
                elif i < g:
                    images.append((i,))
                else:
                    images.append((i - 1,))
            # renumber generators above g down by one
            def renumber(letters: tuple[int, ...]) -> tuple[int, ...]:
                out = []
                for y in letters:
                    a = abs(y)
                    a = a if a < g else a - 1
                    out.append(a if y > 0 else -a)
                return tuple(out)

            sub = FreeEndo(p.rank, tuple(images))
            new_relators = []
            new_tags = []
            for j, other in enumerate(p.relators):
                if j == idx:
                    continue
                image = sub(other)
                word = FreeWord.make(p.rank - 1, renumber(image.letters)).cyclically_reduced()
                if not word.is_identity():
                    new_relators.append(word)
                    new_tags.append(p.families[j])
            return _eliminate(
                Presentation(p.rank - 1, tuple(new_relators), tuple(new_tags))
            )
    return p


# --- file format --------------------------------------------------------------------
#
#   gens <n>
#   # family k=<idx>
#   <relator word>


def serialize(p: Presentation) -> str:
    lines = [f"gens {p.rank}"]
    last_family = None
    for r, tag in zip(p.relators, p.families):
        if tag and tag != last_family:
            lines.append(f"# family k={tag}")
            last_family = tag
        lines.append(format_word(r))
    return "\n".join(lines) + "\n"


def parse(text: str) -> Presentation:
    rank: int | None = None
    relators: list[FreeWord] = []
    tags: list[int] = []
    family = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("family") and "=" in body:
                family = int(body.split("=", 1)[1])
            continue
        if line.startswith("gens"):
            rank = int(line.split()[1])
            continue
        if rank is None:
            raise ValueError(f"line {lineno}: relator before the gens header")
        relators.append(parse_word(line, rank))
        tags.append(family)
    if rank is None:
        raise ValueError("missing gens header")
    return Presentation(rank, tuple(relators), tuple(tags))
