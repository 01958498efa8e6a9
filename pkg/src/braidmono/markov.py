"""Markov moves on braided wiring diagrams and braid-equivalence witnesses.

The moves rewrite a diagram without changing the braid-equivalence class of
its monodromy: global braid insertions at either end, exchange of adjacent
vertices (with compensating braids when they share a height), free reduction
of intermediate braids, and slides of a crossing through a vertex.

Braid words are written so that their first letter is the crossing farthest
from the basepoint; "insert X, then vertex" therefore splices X's word at the
*left* end of the written slot preceding the vertex, and a trailing insertion
goes at the right end of the following slot.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

from .braid import BraidWord, Permutation, StrandMismatch, artin_act, braids_equal, perm
from .freegroup import FreeWord
from .monodromy import MonodromyList
from .wiring import BraidedWiringDiagram, DiagramError, VertexEvent, validate


class MovePrecondition(ValueError):
    """The chosen Markov move does not apply at the chosen position."""


MOVE_KINDS = ("1", "2", "3a", "3b", "3c", "4", "5a", "5b", "5c", "5d")


@dataclass(frozen=True)
class MoveSpec:
    """A Markov move: its kind, position, payload braid, and crossing parity.

    `position` is the (1-based) index of the first affected vertex for kinds
    3 and 5, and the braid slot for kind 4 (0 = initial braid, k = braid
    after vertex k).  `braid` is the inserted word for kinds 1 and 2.
    `parity` is +1 as printed, -1 for the switched-crossing variants of
    kinds 3 and 5.
    """

    kind: str
    position: int = 0
    braid: BraidWord | None = None
    parity: int = 1

    def __post_init__(self) -> None:
        if self.kind not in MOVE_KINDS:
            raise MovePrecondition(f"unknown move kind {self.kind!r}")
        if self.kind in ("1", "2") and self.braid is None:
            raise MovePrecondition(f"move {self.kind} needs a braid payload")
        if self.parity not in (1, -1):
            raise MovePrecondition("parity must be +1 or -1")


@dataclass(frozen=True)
class EquivalenceWitness:
    """A pair (psi in B_s, phi in B_n) certifying braid-equivalence."""

    psi: BraidWord
    phi: BraidWord


@dataclass(frozen=True)
class MoveEffect:
    """Declared effect of a move on the monodromy list.

    kind is one of "conjugate" (by `braid`), "identity", or "precompose"
    (by sigma_{position}^{sign} of B_s acting through the Artin action).
    """

    kind: str
    position: int = 0
    sign: int = 1
    braid: BraidWord | None = None

    def predict(self, m: MonodromyList) -> MonodromyList:
        if self.kind == "identity":
            return m
        if self.kind == "conjugate":
            assert self.braid is not None
            return MonodromyList(
                m.strands,
                tuple(lam.conjugate_by(self.braid) for lam in m.values),
                m.vertex_sets,
            )
        k = self.position
        values = list(m.values)
        vsets = list(m.vertex_sets)
        if self.sign > 0:
            # lambda-hat = lambda o sigma_k
            values[k - 1 : k + 1] = [
                m.values[k - 1] * m.values[k] * m.values[k - 1].inverse(),
                m.values[k - 1],
            ]
        else:
            values[k - 1 : k + 1] = [
                m.values[k],
                m.values[k].inverse() * m.values[k - 1] * m.values[k],
            ]
        vsets[k - 1], vsets[k] = vsets[k], vsets[k - 1]
        return MonodromyList(m.strands, tuple(values), tuple(vsets))

    def witness(self, s: int, n: int) -> EquivalenceWitness:
        """A witness with ``witness_check(before, after, w)`` true."""
        if self.kind == "conjugate":
            assert self.braid is not None
            return EquivalenceWitness(BraidWord.identity(s), self.braid)
        if self.kind == "identity":
            return EquivalenceWitness(BraidWord.identity(s), BraidWord.identity(n))
        return EquivalenceWitness(
            BraidWord(s, (-self.sign * self.position,)), BraidWord.identity(n)
        )


def _written_insert_before_vertex(w: BraidedWiringDiagram, k: int, word: BraidWord) -> BraidedWiringDiagram:
    """Splice `word` immediately before vertex k in traversal order."""
    if k == 1:
        return replace(w, initial_braid=word * w.initial_braid)
    braids = list(w.braids)
    braids[k - 2] = word * braids[k - 2]
    return replace(w, braids=tuple(braids))


def _written_insert_after_vertex(w: BraidedWiringDiagram, k: int, word: BraidWord) -> BraidedWiringDiagram:
    """Splice `word` immediately after vertex k in traversal order."""
    braids = list(w.braids)
    braids[k - 1] = braids[k - 1] * word
    return replace(w, braids=tuple(braids))


def _descending(n: int, top: int, bottom: int, sign: int) -> BraidWord:
    if top < bottom:
        return BraidWord.identity(n)
    return BraidWord(n, tuple(sign * i for i in range(top, bottom - 1, -1)))


def _ascending(n: int, bottom: int, top: int, sign: int) -> BraidWord:
    if bottom > top:
        return BraidWord.identity(n)
    return BraidWord(n, tuple(sign * i for i in range(bottom, top + 1)))


def apply_move(w: BraidedWiringDiagram, m: MoveSpec) -> BraidedWiringDiagram:
    """Apply one Markov move; the result is validated before it is returned."""
    result = _apply_move(w, m)
    validate(result)
    return result


def _apply_move(w: BraidedWiringDiagram, m: MoveSpec) -> BraidedWiringDiagram:
    if m.kind == "1":
        assert m.braid is not None
        if m.braid.strands != w.n:
            raise MovePrecondition("inserted braid has the wrong strand count")
        return replace(w, initial_braid=w.initial_braid * m.braid)
    if m.kind == "2":
        assert m.braid is not None
        if m.braid.strands != w.n:
            raise MovePrecondition("inserted braid has the wrong strand count")
        braids = list(w.braids)
        if braids:
            braids[-1] = m.braid * braids[-1]
            return replace(w, braids=tuple(braids))
        return replace(w, initial_braid=m.braid * w.initial_braid)
    if m.kind in ("3a", "3b", "3c"):
        return _apply_move3(w, m)
    if m.kind == "4":
        k = m.position
        if k == 0:
            return replace(w, initial_braid=w.initial_braid.free_reduce())
        if not 1 <= k <= w.s:
            raise MovePrecondition(f"braid slot {k} out of range 0..{w.s}")
        braids = list(w.braids)
        braids[k - 1] = braids[k - 1].free_reduce()
        return replace(w, braids=tuple(braids))
    return _apply_move5(w, m)


def _apply_move3(w: BraidedWiringDiagram, m: MoveSpec) -> BraidedWiringDiagram:
    k = m.position
    if not 1 <= k < w.s:
        raise MovePrecondition(f"move 3 needs adjacent vertices, position {k} invalid")
    if w.braids[k - 1].letters:
        raise MovePrecondition(f"braid between vertices {k} and {k + 1} is not trivial")
    first, second = w.vertices[k - 1], w.vertices[k]
    i, j = first.low, first.high
    kk, ll = second.low, second.high
    vertices = list(w.vertices)
    if m.kind == "3a":
        if not (j < kk or i > ll):
            raise MovePrecondition(
                f"blocks {i}..{j} and {kk}..{ll} are not disjoint (need j<k or i>l)"
            )
        vertices[k - 1], vertices[k] = second, first
        return replace(w, vertices=tuple(vertices))
    p = m.parity
    if m.kind == "3b":
        if j != kk:
            raise MovePrecondition(f"move 3b needs j = k, got blocks {i}..{j}, {kk}..{ll}")
        groups1 = [_descending(w.n, kk + g, i + 1 + g, p) for g in range(ll - kk)]
        groups2 = [_descending(w.n, kk - 1 + g, i + g, -p) for g in range(ll - kk)]
        new_first = VertexEvent(i, ll - kk + 1)
        new_second = VertexEvent(i + ll - kk, j - i + 1)
    else:
        if i != ll:
            raise MovePrecondition(f"move 3c needs i = l, got blocks {i}..{j}, {kk}..{ll}")
        groups1 = [_descending(w.n, i - 1 + g, kk + g, p) for g in range(j - i)]
        groups2 = [_descending(w.n, i + g, kk + 1 + g, -p) for g in range(j - i)]
        new_first = VertexEvent(j + kk - ll, ll - kk + 1)
        new_second = VertexEvent(kk, j - i + 1)
    before = BraidWord.identity(w.n)
    for g in groups1:
        before = before * g
    after = BraidWord.identity(w.n)
    for g in groups2:
        after = after * g
    vertices[k - 1], vertices[k] = new_first, new_second
    out = replace(w, vertices=tuple(vertices))
    out = _written_insert_before_vertex(out, k, before)
    return _written_insert_after_vertex(out, k + 1, after)


def _apply_move5(w: BraidedWiringDiagram, m: MoveSpec) -> BraidedWiringDiagram:
    k = m.position
    if not 1 <= k <= w.s:
        raise MovePrecondition(f"vertex index {k} out of range 1..{w.s}")
    slot = w.initial_braid if k == 1 else w.braids[k - 2]
    if not slot.letters:
        raise MovePrecondition(f"no braid letter precedes vertex {k}")
    letter = slot.letters[0]  # written-leftmost = adjacent to the vertex
    if (letter > 0) != (m.parity > 0):
        raise MovePrecondition(
            f"adjacent crossing sign {'+' if letter > 0 else '-'} does not match parity"
        )
    i = abs(letter)
    v = w.vertices[k - 1]
    j, kk = v.low, v.high
    rest = BraidWord(w.n, slot.letters[1:])
    if k == 1:
        out = replace(w, initial_braid=rest)
    else:
        braids = list(w.braids)
        braids[k - 2] = rest
        out = replace(w, braids=tuple(braids))
    p = 1 if letter > 0 else -1
    vertices = list(out.vertices)
    if m.kind == "5a":
        if not (i < j - 1 or i > kk):
            raise MovePrecondition(f"move 5a needs i<j-1 or i>k, got i={i}, block {j}..{kk}")
        return _written_insert_after_vertex(out, k, BraidWord(w.n, (letter,)))
    if m.kind == "5b":
        if i != kk:
            raise MovePrecondition(f"move 5b needs i = k, got i={i}, block {j}..{kk}")
        vertices[k - 1] = VertexEvent(j + 1, v.size)
        out = replace(out, vertices=tuple(vertices))
        out = _written_insert_before_vertex(out, k, _ascending(w.n, j, kk - 1, -p))
        return _written_insert_after_vertex(out, k, _descending(w.n, kk, j, p))
    if m.kind == "5c":
        if i != j - 1:
            raise MovePrecondition(f"move 5c needs i = j-1, got i={i}, block {j}..{kk}")
        vertices[k - 1] = VertexEvent(j - 1, v.size)
        out = replace(out, vertices=tuple(vertices))
        out = _written_insert_before_vertex(out, k, _descending(w.n, kk - 1, j, -p))
        return _written_insert_after_vertex(out, k, _ascending(w.n, j - 1, kk - 1, p))
    if not j <= i <= kk - 1:
        raise MovePrecondition(f"move 5d needs j <= i <= k-1, got i={i}, block {j}..{kk}")
    return _written_insert_after_vertex(out, k, BraidWord(w.n, (p * (j + kk - i - 1),)))


def move_effect(m: MoveSpec) -> MoveEffect:
    """Declared monodromy effect; verified constructively by the test suite."""
    if m.kind == "1":
        return MoveEffect("conjugate", braid=m.braid)
    if m.kind in ("2", "4", "5a", "5b", "5c", "5d"):
        return MoveEffect("identity")
    if m.kind == "3a":
        return MoveEffect("precompose", position=m.position, sign=1)
    if m.kind == "3b":
        return MoveEffect("precompose", position=m.position, sign=m.parity)
    return MoveEffect("precompose", position=m.position, sign=-m.parity)


def witness_check(
    m: MonodromyList, m2: MonodromyList, w: EquivalenceWitness, flipped: bool = False
) -> bool:
    """Whether (psi, phi) certifies  m2(psi(g)) = phi^-1 m(g) phi  for all g.

    With `flipped` the conjugation runs the other way (phi m phi^-1), the
    alternative reading of the equivalence square.
    """
    if m.s != m2.s or m.strands != m2.strands:
        return False
    if w.psi.strands != m.s:
        raise StrandMismatch(f"psi on {w.psi.strands} strands, monodromies have s={m.s}")
    if w.phi.strands != m.strands:
        raise StrandMismatch(f"phi on {w.phi.strands} strands, braids have n={m.strands}")
    phi_inv = w.phi.inverse()
    for k in range(1, m.s + 1):
        image = artin_act(w.psi, FreeWord.generator(m.s, k))
        lhs = m2.evaluate(image)
        if flipped:
            rhs = w.phi * m.values[k - 1] * phi_inv
        else:
            rhs = phi_inv * m.values[k - 1] * w.phi
        if not braids_equal(lhs, rhs):
            return False
    return True


def _perm_compatible(m: MonodromyList, m2: MonodromyList, psi: BraidWord, phi: BraidWord) -> bool:
    """Necessary condition from the vertex sets: V2_{pi(k)} = rho(V_k)."""
    if not all(m.vertex_sets) or not all(m2.vertex_sets):
        return True  # untagged generators: nothing to prune with
    pi = perm(psi)
    rho = perm(phi)
    for k in range(1, m.s + 1):
        mapped = tuple(sorted(rho(i) for i in m.vertex_sets[k - 1]))
        if m2.vertex_sets[pi(k) - 1] != mapped:
            return False
    return True


def _words_of_length(strands: int, length: int):
    gens = [g for i in range(1, strands) for g in (i, -i)]
    for letters in itertools.product(gens, repeat=length):
        yield BraidWord(strands, letters)


def bounded_search(
    m: MonodromyList, m2: MonodromyList, max_len: int = 2
) -> EquivalenceWitness | None:
    """Iterative-deepening search for a braid-equivalence witness.

    Candidates are pruned by the vertex-set condition (the lattice invariant
    behind Theorem-7.2-style reasoning) before the oracle runs.  A None
    result is inconclusive, never a proof of inequivalence.
    """
    if m.s != m2.s or m.strands != m2.strands:
        return None
    from .lattice import VertexMap, lattice_isomorphic

    if all(m.vertex_sets) and all(m2.vertex_sets):
        va = VertexMap(m.strands, m.vertex_sets)
        vb = VertexMap(m2.strands, m2.vertex_sets)
        if lattice_isomorphic(va, vb) is None:
            return None
    for depth in range(max_len + 1):
        for psi_len in range(depth + 1):
            phi_len = depth - psi_len
            for psi in _words_of_length(m.s, psi_len):
                for phi in _words_of_length(m.strands, phi_len):
                    if not _perm_compatible(m, m2, psi, phi):
                        continue
                    w = EquivalenceWitness(psi, phi)
                    if witness_check(m, m2, w):
                        return w
    return None
