"""Braid monodromy of a braided wiring diagram, two ways.

The recursion: with conjugating braids beta_1 = beta_{0,1} and
beta_{k+1} = beta_{k,k+1} * mu_{I_k} * beta_k, the k-th monodromy generator is
the conjugated full twist  lambda_k = A_{I_k}^{beta_k}.

For unbraided diagrams the Cordovil-Fachada closed form gives the same braids
directly in wire labels:  lambda_k = B_{J_k}^-1 A_{V_k} B_{J_k}.  Both paths
are implemented and cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braid import (
    BraidWord,
    PureBraidWord,
    b_j_word,
    braids_equal,
    conj_set,
    delta_sq,
    epsilon,
    format_braid,
    format_pure,
    half_twist,
    parse_braid,
    twist,
)
from .freegroup import FreeWord
from .wiring import BraidedWiringDiagram, DiagramError, j_set, states, vertex_sets


@dataclass(frozen=True)
class MonodromyList:
    """Braid monodromy generators lambda_1..lambda_s, tagged with vertex sets.

    Position k stands for the free generator x_k of F_s; evaluating the list
    on a word of F_s maps x_k to lambda_k multiplicatively.
    """

    strands: int
    values: tuple[BraidWord, ...]
    vertex_sets: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.vertex_sets):
            raise ValueError("one vertex set per generator required")
        for b in self.values:
            if b.strands != self.strands:
                raise ValueError("generator strand count mismatch")

    @property
    def s(self) -> int:
        return len(self.values)

    def evaluate(self, w: FreeWord) -> BraidWord:
        """Extend x_k -> lambda_k over a word of F_s."""
        if w.rank != self.s:
            raise ValueError(f"word rank {w.rank} != {self.s} generators")
        out = BraidWord.identity(self.strands)
        for x in w.letters:
            lam = self.values[abs(x) - 1]
            out = out * (lam if x > 0 else lam.inverse())
        return out


def conjugators(w: BraidedWiringDiagram) -> list[BraidWord]:
    """The braids beta_1..beta_s carrying the basepoint fiber to each vertex."""
    beta = w.initial_braid
    out = [beta]
    for k in range(w.s - 1):
        mu = half_twist(w.vertices[k].heights(), w.n)
        beta = w.braids[k] * mu * beta
        out.append(beta)
    return out


def monodromy(w: BraidedWiringDiagram) -> MonodromyList:
    """lambda_k = beta_k^-1 * A_{I_k} * beta_k, as explicit braid words."""
    betas = conjugators(w)
    values = []
    for k in range(w.s):
        local_twist = twist(w.vertices[k].heights(), w.n).expand()
        values.append(local_twist.conjugate_by(betas[k]))
    return MonodromyList(w.n, tuple(values), tuple(vertex_sets(w)))


def monodromy_pure(
    w: BraidedWiringDiagram,
) -> list[tuple[tuple[int, ...], PureBraidWord]]:
    """Each lambda_k rewritten as A_{V_k}^{C_k} with C_k a pure braid word."""
    betas = conjugators(w)
    out = []
    for k in range(w.s):
        vset, conj = conj_set(w.vertices[k].heights(), betas[k])
        out.append((vset, conj))
    return out


def cf_monodromy(w: BraidedWiringDiagram) -> MonodromyList:
    """Closed-form generators  B_{J_k}^-1 A_{V_k} B_{J_k}  of an unbraided diagram."""
    if not w.is_unbraided():
        raise DiagramError("closed form applies to unbraided diagrams only")
    vsets = vertex_sets(w)
    values = []
    for k in range(w.s):
        conj = b_j_word(j_set(w, k + 1), vsets[k], w.n)
        values.append(twist(vsets[k], w.n).expand().conjugate_by(conj))
    return MonodromyList(w.n, tuple(values), tuple(vsets))


def cf_jsets(w: BraidedWiringDiagram) -> list[tuple[int, ...]]:
    return [j_set(w, k) for k in range(1, w.s + 1)]


def infinity_check(m: MonodromyList) -> bool:
    """Whether lambda_1 ... lambda_s is the full twist (curve transverse to infinity)."""
    if m.strands < 2:
        return False
    product = BraidWord.identity(m.strands)
    for lam in m.values:
        product = product * lam
    return braids_equal(product, delta_sq(m.strands))


def conjugate_relation_check(m: MonodromyList, mbar: MonodromyList) -> bool:
    """The crossing-reversal relation between conjugate diagrams:

        lambdabar_k = eps( (lambda_k^-1) ^ (lambda_{k-1}^-1 ... lambda_1^-1) ).
    """
    if m.s != mbar.s or m.strands != mbar.strands:
        return False
    prefix = BraidWord.identity(m.strands)  # lambda_{k-1}^-1 ... lambda_1^-1
    for k in range(m.s):
        expected = epsilon(m.values[k].inverse().conjugate_by(prefix))
        if not braids_equal(mbar.values[k], expected):
            return False
        prefix = m.values[k].inverse() * prefix
    return True


def conjugate_equivalence_check(m: MonodromyList, mbar: MonodromyList) -> bool:
    """The equivalence of conjugate monodromies:  mbar o delta_s = eps_n o m.

    delta_s(x_k) = (x_1..x_{k-1}) x_k^-1 (x_1..x_{k-1})^-1, so the left side is
    the product  lambdabar_1..lambdabar_{k-1} lambdabar_k^-1 (same prefix)^-1.
    """
    if m.s != mbar.s or m.strands != mbar.strands:
        return False
    prefix = BraidWord.identity(m.strands)  # lambdabar_1 ... lambdabar_{k-1}
    for k in range(m.s):
        lhs = prefix * mbar.values[k].inverse() * prefix.inverse()
        if not braids_equal(lhs, epsilon(m.values[k])):
            return False
        prefix = prefix * mbar.values[k]
    return True


# --- file format ---------------------------------------------------------------
#
#   # n = <strands>
#   # V = {i1,...,ir}
#   <braid word>          (one generator per line, after its V comment)


def serialize(m: MonodromyList, pure: bool = False, w: BraidedWiringDiagram | None = None) -> str:
    """One generator per line.  With ``pure`` the conjugated-twist form is written:
    J-set superscripts when `w` is an unbraided diagram, explicit pure
    conjugators otherwise.
    """
    lines = [f"# n = {m.strands}"]
    if pure and w is not None and w.is_unbraided():
        vsets = vertex_sets(w)
        for k in range(w.s):
            lines.append(f"# V = {{{','.join(map(str, vsets[k]))}}}")
            lines.append(format_cf_generator(vsets[k], j_set(w, k + 1)))
    elif pure and w is not None:
        for vset, conj in monodromy_pure(w):
            lines.append(f"# V = {{{','.join(map(str, vset))}}}")
            base = f"A[{','.join(map(str, vset))}]"
            lines.append(base if not conj.factors else f"{base}^{{{format_pure(conj)}}}")
    else:
        for vset, lam in zip(m.vertex_sets, m.values):
            lines.append(f"# V = {{{','.join(map(str, vset))}}}")
            lines.append(format_braid(lam))
    return "\n".join(lines) + "\n"


def format_cf_generator(vset: tuple[int, ...], jset: tuple[int, ...]) -> str:
    base = f"A[{','.join(map(str, vset))}]"
    if not jset:
        return base
    return f"{base}^{{{{{','.join(map(str, jset))}}}}}"


def parse_monodromy(text: str) -> MonodromyList:
    n: int | None = None
    values: list[BraidWord] = []
    vsets: list[tuple[int, ...]] = []
    pending_vset: tuple[int, ...] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("n") and "=" in body:
                n = int(body.split("=", 1)[1].strip())
            elif body.startswith("V") and "=" in body:
                inner = body.split("=", 1)[1].strip().strip("{}")
                pending_vset = tuple(int(v) for v in inner.split(",") if v)
            continue
        if n is None:
            raise ValueError(f"line {lineno}: braid word before the '# n =' header")
        values.append(parse_braid(line, n))
        vsets.append(pending_vset if pending_vset is not None else ())
        pending_vset = None
    if n is None:
        raise ValueError("missing '# n =' header")
    return MonodromyList(n, tuple(values), tuple(vsets))
