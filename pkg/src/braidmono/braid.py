"""Braid words, the Artin action, and the pure-braid rewriting machinery.

Braid words are tuples of nonzero integers: ``+i`` is the Artin generator
sigma_i, ``-i`` its inverse.  Products act left to right, in the same
right-action convention as :mod:`braidmono.freegroup`: the automorphism of a
word ``u v`` applies ``u`` first, then ``v``.

Equality of braids is decided through the Artin representation, which is
faithful: two words are equal iff they act identically on the free-group
generators.  No normal form is ever computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .freegroup import (
    FreeEndo,
    FreeWord,
    RankMismatch,
    apply_images,
    concat_reduce,
    invert_letters,
    reduce_letters,
)


class StrandMismatch(ValueError):
    """Operands live in braid groups with different strand counts."""


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}, stored as the image tuple (1-indexed)."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def apply_set(self, indices: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(self.images[i - 1] for i in indices))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(tuple(inv))

    def then(self, other: Permutation) -> Permutation:
        """Apply self first, then other."""
        if self.n != other.n:
            raise StrandMismatch(f"{self.n} != {other.n}")
        return Permutation(tuple(other.images[x - 1] for x in self.images))

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images, start=1))


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of the n-strand braid group."""

    strands: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise ValueError(f"letter {x} out of range for {self.strands} strands")

    @classmethod
    def identity(cls, n: int) -> BraidWord:
        return cls(n, ())

    @classmethod
    def sigma(cls, n: int, i: int, sign: int = 1) -> BraidWord:
        return cls(n, (i if sign > 0 else -i,))

    def _check(self, other: BraidWord) -> None:
        if self.strands != other.strands:
            raise StrandMismatch(f"{self.strands} strands != {other.strands}")

    def __mul__(self, other: BraidWord) -> BraidWord:
        self._check(other)
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def conjugate_by(self, other: BraidWord) -> BraidWord:
        """``self^other = other^-1 * self * other``."""
        self._check(other)
        return other.inverse() * self * other

    def free_reduce(self) -> BraidWord:
        return BraidWord(self.strands, reduce_letters(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_braid(self)


# --- the Artin representation -------------------------------------------------

def _apply_sigma(k: int, letters: Sequence[int]) -> tuple[int, ...]:
    """Substitute one braid letter (sigma_k if k>0, else its inverse) into a word."""
    out: list[int] = []
    if k > 0:
        lo, hi = k, k + 1
        # sigma_k: t_k -> t_k t_{k+1} t_k^-1,  t_{k+1} -> t_k
        for x in letters:
            if x == lo:
                img = (lo, hi, -lo)
            elif x == -lo:
                img = (lo, -hi, -lo)
            elif x == hi:
                img = (lo,)
            elif x == -hi:
                img = (-lo,)
            else:
                img = (x,)
            for y in img:
                if out and out[-1] == -y:
                    out.pop()
                else:
                    out.append(y)
    else:
        lo, hi = -k, -k + 1
        # sigma_k^-1: t_k -> t_{k+1},  t_{k+1} -> t_{k+1}^-1 t_k t_{k+1}
        for x in letters:
            if x == lo:
                img = (hi,)
            elif x == -lo:
                img = (-hi,)
            elif x == hi:
                img = (-hi, lo, hi)
            elif x == -hi:
                img = (-hi, -lo, hi)
            else:
                img = (x,)
            for y in img:
                if out and out[-1] == -y:
                    out.pop()
                else:
                    out.append(y)
    return tuple(out)


def artin_act_letters(braid_letters: Sequence[int], letters: Sequence[int]) -> tuple[int, ...]:
    word = tuple(letters)
    for k in braid_letters:
        word = _apply_sigma(k, word)
    return word


def artin_act(b: BraidWord, w: FreeWord) -> FreeWord:
    """Image of `w` under the braid automorphism of `b` (letters applied left to right)."""
    if w.rank != b.strands:
        raise RankMismatch(f"word rank {w.rank} != {b.strands} strands")
    return FreeWord(b.strands, artin_act_letters(b.letters, w.letters))


_CHUNK = 16


def braid_endo(b: BraidWord) -> FreeEndo:
    """The braid automorphism of `b` as a free-group endomorphism.

    Long words are folded in chunks and the chunk endomorphisms composed;
    intermediate images stay close to their final size this way, which is
    dramatically faster than letter-by-letter folding of each generator.
    """
    n = b.strands
    gens = [(i,) for i in range(1, n + 1)]
    if len(b.letters) <= _CHUNK:
        return FreeEndo(n, tuple(artin_act_letters(b.letters, g) for g in gens))
    images: tuple[tuple[int, ...], ...] = tuple(gens)
    for start in range(0, len(b.letters), _CHUNK):
        chunk = b.letters[start : start + _CHUNK]
        chunk_images = tuple(artin_act_letters(chunk, g) for g in gens)
        images = tuple(apply_images(chunk_images, img) for img in images)
    return FreeEndo(n, images)


def braids_equal(a: BraidWord, b: BraidWord) -> bool:
    """Exact braid equality via faithfulness of the Artin representation."""
    if a.strands != b.strands:
        raise StrandMismatch(f"{a.strands} strands != {b.strands}")
    if a.letters == b.letters:
        return True
    # Compare images of the difference with the identity: one fold, not two.
    return is_trivial_braid(a * b.inverse())


def is_trivial_braid(b: BraidWord) -> bool:
    endo = braid_endo(b)
    return all(img == (i,) for i, img in enumerate(endo.images, start=1))


def perm(b: BraidWord) -> Permutation:
    """Underlying permutation, tracking strand positions left to right."""
    images = list(range(1, b.strands + 1))
    for x in b.letters:
        k = abs(x) - 1
        images[k], images[k + 1] = images[k + 1], images[k]
    # images[] above tracks contents of positions; convert to entry->exit map.
    out = [0] * b.strands
    for pos, strand in enumerate(images, start=1):
        out[strand - 1] = pos
    return Permutation(tuple(out))


def epsilon(b: BraidWord) -> BraidWord:
    """Flip the sign of every crossing (the mirror automorphism of B_n)."""
    return BraidWord(b.strands, tuple(-x for x in b.letters))


def delta_sq(n: int) -> BraidWord:
    """The full twist (sigma_1 ... sigma_{n-1})^n, generating the center of B_n."""
    if n < 2:
        raise ValueError("full twist needs at least 2 strands")
    row = tuple(range(1, n))
    return BraidWord(n, row * n)


def half_twist(indices: Iterable[int], n: int) -> BraidWord:
    """Half twist mu_I on a contiguous height block I = {j..j+r-1}.

    mu_I = (s_j..s_{j+r-2})(s_j..s_{j+r-3})...(s_j s_{j+1})(s_j); mu_I^2 is the
    full twist A_I on the block.
    """
    block = sorted(set(indices))
    if len(block) < 2:
        raise ValueError("half twist needs a block of size >= 2")
    if block != list(range(block[0], block[-1] + 1)):
        raise ValueError(f"half twist needs a contiguous block, got {block}")
    j = block[0]
    r = len(block)
    letters: list[int] = []
    for top in range(j + r - 2, j - 1, -1):
        letters.extend(range(j, top + 1))
    return BraidWord(n, tuple(letters))


def pure_gen(i: int, j: int, n: int) -> BraidWord:
    """The pure braid generator  A_{i,j} = s_{j-1}..s_{i+1} s_i^2 s_{i+1}^-1..s_{j-1}^-1."""
    if not 1 <= i < j <= n:
        raise ValueError(f"need 1 <= i < j <= n, got ({i},{j}) with n={n}")
    prefix = tuple(range(j - 1, i, -1))
    return BraidWord(n, prefix + (i, i) + tuple(-k for k in reversed(prefix)))


@dataclass(frozen=True)
class PureBraidWord:
    """A word in the generators A_{i,j} of the pure braid group.

    Factors are (i, j, e) with 1 <= i < j <= n and e = +-1.
    """

    strands: int
    factors: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        for i, j, e in self.factors:
            if not (1 <= i < j <= self.strands) or e not in (1, -1):
                raise ValueError(f"bad pure factor ({i},{j},{e}) for n={self.strands}")

    @classmethod
    def identity(cls, n: int) -> PureBraidWord:
        return cls(n, ())

    def __mul__(self, other: PureBraidWord) -> PureBraidWord:
        if self.strands != other.strands:
            raise StrandMismatch(f"{self.strands} != {other.strands}")
        return PureBraidWord(self.strands, self.factors + other.factors)

    def inverse(self) -> PureBraidWord:
        return PureBraidWord(
            self.strands, tuple((i, j, -e) for i, j, e in reversed(self.factors))
        )

    def expand(self) -> BraidWord:
        letters: list[int] = []
        for i, j, e in self.factors:
            gen = pure_gen(i, j, self.strands)
            letters.extend(gen.letters if e > 0 else gen.inverse().letters)
        return BraidWord(self.strands, tuple(letters))

    def __len__(self) -> int:
        return len(self.factors)


def twist(indices: Iterable[int], n: int) -> PureBraidWord:
    """The twist braid A_I = (A_{i1,i2})(A_{i1,i3}A_{i2,i3})...(A_{i1,ir}..A_{i_{r-1},ir}).

    Unordered input is sorted first.  For I = {1..n} this expands to the full
    twist on n strands.
    """
    block = sorted(set(indices))
    if len(block) < 2:
        raise ValueError("twist braid needs at least 2 indices")
    factors = []
    for b_pos in range(1, len(block)):
        for a_pos in range(b_pos):
            factors.append((block[a_pos], block[b_pos], 1))
    return PureBraidWord(n, tuple(factors))


# --- conjugation rewriting ----------------------------------------------------
#
# The conjugation action of a braid letter on a pure generator:
#
#   A_{i,j}^{s_k}      = A_{i-1,j}                if k = i-1
#                      = A_{i+1,j}^{A_{i,i+1}}    if k = i < j-1
#                      = A_{i,j-1}                if k = j-1 > i
#                      = A_{i,j+1}^{A_{j,j+1}}    if k = j
#                      = A_{i,j}                  otherwise
#
#   A_{i,j}^{s_k^-1}   = A_{i-1,j}^{A_{i-1,i}^-1} if k = i-1
#                      = A_{i+1,j}                if k = i < j-1
#                      = A_{i,j-1}^{A_{j-1,j}^-1} if k = j-1 > i
#                      = A_{i,j+1}                if k = j
#                      = A_{i,j}                  otherwise
#
# moving an index up with a positive letter (or down with a negative one)
# costs a conjugator; the opposite direction is free.


def _conj_factor(factor: tuple[int, int, int], k: int) -> list[tuple[int, int, int]]:
    """Rewrite one pure factor conjugated by one braid letter, per the table above."""
    i, j, e = factor
    if k > 0:
        if k == i - 1:
            return [(i - 1, j, e)]
        if k == i and i < j - 1:
            return [(i, i + 1, -1), (i + 1, j, e), (i, i + 1, 1)]
        if k == j - 1 and j - 1 > i:
            return [(i, j - 1, e)]
        if k == j:
            return [(j, j + 1, -1), (i, j + 1, e), (j, j + 1, 1)]
        return [factor]
    k = -k
    if k == i - 1:
        return [(i - 1, i, 1), (i - 1, j, e), (i - 1, i, -1)]
    if k == i and i < j - 1:
        return [(i + 1, j, e)]
    if k == j - 1 and j - 1 > i:
        return [(j - 1, j, 1), (i, j - 1, e), (j - 1, j, -1)]
    if k == j:
        return [(i, j + 1, e)]
    return [factor]


def conj_pure_by_letter(p: PureBraidWord, k: int) -> PureBraidWord:
    """``p^{s_k}`` rewritten factor by factor back into pure generators."""
    factors: list[tuple[int, int, int]] = []
    for f in p.factors:
        factors.extend(_conj_factor(f, k))
    # drop the adjacent inverse pairs the sandwiching tends to create
    reduced: list[tuple[int, int, int]] = []
    for f in factors:
        if reduced and reduced[-1][:2] == f[:2] and reduced[-1][2] == -f[2]:
            reduced.pop()
        else:
            reduced.append(f)
    return PureBraidWord(p.strands, tuple(reduced))


def conj_set(indices: Iterable[int], b: BraidWord) -> tuple[tuple[int, ...], PureBraidWord]:
    """Rewrite ``A_I^b`` as ``A_{w(I)}^C`` with C a pure braid word.

    Processes `b` one letter at a time.  A letter s_k moves the twist's index
    set by the transposition (k,k+1); when the moved index travels against the
    crossing it picks up an ``A_{k,k+1}^{+-1}`` conjugator, and the previously
    collected conjugator is itself rewritten through the letter.
    """
    current = set(indices)
    if len(current) < 2:
        raise ValueError("index set must have size >= 2")
    conj = PureBraidWord.identity(b.strands)
    for x in b.letters:
        k = abs(x)
        in_k = k in current
        in_k1 = (k + 1) in current
        new_factor: tuple[int, int, int] | None = None
        if in_k != in_k1:
            if x > 0 and in_k:
                new_factor = (k, k + 1, 1)
            elif x < 0 and in_k1:
                new_factor = (k, k + 1, -1)
            if in_k:
                current.remove(k)
                current.add(k + 1)
            else:
                current.remove(k + 1)
                current.add(k)
        conj = conj_pure_by_letter(conj, x)
        if new_factor is not None:
            conj = PureBraidWord(b.strands, (new_factor,) + conj.factors)
    return tuple(sorted(current)), conj


# --- closed-form Artin action of conjugated twists (Cordovil-Fachada form) ----

def _product_word(indices: Sequence[int]) -> tuple[int, ...]:
    return tuple(indices)


def twist_action(
    V: Iterable[int], J: Iterable[int], i: int, n: int
) -> FreeWord:
    """Image of t_i under ``A_V^J = B_J^-1 A_V B_J``, in closed form.

    With V = {i_1 < ... < i_r}, t_V = t_{i_1}..t_{i_r}, and Vbar the integer
    interval [i_1, i_r]:

      * i in V:              z^-1 g(t_V t_i t_V^-1) z
      * i in Vbar - (V u J): z^-1 g([t_{V<i}, t_{V>i}] t_i [...]^-1) z
      * i in J or i outside: t_i

    where z = z_{J,i} is trivial below min J, the partial product t_{J<i}
    strictly inside the J interval, and the full t_J above max J (up to max V);
    g conjugates every generator by its own z.
    """
    vs = sorted(set(V))
    js = sorted(set(J))
    if set(js) & set(vs):
        raise ValueError(f"J {js} meets V {vs}")
    if len(vs) < 2:
        raise ValueError("V must have size >= 2")
    if not 1 <= i <= n:
        raise ValueError(f"index {i} out of range 1..{n}")
    lo, hi = vs[0], vs[-1]
    if js and not all(lo < j < hi for j in js):
        raise ValueError(f"J {js} not inside the V interval ({lo},{hi})")

    def z_of(m: int) -> tuple[int, ...]:
        if not js or m < js[0] or m in js or m > hi:
            return ()
        if m > js[-1]:
            return tuple(js)
        return tuple(j for j in js if j < m)

    def gamma(letters: Sequence[int]) -> tuple[int, ...]:
        out: tuple[int, ...] = ()
        for x in letters:
            z = z_of(abs(x))
            out = concat_reduce(out, z, (x,), invert_letters(z))
        return out

    if i in js or not lo <= i <= hi:
        return FreeWord(n, (i,))
    z_i = z_of(i)
    if i in vs:
        core = _product_word(vs) + (i,) + invert_letters(_product_word(vs))
    else:
        below = tuple(v for v in vs if v < i)
        above = tuple(v for v in vs if v > i)
        comm = concat_reduce(below, above, invert_letters(below), invert_letters(above))
        core = concat_reduce(comm, (i,), invert_letters(comm))
    letters = concat_reduce(invert_letters(z_i), gamma(core), z_i)
    return FreeWord(n, letters)


# --- grammar -------------------------------------------------------------------
#
# Tokens: s<i>, A[i,j], A[i1,...,ir], mu[i,j], D2; postfix ^-1 or ^<int>;
# conjugation X^{ <braid word> }; J-set X^{{j1,...}}; juxtaposition = product.


class BraidSyntaxError(ValueError):
    """Malformed braid word text."""


def format_braid(b: BraidWord) -> str:
    if not b.letters:
        return "1"
    return " ".join(f"s{x}" if x > 0 else f"s{-x}^-1" for x in b.letters)


def format_pure(p: PureBraidWord) -> str:
    if not p.factors:
        return "1"
    parts = []
    for i, j, e in p.factors:
        parts.append(f"A[{i},{j}]" if e > 0 else f"A[{i},{j}]^-1")
    return " ".join(parts)


class _Scanner:
    def __init__(self, text: str, n: int):
        self.text = text
        self.pos = 0
        self.n = n

    def error(self, msg: str) -> BraidSyntaxError:
        return BraidSyntaxError(f"{msg} at column {self.pos + 1} in {self.text!r}")

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def read_int(self) -> int:
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def read_index_list(self) -> list[int]:
        self.expect("[")
        indices = [self.read_int()]
        while self.peek() == ",":
            self.pos += 1
            indices.append(self.read_int())
        self.expect("]")
        return indices

    def parse_word(self, stop_at_brace: bool = False) -> BraidWord:
        result = BraidWord.identity(self.n)
        while True:
            self.skip_ws()
            if self.pos >= len(self.text):
                break
            if stop_at_brace and self.peek() == "}":
                break
            result = result * self.parse_atom()
        return result

    def parse_atom(self) -> BraidWord:
        ch = self.peek()
        twist_indices: list[int] | None = None
        if ch == "1":
            self.pos += 1
            base = BraidWord.identity(self.n)
        elif ch == "s":
            self.pos += 1
            i = self.read_int()
            if not 1 <= i < self.n:
                raise self.error(f"generator index {i} out of range for n={self.n}")
            base = BraidWord(self.n, (i,))
        elif ch == "A":
            self.pos += 1
            twist_indices = self.read_index_list()
            base = twist(twist_indices, self.n).expand()
        elif ch == "m":
            if not self.text.startswith("mu", self.pos):
                raise self.error("expected 'mu'")
            self.pos += 2
            indices = self.read_index_list()
            if len(indices) != 2:
                raise self.error("mu takes a [low,high] pair")
            base = half_twist(range(indices[0], indices[1] + 1), self.n)
        elif ch == "D":
            if not self.text.startswith("D2", self.pos):
                raise self.error("expected 'D2'")
            self.pos += 2
            base = delta_sq(self.n)
        else:
            raise self.error(f"unexpected character {ch!r}")
        # postfix chain: ^-1, ^<int>, ^{word}, ^{{j-set}}
        while self.peek() == "^":
            self.pos += 1
            if self.peek() == "{":
                self.pos += 1
                if self.peek() == "{":
                    if twist_indices is None:
                        raise self.error("J-set superscript is only valid on an A[...] atom")
                    self.pos += 1
                    js = [self.read_int()]
                    while self.peek() == ",":
                        self.pos += 1
                        js.append(self.read_int())
                    self.expect("}")
                    self.expect("}")
                    conj = b_j_word(js, twist_indices, self.n)
                else:
                    conj = self.parse_word(stop_at_brace=True)
                    self.expect("}")
                base = base.conjugate_by(conj)
            else:
                e = self.read_int()
                if e == 0:
                    base = BraidWord.identity(self.n)
                elif e > 0:
                    base = BraidWord(self.n, base.letters * e)
                else:
                    base = BraidWord(self.n, base.inverse().letters * (-e))
            twist_indices = None
        return base


def b_j_word(J: Sequence[int], V: Sequence[int], n: int) -> BraidWord:
    """The Cordovil-Fachada conjugator B_J = prod A_{j,i} (j in J, i in V, j < i).

    Factors are ordered as a subword of the expansion of the full twist
    A_{1..n}: second index ascending, then first index ascending.
    """
    factors = sorted(
        ((j, i) for j in J for i in V if j < i),
        key=lambda f: (f[1], f[0]),
    )
    word = PureBraidWord(n, tuple((a, b, 1) for a, b in factors))
    return word.expand()


def parse_braid(text: str, n: int) -> BraidWord:
    """Parse the braid-word grammar into a word on `n` strands."""
    scanner = _Scanner(text.strip(), n)
    result = scanner.parse_word()
    scanner.skip_ws()
    if scanner.pos != len(scanner.text):
        raise scanner.error("trailing input")
    return result
