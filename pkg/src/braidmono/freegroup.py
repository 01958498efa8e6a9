"""Reduced words in free groups, and endomorphisms given by generator images.

A word in the rank-n free group is stored as a tuple of nonzero integers:
``+i`` is the i-th generator, ``-i`` its inverse (1-indexed).  All public
constructors freely reduce, so equality of words is literal tuple equality.

Conventions, fixed here and inherited everywhere else in the package:
conjugation is ``x^y = y^-1 x y``, the commutator is ``[x,y] = x y x^-1 y^-1``,
and endomorphisms multiply as right actions: applying ``e1 * e2`` means
applying ``e1`` first, then ``e2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class RankMismatch(ValueError):
    """Operands live in free groups of different rank."""


def reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    """Freely reduce a letter sequence (cancel adjacent ``g g^-1`` pairs)."""
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_letters(letters: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(letters))


def concat_reduce(*parts: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for part in parts:
        for x in part:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def apply_images(images: Sequence[Sequence[int]], letters: Sequence[int]) -> tuple[int, ...]:
    """Substitute each letter by its image word (inverted for negative letters)."""
    out: list[int] = []
    for x in letters:
        img = images[x - 1] if x > 0 else invert_letters(images[-x - 1])
        for y in img:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word in the rank-`rank` free group."""

    rank: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        for x in self.letters:
            if x == 0 or abs(x) > self.rank:
                raise ValueError(f"letter {x} out of range for rank {self.rank}")

    @classmethod
    def make(cls, rank: int, letters: Iterable[int]) -> FreeWord:
        return cls(rank, reduce_letters(letters))

    @classmethod
    def identity(cls, rank: int) -> FreeWord:
        return cls(rank, ())

    @classmethod
    def generator(cls, rank: int, i: int) -> FreeWord:
        return cls(rank, (i,))

    def _check(self, other: FreeWord) -> None:
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} != {other.rank}")

    def __mul__(self, other: FreeWord) -> FreeWord:
        self._check(other)
        return FreeWord(self.rank, concat_reduce(self.letters, other.letters))

    def inverse(self) -> FreeWord:
        return FreeWord(self.rank, invert_letters(self.letters))

    def conjugate_by(self, other: FreeWord) -> FreeWord:
        """``self^other = other^-1 * self * other``."""
        self._check(other)
        return FreeWord(
            self.rank,
            concat_reduce(invert_letters(other.letters), self.letters, other.letters),
        )

    def commutator(self, other: FreeWord) -> FreeWord:
        """``[self, other] = self * other * self^-1 * other^-1``."""
        self._check(other)
        return FreeWord(
            self.rank,
            concat_reduce(
                self.letters,
                other.letters,
                invert_letters(self.letters),
                invert_letters(other.letters),
            ),
        )

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def exponent_sums(self) -> list[int]:
        """Image in Z^rank (letter signs summed per generator)."""
        sums = [0] * self.rank
        for x in self.letters:
            sums[abs(x) - 1] += 1 if x > 0 else -1
        return sums

    def cyclically_reduced(self) -> FreeWord:
        letters = list(self.letters)
        while len(letters) >= 2 and letters[0] == -letters[-1]:
            letters = letters[1:-1]
        return FreeWord(self.rank, tuple(letters))

    def __str__(self) -> str:
        return format_word(self)


@dataclass(frozen=True)
class FreeEndo:
    """Endomorphism of a free group, by images of the generators."""

    rank: int
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.rank:
            raise RankMismatch(f"expected {self.rank} images, got {len(self.images)}")

    @classmethod
    def identity(cls, rank: int) -> FreeEndo:
        return cls(rank, tuple((i,) for i in range(1, rank + 1)))

    @classmethod
    def from_words(cls, images: Sequence[FreeWord]) -> FreeEndo:
        if not images:
            raise ValueError("empty image list")
        rank = images[0].rank
        for w in images:
            if w.rank != rank:
                raise RankMismatch("images of mixed rank")
        return cls(rank, tuple(w.letters for w in images))

    def image_words(self) -> list[FreeWord]:
        return [FreeWord(self.rank, img) for img in self.images]

    def __call__(self, w: FreeWord) -> FreeWord:
        if w.rank != self.rank:
            raise RankMismatch(f"rank {w.rank} != {self.rank}")
        return FreeWord(self.rank, apply_images(self.images, w.letters))

    def __mul__(self, other: FreeEndo) -> FreeEndo:
        """Right-action product: ``(self * other)(w) == other(self(w))``."""
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} != {other.rank}")
        return FreeEndo(
            self.rank,
            tuple(apply_images(other.images, img) for img in self.images),
        )


def apply_endo(e: FreeEndo, w: FreeWord) -> FreeWord:
    return e(w)


def compose_endo(e1: FreeEndo, e2: FreeEndo) -> FreeEndo:
    """The product ``e1 * e2``: apply ``e1`` first, then ``e2``."""
    return e1 * e2


def delta_aut(s: int) -> FreeEndo:
    """The rank-s automorphism  x_k -> (x_1...x_{k-1}) x_k^-1 (x_1...x_{k-1})^-1.

    This is the free-group automorphism induced by complex conjugation on a
    punctured line whose punctures pair off under conjugation.
    """
    if s < 1:
        raise ValueError("rank must be >= 1")
    images = []
    prefix: list[int] = []
    for k in range(1, s + 1):
        images.append(tuple(prefix) + (-k,) + invert_letters(prefix))
        prefix.append(k)
    return FreeEndo(s, tuple(images))


_TOKEN = re.compile(r"([a-z]+)(\d+)(\^(-?\d+))?$")


def parse_word(text: str, rank: int, symbol: str | None = None) -> FreeWord:
    """Parse words like ``t1 t2^-1 t1``; generators may also be written x1..xs.

    Whitespace-separated tokens multiply left to right; ``^e`` is an integer
    power suffix.  When `symbol` is given, only that generator letter is
    accepted.
    """
    letters: list[int] = []
    seen_symbol = symbol
    for tok in text.split():
        m = _TOKEN.match(tok)
        if m is None:
            raise ValueError(f"bad generator token {tok!r}")
        sym, idx_s, _, exp_s = m.groups()
        if seen_symbol is None:
            seen_symbol = sym
        if sym != seen_symbol:
            raise ValueError(f"mixed generator symbols {seen_symbol!r} and {sym!r}")
        idx = int(idx_s)
        if not 1 <= idx <= rank:
            raise ValueError(f"generator index {idx} out of range 1..{rank}")
        exp = 1 if exp_s is None else int(exp_s)
        letters.extend([idx if exp > 0 else -idx] * abs(exp))
    return FreeWord.make(rank, letters)


def format_word(w: FreeWord, symbol: str = "t") -> str:
    if not w.letters:
        return "1"
    parts = []
    for x in w.letters:
        parts.append(f"{symbol}{x}" if x > 0 else f"{symbol}{-x}^-1")
    return " ".join(parts)
