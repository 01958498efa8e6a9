"""Exact arithmetic over a quadratic extension of the rationals.

A RealQuad is p + q*sqrt(t) with rational p, q and a fixed square-free t >= 0
shared by every scalar of one arrangement.  Sign is decided exactly by
rational comparisons, never by approximation.  A negative field discriminant d
in input files maps to t = |d| with the generator read as i*sqrt(t), so the
real and imaginary parts of every coefficient live in the same real field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class FieldMismatch(ValueError):
    """Scalars from different quadratic fields were mixed."""


class DivisionByZero(ZeroDivisionError):
    """Exact division by an exactly-zero scalar."""


def _square_free(t: int) -> bool:
    if t < 0:
        return False
    d = 2
    while d * d <= t:
        if t % (d * d) == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class RealQuad:
    """p + q*sqrt(t), canonically with q = 0 whenever t <= 1."""

    p: Fraction
    q: Fraction
    t: int

    def __post_init__(self) -> None:
        if not _square_free(self.t):
            raise FieldMismatch(f"t = {self.t} is not a non-negative square-free integer")
        if self.t <= 1 and self.q != 0:
            # sqrt(0) = 0 and sqrt(1) = 1 fold into the rational part
            object.__setattr__(self, "p", self.p + self.q * self.t)
            object.__setattr__(self, "q", Fraction(0))

    @classmethod
    def of(cls, p: Fraction | int | str, q: Fraction | int | str = 0, t: int = 1) -> RealQuad:
        return cls(Fraction(p), Fraction(q), t)

    @classmethod
    def zero(cls, t: int = 1) -> RealQuad:
        return cls(Fraction(0), Fraction(0), t)

    def _join(self, other: RealQuad) -> int:
        if self.t == other.t:
            return self.t
        if self.q == 0:
            return other.t
        if other.q == 0:
            return self.t
        raise FieldMismatch(f"mixed fields sqrt({self.t}) and sqrt({other.t})")

    def __add__(self, other: RealQuad) -> RealQuad:
        t = self._join(other)
        return RealQuad(self.p + other.p, self.q + other.q, t)

    def __sub__(self, other: RealQuad) -> RealQuad:
        t = self._join(other)
        return RealQuad(self.p - other.p, self.q - other.q, t)

    def __neg__(self) -> RealQuad:
        return RealQuad(-self.p, -self.q, self.t)

    def __mul__(self, other: RealQuad) -> RealQuad:
        t = self._join(other)
        return RealQuad(
            self.p * other.p + self.q * other.q * t,
            self.p * other.q + self.q * other.p,
            t,
        )

    def scale(self, r: Fraction | int) -> RealQuad:
        r = Fraction(r)
        return RealQuad(self.p * r, self.q * r, self.t)

    def inverse(self) -> RealQuad:
        # (p + q sqrt t)(p - q sqrt t) = p^2 - q^2 t; zero only for p = q = 0
        # because sqrt(t) is irrational for square-free t >= 2 and q folds
        # into p for t <= 1.
        norm = self.p * self.p - self.q * self.q * self.t
        if norm == 0:
            raise DivisionByZero("inverse of zero")
        return RealQuad(self.p / norm, -self.q / norm, self.t)

    def __truediv__(self, other: RealQuad) -> RealQuad:
        return self * other.inverse()

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def sign(self) -> int:
        """Exact sign of p + q*sqrt(t)."""
        if self.q == 0:
            return (self.p > 0) - (self.p < 0)
        if self.p == 0:
            return 1 if self.q > 0 else -1
        if self.p > 0 and self.q > 0:
            return 1
        if self.p < 0 and self.q < 0:
            return -1
        # mixed signs: compare p^2 against q^2 t
        lhs, rhs = self.p * self.p, self.q * self.q * self.t
        if lhs == rhs:
            return 0
        bigger_is_p = lhs > rhs
        return (1 if self.p > 0 else -1) if bigger_is_p else (1 if self.q > 0 else -1)

    def __lt__(self, other: RealQuad) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: RealQuad) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: RealQuad) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: RealQuad) -> bool:
        return (self - other).sign() >= 0

    def __str__(self) -> str:
        if self.q == 0:
            return str(self.p)
        return f"{self.p}+{self.q}*sqrt({self.t})"


def sign(x: RealQuad) -> int:
    return x.sign()


@dataclass(frozen=True)
class ComplexQuad:
    """re + im*i with both parts in the same real quadratic field."""

    re: RealQuad
    im: RealQuad

    @classmethod
    def of(
        cls,
        re_p: Fraction | int | str,
        re_q: Fraction | int | str = 0,
        im_p: Fraction | int | str = 0,
        im_q: Fraction | int | str = 0,
        t: int = 1,
    ) -> ComplexQuad:
        return cls(RealQuad.of(re_p, re_q, t), RealQuad.of(im_p, im_q, t))

    @classmethod
    def zero(cls, t: int = 1) -> ComplexQuad:
        return cls(RealQuad.zero(t), RealQuad.zero(t))

    @classmethod
    def one(cls, t: int = 1) -> ComplexQuad:
        return cls(RealQuad.of(1, 0, t), RealQuad.zero(t))

    def __add__(self, other: ComplexQuad) -> ComplexQuad:
        return ComplexQuad(self.re + other.re, self.im + other.im)

    def __sub__(self, other: ComplexQuad) -> ComplexQuad:
        return ComplexQuad(self.re - other.re, self.im - other.im)

    def __neg__(self) -> ComplexQuad:
        return ComplexQuad(-self.re, -self.im)

    def __mul__(self, other: ComplexQuad) -> ComplexQuad:
        return ComplexQuad(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def scale(self, r: Fraction | int) -> ComplexQuad:
        return ComplexQuad(self.re.scale(r), self.im.scale(r))

    def conjugate(self) -> ComplexQuad:
        return ComplexQuad(self.re, -self.im)

    def inverse(self) -> ComplexQuad:
        norm = self.re * self.re + self.im * self.im
        if norm.is_zero():
            raise DivisionByZero("inverse of complex zero")
        inv = norm.inverse()
        return ComplexQuad(self.re * inv, -(self.im * inv))

    def __truediv__(self, other: ComplexQuad) -> ComplexQuad:
        return self * other.inverse()

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def is_real(self) -> bool:
        return self.im.is_zero()

    def __str__(self) -> str:
        return f"({self.re})+({self.im})i"


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {text!r}") from exc
