"""Exact rational arithmetic, p-adic valuations and the quadratic Hecke ring.

Rationals are plain :class:`fractions.Fraction` values. Valuations are either a
``Fraction`` or ``math.inf``; half-integers appear in the supersingular case and
are never represented as floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Fraction
Valuation = Union[Fraction, float]  # float only ever holds math.inf
Scalar = Union[int, Fraction]

INF = math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be prime, got {p!r}")


def _vp_int(m: int, p: int) -> int:
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k


def vp(r: Scalar, p: int) -> Valuation:
    """Exponent of ``p`` in the rational ``r``; ``inf`` for zero."""
    _check_prime(p)
    r = Fraction(r)
    if r == 0:
        return INF
    return Fraction(_vp_int(r.numerator, p) - _vp_int(r.denominator, p))


def format_rational(r: Scalar) -> str:
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def parse_rational(s: str | int) -> Fraction:
    return Fraction(s)


def format_valuation(v: Valuation) -> str:
    if v == INF:
        return "inf"
    return format_rational(v)


@dataclass(frozen=True)
class QuadRing:
    """The ring Q[X]/(X^2 - ap*X + eps*p); ``alpha`` is the class of X."""

    ap: int
    eps: int
    p: int

    @property
    def norm_of_alpha(self) -> int:
        return self.eps * self.p

    def __call__(self, c0: Scalar = 0, c1: Scalar = 0) -> QuadElem:
        return QuadElem(c0, c1, self)

    @property
    def one(self) -> QuadElem:
        return QuadElem(1, 0, self)

    @property
    def zero(self) -> QuadElem:
        return QuadElem(0, 0, self)

    @property
    def alpha(self) -> QuadElem:
        return QuadElem(0, 1, self)

    @property
    def beta(self) -> QuadElem:
        return QuadElem(self.ap, -1, self)


class QuadElem:
    """``c0 + c1*alpha`` with exact rational coefficients."""

    __slots__ = ("c0", "c1", "ring")

    def __init__(self, c0: Scalar, c1: Scalar, ring: QuadRing) -> None:
        self.c0 = c0 if type(c0) is Fraction else Fraction(c0)
        self.c1 = c1 if type(c1) is Fraction else Fraction(c1)
        self.ring = ring

    def _coerce(self, other: object) -> QuadElem | None:
        if isinstance(other, QuadElem):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError(f"mixed contexts: {self.ring} and {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(other, 0, self.ring)
        return None

    def __add__(self, other: object) -> QuadElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.c0 + o.c0, self.c1 + o.c1, self.ring)

    __radd__ = __add__

    def __sub__(self, other: object) -> QuadElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.c0 - o.c0, self.c1 - o.c1, self.ring)

    def __rsub__(self, other: object) -> QuadElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> QuadElem:
        return QuadElem(-self.c0, -self.c1, self.ring)

    def __mul__(self, other: object) -> QuadElem:
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.c0 * other, self.c1 * other, self.ring)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # alpha^2 = ap*alpha - eps*p
        a, b, c, d = self.c0, self.c1, o.c0, o.c1
        bd = b * d
        return QuadElem(
            a * c - bd * self.ring.norm_of_alpha,
            a * d + b * c + bd * self.ring.ap,
            self.ring,
        )

    __rmul__ = __mul__

    def __pow__(self, k: int) -> QuadElem:
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other: object) -> QuadElem:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QuadElem(self.c0 / other, self.c1 / other, self.ring)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def inverse(self) -> QuadElem:
        """Inverse of a unit of the form rational or norm +-p^k.

        Other elements (in particular zero-divisors of a split ring) are refused.
        """
        if self.c1 == 0:
            if self.c0 == 0:
                raise ZeroDivisionError("division by zero")
            return QuadElem(1 / self.c0, 0, self.ring)
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError(f"{self!r} is a zero-divisor")
        m = abs(n)
        if m.denominator != 1 or m.numerator != self.ring.p ** _vp_int(m.numerator, self.ring.p):
            raise ZeroDivisionError(f"{self!r} has norm {n}, not +-p^k")
        return self.conj() / n

    def conj(self) -> QuadElem:
        return QuadElem(self.c0 + self.c1 * self.ring.ap, -self.c1, self.ring)

    def norm(self) -> Fraction:
        r = self.ring
        return self.c0 * self.c0 + r.ap * self.c0 * self.c1 + r.norm_of_alpha * self.c1 * self.c1

    def trace(self) -> Fraction:
        return 2 * self.c0 + self.ring.ap * self.c1

    def is_rational(self) -> bool:
        return self.c1 == 0

    def __bool__(self) -> bool:
        return bool(self.c0) or bool(self.c1)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadElem):
            return self.ring == other.ring and self.c0 == other.c0 and self.c1 == other.c1
        if isinstance(other, (int, Fraction)):
            return self.c1 == 0 and self.c0 == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.c0, self.c1, self.ring))

    def __repr__(self) -> str:
        return f"QuadElem({format_rational(self.c0)}, {format_rational(self.c1)})"

    def __str__(self) -> str:
        if self.c1 == 0:
            return format_rational(self.c0)
        a = format_rational(self.c1)
        if self.c0 == 0:
            return f"{a}*a" if self.c1 != 1 else "a"
        sign = "-" if self.c1 < 0 else "+"
        mag = format_rational(abs(self.c1))
        mag = "" if mag == "1" else f"{mag}*"
        return f"{format_rational(self.c0)} {sign} {mag}a"

    def to_json(self) -> dict[str, str]:
        return {"c0": format_rational(self.c0), "c1": format_rational(self.c1)}

    @classmethod
    def from_json(cls, data: dict[str, str], ring: QuadRing) -> QuadElem:
        return cls(Fraction(data["c0"]), Fraction(data["c1"]), ring)


def conj(x: QuadElem) -> QuadElem:
    return x.conj()


def norm(x: QuadElem) -> Fraction:
    return x.norm()


def trace(x: QuadElem) -> Fraction:
    return x.trace()


def quad_vp(x: QuadElem) -> Valuation:
    """Valuation of ``x`` in the ramified (supersingular) case: half of v_p(norm).

    In the ordinary case the Hecke polynomial splits over Z_p and the two roots
    have different valuations, so this formula is wrong; use
    :func:`padiclog.hecke.hensel_vp` there.
    """
    r = x.ring
    if r.ap % r.p != 0:
        raise ValueError("quad_vp needs a supersingular context (p | ap); use hecke.hensel_vp for ordinary ones")
    v = vp(x.norm(), r.p)
    return v if v == INF else v / 2
