"""Hecke context (p, a_p, eps), 2x2 matrices, the companion and root matrices,
and Hensel lifting of the unit root in the ordinary case."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterator

from .exact import INF, QuadElem, QuadRing, Valuation, is_prime, vp

ORDINARY = "ordinary"
SUPERSINGULAR = "supersingular"


@dataclass(frozen=True)
class HeckeData:
    """Arithmetic context for the Hecke polynomial X^2 - ap*X + eps*p.

    ``alpha`` always denotes the generator of :attr:`ring`. In the ordinary case
    it is declared to be the unit root; in the supersingular case the labelling
    is a convention (swapping roots swaps the columns of every root matrix).
    """

    p: int
    ap: int
    eps: int = 1
    n_max: int = 12

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p!r}")
        if not isinstance(self.ap, int):
            raise ValueError(f"ap must be an integer, got {self.ap!r}")
        if self.eps not in (1, -1):
            raise ValueError(f"eps must be +1 or -1, got {self.eps!r}")
        if self.n_max < 1:
            raise ValueError(f"n_max must be positive, got {self.n_max!r}")

    @property
    def ring(self) -> QuadRing:
        return QuadRing(self.ap, self.eps, self.p)

    @property
    def alpha(self) -> QuadElem:
        return self.ring.alpha

    @property
    def beta(self) -> QuadElem:
        return self.ring.beta

    @property
    def is_ordinary(self) -> bool:
        return self.ap % self.p != 0

    @property
    def root_offset(self) -> int:
        """Extra power of C^{-1} in R_n: 2 for odd p, 3 for p = 2."""
        return 3 if self.p == 2 else 2

    def to_json(self) -> dict[str, int]:
        return {"p": self.p, "ap": self.ap, "eps": self.eps}

    @classmethod
    def from_json(cls, data: dict[str, Any], n_max: int = 12) -> HeckeData:
        return cls(int(data["p"]), int(data["ap"]), int(data["eps"]), n_max)


def classify(ctx: HeckeData) -> str:
    return ORDINARY if ctx.is_ordinary else SUPERSINGULAR


class Mat2:
    """Immutable 2x2 matrix over any commutative ring supporting + - *.

    Entries are stored row-major as ``(a, b, c, d)`` for [[a, b], [c, d]].
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: Any, b: Any, c: Any, d: Any) -> None:
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def from_rows(cls, rows: Any) -> Mat2:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls, one: Any, zero: Any) -> Mat2:
        return cls(one, zero, zero, one)

    def rows(self) -> tuple[tuple[Any, Any], tuple[Any, Any]]:
        return ((self.a, self.b), (self.c, self.d))

    def __iter__(self) -> Iterator[Any]:
        return iter((self.a, self.b, self.c, self.d))

    def map(self, f: Callable[[Any], Any]) -> Mat2:
        return Mat2(f(self.a), f(self.b), f(self.c), f(self.d))

    def __matmul__(self, o: Mat2) -> Mat2:
        if not isinstance(o, Mat2):
            return NotImplemented
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __add__(self, o: Mat2) -> Mat2:
        return Mat2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o: Mat2) -> Mat2:
        return Mat2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __neg__(self) -> Mat2:
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def scale(self, s: Any) -> Mat2:
        return Mat2(self.a * s, self.b * s, self.c * s, self.d * s)

    def det(self) -> Any:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> Mat2:
        det = self.det()
        return Mat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def swap_columns(self) -> Mat2:
        return Mat2(self.b, self.a, self.d, self.c)

    def column(self, j: int) -> tuple[Any, Any]:
        return (self.a, self.c) if j == 0 else (self.b, self.d)

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, Mat2):
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.c == o.c and self.d == o.d

    def __hash__(self) -> int:
        return hash(tuple(self))

    def __repr__(self) -> str:
        return f"Mat2([[{self.a!r}, {self.b!r}], [{self.c!r}, {self.d!r}]])"

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def quad_mat(ring: QuadRing, rows: Any) -> Mat2:
    """Build a QuadMat2 from rows of ints, Fractions or QuadElems."""
    (a, b), (c, d) = rows

    def lift(x: Any) -> QuadElem:
        return x if isinstance(x, QuadElem) else QuadElem(x, 0, ring)

    return Mat2(lift(a), lift(b), lift(c), lift(d))


def quad_mat_power(m: Mat2, k: int, ring: QuadRing) -> Mat2:
    if k < 0:
        return quad_mat_power(m.inverse(), -k, ring)
    result = Mat2.identity(ring.one, ring.zero)
    for _ in range(k):
        result = result @ m
    return result


def companion(ctx: HeckeData) -> Mat2:
    """C = [[ap, 1], [-eps*p, 0]]."""
    return quad_mat(ctx.ring, ((ctx.ap, 1), (-ctx.eps * ctx.p, 0)))


def companion_inverse(ctx: HeckeData) -> Mat2:
    s = Fraction(1, ctx.eps * ctx.p)
    return quad_mat(ctx.ring, ((0, -s), (1, ctx.ap * s)))


def root_seed(ctx: HeckeData) -> Mat2:
    """[[-1, -1], [beta, alpha]]."""
    r = ctx.ring
    return Mat2(-r.one, -r.one, r.beta, r.alpha)


@lru_cache(maxsize=None)
def root_matrix(ctx: HeckeData, n: int) -> Mat2:
    """R_n = C^{-(offset + n)} [[-1, -1], [beta, alpha]], offset 2 (p odd) or 3 (p = 2)."""
    if n < 0:
        raise ValueError(f"depth n must be >= 0, got {n}")
    if n == 0:
        m = root_seed(ctx)
        cinv = companion_inverse(ctx)
        for _ in range(ctx.root_offset):
            m = cinv @ m
        return m
    return companion_inverse(ctx) @ root_matrix(ctx, n - 1)


def root_matrix_closed_form(ctx: HeckeData, n: int) -> Mat2:
    """Power-of-roots expression for R_n.

    With k = offset + n this is (eps*p)^{-k} [[-beta^k, -alpha^k], [beta^{k+1}, alpha^{k+1}]].
    The sign eps^k matters: for eps = -1 and odd k the version with p^{-k} alone
    differs from the C-power definition by -1.
    """
    if n < 0:
        raise ValueError(f"depth n must be >= 0, got {n}")
    k = ctx.root_offset + n
    a, b = ctx.alpha, ctx.beta
    s = Fraction(1, (ctx.eps * ctx.p) ** k)
    return Mat2(-(b**k) * s, -(a**k) * s, b ** (k + 1) * s, a ** (k + 1) * s)


def hecke_poly_mod(ctx: HeckeData, x: int, modulus: int) -> int:
    return (x * x - ctx.ap * x + ctx.eps * ctx.p) % modulus


def hensel_unit_root(ctx: HeckeData, N: int) -> int:
    """The unit root of X^2 - ap*X + eps*p modulo p^N, as an integer in [0, p^N).

    Lifted one p-adic digit at a time starting from ap mod p.
    """
    if not ctx.is_ordinary:
        raise ValueError("hensel_unit_root needs an ordinary context (p does not divide ap)")
    if N < 1:
        raise ValueError(f"precision N must be >= 1, got {N}")
    p = ctx.p
    x = ctx.ap % p
    # f'(x) = 2x - ap = ap mod p, a unit
    dinv = pow(ctx.ap % p, -1, p)
    pk = p
    for _ in range(1, N):
        f = x * x - ctx.ap * x + ctx.eps * p
        t = (-(f // pk) * dinv) % p
        x += t * pk
        pk *= p
    return x % pk


class InsufficientPrecision(ArithmeticError):
    """The embedded value vanished mod p^N; retry with a larger N."""


def rational_unit_root(ctx: HeckeData) -> int | None:
    """The unit root when the Hecke polynomial splits over Q, else None."""
    disc = ctx.ap * ctx.ap - 4 * ctx.eps * ctx.p
    if disc < 0:
        return None
    s = math.isqrt(disc)
    if s * s != disc:
        return None
    for r in ((ctx.ap + s) // 2, (ctx.ap - s) // 2):
        if r % ctx.p != 0:
            return r
    return None


def hensel_vp(x: QuadElem, ctx: HeckeData, N: int) -> Valuation:
    """v_p of ``x`` under the embedding alpha -> unit root in Z_p.

    Raises :class:`InsufficientPrecision` when the embedded value is 0 mod p^N
    although ``x`` is nonzero. If the polynomial splits over Q the unit root is
    an integer and the answer is exact (possibly ``inf`` for a zero-divisor).
    """
    if not ctx.is_ordinary:
        raise ValueError("hensel_vp needs an ordinary context; use exact.quad_vp for supersingular ones")
    if not x:
        return INF
    p = ctx.p
    r = rational_unit_root(ctx)
    if r is not None:
        return vp(x.c0 + x.c1 * r, p)
    k = min(vp(x.c0, p), vp(x.c1, p))
    shift = Fraction(p) ** -int(k)
    c0, c1 = x.c0 * shift, x.c1 * shift
    mod = p**N
    u = hensel_unit_root(ctx, N)
    t = (c0.numerator * pow(c0.denominator, -1, mod) + c1.numerator * pow(c1.denominator, -1, mod) * u) % mod
    if t == 0:
        raise InsufficientPrecision(f"embedded value of {x!r} is 0 mod {p}^{N}")
    return k + vp(t, p)


def hensel_vp_auto(x: QuadElem, ctx: HeckeData, N: int = 8, limit: int = 512) -> Valuation:
    """:func:`hensel_vp` with precision doubled until it resolves."""
    while True:
        try:
            return hensel_vp(x, ctx, N)
        except InsufficientPrecision:
            if N >= limit:
                raise
            N *= 2
