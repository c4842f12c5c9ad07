"""Digit form of the distribution matrix mu on cosets b + p^n Z_p.

The value on b + p^n Z_p is Y_0 Y_1 ... Y_{n-1} R_n, where Y_i is the chromatic
matrix of the i-th base-p digit of b: [[ap, 1], [-eps, 0]] for a zero digit and
[[0, 0], [-eps, 0]] for any nonzero digit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exact import QuadElem, QuadRing, Scalar
from .hecke import HeckeData, Mat2, quad_mat, root_matrix

FIRST_COLUMN_ONLY = "first-column-certified"
CONSECUTIVE_NONZERO = "consecutive-nonzero-digits"


@dataclass(frozen=True)
class DigitString:
    p: int
    n: int
    digits: tuple[int, ...]
    b: int

    def nonzero_positions(self) -> list[int]:
        return [i for i, d in enumerate(self.digits) if d]

    def has_adjacent_nonzero(self) -> bool:
        return any(x and y for x, y in zip(self.digits, self.digits[1:]))


@dataclass(frozen=True)
class RunStructure:
    """Lengths m_1..m_l of the zero-runs around the l-1 nonzero digits."""

    runs: tuple[int, ...]

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.runs)

    @property
    def nonzero_count(self) -> int:
        return len(self.runs) - 1

    def pattern(self) -> list[bool]:
        """Nonzero mask rebuilt from the runs."""
        out: list[bool] = []
        for i, m in enumerate(self.runs):
            if i:
                out.append(True)
            out.extend([False] * m)
        return out


def digits(b: int, n: int, p: int) -> DigitString:
    """Base-p digits of b mod p^n, least significant first."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    b %= p**n
    ds = []
    r = b
    for _ in range(n):
        r, d = divmod(r, p)
        ds.append(d)
    return DigitString(p, n, tuple(ds), b)


def run_structure(d: DigitString) -> RunStructure:
    runs = [0]
    for digit in d.digits:
        if digit:
            runs.append(0)
        else:
            runs[-1] += 1
    return RunStructure(tuple(runs))


def chromatic(digit: int, ctx: HeckeData) -> Mat2:
    if not 0 <= digit < ctx.p:
        raise ValueError(f"digit {digit} out of range for p={ctx.p}")
    if digit == 0:
        return quad_mat(ctx.ring, ((ctx.ap, 1), (-ctx.eps, 0)))
    return quad_mat(ctx.ring, ((0, 0), (-ctx.eps, 0)))


def digit_product(ctx: HeckeData, b: int, n: int) -> Mat2:
    """Y_0 ... Y_{n-1}, the part of mu in front of R_n."""
    ds = digits(b, n, ctx.p)
    zero_digit, nonzero_digit = chromatic(0, ctx), chromatic(1, ctx)
    m = Mat2.identity(ctx.ring.one, ctx.ring.zero)
    for d in ds.digits:
        m = m @ (nonzero_digit if d else zero_digit)
    return m


@dataclass(frozen=True)
class DistributionValue:
    matrix: Mat2
    ctx: HeckeData
    b: int
    n: int
    flags: tuple[str, ...] = field(default=())

    @property
    def digit_string(self) -> DigitString:
        return digits(self.b, self.n, self.ctx.p)

    @property
    def runs(self) -> RunStructure:
        return run_structure(self.digit_string)


def _check_n(ctx: HeckeData, n: int) -> None:
    if not 1 <= n <= ctx.n_max:
        raise ValueError(f"n must satisfy 1 <= n <= n_max={ctx.n_max}, got {n}")


def mu(ctx: HeckeData, b: int, n: int) -> DistributionValue:
    """Value of the distribution matrix on b + p^n Z_p.

    In the ordinary case both columns are returned, flagged so that callers
    know only the first one carries the characterization.
    """
    _check_n(ctx, n)
    b %= ctx.p**n
    m = digit_product(ctx, b, n) @ root_matrix(ctx, n)
    flags = []
    if ctx.is_ordinary:
        flags.append(FIRST_COLUMN_ONLY)
    if digits(b, n, ctx.p).has_adjacent_nonzero():
        flags.append(CONSECUTIVE_NONZERO)
    return DistributionValue(m, ctx, b, n, tuple(flags))


def total_mass(ctx: HeckeData) -> Mat2:
    """mu(Z_p), as the sum of the p values on b + pZ_p."""
    vals = [mu(ctx, b, 1).matrix for b in range(ctx.p)]
    out = vals[0]
    for v in vals[1:]:
        out = out + v
    return out


class TensorElem:
    """Element of Q(alpha1) (x) Q(alpha2) on the basis 1, a1, a2, a1*a2."""

    __slots__ = ("c", "r1", "r2")

    def __init__(self, c: tuple[Scalar, Scalar, Scalar, Scalar], r1: QuadRing, r2: QuadRing) -> None:
        self.c = tuple(Fraction(x) for x in c)
        self.r1, self.r2 = r1, r2

    @classmethod
    def pure(cls, x: QuadElem, y: QuadElem) -> TensorElem:
        return cls((x.c0 * y.c0, x.c1 * y.c0, x.c0 * y.c1, x.c1 * y.c1), x.ring, y.ring)

    def _same(self, o: TensorElem) -> None:
        if (self.r1, self.r2) != (o.r1, o.r2):
            raise ValueError("mixed tensor rings")

    def _coerce(self, o: Any) -> TensorElem | None:
        if isinstance(o, TensorElem):
            self._same(o)
            return o
        if isinstance(o, (int, Fraction)):
            return TensorElem((o, 0, 0, 0), self.r1, self.r2)
        return None

    def __add__(self, o: Any) -> TensorElem:
        t = self._coerce(o)
        if t is None:
            return NotImplemented
        return TensorElem(tuple(a + b for a, b in zip(self.c, t.c)), self.r1, self.r2)

    __radd__ = __add__

    def __neg__(self) -> TensorElem:
        return TensorElem(tuple(-a for a in self.c), self.r1, self.r2)

    def __sub__(self, o: Any) -> TensorElem:
        t = self._coerce(o)
        if t is None:
            return NotImplemented
        return self + (-t)

    def _halves(self) -> tuple[QuadElem, QuadElem]:
        # self = u + v*a2 with u, v in Q(a1)
        c = self.c
        return QuadElem(c[0], c[1], self.r1), QuadElem(c[2], c[3], self.r1)

    def __mul__(self, o: Any) -> TensorElem:
        if isinstance(o, (int, Fraction)):
            return TensorElem(tuple(a * o for a in self.c), self.r1, self.r2)
        t = self._coerce(o)
        if t is None:
            return NotImplemented
        u1, v1 = self._halves()
        u2, v2 = t._halves()
        # a2^2 = ap2*a2 - eps2*p2
        vv = v1 * v2
        u = u1 * u2 - vv * self.r2.norm_of_alpha
        v = u1 * v2 + v1 * u2 + vv * self.r2.ap
        return TensorElem((u.c0, u.c1, v.c0, v.c1), self.r1, self.r2)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return any(self.c)

    def __eq__(self, o: object) -> bool:
        if isinstance(o, TensorElem):
            return (self.r1, self.r2) == (o.r1, o.r2) and self.c == o.c
        if isinstance(o, (int, Fraction)):
            return self.c == (Fraction(o), 0, 0, 0)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return "TensorElem(" + ", ".join(str(x) for x in self.c) + ")"


def kronecker(m1: Mat2, m2: Mat2, product=None) -> tuple[tuple[Any, ...], ...]:
    """4x4 Kronecker product; ``product`` combines one entry of each factor."""
    mul = product or (lambda x, y: x * y)
    r1, r2 = m1.rows(), m2.rows()
    return tuple(
        tuple(mul(r1[i // 2][j // 2], r2[i % 2][j % 2]) for j in range(4)) for i in range(4)
    )


def mu_two_variable(
    ctx1: HeckeData, b1: int, n1: int, ctx2: HeckeData, b2: int, n2: int
) -> tuple[tuple[Any, ...], ...]:
    """mu(ctx1, b1, n1) (x) mu(ctx2, b2, n2) for supersingular contexts.

    Equal contexts multiply inside one quadratic ring; distinct contexts land in
    the tensor ring with basis 1, a1, a2, a1*a2.
    """
    for c in (ctx1, ctx2):
        if c.is_ordinary:
            raise ValueError("mu_two_variable needs supersingular contexts")
    m1 = mu(ctx1, b1, n1).matrix
    m2 = mu(ctx2, b2, n2).matrix
    if ctx1.ring == ctx2.ring:
        return kronecker(m1, m2)
    return kronecker(m1, m2, TensorElem.pure)


def add_4x4(x: tuple[tuple[Any, ...], ...], y: tuple[tuple[Any, ...], ...]) -> tuple[tuple[Any, ...], ...]:
    return tuple(tuple(a + b for a, b in zip(rx, ry)) for rx, ry in zip(x, y))


def is_zero_4x4(x: tuple[tuple[Any, ...], ...]) -> bool:
    return not any(e for row in x for e in row)
