"""Cyclotomic polynomials, the truncated logarithm matrix Log^(n) and its
reductions modulo Phi_{p^k} (evaluation at primitive p^k-th roots of unity).

Polynomials are in the variable x = 1 + T and stored sparsely. Coefficients may
be ints, Fractions or QuadElems; they only need + - * and truthiness.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Mapping

from .exact import QuadElem
from .hecke import HeckeData, Mat2, root_matrix


class Poly:
    """Sparse Laurent polynomial ``{exponent: coefficient}`` with zeros dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Any] | Iterable[tuple[int, Any]] = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Any] = {}
        for e, c in items:
            if e in acc:
                acc[e] = acc[e] + c
            else:
                acc[e] = c
        self.terms = {e: c for e, c in acc.items() if c}

    @classmethod
    def const(cls, c: Any) -> Poly:
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: Any = 1) -> Poly:
        return cls({e: c})

    @classmethod
    def from_dense(cls, coeffs: Iterable[Any]) -> Poly:
        return cls(enumerate(coeffs))

    def degree(self) -> int:
        """Top exponent; -1 for the zero polynomial."""
        return max(self.terms, default=-1)

    def min_degree(self) -> int:
        return min(self.terms, default=0)

    def coeff(self, e: int) -> Any:
        return self.terms.get(e, 0)

    def is_laurent(self) -> bool:
        return any(e < 0 for e in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, o: object) -> bool:
        if isinstance(o, Poly):
            return self.terms.keys() == o.terms.keys() and all(self.terms[e] == o.terms[e] for e in self.terms)
        if isinstance(o, (int, Fraction, QuadElem)):
            return self == Poly.const(o)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, o: Any) -> Poly:
        if not isinstance(o, Poly):
            o = Poly.const(o)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out[e] + c if e in out else c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly({e: -c for e, c in self.terms.items()})

    def __sub__(self, o: Any) -> Poly:
        if not isinstance(o, Poly):
            o = Poly.const(o)
        return self + (-o)

    def __rsub__(self, o: Any) -> Poly:
        return Poly.const(o) - self

    def __mul__(self, o: Any) -> Poly:
        if not isinstance(o, Poly):
            return Poly({e: c * o for e, c in self.terms.items()})
        out: dict[int, Any] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = e1 + e2
                t = c1 * c2
                out[e] = out[e] + t if e in out else t
        return Poly(out)

    def __rmul__(self, o: Any) -> Poly:
        return Poly({e: o * c for e, c in self.terms.items()})

    def shift(self, k: int) -> Poly:
        """Multiply by x^k (k may be negative)."""
        return Poly({e + k: c for e, c in self.terms.items()})

    def substitute_power(self, j: int) -> Poly:
        """P(x) -> P(x^j)."""
        return Poly((e * j, c) for e, c in self.terms.items())

    def evaluate(self, value: Any) -> Any:
        total: Any = 0
        for e, c in self.terms.items():
            total = total + c * value**e
        return total

    def __repr__(self) -> str:
        body = ", ".join(f"{e}: {c!r}" for e, c in sorted(self.terms.items()))
        return f"Poly({{{body}}})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*x^{e}" for e, c in sorted(self.terms.items()))


def cyclotomic(p: int, n: int) -> Poly:
    """Phi_{p^n}(x) = sum_{i<p} x^{i p^(n-1)}."""
    if n < 1:
        raise ValueError(f"cyclotomic level n must be >= 1, got {n}")
    step = p ** (n - 1)
    return Poly({i * step: 1 for i in range(p)})


def log_factor(ctx: HeckeData, i: int) -> Mat2:
    """[[ap, 1], [-eps Phi_{p^i}(x), 0]]."""
    return Mat2(Poly.const(ctx.ap), Poly.const(1), cyclotomic(ctx.p, i) * (-ctx.eps), Poly())


def _check_depth(ctx: HeckeData, n: int) -> None:
    if n < 1:
        raise ValueError(f"depth n must be >= 1, got {n}")
    if n > ctx.n_max:
        raise ValueError(f"depth n={n} exceeds n_max={ctx.n_max}")


@lru_cache(maxsize=64)
def factor_product(ctx: HeckeData, n: int) -> Mat2:
    """Product of the n cyclotomic factors (integer coefficients), without R_n."""
    _check_depth(ctx, n)
    m = log_factor(ctx, 1)
    for i in range(2, n + 1):
        m = m @ log_factor(ctx, i)
    return m


@lru_cache(maxsize=64)
def log_truncation(ctx: HeckeData, n: int) -> Mat2:
    """Log^(n)(x) as a 2x2 matrix of polynomials in x = 1 + T with QuadElem coefficients."""
    return factor_product(ctx, n) @ root_matrix(ctx, n)


class QuotientRing:
    """R[x] / (m(x)) for a monic modulus m.

    ``period`` N, when given, asserts m | x^N - 1 so exponents (including
    negative ones) are first folded mod N before the division step.
    """

    def __init__(self, modulus: Poly, period: int | None = None) -> None:
        if not modulus:
            raise ValueError("zero modulus")
        d = modulus.degree()
        if modulus.coeff(d) != 1 or modulus.is_laurent():
            raise ValueError("modulus must be a monic polynomial")
        self.modulus = modulus
        self.degree = d
        self.period = period
        # x^d = -(lower terms)
        self._tail = [(e, -c) for e, c in modulus.terms.items() if e != d]

    @classmethod
    def cyclotomic(cls, p: int, k: int) -> QuotientRing:
        return cls(cyclotomic(p, k), period=p**k)

    @classmethod
    def unity(cls, N: int) -> QuotientRing:
        """Q[x] / (x^N - 1)."""
        return cls(Poly({N: 1, 0: -1}), period=N)

    def reduce(self, f: Poly) -> Poly:
        if self.period is not None:
            f = Poly((e % self.period, c) for e, c in f.terms.items())
        elif f.is_laurent():
            raise ValueError("negative exponents need a periodic modulus")
        terms = dict(f.terms)
        d = self.degree
        top = max(terms, default=-1)
        while top >= d:
            c = terms.pop(top)
            if c:
                shift = top - d
                for e, t in self._tail:
                    k = e + shift
                    v = t * c
                    terms[k] = terms[k] + v if k in terms else v
            top = max(terms, default=-1)
        return Poly(terms)

    def __call__(self, f: Poly | Any) -> QuotientElem:
        if not isinstance(f, Poly):
            f = Poly.const(f)
        return QuotientElem(self.reduce(f), self)

    def __eq__(self, o: object) -> bool:
        return isinstance(o, QuotientRing) and self.modulus == o.modulus

    def __hash__(self) -> int:
        return hash(self.modulus)


class QuotientElem:
    """A residue class, stored by its reduced representative."""

    __slots__ = ("residue", "ring")

    def __init__(self, residue: Poly, ring: QuotientRing) -> None:
        self.residue = residue
        self.ring = ring

    def _lift(self, o: Any) -> Poly:
        if isinstance(o, QuotientElem):
            if o.ring != self.ring:
                raise ValueError("mixed quotient rings")
            return o.residue
        return o if isinstance(o, Poly) else Poly.const(o)

    def __add__(self, o: Any) -> QuotientElem:
        return QuotientElem(self.residue + self._lift(o), self.ring)

    __radd__ = __add__

    def __sub__(self, o: Any) -> QuotientElem:
        return QuotientElem(self.residue - self._lift(o), self.ring)

    def __neg__(self) -> QuotientElem:
        return QuotientElem(-self.residue, self.ring)

    def __mul__(self, o: Any) -> QuotientElem:
        if isinstance(o, (QuotientElem, Poly)):
            return self.ring(self.residue * self._lift(o))
        return QuotientElem(self.residue * o, self.ring)

    def __rmul__(self, o: Any) -> QuotientElem:
        return QuotientElem(o * self.residue, self.ring)

    def is_scalar(self) -> bool:
        return all(e == 0 for e in self.residue.terms)

    def scalar(self) -> Any:
        if not self.is_scalar():
            raise ValueError(f"{self.residue} is not a scalar")
        return self.residue.coeff(0)

    def __bool__(self) -> bool:
        return bool(self.residue)

    def __eq__(self, o: object) -> bool:
        if isinstance(o, QuotientElem):
            return self.ring == o.ring and self.residue == o.residue
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.residue)

    def __repr__(self) -> str:
        return f"QuotientElem({self.residue!r})"


def eval_in_quotient(m: Mat2, ring: QuotientRing) -> Mat2:
    """Entrywise reduction of a polynomial matrix."""
    return m.map(ring)


def eval_lemma_check(ctx: HeckeData, k: int, n: int) -> bool:
    """Log^(n) and Log^(k) agree modulo Phi_{p^k} for n >= k."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    q = QuotientRing.cyclotomic(ctx.p, k)
    return eval_in_quotient(log_truncation(ctx, n), q) == eval_in_quotient(log_truncation(ctx, k), q)


def evaluate_at_one(m: Mat2) -> Mat2:
    return m.map(lambda f: f.evaluate(1))
