"""Two independent re-derivations of mu(b + p^n Z_p) from Log^(n).

* :func:`mu_oracle` takes the constant-term matrix of x^{-b} Log^(n)(x).
* :func:`roots_of_unity_sum` sums zeta^{-b} Log^(n)(zeta) over every p^n-th
  root of unity inside Q(alpha)[x]/Phi_{p^n}(x) and divides by p^n.

Neither path touches the chromatic matrices used by :func:`distribution.mu`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .hecke import HeckeData, Mat2, quad_mat, root_matrix
from .logmatrix import Poly, QuotientElem, QuotientRing, factor_product, log_truncation

LaurentPoly = Poly
LaurentMat = Mat2  # 2x2 of LaurentPoly

ROOT_SUM_MAX = 3**5


def check_exponent_range(P: LaurentPoly, p: int, n: int) -> None:
    N = p**n
    bad = [e for e in P.terms if not -N < e < N]
    if bad:
        raise ValueError(f"exponents {sorted(bad)[:5]} outside (-{N}, {N})")


def constant_term_sum(P: LaurentPoly, p: int, n: int):
    """Sum of P over the p^n-th roots of unity: p^n times the constant term.

    Only valid when every exponent lies in (-p^n, p^n); anything else is refused.
    """
    check_exponent_range(P, p, n)
    return P.coeff(0) * p**n


@lru_cache(maxsize=32)
def power_sum_table(p: int, n: int) -> np.ndarray:
    """Row k holds sum_{j < p^n} x^{jk} reduced mod Phi_{p^n}, summed term by term.

    Shape (p^n, (p-1) p^(n-1)), int64.
    """
    N = p**n
    M = N // p
    deg = (p - 1) * M
    js = np.arange(N, dtype=np.int64)
    table = np.empty((N, deg), dtype=np.int64)
    for k in range(N):
        v = np.bincount((k * js) % N, minlength=N).astype(np.int64)
        # x^{(p-1)M + r} = -sum_{i<p-1} x^{iM + r}
        high = v[deg:]
        for i in range(p - 1):
            v[i * M : (i + 1) * M] -= high
        table[k] = v[:deg]
    table.setflags(write=False)
    return table


def brute_force_root_sum(P: LaurentPoly, p: int, n: int) -> QuotientElem:
    """sum_{j < p^n} P(x^j) computed in Q(alpha)[x]/Phi_{p^n}(x).

    x is a primitive p^n-th root of unity there, so x^j runs over all of them.
    No hypothesis on the exponents of P.
    """
    N = p**n
    ring = QuotientRing.cyclotomic(p, n)
    table = power_sum_table(p, n)
    acc: dict[int, object] = {}
    for e, c in P.terms.items():
        row = table[e % N]
        for m in np.flatnonzero(row):
            t = c * int(row[m])
            acc[int(m)] = acc[int(m)] + t if int(m) in acc else t
    return QuotientElem(Poly(acc), ring)


def _check_args(ctx: HeckeData, b: int, n: int) -> None:
    if not 1 <= n <= ctx.n_max:
        raise ValueError(f"n must satisfy 1 <= n <= n_max={ctx.n_max}, got {n}")
    if not 0 <= b < ctx.p**n:
        raise ValueError(f"b must lie in [0, {ctx.p ** n}), got {b}")


def shifted_log(ctx: HeckeData, b: int, n: int) -> LaurentMat:
    """x^{-b} Log^(n)(x) as a Laurent matrix."""
    return log_truncation(ctx, n).map(lambda f: f.shift(-b))


def mu_oracle(ctx: HeckeData, b: int, n: int) -> Mat2:
    """Constant-term matrix of x^{-b} Log^(n)(x)."""
    _check_args(ctx, b, n)
    N = ctx.p**n
    shifted = shifted_log(ctx, b, n)
    sums = shifted.map(lambda f: constant_term_sum(f, ctx.p, n))
    zero = ctx.ring.zero
    return sums.map(lambda s: zero + s * Fraction(1, N))


def _entry_root_sum(f: Poly, b: int, p: int, n: int, table: np.ndarray) -> int:
    N = p**n
    v = np.zeros(N, dtype=object)
    for e, c in f.terms.items():
        v[e % N] += int(c)
    bound = max((abs(int(x)) for x in v), default=0) * N * N
    dtype = np.int64 if bound < 2**62 else object
    rows = table[(np.arange(N) - b) % N].astype(dtype)
    total = v.astype(dtype) @ rows
    if any(total[1:]):
        raise RuntimeError(f"root-of-unity sum is not a scalar (b={b}, p={p}, n={n})")
    return int(total[0])


def roots_of_unity_sum(ctx: HeckeData, b: int, n: int, max_size: int = ROOT_SUM_MAX) -> Mat2:
    """p^{-n} sum_{zeta^{p^n}=1} zeta^{-b} Log^(n)(zeta), computed by brute force.

    Log^(n) = F(x) R_n with F the integer cyclotomic product, so the sum is taken
    over F and R_n is applied afterwards. Cost is O(p^{2n}) per entry.
    """
    _check_args(ctx, b, n)
    N = ctx.p**n
    if N > max_size:
        raise ValueError(f"p^n = {N} exceeds the brute-force limit {max_size}")
    table = power_sum_table(ctx.p, n)
    F = factor_product(ctx, n)
    sums = F.map(lambda f: Fraction(_entry_root_sum(f, b, ctx.p, n, table), N))
    return quad_mat(ctx.ring, sums.rows()) @ root_matrix(ctx, n)
