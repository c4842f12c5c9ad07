"""Exit criteria. Every comparison is exact (zero tolerance)."""
import random
from fractions import Fraction

import pytest

from padiclog.distribution import (
    add_4x4,
    chromatic,
    digit_product,
    digits,
    mu,
    mu_two_variable,
    run_structure,
)
from padiclog.exact import QuadRing, quad_vp
from padiclog.hecke import (
    HeckeData,
    companion,
    companion_inverse,
    hensel_unit_root,
    hensel_vp_auto,
    quad_mat,
    root_matrix,
)
from padiclog.logmatrix import Poly, eval_lemma_check
from padiclog.oracle import brute_force_root_sum, mu_oracle, roots_of_unity_sum

SEED = 20241016


def default_grid():
    cells = []
    for p, n_max in ((2, 5), (3, 5), (5, 4)):
        aps = [0, p, -p] + [a for a in (1, -1, 2) if a % p]
        for ap in aps:
            for eps in (1, -1):
                cells.append((HeckeData(p, ap, eps), n_max))
    return cells


GRID = default_grid()
IDS = [f"p{c.p}_ap{c.ap}_eps{c.eps}" for c, _ in GRID]


def _sum(mats):
    out = mats[0]
    for m in mats[1:]:
        out = out + m
    return out


@pytest.mark.parametrize("ctx, n_max", GRID, ids=IDS)
def test_criterion_1_oracle_equivalence(ctx, n_max):
    for n in range(1, n_max + 1):
        for b in range(ctx.p**n):
            m, o = mu(ctx, b, n).matrix, mu_oracle(ctx, b, n)
            assert m == o, (ctx, b, n)


@pytest.mark.parametrize("ctx, n_max", GRID, ids=IDS)
def test_criterion_2_second_oracle(ctx, n_max):
    checked = 0
    for n in range(1, n_max + 1):
        if ctx.p**n > 243:
            continue
        for b in range(ctx.p**n):
            assert roots_of_unity_sum(ctx, b, n) == mu(ctx, b, n).matrix, (ctx, b, n)
            checked += 1
    assert checked > 0


@pytest.mark.parametrize("ctx, n_max", GRID, ids=IDS)
def test_criterion_3_additivity(ctx, n_max):
    assert chromatic(0, ctx) + chromatic(1, ctx).scale(ctx.p - 1) == companion(ctx)
    for n in range(0, n_max + 1):
        assert root_matrix(ctx, n + 1) == companion_inverse(ctx) @ root_matrix(ctx, n)
    for n in range(1, n_max):
        for b in range(ctx.p**n):
            parts = [mu(ctx, b + j * ctx.p**n, n + 1).matrix for j in range(ctx.p)]
            assert _sum(parts) == mu(ctx, b, n).matrix, (ctx, b, n)


@pytest.mark.parametrize("ctx, n_max", GRID, ids=IDS)
def test_criterion_4a_adjacent_nonzero_vanish(ctx, n_max):
    for n in range(2, n_max + 1):
        for b in range(ctx.p**n):
            if digits(b, n, ctx.p).has_adjacent_nonzero():
                assert mu(ctx, b, n).matrix.is_zero(), (ctx, b, n)


@pytest.mark.parametrize("eps", [1, -1])
def test_criterion_4b_ap_zero_parity(eps):
    ctx = HeckeData(3, 0, eps)
    for n in range(1, 7):
        r = root_matrix(ctx, n)
        shapes = [quad_mat(ctx.ring, rows) @ r for s in (1, -1) for rows in (((0, s), (0, 0)), ((0, 0), (0, s)))]
        for b in range(3**n):
            m = mu(ctx, b, n).matrix
            ds = digits(b, n, 3)
            nonzero = ds.nonzero_positions()
            same_parity = all(i % 2 == 0 for i in nonzero) or all(i % 2 == 1 for i in nonzero)
            if not m.is_zero():
                assert same_parity, (b, n)
            runs = run_structure(ds).runs
            if len(runs) >= 2 and all(k % 2 == 1 for k in runs[1:]):
                assert any(m == s for s in shapes), (b, n)


@pytest.mark.parametrize("ctx, n_max", GRID, ids=IDS)
def test_criterion_5_evaluation_lemma(ctx, n_max):
    for k in range(1, n_max + 1):
        for n in range(k, min(k + 3, n_max) + 1):
            assert eval_lemma_check(ctx, k, n), (ctx, k, n)


LEVELS = [(p, n) for p in (2, 3, 5, 7) for n in range(1, 7) if p**n <= 81]


@pytest.mark.parametrize("p, n", LEVELS)
def test_criterion_6_lemma_constants(p, n):
    rng = random.Random(f"{SEED}:{p}:{n}")
    N = p**n
    for _ in range(200):
        ring = QuadRing(rng.randint(-10, 10), rng.choice((1, -1)), rng.choice((2, 3, 5, 7)))
        P = Poly(
            (rng.randint(-(N - 1), N - 1), ring(Fraction(rng.randint(-20, 20), rng.randint(1, 9)), rng.randint(-20, 20)))
            for _ in range(rng.randint(1, 10))
        )
        brute = brute_force_root_sum(P, p, n)
        assert brute.is_scalar()
        assert brute.scalar() == P.coeff(0) * N


@pytest.mark.parametrize("ctx, n_max", GRID, ids=IDS)
def test_criterion_7_valuation_bounds(ctx, n_max):
    for n in range(1, n_max + 1):
        bound = Fraction(-(n + 3), 2)
        for b in range(ctx.p**n):
            m = mu(ctx, b, n).matrix
            if ctx.is_ordinary:
                assert all(hensel_vp_auto(e, ctx) >= 0 for e in m.column(0)), (ctx, b, n)
            elif ctx.p != 2:
                assert all(quad_vp(e) >= bound for e in m), (ctx, b, n)


def test_criterion_8_hensel():
    assert hensel_unit_root(HeckeData(5, 1, 1), 2) == 21
    ordinary = [c for c, _ in GRID if c.is_ordinary]
    assert ordinary
    for ctx in ordinary:
        prev = None
        for N in range(1, 9):
            u = hensel_unit_root(ctx, N)
            assert (u * u - ctx.ap * u + ctx.eps * ctx.p) % ctx.p**N == 0
            if prev is not None:
                assert u % ctx.p ** (N - 1) == prev
            prev = u


def _sum4(mats):
    out = mats[0]
    for m in mats[1:]:
        out = add_4x4(out, m)
    return out


@pytest.mark.parametrize("eps2", [1, -1])
def test_criterion_9_kronecker(eps2):
    ctx1 = HeckeData(3, 0, 1)
    ctx2 = HeckeData(3, 0, eps2)
    for n1 in range(1, 3):
        for n2 in range(1, 3):
            for b1 in range(3**n1):
                for b2 in range(3**n2):
                    whole = mu_two_variable(ctx1, b1, n1, ctx2, b2, n2)
                    first = _sum4([mu_two_variable(ctx1, b1 + j * 3**n1, n1 + 1, ctx2, b2, n2) for j in range(3)])
                    second = _sum4([mu_two_variable(ctx1, b1, n1, ctx2, b2 + j * 3**n2, n2 + 1) for j in range(3)])
                    assert first == whole and second == whole
