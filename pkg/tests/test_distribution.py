from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padiclog import distribution as dist
from padiclog.distribution import (
    CONSECUTIVE_NONZERO,
    FIRST_COLUMN_ONLY,
    TensorElem,
    add_4x4,
    chromatic,
    digit_product,
    digits,
    is_zero_4x4,
    kronecker,
    mu,
    mu_two_variable,
    run_structure,
    total_mass,
)
from padiclog.hecke import HeckeData, companion, quad_mat, root_matrix
from padiclog.oracle import mu_oracle

contexts = st.builds(
    HeckeData,
    p=st.sampled_from([2, 3, 5]),
    ap=st.integers(-6, 6),
    eps=st.sampled_from([1, -1]),
)


@pytest.mark.parametrize(
    "b, n, p, expected",
    [(4, 2, 3, (1, 1)), (0, 3, 5, (0, 0, 0)), (10, 2, 3, (1, 0)), (-1, 3, 2, (1, 1, 1)), (7, 1, 7, (0,))],
)
def test_digits_examples(b, n, p, expected):
    assert digits(b, n, p).digits == expected


@given(st.integers(-10**6, 10**6), st.integers(1, 8), st.sampled_from([2, 3, 5, 7]))
def test_digits_reconstruct(b, n, p):
    d = digits(b, n, p)
    assert 0 <= d.b < p**n and d.b == b % p**n
    assert sum(x * p**i for i, x in enumerate(d.digits)) == d.b
    assert all(0 <= x < p for x in d.digits)


@pytest.mark.parametrize(
    "ds, runs",
    [((0, 0, 1, 0), (2, 1)), ((1, 1), (0, 0, 0)), ((0, 0, 0), (3,)), ((2, 0, 0, 1), (0, 2, 0))],
)
def test_run_structure_examples(ds, runs):
    p = 3
    b = sum(x * p**i for i, x in enumerate(ds))
    rs = run_structure(digits(b, len(ds), p))
    assert rs.runs == runs
    assert rs.l == len(runs)


@given(st.integers(0, 3**8 - 1), st.integers(1, 8))
def test_run_structure_round_trip(b, n):
    d = digits(b, n, 3)
    rs = run_structure(d)
    assert sum(rs.runs) + rs.nonzero_count == n
    assert rs.pattern() == [x != 0 for x in d.digits]


def test_chromatic_examples():
    ctx = HeckeData(3, 0, 1)
    assert chromatic(0, ctx) == quad_mat(ctx.ring, ((0, 1), (-1, 0)))
    assert chromatic(1, ctx) == chromatic(2, ctx) == quad_mat(ctx.ring, ((0, 0), (-1, 0)))
    ctx = HeckeData(5, 2, -1)
    assert all(chromatic(d, ctx) == quad_mat(ctx.ring, ((0, 0), (1, 0))) for d in range(1, 5))


def test_chromatic_out_of_range():
    with pytest.raises(ValueError):
        chromatic(3, HeckeData(3, 0, 1))
    with pytest.raises(ValueError):
        chromatic(-1, HeckeData(3, 0, 1))


@given(contexts)
def test_chromatic_sum_is_companion(ctx):
    total = chromatic(0, ctx) + chromatic(1, ctx).scale(ctx.p - 1)
    assert total == companion(ctx)
    assert (chromatic(1, ctx) @ chromatic(1, ctx)).is_zero()


def test_mu_consecutive_nonzero_is_zero():
    dv = mu(HeckeData(3, 0, 1), 4, 2)
    assert dv.matrix.is_zero()
    assert CONSECUTIVE_NONZERO in dv.flags


@given(contexts)
def test_mu_single_zero_digit(ctx):
    assert mu(ctx, 0, 1).matrix == chromatic(0, ctx) @ root_matrix(ctx, 1)


def test_mu_b10_n3_value():
    # digits (1, 0, 1): Y1 Y0 Y1 = [[0, 0], [1, 0]] for ap = 0, eps = 1;
    # the trailing zero-run is empty (even), so this is not a second-column shape
    ctx = HeckeData(3, 0, 1)
    expected = quad_mat(ctx.ring, ((0, 0), (1, 0))) @ root_matrix(ctx, 3)
    assert mu_oracle(ctx, 10, 3) == expected
    assert mu(ctx, 10, 3).matrix == expected


def test_mu_odd_gap_with_odd_tail_value():
    # digits (1, 0, 1, 0): runs (0, 1, 1); [[0, 0], [1, 0]] Y0 = [[0, 0], [0, 1]]
    ctx = HeckeData(3, 0, 1)
    expected = quad_mat(ctx.ring, ((0, 0), (0, 1))) @ root_matrix(ctx, 4)
    assert mu_oracle(ctx, 10, 4) == expected
    assert mu(ctx, 10, 4).matrix == expected


def test_mu_flags_and_normalisation():
    dv = mu(HeckeData(5, 1, 1), -1, 2)
    assert dv.b == 24
    assert FIRST_COLUMN_ONLY in dv.flags
    assert FIRST_COLUMN_ONLY not in mu(HeckeData(5, 0, 1), 0, 1).flags


def test_mu_depth_range():
    ctx = HeckeData(3, 0, 1, n_max=4)
    with pytest.raises(ValueError):
        mu(ctx, 0, 0)
    with pytest.raises(ValueError):
        mu(ctx, 0, 5)


@settings(deadline=None)
@given(contexts, st.integers(0, 10**6), st.integers(1, 4))
def test_additivity(ctx, b, n):
    parts = [mu(ctx, b + j * ctx.p**n, n + 1).matrix for j in range(ctx.p)]
    total = parts[0]
    for x in parts[1:]:
        total = total + x
    assert total == mu(ctx, b, n).matrix


@settings(deadline=None)
@given(contexts, st.integers(0, 10**6), st.integers(1, 5))
def test_column_swap_covariance(ctx, b, n):
    m = mu(ctx, b, n).matrix
    assert m.map(lambda e: e.conj()) == m.swap_columns()


@pytest.mark.parametrize("eps", [1, -1])
def test_ap_zero_even_gap_vanishes(eps):
    ctx = HeckeData(3, 0, eps)
    y0, y1 = chromatic(0, ctx), chromatic(1, ctx)
    for k in range(5):
        m = y1
        for _ in range(2 * k):
            m = m @ y0
        assert (m @ y1).is_zero()
        assert not (m @ y0 @ y1).is_zero()


def test_total_mass():
    ctx = HeckeData(3, 0, 1)
    assert total_mass(ctx) == companion(ctx) @ root_matrix(ctx, 1)


def test_digit_product_for_zero_string_is_power():
    ctx = HeckeData(5, 3, -1)
    y0 = chromatic(0, ctx)
    assert digit_product(ctx, 0, 3) == y0 @ y0 @ y0


def test_kronecker_zero_factor():
    ctx = HeckeData(3, 0, 1)
    assert is_zero_4x4(mu_two_variable(ctx, 4, 2, ctx, 0, 1))
    assert is_zero_4x4(mu_two_variable(ctx, 0, 1, ctx, 4, 2))


def test_kronecker_definition():
    ctx = HeckeData(3, 0, 1)
    a = chromatic(0, ctx) @ root_matrix(ctx, 1)
    k = mu_two_variable(ctx, 0, 1, ctx, 0, 1)
    rows_a = a.rows()
    for i in range(4):
        for j in range(4):
            assert k[i][j] == rows_a[i // 2][j // 2] * rows_a[i % 2][j % 2]
    assert k == kronecker(a, a)


def test_kronecker_rejects_ordinary():
    with pytest.raises(ValueError):
        mu_two_variable(HeckeData(5, 1, 1), 0, 1, HeckeData(3, 0, 1), 0, 1)


def _sum4(mats):
    out = mats[0]
    for m in mats[1:]:
        out = add_4x4(out, m)
    return out


@pytest.mark.parametrize(
    "ctx1, ctx2",
    [(HeckeData(3, 0, 1), HeckeData(3, 0, 1)), (HeckeData(3, 0, 1), HeckeData(3, 3, -1))],
)
def test_kronecker_additivity_both_variables(ctx1, ctx2):
    p = 3
    for b1, n1, b2, n2 in [(0, 1, 2, 1), (5, 2, 1, 1), (1, 1, 7, 2)]:
        whole = mu_two_variable(ctx1, b1, n1, ctx2, b2, n2)
        first = _sum4([mu_two_variable(ctx1, b1 + j * p**n1, n1 + 1, ctx2, b2, n2) for j in range(p)])
        second = _sum4([mu_two_variable(ctx1, b1, n1, ctx2, b2 + j * p**n2, n2 + 1) for j in range(p)])
        assert first == whole
        assert second == whole


def test_tensor_ring_arithmetic():
    r1 = HeckeData(3, 0, 1).ring
    r2 = HeckeData(5, 5, -1).ring
    a1 = TensorElem.pure(r1.alpha, r2.one)
    a2 = TensorElem.pure(r1.one, r2.alpha)
    assert a1 * a1 == -3
    assert a2 * a2 == TensorElem.pure(r1.one, r2.alpha * r2.alpha)
    assert a1 * a2 == TensorElem.pure(r1.alpha, r2.alpha)
    x = TensorElem((1, Fraction(1, 2), -2, 3), r1, r2)
    y = TensorElem((0, 1, 1, -1), r1, r2)
    z = TensorElem((2, 0, 1, 1), r1, r2)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
