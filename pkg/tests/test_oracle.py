
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from padiclog.distribution import chromatic, mu
from padiclog.exact import QuadRing
from padiclog.hecke import HeckeData, root_matrix
from padiclog.logmatrix import Poly, QuotientRing
from padiclog.oracle import (
    brute_force_root_sum,
    constant_term_sum,
    mu_oracle,
    power_sum_table,
    roots_of_unity_sum,
    shifted_log,
)


def substitution_sum(P, p, n):
    """sum_j P(x^j) via generic substitution and reduction in Q[x]/Phi_{p^n}."""
    q = QuotientRing.cyclotomic(p, n)
    total = q(0)
    for j in range(p**n):
        total = total + q(P.substitute_power(j))
    return total


def test_constant_term_sum_examples():
    assert constant_term_sum(Poly.const(5), 3, 2) == 45
    assert constant_term_sum(Poly.monomial(1), 3, 2) == 0
    P = Poly({-1: 2, 0: 7, 2: 1})
    assert constant_term_sum(P, 3, 1) == 21


def test_constant_term_example_by_brute_force():
    P = Poly({-1: 2, 0: 7, 2: 1})
    brute = substitution_sum(P, 3, 1)
    assert brute.is_scalar() and brute.scalar() == 21
    assert brute_force_root_sum(P, 3, 1).scalar() == 21


def test_constant_term_sum_range_guard():
    with pytest.raises(ValueError):
        constant_term_sum(Poly.monomial(9), 3, 2)
    with pytest.raises(ValueError):
        constant_term_sum(Poly.monomial(-9), 3, 2)


def test_lemma_fails_outside_range():
    # x^{p^n} sums to p^n over the roots of unity although its constant term is 0
    P = Poly.monomial(9)
    assert brute_force_root_sum(P, 3, 2).scalar() == 9


@pytest.mark.parametrize("p, n", [(2, 3), (3, 2), (5, 1), (3, 3)])
def test_power_sum_table_geometric_sums(p, n):
    N = p**n
    t = power_sum_table(p, n)
    assert list(t[0]) == [N] + [0] * (t.shape[1] - 1)
    assert not t[1:].any()


ring = QuadRing(2, -1, 5)
laurent = st.dictionaries(
    st.integers(-26, 26), st.builds(ring, st.integers(-9, 9), st.integers(-9, 9)), max_size=6
).map(Poly)


@settings(max_examples=30, deadline=None)
@given(laurent)
def test_table_sum_matches_substitution_sum(P):
    assert brute_force_root_sum(P, 3, 3) == substitution_sum(P, 3, 3)


@settings(max_examples=50, deadline=None)
@given(laurent)
def test_lemma_constants_random(P):
    brute = brute_force_root_sum(P, 3, 3)
    assert brute.is_scalar()
    assert brute.scalar() == constant_term_sum(P, 3, 3)


def test_mu_oracle_examples():
    ctx = HeckeData(3, 0, 1)
    assert mu_oracle(ctx, 4, 2).is_zero()
    for c in (ctx, HeckeData(5, 1, -1), HeckeData(2, 2, 1)):
        assert mu_oracle(c, 0, 1) == chromatic(0, c) @ root_matrix(c, 1)


def test_mu_oracle_exponent_guard_holds():
    ctx = HeckeData(3, 2, 1)
    n = 3
    for b in range(27):
        for f in shifted_log(ctx, b, n):
            assert all(-27 < e < 27 for e in f.terms)


@pytest.mark.parametrize("b, n", [(-1, 2), (9, 2), (0, 0)])
def test_mu_oracle_range_errors(b, n):
    with pytest.raises(ValueError):
        mu_oracle(HeckeData(3, 0, 1), b, n)


def test_roots_of_unity_sum_example():
    ctx = HeckeData(2, 0, 1)
    assert roots_of_unity_sum(ctx, 0, 1) == mu(ctx, 0, 1).matrix == mu_oracle(ctx, 0, 1)


def test_roots_of_unity_sum_gate():
    with pytest.raises(ValueError):
        roots_of_unity_sum(HeckeData(5, 0, 1), 0, 4)
    assert roots_of_unity_sum(HeckeData(5, 0, 1), 3, 4, max_size=625) == mu(HeckeData(5, 0, 1), 3, 4).matrix


@pytest.mark.parametrize(
    "ctx",
    [HeckeData(3, 0, 1), HeckeData(3, 3, -1), HeckeData(2, -2, 1), HeckeData(5, 2, -1), HeckeData(2, 1, -1)],
)
def test_triple_agreement_small(ctx):
    for n in range(1, 4):
        for b in range(ctx.p**n):
            m = mu(ctx, b, n).matrix
            assert m == mu_oracle(ctx, b, n)
            assert m == roots_of_unity_sum(ctx, b, n)


def test_roots_of_unity_sum_detects_non_scalar(monkeypatch):
    import padiclog.oracle as oracle

    broken = np.array(power_sum_table(3, 1))
    broken[1, 1] = 1
    monkeypatch.setattr(oracle, "power_sum_table", lambda p, n: broken)
    with pytest.raises(RuntimeError):
        oracle.roots_of_unity_sum(HeckeData(3, 1, 1), 0, 1)
