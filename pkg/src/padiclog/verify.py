"""Verification grid: runs every identity the library claims over a grid of
contexts and collects a JSON-ready report."""
from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Union

from . import distribution as dist
from .exact import QuadRing, quad_vp, vp
from .hecke import (
    HeckeData,
    Mat2,
    companion,
    companion_inverse,
    hecke_poly_mod,
    hensel_unit_root,
    hensel_vp_auto,
    quad_mat,
    quad_mat_power,
    root_matrix,
    root_matrix_closed_form,
    root_seed,
)
from .logmatrix import Poly, eval_lemma_check
from .oracle import ROOT_SUM_MAX, brute_force_root_sum, constant_term_sum, mu_oracle, roots_of_unity_sum
from .serialization import mat_to_json

ApToken = Union[int, str]

DEFAULT_PRIMES = (2, 3, 5)
DEFAULT_AP = (0, "p", "-p", 1, -1, 2)
DEFAULT_EPS = (1, -1)
DEFAULT_N_MAX = {2: 5, 3: 5, 5: 4}
HENSEL_PRECISION = 8


@dataclass
class GridSpec:
    """Which contexts and cosets to check.

    ``ap`` entries are integers or the tokens "p" / "-p"; ``n_max`` is either one
    bound or a per-prime mapping. ``b`` restricts the residues (default: all).
    """

    p: list[int] = field(default_factory=lambda: list(DEFAULT_PRIMES))
    ap: list[ApToken] = field(default_factory=lambda: list(DEFAULT_AP))
    eps: list[int] = field(default_factory=lambda: list(DEFAULT_EPS))
    n_min: int = 1
    n_max: Union[int, dict[int, int]] = field(default_factory=lambda: dict(DEFAULT_N_MAX))
    b: list[int] | None = None
    cap: int = 200_000

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> GridSpec:
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown GridSpec fields: {sorted(unknown)}")
        kw = dict(data)
        if isinstance(kw.get("n_max"), dict):
            kw["n_max"] = {int(k): int(v) for k, v in kw["n_max"].items()}
        return cls(**kw)

    @classmethod
    def load(cls, path: str) -> GridSpec:
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def depth(self, p: int) -> int:
        if isinstance(self.n_max, dict):
            return self.n_max.get(p, max(self.n_max.values()))
        return self.n_max

    def resolve_ap(self, p: int) -> list[int]:
        out: list[int] = []
        for tok in self.ap:
            if tok == "p":
                v = p
            elif tok == "-p":
                v = -p
            else:
                v = int(tok)
            if v not in out:
                out.append(v)
        return out

    def contexts(self) -> list[HeckeData]:
        ctxs = []
        for p in self.p:
            for ap in self.resolve_ap(p):
                for eps in self.eps:
                    ctxs.append(HeckeData(p, ap, eps, n_max=max(12, self.depth(p) + 1)))
        return ctxs

    def residues(self, p: int, n: int) -> Iterable[int]:
        N = p**n
        if self.b is None:
            return range(N)
        return sorted({b % N for b in self.b})

    def size(self) -> int:
        return sum(
            len(list(self.residues(c.p, n)))
            for c in self.contexts()
            for n in range(self.n_min, self.depth(c.p) + 1)
        )

    def check_cap(self) -> None:
        s = self.size()
        if s > self.cap:
            raise ValueError(f"grid has {s} cells, above the cap {self.cap}")


@dataclass
class CheckResult:
    check: str
    params: dict[str, Any]
    passed: bool
    cells: int
    witness: dict[str, Any] | None = None

    def key(self) -> tuple[str, str]:
        return (self.check, json.dumps(self.params, sort_keys=True))


@dataclass
class Report:
    results: list[CheckResult]

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict[str, int]:
        return {
            "total": len(self.results),
            "passed": sum(r.passed for r in self.results),
            "failed": len(self.failures),
            "cells": sum(r.cells for r in self.results),
        }

    def to_json(self) -> dict[str, Any]:
        return {
            "checks": [asdict(r) for r in sorted(self.results, key=CheckResult.key)],
            "summary": self.summary(),
        }


class _Tally:
    """Counts cells for one (check, params) group and keeps the first failure."""

    def __init__(self, check: str, params: dict[str, Any]) -> None:
        self.check, self.params = check, params
        self.cells = 0
        self.witness: dict[str, Any] | None = None

    def record(self, ok: bool, witness: Callable[[], dict[str, Any]]) -> None:
        self.cells += 1
        if not ok and self.witness is None:
            self.witness = witness()

    def result(self) -> CheckResult:
        return CheckResult(self.check, self.params, self.witness is None, self.cells, self.witness)


def _mat_witness(ctx: HeckeData, b: int, n: int, **mats: Mat2) -> dict[str, Any]:
    return {"ctx": ctx.to_json(), "b": b, "n": n, **{k: mat_to_json(v) for k, v in mats.items()}}


def _same_parity(positions: list[int]) -> bool:
    return len({i % 2 for i in positions}) <= 1


def _odd_gap_shapes(ctx: HeckeData, n: int) -> list[Mat2]:
    r = root_matrix(ctx, n)
    shapes = []
    for s in (1, -1):
        shapes.append(quad_mat(ctx.ring, ((0, s), (0, 0))) @ r)
        shapes.append(quad_mat(ctx.ring, ((0, 0), (0, s))) @ r)
    return shapes


def check_context(ctx: HeckeData, grid: GridSpec) -> list[CheckResult]:
    """Every per-context check of the grid."""
    results: list[CheckResult] = []
    base = ctx.to_json()
    n_hi = grid.depth(ctx.p)
    ns = range(grid.n_min, n_hi + 1)

    # matrix identities behind additivity and R_n coherence
    t = _Tally("chromatic_sum", base)
    lhs = dist.chromatic(0, ctx) + dist.chromatic(1, ctx).scale(ctx.p - 1)
    t.record(lhs == companion(ctx), lambda: {"ctx": base, "sum": mat_to_json(lhs)})
    nonzero_same = all(dist.chromatic(d, ctx) == dist.chromatic(1, ctx) for d in range(1, ctx.p))
    t.record(nonzero_same, lambda: {"ctx": base, "reason": "nonzero digits differ"})
    results.append(t.result())

    t = _Tally("root_matrix_coherence", base)
    c = companion(ctx)
    for n in range(0, n_hi + 1):
        r = root_matrix(ctx, n)
        t.record(quad_mat_power(c, ctx.root_offset + n, ctx.ring) @ r == root_seed(ctx),
                 lambda: _mat_witness(ctx, 0, n, R=r))
        t.record(root_matrix_closed_form(ctx, n) == r, lambda: _mat_witness(ctx, 0, n, R=r))
        t.record(root_matrix(ctx, n + 1) == companion_inverse(ctx) @ r, lambda: _mat_witness(ctx, 0, n, R=r))
        swapped = r.map(lambda e: e.conj())
        t.record(swapped == r.swap_columns(), lambda: _mat_witness(ctx, 0, n, R=r))
    results.append(t.result())

    for n in ns:
        params = {**base, "n": n}
        eq = _Tally("oracle_equivalence", params)
        ros = _Tally("root_sum_agreement", params) if ctx.p**n <= ROOT_SUM_MAX else None
        adj = _Tally("vanishing_adjacent", params)
        par = _Tally("ap0_parity", params) if ctx.ap == 0 else None
        val = _Tally("valuation_bound", params)
        swap = _Tally("column_swap", params)
        shapes = _odd_gap_shapes(ctx, n) if par is not None else []
        bound = Fraction(-(n + 3), 2)
        for b in grid.residues(ctx.p, n):
            m = dist.mu(ctx, b, n).matrix
            o = mu_oracle(ctx, b, n)
            eq.record(m == o, lambda: _mat_witness(ctx, b, n, mu=m, oracle=o))
            if ros is not None:
                s = roots_of_unity_sum(ctx, b, n)
                ros.record(m == s, lambda: _mat_witness(ctx, b, n, mu=m, root_sum=s))
            ds = dist.digits(b, n, ctx.p)
            if ds.has_adjacent_nonzero():
                adj.record(m.is_zero(), lambda: _mat_witness(ctx, b, n, mu=m))
            if par is not None:
                pos = ds.nonzero_positions()
                par.record((not m.is_zero()) == _same_parity(pos), lambda: _mat_witness(ctx, b, n, mu=m))
                runs = dist.run_structure(ds).runs
                if len(runs) >= 2 and all(k % 2 for k in runs[1:]):
                    par.record(any(m == s for s in shapes), lambda: _mat_witness(ctx, b, n, mu=m))
            if ctx.is_ordinary:
                col = m.column(0)
                val.record(all(hensel_vp_auto(e, ctx, HENSEL_PRECISION) >= 0 for e in col),
                           lambda: _mat_witness(ctx, b, n, mu=m))
            elif ctx.p != 2:
                val.record(all(quad_vp(e) >= bound for e in m), lambda: _mat_witness(ctx, b, n, mu=m))
            swap.record(m.map(lambda e: e.conj()) == m.swap_columns(), lambda: _mat_witness(ctx, b, n, mu=m))
        for tally in (eq, ros, adj, par, val, swap):
            if tally is not None and tally.cells:
                results.append(tally.result())

    for n in range(grid.n_min, n_hi):
        t = _Tally("additivity", {**base, "n": n})
        for b in grid.residues(ctx.p, n):
            parts = [dist.mu(ctx, b + j * ctx.p**n, n + 1).matrix for j in range(ctx.p)]
            total = parts[0]
            for x in parts[1:]:
                total = total + x
            whole = dist.mu(ctx, b, n).matrix
            t.record(total == whole, lambda: _mat_witness(ctx, b, n, sum=total, mu=whole))
        results.append(t.result())

    t = _Tally("evaluation_lemma", base)
    for k in range(1, n_hi + 1):
        for n in range(k, min(k + 3, n_hi) + 1):
            t.record(eval_lemma_check(ctx, k, n), lambda: {"ctx": base, "k": k, "n": n})
    results.append(t.result())

    if ctx.is_ordinary:
        t = _Tally("hensel", base)
        prev = None
        for N in range(1, HENSEL_PRECISION + 1):
            u = hensel_unit_root(ctx, N)
            ok = hecke_poly_mod(ctx, u, ctx.p**N) == 0 and u % ctx.p == ctx.ap % ctx.p
            if prev is not None:
                ok = ok and u % ctx.p ** (N - 1) == prev
            t.record(ok, lambda: {"ctx": base, "N": N, "root": u})
            prev = u
        results.append(t.result())
    return results


def _random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-20, 20), rng.choice((1, 1, 1, 2, 3, 4, 5, 9)))


def random_ring(rng: random.Random) -> QuadRing:
    p = rng.choice((2, 3, 5, 7))
    return QuadRing(rng.randint(-10, 10), rng.choice((1, -1)), p)


def random_elem(rng: random.Random, ring: QuadRing):
    return ring(_random_fraction(rng), _random_fraction(rng))


def random_laurent(rng: random.Random, ring: QuadRing, N: int, terms: int = 8) -> Poly:
    k = rng.randint(1, terms)
    return Poly((rng.randint(-(N - 1), N - 1), random_elem(rng, ring)) for _ in range(k))


def check_ring_laws(seed: int, trials: int = 200) -> CheckResult:
    rng = random.Random(seed)
    t = _Tally("ring_laws", {"seed": seed, "trials": trials})
    for _ in range(trials):
        ring = random_ring(rng)
        x, y, z = (random_elem(rng, ring) for _ in range(3))
        ok = (
            (x + y) + z == x + (y + z)
            and x * (y * z) == (x * y) * z
            and x * (y + z) == x * y + x * z
            and (x * y).norm() == x.norm() * y.norm()
            and x.conj().conj() == x
            and (x * y).conj() == x.conj() * y.conj()
        )
        t.record(ok, lambda: {"ring": asdict(ring), "x": x.to_json(), "y": y.to_json(), "z": z.to_json()})
        r, s = x.c0, y.c1
        if r and s:
            t.record(vp(r * s, ring.p) == vp(r, ring.p) + vp(s, ring.p), lambda: {"r": str(r), "s": str(s)})
        if r + s:
            t.record(vp(r + s, ring.p) >= min(vp(r, ring.p), vp(s, ring.p)), lambda: {"r": str(r), "s": str(s)})
    return t.result()


LEMMA_LEVELS = ((2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 1), (7, 2))


def check_lemma_constants(seed: int, p: int, n: int, trials: int = 200) -> CheckResult:
    """Brute-force root-of-unity sums against p^n times the constant term."""
    rng = random.Random(f"{seed}:{p}:{n}")
    N = p**n
    t = _Tally("lemma_constants", {"seed": seed, "p": p, "n": n, "trials": trials})
    for _ in range(trials):
        ring = random_ring(rng)
        P = random_laurent(rng, ring, N)
        brute = brute_force_root_sum(P, p, n)
        expected = constant_term_sum(P, p, n)
        ok = brute.is_scalar() and brute.scalar() == expected
        t.record(ok, lambda: {"poly": {str(e): c.to_json() for e, c in P.terms.items()}})
    return t.result()


def _context_job(args: tuple[dict[str, int], dict[str, Any]]) -> list[CheckResult]:
    ctx_data, grid_data = args
    grid = GridSpec.from_json(grid_data)
    return check_context(HeckeData(**ctx_data), grid)


def run_grid(grid: GridSpec, seed: int = 0, jobs: int = 1) -> Report:
    grid.check_cap()
    ctxs = grid.contexts()
    grid_data = asdict(grid)
    tasks = [({"p": c.p, "ap": c.ap, "eps": c.eps, "n_max": c.n_max}, grid_data) for c in ctxs]
    results: list[CheckResult] = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for chunk in pool.map(_context_job, tasks):
                results.extend(chunk)
    else:
        for task in tasks:
            results.extend(_context_job(task))
    results.append(check_ring_laws(seed))
    for p, n in LEMMA_LEVELS:
        results.append(check_lemma_constants(seed, p, n))
    return Report(results)
