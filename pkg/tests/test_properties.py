"""Randomised invariants over generated systems, checked against plain integer arithmetic."""
import random

import pytest
from sympy import primerange

from pmnstools.lattice import BabaiContext, Strategy, StrategyPolicy, babai_reduce, in_lattice
from pmnstools.modint import ModCtx
from pmnstools.pmns import from_pmns, new_basis, pmns_add, pmns_mul, to_pmns, trivial_reduction_polynomial
from pmnstools.poly import IntPoly, poly_eval_mod
from pmnstools.roots import count_roots

P256 = 57896044618658097711785492504343953926634992332820282019728792003956566811073


def small_systems():
    """One system per small prime, built on X^3 - gamma^3."""
    r = random.Random(17)
    for p in (101, 997, 4099, 9973):
        gamma = r.randrange(2, p)
        yield new_basis(p, 3, gamma, trivial_reduction_polynomial(p, 3, gamma), StrategyPolicy((Strategy.LLL_A,)))


def test_round_trip_exhaustive_small_primes():
    for basis in small_systems():
        for a in range(basis.p):
            assert from_pmns(to_pmns(a, basis), basis) == a


@pytest.mark.parametrize("trials", [500, pytest.param(10_000, marks=pytest.mark.slow)])
def test_round_trip_256_bits(trials):
    r = random.Random(trials)
    gamma = r.randrange(2, P256)
    basis = new_basis(P256, 5, gamma, trivial_reduction_polynomial(P256, 5, gamma),
                      StrategyPolicy((Strategy.LLL_A,)))
    for _ in range(trials):
        a = r.randrange(P256)
        x = to_pmns(a, basis)
        assert from_pmns(x, basis) == a
        assert all(2 * abs(d) <= basis.norm1 for d in x.digits)


@pytest.mark.parametrize("trials", [20, pytest.param(1000, marks=pytest.mark.slow)])
def test_arithmetic_matches_integers(binomial_systems, rng, trials):
    for basis in binomial_systems:
        p = basis.p
        assert (2 * basis.rho - 1) ** basis.n >= p
        for _ in range(trials):
            a, b = rng.randrange(p), rng.randrange(p)
            x, y = to_pmns(a, basis), to_pmns(b, basis)
            s, m = pmns_add(x, y, basis), pmns_mul(x, y, basis)
            assert from_pmns(s, basis) == (a + b) % p
            assert from_pmns(m, basis) == a * b % p
            assert all(2 * abs(d) <= basis.norm1 for d in s.digits + m.digits)


@pytest.mark.parametrize("trials", [50, pytest.param(1000, marks=pytest.mark.slow)])
def test_babai_contract(binomial_systems, rng, trials):
    for basis in binomial_systems:
        ctx = BabaiContext.from_basis(basis.basis.matrix)
        for _ in range(trials):
            t = [rng.randrange(-basis.p, basis.p) for _ in range(basis.n)]
            r = babai_reduce(t, ctx)
            assert in_lattice([a - b for a, b in zip(t, r)], basis.p, basis.gamma)
            assert all(2 * abs(x) <= basis.norm1 for x in r)


def _check_root_counts(limit: int, per_prime: int):
    r = random.Random(limit)
    for p in primerange(3, limit):
        ctx = ModCtx(p)
        for _ in range(per_prime):
            n = r.randrange(2, 7)
            e = IntPoly(tuple(r.randrange(p) for _ in range(n)) + (1,))
            assert count_roots(e, ctx) == sum(1 for x in range(p) if poly_eval_mod(e, x, p) == 0)


def test_root_counts_small_primes():
    _check_root_counts(300, 2)


@pytest.mark.slow
def test_root_counts_all_primes_below_5000():
    _check_root_counts(5000, 2)
