"""Roots of a reduction polynomial modulo p.

Each root gamma of E mod p gives one PMNS for (p, E), so counting roots is
counting systems.
"""
import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import Optional

import sympy
from sympy import factorint, totient
from sympy.core import random as sympy_random
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_edf_zassenhaus

from pmnstools.classes import cyclotomic_index
from pmnstools.errors import ZeroConstant
from pmnstools.modint import ModCtx, mod_exp, nth_residue_test
from pmnstools.poly import (
    IntPoly,
    ModPoly,
    frobenius_power,
    modpoly_gcd,
    modpoly_monic,
    modpoly_sub,
    poly_eval_mod,
    to_dense,
)

logger = logging.getLogger(__name__)


class RootMethod(Enum):
    GCD_FROBENIUS = "GcdFrobenius"
    CYCLOTOMIC_SHORTCUT = "CyclotomicShortcut"
    BINOMIAL_COUNT = "BinomialCount"
    EXHAUSTIVE = "Exhaustive"


@dataclass
class RootReport:
    count: int
    method: RootMethod
    roots: list[int] = field(default_factory=list)

    @property
    def extracted(self) -> bool:
        return len(self.roots) == self.count


def _exhaustive(e: IntPoly, ctx: ModCtx) -> list[int]:
    return [x for x in range(ctx.p) if poly_eval_mod(e, x, ctx.p) == 0]


def _small_prime(e: IntPoly, ctx: ModCtx) -> bool:
    return ctx.p < 2 * e.degree


def linear_part(e: IntPoly, ctx: ModCtx) -> ModPoly:
    """D = gcd(X^p - X, E) mod p, the product of the distinct linear factors of E."""
    f = ModPoly.from_int_poly(e, ctx)
    xp = frobenius_power(e, ctx)
    return modpoly_gcd(modpoly_sub(xp, ModPoly.x(ctx)), f)


def count_roots(e: IntPoly, ctx: ModCtx) -> int:
    if _small_prime(e, ctx):
        return len(_exhaustive(e, ctx))
    return linear_part(e, ctx).degree


def _split(d: ModPoly, seed: int) -> list[int]:
    """Roots of a product of distinct linear factors (equal-degree splitting)."""
    p = d.ctx.p
    if d.degree <= 0:
        return []
    sympy_random.seed(seed)
    factors = gf_edf_zassenhaus(to_dense(modpoly_monic(d)), 1, p, ZZ)
    return [int(-f[1]) % p for f in factors]


def _vanishes_at_zero(e: IntPoly, ctx: ModCtx) -> bool:
    return e.coeffs[0] % ctx.p == 0


def find_roots(e: IntPoly, ctx: ModCtx, seed: int = 0) -> RootReport:
    """All distinct nonzero roots, in ascending order, by equal-degree splitting of D."""
    if _small_prime(e, ctx):
        roots = [x for x in _exhaustive(e, ctx) if x]
        return RootReport(len(roots), RootMethod.EXHAUSTIVE, roots)
    d = linear_part(e, ctx)
    roots = sorted(x for x in _split(d, seed) if x)
    logger.debug(f"{e}: {len(roots)} roots mod a {ctx.p.bit_length()}-bit prime")
    return RootReport(len(roots), RootMethod.GCD_FROBENIUS, roots)


def _cyclotomic_poly(m: int) -> IntPoly:
    x = sympy.Symbol("x")
    return IntPoly(tuple(int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs())))


def cyclo_root_count(m: int, ctx: ModCtx) -> int:
    if (ctx.p - 1) % m == 0:
        return int(totient(m))
    return count_roots(_cyclotomic_poly(m), ctx)


def _element_of_order(m: int, ctx: ModCtx, rng: random.Random) -> int:
    p = ctx.p
    primes = list(factorint(m))
    while True:
        z = mod_exp(rng.randrange(2, p), (p - 1) // m, ctx)
        if all(mod_exp(z, m // q, ctx) != 1 for q in primes):
            return z


def cyclotomic_roots(m: int, ctx: ModCtx, seed: int = 0) -> Optional[list[int]]:
    """Primitive m-th roots of unity mod p, or None when m does not divide p - 1."""
    if (ctx.p - 1) % m:
        return None
    z = _element_of_order(m, ctx, random.Random(seed))
    return sorted(mod_exp(z, k, ctx) for k in range(1, m) if gcd(k, m) == 1)


def cyclo_class_root_count(e: IntPoly, ctx: ModCtx) -> int:
    """Root count of a suitable cyclotomic E from divisibility of p - 1 alone.

    X^n + 1 needs 2n | p - 1, X^n + X^(n/2) + 1 needs 3n/2 | p - 1 and
    X^n - X^(n/2) + 1 needs 3n | p - 1.
    """
    m = cyclotomic_index(e)
    if m is None:
        return count_roots(e, ctx)
    return cyclo_root_count(m, ctx)


def binomial_root_count(n: int, c: int, ctx: ModCtx) -> int:
    if c % ctx.p == 0:
        raise ZeroConstant(f"Constant {c} vanishes modulo {ctx.p}")
    d, has_roots = nth_residue_test(-c, n, ctx)
    return d if has_roots else 0


def root_report(e: IntPoly, ctx: ModCtx, extract: bool = True, seed: int = 0) -> RootReport:
    """Count (and optionally list) roots, using the cheapest method that applies."""
    m = cyclotomic_index(e)
    if m is not None and (ctx.p - 1) % m == 0:
        roots = cyclotomic_roots(m, ctx, seed) if extract else []
        return RootReport(int(totient(m)), RootMethod.CYCLOTOMIC_SHORTCUT, roots)
    if extract:
        return find_roots(e, ctx, seed)
    tail = [t for t in e.terms() if t[0] < e.degree]
    if len(tail) == 1 and tail[0][0] == 0 and tail[0][1] % ctx.p:
        return RootReport(binomial_root_count(e.degree, tail[0][1], ctx), RootMethod.BINOMIAL_COUNT)
    if _small_prime(e, ctx):
        return RootReport(len([x for x in _exhaustive(e, ctx) if x]), RootMethod.EXHAUSTIVE)
    return RootReport(count_roots(e, ctx) - _vanishes_at_zero(e, ctx), RootMethod.GCD_FROBENIUS)
