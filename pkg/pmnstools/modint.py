"""Arbitrary-precision modular integer primitives backed by gmpy2."""
import logging
from dataclasses import dataclass
from math import gcd

import gmpy2

from pmnstools.errors import NotInvertible, NotPrime, ZeroInput

logger = logging.getLogger(__name__)

MILLER_RABIN_ROUNDS = 64


@dataclass(frozen=True)
class ModCtx:
    """Modulus context. Primality of p is checked by callers that need it."""

    p: int

    def __post_init__(self):
        if self.p < 3:
            raise ValueError(f"Modulus must be at least 3, got {self.p}")


def is_probable_prime(p: int) -> bool:
    """Miller-Rabin with a fixed number of rounds (deterministic for a given p)."""
    if p < 2:
        return False
    return bool(gmpy2.is_prime(p, MILLER_RABIN_ROUNDS))


def require_prime(p: int) -> int:
    if not is_probable_prime(p):
        raise NotPrime(f"{p} is not prime")
    return p


def mod_exp(base: int, exp: int, ctx: ModCtx) -> int:
    """Return base^exp mod p."""
    return int(gmpy2.powmod(base % ctx.p, exp, ctx.p))


def mod_inv(a: int, ctx: ModCtx) -> int:
    """Return the inverse of a mod p."""
    try:
        return int(gmpy2.invert(a % ctx.p, ctx.p))
    except ZeroDivisionError as exc:
        raise NotInvertible(f"{a} is not invertible modulo {ctx.p}") from exc


def nth_residue_test(a: int, n: int, ctx: ModCtx) -> tuple[int, bool]:
    """Solvability of X^n = a mod p.

    Returns (d, has_roots) with d = gcd(n, p - 1). When has_roots is true the
    congruence has exactly d solutions. Uses the power-residue criterion
    a^((p-1)/d) = 1 instead of a discrete logarithm.
    """
    a %= ctx.p
    if a == 0:
        raise ZeroInput(f"Residue test needs a unit, got 0 mod {ctx.p}")
    d = gcd(n, ctx.p - 1)
    return d, mod_exp(a, (ctx.p - 1) // d, ctx) == 1


def centered(x: int, p: int) -> int:
    """Representative of x mod p in (-p/2, p/2]."""
    x %= p
    return x - p if 2 * x > p else x
