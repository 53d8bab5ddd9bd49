"""Families of irreducible sparse reduction polynomials and their predicates.

One-sided criteria return False when inconclusive; they never claim that a
polynomial is reducible. The quadrinomial test is the only exact one.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from itertools import product
from math import comb, gcd
from typing import Iterator, Optional

import sympy
from sympy import factorint, multiplicity, primerange
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_ddf_zassenhaus

from pmnstools.errors import BadConstant, BadExponents, NotMonic, NotPrime, ZeroA1
from pmnstools.modint import ModCtx, is_probable_prime
from pmnstools.poly import (
    IntPoly,
    ModPoly,
    modpoly_derivative,
    modpoly_gcd,
    s_matrix,
    to_dense,
)

logger = logging.getLogger(__name__)

DEFAULT_COEFF_CAP = 8
MODULAR_TEST_PRIMES = 24


class ClassTag(Enum):
    CYCLO = "Cyclo"
    QUADRINOMIAL = "Quadrinomial"
    TRINOMIAL = "Trinomial"
    BINOMIAL = "Binomial"
    PRIMECST = "PrimeCst"
    PERRON = "Perron"
    DUMAS_SPARSE = "DumasSparse"
    BONCIOCAT = "Bonciocat"
    GENERIC = "Generic"


@dataclass
class PolyClass:
    """Certificate of irreducibility: the family and its parameters."""

    tag: ClassTag
    params: dict = field(default_factory=dict)

    def __str__(self) -> str:
        return self.tag.value


@dataclass
class SuitabilityReport:
    irreducible_by: Optional[PolyClass]
    sparse_ok: bool
    small_coeffs_ok: bool
    s: int
    shape_conflict: bool = False

    @property
    def suitable(self) -> bool:
        return self.irreducible_by is not None and self.sparse_ok and self.small_coeffs_ok


def _require_monic(e: IntPoly):
    if not e.is_monic() or e.degree < 2:
        raise NotMonic(f"{e} is not a monic polynomial of degree >= 2")


def _tail(e: IntPoly) -> list[tuple[int, int]]:
    """Nonzero non-leading terms, highest exponent first."""
    return [(i, c) for i, c in e.terms() if i < e.degree]


def is_suitable_shape(e: IntPoly, coeff_cap: int = DEFAULT_COEFF_CAP,
                      certify: bool = True) -> SuitabilityReport:
    _require_monic(e)
    n = e.degree
    tail = _tail(e)
    sparse_ok = all(2 * i <= n for i, _ in tail)
    small_coeffs_ok = all(abs(c) <= coeff_cap for _, c in tail)
    _, s = s_matrix(e)
    cls = certify_irreducible(e) if certify else None
    conflict = cls is not None and cls.tag == ClassTag.QUADRINOMIAL and not sparse_ok
    return SuitabilityReport(cls, sparse_ok, small_coeffs_ok, s, conflict)


# --- General criteria --------------------------------------------------------

def dumas_irreducible(e: IntPoly) -> bool:
    _require_monic(e)
    n = e.degree
    a0 = e.coeffs[0]
    if a0 == 0:
        return False
    for mu, alpha in factorint(abs(a0)).items():
        if gcd(alpha, n) != 1:
            continue
        if all(c == 0 or multiplicity(mu, abs(c)) >= -(-alpha * (n - i) // n)
               for i, c in enumerate(e.coeffs[1:n], start=1)):
            return True
    return False


def bonciocat_irreducible(e: IntPoly) -> bool:
    _require_monic(e)
    n = e.degree
    a0 = e.coeffs[0]
    if a0 == 0:
        return False
    alphas = []
    for mu, alpha in factorint(abs(a0)).items():
        if all(c % mu ** alpha == 0 for c in e.coeffs[1:n]):
            alphas.append(alpha)
    if len(alphas) < 2:
        return False
    return reduce(gcd, alphas, n) == 1


# --- Cyclotomic --------------------------------------------------------------

def _split_23(n: int) -> tuple[int, int, int]:
    i = j = 0
    while n % 2 == 0:
        n //= 2
        i += 1
    while n % 3 == 0:
        n //= 3
        j += 1
    return i, j, n


def cyclo_suitable(n: int) -> list[IntPoly]:
    """Cyclotomic polynomials of degree n with two or three terms."""
    if n < 2:
        return []
    i, j, rest = _split_23(n)
    if rest != 1:
        return []
    found = []
    if j == 0:
        found.append(IntPoly.from_terms({n: 1, 0: 1}))
    if i == 1:
        found.append(IntPoly.from_terms({n: 1, n // 2: 1, 0: 1}))
    if i >= 1:
        found.append(IntPoly.from_terms({n: 1, n // 2: -1, 0: 1}))
    return found


def cyclotomic_index(e: IntPoly) -> Optional[int]:
    """m such that e is the m-th cyclotomic polynomial, for the suitable forms only."""
    if not e.is_monic() or e.degree < 2:
        return None
    n = e.degree
    i, j, rest = _split_23(n)
    if rest != 1:
        return None
    if j == 0 and e == IntPoly.from_terms({n: 1, 0: 1}):
        return 2 * n
    if i == 1 and e == IntPoly.from_terms({n: 1, n // 2: 1, 0: 1}):
        return 3 * n // 2
    if i >= 1 and e == IntPoly.from_terms({n: 1, n // 2: -1, 0: 1}):
        return 3 * n
    return None


# --- {-1, 1} quadrinomials and trinomials ------------------------------------

def quadrinomial_irreducible(a: int, b: int, c: int, beta: int, gamma: int, delta: int) -> bool:
    """Exact test for X^a + beta X^b + gamma X^c + delta with unit signs."""
    if not a > b > c > 0:
        raise BadExponents(f"Need a > b > c > 0, got ({a}, {b}, {c})")
    if {beta, gamma, delta} - {1, -1}:
        raise BadExponents(f"Signs must be +-1, got ({beta}, {gamma}, {delta})")
    g = gcd(a, b, c)
    two_t = g & -g
    a_, b_, c_ = a // two_t, b // two_t, c // two_t
    abar = gcd(a_, b_ - c_)
    bbar = gcd(b_, a_ - c_)
    cbar = gcd(c_, a_ - b_)

    def nz(x: int, m: int) -> bool:
        return x % (2 * m) != 0

    signs = (beta, gamma, delta)
    if signs == (1, 1, 1):
        return (abar * bbar * cbar) % 2 == 1
    if signs == (-1, 1, 1):
        return nz(b_ - c_, abar) and nz(b_, bbar) and nz(a_ - b_, cbar)
    if signs == (1, -1, 1):
        return nz(b_ - c_, abar) and nz(a_ - c_, bbar) and nz(c_, cbar)
    if signs == (1, 1, -1):
        return nz(a_, abar) and nz(b_, bbar) and nz(c_, cbar)
    if signs == (-1, -1, -1):
        return nz(a_, abar) and nz(a_ - c_, bbar) and nz(a_ - b_, cbar)
    # remaining sign patterns vanish at X = 1
    return False


def trinomial_irreducible(n: int, m: int, beta: int, delta: int) -> bool:
    if not n > 2 * m > 0:
        raise BadExponents(f"Need n > 2m > 0, got n={n}, m={m}")
    d = gcd(n, m)
    return (n // d + m // d) % 3 != 0


def binomial_irreducible(n: int, c: int) -> bool:
    if abs(c) < 2:
        raise BadConstant(f"Binomial constant must satisfy |c| >= 2, got {c}")
    return reduce(gcd, factorint(abs(c)).values(), n) == 1


# --- Enumerators -------------------------------------------------------------

def trinomial_enumerate(n: int) -> Iterator[IntPoly]:
    for m in range(1, (n - 1) // 2 + 1):
        for beta, delta in product((1, -1), repeat=2):
            if trinomial_irreducible(n, m, beta, delta):
                yield IntPoly.from_terms({n: 1, m: beta, 0: delta})


def quadrinomial_enumerate(n: int) -> Iterator[IntPoly]:
    """Certified quadrinomials of degree n whose middle exponents are at most n/2."""
    for b in range(n // 2, 1, -1):
        for c in range(b - 1, 0, -1):
            for beta, gamma, delta in product((1, -1), repeat=3):
                if quadrinomial_irreducible(n, b, c, beta, gamma, delta):
                    yield IntPoly.from_terms({n: 1, b: beta, c: gamma, 0: delta})


def binomial_enumerate(n: int, c_cap: int = DEFAULT_COEFF_CAP) -> Iterator[IntPoly]:
    for mag in range(2, c_cap + 1):
        for c in (mag, -mag):
            if binomial_irreducible(n, c):
                yield IntPoly.from_terms({n: 1, 0: c})


def dumas_enumerate(n: int, cap: int = DEFAULT_COEFF_CAP) -> Iterator[IntPoly]:
    """X^n + mu X^k + mu for primes mu <= cap and 1 <= k <= n/2."""
    for mu in primerange(2, cap + 1):
        for k in range(1, n // 2 + 1):
            e = IntPoly.from_terms({n: 1, k: mu, 0: mu})
            if dumas_irreducible(e):
                yield e


def bonciocat_enumerate(n: int, cap: int = DEFAULT_COEFF_CAP) -> Iterator[IntPoly]:
    """X^n + c X^k + c where c has at least two distinct prime factors."""
    for c in range(6, cap + 1):
        if len(factorint(c)) < 2:
            continue
        for k in range(1, n // 2 + 1):
            e = IntPoly.from_terms({n: 1, k: c, 0: c})
            if bonciocat_irreducible(e):
                yield e


def primecst_enumerate(n: int, mu: int) -> Iterator[IntPoly]:
    """X^n + sum eps_i X^i +- mu, i <= n/2, eps in {-1, 0, 1}, mu > 1 + sum |eps_i|."""
    if not is_probable_prime(mu):
        raise NotPrime(f"{mu} is not prime")
    half = n // 2
    for eps in product((0, 1, -1), repeat=half):
        if mu > 1 + sum(map(abs, eps)):
            for sign in (1, -1):
                yield IntPoly((sign * mu, *eps) + (0,) * (n - half - 1) + (1,))


def perron_enumerate(n: int, a1: int) -> Iterator[IntPoly]:
    """X^n + sum eps_i X^i + a1 X +- 1, 2 <= i <= n/2, |a1| > 2 + sum |eps_i|."""
    if a1 == 0:
        raise ZeroA1("Linear coefficient a1 must be nonzero")
    half = n // 2
    for eps in product((0, 1, -1), repeat=max(half - 1, 0)):
        if abs(a1) > 2 + sum(map(abs, eps)):
            for sign in (1, -1):
                yield IntPoly((sign, a1, *eps) + (0,) * (n - max(half, 1) - 1) + (1,))


def primecst_count(n: int, mu: int, both_signs: bool = True) -> int:
    """Closed-form size of the PrimeCst family.

    With both_signs=False and mu > n/2 + 1 this is the 3^(n/2) figure that
    counts one sign of the constant only.
    """
    half = n // 2
    total = sum(comb(half, i) * 2 ** (i + 1) for i in range(0, min(mu - 2, half) + 1))
    return total if both_signs else total // 2


def perron_count(n: int, a1: int, both_signs: bool = True) -> int:
    half = max(n // 2 - 1, 0)
    total = sum(comb(half, i) * 2 ** (i + 1) for i in range(0, min(abs(a1) - 3, half) + 1))
    return total if both_signs else total // 2


# --- Class membership --------------------------------------------------------

def _as_primecst(e: IntPoly) -> Optional[PolyClass]:
    n = e.degree
    mu = abs(e.coeffs[0])
    rest = e.coeffs[1:n]
    if mu < 2 or any(c and (2 * i > n or abs(c) > 1) for i, c in enumerate(rest, start=1)):
        return None
    if not is_probable_prime(mu) or mu <= 1 + sum(map(abs, rest)):
        return None
    return PolyClass(ClassTag.PRIMECST, {"n": n, "mu": mu})


def _as_perron(e: IntPoly) -> Optional[PolyClass]:
    n = e.degree
    if abs(e.coeffs[0]) != 1 or n < 2:
        return None
    a1 = e.coeffs[1]
    rest = e.coeffs[2:n]
    if a1 == 0 or any(c and (2 * i > n or abs(c) > 1) for i, c in enumerate(rest, start=2)):
        return None
    if abs(a1) <= 2 + sum(map(abs, rest)):
        return None
    return PolyClass(ClassTag.PERRON, {"n": n, "a1": a1})


def _as_unit_sparse(e: IntPoly) -> Optional[PolyClass]:
    n = e.degree
    tail = _tail(e)
    if not tail or tail[-1][0] != 0 or any(abs(c) != 1 for _, c in tail):
        return None
    if len(tail) == 2:
        (m, beta), (_, delta) = tail
        if n > 2 * m and trinomial_irreducible(n, m, beta, delta):
            return PolyClass(ClassTag.TRINOMIAL, {"n": n, "m": m, "beta": beta, "delta": delta})
    if len(tail) == 3:
        (b, beta), (c, gamma), (_, delta) = tail
        if quadrinomial_irreducible(n, b, c, beta, gamma, delta):
            return PolyClass(ClassTag.QUADRINOMIAL,
                             {"a": n, "b": b, "c": c, "signs": (beta, gamma, delta)})
    return None


def _squarefree_mod(e: IntPoly, ctx: ModCtx) -> Optional[ModPoly]:
    f = ModPoly.from_int_poly(e, ctx)
    if f.degree != e.degree:
        return None
    if modpoly_gcd(f, modpoly_derivative(f)).degree != 0:
        return None
    return f


def factor_degrees_mod(f: ModPoly) -> list[int]:
    """Degrees of the irreducible factors of a squarefree monic f (distinct-degree split)."""
    degrees = []
    for g, d in gf_ddf_zassenhaus(to_dense(f), f.ctx.p, ZZ):
        degrees += [d] * ((len(g) - 1) // d)
    return sorted(degrees)


def _subset_sums(degrees: list[int]) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def modular_irreducible(e: IntPoly, max_primes: int = MODULAR_TEST_PRIMES) -> bool:
    """Irreducibility certificate from factorisation patterns modulo small primes.

    Any factor over Z of degree k forces k to be a sum of factor degrees
    modulo every prime where e stays squarefree.
    """
    _require_monic(e)
    n = e.degree
    possible = set(range(1, n))
    used = 0
    for q in primerange(3, 10_000):
        if used >= max_primes:
            break
        f = _squarefree_mod(e, ModCtx(q))
        if f is None:
            continue
        used += 1
        degrees = factor_degrees_mod(f)
        possible &= _subset_sums(degrees)
        if not possible:
            logger.debug(f"{e}: irreducible by degree patterns after {used} primes")
            return True
    return False


def certify_irreducible(e: IntPoly, exact: bool = True) -> Optional[PolyClass]:
    """Family that proves e irreducible, trying the cheap criteria first."""
    _require_monic(e)
    n = e.degree
    m = cyclotomic_index(e)
    if m is not None:
        return PolyClass(ClassTag.CYCLO, {"m": m})
    tail = _tail(e)
    if len(tail) == 1 and tail[0][0] == 0 and abs(tail[0][1]) >= 2:
        c = tail[0][1]
        if binomial_irreducible(n, c):
            return PolyClass(ClassTag.BINOMIAL, {"n": n, "c": c})
    found = _as_unit_sparse(e)
    if found is not None:
        return found
    if dumas_irreducible(e):
        return PolyClass(ClassTag.DUMAS_SPARSE, {"a0": e.coeffs[0]})
    if bonciocat_irreducible(e):
        return PolyClass(ClassTag.BONCIOCAT, {"a0": e.coeffs[0]})
    for check in (_as_primecst, _as_perron):
        found = check(e)
        if found is not None:
            return found
    if modular_irreducible(e):
        return PolyClass(ClassTag.GENERIC, {"method": "modular"})
    if exact:
        x = sympy.Symbol("x")
        if sympy.Poly(list(reversed(e.coeffs)), x).is_irreducible:
            return PolyClass(ClassTag.GENERIC, {"method": "exact"})
    return None
