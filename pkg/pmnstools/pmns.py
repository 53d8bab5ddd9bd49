"""PMNS systems (p, n, gamma, rho)_E and their arithmetic."""
import logging
from dataclasses import dataclass
from itertools import product
from typing import Optional

from pmnstools.errors import (
    BasisMismatch,
    BadGamma,
    DimensionMismatch,
    HomomorphismFailure,
    LatticeMembership,
    NotARoot,
    NotMonic,
    OutOfRange,
    RankDeficient,
    RhoBound,
    TooLarge,
    UnknownExample,
)
from pmnstools.lattice import (
    BabaiContext,
    ReducedBasis,
    StrategyPolicy,
    babai_reduce,
    in_lattice,
    rho_bound,
    select_basis,
)
from pmnstools.modint import ModCtx, mod_exp, require_prime
from pmnstools.poly import IntPoly, poly_eval_mod, poly_mod, poly_mul, s_matrix

logger = logging.getLogger(__name__)

ENUMERATION_LIMIT = 10 ** 8

# worked systems with the digit bound their representation tables use
EXAMPLES = {
    "ex1a": (23, 3, 7, IntPoly((2, 0, 0, 1)), 2),
    "ex1b": (31, 4, 15, IntPoly((-2, 0, 0, 0, 1)), 2),
}


class PmnsBasis:
    """A validated PMNS: lattice basis, round-off context and digit bound."""

    def __init__(self, p: int, gamma: int, e: IntPoly, reduced: ReducedBasis, rho: Optional[int] = None):
        require_prime(p)
        if not e.is_monic() or e.degree < 2:
            raise NotMonic(f"{e} is not a monic polynomial of degree >= 2")
        if not 0 < gamma < p:
            raise BadGamma(f"gamma must satisfy 0 < gamma < p, got {gamma}")
        if poly_eval_mod(e, gamma, p):
            raise NotARoot(f"{gamma} is not a root of {e} modulo {p}")
        if reduced.n != e.degree:
            raise DimensionMismatch(f"Basis of rank {reduced.n} for a degree-{e.degree} polynomial")
        for row in reduced.rows():
            if not in_lattice(row, p, gamma):
                raise LatticeMembership(f"Row {row} does not vanish at gamma modulo p")
        if reduced.det_abs == 0:
            raise RankDeficient("Basis is singular")
        if reduced.det_abs % p:
            raise LatticeMembership(f"Basis determinant {reduced.det_abs} is not a multiple of p")

        self.p = p
        self.n = e.degree
        self.gamma = gamma
        self.e = e
        self.basis = reduced
        self.rho = rho_bound(reduced.matrix) if rho is None else rho
        if 2 * self.rho <= reduced.norm1:
            raise RhoBound(f"rho = {self.rho} does not exceed norm1 / 2 = {reduced.norm1} / 2")
        if (2 * self.rho - 1) ** self.n < p:
            raise RhoBound(f"(2 rho - 1)^n < p for rho = {self.rho}")
        self.s = s_matrix(e)[1]
        self.babai = BabaiContext.from_basis(reduced.matrix)
        self.ctx = ModCtx(p)

    @property
    def norm1(self) -> int:
        return self.basis.norm1

    @property
    def rho_bits(self) -> int:
        return self.rho.bit_length()

    @property
    def strategy(self):
        return self.basis.strategy

    @property
    def key(self) -> tuple:
        return (self.p, self.gamma, self.e.coeffs, self.rho,
                tuple(tuple(r) for r in self.basis.rows()))

    def __eq__(self, other) -> bool:
        return isinstance(other, PmnsBasis) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"PmnsBasis(p={self.p}, n={self.n}, gamma={self.gamma}, E={self.e}, rho={self.rho})"

    def with_rho(self, rho: int) -> "PmnsBasis":
        """Same system with another digit bound; must still exceed norm1 / 2."""
        return PmnsBasis(self.p, self.gamma, self.e, self.basis, rho)


def new_basis(p: int, n: int, gamma: int, e: IntPoly,
              policy: Optional[StrategyPolicy] = None, rho: Optional[int] = None) -> PmnsBasis:
    require_prime(p)
    if e.degree != n:
        raise DimensionMismatch(f"E has degree {e.degree}, expected {n}")
    if not e.is_monic():
        raise NotMonic(f"{e} is not monic")
    if not 0 < gamma < p:
        raise BadGamma(f"gamma must satisfy 0 < gamma < p, got {gamma}")
    if poly_eval_mod(e, gamma, p):
        raise NotARoot(f"{gamma} is not a root of {e} modulo {p}")
    reduced = select_basis(p, gamma, e, policy)
    basis = PmnsBasis(p, gamma, e, reduced, rho)
    logger.debug(f"{basis!r} via {reduced.strategy.value}, norm1={reduced.norm1}")
    return basis


def example_basis(example_id: str) -> tuple[PmnsBasis, int]:
    """One of the small worked systems and the digit bound of its table."""
    try:
        p, n, gamma, e, table_rho = EXAMPLES[example_id]
    except KeyError as exc:
        raise UnknownExample(f"Unknown example '{example_id}', expected one of {sorted(EXAMPLES)}") from exc
    return new_basis(p, n, gamma, e), table_rho


def trivial_reduction_polynomial(p: int, n: int, gamma: int) -> IntPoly:
    """X^n - (gamma^n mod p), which vanishes at gamma for any choice of gamma."""
    return IntPoly.from_terms({n: 1, 0: -mod_exp(gamma, n, ModCtx(p))})


@dataclass(frozen=True)
class PmnsElem:
    digits: tuple
    basis: PmnsBasis

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        if len(self.digits) != self.basis.n:
            raise DimensionMismatch(f"{len(self.digits)} digits for an n = {self.basis.n} system")
        if any(abs(d) >= self.basis.rho for d in self.digits):
            raise OutOfRange(f"Digits {self.digits} exceed rho = {self.basis.rho}")

    def __int__(self) -> int:
        return from_pmns(self, self.basis)


def to_pmns(a: int, basis: PmnsBasis) -> PmnsElem:
    if not 0 <= a < basis.p:
        raise OutOfRange(f"{a} is not in [0, {basis.p})")
    return PmnsElem(tuple(babai_reduce([a] + [0] * (basis.n - 1), basis.babai)), basis)


def from_pmns(x: PmnsElem, basis: PmnsBasis) -> int:
    acc = 0
    for d in reversed(x.digits):
        acc = (acc * basis.gamma + d) % basis.p
    return acc


def _same_basis(x: PmnsElem, y: PmnsElem, basis: PmnsBasis):
    if x.basis != basis or y.basis != basis:
        raise BasisMismatch("Operands belong to different PMNS bases")


def pmns_add(x: PmnsElem, y: PmnsElem, basis: PmnsBasis) -> PmnsElem:
    _same_basis(x, y, basis)
    total = [a + b for a, b in zip(x.digits, y.digits)]
    return PmnsElem(tuple(babai_reduce(total, basis.babai)), basis)


def pmns_mul(x: PmnsElem, y: PmnsElem, basis: PmnsBasis) -> PmnsElem:
    """Product, reduced first modulo E then by Babai round-off."""
    _same_basis(x, y, basis)
    t = poly_mod(poly_mul(IntPoly(x.digits), IntPoly(y.digits)), basis.e)
    if t.norm_inf() >= basis.s * basis.n * basis.rho ** 2:
        raise HomomorphismFailure(f"Coefficient growth {t.norm_inf()} exceeds s n rho^2")
    return PmnsElem(tuple(babai_reduce(t.padded(basis.n), basis.babai)), basis)


def enumerate_representations(a: int, basis: PmnsBasis, rho: Optional[int] = None) -> list[PmnsElem]:
    """Every digit vector with entries in (-rho, rho) that evaluates to a, sorted."""
    rho = basis.rho if rho is None else rho
    p, n, gamma = basis.p, basis.n, basis.gamma
    if (2 * rho - 1) ** n > ENUMERATION_LIMIT:
        raise TooLarge(f"(2 rho - 1)^n = {(2 * rho - 1) ** n} vectors is too many to enumerate")
    owner = basis if rho <= basis.rho else basis.with_rho(rho)
    powers = [mod_exp(gamma, i, basis.ctx) for i in range(1, n)]
    a %= p
    found = []
    lo = 1 - rho
    for tail in product(range(lo, rho), repeat=n - 1):
        r = (a - sum(d * g for d, g in zip(tail, powers))) % p
        d0 = r - ((r - lo) // p) * p
        while d0 < rho:
            found.append(PmnsElem((d0,) + tail, owner))
            d0 += p
    return sorted(found, key=lambda x: x.digits)


def redundancy(a: int, basis: PmnsBasis, rho: Optional[int] = None) -> int:
    return len(enumerate_representations(a, basis, rho))


def check_homomorphism(basis: PmnsBasis, trials: int, rng) -> int:
    """Random add/mul comparisons against integer arithmetic mod p; returns trials run."""
    p = basis.p
    for _ in range(trials):
        a, b = rng.randrange(p), rng.randrange(p)
        x, y = to_pmns(a, basis), to_pmns(b, basis)
        if from_pmns(x, basis) != a:
            raise HomomorphismFailure(f"Conversion of {a} does not round-trip")
        if from_pmns(pmns_add(x, y, basis), basis) != (a + b) % p:
            raise HomomorphismFailure(f"Addition {a} + {b} disagrees with the integer result")
        if from_pmns(pmns_mul(x, y, basis), basis) != a * b % p:
            raise HomomorphismFailure(f"Multiplication {a} * {b} disagrees with the integer result")
    return trials
