"""Dense polynomial arithmetic over Z and over Z/pZ.

Coefficients are stored in ascending degree order; the zero polynomial has
no coefficients and degree -1.
"""
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_diff,
    gf_div,
    gf_gcd,
    gf_monic,
    gf_mul,
    gf_pow_mod,
    gf_sub,
)

from pmnstools.errors import CtxMismatch, DimensionMismatch, NotMonic, ZeroInput
from pmnstools.modint import ModCtx

logger = logging.getLogger(__name__)


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, ascending coefficients."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @classmethod
    def from_terms(cls, terms: dict[int, int]) -> "IntPoly":
        """Build from {exponent: coefficient}."""
        if not terms:
            return cls()
        coeffs = [0] * (max(terms) + 1)
        for exp, c in terms.items():
            coeffs[exp] += c
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def terms(self) -> list[tuple[int, int]]:
        """Nonzero (exponent, coefficient) pairs, highest exponent first."""
        return [(i, c) for i, c in reversed(list(enumerate(self.coeffs))) if c]

    def padded(self, n: int) -> list[int]:
        """Coefficient vector of length n (degree must be below n)."""
        if self.degree >= n:
            raise DimensionMismatch(f"Degree {self.degree} does not fit in {n} coefficients")
        return list(self.coeffs) + [0] * (n - len(self.coeffs))

    def norm_inf(self) -> int:
        return max((abs(c) for c in self.coeffs), default=0)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for exp, c in self.terms():
            mag = abs(c)
            if exp == 0:
                body = str(mag)
            else:
                mono = "X" if exp == 1 else f"X^{exp}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def poly_add(a: IntPoly, b: IntPoly) -> IntPoly:
    size = max(len(a.coeffs), len(b.coeffs))
    return IntPoly(tuple(
        (a.coeffs[i] if i < len(a.coeffs) else 0) + (b.coeffs[i] if i < len(b.coeffs) else 0)
        for i in range(size)
    ))


def poly_sub(a: IntPoly, b: IntPoly) -> IntPoly:
    return poly_add(a, IntPoly(tuple(-c for c in b.coeffs)))


def poly_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    """Schoolbook product."""
    if a.is_zero() or b.is_zero():
        return IntPoly()
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                out[i + j] += x * y
    return IntPoly(tuple(out))


def _require_monic(e: IntPoly, min_degree: int = 1):
    if not e.is_monic():
        raise NotMonic(f"Reduction polynomial {e} is not monic")
    if e.degree < min_degree:
        raise NotMonic(f"Reduction polynomial {e} must have degree >= {min_degree}")


def poly_mod(t: IntPoly, e: IntPoly) -> IntPoly:
    """Remainder of t by the monic polynomial e."""
    _require_monic(e)
    n = e.degree
    r = list(t.coeffs)
    for i in range(len(r) - 1, n - 1, -1):
        c = r[i]
        if c:
            for j in range(n):
                r[i - n + j] -= c * e.coeffs[j]
            r[i] = 0
    return IntPoly(tuple(r[:n]))


def poly_eval_mod(e: IntPoly, x: int, p: int) -> int:
    """Horner evaluation of e at x, reduced mod p."""
    acc = 0
    for c in reversed(e.coeffs):
        acc = (acc * x + c) % p
    return acc


@dataclass(frozen=True)
class CompanionMatrix:
    """Multiplication-by-X matrix of a monic polynomial, acting on row vectors."""

    source: IntPoly

    def __post_init__(self):
        _require_monic(self.source, min_degree=2)

    @property
    def n(self) -> int:
        return self.source.degree

    def matrix(self) -> np.ndarray:
        n = self.n
        rows = [[1 if j == i + 1 else 0 for j in range(n)] for i in range(n - 1)]
        rows.append([-c for c in self.source.coeffs[:n]])
        return np.array(rows, dtype=object)


def companion_apply(v: Sequence[int], c: CompanionMatrix) -> list[int]:
    """Coefficients of X*V(X) mod E(X)."""
    n = c.n
    if len(v) != n:
        raise DimensionMismatch(f"Vector of length {len(v)} for a degree-{n} polynomial")
    top = v[-1]
    e = c.source.coeffs
    return [(v[j - 1] if j else 0) - top * e[j] for j in range(n)]


def s_matrix(e: IntPoly) -> tuple[np.ndarray, int]:
    """Rows X^i mod E for i < 2n - 1 and their max column sum of absolute values."""
    _require_monic(e, min_degree=2)
    comp = CompanionMatrix(e)
    n = e.degree
    row = [1] + [0] * (n - 1)
    rows = [row]
    for _ in range(2 * n - 2):
        row = companion_apply(row, comp)
        rows.append(row)
    S = np.array(rows, dtype=object)
    s = int(np.abs(S).sum(axis=0).max())
    return S, s


# --- Polynomials over Z/pZ ---------------------------------------------------

@dataclass(frozen=True)
class ModPoly:
    """Polynomial with coefficients in [0, p), ascending, trimmed."""

    coeffs: tuple[int, ...]
    ctx: ModCtx

    def __post_init__(self):
        p = self.ctx.p
        object.__setattr__(self, "coeffs", _trim(int(c) % p for c in self.coeffs))

    @classmethod
    def from_int_poly(cls, e: IntPoly, ctx: ModCtx) -> "ModPoly":
        return cls(e.coeffs, ctx)

    @classmethod
    def x(cls, ctx: ModCtx) -> "ModPoly":
        return cls((0, 1), ctx)

    @classmethod
    def one(cls, ctx: ModCtx) -> "ModPoly":
        return cls((1,), ctx)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.ctx.p
        return acc


def _same_ctx(a: ModPoly, b: ModPoly) -> ModCtx:
    if a.ctx != b.ctx:
        raise CtxMismatch(f"Moduli differ: {a.ctx.p} and {b.ctx.p}")
    return a.ctx


def to_dense(a: ModPoly) -> list:
    """Descending ZZ coefficients, the galoistools layout."""
    return [ZZ(c) for c in reversed(a.coeffs)]


def from_dense(f: Sequence[int], ctx: ModCtx) -> ModPoly:
    return ModPoly(tuple(int(c) for c in reversed(f)), ctx)


def modpoly_add(a: ModPoly, b: ModPoly) -> ModPoly:
    ctx = _same_ctx(a, b)
    return from_dense(gf_add(to_dense(a), to_dense(b), ctx.p, ZZ), ctx)


def modpoly_sub(a: ModPoly, b: ModPoly) -> ModPoly:
    ctx = _same_ctx(a, b)
    return from_dense(gf_sub(to_dense(a), to_dense(b), ctx.p, ZZ), ctx)


def modpoly_mul(a: ModPoly, b: ModPoly) -> ModPoly:
    ctx = _same_ctx(a, b)
    return from_dense(gf_mul(to_dense(a), to_dense(b), ctx.p, ZZ), ctx)


def modpoly_monic(a: ModPoly) -> ModPoly:
    if a.is_zero():
        return a
    _, f = gf_monic(to_dense(a), a.ctx.p, ZZ)
    return from_dense(f, a.ctx)


def modpoly_divmod(a: ModPoly, b: ModPoly) -> tuple[ModPoly, ModPoly]:
    ctx = _same_ctx(a, b)
    if b.is_zero():
        raise ZeroInput("Polynomial division by zero")
    q, r = gf_div(to_dense(a), to_dense(b), ctx.p, ZZ)
    return from_dense(q, ctx), from_dense(r, ctx)


def modpoly_mod(a: ModPoly, b: ModPoly) -> ModPoly:
    return modpoly_divmod(a, b)[1]


def modpoly_powmod(base: ModPoly, exp: int, modulus: ModPoly) -> ModPoly:
    """base^exp mod modulus."""
    ctx = _same_ctx(base, modulus)
    if modulus.is_zero():
        raise ZeroInput("Polynomial division by zero")
    f = gf_pow_mod(to_dense(base), int(exp), to_dense(modulus), ctx.p, ZZ)
    return modpoly_mod(from_dense(f, ctx), modulus)


def modpoly_derivative(a: ModPoly) -> ModPoly:
    return from_dense(gf_diff(to_dense(a), a.ctx.p, ZZ), a.ctx)


def modpoly_gcd(a: ModPoly, b: ModPoly) -> ModPoly:
    """Monic gcd in (Z/pZ)[X]."""
    ctx = _same_ctx(a, b)
    if a.is_zero() and b.is_zero():
        raise ZeroInput("gcd(0, 0) is undefined")
    return from_dense(gf_gcd(to_dense(a), to_dense(b), ctx.p, ZZ), ctx)


def frobenius_power(e: IntPoly, ctx: ModCtx) -> ModPoly:
    """X^p mod E mod p."""
    _require_monic(e, min_degree=2)
    modulus = ModPoly.from_int_poly(e, ctx)
    return modpoly_powmod(ModPoly.x(ctx), ctx.p, modulus)
