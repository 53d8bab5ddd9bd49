"""The PMNS lattice, its reduced bases and Babai round-off.

Matrices are numpy arrays of dtype object so that entries stay exact Python
integers; rows are basis vectors.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import sympy
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMRankError, DMShapeError

from pmnstools.classes import certify_irreducible
from pmnstools.errors import (
    BadGamma,
    DimensionMismatch,
    NoUsableRow,
    NotInvertible,
    RankDeficient,
    ZeroVector,
)
from pmnstools.poly import CompanionMatrix, IntPoly, companion_apply

logger = logging.getLogger(__name__)

LLL_DELTA = Fraction(99, 100)


class Strategy(Enum):
    LLL_A = "LllA"
    SHORT_VEC_COMPANION = "ShortVecCompanion"
    BLOCK_LATTICE = "BlockLattice"
    RAW = "Raw"


def as_matrix(rows) -> np.ndarray:
    return np.array([[int(x) for x in row] for row in rows], dtype=object)


def _check_gamma(p: int, gamma: int, n: int):
    if not 0 < gamma < p:
        raise BadGamma(f"gamma must satisfy 0 < gamma < p, got {gamma}")
    if n < 2:
        raise DimensionMismatch(f"Lattice dimension must be at least 2, got {n}")


def build_A(p: int, gamma: int, n: int) -> np.ndarray:
    """Rows p and X^i - gamma X^(i-1)."""
    _check_gamma(p, gamma, n)
    rows = [[0] * n for _ in range(n)]
    rows[0][0] = p
    for i in range(1, n):
        rows[i][i - 1] = -gamma
        rows[i][i] = 1
    return as_matrix(rows)


def build_A_prime(p: int, gamma: int, n: int) -> np.ndarray:
    """Rows p and X^i - gamma^i; same lattice as build_A."""
    _check_gamma(p, gamma, n)
    rows = [[0] * n for _ in range(n)]
    rows[0][0] = p
    for i in range(1, n):
        rows[i][0] = -gamma ** i
        rows[i][i] = 1
    return as_matrix(rows)


def in_lattice(row: Sequence[int], p: int, gamma: int) -> bool:
    acc = 0
    for c in reversed(list(row)):
        acc = (acc * gamma + int(c)) % p
    return acc == 0


def norm1(m) -> int:
    """Maximum over columns of the sum of absolute values."""
    return int(np.abs(np.asarray(m, dtype=object)).sum(axis=0).max())


def rho_from_norm1(norm: int) -> int:
    """Smallest integer strictly above norm / 2."""
    return norm // 2 + 1


def rho_bound(B) -> int:
    return rho_from_norm1(norm1(B))


def int_det(m) -> int:
    return int(sympy.Matrix(np.asarray(m, dtype=object).tolist()).det(method="bareiss"))


# --- LLL -------------------------------------------------------------------

def _dot(u: list[int], v: list[int]) -> int:
    return sum(x * y for x, y in zip(u, v))


def lll_reduce(m, delta: Fraction = LLL_DELTA) -> np.ndarray:
    """LLL reduction in exact rational arithmetic (sympy DomainMatrix)."""
    rows = [[int(x) for x in row] for row in np.asarray(m, dtype=object).tolist()]
    if not rows:
        return as_matrix(rows)
    dm = DomainMatrix([[ZZ(x) for x in row] for row in rows], (len(rows), len(rows[0])), ZZ)
    if dm.rank() < len(rows):
        raise RankDeficient(f"Rows of the {len(rows)}x{len(rows[0])} basis are linearly dependent")
    try:
        reduced = dm.lll(delta=QQ(delta.numerator, delta.denominator))
    except (DMRankError, DMShapeError) as e:
        raise RankDeficient(f"LLL rejected the basis: {e}") from e
    logger.debug(f"LLL on {len(rows)} rows finished")
    return as_matrix(reduced.to_Matrix().tolist())


# --- Alternative bases from the companion action ------------------------------

def basis_from_short_vector(v: Sequence[int], e: IntPoly) -> np.ndarray:
    """Rows V, X V mod E, ..., X^(n-1) V mod E."""
    comp = CompanionMatrix(e)
    row = [int(x) for x in v]
    if len(row) != comp.n:
        raise DimensionMismatch(f"Vector of length {len(row)} for a degree-{comp.n} polynomial")
    if not any(row):
        raise ZeroVector("Cannot derive a basis from the zero vector")
    rows = [row]
    for _ in range(comp.n - 1):
        rows.append(companion_apply(rows[-1], comp))
    B = as_matrix(rows)
    # det of the multiplication-by-V matrix is the resultant of V and E
    if int_det(B) == 0:
        raise NotInvertible(f"V = {row} shares a factor with {e}")
    return B


def block_matrix(A, e: IntPoly) -> np.ndarray:
    """D = (A | A C | ... | A C^(n-1)) for the companion matrix C of e."""
    comp = CompanionMatrix(e)
    rows = []
    for a in np.asarray(A, dtype=object).tolist():
        blocks = [list(a)]
        for _ in range(comp.n - 1):
            blocks.append(companion_apply(blocks[-1], comp))
        rows.append([x for block in blocks for x in block])
    return as_matrix(rows)


def basis_from_block_lattice(A, e: IntPoly) -> np.ndarray:
    """Basis from the row of LLL(D) whose blocks give the smallest 1-norm."""
    n = e.degree
    reduced = lll_reduce(block_matrix(A, e)).tolist()
    best, best_norm = None, None
    for row in reduced:
        blocks = [row[i * n:(i + 1) * n] for i in range(n)]
        if not any(blocks[0]):
            continue
        B = as_matrix(blocks)
        if int_det(B) == 0:
            continue
        nb = norm1(B)
        if best_norm is None or nb < best_norm:
            best, best_norm = B, nb
    if best is None:
        raise NoUsableRow("No reduced row of the block lattice gives an invertible basis")
    return best


def best_short_vector_basis(reduced_A, e: IntPoly) -> np.ndarray:
    """Try every row of a reduced basis as V and keep the smallest 1-norm."""
    best, best_norm = None, None
    for row in np.asarray(reduced_A, dtype=object).tolist():
        try:
            B = basis_from_short_vector(row, e)
        except (NotInvertible, ZeroVector):
            continue
        nb = norm1(B)
        if best_norm is None or nb < best_norm:
            best, best_norm = B, nb
    if best is None:
        raise NoUsableRow("No row of the reduced basis is invertible modulo E")
    return best


# --- Babai round-off -------------------------------------------------------

@dataclass(frozen=True)
class BabaiContext:
    """Basis rows with the adjugate and determinant of the transposed basis."""

    rows: tuple
    adj: tuple
    det: int

    @classmethod
    def from_basis(cls, B) -> "BabaiContext":
        bt = sympy.Matrix(np.asarray(B, dtype=object).tolist()).T
        det = int(bt.det(method="bareiss"))
        if det == 0:
            raise RankDeficient("Singular basis has no round-off context")
        adj = bt.adjugate(method="bareiss")
        rows = tuple(tuple(int(x) for x in row) for row in np.asarray(B, dtype=object).tolist())
        adj_rows = tuple(tuple(int(adj[i, j]) for j in range(adj.cols)) for i in range(adj.rows))
        # keep the denominator positive so rounding is symmetric
        if det < 0:
            det = -det
            adj_rows = tuple(tuple(-x for x in row) for row in adj_rows)
        return cls(rows, adj_rows, det)

    @property
    def n(self) -> int:
        return len(self.rows)


def _round_half_away(num: int, den: int) -> int:
    q = (2 * abs(num) + den) // (2 * den)
    return q if num >= 0 else -q


def babai_reduce(t: Sequence[int], ctx: BabaiContext) -> list[int]:
    """t minus the lattice vector B^T round((B^T)^-1 t)."""
    n = ctx.n
    if len(t) != n:
        raise DimensionMismatch(f"Vector of length {len(t)} for a rank-{n} basis")
    t = [int(x) for x in t]
    coords = [_round_half_away(_dot(list(row), t), ctx.det) for row in ctx.adj]
    return [t[j] - sum(c * ctx.rows[i][j] for i, c in enumerate(coords)) for j in range(n)]


# --- Basis selection -------------------------------------------------------

@dataclass(eq=False)
class ReducedBasis:
    matrix: np.ndarray
    strategy: Strategy
    norm1: int = 0
    det_abs: int = 0
    candidate_norms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.norm1 = norm1(self.matrix)
        self.det_abs = abs(int_det(self.matrix))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def rows(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.matrix.tolist()]


@dataclass
class StrategyPolicy:
    """Which basis constructions to try; irreducible=None certifies E on demand."""

    strategies: tuple = (Strategy.LLL_A, Strategy.SHORT_VEC_COMPANION, Strategy.BLOCK_LATTICE)
    irreducible: Optional[bool] = None


def select_basis(p: int, gamma: int, e: IntPoly, policy: Optional[StrategyPolicy] = None) -> ReducedBasis:
    """Build every applicable basis and keep the one with the smallest 1-norm."""
    policy = policy or StrategyPolicy()
    n = e.degree
    A = build_A(p, gamma, n)
    wanted = set(policy.strategies) or {Strategy.LLL_A}
    irreducible = policy.irreducible
    if irreducible is None and wanted & {Strategy.SHORT_VEC_COMPANION, Strategy.BLOCK_LATTICE}:
        irreducible = certify_irreducible(e) is not None
    if not irreducible:
        if not wanted - {Strategy.SHORT_VEC_COMPANION, Strategy.BLOCK_LATTICE}:
            wanted = {Strategy.LLL_A}
        wanted -= {Strategy.SHORT_VEC_COMPANION, Strategy.BLOCK_LATTICE}

    candidates: dict[Strategy, np.ndarray] = {}
    reduced_A = None
    if wanted & {Strategy.LLL_A, Strategy.SHORT_VEC_COMPANION}:
        reduced_A = lll_reduce(A)
    if Strategy.LLL_A in wanted:
        candidates[Strategy.LLL_A] = reduced_A
    if Strategy.SHORT_VEC_COMPANION in wanted:
        try:
            candidates[Strategy.SHORT_VEC_COMPANION] = best_short_vector_basis(reduced_A, e)
        except NoUsableRow as exc:
            logger.debug(f"{e}: short-vector basis skipped ({exc})")
    if Strategy.BLOCK_LATTICE in wanted:
        try:
            candidates[Strategy.BLOCK_LATTICE] = basis_from_block_lattice(A, e)
        except NoUsableRow as exc:
            logger.debug(f"{e}: block-lattice basis skipped ({exc})")
    if Strategy.RAW in wanted:
        candidates[Strategy.RAW] = A
    if not candidates:
        candidates[Strategy.LLL_A] = lll_reduce(A)

    norms = {s: norm1(m) for s, m in candidates.items()}
    best = None
    for s in Strategy:
        if s in norms and (best is None or norms[s] < norms[best]):
            best = s
    logger.debug(f"{e}, gamma={gamma}: norms {({s.value: v for s, v in norms.items()})}, kept {best.value}")
    return ReducedBasis(candidates[best], best, candidate_norms={s.value: v for s, v in norms.items()})
