from fractions import Fraction

import pytest

from pmnstools.errors import BadGamma, DimensionMismatch, NotInvertible, RankDeficient, ZeroVector
from pmnstools.lattice import (
    LLL_DELTA,
    BabaiContext,
    Strategy,
    StrategyPolicy,
    as_matrix,
    babai_reduce,
    basis_from_block_lattice,
    basis_from_short_vector,
    best_short_vector_basis,
    block_matrix,
    build_A,
    build_A_prime,
    in_lattice,
    int_det,
    lll_reduce,
    norm1,
    rho_bound,
    rho_from_norm1,
    select_basis,
)
from pmnstools.poly import IntPoly

E3 = IntPoly((2, 0, 0, 1))


def gram_schmidt(rows):
    """Orthogonalised rows and mu coefficients, exactly."""
    rows = [[Fraction(x) for x in r] for r in rows]
    star, mu = [], {}
    for i, r in enumerate(rows):
        v = list(r)
        for j, s in enumerate(star):
            mu[i, j] = sum(a * b for a, b in zip(r, s)) / sum(b * b for b in s)
            v = [a - mu[i, j] * b for a, b in zip(v, s)]
        star.append(v)
    return star, mu


def assert_lll_reduced(B, delta=LLL_DELTA):
    rows = B.tolist()
    star, mu = gram_schmidt(rows)
    norms = [sum(x * x for x in s) for s in star]
    assert all(abs(m) <= Fraction(1, 2) for m in mu.values())
    for k in range(1, len(rows)):
        assert norms[k] >= (delta - mu[k, k - 1] ** 2) * norms[k - 1]


def test_build_A():
    assert build_A(23, 7, 3).tolist() == [[23, 0, 0], [-7, 1, 0], [0, -7, 1]]
    assert build_A_prime(23, 7, 3).tolist() == [[23, 0, 0], [-7, 1, 0], [-49, 0, 1]]
    with pytest.raises(BadGamma):
        build_A(23, 0, 3)
    with pytest.raises(BadGamma):
        build_A(23, 23, 3)
    with pytest.raises(DimensionMismatch):
        build_A(23, 7, 1)


def test_lattice_rows_vanish_at_gamma():
    for m in (build_A(23, 7, 3), build_A_prime(23, 7, 3), build_A(31, 15, 4)):
        assert all(in_lattice(row, m[0][0], 7 if m[0][0] == 23 else 15) for row in m.tolist())
    assert in_lattice([2, 3, 0], 23, 7)
    assert not in_lattice([1, 0, 0], 23, 7)


def test_both_constructions_span_the_same_lattice():
    A, Ap = build_A(23, 7, 3), build_A_prime(23, 7, 3)
    assert abs(int_det(A)) == abs(int_det(Ap)) == 23


def test_norm1_and_rho_bound():
    assert norm1(as_matrix([[1, -2], [3, 4]])) == 6
    assert rho_bound(as_matrix([[1, -2], [3, 4]])) == 4
    assert rho_bound(as_matrix([[1, 0], [0, 1]])) == 1
    assert rho_from_norm1(5) == 3 and rho_from_norm1(4) == 3
    assert norm1(build_A(23, 7, 3)) == 30


def test_lll_reduce_small_lattices():
    for p, gamma, n in ((23, 7, 3), (31, 15, 4), (2 ** 61 - 1, 123456789, 5)):
        A = build_A(p, gamma, n)
        B = lll_reduce(A)
        assert abs(int_det(B)) == p
        assert all(in_lattice(row, p, gamma) for row in B.tolist())
        assert_lll_reduced(B)


def test_lll_shrinks_entries():
    p = 2 ** 127 - 1
    gamma = pow(3, 200, p)
    B = lll_reduce(build_A(p, gamma, 4))
    # Minkowski: entries near p^(1/4)
    assert norm1(B) < 2 ** 40


def test_lll_rejects_dependent_rows():
    with pytest.raises(RankDeficient):
        lll_reduce(as_matrix([[1, 2], [2, 4]]))
    with pytest.raises(RankDeficient):
        lll_reduce(as_matrix([[0, 0], [1, 1]]))
    with pytest.raises(RankDeficient):
        lll_reduce(as_matrix([[1, 0], [0, 1], [1, 1]]))


def test_lll_reduce_ex1a_basis():
    B = lll_reduce(build_A(23, 7, 3))
    assert B.tolist() == [[-1, 1, -2], [-3, 0, 1], [-1, 3, 1]]
    assert norm1(B) == 5


def test_basis_from_short_vector():
    B = basis_from_short_vector([2, 3, 0], E3)
    assert B.tolist() == [[2, 3, 0], [0, 2, 3], [-6, 0, 2]]
    assert all(in_lattice(row, 23, 7) for row in B.tolist())
    with pytest.raises(ZeroVector):
        basis_from_short_vector([0, 0, 0], E3)
    with pytest.raises(DimensionMismatch):
        basis_from_short_vector([1, 2], E3)
    # 1 + X divides X^3 + 1
    with pytest.raises(NotInvertible):
        basis_from_short_vector([1, 1, 0], IntPoly((1, 0, 0, 1)))


def test_block_lattice():
    A = build_A(23, 7, 3)
    D = block_matrix(A, E3)
    assert D.shape == (3, 9)
    assert D[:, :3].tolist() == A.tolist()
    B = basis_from_block_lattice(A, E3)
    assert int_det(B) % 23 == 0 and int_det(B) != 0
    assert all(in_lattice(row, 23, 7) for row in B.tolist())


def test_best_short_vector_basis():
    reduced = lll_reduce(build_A(23, 7, 3))
    B = best_short_vector_basis(reduced, E3)
    candidates = []
    for row in reduced.tolist():
        try:
            candidates.append(norm1(basis_from_short_vector(row, E3)))
        except (NotInvertible, ZeroVector):
            pass
    assert norm1(B) == min(candidates)


def test_babai_reduce_contract():
    B = lll_reduce(build_A(2 ** 61 - 1, 987654321, 4))
    ctx = BabaiContext.from_basis(B)
    assert ctx.det == 2 ** 61 - 1
    bound = norm1(B)
    for t in ([5, 0, 0, 0], [2 ** 60, -17, 3, 99], [-(10 ** 12), 10 ** 12, 7, -1]):
        r = babai_reduce(t, ctx)
        assert in_lattice([a - b for a, b in zip(t, r)], 2 ** 61 - 1, 987654321)
        assert all(2 * abs(x) <= bound for x in r)


def test_babai_on_lattice_vector_gives_zero():
    B = lll_reduce(build_A(23, 7, 3))
    ctx = BabaiContext.from_basis(B)
    for row in B.tolist():
        assert babai_reduce(row, ctx) == [0, 0, 0]
    with pytest.raises(DimensionMismatch):
        babai_reduce([1, 2], ctx)
    with pytest.raises(RankDeficient):
        BabaiContext.from_basis(as_matrix([[1, 2], [2, 4]]))


def test_select_basis_keeps_smallest_norm():
    reduced = select_basis(23, 7, E3)
    assert set(reduced.candidate_norms) == {"LllA", "ShortVecCompanion", "BlockLattice"}
    assert reduced.norm1 == min(reduced.candidate_norms.values())
    assert reduced.candidate_norms[reduced.strategy.value] == reduced.norm1
    assert reduced.det_abs % 23 == 0


def test_select_basis_raw_and_reducible():
    raw = select_basis(23, 7, E3, StrategyPolicy((Strategy.RAW,)))
    assert raw.strategy == Strategy.RAW and raw.norm1 == 30
    fallback = select_basis(23, 7, E3, StrategyPolicy((Strategy.SHORT_VEC_COMPANION,), irreducible=False))
    assert fallback.strategy == Strategy.LLL_A
    assert set(fallback.candidate_norms) == {"LllA"}
