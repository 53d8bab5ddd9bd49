import random

import pytest

from pmnstools.errors import ZeroConstant
from pmnstools.modint import ModCtx
from pmnstools.poly import IntPoly, poly_eval_mod
from pmnstools.roots import (
    RootMethod,
    binomial_root_count,
    count_roots,
    cyclo_class_root_count,
    cyclo_root_count,
    cyclotomic_roots,
    find_roots,
    linear_part,
    root_report,
)

P53 = 7826474692469460039387400099999297
E53 = IntPoly((1, 0, 1, 0, 0, 1))
M61 = 2 ** 61 - 1


def brute_roots(e: IntPoly, p: int) -> list[int]:
    return [x for x in range(p) if poly_eval_mod(e, x, p) == 0]


def test_worked_example_roots():
    report = find_roots(E53, ModCtx(P53))
    assert report.method == RootMethod.GCD_FROBENIUS
    assert report.roots == [1668775652911650768716331204928385, 4851849041138741979670730997365654]
    assert linear_part(E53, ModCtx(P53)).degree == 2
    assert count_roots(E53, ModCtx(P53)) == 2


@pytest.mark.parametrize("p", [101, 103, 1009])
def test_find_roots_matches_brute_force(p):
    r = random.Random(p)
    ctx = ModCtx(p)
    for _ in range(25):
        n = r.randrange(2, 8)
        e = IntPoly(tuple(r.randrange(-5, 6) for _ in range(n)) + (1,))
        expected = brute_roots(e, p)
        assert find_roots(e, ctx, seed=r.randrange(100)).roots == [x for x in expected if x]
        assert count_roots(e, ctx) == len(expected)


def test_polynomial_with_all_roots():
    # (X - 1)(X - 2)(X - 3)(X - 4) mod 101
    e = IntPoly((24, -50, 35, -10, 1))
    assert find_roots(e, ModCtx(101)).roots == [1, 2, 3, 4]


def test_zero_root_is_left_out_of_reports():
    # X^3 + X = X (X^2 + 1) and 10^2 = -1 mod 101
    e = IntPoly((0, 1, 0, 1))
    ctx = ModCtx(101)
    assert count_roots(e, ctx) == 3
    assert find_roots(e, ctx).roots == [10, 91]
    assert root_report(e, ctx, extract=False).count == 2
    assert find_roots(e, ModCtx(3)).roots == []


def test_small_prime_is_exhaustive():
    report = find_roots(IntPoly((2, 0, 0, 1)), ModCtx(5))
    assert report.method == RootMethod.EXHAUSTIVE
    assert report.roots == brute_roots(IntPoly((2, 0, 0, 1)), 5)


def test_seed_does_not_change_roots():
    e = IntPoly((-1, 0, 0, 0, 0, 0, 1))
    ctx = ModCtx(M61)
    assert find_roots(e, ctx, seed=1).roots == find_roots(e, ctx, seed=99).roots


def test_binomial_root_count():
    ctx = ModCtx(40993)
    assert binomial_root_count(4, 2, ctx) == 4
    assert binomial_root_count(4, -2, ctx) == 4
    assert binomial_root_count(4, 2, ctx) == len(find_roots(IntPoly((2, 0, 0, 0, 1)), ctx).roots)
    with pytest.raises(ZeroConstant):
        binomial_root_count(3, 40993, ctx)


@pytest.mark.parametrize("p", [97, 181, 1009, 40993])
def test_binomial_count_matches_root_finding(p):
    ctx = ModCtx(p)
    for n in range(2, 7):
        for c in range(-6, 7):
            if c in (-1, 0, 1):
                continue
            e = IntPoly.from_terms({n: 1, 0: c})
            assert binomial_root_count(n, c, ctx) == len(find_roots(e, ctx).roots)


def test_cyclotomic_roots():
    ctx = ModCtx(M61)
    # p - 1 = 2 * 3^2 * 5^2 * 7 * 11 * 13 * 31 * 41 * 61 * 151 * 331 * 1321
    e = IntPoly.from_terms({6: 1, 3: -1, 0: 1})
    roots = cyclotomic_roots(18, ctx, seed=5)
    assert len(roots) == 6
    assert all(poly_eval_mod(e, z, M61) == 0 for z in roots)
    assert roots == find_roots(e, ctx).roots
    assert cyclotomic_roots(4, ctx) is None


def test_cyclo_root_counts():
    ctx = ModCtx(M61)
    assert cyclo_root_count(18, ctx) == 6
    assert cyclo_root_count(4, ctx) == 0
    assert cyclo_class_root_count(IntPoly.from_terms({2: 1, 1: 1, 0: 1}), ctx) == 2
    assert cyclo_class_root_count(IntPoly.from_terms({2: 1, 0: 1}), ctx) == 0
    # not a cyclotomic form: falls back to counting
    assert cyclo_class_root_count(E53, ModCtx(P53)) == 2


def test_root_report_methods():
    ctx = ModCtx(M61)
    cyclo = root_report(IntPoly.from_terms({6: 1, 3: -1, 0: 1}), ctx, extract=False)
    assert cyclo.method == RootMethod.CYCLOTOMIC_SHORTCUT
    assert cyclo.count == 6 and not cyclo.extracted

    binomial = root_report(IntPoly((2, 0, 0, 0, 1)), ModCtx(40993), extract=False)
    assert binomial.method == RootMethod.BINOMIAL_COUNT and binomial.count == 4

    generic = root_report(E53, ModCtx(P53), extract=False)
    assert generic.method == RootMethod.GCD_FROBENIUS and generic.count == 2

    full = root_report(E53, ModCtx(P53))
    assert full.extracted and len(full.roots) == 2


@pytest.mark.slow
def test_cyclotomic_roots_at_512_bits():
    p = 2 ** 256 * 3 ** 157 * 115 + 1
    ctx = ModCtx(p)
    for e, m in ((IntPoly.from_terms({8: 1, 0: 1}), 16),
                 (IntPoly.from_terms({6: 1, 3: 1, 0: 1}), 9),
                 (IntPoly.from_terms({6: 1, 3: -1, 0: 1}), 18)):
        report = root_report(e, ctx)
        assert report.method == RootMethod.CYCLOTOMIC_SHORTCUT
        assert report.count == len(report.roots) == e.degree
        assert all(poly_eval_mod(e, z, p) == 0 for z in report.roots)
        assert report.roots == cyclotomic_roots(m, ctx)
