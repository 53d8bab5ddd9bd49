import random

import pytest

from pmnstools.json_import import PmnsRecord
from pmnstools.lattice import Strategy, StrategyPolicy
from pmnstools.modint import ModCtx
from pmnstools.pmns import example_basis, new_basis
from pmnstools.poly import IntPoly
from pmnstools.roots import find_roots

MERSENNE_PRIMES = (2 ** 61 - 1, 2 ** 89 - 1, 2 ** 107 - 1, 2 ** 127 - 1)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow acceptance tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def ex1a():
    """(23, 3, 7)_{X^3 + 2} and its table digit bound 2."""
    return example_basis("ex1a")


@pytest.fixture(scope="session")
def ex1b():
    """(31, 4, 15)_{X^4 - 2} and its table digit bound 2."""
    return example_basis("ex1b")


@pytest.fixture(scope="session")
def binomial_systems():
    """Twenty systems X^n + c over Mersenne primes, the first ones that have roots."""
    systems = []
    policy = StrategyPolicy((Strategy.LLL_A,))
    for p in MERSENNE_PRIMES:
        for n in range(3, 7):
            for c in range(2, 9):
                e = IntPoly.from_terms({n: 1, 0: c})
                roots = find_roots(e, ModCtx(p)).roots
                if roots:
                    systems.append(new_basis(p, n, roots[0], e, policy))
                if len(systems) == 20:
                    return systems
    return systems


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def record_file(tmp_path, ex1a):
    """JSON Lines file with the two worked systems."""
    basis, _ = ex1a
    other, _ = example_basis("ex1b")
    f = tmp_path / "records.jsonl"
    f.write_text(
        PmnsRecord.from_basis(basis, "Binomial").to_json() + "\n"
        + PmnsRecord.from_basis(other, "Binomial").to_json() + "\n"
    )
    return f
