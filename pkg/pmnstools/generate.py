"""Candidate reduction polynomials for a prime and the sweep that turns them into records."""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional

from sympy import primerange

from pmnstools.classes import (
    DEFAULT_COEFF_CAP,
    binomial_enumerate,
    bonciocat_enumerate,
    certify_irreducible,
    cyclo_suitable,
    dumas_enumerate,
    perron_enumerate,
    primecst_enumerate,
    quadrinomial_enumerate,
    trinomial_enumerate,
)
from pmnstools.errors import RecordError
from pmnstools.json_import import PmnsRecord
from pmnstools.lattice import Strategy, StrategyPolicy
from pmnstools.modint import ModCtx, require_prime
from pmnstools.pmns import new_basis
from pmnstools.poly import IntPoly
from pmnstools.roots import root_report

logger = logging.getLogger(__name__)

CLASS_FAMILIES = ("Cyclo", "Quadrinomial", "Trinomial", "Binomial", "PrimeCst", "Perron",
                  "DumasSparse", "Bonciocat")
SWEEP_FAMILY = "SparseSweep"


@dataclass
class GenerationRequest:
    p: int
    n: int
    classes: tuple = CLASS_FAMILIES
    coeff_cap: int = DEFAULT_COEFF_CAP
    const_cap: Optional[int] = None
    rho_max_bits: Optional[int] = None
    strategies: tuple = (Strategy.LLL_A, Strategy.SHORT_VEC_COMPANION, Strategy.BLOCK_LATTICE)
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        require_prime(self.p)
        if self.n < 2:
            raise RecordError(f"Degree must be at least 2, got {self.n}")
        unknown = set(self.classes) - set(CLASS_FAMILIES) - {SWEEP_FAMILY}
        if unknown:
            raise RecordError(f"Unknown classes {sorted(unknown)}")
        if self.const_cap is None:
            self.const_cap = self.coeff_cap


def sparse_sweep(n: int, coeff_cap: int, const_cap: int) -> Iterator[IntPoly]:
    """X^n + a_k X^k + ... + a_1 X + a_0 with k <= n/2, |a_i| <= coeff_cap, 1 <= |a_0| <= const_cap."""
    consts = [c for m in range(1, const_cap + 1) for c in (m, -m)]
    for tail in product(range(-coeff_cap, coeff_cap + 1), repeat=n // 2):
        for a0 in consts:
            yield IntPoly((a0, *tail) + (0,) * (n - n // 2 - 1) + (1,))


def _family(name: str, req: GenerationRequest) -> Iterator[IntPoly]:
    n = req.n
    match name:
        case "Cyclo":
            yield from cyclo_suitable(n)
        case "Quadrinomial":
            yield from quadrinomial_enumerate(n)
        case "Trinomial":
            yield from trinomial_enumerate(n)
        case "Binomial":
            yield from binomial_enumerate(n, req.const_cap)
        case "PrimeCst":
            for mu in primerange(2, req.const_cap + 1):
                yield from primecst_enumerate(n, mu)
        case "Perron":
            for mag in range(3, req.coeff_cap + 1):
                for a1 in (mag, -mag):
                    yield from perron_enumerate(n, a1)
        case "DumasSparse":
            yield from dumas_enumerate(n, req.const_cap)
        case "Bonciocat":
            yield from bonciocat_enumerate(n, req.const_cap)
        case "SparseSweep":
            yield from sparse_sweep(n, req.coeff_cap, req.const_cap)
        case _:
            raise RecordError(f"Unknown class '{name}'")


def candidates(req: GenerationRequest) -> list[IntPoly]:
    """Distinct candidates from the requested families, in first-seen order."""
    seen = {}
    for name in req.classes:
        for e in _family(name, req):
            seen.setdefault(e.coeffs, e)
    return list(seen.values())


def systems_for(e: IntPoly, req: GenerationRequest) -> list[PmnsRecord]:
    """Best-strategy record for every nonzero root of e modulo p."""
    cls = certify_irreducible(e)
    tag = cls.tag.value if cls is not None else "Unknown"
    policy = StrategyPolicy(tuple(req.strategies), irreducible=cls is not None)
    report = root_report(e, ModCtx(req.p), extract=True, seed=req.seed)
    records = []
    for gamma in report.roots:
        basis = new_basis(req.p, req.n, gamma, e, policy)
        if req.rho_max_bits is not None and basis.rho > 2 ** req.rho_max_bits:
            continue
        records.append(PmnsRecord.from_basis(basis, tag))
    return records


def _shard(args: tuple) -> list[PmnsRecord]:
    req, shard = args
    out = []
    for coeffs in shard:
        out += systems_for(IntPoly(coeffs), req)
    return out


def cmd_generate(req: GenerationRequest) -> list[PmnsRecord]:
    """Every PMNS reachable from the requested families, sorted by (rho, E, gamma)."""
    pool = candidates(req)
    logger.info(f"{len(pool)} candidate polynomials of degree {req.n}")
    jobs = max(1, req.jobs)
    if jobs == 1:
        records = _shard((req, [e.coeffs for e in pool]))
    else:
        shards = [[e.coeffs for e in pool[i::jobs]] for i in range(jobs)]
        records = []
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            for part in executor.map(_shard, [(req, s) for s in shards]):
                records += part
    records.sort(key=lambda r: r.sort_key)
    logger.info(f"{len(records)} systems kept")
    return records
