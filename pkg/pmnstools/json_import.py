""" providing JSON Lines reading and writing of PMNS records, pandas dataframe summaries """
import json
import logging
import os
from dataclasses import dataclass, field

import pandas as pd

from pmnstools.errors import RecordError, RecordMismatch
from pmnstools.lattice import ReducedBasis, Strategy, as_matrix
from pmnstools.pmns import PmnsBasis
from pmnstools.poly import IntPoly

logger = logging.getLogger(__name__)

FIELDS = ("p", "n", "gamma", "E_coeffs", "rho", "rho_bits", "norm1", "strategy",
          "strategy_norms", "s", "basis_rows", "class_tag")


@dataclass
class PmnsRecord:
    """One generated system. Big integers travel as decimal strings."""

    p: int
    n: int
    gamma: int
    E_coeffs: tuple
    rho: int
    rho_bits: int
    norm1: int
    strategy: str
    s: int
    basis_rows: tuple
    class_tag: str = "Unknown"
    strategy_norms: dict = field(default_factory=dict)

    @classmethod
    def from_basis(cls, basis: PmnsBasis, class_tag: str = "Unknown") -> "PmnsRecord":
        return cls(
            p=basis.p,
            n=basis.n,
            gamma=basis.gamma,
            E_coeffs=tuple(basis.e.coeffs),
            rho=basis.rho,
            rho_bits=basis.rho_bits,
            norm1=basis.norm1,
            strategy=basis.strategy.value,
            s=basis.s,
            basis_rows=tuple(tuple(r) for r in basis.basis.rows()),
            class_tag=class_tag,
            strategy_norms=dict(basis.basis.candidate_norms),
        )

    @property
    def sort_key(self) -> tuple:
        return (self.rho, self.E_coeffs, self.gamma)

    def to_dict(self) -> dict:
        values = {
            "p": str(self.p),
            "n": str(self.n),
            "gamma": str(self.gamma),
            "E_coeffs": [str(c) for c in self.E_coeffs],
            "rho": str(self.rho),
            "rho_bits": self.rho_bits,
            "norm1": str(self.norm1),
            "strategy": self.strategy,
            "strategy_norms": {k: str(v) for k, v in self.strategy_norms.items()},
            "s": self.s,
            "basis_rows": [[str(x) for x in row] for row in self.basis_rows],
            "class_tag": self.class_tag,
        }
        return {k: values[k] for k in FIELDS}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "PmnsRecord":
        missing = [k for k in FIELDS if k not in data]
        if missing:
            raise RecordError(f"Record is missing fields {missing}")
        try:
            return cls(
                p=int(data["p"]),
                n=int(data["n"]),
                gamma=int(data["gamma"]),
                E_coeffs=tuple(int(c) for c in data["E_coeffs"]),
                rho=int(data["rho"]),
                rho_bits=int(data["rho_bits"]),
                norm1=int(data["norm1"]),
                strategy=str(data["strategy"]),
                s=int(data["s"]),
                basis_rows=tuple(tuple(int(x) for x in row) for row in data["basis_rows"]),
                class_tag=str(data["class_tag"]),
                strategy_norms={str(k): int(v) for k, v in data["strategy_norms"].items()},
            )
        except (TypeError, ValueError, AttributeError) as e:
            raise RecordError(f"Malformed record field: {e}") from e

    @classmethod
    def from_json(cls, line: str) -> "PmnsRecord":
        try:
            data = json.loads(line)
        except json.JSONDecodeError as e:
            raise RecordError(f"Record is not valid JSON: {e}") from e
        if not isinstance(data, dict):
            raise RecordError("Record must be a JSON object")
        return cls.from_dict(data)


def record_to_basis(record: PmnsRecord) -> PmnsBasis:
    """Rebuild the system from the stored rows and re-check every invariant."""
    try:
        strategy = Strategy(record.strategy)
    except ValueError as e:
        raise RecordError(f"Unknown strategy '{record.strategy}'") from e
    e = IntPoly(record.E_coeffs)
    if e.degree != record.n or len(record.basis_rows) != record.n:
        raise RecordMismatch(f"Record degree {record.n} disagrees with E or basis shape")
    reduced = ReducedBasis(as_matrix(record.basis_rows), strategy,
                           candidate_norms=dict(record.strategy_norms))
    basis = PmnsBasis(record.p, record.gamma, e, reduced, record.rho)
    for name, stored, actual in (("norm1", record.norm1, basis.norm1),
                                 ("s", record.s, basis.s),
                                 ("rho_bits", record.rho_bits, basis.rho_bits)):
        if stored != actual:
            raise RecordMismatch(f"Stored {name} = {stored}, recomputed {actual}")
    return basis


def write_records(records, path: str):
    with open(path, "w", encoding="utf-8") as f:
        for record in records:
            f.write(record.to_json() + "\n")


class RecordFile:
    """Class to read a JSON Lines file of PMNS records into records and DataFrames"""

    def __init__(self, path: str):
        if not os.path.isfile(path):
            raise FileNotFoundError(f"{path} does not exist")
        self.path = path
        self.records = self._import_records(path)

    def _import_records(self, path: str) -> list[PmnsRecord]:
        """Open the file and parse one record per non-empty line"""
        try:
            with open(path, "r", encoding="utf-8") as f:
                lines = [line for line in f.read().splitlines() if line.strip()]
        except OSError as e:
            raise IOError(f"Cannot open or read '{path}'") from e
        records = []
        for number, line in enumerate(lines, start=1):
            try:
                records.append(PmnsRecord.from_json(line))
            except RecordError as e:
                raise RecordError(f"{path}, line {number}: {e}") from e
        return records

    def __len__(self) -> int:
        return len(self.records)

    def get_records(self) -> list[PmnsRecord]:
        return self.records

    def get_summary(self) -> pd.DataFrame:
        """One row per record: modulus size, polynomial, radix and reduction quality"""
        return pd.DataFrame(
            [{
                "p bits": r.p.bit_length(),
                "n": r.n,
                "E": str(IntPoly(r.E_coeffs)),
                "gamma": str(r.gamma),
                "rho bits": r.rho_bits,
                "norm1": r.norm1,
                "Strategy": r.strategy,
                "Class": r.class_tag,
            } for r in self.records],
            columns=["p bits", "n", "E", "gamma", "rho bits", "norm1", "Strategy", "Class"],
        )

    def _validate_index(self, index: int):
        if not 0 <= index < len(self.records):
            raise ValueError(f"Record index {index} is not in file with {len(self.records)} records")


class SingleRecord(RecordFile):
    '''Access one record of a record file and the system it describes'''

    def __init__(self, path: str, index: int = 0):
        super().__init__(path)
        self._validate_index(index)
        self.index = index
        self.record = self.records[index]

    def get_basis(self) -> PmnsBasis:
        return record_to_basis(self.record)
