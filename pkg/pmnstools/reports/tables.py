"""Representation tables for one system and summary tables for a record file."""

import pandas as pd

from pmnstools.json_import import PmnsRecord, RecordFile
from pmnstools.lattice import Strategy, rho_bound, rho_from_norm1
from pmnstools.pmns import PmnsBasis, enumerate_representations


class SystemTables:
    """Redundancy and strategy views of a single PMNS."""

    def __init__(self, basis: PmnsBasis, rho: int | None = None):
        self.basis = basis
        self.rho = basis.rho if rho is None else rho

    # --- Representations ----------------------------------------------------

    def _representations(self, a: int) -> list[tuple]:
        return [x.digits for x in enumerate_representations(a, self.basis, self.rho)]

    def representation_table(self) -> pd.DataFrame:
        """Every residue with all of its digit vectors below rho."""
        rows = []
        for a in range(self.basis.p):
            reps = self._representations(a)
            rows.append({"Residue": a, "Representations": reps, "Count": len(reps)})
        return pd.DataFrame(rows, columns=["Residue", "Representations", "Count"])

    def redundancy_profile(self) -> pd.DataFrame:
        """Representation counts with the count of the opposite residue p - a."""
        df = self.representation_table()[["Residue", "Count"]]
        counts = dict(zip(df["Residue"], df["Count"]))
        p = self.basis.p
        df = df.assign(**{"Mirror Count": [counts[(p - a) % p] for a in df["Residue"]]})
        df["Symmetric"] = df["Count"] == df["Mirror Count"]
        return df

    def text_table(self) -> str:
        lines = []
        for _, row in self.representation_table().iterrows():
            reps = ", ".join("(" + ",".join(str(d) for d in r) + ")" for r in row["Representations"])
            lines.append(f"{row['Residue']:>4} : {reps}")
        return "\n".join(lines)

    # --- Strategies ---------------------------------------------------------

    def strategy_table(self) -> pd.DataFrame:
        """1-norm and certified rho for every basis construction that was tried."""
        rows = []
        for name, norm in self.basis.basis.candidate_norms.items():
            rho = rho_from_norm1(norm)
            rows.append({"Strategy": name, "Norm1": norm, "Rho": rho, "RhoBits": rho.bit_length(),
                         "Kept": name == self.basis.strategy.value})
        if not rows:
            rho = rho_bound(self.basis.basis.matrix)
            rows.append({"Strategy": self.basis.strategy.value, "Norm1": self.basis.norm1,
                         "Rho": rho, "RhoBits": rho.bit_length(), "Kept": True})
        return pd.DataFrame(rows, columns=["Strategy", "Norm1", "Rho", "RhoBits", "Kept"])


def strategy_wins(records: list[PmnsRecord]) -> pd.DataFrame:
    """How often each strategy gave the kept basis."""
    counts = pd.Series([r.strategy for r in records], dtype="object").value_counts()
    order = [s.value for s in Strategy]
    return (
        counts.reindex(order, fill_value=0)
        .rename_axis("Strategy")
        .reset_index(name="Wins")
    )


class SweepTables(RecordFile):
    """Summary views of a generated record file."""

    def get_strategy_wins(self) -> pd.DataFrame:
        return strategy_wins(self.records)

    def get_rho_bits(self) -> pd.DataFrame:
        df = self.get_summary()
        return df[["E", "gamma", "rho bits", "Strategy", "Class"]]

    def get_class_counts(self) -> pd.DataFrame:
        return (
            self.get_summary()["Class"].value_counts()
            .rename_axis("Class")
            .reset_index(name="Systems")
        )
