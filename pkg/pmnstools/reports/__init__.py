"""Tabular and graphical views of PMNS systems and sweeps."""
