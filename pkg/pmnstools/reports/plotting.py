"""Module for plotting strategy comparisons and sweep results."""

import plotly.express as px

from pmnstools.pmns import PmnsBasis
from pmnstools.reports.tables import SweepTables, SystemTables


def strategy_norms_plot(basis: PmnsBasis, plotname: str = ""):
    """Bar chart of the bits of rho certified by each basis construction."""
    df = SystemTables(basis).strategy_table()
    fig = px.bar(df, x="Strategy", y="RhoBits", color="Kept", title=plotname)
    fig.update_layout(font={"size": 16}, title_font={"size": 22}, yaxis_title="bits of rho")
    return fig


class SweepPlots(SweepTables):
    """Plots over all records of a generated file."""

    def rho_bits_plot(self, plotname: str = ""):
        """Histogram of the size of rho, split by winning strategy."""
        df = self.get_rho_bits()
        fig = px.histogram(df, x="rho bits", color="Strategy", title=plotname)
        fig.update_layout(font={"size": 16}, title_font={"size": 22}, bargap=0.1)
        return fig

    def strategy_wins_plot(self, plotname: str = ""):
        fig = px.bar(self.get_strategy_wins(), x="Strategy", y="Wins", title=plotname)
        fig.update_traces(marker_line_width=1)
        fig.update_layout(font={"size": 16}, title_font={"size": 22})
        return fig
