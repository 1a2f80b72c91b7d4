#!/usr/bin/env python3
"""Plot the preset CSVs written by `qsalloc reproduce fig2|fig3|fig4|fig5`.

Convenience only; the CSVs are the contract. Usage:

    qsalloc reproduce fig2 && qsalloc reproduce fig4
    python3 docs/plot_figures.py fig2.csv fig4.csv
"""

import sys
from fractions import Fraction

import matplotlib.pyplot as plt
import pandas as pd


def plot(path: str) -> None:
    df = pd.read_csv(path, comment="#")
    fig, ax = plt.subplots(figsize=(6, 4))
    swept = df["sweep_var"].iloc[0]
    if swept == "budget_m":
        value_col, x_col, series = "mu_s_float", "m", "alpha"
        if "fig3" in path:
            value_col = "P_s_float"
    else:
        value_col, x_col, series = "mu_s_float", "r_or_p", "alpha"
        if "fig5" in path:
            value_col = "P_s_float"
        df[x_col] = df[x_col].map(lambda f: float(Fraction(f)))  # "1/10" -> 0.1
    for alpha, group in df.groupby(series):
        ax.plot(group[x_col], group[value_col], marker="o", label=f"alpha={alpha}")
    ax.set_xlabel(x_col)
    ax.set_ylabel(value_col)
    ax.set_title(path)
    ax.legend(fontsize=7, ncol=2)
    out = path.rsplit(".", 1)[0] + ".png"
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    for csv_path in sys.argv[1:]:
        plot(csv_path)
