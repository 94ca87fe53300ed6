"""
Figure datasets
===============

Every figure panel is a fixed (quantity, t, n-range) triple evaluated over a
grid of squeezing amplitudes and written as plain CSV.  The command line
``paritystates figure --id all`` does the same for all panels.
"""

import sys
from paritystates.datasets import FIGURES, figure_rows, render_csv

# The available panels.
for fig_id, panel in FIGURES.items():
    print(f"{fig_id:>3}: {panel.quantity:<14} t={panel.t:<5} n={panel.describe_n()}")

# A coarse version of panel 7d (sensitivity gain at t = 0.99).
rows, meta = figure_rows("7d", [0.5, 1.0, 2.0, 3.0])
text = render_csv([r for r in rows if r[2] in (0, 1, 10, 100)], meta)
sys.stdout.write(text)
