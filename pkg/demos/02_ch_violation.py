"""Clauser-Horne violation for every photon number.

The CH combination of click probabilities is classically confined to
[-1, 0].  On the reduced family alpha' = beta = 0, |beta'| = |alpha| with
beta'^N = -alpha^N it collapses to

    CH(s) = s^N exp(-s) (1 - 2 exp(-s)) / N! - 1,      s = |alpha|^2,

which sits strictly below -1 for every 0 < s < ln 2 -- an analytic witness
that the violation never dies out, however large N grows.  The full
eight-real-dimensional optimization must therefore do at least as well, and
for small N it does noticeably better.

Run:  python3 demos/02_ch_violation.py        (writes demos/out/ch_margin.svg)
"""

import math
from pathlib import Path

import numpy as np

from noonbell import (
    OptimizerConfig,
    catalog,
    ch_analytic_reduced,
    ch_analytic_reduced_margin,
    optimize,
)
from noonbell.svgplot import line_plot_svg

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

print("=== analytic witness on the reduced family ===")
sgrid = np.linspace(0.0, math.log(2.0), 200)[1:-1]
for n in (1, 2, 4, 8):
    margins = [ch_analytic_reduced_margin(n, float(s)) for s in sgrid]
    best = min(margins)
    s_best = float(sgrid[int(np.argmin(margins))])
    print(f"  N={n}:  deepest reduced value {-1 + best:.12f} at s = {s_best:.3f}")
print("  (for large N the dip is below float resolution against -1;")
print("   the margin form keeps it visible)")

print()
print("=== full optimization, N = 1..4 ===")
values = []
for n in range(1, 5):
    r = optimize(catalog()["ch"], n, OptimizerConfig(rng_seed=2 ^ n, num_starts=32))
    reduced_min = min(ch_analytic_reduced(n, float(s)) for s in sgrid)
    values.append(r.best_value)
    print(
        f"  N={n}:  best = {r.best_value:.9f}   reduced family min = {reduced_min:.9f}"
        f"   margin past -1 = {r.violation_margin:.2e}"
    )

print()
print("The violation shrinks with N (the displaced-vacuum overlap cannot")
print("track both the N-photon and the vacuum branch at once) but, by the")
print("witness above, never reaches zero.")

margins = [-1.0 - v for v in values]
svg = line_plot_svg(
    list(range(1, 5)),
    margins,
    title="Clauser-Horne violation below the classical -1 bound",
    x_label="photon number N",
    y_label="violation margin",
    hline=0.0,
)
(OUT / "ch_margin.svg").write_text(svg)
print(f"wrote {OUT / 'ch_margin.svg'}")
