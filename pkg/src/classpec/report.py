"""Order-frequency reports: a CSV table plus a rendered bar-chart figure.

The report samples the group, tabulates how often each element order was
seen, flags the divisibility-maximal orders, and writes the histogram both
as delimited text and as a PNG with the maximal orders highlighted.
"""

import csv
import os
from collections import Counter

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .groups import group_order, normalize
from .matgrp import batch_orders, build_oracle, sample_elements
from .spectrum import mu, omega_generators


def _slug(spec):
    return spec.label().replace("(", "_q").replace(")", "")


def order_histogram(spec, samples, seed):
    """Counter of (projective where applicable) orders of a sample."""
    oracle = build_oracle(spec)
    sample = sample_elements(oracle, samples, seed)
    codes = oracle.center_codes if oracle.projective else None
    expected = mu(omega_generators(normalize(spec)))
    cap = max(64, 4 * max(expected))
    return Counter(batch_orders(oracle.ctx, np.stack(sample), cap,
                                codes).tolist())


def render_report(spec, samples, seed, out_dir):
    """Write <slug>_orders.csv and <slug>_orders.png; return both paths."""
    ns = normalize(spec)
    hist = order_histogram(spec, samples, seed)
    maximal = set(mu(omega_generators(ns)))
    slug = _slug(ns.spec)
    csv_path = os.path.join(out_dir, "%s_orders.csv" % slug)
    png_path = os.path.join(out_dir, "%s_orders.png" % slug)

    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["order", "count", "maximal"])
        for o in sorted(hist):
            w.writerow([o, hist[o], int(o in maximal)])

    orders = sorted(hist)
    counts = [hist[o] for o in orders]
    colors = ["tab:red" if o in maximal else "tab:blue" for o in orders]
    fig, ax = plt.subplots(figsize=(8, 4))
    ax.bar(range(len(orders)), counts, color=colors)
    ax.set_xticks(range(len(orders)))
    ax.set_xticklabels([str(o) for o in orders], rotation=90, fontsize=7)
    ax.set_xlabel("element order")
    ax.set_ylabel("count in %d samples" % samples)
    ax.set_title("%s  (|G| = %d); maximal orders in red"
                 % (ns.spec.label(), group_order(spec)))
    fig.tight_layout()
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    return csv_path, png_path
