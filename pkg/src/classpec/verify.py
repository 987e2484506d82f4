"""Formula-versus-oracle verification flows.

Two routes: exhaustive (BFS-enumerate the matrix group, read off every
element order and compare divisibility-maximal orders with the closed-form
antichain) and sampling (product-replacement elements, each observed order
must divide some formula generator).  `run_verify` picks the route in auto
mode by comparing the group order against the enumeration cap.
"""

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import NotPeriodic
from .groups import group_order, normalize
from .matgrp import batch_orders, build_oracle, enumerate_group, sample_elements, _passes
from .spectrum import contains, mu, omega_generators

DEFAULT_CAP = 200000
DEFAULT_SAMPLES = 10000


@dataclass
class VerifyReport:
    mode: str                      # 'exhaustive' or 'sample'
    group_size: str                # decimal string
    expected_mu: list
    verdict: str                   # 'equal', 'contained' or 'violation'
    observed_max_orders: list | None = None
    sampled_order_histogram: dict | None = None
    details: list = field(default_factory=list)


def _ambient_factor(oracle):
    """|BFS closure| / |target group|: the closure may be O or SO, and
    projective groups are enumerated upstairs."""
    fac = 1
    if oracle.membership == "so":
        fac *= 2
    elif oracle.membership == "omega":
        fac *= 2 if oracle.ctx.p == 2 else 4
    if oracle.projective:
        fac *= len(oracle.center_codes)
    return fac


def exhaustive_orders(spec, cap=DEFAULT_CAP):
    """Sorted distinct element orders of the whole group, by enumeration.

    Orders are projective for projective families.  The cap bounds the
    size of the target group; the BFS closure may be a small constant
    factor larger (O above Omega, the full group above a quotient).
    """
    oracle = build_oracle(spec)
    fac = _ambient_factor(oracle)
    elements = enumerate_group(oracle.ctx, oracle.gens, cap * fac)
    if oracle.membership != "all":
        elements = np.stack([m for m in elements if _passes(oracle, m)])
    size = group_order(spec)
    got = len(elements) // (len(oracle.center_codes) if oracle.projective else 1)
    assert got == size, "oracle has %d elements, order formula says %d" % (got, size)
    codes = oracle.center_codes if oracle.projective else None
    expected = mu(omega_generators(normalize(spec)))
    order_cap = max(64, 4 * max(expected))
    orders = batch_orders(oracle.ctx, elements, order_cap, codes)
    return sorted(set(orders.tolist()))


def run_verify(spec, mode="auto", samples=DEFAULT_SAMPLES, seed=1,
               cap=DEFAULT_CAP):
    """Check the closed-form spectrum against the matrix-group oracle.

    Exhaustive mode demands exact equality of maximal orders; sample mode
    only containment.  CapExceeded propagates when exhaustive mode was
    forced and the group does not fit under the cap.
    """
    ns = normalize(spec)
    size = group_order(spec)
    if mode == "auto":
        mode = "exhaustive" if size <= cap else "sample"
    expected = mu(omega_generators(ns))

    if mode == "exhaustive":
        try:
            observed = exhaustive_orders(spec, cap)
        except NotPeriodic:
            # some true order exceeds every formula generator by a wide margin
            details = [{"order": "> %d" % (4 * max(expected)),
                        "problem": "observed order exceeds every formula generator"}]
            return VerifyReport(mode="exhaustive", group_size=str(size),
                                expected_mu=expected, verdict="violation",
                                observed_max_orders=[], details=details)
        obs_mu = mu(observed)
        details = []
        for o in obs_mu:
            if not contains(ns, o):
                details.append({"order": str(o),
                                "problem": "observed order missing from formula"})
        for o in expected:
            if o not in observed:
                details.append({"order": str(o),
                                "problem": "formula order not observed"})
        verdict = "equal" if obs_mu == expected and not details else "violation"
        return VerifyReport(mode="exhaustive", group_size=str(size),
                            expected_mu=expected, verdict=verdict,
                            observed_max_orders=obs_mu, details=details)

    oracle = build_oracle(spec)
    sample = sample_elements(oracle, samples, seed)
    codes = oracle.center_codes if oracle.projective else None
    order_cap = max(64, 4 * max(expected))
    try:
        orders = batch_orders(oracle.ctx, np.stack(sample), order_cap,
                              codes).tolist()
    except NotPeriodic:
        orders = []
        details = [{"order": "> %d" % order_cap,
                    "problem": "sampled order exceeds every formula generator"}]
        return VerifyReport(mode="sample", group_size=str(size),
                            expected_mu=expected, verdict="violation",
                            sampled_order_histogram={}, details=details)
    hist = Counter(orders)
    details = [{"order": str(o), "problem": "sampled order missing from formula"}
               for o in sorted(hist) if not contains(ns, o)]
    verdict = "contained" if not details else "violation"
    histogram = {str(o): hist[o] for o in sorted(hist)}
    return VerifyReport(mode="sample", group_size=str(size),
                        expected_mu=expected, verdict=verdict,
                        sampled_order_histogram=histogram, details=details)
