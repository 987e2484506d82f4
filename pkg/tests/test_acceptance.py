"""End-to-end acceptance gate: closed-form spectra versus the matrix oracle.

Each test pins one end-to-end guarantee.  Exhaustive checks enumerate the
full matrix group by BFS and compare divisibility-maximal observed orders
with the formula antichain; sampling checks assert containment only.
"""

import json
import subprocess
import sys

import numpy as np
import pytest

from classpec.groups import GroupSpec, group_order, normalize
from classpec.matgrp import (batch_orders, build_oracle, construct_witness,
                             derived_subgroup, element_order, enumerate_group,
                             preserves_form, projective_order,
                             regular_unipotent, sample_orders)
from classpec.gf import field_make
from classpec.matgrp import MatCtx
from classpec.spectrum import (contains, max_unipotent_order, mu,
                               nu_composite, omega_generators)


def antichain(values):
    vals = sorted(set(values))
    return [v for v in vals if not any(w != v and w % v == 0 for w in vals)]


@pytest.fixture(scope="module")
def sp43():
    oracle = build_oracle(GroupSpec("sp", 2, 3))
    elements = enumerate_group(oracle.ctx, oracle.gens, cap=60000)
    return oracle, elements


def test_1_exhaustive_sp4_3(sp43):
    oracle, elements = sp43
    assert len(elements) == 51840
    observed = batch_orders(oracle.ctx, elements, 72).tolist()
    expected = mu(omega_generators(normalize(GroupSpec("sp", 2, 3))))
    assert expected == [8, 10, 12, 18]
    assert antichain(observed) == expected


def test_2_exhaustive_psp4_3(sp43):
    oracle, elements = sp43
    codes = [1, oracle.ctx.field.neg(1)]
    observed = batch_orders(oracle.ctx, elements, 72, center_codes=codes)
    expected = mu(omega_generators(normalize(GroupSpec("psp", 2, 3))))
    assert expected == [5, 9, 12]
    assert antichain(observed.tolist()) == expected


def test_3_exhaustive_sp4_2():
    oracle = build_oracle(GroupSpec("sp", 2, 2))
    elements = enumerate_group(oracle.ctx, oracle.gens)
    assert len(elements) == 720
    observed = batch_orders(oracle.ctx, elements, 24).tolist()
    expected = mu(omega_generators(normalize(GroupSpec("sp", 2, 2))))
    assert expected == [4, 5, 6]
    assert antichain(observed) == expected


def test_4_omega5_3_is_derived_subgroup_of_so5_3():
    oracle = build_oracle(GroupSpec("so-odd", 2, 3))
    so = enumerate_group(oracle.ctx, oracle.gens, cap=60000)
    assert len(so) == 51840
    omega = derived_subgroup(oracle.ctx, oracle.gens, cap=60000)
    assert len(omega) == 25920
    observed = batch_orders(oracle.ctx, omega, 48).tolist()
    expected = mu(omega_generators(normalize(GroupSpec("omega-odd", 2, 3))))
    assert antichain(observed) == expected == [5, 9, 12]


SAMPLED = [
    GroupSpec("sp", 3, 3),
    GroupSpec("so-odd", 3, 3),
    GroupSpec("omega-odd", 3, 3),
    GroupSpec("so-even", 4, 3, eps="+"),
    GroupSpec("so-even", 4, 3, eps="-"),
    GroupSpec("omega-even", 4, 3, eps="+"),
    GroupSpec("omega-even", 4, 3, eps="-"),
    GroupSpec("omega-even", 4, 2, eps="+"),
    GroupSpec("omega-even", 4, 2, eps="-"),
]


@pytest.mark.parametrize("spec", SAMPLED, ids=lambda s: s.label())
def test_5_sampling_containment(spec):
    ns = normalize(spec)
    orders = sample_orders(spec, 10000, seed=1)
    violations = sorted({o for o in orders if not contains(ns, o)})
    assert violations == []


@pytest.mark.parametrize("spec", [GroupSpec("sp", 2, 3), GroupSpec("sp", 3, 3),
                                  GroupSpec("omega-odd", 3, 3)],
                         ids=lambda s: s.label())
def test_6_witnesses_for_every_maximal_order(spec):
    ns = normalize(spec)
    ctx = MatCtx(field_make(ns.p, ns.spec.f))
    for target in mu(omega_generators(ns)):
        w, form, _ = construct_witness(spec, target)
        assert preserves_form(ctx, w, form)
        assert element_order(ctx, w) == target


GRID_Q = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)]


def _grid_specs():
    out = []
    for p, f in GRID_Q:
        for n in range(2, 7):
            fams = [("sp", None), ("psp", None), ("so-odd", None),
                    ("omega-odd", None)]
            if n >= 4:
                fams += [(fam, eps) for fam in ("so-even", "omega-even",
                                                "pomega")
                         for eps in ("+", "-")]
            for fam, eps in fams:
                spec = GroupSpec(fam, n, p, f, eps=eps)
                try:
                    normalize(spec)
                except Exception:
                    continue
                out.append(spec)
    return out


def test_7_coherence_grid():
    quotients = {"psp": "sp", "omega-odd": "so-odd", "omega-even": "so-even",
                 "pomega": "omega-even"}
    for spec in _grid_specs():
        ns = normalize(spec)
        gens = omega_generators(ns)
        vals = [g.value for g in gens]
        # (a) antichain under divisibility
        m = mu(gens)
        assert all(not any(b != a and b % a == 0 for b in m) for a in m)
        # (b) composite supersets stay inside the spectrum
        for v in nu_composite(ns):
            assert any(g % v == 0 for g in vals), (spec.label(), v)
        # (c) quotient spectra are contained in the bigger group's
        sup_fam = quotients.get(spec.family)
        if sup_fam and not (sup_fam == "so-even" and spec.p == 2):
            sup = GroupSpec(sup_fam, spec.n, spec.p, spec.f, eps=spec.eps)
            sup_vals = [g.value for g in omega_generators(normalize(sup))]
            for v in vals:
                assert any(s % v == 0 for s in sup_vals), (spec.label(), v)
    # (d) delegated queries equal direct-engine queries
    delegations = [
        (GroupSpec("sp", 3, 2), GroupSpec("omega-odd", 3, 2)),
        (GroupSpec("psp", 3, 2), GroupSpec("omega-odd", 3, 2)),
        (GroupSpec("so-odd", 4, 2), GroupSpec("omega-odd", 4, 2)),
        (GroupSpec("omega-odd", 2, 3), GroupSpec("psp", 2, 3)),
        (GroupSpec("omega-odd", 2, 5), GroupSpec("psp", 2, 5)),
        (GroupSpec("pomega", 4, 3, eps="-"), GroupSpec("omega-even", 4, 3, eps="-")),
        (GroupSpec("pomega", 5, 2, eps="+"), GroupSpec("omega-even", 5, 2, eps="+")),
        (GroupSpec("pomega", 5, 3, eps="+"), GroupSpec("omega-even", 5, 3, eps="+")),
    ]
    for delegated, direct in delegations:
        assert normalize(delegated).notes
        assert mu(omega_generators(normalize(delegated))) == \
            mu(omega_generators(normalize(direct)))


@pytest.mark.parametrize("lie,rank,p,f", [
    ("C", 2, 3, 1), ("C", 2, 2, 1), ("C", 3, 2, 1), ("C", 3, 3, 1),
    ("B", 2, 3, 1), ("B", 3, 3, 1), ("D", 4, 3, 1), ("C", 2, 3, 2),
])
def test_8_simple_root_product_has_max_unipotent_order(lie, rank, p, f):
    ctx = MatCtx(field_make(p, f))
    u = regular_unipotent(ctx, lie, rank)
    assert element_order(ctx, u) == max_unipotent_order(lie, rank, p)


def _run(*args):
    return subprocess.run([sys.executable, "-m", "classpec.cli", *args],
                          capture_output=True)


def test_9_cli_determinism(tmp_path):
    fixed = [
        ("spectrum", "sp", "2", "3", "--json"),
        ("spectrum", "omega-even", "4", "2", "--eps", "-", "--full", "--json"),
        ("spectrum", "so-odd", "3", "3"),
        ("verify", "sp", "2", "2", "--mode", "exhaustive"),
        ("verify", "omega-odd", "3", "3", "--mode", "sample",
         "--samples", "150", "--seed", "5"),
        ("witness", "sp", "3", "3", "--order", "30"),
    ]
    for args in fixed:
        a, b = _run(*args), _run(*args)
        assert a.returncode == b.returncode
        assert a.stdout == b.stdout, args
    d1, d2 = tmp_path / "r1", tmp_path / "r2"
    d1.mkdir(), d2.mkdir()
    for d in (d1, d2):
        r = _run("report", "psp", "2", "3", "--samples", "150", "--seed", "5",
                 "--out", str(d))
        assert r.returncode == 0
    for name in ("psp_4_q3_orders.csv", "psp_4_q3_orders.png"):
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes()
