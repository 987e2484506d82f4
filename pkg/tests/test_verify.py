import pytest

import classpec.verify as verify_mod
from classpec.errors import CapExceeded
from classpec.groups import GroupSpec
from classpec.spectrum import Generator
from classpec.verify import exhaustive_orders, run_verify


def test_exhaustive_equal_small():
    report = run_verify(GroupSpec("sp", 2, 2), mode="exhaustive")
    assert report.verdict == "equal"
    assert report.group_size == "720"
    assert report.observed_max_orders == [4, 5, 6]
    assert report.details == []


def test_auto_mode_selection():
    small = run_verify(GroupSpec("sp", 2, 2))
    assert small.mode == "exhaustive"
    big = run_verify(GroupSpec("sp", 3, 3), samples=100, seed=1)
    assert big.mode == "sample"
    assert big.verdict == "contained"
    assert sum(big.sampled_order_histogram.values()) == 100


def test_forced_exhaustive_cap():
    with pytest.raises(CapExceeded):
        run_verify(GroupSpec("sp", 3, 3), mode="exhaustive", cap=1000)


def test_exhaustive_orders_projective():
    orders = exhaustive_orders(GroupSpec("psp", 2, 3))
    assert max(orders) == 12
    assert 5 in orders and 18 not in orders


def test_violation_reported_with_counterexample(monkeypatch):
    # starve the formula side so the oracle sees orders it cannot explain
    fake = [Generator(4, "fake"), Generator(6, "fake")]
    monkeypatch.setattr(verify_mod, "omega_generators", lambda ns: fake)
    monkeypatch.setattr(verify_mod, "contains",
                        lambda ns, m: any(v % m == 0 for v in (4, 6)))
    report = run_verify(GroupSpec("sp", 2, 2), mode="exhaustive")
    assert report.verdict == "violation"
    assert {"order": "5", "problem": "observed order missing from formula"} \
        in report.details

    sampled = run_verify(GroupSpec("sp", 2, 2), mode="sample", samples=200,
                         seed=1)
    assert sampled.verdict == "violation"
    assert any(d["order"] == "5" for d in sampled.details)
