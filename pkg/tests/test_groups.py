import pytest

from classpec.errors import InvalidArgument, InvalidEpsilon, UnsupportedGroup
from classpec.groups import (GroupSpec, center_order, group_order,
                             group_order_factorization, normalize)


def test_validation_errors():
    with pytest.raises(InvalidArgument):
        normalize(GroupSpec("sl", 2, 3))
    with pytest.raises(InvalidArgument):
        normalize(GroupSpec("sp", 2, 6))
    with pytest.raises(InvalidEpsilon):
        normalize(GroupSpec("so-even", 4, 3))
    with pytest.raises(InvalidEpsilon):
        normalize(GroupSpec("sp", 2, 3, eps="+"))
    with pytest.raises(UnsupportedGroup):
        normalize(GroupSpec("sp", 1, 3))
    with pytest.raises(UnsupportedGroup):
        normalize(GroupSpec("so-even", 3, 3, eps="+"))
    with pytest.raises(UnsupportedGroup):
        normalize(GroupSpec("so-even", 4, 2, eps="+"))


def test_char2_collapse():
    for fam in ("sp", "psp", "so-odd", "omega-odd"):
        ns = normalize(GroupSpec(fam, 2, 2))
        assert ns.engine == "omega-odd-even-q"
        assert ns.spec.family == "omega-odd"


def test_low_rank_odd_orthogonal_delegates():
    ns = normalize(GroupSpec("omega-odd", 2, 3))
    assert ns.engine == "psp"
    assert ns.notes


def test_pomega_trivial_quotient_delegates():
    # gcd(4, 3^4 - (-1)) = 2, so the central quotient is trivial
    ns = normalize(GroupSpec("pomega", 4, 3, eps="-"))
    assert ns.engine == "omega-even-odd-q"
    assert ns.spec.family == "omega-even"
    # gcd(4, 3^4 - 1) = 4: a genuine quotient
    assert normalize(GroupSpec("pomega", 4, 3, eps="+")).engine == "pomega"


@pytest.mark.parametrize("spec,order", [
    (GroupSpec("sp", 2, 2), 720),
    (GroupSpec("sp", 2, 3), 51840),
    (GroupSpec("psp", 2, 3), 25920),
    (GroupSpec("so-odd", 2, 3), 51840),
    (GroupSpec("omega-odd", 2, 3), 25920),
    (GroupSpec("sp", 3, 2), 1451520),
])
def test_known_group_orders(spec, order):
    assert group_order(spec) == order


def test_factorization_matches_order():
    for spec in (GroupSpec("sp", 3, 3), GroupSpec("omega-even", 4, 3, eps="-"),
                 GroupSpec("pomega", 4, 3, eps="+")):
        fac = group_order_factorization(spec)
        prod = 1
        for r, e in fac.items():
            prod *= r**e
        assert prod == group_order(spec)


def test_quotient_indices():
    assert group_order(GroupSpec("sp", 2, 3)) == 2 * group_order(GroupSpec("psp", 2, 3))
    assert group_order(GroupSpec("so-odd", 3, 3)) == 2 * group_order(GroupSpec("omega-odd", 3, 3))
    so = group_order(GroupSpec("so-even", 4, 3, eps="+"))
    om = group_order(GroupSpec("omega-even", 4, 3, eps="+"))
    po = group_order(GroupSpec("pomega", 4, 3, eps="+"))
    assert so == 2 * om and om == 2 * po


def test_center_orders():
    assert center_order(GroupSpec("sp", 2, 3)) == 2
    assert center_order(GroupSpec("sp", 2, 2)) == 1
    assert center_order(GroupSpec("psp", 2, 3)) == 1
    assert center_order(GroupSpec("omega-even", 4, 3, eps="+")) == 2
    assert center_order(GroupSpec("omega-even", 4, 3, eps="-")) == 1
    assert center_order(GroupSpec("pomega", 4, 3, eps="+")) == 1
