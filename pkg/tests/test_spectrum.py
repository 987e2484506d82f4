import pytest

from classpec.errors import CapExceeded, UnsupportedGroup
from classpec.groups import GroupSpec, normalize
from classpec.spectrum import (contains, max_unipotent_order, mu, nu_composite,
                               omega_enumerate, omega_generators)

# antichains frozen after exhaustive / sampled cross-checks against the
# matrix-group oracle (see tests/test_acceptance.py for the live checks)
KNOWN_MU = [
    (GroupSpec("sp", 2, 3), [8, 10, 12, 18]),
    (GroupSpec("psp", 2, 3), [5, 9, 12]),
    (GroupSpec("sp", 3, 3), [20, 24, 26, 28, 30, 36]),
    (GroupSpec("so-odd", 3, 3), [20, 24, 26, 28, 30, 36]),
    (GroupSpec("omega-odd", 3, 3), [8, 12, 13, 14, 15, 18, 20]),
    (GroupSpec("sp", 2, 2), [4, 5, 6]),
    (GroupSpec("sp", 3, 2), [7, 8, 9, 10, 12, 15]),
    (GroupSpec("sp", 2, 3, f=2), [18, 24, 30, 80, 82]),
    (GroupSpec("omega-even", 4, 3, eps="-"), [24, 28, 36, 40, 41, 52, 60]),
    (GroupSpec("omega-even", 4, 3, eps="+"), [24, 26, 28, 30, 36, 40]),
    (GroupSpec("so-even", 4, 3, eps="-"), [24, 28, 36, 40, 52, 60, 82]),
    (GroupSpec("so-even", 4, 3, eps="+"), [24, 26, 28, 30, 36, 80]),
    (GroupSpec("omega-even", 4, 2, eps="-"), [8, 9, 12, 17, 21, 30]),
    (GroupSpec("omega-even", 4, 2, eps="+"), [7, 8, 9, 10, 12, 15]),
    (GroupSpec("pomega", 4, 3, eps="+"), [8, 12, 13, 14, 15, 18, 20]),
]


@pytest.mark.parametrize("spec,expected", KNOWN_MU,
                         ids=[s.label() for s, _ in KNOWN_MU])
def test_known_antichains(spec, expected):
    assert mu(omega_generators(normalize(spec))) == expected


def _grid(nmax=5, qs=(2, 3, 4, 5, 9)):
    specs = []
    for q in qs:
        p, f = (2, {2: 1, 4: 2}[q]) if q in (2, 4) else \
               ({3: 3, 9: 3, 5: 5}[q], 2 if q == 9 else 1)
        for n in range(2, nmax + 1):
            for fam in ("sp", "psp", "so-odd", "omega-odd"):
                specs.append(GroupSpec(fam, n, p, f))
            if n >= 4:
                for fam in ("so-even", "omega-even", "pomega"):
                    for eps in ("+", "-"):
                        specs.append(GroupSpec(fam, n, p, f, eps=eps))
    out = []
    for s in specs:
        try:
            normalize(s)
        except UnsupportedGroup:
            continue
        out.append(s)
    return out


@pytest.mark.parametrize("spec", _grid(), ids=lambda s: s.label())
def test_mu_is_antichain(spec):
    vals = mu(omega_generators(normalize(spec)))
    assert vals == sorted(vals)
    for a in vals:
        assert not any(b != a and b % a == 0 for b in vals)


@pytest.mark.parametrize("spec", _grid(nmax=4, qs=(2, 3, 9)),
                         ids=lambda s: s.label())
def test_nu_inside_omega_and_p_divisible(spec):
    ns = normalize(spec)
    gens = [g.value for g in omega_generators(ns)]
    for v in nu_composite(ns):
        assert v % ns.p == 0
        assert any(g % v == 0 for g in gens)


def test_quotient_containment():
    pairs = [
        (GroupSpec("psp", 3, 3), GroupSpec("sp", 3, 3)),
        (GroupSpec("omega-odd", 3, 3), GroupSpec("so-odd", 3, 3)),
        (GroupSpec("omega-even", 4, 3, eps="+"), GroupSpec("so-even", 4, 3, eps="+")),
        (GroupSpec("omega-even", 4, 3, eps="-"), GroupSpec("so-even", 4, 3, eps="-")),
        (GroupSpec("pomega", 4, 3, eps="+"), GroupSpec("omega-even", 4, 3, eps="+")),
    ]
    for sub, sup in pairs:
        sup_gens = [g.value for g in omega_generators(normalize(sup))]
        for g in omega_generators(normalize(sub)):
            assert any(v % g.value == 0 for v in sup_gens), (sub.label(), g)


def test_contains_agrees_with_enumeration():
    ns = normalize(GroupSpec("sp", 2, 3))
    omega = omega_enumerate(ns)
    for m in range(1, max(omega) + 2):
        assert contains(ns, m) == (m in omega)
    # divisor closure
    for m in omega:
        for d in range(1, m + 1):
            if m % d == 0:
                assert d in omega


def test_omega_enumerate_cap():
    ns = normalize(GroupSpec("sp", 2, 3, f=2))
    with pytest.raises(CapExceeded):
        omega_enumerate(ns, cap=3)


@pytest.mark.parametrize("lie,rank,p,expected", [
    ("C", 2, 3, 9), ("C", 2, 2, 4), ("C", 3, 2, 8), ("C", 3, 3, 9),
    ("B", 3, 3, 9), ("D", 4, 3, 9), ("C", 5, 2, 16), ("B", 2, 5, 5),
])
def test_max_unipotent_order(lie, rank, p, expected):
    assert max_unipotent_order(lie, rank, p) == expected


def test_generator_provenance_nonempty():
    for spec in (GroupSpec("sp", 3, 3), GroupSpec("omega-even", 5, 3, eps="-")):
        for g in omega_generators(normalize(spec)):
            assert g.item
            assert g.value >= 1
