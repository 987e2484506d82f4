"""Closed-form element-order spectra for symplectic and orthogonal groups.

Every supported group has a finite list of generator values whose divisors
make up the full set of element orders.  Generator values come in a few
shapes: lcm's of q^m +/- 1 factors over signed partitions (semisimple part),
the same multiplied by a p-power (unipotent times torus), halved torus
values, and a handful of exceptional constants.  `omega_generators` emits
the full multiset with a human-readable provenance formula per value;
`mu` reduces any value list to its divisibility-maximal antichain.

`nu_composite` exposes the coarser composite-order supersets used to bound
the p-singular part of the spectrum; each of its values is divisible by p.
"""

from dataclasses import dataclass
from itertools import product
from math import gcd

from sympy import divisors

from .errors import CapExceeded, InvalidArgument
from .exactmath import enumerate_partitions, enumerate_signed_pairs, lcm_all
from .groups import NormalizedSpec


@dataclass(frozen=True)
class WitnessRecipe:
    """Block data for building a matrix of a prescribed order.

    ambient 'C' means a symplectic matrix group, 'B' an odd-dimensional
    orthogonal one.  The element is a block-diagonal product of a regular
    unipotent of rank `n0` (order p**k) and irreducible torus blocks: each
    minus part m contributes a block of order q^m - 1, each plus part m one
    of order q^m + 1.  halving=2 realizes the torus part as a square;
    central multiplies by -I; projective means the target is the order of
    the image modulo the center; omega requires the trivial spinor class.
    """

    ambient: str
    k: int = 0
    n0: int = 0
    minus: tuple = ()
    plus: tuple = ()
    halving: int = 1
    central: bool = False
    projective: bool = False
    omega: bool = False


@dataclass(frozen=True)
class Generator:
    value: int
    item: str
    recipe: WitnessRecipe | None = None


def max_unipotent_order(lie_type, rank, p):
    """Largest order of a unipotent element: least p**k above the root height."""
    if lie_type not in ("B", "C", "D"):
        raise InvalidArgument("lie_type must be B, C or D")
    if rank < 1 or (lie_type == "D" and rank < 2):
        raise InvalidArgument("rank %r too small for type %s" % (rank, lie_type))
    h = 2 * rank - 3 if lie_type == "D" else 2 * rank - 1
    pk = 1
    while pk <= h:
        pk *= p
    return pk


def _signed_assignments(m, parity="none", min_parts=1):
    """Partitions of m with a sign per part, as (parts, signs) tuples.

    Signs are enumerated as full vectors over the parts of each partition,
    so a repeated part with swapped signs appears once per vector; parity
    filters on the count of + signs.
    """
    for parts in enumerate_partitions(m):
        if len(parts) < min_parts:
            continue
        for signs in product((-1, 1), repeat=len(parts)):
            plus_count = sum(1 for s in signs if s > 0)
            if parity == "plus_even" and plus_count % 2 != 0:
                continue
            if parity == "plus_odd" and plus_count % 2 != 1:
                continue
            yield parts, signs


def _sa_value(q, parts, signs):
    return lcm_all([q**a + s for a, s in zip(parts, signs)])


def _sa_split(parts, signs):
    minus = tuple(a for a, s in zip(parts, signs) if s < 0)
    plus = tuple(a for a, s in zip(parts, signs) if s > 0)
    return minus, plus


def _fmt_terms(q, parts, signs, extra=()):
    terms = list(extra)
    for a, s in zip(parts, signs):
        op = "+" if s > 0 else "-"
        terms.append("q%s%s1" % ("" if a == 1 else "^%d" % a, op))
    return ", ".join(terms)


def _p_power_k(x, p):
    """Return k with p**(k-1) == x, or None."""
    k = 1
    v = 1
    while v < x:
        v *= p
        k += 1
    return k if v == x else None


def _parity_for(eps):
    return "plus_even" if eps == "+" else "plus_odd"


def _recipe_torus(ambient, parts, signs, **kw):
    minus, plus = _sa_split(parts, signs)
    return WitnessRecipe(ambient, minus=minus, plus=plus, **kw)


# --- per-engine generator lists ------------------------------------------


def _gens_sp(n, q, p):
    out = []
    for parts, signs in _signed_assignments(n):
        out.append(Generator(_sa_value(q, parts, signs),
                             "lcm(%s)" % _fmt_terms(q, parts, signs),
                             _recipe_torus("C", parts, signs)))
    k = 1
    while (p ** (k - 1) + 1) // 2 < n:
        n0 = (p ** (k - 1) + 1) // 2
        for parts, signs in _signed_assignments(n - n0):
            v = p**k * _sa_value(q, parts, signs)
            out.append(Generator(v, "%d^%d*lcm(%s)" % (p, k, _fmt_terms(q, parts, signs)),
                                 _recipe_torus("C", parts, signs, k=k, n0=n0)))
        k += 1
    k = _p_power_k(2 * n - 1, p)
    if k is not None and k > 1:
        out.append(Generator(2 * p**k, "2*%d^%d" % (p, k),
                             WitnessRecipe("C", k=k, n0=n, central=True)))
    return out


def _gens_psp(n, q, p):
    out = []
    for sign, tag in ((-1, "-"), (1, "+")):
        rec = WitnessRecipe("C", minus=(n,) if sign < 0 else (),
                            plus=(n,) if sign > 0 else (), projective=True)
        out.append(Generator((q**n + sign) // 2, "(q^%d%s1)/2" % (n, tag), rec))
    for parts, signs in _signed_assignments(n, min_parts=2):
        out.append(Generator(_sa_value(q, parts, signs),
                             "lcm(%s)" % _fmt_terms(q, parts, signs),
                             _recipe_torus("C", parts, signs, projective=True)))
    k = 1
    while (p ** (k - 1) + 1) // 2 < n:
        n0 = (p ** (k - 1) + 1) // 2
        for parts, signs in _signed_assignments(n - n0):
            v = p**k * _sa_value(q, parts, signs)
            out.append(Generator(v, "%d^%d*lcm(%s)" % (p, k, _fmt_terms(q, parts, signs)),
                                 _recipe_torus("C", parts, signs, k=k, n0=n0,
                                               projective=True)))
        k += 1
    k = _p_power_k(2 * n - 1, p)
    if k is not None and k > 1:
        out.append(Generator(p**k, "%d^%d" % (p, k),
                             WitnessRecipe("C", k=k, n0=n, projective=True)))
    return out


def _gens_omega_odd_even_q(n, q):
    # realized as the isomorphic symplectic group, so recipes use ambient C
    out = []
    for parts, signs in _signed_assignments(n):
        out.append(Generator(_sa_value(q, parts, signs),
                             "lcm(%s)" % _fmt_terms(q, parts, signs),
                             _recipe_torus("C", parts, signs)))
    if n - 1 >= 1:
        for parts, signs in _signed_assignments(n - 1):
            out.append(Generator(2 * _sa_value(q, parts, signs),
                                 "2*lcm(%s)" % _fmt_terms(q, parts, signs),
                                 _recipe_torus("C", parts, signs, k=1, n0=1)))
    k = 2
    while 2 ** (k - 2) + 1 < n:
        n0 = 2 ** (k - 2) + 1
        for parts, signs in _signed_assignments(n - n0):
            v = 2**k * _sa_value(q, parts, signs)
            out.append(Generator(v, "2^%d*lcm(%s)" % (k, _fmt_terms(q, parts, signs)),
                                 _recipe_torus("C", parts, signs, k=k, n0=n0)))
        k += 1
    k = _p_power_k(n - 1, 2)
    if k is not None:
        out.append(Generator(2 ** (k + 1), "2^%d" % (k + 1),
                             WitnessRecipe("C", k=k + 1, n0=n)))
    return out


def _gens_so_odd(n, q, p):
    out = []
    for parts, signs in _signed_assignments(n):
        out.append(Generator(_sa_value(q, parts, signs),
                             "lcm(%s)" % _fmt_terms(q, parts, signs),
                             _recipe_torus("B", parts, signs)))
    k = 1
    while (p ** (k - 1) + 1) // 2 < n:
        n0 = (p ** (k - 1) + 1) // 2
        for parts, signs in _signed_assignments(n - n0):
            v = p**k * _sa_value(q, parts, signs)
            out.append(Generator(v, "%d^%d*lcm(%s)" % (p, k, _fmt_terms(q, parts, signs)),
                                 _recipe_torus("B", parts, signs, k=k, n0=n0)))
        k += 1
    k = _p_power_k(2 * n - 1, p)
    if k is not None:
        out.append(Generator(p**k, "%d^%d" % (p, k), WitnessRecipe("B", k=k, n0=n)))
    return out


def _gens_omega_odd(n, q, p):
    out = []
    for sign, tag in ((-1, "-"), (1, "+")):
        rec = WitnessRecipe("B", minus=(n,) if sign < 0 else (),
                            plus=(n,) if sign > 0 else (), halving=2, omega=True)
        out.append(Generator((q**n + sign) // 2, "(q^%d%s1)/2" % (n, tag), rec))
    for parts, signs in _signed_assignments(n, min_parts=2):
        out.append(Generator(_sa_value(q, parts, signs),
                             "lcm(%s)" % _fmt_terms(q, parts, signs),
                             _recipe_torus("B", parts, signs, omega=True)))
    k = 1
    while (p ** (k - 1) + 1) // 2 < n:
        n0 = (p ** (k - 1) + 1) // 2
        n1 = n - n0
        for sign, tag in ((-1, "-"), (1, "+")):
            rec = WitnessRecipe("B", k=k, n0=n0, minus=(n1,) if sign < 0 else (),
                                plus=(n1,) if sign > 0 else (), halving=2, omega=True)
            out.append(Generator(p**k * (q**n1 + sign) // 2,
                                 "%d^%d*(q^%d%s1)/2" % (p, k, n1, tag), rec))
        for parts, signs in _signed_assignments(n - n0, min_parts=2):
            v = p**k * _sa_value(q, parts, signs)
            out.append(Generator(v, "%d^%d*lcm(%s)" % (p, k, _fmt_terms(q, parts, signs)),
                                 _recipe_torus("B", parts, signs, k=k, n0=n0, omega=True)))
        k += 1
    k = _p_power_k(2 * n - 1, p)
    if k is not None:
        out.append(Generator(p**k, "%d^%d" % (p, k),
                             WitnessRecipe("B", k=k, n0=n, omega=True)))
    return out


def _gens_so_even(n, q, p, eps):
    par = _parity_for(eps)
    out = []
    for parts, signs in _signed_assignments(n, parity=par):
        out.append(Generator(_sa_value(q, parts, signs),
                             "lcm(%s)" % _fmt_terms(q, parts, signs)))
    k = 1
    while (p ** (k - 1) + 3) // 2 < n:
        n0 = (p ** (k - 1) + 3) // 2
        for parts, signs in _signed_assignments(n - n0):
            v = p**k * _sa_value(q, parts, signs)
            out.append(Generator(v, "%d^%d*lcm(%s)" % (p, k, _fmt_terms(q, parts, signs))))
        k += 1
    for sign, tag in ((-1, "-"), (1, "+")):
        for parts, signs in _signed_assignments(n - 2, parity=par):
            v = p * lcm_all([q + sign, _sa_value(q, parts, signs)])
            out.append(Generator(v, "%d*lcm(%s)" % (p, _fmt_terms(q, parts, signs,
                                                                  ["q%s1" % tag]))))
    k = _p_power_k(2 * n - 3, p)
    if k is not None:
        out.append(Generator(2 * p**k, "2*%d^%d" % (p, k)))
    return out


def _gens_omega_even_even_q(n, q, eps):
    par = _parity_for(eps)
    anti = _parity_for("-" if eps == "+" else "+")
    out = []
    for parts, signs in _signed_assignments(n, parity=par):
        out.append(Generator(_sa_value(q, parts, signs),
                             "lcm(%s)" % _fmt_terms(q, parts, signs)))
    k = 2
    while 2 ** (k - 2) + 2 < n:
        n0 = 2 ** (k - 2) + 2
        for parts, signs in _signed_assignments(n - n0):
            out.append(Generator(2**k * _sa_value(q, parts, signs),
                                 "2^%d*lcm(%s)" % (k, _fmt_terms(q, parts, signs))))
        k += 1
    for parts, signs in _signed_assignments(n - 2):
        out.append(Generator(2 * _sa_value(q, parts, signs),
                             "2*lcm(%s)" % _fmt_terms(q, parts, signs)))
    for sign, tag in ((-1, "-"), (1, "+")):
        for parts, signs in _signed_assignments(n - 2, parity=par):
            v = 2 * lcm_all([q + sign, _sa_value(q, parts, signs)])
            out.append(Generator(v, "2*lcm(%s)" % _fmt_terms(q, parts, signs,
                                                             ["q%s1" % tag])))
    # mixed-sign reading: covers the all-plus special case as well
    for parts, signs in _signed_assignments(n - 3, parity=par):
        v = 4 * lcm_all([q - 1, _sa_value(q, parts, signs)])
        out.append(Generator(v, "4*lcm(%s)" % _fmt_terms(q, parts, signs, ["q-1"])))
    for parts, signs in _signed_assignments(n - 3, parity=anti):
        v = 4 * lcm_all([q + 1, _sa_value(q, parts, signs)])
        out.append(Generator(v, "4*lcm(%s)" % _fmt_terms(q, parts, signs, ["q+1"])))
    k = _p_power_k(n - 2, 2)
    if k is not None and k + 1 > 2:
        out.append(Generator(2 ** (k + 1), "2^%d" % (k + 1)))
    return out


def _gens_omega_even_odd_q(n, q, p, eps):
    par = _parity_for(eps)
    eps1 = 1 if eps == "+" else -1
    out = [Generator((q**n - eps1) // 2, "(q^%d%s1)/2" % (n, "-" if eps1 > 0 else "+"))]
    for parts, signs in _signed_assignments(n, parity=par, min_parts=2):
        out.append(Generator(_sa_value(q, parts, signs),
                             "lcm(%s)" % _fmt_terms(q, parts, signs)))
    k = 1
    while (p ** (k - 1) + 3) // 2 < n:
        nk = (p ** (k - 1) + 3) // 2
        for sign, tag in ((-1, "-"), (1, "+")):
            # the orthogonal factor's own type flips with the torus sign
            dk = gcd(4, q**nk + sign * eps1) // 2
            v = p**k * lcm_all([dk, (q ** (n - nk) + sign) // dk])
            out.append(Generator(v, "%d^%d*lcm(%d, (q^%d%s1)/%d)"
                                 % (p, k, dk, n - nk, tag, dk)))
        for parts, signs in _signed_assignments(n - nk, min_parts=2):
            v = p**k * _sa_value(q, parts, signs)
            out.append(Generator(v, "%d^%d*lcm(%s)" % (p, k, _fmt_terms(q, parts, signs))))
        k += 1
    for sign, tag in ((-1, "-"), (1, "+")):
        for parts, signs in _signed_assignments(n - 2, parity=par, min_parts=2):
            v = p * lcm_all([q + sign, _sa_value(q, parts, signs)])
            out.append(Generator(v, "%d*lcm(%s)" % (p, _fmt_terms(q, parts, signs,
                                                                  ["q%s1" % tag]))))
        v = p * lcm_all([q + sign, (q ** (n - 2) - eps1) // 2])
        out.append(Generator(v, "%d*lcm(q%s1, (q^%d%s1)/2)"
                             % (p, tag, n - 2, "-" if eps1 > 0 else "+")))
    k = _p_power_k(2 * n - 3, p)
    if k is not None:
        d = gcd(4, q**n - eps1) // 2
        out.append(Generator(d * p**k, "%d*%d^%d" % (d, p, k)))
    if n == 4 and eps == "+":
        out.append(Generator(p * (q**2 - 1), "%d*(q^2-1)" % p))
        out.append(Generator(p * (q**2 + 1), "%d*(q^2+1)" % p))
    if n == 4 and p == 3 and eps == "+":
        out.append(Generator(9 * (q - 1), "9*(q-1)"))
        out.append(Generator(9 * (q + 1), "9*(q+1)"))
    return out


def _gens_pomega(n, q, p, eps):
    par = _parity_for(eps)
    eps1 = 1 if eps == "+" else -1
    out = [Generator((q**n - eps1) // 4, "(q^%d%s1)/4" % (n, "-" if eps1 > 0 else "+"))]
    seen_pairs = set()
    for n1 in range(1, n):
        for s1 in (-1, 1):
            n2 = n - n1
            s2 = eps1 * s1
            key = frozenset(((n1, s1), (n2, s2))) if (n1, s1) != (n2, s2) \
                else ((n1, s1),)
            if key in seen_pairs:
                continue
            seen_pairs.add(key)
            f1, f2 = q**n1 - s1, q**n2 - s2
            d = 2 if _two_part(f1) == _two_part(f2) else 1
            v = lcm_all([f1, f2]) // d
            out.append(Generator(v, "lcm(q^%d%s1, q^%d%s1)/%d"
                                 % (n1, "-" if s1 > 0 else "+",
                                    n2, "-" if s2 > 0 else "+", d)))
    for parts, signs in _signed_assignments(n, parity=par, min_parts=3):
        out.append(Generator(_sa_value(q, parts, signs),
                             "lcm(%s)" % _fmt_terms(q, parts, signs)))
    k = 1
    while (p ** (k - 1) + 3) // 2 < n:
        nk = (p ** (k - 1) + 3) // 2
        for sign, tag in ((-1, "-"), (1, "+")):
            out.append(Generator(p**k * (q ** (n - nk) + sign) // 2,
                                 "%d^%d*(q^%d%s1)/2" % (p, k, n - nk, tag)))
        for parts, signs in _signed_assignments(n - nk, min_parts=2):
            v = p**k * _sa_value(q, parts, signs)
            out.append(Generator(v, "%d^%d*lcm(%s)" % (p, k, _fmt_terms(q, parts, signs))))
        k += 1
    for sign, tag in ((-1, "-"), (1, "+")):
        for parts, signs in _signed_assignments(n - 2, parity=par, min_parts=2):
            v = p * lcm_all([q + sign, _sa_value(q, parts, signs)])
            out.append(Generator(v, "%d*lcm(%s)" % (p, _fmt_terms(q, parts, signs,
                                                                  ["q%s1" % tag]))))
        v = p * lcm_all([q + sign, (q ** (n - 2) - eps1) // 2])
        out.append(Generator(v, "%d*lcm(q%s1, (q^%d%s1)/2)"
                             % (p, tag, n - 2, "-" if eps1 > 0 else "+")))
    k = _p_power_k(2 * n - 3, p)
    if k is not None:
        out.append(Generator(p**k, "%d^%d" % (p, k)))
    return out


def _two_part(m):
    """2-part of m (largest power of 2 dividing m)."""
    t = 1
    while m % 2 == 0:
        m //= 2
        t *= 2
    return t


_ENGINE_GENS = {
    "sp": lambda ns: _gens_sp(ns.n, ns.q, ns.p),
    "psp": lambda ns: _gens_psp(ns.n, ns.q, ns.p),
    "omega-odd-even-q": lambda ns: _gens_omega_odd_even_q(ns.n, ns.q),
    "so-odd": lambda ns: _gens_so_odd(ns.n, ns.q, ns.p),
    "omega-odd": lambda ns: _gens_omega_odd(ns.n, ns.q, ns.p),
    "so-even": lambda ns: _gens_so_even(ns.n, ns.q, ns.p, ns.eps),
    "omega-even-even-q": lambda ns: _gens_omega_even_even_q(ns.n, ns.q, ns.eps),
    "omega-even-odd-q": lambda ns: _gens_omega_even_odd_q(ns.n, ns.q, ns.p, ns.eps),
    "pomega": lambda ns: _gens_pomega(ns.n, ns.q, ns.p, ns.eps),
}


def omega_generators(ns: NormalizedSpec):
    """Full generator multiset for omega(G), sorted by (value, provenance)."""
    gens = _ENGINE_GENS[ns.engine](ns)
    return sorted(gens, key=lambda g: (g.value, g.item))


# --- composite-part supersets --------------------------------------------


def _pairs_value(q, pair):
    minus, plus = pair
    return lcm_all([q**a - 1 for a in minus] + [q**b + 1 for b in plus])


def _nu_sp(n, q, p, projective=False):
    out = []
    k = 1
    while (p ** (k - 1) + 1) // 2 < n:
        n0 = (p ** (k - 1) + 1) // 2
        for pair in enumerate_signed_pairs(n - n0):
            out.append(p**k * _pairs_value(q, pair))
        k += 1
    k = _p_power_k(2 * n - 1, p)
    if k is not None and k > 1:
        out.append(p**k if projective else 2 * p**k)
    return out


def _nu_omega_odd_even_q(n, q):
    out = [2 * _pairs_value(q, pair) for pair in enumerate_signed_pairs(n - 1)]
    k = 2
    while 2 ** (k - 2) + 1 < n:
        n0 = 2 ** (k - 2) + 1
        out.extend(2**k * _pairs_value(q, pair)
                   for pair in enumerate_signed_pairs(n - n0))
        k += 1
    return out


def _nu_so_odd(n, q, p):
    out = []
    k = 1
    while (p ** (k - 1) + 1) // 2 < n:
        n0 = (p ** (k - 1) + 1) // 2
        out.extend(p**k * _pairs_value(q, pair)
                   for pair in enumerate_signed_pairs(n - n0))
        k += 1
    return out


def _nu_omega_odd(n, q, p):
    out = []
    k = 1
    while (p ** (k - 1) + 1) // 2 < n:
        n0 = (p ** (k - 1) + 1) // 2
        for minus, plus in enumerate_signed_pairs(n - n0):
            if len(minus) + len(plus) >= 2:
                out.append(p**k * _pairs_value(q, (minus, plus)))
            elif len(minus) == 1:
                out.append(p**k * (q ** minus[0] - 1) // 2)
            else:
                out.append(p**k * (q ** plus[0] + 1) // 2)
        k += 1
    return out


def _nu_omega_even_even_q(n, q, eps):
    par = _parity_for(eps)
    anti = _parity_for("-" if eps == "+" else "+")
    out = []
    k = 2
    while 2 ** (k - 2) + 2 < n:
        n0 = 2 ** (k - 2) + 2
        out.extend(2**k * _pairs_value(q, pair)
                   for pair in enumerate_signed_pairs(n - n0))
        k += 1
    out.extend(2 * _pairs_value(q, pair) for pair in enumerate_signed_pairs(n - 2))
    for sign in (-1, 1):
        out.extend(2 * lcm_all([q + sign, _pairs_value(q, pair)])
                   for pair in enumerate_signed_pairs(n - 2, parity=par))
    out.extend(4 * lcm_all([q - 1, _pairs_value(q, pair)])
               for pair in enumerate_signed_pairs(n - 3, parity=par))
    out.extend(4 * lcm_all([q + 1, _pairs_value(q, pair)])
               for pair in enumerate_signed_pairs(n - 3, parity=anti))
    return out


def _nu_so_even(n, q, p, eps):
    par = _parity_for(eps)
    out = []
    k = 1
    while (p ** (k - 1) + 3) // 2 < n:
        n0 = (p ** (k - 1) + 3) // 2
        out.extend(p**k * _pairs_value(q, pair)
                   for pair in enumerate_signed_pairs(n - n0))
        k += 1
    for sign in (-1, 1):
        out.extend(p * lcm_all([q + sign, _pairs_value(q, pair)])
                   for pair in enumerate_signed_pairs(n - 2, parity=par))
    k = _p_power_k(2 * n - 3, p)
    if k is not None:
        out.append(2 * p**k)
    return out


def _nu_omega_even_odd_q(n, q, p, eps, projective=False):
    par = _parity_for(eps)
    eps1 = 1 if eps == "+" else -1
    out = []
    k = 1
    while (p ** (k - 1) + 3) // 2 < n:
        nk = (p ** (k - 1) + 3) // 2
        if projective:
            for sign in (-1, 1):
                out.append(p**k * (q ** (n - nk) + sign) // 2)
        else:
            for sign in (-1, 1):
                dk = gcd(4, q**nk + sign * eps1) // 2
                out.append(p**k * lcm_all([dk, (q ** (n - nk) + sign) // dk]))
        for pair in enumerate_signed_pairs(n - nk, min_total_parts=2):
            out.append(p**k * _pairs_value(q, pair))
        k += 1
    for sign in (-1, 1):
        out.extend(p * lcm_all([q + sign, _pairs_value(q, pair)])
                   for pair in enumerate_signed_pairs(n - 2, parity=par,
                                                      min_total_parts=2))
        out.append(p * lcm_all([q + sign, (q ** (n - 2) - eps1) // 2]))
    k = _p_power_k(2 * n - 3, p)
    if not projective:
        if k is not None and gcd(4, q**n - eps1) == 4:
            out.append(2 * p**k)
        if n == 4 and eps == "+":
            out.extend([p * (q**2 - 1), p * (q**2 + 1)])
        if n == 4 and p == 3 and eps == "+":
            out.extend([9 * (q - 1), 9 * (q + 1)])
    return out


_ENGINE_NU = {
    "sp": lambda ns: _nu_sp(ns.n, ns.q, ns.p),
    "psp": lambda ns: _nu_sp(ns.n, ns.q, ns.p, projective=True),
    "omega-odd-even-q": lambda ns: _nu_omega_odd_even_q(ns.n, ns.q),
    "so-odd": lambda ns: _nu_so_odd(ns.n, ns.q, ns.p),
    "omega-odd": lambda ns: _nu_omega_odd(ns.n, ns.q, ns.p),
    "so-even": lambda ns: _nu_so_even(ns.n, ns.q, ns.p, ns.eps),
    "omega-even-even-q": lambda ns: _nu_omega_even_even_q(ns.n, ns.q, ns.eps),
    "omega-even-odd-q": lambda ns: _nu_omega_even_odd_q(ns.n, ns.q, ns.p, ns.eps),
    "pomega": lambda ns: _nu_omega_even_odd_q(ns.n, ns.q, ns.p, ns.eps,
                                              projective=True),
}


def nu_composite(ns: NormalizedSpec):
    """Composite-part superset: multiset of values, each divisible by p."""
    return sorted(_ENGINE_NU[ns.engine](ns))


# --- reductions and queries ----------------------------------------------


def mu(values):
    """Divisibility-maximal antichain of a value collection, sorted ascending."""
    vals = sorted({v.value if isinstance(v, Generator) else v for v in values})
    return [v for v in vals
            if not any(w != v and w % v == 0 for w in vals)]


def contains(ns: NormalizedSpec, m):
    """True iff m is an element order of the group."""
    if m < 1:
        raise InvalidArgument("order must be >= 1")
    return any(m <= g.value and g.value % m == 0 for g in omega_generators(ns))


def omega_enumerate(ns: NormalizedSpec, cap=100000):
    """All element orders of the group, sorted; CapExceeded if too many."""
    if cap < 1:
        raise InvalidArgument("cap must be >= 1")
    orders = set()
    for g in omega_generators(ns):
        orders.update(divisors(g.value))
        if len(orders) > cap:
            raise CapExceeded("more than %d distinct orders" % cap)
    return sorted(orders)
