"""Group specifications, normalization, orders and centers.

Families are named by the CLI slugs:

    sp          Sp_{2n}(q)
    psp         PSp_{2n}(q)
    so-odd      SO_{2n+1}(q)
    omega-odd   Omega_{2n+1}(q)
    so-even     SO^eps_{2n}(q)
    omega-even  Omega^eps_{2n}(q)
    pomega      POmega^eps_{2n}(q)

`normalize` folds exceptional isomorphisms into a small set of engines so
the spectrum code never sees a redundant case.
"""

from dataclasses import dataclass, replace
from math import gcd

from sympy import factorint, isprime

from .errors import InvalidArgument, InvalidEpsilon, UnsupportedGroup

FAMILIES = ("sp", "psp", "so-odd", "omega-odd", "so-even", "omega-even", "pomega")
EVEN_DIM_FAMILIES = ("so-even", "omega-even", "pomega")

# Engines: one per distinct closed-form spectrum description.
ENGINES = (
    "sp",                  # Sp_{2n}(q), q odd
    "psp",                 # PSp_{2n}(q), q odd
    "omega-odd-even-q",    # Omega_{2n+1}(q) = Sp_{2n}(q), q even
    "so-odd",              # SO_{2n+1}(q), q odd
    "omega-odd",           # Omega_{2n+1}(q), q odd, n >= 3
    "so-even",             # SO^eps_{2n}(q), q odd
    "omega-even-even-q",   # Omega^eps_{2n}(q), q even
    "omega-even-odd-q",    # Omega^eps_{2n}(q), q odd
    "pomega",              # POmega^eps_{2n}(q), q odd, gcd(4, q^n - eps) = 4
)


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int
    p: int
    f: int = 1
    eps: str | None = None  # '+', '-' or None

    @property
    def q(self):
        return self.p**self.f

    def label(self):
        if self.family in ("sp", "psp"):
            dim = 2 * self.n
        elif self.family in ("so-odd", "omega-odd"):
            dim = 2 * self.n + 1
        else:
            dim = 2 * self.n
        e = self.eps or ""
        return "%s%s_%d(%d)" % (self.family, e, dim, self.q)


@dataclass(frozen=True)
class NormalizedSpec:
    engine: str
    spec: GroupSpec
    notes: tuple = ()

    @property
    def n(self):
        return self.spec.n

    @property
    def p(self):
        return self.spec.p

    @property
    def q(self):
        return self.spec.q

    @property
    def eps(self):
        return self.spec.eps


def _validate(spec):
    if spec.family not in FAMILIES:
        raise InvalidArgument("unknown family %r" % (spec.family,))
    if not isprime(spec.p):
        raise InvalidArgument("p must be prime, got %r" % (spec.p,))
    if spec.f < 1:
        raise InvalidArgument("f must be >= 1, got %r" % (spec.f,))
    if spec.n < 1:
        raise UnsupportedGroup("rank n must be >= 1, got %r" % (spec.n,))
    if spec.family in EVEN_DIM_FAMILIES:
        if spec.eps not in ("+", "-"):
            raise InvalidEpsilon("family %s needs eps '+' or '-'" % spec.family)
    elif spec.eps is not None:
        raise InvalidEpsilon("family %s takes no eps" % spec.family)


def normalize(spec):
    """Route a GroupSpec to its spectrum engine, recording delegations."""
    _validate(spec)
    notes = []
    family, n, q = spec.family, spec.n, spec.q
    even_q = spec.p == 2

    if even_q and family in ("sp", "psp", "so-odd", "omega-odd"):
        # In characteristic 2 all four collapse onto one simple group.
        if n < 2:
            raise UnsupportedGroup("need n >= 2 for %s in characteristic 2" % family)
        if family != "omega-odd":
            notes.append("char-2 identification: %s -> omega-odd" % family)
        if (n, q) == (2, 2):
            notes.append("small-group degeneration at (n, q) = (2, 2)")
        return NormalizedSpec("omega-odd-even-q", replace(spec, family="omega-odd"), tuple(notes))

    if family in ("sp", "psp"):
        if n < 2:
            raise UnsupportedGroup("need n >= 2 for %s" % family)
        return NormalizedSpec(family, spec, ())

    if family == "so-odd":
        if n < 2:
            raise UnsupportedGroup("need n >= 2 for so-odd")
        return NormalizedSpec("so-odd", spec, ())

    if family == "omega-odd":
        if n < 2:
            raise UnsupportedGroup("need n >= 2 for omega-odd")
        if n == 2:
            notes.append("low-rank identification: omega-odd n=2 -> psp n=2")
            return NormalizedSpec("psp", replace(spec, family="psp"), tuple(notes))
        return NormalizedSpec("omega-odd", spec, ())

    # even-dimensional orthogonal families
    if n < 4:
        raise UnsupportedGroup("need n >= 4 for %s" % family)
    if family == "so-even":
        if even_q:
            raise UnsupportedGroup("so-even is not supported in characteristic 2")
        return NormalizedSpec("so-even", spec, ())
    if family == "omega-even":
        engine = "omega-even-even-q" if even_q else "omega-even-odd-q"
        return NormalizedSpec(engine, spec, ())
    # pomega
    eps1 = 1 if spec.eps == "+" else -1
    d = gcd(4, q**n - eps1)
    if even_q or d == 2:
        notes.append("trivial central quotient: pomega -> omega-even")
        engine = "omega-even-even-q" if even_q else "omega-even-odd-q"
        return NormalizedSpec(engine, replace(spec, family="omega-even"), tuple(notes))
    return NormalizedSpec("pomega", spec, ())


def _eps_int(eps):
    return 1 if eps == "+" else -1


def group_order_factorization(spec):
    """Prime factorization of |G| as a dict {prime: exponent}."""
    ns = normalize(spec)
    n, q, p, f = ns.n, ns.q, ns.p, ns.spec.f
    fac = {}

    def mul_in(m):
        for r, e in factorint(m).items():
            fac[r] = fac.get(r, 0) + e

    def div_in(m):
        for r, e in factorint(m).items():
            fac[r] = fac[r] - e
            if fac[r] == 0:
                del fac[r]

    family = ns.spec.family
    if family in ("sp", "psp") or ns.engine == "omega-odd-even-q":
        fac[p] = f * n * n
        for i in range(1, n + 1):
            mul_in(q ** (2 * i) - 1)
        if family == "psp" and q % 2 == 1:
            div_in(2)
    elif family in ("so-odd", "omega-odd"):
        fac[p] = f * n * n
        for i in range(1, n + 1):
            mul_in(q ** (2 * i) - 1)
        if family == "omega-odd":
            div_in(2)
    else:
        eps1 = _eps_int(ns.eps)
        fac[p] = f * n * (n - 1)
        mul_in(q**n - eps1)
        for i in range(1, n):
            mul_in(q ** (2 * i) - 1)
        if q % 2 == 1 and family in ("omega-even", "pomega"):
            div_in(2)
        if family == "pomega":
            div_in(gcd(4, q**n - eps1) // 2)
    return fac


def group_order(spec):
    """Exact order of the group as a Python int."""
    result = 1
    for r, e in group_order_factorization(spec).items():
        result *= r**e
    return result


def center_order(spec):
    """Order of the center of the group."""
    ns = normalize(spec)
    family, n, q = ns.spec.family, ns.n, ns.q
    if q % 2 == 0:
        return 1
    if family == "sp":
        return 2
    if family == "so-even":
        return 2
    if family == "omega-even":
        return gcd(4, q**n - _eps_int(ns.eps)) // 2
    return 1
