"""Exact arithmetic in GF(p^f) and extensions GF(q^e).

Elements are integer codes 0..q-1; the base-subfield digits of a code (low
to high) are the coefficients of the polynomial residue.  The modulus is
always the lexicographically smallest monic irreducible (coefficients
compared low-to-high), so contexts are deterministic.
"""

from sympy import factorint, isprime

from .errors import InfeasibleOrder, InvalidArgument


class Field:
    """GF(base.q ** deg) as polynomials over a subfield (or a prime field).

    For the prime field pass base=None, deg=1.  Codes are ints; arithmetic
    methods take and return codes.
    """

    def __init__(self, p, deg=1, base=None):
        self.p = p
        self.base = base
        self.deg = deg
        if base is None:
            assert deg == 1
            self.q = p
            self.f = 1
            self.modulus = None
        else:
            self.f = base.f * deg
            self.q = base.q**deg
            self.modulus = _smallest_irreducible(base, deg)

    # --- code <-> digit helpers

    def digits(self, a):
        bq = self.base.q
        out = []
        for _ in range(self.deg):
            a, r = divmod(a, bq)
            out.append(r)
        return out

    def from_digits(self, ds):
        bq = self.base.q
        a = 0
        for d in reversed(ds):
            a = a * bq + d
        return a

    # --- ring operations

    def add(self, a, b):
        if self.base is None:
            return (a + b) % self.p
        base = self.base
        return self.from_digits([base.add(x, y)
                                 for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        if self.base is None:
            return (-a) % self.p
        return self.from_digits([self.base.neg(x) for x in self.digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.base is None:
            return (a * b) % self.p
        prod = _pmul(self.base, self.digits(a), self.digits(b))
        return self.from_digits(_pmod(self.base, prod, self.modulus)[: self.deg])

    def pow_(self, a, e):
        if e < 0:
            return self.pow_(self.inv(a), -e)
        r, b = 1, a
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r

    def inv(self, a):
        if a == 0:
            raise InvalidArgument("zero has no inverse")
        if self.base is None:
            return pow(a, self.p - 2, self.p)
        return self.pow_(a, self.q - 2)

    def frob(self, a):
        """Frobenius over the prime field: x -> x^p."""
        return self.pow_(a, self.p)

    def is_square(self, a):
        """Quadratic-residue test; in characteristic 2 everything is a square."""
        if self.p == 2 or a == 0:
            return True
        return self.pow_(a, (self.q - 1) // 2) == 1

    def element_order(self, a):
        if a == 0:
            raise InvalidArgument("zero has no multiplicative order")
        o = self.q - 1
        for r in factorint(o):
            while o % r == 0 and self.pow_(a, o // r) == 1:
                o //= r
        return o


# --- polynomial helpers over an arbitrary Field (dense low-to-high lists)


def _ptrim(c):
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _pmul(fld, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = fld.add(out[i + j], fld.mul(x, y))
    return _ptrim(out)


def _pmod(fld, a, m):
    a = list(a)
    dm = len(m) - 1
    lead_inv = fld.inv(m[-1])
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = fld.mul(a[-1], lead_inv)
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = fld.sub(a[shift + i], fld.mul(c, mi))
        a.pop()
    a += [0] * (dm - len(a))
    return a


def _ppowmod(fld, a, e, m):
    r = [1]
    b = _pmod(fld, a, m)
    while e:
        if e & 1:
            r = _pmod(fld, _pmul(fld, r, b), m)
        b = _pmod(fld, _pmul(fld, b, b), m)
        e >>= 1
    return r


def _psub(fld, a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _ptrim([fld.sub(x, y) for x, y in zip(a, b)])


def _pgcd(fld, a, b):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while any(b):
        r = _ptrim(_pmod(fld, a, b))
        a, b = b, r
    return a


def _is_irreducible(base, poly):
    """poly monic over `base`; standard Frobenius-power criterion."""
    e = len(poly) - 1
    x = [0, 1]
    xq = _ppowmod(base, x, base.q**e, poly)
    if _psub(base, xq, x) != [0]:
        return False
    for r in factorint(e):
        xr = _ppowmod(base, x, base.q ** (e // r), poly)
        g = _pgcd(base, poly, _psub(base, xr, x))
        if len(g) > 1:
            return False
    return True


def _smallest_irreducible(base, e):
    """Lexicographically smallest (low-to-high coeffs) monic irreducible."""
    from itertools import product as iproduct

    for coeffs in iproduct(range(base.q), repeat=e):
        poly = list(coeffs) + [1]
        if poly[0] == 0:
            continue  # reducible: x divides
        if _is_irreducible(base, poly):
            return poly
    raise AssertionError("no irreducible of degree %d found" % e)


# --- public constructors and order machinery


def field_make(p, f=1):
    """GF(p^f) with the canonical modulus; InvalidArgument on bad p, f."""
    if not isprime(p):
        raise InvalidArgument("p must be prime, got %r" % (p,))
    if f < 1:
        raise InvalidArgument("f must be >= 1, got %r" % (f,))
    prime = Field(p)
    return prime if f == 1 else Field(p, f, prime)


def field_extend(ctx, e):
    """GF(q^e) as a degree-e extension of ctx (e = 1 returns ctx)."""
    if e < 1:
        raise InvalidArgument("extension degree must be >= 1")
    return ctx if e == 1 else Field(ctx.p, e, ctx)


def multiplicative_generator(ctx):
    """Smallest code generating the multiplicative group."""
    o = ctx.q - 1
    primes = list(factorint(o))
    for a in range(1, ctx.q):
        if all(ctx.pow_(a, o // r) != 1 for r in primes):
            return a
    raise AssertionError("no generator found")


def element_of_order(ctx, d):
    """Return (e, ext, lam): lam has order exactly d in ext = GF(q^e).

    e is the least extension degree with d | q^e - 1 (the multiplicative
    order of q modulo d).  InfeasibleOrder if p divides d.
    """
    if d < 1:
        raise InvalidArgument("order must be >= 1")
    if d % ctx.p == 0:
        raise InfeasibleOrder("order %d divisible by the characteristic" % d)
    if d == 1:
        return 1, ctx, 1
    e, r = 1, ctx.q % d
    while r != 1:
        r = (r * ctx.q) % d
        e += 1
    ext = field_extend(ctx, e)
    g = multiplicative_generator(ext)
    lam = ext.pow_(g, (ext.q - 1) // d)
    return e, ext, lam


def min_poly(ctx, ext, lam):
    """Minimal polynomial of lam in ext over ctx, monic, low-to-high codes.

    ext must be an extension of ctx (so ctx elements are the codes < ctx.q).
    """
    conjugates = [lam]
    c = ext.pow_(lam, ctx.q)
    while c != lam:
        conjugates.append(c)
        c = ext.pow_(c, ctx.q)
    poly = [1]
    for c in conjugates:
        poly = _pmul(ext, poly, [ext.neg(c), 1])
    for coef in poly:
        if coef >= ctx.q:
            raise AssertionError("minimal polynomial coefficient not in base field")
    return poly
