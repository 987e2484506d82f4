"""Brute-force matrix-group oracle for symplectic and orthogonal groups.

Matrices are numpy int64 arrays of field codes.  Prime fields get fully
vectorized products (batched einsum mod p); extension fields decompose
codes into digit planes and convolve, so the numpy path works for any
GF(p^f).  On top of that sit form-preserving generators (explicit root
elements, reflections for minus-type forms), breadth-first enumeration,
derived subgroups, order computation, spinor/Dickson membership tests,
product-replacement sampling, and block-diagonal witness construction.
"""

import os
import random
from dataclasses import dataclass

import numpy as np
from sympy import factorint

from .errors import (CapExceeded, InfeasibleRecipe, InvalidArgument,
                     NotPeriodic, OrderMismatch, UnsupportedGroup)
from .exactmath import lcm_all
from .gf import element_of_order, field_make, multiplicative_generator
from .groups import GroupSpec, group_order, normalize
from .spectrum import WitnessRecipe, omega_generators

DEFAULT_CAP = 200000


# --- matrix context -------------------------------------------------------


class MatCtx:
    """Matrix arithmetic over a Field, numpy-vectorized."""

    def __init__(self, field):
        self.field = field
        self.p = field.p
        self.q = field.q
        self.f = field.f
        if self.f > 1:
            # digit planes need the modulus over the prime field
            assert field.base is not None and field.base.base is None
            self.modulus = field.modulus

    def identity(self, d):
        return np.eye(d, dtype=np.int64)

    def zeros(self, d, e=None):
        return np.zeros((d, e if e is not None else d), dtype=np.int64)

    def _planes(self, a):
        return [(a // self.p**i) % self.p for i in range(self.f)]

    def _codes(self, planes):
        out = np.zeros_like(planes[0])
        for i, pl in enumerate(planes):
            out = out + pl * self.p**i
        return out

    def matmul(self, a, b):
        if self.f == 1:
            return (a @ b) % self.p
        pa, pb = self._planes(a), self._planes(b)
        f = self.f
        conv = [np.zeros((a.shape[0], b.shape[-1]), dtype=np.int64)
                for _ in range(2 * f - 1)]
        for i in range(f):
            for j in range(f):
                conv[i + j] = (conv[i + j] + pa[i] @ pb[j]) % self.p
        for k in range(2 * f - 2, f - 1, -1):
            top = conv[k]
            for i in range(f):
                if self.modulus[i]:
                    conv[k - f + i] = (conv[k - f + i]
                                       - self.modulus[i] * top) % self.p
            conv[k] = None
        return self._codes(conv[:f])

    def batch_matmul(self, stack, b):
        """(N,d,d) @ (d,d) elementwise over the batch."""
        if self.f == 1:
            return np.einsum("nij,jk->nik", stack, b) % self.p
        return np.stack([self.matmul(m, b) for m in stack])

    def batch_square_like(self, stack, base):
        if self.f == 1:
            return np.einsum("nij,njk->nik", stack, base) % self.p
        return np.stack([self.matmul(m, g) for m, g in zip(stack, base)])

    def matpow(self, a, e):
        d = a.shape[0]
        r = self.identity(d)
        b = a
        while e:
            if e & 1:
                r = self.matmul(r, b)
            b = self.matmul(b, b)
            e >>= 1
        return r

    def transpose(self, a):
        return a.T.copy()

    def scalar_mul(self, c, a):
        fld = self.field
        out = a.copy()
        it = np.nditer(out, flags=["multi_index"])
        for _ in it:
            out[it.multi_index] = fld.mul(c, int(out[it.multi_index]))
        return out

    def add(self, a, b):
        if self.f == 1:
            return (a + b) % self.p
        fld = self.field
        out = a.copy()
        it = np.nditer(out, flags=["multi_index"])
        for _ in it:
            out[it.multi_index] = fld.add(int(a[it.multi_index]),
                                          int(b[it.multi_index]))
        return out

    def neg(self, a):
        if self.f == 1:
            return (-a) % self.p
        fld = self.field
        out = a.copy()
        it = np.nditer(out, flags=["multi_index"])
        for _ in it:
            out[it.multi_index] = fld.neg(int(out[it.multi_index]))
        return out

    def mat_vec(self, a, v):
        fld = self.field
        if self.f == 1:
            return (a @ v) % self.p
        out = np.zeros(a.shape[0], dtype=np.int64)
        for i in range(a.shape[0]):
            acc = 0
            for j in range(a.shape[1]):
                acc = fld.add(acc, fld.mul(int(a[i, j]), int(v[j])))
            out[i] = acc
        return out

    # --- Gaussian elimination helpers (generic, dimensions are small)

    def _rowreduce(self, a, b=None):
        fld = self.field
        a = [[int(x) for x in row] for row in a]
        rows, cols = len(a), len(a[0])
        if b is not None:
            for i in range(rows):
                a[i] = a[i] + [int(x) for x in b[i]]
        det = 1
        r = 0
        pivots = []
        for c in range(cols):
            piv = next((i for i in range(r, rows) if a[i][c]), None)
            if piv is None:
                continue
            if piv != r:
                a[r], a[piv] = a[piv], a[r]
                det = fld.neg(det)
            det = fld.mul(det, a[r][c])
            inv = fld.inv(a[r][c])
            a[r] = [fld.mul(inv, x) for x in a[r]]
            for i in range(rows):
                if i != r and a[i][c]:
                    fac = a[i][c]
                    a[i] = [fld.sub(x, fld.mul(fac, y))
                            for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == rows:
                break
        return a, pivots, det, r

    def det(self, m):
        _, pivots, det, rank = self._rowreduce(m)
        return det if rank == m.shape[0] else 0

    def rank(self, m):
        return self._rowreduce(m)[3]

    def inv(self, m):
        d = m.shape[0]
        red, _, _, rank = self._rowreduce(m, self.identity(d))
        if rank < d:
            raise InvalidArgument("matrix is singular")
        return np.array([row[d:] for row in red], dtype=np.int64)

    def solve(self, a, b):
        """Solve a @ x = b for full-column-rank a (b a vector)."""
        d = a.shape[1]
        red, pivots, _, rank = self._rowreduce(a, b.reshape(-1, 1))
        if rank < d:
            raise InvalidArgument("system is underdetermined")
        x = np.zeros(d, dtype=np.int64)
        for r, c in enumerate(pivots):
            x[c] = red[r][-1]
        return x

    def key(self, m):
        return m.tobytes()


# --- forms ----------------------------------------------------------------


@dataclass
class FormData:
    kind: str           # 'symplectic' or 'quadratic'
    matrix: np.ndarray  # Gram matrix, or upper-triangular quadratic matrix
    eps: str | None = None


def sp_idx(n, i):
    return i - 1 if i > 0 else n - i - 1


def b_idx(n, i):
    if i == 0:
        return 0
    return i if i > 0 else n - i


def symplectic_form(ctx, n):
    g = ctx.zeros(2 * n)
    for i in range(1, n + 1):
        g[sp_idx(n, i), sp_idx(n, -i)] = 1
        g[sp_idx(n, -i), sp_idx(n, i)] = ctx.field.neg(1)
    return FormData("symplectic", g)


def odd_quadratic_form(ctx, n):
    u = ctx.zeros(2 * n + 1)
    u[0, 0] = 1
    for i in range(1, n + 1):
        u[b_idx(n, i), b_idx(n, -i)] = 1
    return FormData("quadratic", u)


def even_quadratic_form(ctx, n, eps):
    u = ctx.zeros(2 * n)
    if eps == "+":
        for i in range(1, n + 1):
            u[sp_idx(n, i), sp_idx(n, -i)] = 1
        return FormData("quadratic", u, "+")
    for i in range(1, n):
        u[sp_idx(n, i), sp_idx(n, -i)] = 1
    a, b = _anisotropic_pair(ctx.field)
    i, j = sp_idx(n, n), sp_idx(n, -n)
    u[i, i] = 1
    u[i, j] = a
    u[j, j] = b
    return FormData("quadratic", u, "-")


def _anisotropic_pair(fld):
    """Smallest (a, b) with z^2 + a z + b irreducible over the field."""
    for a in range(fld.q):
        for b in range(fld.q):
            if all(fld.add(fld.add(fld.mul(z, z), fld.mul(a, z)), b) != 0
                   for z in range(fld.q)):
                return a, b
    raise AssertionError("no irreducible quadratic found")


def quad_value(ctx, u, v):
    """v^T u v; u need not be upper-triangular."""
    fld = ctx.field
    acc = 0
    nz = [i for i in range(len(v)) if v[i]]
    for i in nz:
        for j in nz:
            if u[i, j]:
                acc = fld.add(acc, fld.mul(fld.mul(int(v[i]), int(v[j])),
                                           int(u[i, j])))
    return acc


def bilinear_value(ctx, u, v, w):
    """Polar form Q(v+w) - Q(v) - Q(w) of the quadratic matrix u."""
    fld = ctx.field
    acc = 0
    b = ctx.add(u, ctx.transpose(u))
    for i in range(len(v)):
        if not v[i]:
            continue
        for j in range(len(w)):
            if w[j] and b[i, j]:
                acc = fld.add(acc, fld.mul(fld.mul(int(v[i]), int(w[j])),
                                           int(b[i, j])))
    return acc


def preserves_form(ctx, m, form):
    mt = ctx.transpose(m)
    if form.kind == "symplectic":
        w = ctx.matmul(ctx.matmul(mt, form.matrix), m)
        return np.array_equal(w, form.matrix)
    u = form.matrix
    w = ctx.matmul(ctx.matmul(mt, u), m)
    if not np.array_equal(np.diagonal(w), np.diagonal(u)):
        return False
    return np.array_equal(ctx.add(w, ctx.transpose(w)),
                          ctx.add(u, ctx.transpose(u)))


# --- root elements --------------------------------------------------------


def root_element(ctx, lie_type, n, root, t):
    """u_r(t) for a root of C_n (2n dims), B_n (2n+1) or D_n (2n).

    Roots are pairs (i, j) of signed indices: (i, j) with j != 0 is
    sign(i) e_|i| + sign(j) e_|j|; (i, 0) is the short root sign(i) e_|i|
    for B, the long root 2 sign(i) e_|i| for C.
    """
    fld = ctx.field
    i, j = root
    if lie_type == "C":
        d, ix = 2 * n, lambda k: sp_idx(n, k)
    elif lie_type == "B":
        d, ix = 2 * n + 1, lambda k: b_idx(n, k)
    elif lie_type == "D":
        d, ix = 2 * n, lambda k: sp_idx(n, k)
    else:
        raise InvalidArgument("bad lie_type %r" % (lie_type,))
    m = ctx.identity(d)
    neg_t = fld.neg(t)
    if j == 0:
        if lie_type == "C":
            m[ix(i), ix(-i)] = fld.add(int(m[ix(i), ix(-i)]), t)
            return m
        if lie_type != "B":
            raise InvalidArgument("short roots only exist in type B")
        if ctx.p == 2:
            t2 = fld.mul(t, t)
            m[ix(i), ix(-i)] = fld.add(int(m[ix(i), ix(-i)]), t2)
            return m
        t2 = fld.neg(fld.mul(t, t))
        two_t = fld.add(t, t)
        if i > 0:
            m[ix(i), 0] = two_t
            m[0, ix(-i)] = neg_t
            m[ix(i), ix(-i)] = t2
        else:
            m[ix(i), 0] = fld.neg(two_t)
            m[0, ix(-i)] = t
            m[ix(i), ix(-i)] = t2
        return m
    if i < 0 and j > 0:
        i, j = j, i
    if i > 0 and j < 0:          # e_i - e_j with j := -j
        a, b = i, -j
        m[ix(a), ix(b)] = t
        m[ix(-b), ix(-a)] = neg_t
    elif i > 0 and j > 0:        # e_i + e_j
        m[ix(i), ix(-j)] = t
        m[ix(j), ix(-i)] = neg_t
    else:                        # -e_i - e_j
        a, b = -i, -j
        if lie_type == "C":
            m[ix(-a), ix(b)] = t
            m[ix(-b), ix(a)] = neg_t
        else:
            m[ix(-b), ix(a)] = t
            m[ix(-a), ix(b)] = neg_t
    return m


def simple_roots(lie_type, n):
    roots = [(i, -(i + 1)) for i in range(1, n)]
    if lie_type in ("B", "C"):
        roots.append((n, 0))
    else:
        roots.append((n - 1, n))
    return roots


def negate_root(root):
    i, j = root
    return (-i, 0) if j == 0 else (-i, -j)


def regular_unipotent(ctx, lie_type, n):
    """Product of u_alpha(1) over the simple roots."""
    d = 2 * n + 1 if lie_type == "B" else 2 * n
    m = ctx.identity(d)
    for r in simple_roots(lie_type, n):
        m = ctx.matmul(m, root_element(ctx, lie_type, n, r, 1))
    return m


def reflection(ctx, u, v):
    """Reflection (orthogonal transvection in char 2) along anisotropic v."""
    fld = ctx.field
    qv = quad_value(ctx, u, v)
    if qv == 0:
        raise InvalidArgument("reflection vector is isotropic")
    d = len(v)
    m = ctx.identity(d)
    qinv = fld.inv(qv)
    for col in range(d):
        e = np.zeros(d, dtype=np.int64)
        e[col] = 1
        c = fld.mul(bilinear_value(ctx, u, e, v), qinv)
        for row in range(d):
            if v[row]:
                m[row, col] = fld.sub(int(m[row, col]),
                                      fld.mul(c, int(v[row])))
    return m


def reflection_generators(ctx, form):
    """Reflections along all anisotropic vectors of coordinate weight <= 2."""
    d = form.matrix.shape[0]
    gens = []
    vecs = []
    for i in range(d):
        v = np.zeros(d, dtype=np.int64)
        v[i] = 1
        vecs.append(v)
    for i in range(d):
        for j in range(i + 1, d):
            for c in range(1, ctx.q):
                v = np.zeros(d, dtype=np.int64)
                v[i], v[j] = 1, c
                vecs.append(v)
    for v in vecs:
        if quad_value(ctx, form.matrix, v) != 0:
            gens.append(reflection(ctx, form.matrix, v))
    return gens


# --- membership invariants ------------------------------------------------


def dickson_invariant(ctx, m):
    """Rank of M + I mod 2 (characteristic 2 only)."""
    return ctx.rank(ctx.add(m, ctx.identity(m.shape[0]))) % 2


def spinor_norm(ctx, m, form):
    """Spinor-norm square class of m in O(Q), odd characteristic: 0 or 1.

    Constructive reflection factorization: peel one anisotropic basis
    direction at a time, accumulating the Q-values of the used reflection
    vectors; the class is whether the product is a square.
    """
    fld = ctx.field
    u = form.matrix
    d = m.shape[0]
    acc = 1
    work = m.copy()
    while d > 0:
        e = _first_anisotropic(ctx, u, d)
        w = ctx.mat_vec(work, e)
        if not np.array_equal(w, e):
            diff = np.array([fld.sub(int(a), int(b)) for a, b in zip(w, e)],
                            dtype=np.int64)
            if quad_value(ctx, u, diff) != 0:
                acc = fld.mul(acc, quad_value(ctx, u, diff))
                work = ctx.matmul(reflection(ctx, u, diff), work)
            else:
                s = np.array([fld.add(int(a), int(b)) for a, b in zip(w, e)],
                             dtype=np.int64)
                acc = fld.mul(acc, fld.mul(quad_value(ctx, u, s),
                                           quad_value(ctx, u, e)))
                work = ctx.matmul(reflection(ctx, u, e),
                                  ctx.matmul(reflection(ctx, u, s), work))
        # restrict to the orthogonal complement of e
        basis = _complement_basis(ctx, u, e)
        if basis is None:
            break
        c = np.stack(basis, axis=1)
        ext = np.concatenate([c, e.reshape(-1, 1)], axis=1)
        wc = ctx.matmul(work, c)
        coords = []
        for col in range(wc.shape[1]):
            coords.append(ctx.solve(ext, wc[:, col]))
        coords = np.stack(coords, axis=1)
        assert np.all(coords[-1] == 0), "restriction left the subspace"
        work = coords[:-1]
        u = ctx.matmul(ctx.matmul(ctx.transpose(c), u), c)
        d -= 1
    return 0 if fld.is_square(acc) else 1


def _first_anisotropic(ctx, u, d):
    for i in range(d):
        v = np.zeros(d, dtype=np.int64)
        v[i] = 1
        if quad_value(ctx, u, v) != 0:
            return v
    for i in range(d):
        for j in range(i + 1, d):
            for c in range(1, ctx.q):
                v = np.zeros(d, dtype=np.int64)
                v[i], v[j] = 1, c
                if quad_value(ctx, u, v) != 0:
                    return v
    raise AssertionError("totally isotropic form")


def _complement_basis(ctx, u, e):
    """Basis of the polar-orthogonal complement of anisotropic e."""
    d = len(e)
    if d == 1:
        return None
    fld = ctx.field
    b = ctx.add(u, ctx.transpose(u))
    row = ctx.mat_vec(ctx.transpose(b), e)  # x -> B(e, x) coefficients
    piv = next(i for i in range(d) if row[i])
    basis = []
    inv = fld.inv(int(row[piv]))
    for i in range(d):
        if i == piv:
            continue
        v = np.zeros(d, dtype=np.int64)
        v[i] = 1
        v[piv] = fld.neg(fld.mul(inv, int(row[i])))
        basis.append(v)
    return basis


def membership_invariant(ctx, m, form):
    """Spinor class (odd q) or Dickson invariant (even q); 0 means Omega."""
    if form.kind != "quadratic":
        raise InvalidArgument("membership invariant needs a quadratic form")
    if ctx.p == 2:
        return dickson_invariant(ctx, m)
    return spinor_norm(ctx, m, form)


def in_omega(ctx, m, form):
    if ctx.p != 2 and ctx.det(m) != 1:
        return False
    return membership_invariant(ctx, m, form) == 0


# --- orders ---------------------------------------------------------------


def element_order(ctx, m, bound=None):
    """Exact order via prime-by-prime reduction of an exponent bound."""
    d = m.shape[0]
    ident = ctx.identity(d)
    if bound is None:
        bound = 1  # exponent of GL_d(q): callers normally pass |G| factors
        for i in range(1, d + 1):
            bound *= ctx.q**i - 1
        bound *= ctx.p**d
    fac = bound if isinstance(bound, dict) else factorint(bound)
    e = 1
    for r, k in fac.items():
        e *= r**k
    if not np.array_equal(ctx.matpow(m, e), ident):
        raise NotPeriodic("matrix order does not divide the exponent bound")
    o = e
    for r in fac:
        while o % r == 0 and np.array_equal(ctx.matpow(m, o // r), ident):
            o //= r
    return o


def _is_scalar(ctx, m, codes):
    d = m.shape[0]
    return any(np.array_equal(m, ctx.scalar_mul(c, ctx.identity(d)))
               for c in codes)


def center_scalars(ctx, dim, order):
    """Codes c with c*I central of the given center order (1 or 2)."""
    if order == 1:
        return [1]
    return [1, ctx.field.neg(1)]


def projective_order(ctx, m, center_codes, bound=None):
    """Order of the image modulo the scalar center {c*I}."""
    o = element_order(ctx, m, bound)
    for r in factorint(o):
        while o % r == 0 and _is_scalar(ctx, ctx.matpow(m, o // r),
                                        center_codes):
            o //= r
    return o


def batch_orders(ctx, stack, cap, center_codes=None):
    """Orders of a stack of matrices by iterated multiplication.

    center_codes None computes matrix orders; otherwise orders of the
    images modulo the scalar subgroup with those codes.  NotPeriodic if
    some order exceeds cap.
    """
    n, d, _ = stack.shape
    orders = np.zeros(n, dtype=np.int64)
    power = stack.copy()
    targets = [ctx.scalar_mul(c, ctx.identity(d))
               for c in (center_codes or [1])]
    for t in range(1, cap + 1):
        undecided = orders == 0
        if not undecided.any():
            break
        hit = np.zeros(n, dtype=bool)
        for tgt in targets:
            hit |= np.all(power == tgt, axis=(1, 2))
        orders[undecided & hit] = t
        if t < cap:
            power = ctx.batch_square_like(power, stack)
    if (orders == 0).any():
        raise NotPeriodic("some orders exceed the cap %d" % cap)
    return orders


# --- enumeration ----------------------------------------------------------


def enumerate_group(ctx, gens, cap=DEFAULT_CAP):
    """Breadth-first closure of the generators; CapExceeded past cap.

    Returns the (N, d, d) stack in deterministic BFS order.
    """
    if not gens:
        raise InvalidArgument("need at least one generator")
    d = gens[0].shape[0]
    ident = ctx.identity(d)
    seen = {ctx.key(ident): 0}
    elements = [ident]
    frontier = np.stack([ident])
    while len(frontier):
        new = []
        for g in gens:
            prod = ctx.batch_matmul(frontier, g)
            for m in prod:
                k = ctx.key(m)
                if k not in seen:
                    seen[k] = len(elements)
                    elements.append(m)
                    new.append(m)
                    if len(elements) > cap:
                        raise CapExceeded("closure exceeds cap %d" % cap)
        frontier = np.stack(new) if new else np.empty((0, d, d))
    return np.stack(elements)


def derived_subgroup(ctx, gens, cap=DEFAULT_CAP):
    """Derived subgroup as the normal closure of generator commutators."""
    invs = [ctx.inv(g) for g in gens]
    comms = []
    for g, gi in zip(gens, invs):
        for h, hi in zip(gens, invs):
            comms.append(ctx.matmul(ctx.matmul(gi, hi), ctx.matmul(g, h)))
    seeds = list(comms)
    while True:
        elements = enumerate_group(ctx, seeds, cap)
        keys = {ctx.key(m) for m in elements}
        grew = False
        for g, gi in zip(gens, invs):
            for s in list(seeds):
                c = ctx.matmul(ctx.matmul(gi, s), g)
                if ctx.key(c) not in keys:
                    seeds.append(c)
                    grew = True
        if not grew:
            return elements


# --- oracle construction per group ----------------------------------------


@dataclass
class OracleGroup:
    spec: GroupSpec
    ctx: MatCtx
    dim: int
    gens: list
    form: FormData
    membership: str      # 'all', 'so' or 'omega'
    projective: bool
    center_codes: list


def _field_basis_codes(p, f):
    return [p**i for i in range(f)]


def build_oracle(spec):
    """Concrete generators and form for the group named by spec."""
    ns = normalize(spec)
    fam = ns.spec.family
    n, p, f, q = ns.n, ns.p, ns.spec.f, ns.q
    fld = field_make(p, f)
    ctx = MatCtx(fld)
    basis = _field_basis_codes(p, f)

    def chevalley(lie, rank):
        gens = []
        for r in simple_roots(lie, rank):
            for rr in (r, negate_root(r)):
                for b in basis:
                    gens.append(root_element(ctx, lie, rank, rr, b))
        return gens

    if ns.engine in ("sp", "psp", "omega-odd-even-q"):
        # q even odd-dimensional groups are realized symplectically
        form = symplectic_form(ctx, n)
        gens = chevalley("C", n)
        projective = ns.engine == "psp"
        codes = [1, fld.neg(1)] if projective else [1]
        return OracleGroup(ns.spec, ctx, 2 * n, gens, form, "all",
                           projective, codes)
    if fam == "so-odd":
        form = odd_quadratic_form(ctx, n)
        gens = chevalley("B", n)
        gens.append(_odd_torus_gen(ctx, n))
        return OracleGroup(ns.spec, ctx, 2 * n + 1, gens, form, "all",
                           False, [1])
    if fam == "omega-odd":
        form = odd_quadratic_form(ctx, n)
        gens = chevalley("B", n)
        return OracleGroup(ns.spec, ctx, 2 * n + 1, gens, form, "all",
                           False, [1])
    # even-dimensional orthogonal
    eps = ns.eps
    form = even_quadratic_form(ctx, n, eps)
    projective = fam == "pomega"
    if eps == "+":
        gens = chevalley("D", n)
        membership = "all"
        if fam == "so-even":
            gens.append(_even_torus_gen(ctx, n))
    else:
        gens = reflection_generators(ctx, form)
        membership = "so" if fam == "so-even" else "omega"
    # projective sampling works in Omega and quotients by its scalar center
    from math import gcd
    eps1 = 1 if eps == "+" else -1
    omega_center = gcd(4, q**n - eps1) // 2
    codes = [1, fld.neg(1)] if (projective and omega_center == 2) else [1]
    return OracleGroup(ns.spec, ctx, 2 * n, gens, form, membership,
                       projective, codes)


def _odd_torus_gen(ctx, n):
    g = multiplicative_generator(ctx.field)
    m = ctx.identity(2 * n + 1)
    m[b_idx(n, 1), b_idx(n, 1)] = g
    m[b_idx(n, -1), b_idx(n, -1)] = ctx.field.inv(g)
    return m


def _even_torus_gen(ctx, n):
    g = multiplicative_generator(ctx.field)
    m = ctx.identity(2 * n)
    m[sp_idx(n, 1), sp_idx(n, 1)] = g
    m[sp_idx(n, -1), sp_idx(n, -1)] = ctx.field.inv(g)
    return m


def _passes(oracle, m):
    if oracle.membership == "all":
        return True
    if oracle.ctx.p != 2 and oracle.ctx.det(m) != 1:
        return False
    if oracle.membership == "so":
        return True
    return membership_invariant(oracle.ctx, m, oracle.form) == 0


# --- sampling -------------------------------------------------------------

N_STREAMS = 4


def sample_elements(oracle, count, seed):
    """Deterministic product-replacement sample of `count` group elements.

    The sample is split over fixed independent streams, so the result does
    not depend on CLASSPEC_THREADS; threads only parallelize the streams.
    """
    per = [count // N_STREAMS] * N_STREAMS
    for i in range(count % N_STREAMS):
        per[i] += 1
    threads = int(os.environ.get("CLASSPEC_THREADS", "1") or "1")
    args = [(oracle, per[i], seed * N_STREAMS + i) for i in range(N_STREAMS)]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as ex:
            chunks = list(ex.map(lambda a: _sample_stream(*a), args))
    else:
        chunks = [_sample_stream(*a) for a in args]
    return [m for chunk in chunks for m in chunk]


def _sample_stream(oracle, count, seed):
    ctx = oracle.ctx
    rng = random.Random(seed)
    # every generator must seed a slot or the walk stays in a subgroup
    nslots = max(10, len(oracle.gens))
    slots = []
    for i in range(nslots):
        g = oracle.gens[i % len(oracle.gens)]
        slots.append((g, ctx.inv(g)))
    burn = max(200, 5 * nslots)
    out = []
    steps = 0
    while len(out) < count:
        i = rng.randrange(nslots)
        j = rng.randrange(nslots - 1)
        if j >= i:
            j += 1
        gi, gii = slots[i]
        gj, gji = slots[j]
        if rng.random() < 0.5:
            slots[i] = (ctx.matmul(gi, gj), ctx.matmul(gji, gii))
        else:
            slots[i] = (ctx.matmul(gi, gji), ctx.matmul(gj, gii))
        steps += 1
        if steps <= burn:
            continue
        cand = slots[i][0]
        if _passes(oracle, cand):
            out.append(cand)
    return out


def sample_orders(spec, count, seed, order_cap=10000):
    """Orders (projective where the family is projective) of a PR sample."""
    oracle = build_oracle(spec)
    sample = sample_elements(oracle, count, seed)
    stack = np.stack(sample)
    codes = oracle.center_codes if oracle.projective else None
    return batch_orders(oracle.ctx, stack, order_cap, codes).tolist()


# --- witnesses ------------------------------------------------------------


def construct_witness(spec, target):
    """A form-preserving matrix of order exactly `target`.

    Returns (matrix, form, item) where item is the provenance formula of
    the generator whose recipe produced the matrix.  Searches the generator
    recipes of the group's spectrum: a generator value divisible by target
    is constructed at full order and then powered down.  InfeasibleRecipe
    if no recipe-backed generator fits.
    """
    ns = normalize(spec)
    if target == 1:
        oracle = build_oracle(spec)
        return oracle.ctx.identity(oracle.dim), oracle.form, "identity"
    gens = omega_generators(ns)
    last_err = None
    for g in sorted(gens, key=lambda g: (g.value, g.item)):
        if g.recipe is None or g.value % target != 0:
            continue
        try:
            m, form, ctx = _build_from_recipe(ns, g.recipe, g.value)
        except (OrderMismatch, InfeasibleRecipe) as e:
            last_err = e
            continue
        w = ctx.matpow(m, g.value // target)
        return w, form, g.item
    if last_err is not None:
        raise last_err
    raise InfeasibleRecipe("no constructible generator has a multiple of %d"
                           % target)


def _build_from_recipe(ns, recipe, target):
    from itertools import product as iproduct

    p, f, q, n = ns.p, ns.spec.f, ns.q, ns.n
    fld = field_make(p, f)
    ctx = MatCtx(fld)
    parts = [("-", m) for m in recipe.minus] + [("+", m) for m in recipe.plus]
    part_orders = [q**m - 1 if s == "-" else q**m + 1 for s, m in parts]
    uni_order = 1
    if recipe.n0 > 0:
        uni_order = p**recipe.k
    choice_sets = []
    for o in part_orders:
        if recipe.projective:
            # modulo the center a full torus already halves, so try both
            choice_sets.append((1, 2))
        else:
            choice_sets.append((2,) if recipe.halving == 2 else (1, 2))
    for exps in iproduct(*choice_sets):
        eff = [o // (2 if (c == 2 and o % 2 == 0) else 1)
               for o, c in zip(part_orders, exps)]
        predicted = lcm_all([uni_order] + eff + ([2] if recipe.central else []))
        if recipe.projective:
            if target not in (predicted, predicted // 2):
                continue
        elif predicted != target:
            continue
        m, form = _assemble(ctx, ns, recipe, parts, exps)
        if not preserves_form(ctx, m, form):
            raise AssertionError("witness block does not preserve its form")
        bound = factorint(2 * predicted)
        if recipe.projective:
            codes = [1, fld.neg(1)]
            got = projective_order(ctx, m, codes, bound)
        else:
            got = element_order(ctx, m, bound)
        if got != target:
            continue
        if recipe.omega and not in_omega(ctx, m, form):
            continue
        return m, form, ctx
    raise OrderMismatch("no block exponent assignment reaches order %d"
                        % target)


def _assemble(ctx, ns, recipe, parts, exps):
    q = ns.q
    blocks = []
    if recipe.ambient == "C":
        if recipe.n0 > 0:
            u = regular_unipotent(ctx, "C", recipe.n0)
            blocks.append((u, symplectic_form(ctx, recipe.n0).matrix))
        for (sign, m), c in zip(parts, exps):
            blocks.append(_torus_block_sp(ctx, q, sign, m, c))
        mat, gram = _block_diag(ctx, blocks)
        if recipe.central:
            mat = ctx.scalar_mul(ctx.field.neg(1), mat)
        return mat, FormData("symplectic", gram)
    # ambient B: odd-dimensional orthogonal
    if recipe.n0 > 0:
        u = regular_unipotent(ctx, "B", recipe.n0)
        blocks.append((u, odd_quadratic_form(ctx, recipe.n0).matrix))
    else:
        one = ctx.identity(1)
        uq = ctx.identity(1)
        blocks.append((one, uq))
    for (sign, m), c in zip(parts, exps):
        blocks.append(_torus_block_orth(ctx, q, sign, m, c))
    mat, uform = _block_diag(ctx, blocks)
    return mat, FormData("quadratic", uform)


def _block_diag(ctx, blocks):
    dims = [b[0].shape[0] for b in blocks]
    d = sum(dims)
    mat = ctx.identity(d)
    gram = ctx.zeros(d)
    off = 0
    for (b, g), bd in zip(blocks, dims):
        mat[off:off + bd, off:off + bd] = b
        gram[off:off + bd, off:off + bd] = g
        off += bd
    return mat, gram


def _mult_matrix(ctx, ext, lam, deg):
    """Matrix of multiplication by lam on the power basis of ext."""
    fld = ctx.field
    if deg == 1:
        return np.array([[lam]], dtype=np.int64)
    m = ctx.zeros(deg)
    for j in range(deg):
        col = ext.digits(ext.mul(lam, fld.q**j if j else 1))
        for i in range(deg):
            m[i, j] = col[i]
    return m


def _torus_block_sp(ctx, q, sign, m, c):
    fld = ctx.field
    if sign == "-":
        if q**m - 1 == 1:
            y = ctx.identity(m)
        else:
            _, ext, lam = element_of_order(fld, q**m - 1)
            lam = ext.pow_(lam, c)
            y = _mult_matrix(ctx, ext, lam, m)
        block = ctx.zeros(2 * m)
        block[:m, :m] = y
        block[m:, m:] = ctx.transpose(ctx.inv(y))
        gram = ctx.zeros(2 * m)
        for i in range(m):
            gram[i, m + i] = 1
            gram[m + i, i] = fld.neg(1)
        return block, gram
    e, ext, lam = element_of_order(fld, q**m + 1)
    assert e == 2 * m
    lam = ext.pow_(lam, c)
    block = _mult_matrix(ctx, ext, lam, 2 * m)
    ygen = fld.q  # code of the power-basis generator y
    dd = ext.sub(ygen, ext.pow_(ygen, q**m))
    gram = ctx.zeros(2 * m)
    for i in range(2 * m):
        for j in range(2 * m):
            z = ext.mul(ext.mul(dd, ext.pow_(ygen, i)),
                        ext.pow_(ext.pow_(ygen, j), q**m))
            gram[i, j] = _ext_trace(ext, fld, z)
    assert ctx.det(gram) != 0, "degenerate alternating trace form"
    return block, gram


def _torus_block_orth(ctx, q, sign, m, c):
    fld = ctx.field
    if sign == "-":
        _, ext, lam = element_of_order(fld, q**m - 1)
        lam = ext.pow_(lam, c)
        y = _mult_matrix(ctx, ext, lam, m)
        block = ctx.zeros(2 * m)
        block[:m, :m] = y
        block[m:, m:] = ctx.transpose(ctx.inv(y))
        u = ctx.zeros(2 * m)
        for i in range(m):
            u[i, m + i] = 1
        return block, u
    e, ext, lam = element_of_order(fld, q**m + 1)
    assert e == 2 * m
    lam = ext.pow_(lam, c)
    block = _mult_matrix(ctx, ext, lam, 2 * m)
    ygen = fld.q
    inv2 = fld.inv(2 % fld.p if fld.f == 1 else fld.add(1, 1))
    u = ctx.zeros(2 * m)
    for i in range(2 * m):
        yi = ext.pow_(ygen, i)
        qv = fld.mul(inv2, _ext_trace(ext, fld, ext.pow_(yi, q**m + 1)))
        u[i, i] = qv
        for j in range(i + 1, 2 * m):
            z = ext.mul(yi, ext.pow_(ext.pow_(ygen, j), q**m))
            u[i, j] = _ext_trace(ext, fld, z)
    assert ctx.det(ctx.add(u, ctx.transpose(u))) != 0, "degenerate trace form"
    return block, u


def _ext_trace(ext, base, z):
    """Trace from ext down to its base field, as a base code."""
    acc = 0
    c = z
    for _ in range(ext.deg):
        acc = ext.add(acc, c)
        c = ext.pow_(c, base.q)
    assert acc < base.q, "trace left the base field"
    return acc
