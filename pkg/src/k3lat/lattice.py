"""Even lattices: discriminant forms, isometries, exact vector enumeration.

All pairings are row-based (pair(G,u,v) = u G v^T) and isometries act on
the right.  Enumerations use an exact integer-scaled Fincke-Pohst search
on an LLL-reduced basis; no floating point enters any computation.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .intlinalg import (
    clear_denominators,
    content,
    det_int,
    frac_inverse,
    frac_matmul,
    frac_pair,
    frac_vec_matmul,
    gcd2,
    identity_matrix,
    kernel_basis,
    lcm2,
    lll_gram,
    matmul,
    pair,
    primitive_part,
    signature,
    smith_normal_form,
    solve_integer,
    transpose,
    vec_matmul,
)


class Lattice:
    """Even nondegenerate lattice given by its Gram matrix."""

    def __init__(self, gram, check=True):
        self.gram = [list(map(int, row)) for row in gram]
        self.rank = len(self.gram)
        if check:
            for i in range(self.rank):
                if self.gram[i][i] % 2 != 0:
                    raise ValueError("lattice is not even")
                for j in range(self.rank):
                    if self.gram[i][j] != self.gram[j][i]:
                        raise ValueError("gram matrix is not symmetric")
        self._signature = None
        self._det = None
        self._gram_inv = None

    # -- basic invariants ------------------------------------------------

    @property
    def det(self):
        if self._det is None:
            self._det = det_int(self.gram)
        return self._det

    @property
    def sig(self):
        if self._signature is None:
            p, m, z = signature(self.gram)
            if z:
                raise ValueError("degenerate lattice")
            self._signature = (p, m)
        return self._signature

    def is_negative_definite(self):
        return self.sig == (0, self.rank)

    def is_hyperbolic(self):
        return self.sig == (1, self.rank - 1)

    def gram_inverse(self):
        if self._gram_inv is None:
            self._gram_inv = frac_inverse(self.gram)
        return self._gram_inv

    def pairing(self, u, v):
        return frac_pair(self.gram, u, v)

    def norm(self, v):
        return self.pairing(v, v)

    def dual_coords(self, functional):
        """Dual vector (rational row) with the given integer pairing row."""
        return frac_vec_matmul(functional, self.gram_inverse())

    def functional(self, v):
        """Pairing row of a (rational) vector: x -> <v, x>."""
        return frac_vec_matmul(v, self.gram)

    def discriminant_group_orders(self):
        _, d, _ = smith_normal_form(self.gram)
        return [d[i][i] for i in range(self.rank) if d[i][i] > 1]

    # -- isometries -------------------------------------------------------

    def is_isometry(self, m):
        return matmul(matmul(m, self.gram), transpose(m)) == self.gram


def reflection(lat: Lattice, r):
    """Reflection in a (-2)-vector: x -> x + <x,r> r, as a right-action matrix."""
    if pair(lat.gram, r, r) != -2:
        raise ValueError("reflection requires a root")
    grt = vec_matmul(r, lat.gram)  # <e_i, r> entries
    n = lat.rank
    m = [[(1 if i == j else 0) + grt[i] * r[j] for j in range(n)] for i in range(n)]
    return m


def orthogonal_complement(lat: Lattice, sub_rows):
    """Saturated orthogonal complement of the span of sub_rows.

    Returns (complement_lattice, basis_rows) with basis_rows in the
    coordinates of `lat`.  The subspace must be nondegenerate.
    """
    k = len(sub_rows)
    gs = matmul(matmul(sub_rows, lat.gram), transpose(sub_rows))
    if det_int(gs) == 0:
        raise ValueError("subspace is degenerate")
    funcs = matmul(lat.gram, transpose(sub_rows))  # n x k
    basis = kernel_basis(funcs)
    comp_gram = matmul(matmul(basis, lat.gram), transpose(basis))
    return Lattice(comp_gram), basis


def sublattice_gram(lat: Lattice, rows):
    return matmul(matmul(rows, lat.gram), transpose(rows))


# ---------------------------------------------------------------------------
# Discriminant forms.


class DiscriminantForm:
    """Finite quadratic form on A(L) = L^dual / L.

    Elements are integer tuples modulo `orders`; `lifts` are rational rows
    in the coordinates of L representing each generator.
    """

    def __init__(self, lat: Lattice):
        if lat.det == 0:
            raise ValueError("degenerate lattice has no discriminant form")
        self.lattice = lat
        u, d, v = smith_normal_form(lat.gram)
        n = lat.rank
        self._v = v
        self._all_orders = [d[i][i] for i in range(n)]
        self.indices = [i for i in range(n) if d[i][i] > 1]
        self.orders = [d[i][i] for i in self.indices]
        self.lifts = [[Fraction(u[i][j], d[i][i]) for j in range(n)]
                      for i in self.indices]
        k = len(self.orders)
        self.q_gens = [self._qval(self.lifts[a]) for a in range(k)]
        self.b_gens = [[self._bval(self.lifts[a], self.lifts[b])
                        for b in range(k)] for a in range(k)]

    def _qval(self, x):
        return frac_pair(self.lattice.gram, x, x) % 2

    def _bval(self, x, y):
        return frac_pair(self.lattice.gram, x, y) % 1

    @property
    def group_order(self):
        o = 1
        for d in self.orders:
            o *= d
        return o

    def zero(self):
        return tuple(0 for _ in self.orders)

    def normalize(self, elem):
        return tuple(a % d for a, d in zip(elem, self.orders))

    def elements(self):
        out = [()]
        for d in self.orders:
            out = [e + (a,) for e in out for a in range(d)]
        return [tuple(e) for e in out]

    def q(self, elem):
        """Quadratic form value in Q/2Z as a Fraction in [0,2)."""
        total = Fraction(0)
        k = len(self.orders)
        for a in range(k):
            total += elem[a] * elem[a] * self.q_gens[a]
        for a in range(k):
            for b in range(a + 1, k):
                total += 2 * elem[a] * elem[b] * self.b_gens[a][b]
        return total % 2

    def b(self, e1, e2):
        """Bilinear form value in Q/Z as a Fraction in [0,1)."""
        total = Fraction(0)
        k = len(self.orders)
        for a in range(k):
            for b in range(k):
                total += e1[a] * e2[b] * self.b_gens[a][b]
        return total % 1

    def element_order(self, elem):
        o = 1
        for a, d in zip(elem, self.orders):
            a %= d
            if a:
                o = lcm2(o, d // gcd2(a, d))
        return o

    def class_of_dual(self, dual_row):
        """Class of a dual vector (rational row in L-coordinates)."""
        f = frac_vec_matmul(dual_row, self.lattice.gram)
        fi = []
        for x in f:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError("row is not in the dual lattice")
            fi.append(int(x))
        coords = vec_matmul(fi, self._v)
        return tuple(coords[i] % self._all_orders[i] for i in self.indices)

    def lift(self, elem):
        """A rational row in L-coordinates representing the class."""
        n = self.lattice.rank
        out = [Fraction(0)] * n
        for a, lift in zip(elem, self.lifts):
            for j in range(n):
                out[j] += a * lift[j]
        return out


class FormAutomorphism:
    """Automorphism of a discriminant form, as a matrix mod the orders.

    Acts on element rows from the right: image of e is e @ matrix mod d.
    """

    __slots__ = ("form", "matrix")

    def __init__(self, form, matrix):
        self.form = form
        self.matrix = tuple(tuple(int(x) % d for x, d in zip(row, form.orders))
                            for row in matrix)

    def apply(self, elem):
        k = len(self.form.orders)
        out = [0] * k
        for i in range(k):
            if elem[i]:
                for j in range(k):
                    out[j] += elem[i] * self.matrix[i][j]
        return self.form.normalize(tuple(out))

    def compose(self, other):
        k = len(self.form.orders)
        m = [[sum(self.matrix[i][t] * other.matrix[t][j] for t in range(k))
              for j in range(k)] for i in range(k)]
        return FormAutomorphism(self.form, m)

    def __eq__(self, other):
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def is_identity(self):
        return all(self.matrix[i][j] % d == (1 if i == j else 0) % d
                   for i, row in enumerate(self.matrix)
                   for j, (x, d) in enumerate(zip(row, self.form.orders)))


def orthogonal_group_of_form(form: DiscriminantForm, bound=10**4):
    """All automorphisms of (A, q) by brute force over generator images."""
    if form.group_order > bound:
        raise ValueError(f"discriminant group of order {form.group_order} "
                         f"exceeds bound {bound}")
    k = len(form.orders)
    if k == 0:
        return [FormAutomorphism(form, [])]
    elems = form.elements()
    gens = [tuple(1 if i == a else 0 for i in range(k)) for a in range(k)]
    candidates = []
    for a in range(k):
        ok = [e for e in elems
              if form.element_order(e) == form.orders[a]
              and form.q(e) == form.q(gens[a])]
        candidates.append(ok)

    out = []

    def rec(rows):
        i = len(rows)
        if i == k:
            m = FormAutomorphism(form, rows)
            # bijectivity: applying to all elements must hit all of them
            seen = set()
            for e in elems:
                seen.add(m.apply(e))
            if len(seen) == len(elems):
                out.append(m)
            return
        for cand in candidates[i]:
            good = all(form.b(cand, rows[j]) == form.b(gens[i], gens[j])
                       for j in range(i))
            if good:
                rec(rows + [cand])

    rec([])
    return out


def induced_disc_action(form: DiscriminantForm, g):
    """Action of an isometry g of L on A(L), as a FormAutomorphism."""
    rows = []
    for lift in form.lifts:
        img = frac_vec_matmul(lift, g)
        rows.append(form.class_of_dual(img))
    return FormAutomorphism(form, rows)


# ---------------------------------------------------------------------------
# Exact closest/short vector enumeration (Fincke-Pohst).


class NegDefEnumerator:
    """Enumerator for a negative definite lattice.

    Precomputes an LLL-reduced basis and an exact integer-scaled LDL
    decomposition; `close_vectors` then enumerates all lattice rows x with
    |<x-c, x-c>| <= bound for rational centers c.
    """

    def __init__(self, gram):
        self.gram = [list(row) for row in gram]
        self.n = len(gram)
        pos = [[-x for x in row] for row in self.gram]
        if self.n == 0:
            self._trivial = True
            return
        self._trivial = False
        red, t = lll_gram(pos)
        self.red = red
        self.t = t  # reduced basis rows in original coordinates
        self.t_inv = frac_inverse(t)
        # exact LDL of the reduced positive definite Gram
        n = self.n
        u = [[Fraction(0)] * n for _ in range(n)]
        d = [Fraction(0)] * n
        for i in range(n):
            d[i] = Fraction(red[i][i]) - sum(d[k] * u[k][i] * u[k][i] for k in range(i))
            u[i][i] = Fraction(1)
            for j in range(i + 1, n):
                u[i][j] = (Fraction(red[i][j])
                           - sum(d[k] * u[k][i] * u[k][j] for k in range(i))) / d[i]
        assert all(x > 0 for x in d), "lattice is not negative definite"
        self.ldl_d = d
        self.ldl_u = u

    def close_vectors(self, center, bound, exact_norm=None):
        """All integer rows x (original coords) with 0 <= q(x - c) <= bound.

        q is the positive definite negation of the Gram.  If exact_norm is
        given, only solutions with q(x - c) == exact_norm are returned.
        Output is sorted lexicographically.
        """
        bound = Fraction(bound)
        if bound < 0:
            return []
        if self._trivial:
            sols = [[]] if (exact_norm in (None, 0) and bound >= 0) else []
            return sols
        n = self.n
        # center in reduced coordinates
        c = frac_vec_matmul(center, self.t_inv)
        u, d = self.ldl_u, self.ldl_d

        # common scale M clears all denominators of u and c
        m = 1
        for row in u:
            for x in row:
                m = lcm2(m, x.denominator)
        for x in c:
            m = lcm2(m, Fraction(x).denominator)
        m2 = m * m
        # weights w_i = L * d_i with L clearing denominators of d and bound
        big_l = bound.denominator
        for x in d:
            big_l = lcm2(big_l, x.denominator)
        if exact_norm is not None:
            big_l = lcm2(big_l, Fraction(exact_norm).denominator)
        w = [int(x * big_l) * 1 for x in d]           # L*d_i, integers
        budget = int(bound * big_l) * m2 * m2         # scale by M^4 via T_i
        target = None
        if exact_norm is not None:
            exact_norm = Fraction(exact_norm)
            if exact_norm < 0 or exact_norm > bound:
                return []
            target = int(exact_norm * big_l) * m2 * m2

        um = [[int(x * m) for x in row] for row in u]  # M * u
        cm = [int(Fraction(x) * m) for x in c]         # M * c

        sols = []
        x = [0] * n

        def rec(i, rem, offs):
            # offs[j] = M^2 * sum_{t>j} u[j][t]*(x_t - c_t) for all j <= i
            wi = w[i]
            ci = m * cm[i] - offs[i]   # M^2 * (c_i - offset_i)
            # T = M^2 x_i - ci ;  wi * T^2 <= rem * m2^0... (all scaled by M^4)
            lim = rem // wi
            r = isqrt(lim)
            lo = -(-(ci - r) // m2)    # ceil((ci - r)/M^2)
            hi = (ci + r) // m2        # floor((ci + r)/M^2)
            for xi in range(lo, hi + 1):
                t = m2 * xi - ci
                used = wi * t * t
                if used > rem:
                    continue
                x[i] = xi
                if i == 0:
                    total = budget - (rem - used)
                    if target is None or total == target:
                        sols.append(list(x))
                else:
                    noffs = list(offs)
                    delta = xi * m - cm[i]   # M*(x_i - c_i)
                    for j in range(i):
                        noffs[j] += um[j][i] * delta
                    rec(i - 1, rem - used, noffs)

        rec(n - 1, budget, [0] * n)
        # map back to original coordinates: x_red -> x_red @ t
        out = [vec_matmul(sol, self.t) for sol in sols]
        out.sort()
        return out

    def vectors_in_ball(self, bound):
        """All nonzero x with |<x,x>| <= bound (both signs present)."""
        res = self.close_vectors([Fraction(0)] * self.n, bound)
        return [v for v in res if any(v)]


def short_vectors(lat: Lattice, norm_min, up_to_sign=False):
    """All v with norm_min <= <v,v> < 0 in a negative definite lattice."""
    if not lat.is_negative_definite():
        raise ValueError("short_vectors requires a negative definite lattice")
    enum = NegDefEnumerator(lat.gram)
    vecs = enum.vectors_in_ball(-norm_min)
    if up_to_sign:
        vecs = [v for v in vecs if _canonical_sign(v)]
    return vecs


def _canonical_sign(v):
    for x in v:
        if x:
            return x > 0
    return True


def roots(lat: Lattice, up_to_sign=False):
    out = [v for v in short_vectors(lat, -2) if pair(lat.gram, v, v) == -2]
    if up_to_sign:
        out = [v for v in out if _canonical_sign(v)]
    return out


# ---------------------------------------------------------------------------
# Constrained enumeration in a hyperbolic lattice.


def vectors_with_norm_and_pairings(lat: Lattice, constraints, norm, shift=None,
                                   enum_cache=None):
    """All x = shift + z (z integral) with <x,x> = norm and <x,h_i> = c_i.

    constraints: list of (h, c) with h a rational row and c a rational
    number.  The pairing constraints must cut out a negative definite
    lattice (automatic when some h has positive norm and lat is
    hyperbolic).  Returns rational rows (exact), sorted.
    """
    n = lat.rank
    if shift is None:
        shift = [Fraction(0)] * n
    shift = [Fraction(x) for x in shift]
    norm = Fraction(norm)

    # functional columns scaled to integers
    funcs = []
    targets = []
    for h, c in constraints:
        f = frac_vec_matmul(h, lat.gram)
        fi, d = clear_denominators(f)
        t = (Fraction(c) - sum(Fraction(a) * b for a, b in zip(shift, f))) * d
        if t.denominator != 1:
            return []
        funcs.append(fi)
        targets.append(int(t))

    mat = transpose(funcs)  # n x k, z . mat = targets
    z0 = solve_integer(mat, targets)
    if z0 is None:
        return []
    kern = kernel_basis(mat)  # rows spanning {z : z.mat = 0}, rank n-k
    t0 = [Fraction(a) + b for a, b in zip(shift, z0)]
    if not kern:
        # zero-dimensional: check t0 itself
        if frac_pair(lat.gram, t0, t0) == norm:
            return [t0]
        return []
    q_k = matmul(matmul(kern, lat.gram), transpose(kern))
    sig = signature(q_k)
    if sig[0] != 0 or sig[2] != 0:
        raise ValueError("pairing constraints do not cut out a negative "
                         "definite slice")
    # f(y) = <t0 + yK, t0 + yK> = t0_norm + 2 y.bvec + y Qk y^T with
    # bvec = K G t0^T.  Completing the square at y* (where Qk y*^T = -bvec)
    # gives f(y) = f_min + (y - y*) Qk (y - y*)^T, so f(y) = norm means
    # (y - y*)(-Qk)(y - y*)^T = f_min - norm, which must be >= 0.
    t0_norm = frac_pair(lat.gram, t0, t0)
    gkt = frac_matmul(kern, [[x] for x in frac_vec_matmul(t0, lat.gram)])
    bvec = [row[0] for row in gkt]
    qk_inv = frac_inverse(q_k)
    y_star = frac_vec_matmul([-x for x in bvec], qk_inv)
    f_min = t0_norm + sum(a * b for a, b in zip(y_star, bvec))
    ball = f_min - norm
    if ball < 0:
        return []
    if enum_cache is not None:
        key = tuple(tuple(row) for row in q_k)
        enum = enum_cache.get(key)
        if enum is None:
            enum = NegDefEnumerator(q_k)
            enum_cache[key] = enum
    else:
        enum = NegDefEnumerator(q_k)
    ys = enum.close_vectors(y_star, ball, exact_norm=ball)
    out = []
    for y in ys:
        x = [a + b for a, b in zip(t0, frac_vec_matmul(y, kern))]
        out.append(x)
    out.sort()
    return out


def integer_vectors_with_norm_and_pairings(lat, constraints, norm):
    res = vectors_with_norm_and_pairings(lat, constraints, norm)
    out = []
    for x in res:
        xi = []
        for v in x:
            v = Fraction(v)
            assert v.denominator == 1
            xi.append(int(v))
        out.append(xi)
    return out


def separating_roots(lat: Lattice, h1, h2, stop_at_first=False):
    """Roots r with <h1,r> > 0 > <h2,r>, for h1, h2 in the positive cone."""
    a11 = frac_pair(lat.gram, h1, h1)
    a22 = frac_pair(lat.gram, h2, h2)
    a12 = frac_pair(lat.gram, h1, h2)
    if a11 <= 0 or a22 <= 0:
        raise ValueError("h1, h2 must have positive norm")
    if a12 <= 0:
        raise ValueError("h1, h2 must lie in a common positive cone")
    disc2 = a12 * a12 - a11 * a22  # > 0 unless proportional
    found = []
    if disc2 <= 0:
        return found  # h1 ~ h2 up to scale: nothing strictly between
    # A root r with <r,h1> = a >= 1 and <r,h2> = -beta <= -1 forces the
    # Gram of (h1, h2, r) to have signature (1,2), i.e. determinant >= 0:
    #   phi(a,beta) := a22*a^2 + 2*a12*a*beta + a11*beta^2 <= 2*disc2,
    # and on a,beta >= 1 every term of phi is positive, bounding a, beta.
    amax = isqrt(int(2 * disc2 / a22))
    bmax = isqrt(int(2 * disc2 / a11))
    for a in range(1, amax + 1):
        for beta in range(1, bmax + 1):
            phi = a22 * a * a + 2 * a12 * a * beta + a11 * beta * beta
            if phi > 2 * disc2:
                break
            for r in integer_vectors_with_norm_and_pairings(
                    lat, [(h1, a), (h2, -beta)], -2):
                found.append(r)
                if stop_at_first:
                    return found
    return sorted(found)


# ---------------------------------------------------------------------------
# Overlattices / gluing.


def glue_overlattice(l1: Lattice, l2: Lattice, glue_gens):
    """Even overlattice of l1 (+) l2 defined by an isotropic glue group.

    glue_gens: list of pairs (x1, x2) of dual rows (rational, in l1/l2
    coordinates).  Returns (Lattice, basis_rows) with basis rows in the
    coordinates of l1 (+) l2, rational entries.
    """
    n1, n2 = l1.rank, l2.rank
    f1, f2 = DiscriminantForm(l1), DiscriminantForm(l2)
    # the subgroup generated by the glue vectors must be isotropic
    gens = [(f1.class_of_dual(x1), f2.class_of_dual(x2)) for x1, x2 in glue_gens]
    group = {(f1.zero(), f2.zero())}
    frontier = [(f1.zero(), f2.zero())]
    while frontier:
        nxt = []
        for e1, e2 in frontier:
            for g1, g2 in gens:
                s = (f1.normalize(tuple(a + b for a, b in zip(e1, g1))),
                     f2.normalize(tuple(a + b for a, b in zip(e2, g2))))
                if s not in group:
                    group.add(s)
                    nxt.append(s)
        frontier = nxt
    for e1, e2 in group:
        qv = (f1.q(e1) + f2.q(e2)) % 2
        if qv != 0:
            raise ValueError("glue subgroup is not isotropic")
        # b-values of pairs are forced integral if q vanishes on the group
    rows = [[Fraction(0)] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        rows[i][i] = Fraction(1)
    for i in range(n2):
        rows[n1 + i][n1 + i] = Fraction(1)
    for x1, x2 in glue_gens:
        rows.append([Fraction(v) for v in list(x1) + list(x2)])
    # HNF over the common denominator
    den = 1
    for row in rows:
        for x in row:
            den = lcm2(den, Fraction(x).denominator)
    int_rows = [[int(Fraction(x) * den) for x in row] for row in rows]
    from .intlinalg import hnf_basis

    basis_scaled = hnf_basis(int_rows)
    if len(basis_scaled) != n1 + n2:
        raise ValueError("glue vectors do not span full rank")
    basis = [[Fraction(x, den) for x in row] for row in basis_scaled]
    big = [[0] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        for j in range(n1):
            big[i][j] = l1.gram[i][j]
    for i in range(n2):
        for j in range(n2):
            big[n1 + i][n1 + j] = l2.gram[i][j]
    gram = frac_matmul(frac_matmul(basis, big), transpose(basis))
    for row in gram:
        for x in row:
            if Fraction(x).denominator != 1:
                raise ValueError("glue group does not give an integral lattice")
    gram = [[int(x) for x in row] for row in gram]
    lat = Lattice(gram)  # evenness checked by constructor
    expected_index = len(group)
    assert abs(lat.det) * expected_index ** 2 == abs(l1.det * l2.det)
    return lat, basis


# ---------------------------------------------------------------------------
# Root systems and ADE types.


def positive_roots(lat: Lattice, witness=None):
    """Roots of a negative definite lattice, split by lexicographic sign.

    A root is positive iff <r, witness> > 0, with lexicographic tiebreak
    on coordinates when the pairing vanishes (so no genericity is needed).
    """
    all_roots = roots(lat)
    pos = []
    for r in all_roots:
        s = frac_pair(lat.gram, r, witness) if witness is not None else 0
        if s > 0 or (s == 0 and _canonical_sign(r)):
            pos.append(r)
    return pos


def simple_roots(lat: Lattice, witness=None):
    pos = positive_roots(lat, witness)
    pos_set = {tuple(r) for r in pos}
    simples = []
    for r in pos:
        reducible = False
        for s in pos:
            if s != r:
                diff = tuple(a - b for a, b in zip(r, s))
                if diff in pos_set:
                    reducible = True
                    break
        if not reducible:
            simples.append(r)
    return simples


def ade_type(lat: Lattice, simples):
    """ADE type of a set of simple roots, as a sorted list of (letter, n)."""
    k = len(simples)
    adj = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if i != j:
                p = pair(lat.gram, simples[i], simples[j])
                if p not in (0, 1):
                    raise ValueError("not a simple root system of ADE type")
                adj[i][j] = p
    seen = [False] * k
    comps = []
    for i in range(k):
        if not seen[i]:
            comp = []
            stack = [i]
            seen[i] = True
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in range(k):
                    if adj[x][y] and not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(comp)
    out = []
    for comp in comps:
        degs = {v: sum(adj[v][u] for u in comp) for v in comp}
        n = len(comp)
        branch = [v for v in comp if degs[v] >= 3]
        if any(degs[v] > 3 for v in comp) or len(branch) > 1:
            raise ValueError("not an ADE diagram")
        if not branch:
            out.append(("A", n))
            continue
        b = branch[0]
        # arm lengths from the branch vertex
        arms = []
        for start in (v for v in comp if adj[b][v]):
            length = 1
            prev, cur = b, start
            while True:
                nxts = [u for u in comp if adj[cur][u] and u != prev]
                if not nxts:
                    break
                prev, cur = cur, nxts[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms == [1, 1, n - 3]:
            out.append(("D", n))
        elif arms == [1, 2, 2] and n == 6:
            out.append(("E", 6))
        elif arms == [1, 2, 3] and n == 7:
            out.append(("E", 7))
        elif arms == [1, 2, 4] and n == 8:
            out.append(("E", 8))
        else:
            raise ValueError(f"not an ADE diagram: arms {arms}")
    return sorted(out)


def root_lattice_type(lat: Lattice):
    """ADE type of a negative definite root lattice (roots must span)."""
    simples = simple_roots(lat)
    from .intlinalg import row_rank

    if row_rank(simples) != lat.rank:
        raise ValueError("roots do not span the lattice")
    return ade_type(lat, simples)


def gauss_reduce_rank2(gram):
    """Reduced Gram of a rank-2 negative definite form (|a|<=|c|, 0<=b<=|a|/... )."""
    a, b, c = -gram[0][0], -gram[0][1], -gram[1][1]  # positive definite copy
    # standard Gauss reduction
    while True:
        if a > c:
            a, c = c, a
            b = -b
        t = round(Fraction(b, a)) if a else 0
        if t:
            c = c - 2 * t * b + t * t * a
            b = b - t * a
        if abs(2 * b) <= a <= c:
            break
    if b < 0:
        b = -b
    return [[-a, -b], [-b, -c]]


def negdef_isometries(lat: Lattice):
    """All isometries of a negative definite lattice, by image backtracking.

    Basis vector i may map to any vector of the same norm; partial tuples
    are pruned by pairing consistency.  Complete and exact.
    """
    if not lat.is_negative_definite():
        raise ValueError("negdef_isometries requires a negative definite lattice")
    n = lat.rank
    enum = NegDefEnumerator(lat.gram)
    cand = {}
    for i in range(n):
        norm = -lat.gram[i][i]
        if norm not in cand:
            cand[norm] = [v for v in enum.vectors_in_ball(norm)
                          if pair(lat.gram, v, v) == -norm]
    out = []
    rows = []

    def rec(i):
        if i == n:
            out.append([row[:] for row in rows])
            return
        for v in cand[-lat.gram[i][i]]:
            ok = True
            for j in range(i):
                if pair(lat.gram, rows[j], v) != lat.gram[j][i]:
                    ok = False
                    break
            if ok:
                rows.append(v)
                rec(i + 1)
                rows.pop()

    rec(0)
    return out


# ---------------------------------------------------------------------------
# Finite matrix groups on a lattice.


class FiniteMatrixGroup:
    """Finite group of isometries given by generator matrices."""

    def __init__(self, lat: Lattice, generators, element_cap=10**8):
        self.lattice = lat
        self.gens = [tuple(tuple(row) for row in g) for g in generators]
        for g in generators:
            if not lat.is_isometry([list(r) for r in g]):
                raise ValueError("generator does not preserve the Gram matrix")
        self.element_cap = element_cap
        self._elements = None

    def elements(self):
        if self._elements is None:
            ident = tuple(tuple(row) for row in identity_matrix(self.lattice.rank))
            seen = {ident}
            frontier = [ident]
            while frontier:
                nxt = []
                for p in frontier:
                    for g in self.gens:
                        q = tuple(tuple(row) for row in
                                  matmul([list(r) for r in p], [list(r) for r in g]))
                        if q not in seen:
                            seen.add(q)
                            nxt.append(q)
                            if len(seen) > self.element_cap:
                                raise ValueError("group exceeds element cap")
                frontier = nxt
            self._elements = sorted(seen)
        return self._elements

    def order(self):
        return len(self.elements())

    def orbit(self, row):
        row = tuple(row)
        orb = {row}
        frontier = [row]
        while frontier:
            nxt = []
            for v in frontier:
                for g in self.gens:
                    w = tuple(vec_matmul(list(v), [list(r) for r in g]))
                    if w not in orb:
                        orb.add(w)
                        nxt.append(w)
                        if len(orb) > self.element_cap:
                            raise ValueError("orbit exceeds element cap")
            frontier = nxt
        return orb
